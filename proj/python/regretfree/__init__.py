"""Voting rules, exhaustive axiom checks, and the claims catalog."""

from regretfree._core import (  # noqa: F401
    __version__,
    check_axiom,
    recheck,
    run_scenario,
    scenario_ids,
    tally,
)

__all__ = [
    "__version__",
    "check_axiom",
    "recheck",
    "run_scenario",
    "scenario_ids",
    "tally",
]
