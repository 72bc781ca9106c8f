#include "rgf/engine.hpp"

#include <cstdio>
#include <cstring>
#include <limits>
#include <thread>

namespace rgf {

int EngineOptions::effective_workers() const {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

std::uint64_t encode(const Profile& profile) {
    // Encoding needs no enumeration budget; only the space must fit 64 bits.
    ProfileEnumeration space(profile.n(), profile.m,
                             std::numeric_limits<std::uint64_t>::max() / 2);
    return space.index_of(profile);
}

Profile decode(int n, int m, std::uint64_t code) {
    ProfileEnumeration space(n, m, std::numeric_limits<std::uint64_t>::max() / 2);
    return space.at(code);
}

void parallel_chunks(std::uint64_t total, int workers,
                     const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
    if (total == 0) return;
    const std::uint64_t w = std::min<std::uint64_t>(std::max(workers, 1), total);
    if (w == 1) {
        fn(0, total);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(w);
    const std::uint64_t chunk = (total + w - 1) / w;
    for (std::uint64_t t = 0; t < w; ++t) {
        const std::uint64_t begin = t * chunk;
        const std::uint64_t end = std::min(total, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (std::thread& th : threads) th.join();
}

OutcomeTable build_outcome_table(const RuleSpec& spec, const EngineOptions& opts) {
    spec.validate();
    ProfileEnumeration space(spec.n, spec.m,
                             std::numeric_limits<std::uint64_t>::max() / 2);
    if (space.size() > opts.table_budget)
        throw SpaceTooLargeError("space too large: outcome table exceeds its memory budget");
    OutcomeTable table{spec, std::vector<std::uint8_t>(space.size())};
    std::uint8_t* out = table.outcomes.data();
    parallel_chunks(space.size(), opts.effective_workers(),
                    [&](std::uint64_t begin, std::uint64_t end) {
                        for (std::uint64_t code = begin; code < end; ++code)
                            out[code] = evaluate(spec, space.at(code));
                    });
    // spot-check the table against direct evaluation on a seeded sample
    std::uint64_t probe = splitmix64(spec.hash());
    for (int k = 0; k < 16; ++k) {
        probe = splitmix64(probe);
        const std::uint64_t code = probe % space.size();
        if (table.outcomes[code] != evaluate(spec, space.at(code)))
            throw ContractError("outcome table diverged from direct evaluation");
    }
    return table;
}

namespace {

constexpr char kTableMagic[4] = {'R', 'G', 'F', '1'};

void put_u32(std::FILE* f, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
    std::fwrite(b, 1, 4, f);
}

void put_u64(std::FILE* f, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
    std::fwrite(b, 1, 8, f);
}

bool get_u32(std::FILE* f, std::uint32_t* v) {
    unsigned char b[4];
    if (std::fread(b, 1, 4, f) != 4) return false;
    *v = 0;
    for (int i = 0; i < 4; ++i) *v |= std::uint32_t(b[i]) << (8 * i);
    return true;
}

bool get_u64(std::FILE* f, std::uint64_t* v) {
    unsigned char b[8];
    if (std::fread(b, 1, 8, f) != 8) return false;
    *v = 0;
    for (int i = 0; i < 8; ++i) *v |= std::uint64_t(b[i]) << (8 * i);
    return true;
}

}  // namespace

void save_outcome_table(const OutcomeTable& table, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write outcome table: " + path);
    std::fwrite(kTableMagic, 1, 4, f);
    put_u32(f, std::uint32_t(table.spec.n));
    put_u32(f, std::uint32_t(table.spec.m));
    put_u64(f, table.spec.hash());
    put_u64(f, table.outcomes.size());
    std::fwrite(table.outcomes.data(), 1, table.outcomes.size(), f);
    std::fclose(f);
}

std::optional<OutcomeTable> load_outcome_table(const RuleSpec& spec,
                                               const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) return std::nullopt;
    char magic[4];
    std::uint32_t n = 0, m = 0;
    std::uint64_t hash = 0, size = 0;
    bool ok = std::fread(magic, 1, 4, f) == 4 && std::memcmp(magic, kTableMagic, 4) == 0 &&
              get_u32(f, &n) && get_u32(f, &m) && get_u64(f, &hash) && get_u64(f, &size);
    ok = ok && int(n) == spec.n && int(m) == spec.m && hash == spec.hash();
    std::optional<OutcomeTable> table;
    if (ok) {
        OutcomeTable t{spec, std::vector<std::uint8_t>(size)};
        ok = std::fread(t.outcomes.data(), 1, size, f) == size;
        if (ok) table = std::move(t);
    }
    std::fclose(f);
    return table;
}

Evaluator::Evaluator(RuleSpec spec, const EngineOptions& opts)
    : spec_(std::move(spec)),
      space_(spec_.n, spec_.m, std::numeric_limits<std::uint64_t>::max() / 2) {
    spec_.validate();
    if (!opts.disable_table && space_.size() <= opts.table_budget)
        table_ = build_outcome_table(spec_, opts);
}

std::vector<std::uint64_t> sampled_profile_codes(int n, int m, std::uint64_t count,
                                                 std::uint64_t seed) {
    ProfileEnumeration space(n, m, std::numeric_limits<std::uint64_t>::max() / 2);
    const std::uint64_t prefs = factorial(m);
    std::vector<std::uint64_t> codes;
    codes.reserve(count);
    std::uint64_t state = splitmix64(seed ^ 0x5851f42d4c957f2dull);
    for (std::uint64_t k = 0; k < count; ++k) {
        std::uint64_t code = 0;
        for (int i = 1; i <= n; ++i) {
            state = splitmix64(state);
            code += (state % prefs) * space.stride(i);
        }
        codes.push_back(code);
    }
    return codes;
}

std::vector<Profile> sampled_profiles(int n, int m, std::uint64_t count,
                                      std::uint64_t seed) {
    ProfileEnumeration space(n, m, std::numeric_limits<std::uint64_t>::max() / 2);
    std::vector<Profile> out;
    out.reserve(count);
    for (std::uint64_t code : sampled_profile_codes(n, m, count, seed))
        out.push_back(space.at(code));
    return out;
}

}  // namespace rgf
