#pragma once
// Brute-force reference computations for the tests. Everything here works
// from raw token lists and definitions, never through the engines it checks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Tokens = std::vector<std::string>;
using Log = std::vector<Tokens>;

inline std::set<std::string> as_set(const Tokens& t) { return {t.begin(), t.end()}; }

// Random event log over variables "v0".."v{n-1}"; every event has 1..max_k
// distinct members in random order.
inline Log random_log(std::mt19937& rng, int variables, int events, int max_k = 5) {
    std::uniform_int_distribution<int> size_dist(1, std::min(max_k, variables));
    Log log;
    for (int e = 0; e < events; ++e) {
        std::vector<int> ids(variables);
        for (int i = 0; i < variables; ++i) ids[i] = i;
        std::shuffle(ids.begin(), ids.end(), rng);
        const int k = size_dist(rng);
        Tokens ev;
        for (int i = 0; i < k; ++i) ev.push_back("v" + std::to_string(ids[i]));
        log.push_back(ev);
    }
    return log;
}

// Number of events containing each label.
inline std::map<std::string, int> frequency(const Log& log) {
    std::map<std::string, int> f;
    for (const auto& ev : log)
        for (const auto& t : ev) ++f[t];
    return f;
}

// Number of events containing both a and b, for every ordered pair a != b
// drawn from the labels that occur in the log.
inline std::map<std::pair<std::string, std::string>, int> cooccurrence(const Log& log) {
    std::set<std::string> labels;
    for (const auto& ev : log) labels.insert(ev.begin(), ev.end());
    std::map<std::pair<std::string, std::string>, int> out;
    for (const auto& a : labels) {
        for (const auto& b : labels) {
            if (a == b) continue;
            int n = 0;
            for (const auto& ev : log) {
                const auto s = as_set(ev);
                if (s.contains(a) && s.contains(b)) ++n;
            }
            out[{a, b}] = n;
        }
    }
    return out;
}

struct Instance {
    std::set<std::string> pattern;
    int local = 0;
    int global = 0;
    std::size_t created_at = 0;
};

// Unique member sets in order of first appearance. I counts exact matches,
// G counts events that share a member, both from the creation event onward.
inline std::vector<Instance> replay_instances(const Log& log) {
    std::vector<Instance> out;
    for (std::size_t t = 0; t < log.size(); ++t) {
        const auto s = as_set(log[t]);
        if (std::none_of(out.begin(), out.end(), [&](const Instance& i) { return i.pattern == s; }))
            out.push_back({s, 0, 0, t});
    }
    for (auto& inst : out) {
        for (std::size_t t = inst.created_at; t < log.size(); ++t) {
            const auto s = as_set(log[t]);
            if (s == inst.pattern) ++inst.local;
            const bool shares = std::any_of(s.begin(), s.end(), [&](const std::string& x) {
                return inst.pattern.contains(x);
            });
            if (shares) ++inst.global;
        }
    }
    return out;
}

struct RankedInstance {
    std::vector<int> pattern;  // sorted ids
    double local = 0;
    double global = 0;
};

// Total order: G - I ascending, I descending, size ascending, lexicographic.
inline bool rank_less(const RankedInstance& a, const RankedInstance& b) {
    const double ca = a.global - a.local, cb = b.global - b.local;
    if (ca != cb) return ca < cb;
    if (a.local != b.local) return a.local > b.local;
    if (a.pattern.size() != b.pattern.size()) return a.pattern.size() < b.pattern.size();
    return a.pattern < b.pattern;
}

// Exhaustive search over all families of pairwise disjoint instances that
// cannot be extended: returns the family whose members, listed best-ranked
// first, form the lexicographically smallest sequence under rank_less.
inline std::vector<std::vector<int>> best_disjoint_family(const std::vector<RankedInstance>& instances) {
    const std::size_t n = instances.size();
    auto disjoint = [&](std::size_t i, std::size_t j) {
        for (int x : instances[i].pattern)
            if (std::find(instances[j].pattern.begin(), instances[j].pattern.end(), x) != instances[j].pattern.end())
                return false;
        return true;
    };
    std::vector<std::size_t> best;
    bool have = false;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::size_t> chosen;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) chosen.push_back(i);
        bool ok = true;
        for (std::size_t a = 0; a < chosen.size() && ok; ++a)
            for (std::size_t b = a + 1; b < chosen.size() && ok; ++b) ok = disjoint(chosen[a], chosen[b]);
        if (!ok) continue;
        bool maximal = true;
        for (std::size_t i = 0; i < n && maximal; ++i) {
            if (mask & (1u << i)) continue;
            if (std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return disjoint(i, c); }))
                maximal = false;
        }
        if (!maximal) continue;
        std::sort(chosen.begin(), chosen.end(),
                  [&](std::size_t a, std::size_t b) { return rank_less(instances[a], instances[b]); });
        auto seq_less = [&](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
            for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
                if (rank_less(instances[x[k]], instances[y[k]])) return true;
                if (rank_less(instances[y[k]], instances[x[k]])) return false;
            }
            return x.size() < y.size();
        };
        if (!have || seq_less(chosen, best)) {
            best = chosen;
            have = true;
        }
    }
    std::vector<std::vector<int>> out;
    for (std::size_t i : best) out.push_back(instances[i].pattern);
    std::sort(out.begin(), out.end());
    return out;
}

struct PairCounts {
    int produced = 0;
    int reference = 0;
    int shared = 0;
    int total = 0;
    int agree = 0;
};

// Enumerates every unordered pair; block_of maps an element to its block.
inline PairCounts count_pairs(const std::vector<int>& produced_block, const std::vector<int>& reference_block) {
    PairCounts c;
    const std::size_t n = produced_block.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool p = produced_block[i] == produced_block[j];
            const bool r = reference_block[i] == reference_block[j];
            ++c.total;
            c.produced += p;
            c.reference += r;
            c.shared += p && r;
            c.agree += p == r;
        }
    }
    return c;
}

}  // namespace oracle
