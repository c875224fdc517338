#include "catclust/counting_mechanism.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace catclust {

double coherence(const InstanceRecord& record, CoherenceMeasure measure) {
    switch (measure) {
    case CoherenceMeasure::ratio:
        return record.global_count > 0 ? 1.0 - record.local_count / record.global_count : 0.0;
    case CoherenceMeasure::difference:
    default:
        return record.global_count - record.local_count;
    }
}

const InstanceRecord* InstanceStore::find(const Pattern& pattern) const {
    auto it = by_pattern_.find(pattern);
    return it == by_pattern_.end() ? nullptr : &instances_[it->second];
}

void InstanceStore::present(const Event& event, const Weights& weights) {
    const std::size_t t = event_counter_++;
    Pattern pattern = event.pattern();

    VarId max_id = pattern.back();
    if (postings_.size() <= max_id) postings_.resize(max_id + 1);

    // Overlap pass over instances that existed before this event.
    for (VarId v : pattern) {
        for (std::size_t idx : postings_[v]) {
            if (touched_[idx] == t) continue;
            touched_[idx] = t;
            instances_[idx].global_count += weights.omega_g;
        }
    }

    if (auto it = by_pattern_.find(pattern); it != by_pattern_.end()) {
        instances_[it->second].local_count += weights.omega_i;
        return;
    }

    const std::size_t idx = instances_.size();
    instances_.push_back({pattern, weights.omega_i, weights.omega_g, t});
    touched_.push_back(t);
    for (VarId v : pattern) postings_[v].push_back(idx);
    by_pattern_.emplace(std::move(pattern), idx);
}

bool ranks_before(const InstanceRecord& a, const InstanceRecord& b, CoherenceMeasure measure) {
    const double ca = coherence(a, measure);
    const double cb = coherence(b, measure);
    if (ca != cb) return ca < cb;
    if (a.local_count != b.local_count) return a.local_count > b.local_count;
    if (a.pattern.size() != b.pattern.size()) return a.pattern.size() < b.pattern.size();
    return a.pattern < b.pattern;
}

Partition select_clusters(const InstanceStore& store, std::size_t universe, CoherenceMeasure measure) {
    const auto& instances = store.instances();
    std::vector<std::size_t> order(instances.size());
    std::iota(order.begin(), order.end(), 0);
    std::ranges::sort(order, [&](std::size_t a, std::size_t b) {
        return ranks_before(instances[a], instances[b], measure);
    });

    Partition p;
    std::vector<char> taken(universe, 0);
    for (std::size_t idx : order) {
        const auto& pat = instances[idx].pattern;
        if (std::ranges::any_of(pat, [&](VarId v) { return v >= universe || taken[v]; })) continue;
        for (VarId v : pat) taken[v] = 1;
        p.clusters.push_back(pat);
    }
    for (VarId v = 0; v < universe; ++v)
        if (!taken[v]) p.unassigned.push_back(v);
    p.normalize();
    return p;
}

}  // namespace catclust
