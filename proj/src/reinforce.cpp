#include "catclust/reinforce.hpp"

#include <algorithm>
#include <map>

namespace catclust {

void ReinforceState::update(const Event& event, const Weights& weights) {
    for (VarId v : event.members())
        if (v >= counts_.size()) throw InputError("event refers to a variable outside the vocabulary");

    if (weights.delta > 0) {
        std::vector<char> present(counts_.size(), 0);
        for (VarId v : event.members()) present[v] = 1;
        for (std::size_t w = 0; w < counts_.size(); ++w)
            if (!present[w]) counts_[w] = std::max(0.0, counts_[w] - weights.delta);
    }
    for (VarId v : event.members()) counts_[v] += weights.omega_i;
}

void ReinforceState::merge(const ReinforceState& other) {
    if (other.counts_.size() != counts_.size())
        throw std::invalid_argument("cannot merge reinforcement states over different vocabularies");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

std::vector<CountBand> band_clusters(const ReinforceState& state) {
    std::map<double, Pattern, std::greater<>> by_count;
    for (VarId v = 0; v < state.size(); ++v)
        if (state.count(v) > 0) by_count[state.count(v)].push_back(v);

    std::vector<CountBand> bands;
    bands.reserve(by_count.size());
    for (auto& [count, members] : by_count) bands.push_back({count, std::move(members)});
    return bands;
}

Partition bands_to_partition(const std::vector<CountBand>& bands, std::size_t universe) {
    Partition p;
    std::vector<char> covered(universe, 0);
    for (const auto& band : bands) {
        if (band.members.size() >= 2) {
            p.clusters.push_back(band.members);
            for (VarId v : band.members) covered[v] = 1;
        }
    }
    for (VarId v = 0; v < universe; ++v)
        if (!covered[v]) p.unassigned.push_back(v);
    p.normalize();
    return p;
}

}  // namespace catclust
