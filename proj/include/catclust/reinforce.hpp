#pragma once
// Single-variable reinforcement: one counter per variable, raised when the
// variable is present and optionally lowered when it is absent. Included as
// the comparison baseline; its equal-count bands are a poor clustering.

#include <vector>

#include "catclust/model.hpp"

namespace catclust {

class ReinforceState {
public:
    explicit ReinforceState(std::size_t vocabulary_size = 0) : counts_(vocabulary_size, 0.0) {}

    // count[v] += omega_i for members, count[w] -= delta for the rest,
    // clamped at zero. Throws InputError on an id outside the vocabulary.
    void update(const Event& event, const Weights& weights);

    // Shard merge. Only meaningful when the shards were counted with
    // delta == 0, where counting is a plain sum.
    void merge(const ReinforceState& other);

    double count(VarId v) const { return counts_.at(v); }
    const std::vector<double>& counts() const { return counts_; }
    std::size_t size() const { return counts_.size(); }
    bool operator==(const ReinforceState&) const = default;

private:
    std::vector<double> counts_;
};

struct CountBand {
    double count = 0;
    Pattern members;
    bool operator==(const CountBand&) const = default;
};

// Variables grouped by exact count, highest count first. Variables whose
// count is zero were never reinforced and are left out.
std::vector<CountBand> band_clusters(const ReinforceState& state);

// Bands with two or more members become clusters; everything else is
// unassigned.
Partition bands_to_partition(const std::vector<CountBand>& bands, std::size_t universe);

}  // namespace catclust
