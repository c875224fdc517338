#pragma once
// Partition agreement. Unassigned variables count as singleton clusters.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "catclust/model.hpp"

namespace catclust {

struct ClusterMatch {
    Pattern produced;
    Pattern best_reference;  // largest overlap, ties to the earlier block
    std::size_t overlap = 0;
    double jaccard = 0;
};

struct AgreementReport {
    std::size_t universe = 0;
    std::uint64_t produced_pairs = 0;   // co-clustered pairs in produced
    std::uint64_t reference_pairs = 0;  // co-clustered pairs in reference
    std::uint64_t shared_pairs = 0;
    double pairwise_precision = 1;  // 1 when produced has no pairs
    double pairwise_recall = 1;     // 1 when reference has no pairs
    double pairwise_f1 = 0;
    double rand_index = 1;
    std::size_t exact_cluster_matches = 0;
    std::size_t produced_blocks = 0;
    std::size_t reference_blocks = 0;
    std::vector<ClusterMatch> per_cluster;  // one row per produced block
};

// Throws InputError when the partitions cover different universes.
AgreementReport pairwise_agreement(const Partition& produced, const Partition& reference,
                                   std::size_t universe);

}  // namespace catclust
