#include "catclust/eval.hpp"

#include <algorithm>
#include <map>

namespace catclust {

namespace {

std::vector<Pattern> blocks_of(const Partition& p) {
    std::vector<Pattern> blocks;
    for (auto c : p.clusters) {
        std::ranges::sort(c);
        blocks.push_back(std::move(c));
    }
    for (VarId v : p.unassigned) blocks.push_back({v});
    std::ranges::sort(blocks);
    return blocks;
}

std::uint64_t pairs(std::uint64_t n) { return n * (n - (n > 0)) / 2; }

}  // namespace

AgreementReport pairwise_agreement(const Partition& produced, const Partition& reference,
                                   std::size_t universe) {
    try {
        produced.validate(universe);
        reference.validate(universe);
    } catch (const std::logic_error& e) {
        throw InputError(std::string("partitions do not share a universe: ") + e.what());
    }

    const auto pb = blocks_of(produced);
    const auto rb = blocks_of(reference);

    std::vector<std::size_t> ref_block(universe);
    for (std::size_t b = 0; b < rb.size(); ++b)
        for (VarId v : rb[b]) ref_block[v] = b;

    AgreementReport r;
    r.universe = universe;
    r.produced_blocks = pb.size();
    r.reference_blocks = rb.size();
    for (const auto& b : pb) r.produced_pairs += pairs(b.size());
    for (const auto& b : rb) r.reference_pairs += pairs(b.size());

    for (const auto& block : pb) {
        std::map<std::size_t, std::size_t> contingency;
        for (VarId v : block) ++contingency[ref_block[v]];
        for (const auto& [b, n] : contingency) r.shared_pairs += pairs(n);

        ClusterMatch m;
        m.produced = block;
        std::size_t best = 0;
        for (const auto& [b, n] : contingency) {
            if (n > m.overlap) {
                m.overlap = n;
                best = b;
            }
        }
        m.best_reference = rb[best];
        m.jaccard = static_cast<double>(m.overlap) /
                    static_cast<double>(block.size() + rb[best].size() - m.overlap);
        if (block == rb[best]) ++r.exact_cluster_matches;
        r.per_cluster.push_back(std::move(m));
    }

    if (r.produced_pairs > 0) r.pairwise_precision = double(r.shared_pairs) / double(r.produced_pairs);
    if (r.reference_pairs > 0) r.pairwise_recall = double(r.shared_pairs) / double(r.reference_pairs);
    const double ps = r.pairwise_precision + r.pairwise_recall;
    r.pairwise_f1 = ps > 0 ? 2 * r.pairwise_precision * r.pairwise_recall / ps : 0.0;

    const std::uint64_t total = pairs(universe);
    if (total > 0) {
        // agreements = pairs together in both + pairs apart in both
        const std::uint64_t apart_both = total - r.produced_pairs - r.reference_pairs + r.shared_pairs;
        r.rand_index = double(r.shared_pairs + apart_both) / double(total);
    }
    return r;
}

}  // namespace catclust
