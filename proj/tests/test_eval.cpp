#include <doctest.h>

#include <numeric>
#include <random>

#include "catclust/eval.hpp"
#include "oracles.hpp"

using namespace catclust;

namespace {

std::vector<int> block_index(const Partition& p, std::size_t n) {
    std::vector<int> b(n, -1);
    int next = 0;
    for (const auto& c : p.clusters) {
        for (VarId v : c) b[v] = next;
        ++next;
    }
    for (VarId v : p.unassigned) b[v] = next++;
    return b;
}

Partition random_partition(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<std::size_t> pick(0, n / 2);
    std::vector<Pattern> groups(n / 2 + 1);
    for (VarId v = 0; v < n; ++v) groups[pick(rng)].push_back(v);
    Partition p;
    for (auto& g : groups) {
        if (g.size() >= 2)
            p.clusters.push_back(g);
        else if (g.size() == 1)
            p.unassigned.push_back(g[0]);
    }
    p.normalize();
    return p;
}

}  // namespace

TEST_CASE("identical partitions agree perfectly") {
    Partition p{{{0, 1, 2}, {3, 4}}, {5}};
    const auto r = pairwise_agreement(p, p, 6);
    CHECK(r.pairwise_precision == 1);
    CHECK(r.pairwise_recall == 1);
    CHECK(r.pairwise_f1 == 1);
    CHECK(r.rand_index == 1);
    CHECK(r.exact_cluster_matches == 3);
}

TEST_CASE("all singletons against a clustered reference") {
    Partition singles{{}, {0, 1, 2, 3}};
    Partition ref{{{0, 1}, {2, 3}}, {}};
    const auto r = pairwise_agreement(singles, ref, 4);
    CHECK(r.produced_pairs == 0);
    CHECK(r.pairwise_precision == 1);
    CHECK(r.pairwise_recall == 0);
    CHECK(r.pairwise_f1 == 0);
}

TEST_CASE("seven-variable example") {
    // A..G = 0..6
    Partition produced{{{0, 1, 2, 3}, {4, 5, 6}}, {}};
    Partition reference{{{0, 1, 2, 3, 4}, {5, 6}}, {}};
    const auto r = pairwise_agreement(produced, reference, 7);
    CHECK(r.produced_pairs == 9);
    CHECK(r.reference_pairs == 11);
    CHECK(r.shared_pairs == 7);
    CHECK(r.pairwise_precision == doctest::Approx(7.0 / 9));
    CHECK(r.pairwise_recall == doctest::Approx(7.0 / 11));
    CHECK(r.pairwise_f1 == doctest::Approx(2 * (7.0 / 9) * (7.0 / 11) / (7.0 / 9 + 7.0 / 11)));
    // 21 pairs: 7 together in both, 21 - 9 - 11 + 7 = 8 apart in both
    CHECK(r.rand_index == doctest::Approx(15.0 / 21));
    CHECK(r.exact_cluster_matches == 0);
    REQUIRE(r.per_cluster.size() == 2);
    CHECK(r.per_cluster[0].best_reference == Pattern{0, 1, 2, 3, 4});
    CHECK(r.per_cluster[0].overlap == 4);
    CHECK(r.per_cluster[1].best_reference == Pattern{5, 6});
}

TEST_CASE("universe mismatch is rejected") {
    Partition a{{{0, 1}}, {2}};
    Partition b{{{0, 1}}, {}};
    CHECK_THROWS_AS(pairwise_agreement(a, b, 3), InputError);
    CHECK_THROWS_AS(pairwise_agreement(a, a, 4), InputError);
}

TEST_CASE("contingency counts equal pair enumeration") {
    std::mt19937 rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 30;
        const auto p = random_partition(rng, n);
        const auto q = random_partition(rng, n);
        const auto r = pairwise_agreement(p, q, n);
        const auto c = oracle::count_pairs(block_index(p, n), block_index(q, n));
        CHECK(r.produced_pairs == static_cast<std::uint64_t>(c.produced));
        CHECK(r.reference_pairs == static_cast<std::uint64_t>(c.reference));
        CHECK(r.shared_pairs == static_cast<std::uint64_t>(c.shared));
        CHECK(r.rand_index == doctest::Approx(double(c.agree) / c.total));
        for (double f : {r.pairwise_precision, r.pairwise_recall, r.pairwise_f1}) {
            CHECK(f >= 0);
            CHECK(f <= 1);
        }

        // swapping roles swaps precision and recall
        const auto s = pairwise_agreement(q, p, n);
        if (r.produced_pairs > 0 && r.reference_pairs > 0) {
            CHECK(s.pairwise_precision == r.pairwise_recall);
            CHECK(s.pairwise_recall == r.pairwise_precision);
            CHECK(s.pairwise_f1 == doctest::Approx(r.pairwise_f1));
        }
    }
}

TEST_CASE("agreement ignores cluster order and relabelling") {
    std::mt19937 rng(72);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 12;
        const auto p = random_partition(rng, n);
        const auto q = random_partition(rng, n);
        const auto base = pairwise_agreement(p, q, n);

        std::vector<VarId> perm(n);
        std::iota(perm.begin(), perm.end(), VarId{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        auto relabel = [&](Partition x) {
            for (auto& c : x.clusters)
                for (auto& v : c) v = perm[v];
            for (auto& v : x.unassigned) v = perm[v];
            std::shuffle(x.clusters.begin(), x.clusters.end(), rng);
            return x;
        };
        const auto moved = pairwise_agreement(relabel(p), relabel(q), n);
        CHECK(moved.pairwise_precision == base.pairwise_precision);
        CHECK(moved.pairwise_recall == base.pairwise_recall);
        CHECK(moved.rand_index == base.rand_index);
        CHECK(moved.exact_cluster_matches == base.exact_cluster_matches);
    }
}
