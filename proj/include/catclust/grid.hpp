#pragma once
// Grid-based cross-referenced frequency counting.
//
// Every variable is both a row and a column; a presentation increments the
// cell of every unordered member pair in both orientations. The diagonal is
// never written. Clusters are read off the finished grid: each row proposes
// a head set (the variables above the largest drop in its sorted counts),
// two variables belong together only when each is in the other's head set,
// and the remaining strong cross-cluster cells are reported as links.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "catclust/model.hpp"

namespace catclust {

using Count = std::uint64_t;

class CountMatrix {
public:
    explicit CountMatrix(std::size_t n = 0) : n_(n), cells_(n * n, 0) {}

    std::size_t size() const { return n_; }
    Count at(VarId row, VarId col) const { return cells_[static_cast<std::size_t>(row) * n_ + col]; }
    std::span<const Count> row(VarId r) const {
        return {cells_.data() + static_cast<std::size_t>(r) * n_, n_};
    }

    // Throws InputError on an id outside the grid.
    void update(const Event& event);
    // Throws std::invalid_argument when the sizes differ.
    void merge(const CountMatrix& other);
    // Appends a zero row and column and returns the new variable's id.
    VarId add_variable();

    // Cell increments performed so far (each unordered pair costs two).
    std::uint64_t increments() const { return increments_; }

    // Cells only; the increment counter is bookkeeping.
    bool operator==(const CountMatrix& other) const { return n_ == other.n_ && cells_ == other.cells_; }

private:
    std::size_t n_;
    std::vector<Count> cells_;
    std::uint64_t increments_ = 0;
};

// add_variable with label bookkeeping. Throws InputError when the label is
// already in the vocabulary.
VarId add_variable(CountMatrix& grid, Vocabulary& vocab, std::string_view label);

enum class GapTie {
    toward_larger,   // cut at the earliest maximal gap (smaller head set)
    toward_smaller,  // cut at the latest maximal gap
};

enum class SingletonPolicy {
    unassigned,       // variables without a mutual partner stay unassigned
    attach_strongest, // join the cluster with the largest summed cell count
};

struct ExtractOptions {
    Count tau_link = 2;
    GapTie gap_tie = GapTie::toward_larger;
    bool mutual_check = true;  // require reciprocal head-set membership
    SingletonPolicy singletons = SingletonPolicy::unassigned;
};

Pattern head_set(const CountMatrix& grid, VarId v, GapTie tie = GapTie::toward_larger);

struct GridClusterResult {
    Partition partition;
    std::vector<InterPatternLink> links;  // a < b, ordered by (a, b)
    std::vector<Pattern> head_sets;       // indexed by variable id
};

// Throws ConfigError when tau_link < 1.
GridClusterResult extract_clusters(const CountMatrix& grid, const ExtractOptions& options = {});

// CSV with label header row and column; diagonal cells are "x".
void write_matrix_csv(std::ostream& out, const CountMatrix& grid, const Vocabulary& vocab);

}  // namespace catclust
