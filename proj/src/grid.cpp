#include "catclust/grid.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace catclust {

void CountMatrix::update(const Event& event) {
    const auto& m = event.members();
    for (VarId v : m)
        if (v >= n_) throw InputError("event refers to a variable outside the grid");
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            ++cells_[static_cast<std::size_t>(m[i]) * n_ + m[j]];
            ++cells_[static_cast<std::size_t>(m[j]) * n_ + m[i]];
        }
    }
    increments_ += m.size() * (m.size() - 1);
}

void CountMatrix::merge(const CountMatrix& other) {
    if (other.n_ != n_) throw std::invalid_argument("cannot merge grids of different sizes");
    for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] += other.cells_[i];
    increments_ += other.increments_;
}

VarId CountMatrix::add_variable() {
    const std::size_t m = n_ + 1;
    std::vector<Count> grown(m * m, 0);
    for (std::size_t r = 0; r < n_; ++r)
        std::copy_n(cells_.begin() + r * n_, n_, grown.begin() + r * m);
    cells_ = std::move(grown);
    n_ = m;
    return static_cast<VarId>(n_ - 1);
}

VarId add_variable(CountMatrix& grid, Vocabulary& vocab, std::string_view label) {
    if (vocab.find(label)) throw InputError("variable '" + std::string(label) + "' is already in the grid");
    if (vocab.size() != grid.size()) throw std::logic_error("grid and vocabulary sizes disagree");
    vocab.intern(label);
    return grid.add_variable();
}

Pattern head_set(const CountMatrix& grid, VarId v, GapTie tie) {
    auto row = grid.row(v);
    std::vector<std::pair<Count, VarId>> nonzero;
    for (VarId w = 0; w < row.size(); ++w)
        if (w != v && row[w] > 0) nonzero.emplace_back(row[w], w);
    if (nonzero.empty()) return {};

    std::ranges::sort(nonzero, [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });

    // Cut after position `cut`; everything at or before it is in the head set.
    std::size_t cut = nonzero.size() - 1;
    Count best_gap = 0;
    for (std::size_t k = 0; k + 1 < nonzero.size(); ++k) {
        const Count gap = nonzero[k].first - nonzero[k + 1].first;
        const bool better = tie == GapTie::toward_larger ? gap > best_gap : gap >= best_gap;
        if (gap > 0 && better) {
            best_gap = gap;
            cut = k;
        }
    }

    Pattern head;
    for (std::size_t k = 0; k <= cut; ++k) head.push_back(nonzero[k].second);
    std::ranges::sort(head);
    return head;
}

namespace {

struct DisjointSets {
    std::vector<VarId> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), VarId{0}); }
    VarId find(VarId x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(VarId a, VarId b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

bool in_sorted(const Pattern& p, VarId v) { return std::ranges::binary_search(p, v); }

}  // namespace

GridClusterResult extract_clusters(const CountMatrix& grid, const ExtractOptions& options) {
    if (options.tau_link < 1) throw ConfigError("tau_link must be >= 1");

    const std::size_t n = grid.size();
    GridClusterResult result;
    result.head_sets.reserve(n);
    for (VarId v = 0; v < n; ++v) result.head_sets.push_back(head_set(grid, v, options.gap_tie));

    DisjointSets sets(n);
    for (VarId v = 0; v < n; ++v) {
        for (VarId w : result.head_sets[v]) {
            if (!options.mutual_check || in_sorted(result.head_sets[w], v)) sets.unite(v, w);
        }
    }

    std::vector<Pattern> components(n);
    for (VarId v = 0; v < n; ++v) components[sets.find(v)].push_back(v);

    auto& part = result.partition;
    for (auto& c : components) {
        if (c.size() >= 2)
            part.clusters.push_back(std::move(c));
        else if (c.size() == 1)
            part.unassigned.push_back(c.front());
    }

    if (options.singletons == SingletonPolicy::attach_strongest && !part.clusters.empty()) {
        const auto base = part.clusters;
        Pattern still_alone;
        for (VarId v : part.unassigned) {
            std::size_t best = base.size();
            Count best_total = 0;
            for (std::size_t c = 0; c < base.size(); ++c) {
                Count total = 0;
                for (VarId w : base[c]) total += grid.at(v, w);
                if (total > best_total) {
                    best_total = total;
                    best = c;
                }
            }
            if (best == base.size())
                still_alone.push_back(v);
            else
                part.clusters[best].push_back(v);
        }
        part.unassigned = std::move(still_alone);
    }
    part.normalize();

    std::vector<std::size_t> cluster_of(n, SIZE_MAX);
    for (std::size_t c = 0; c < part.clusters.size(); ++c)
        for (VarId v : part.clusters[c]) cluster_of[v] = c;

    for (VarId a = 0; a < n; ++a) {
        if (cluster_of[a] == SIZE_MAX) continue;
        for (VarId b = a + 1; b < n; ++b) {
            if (cluster_of[b] == SIZE_MAX || cluster_of[b] == cluster_of[a]) continue;
            const Count c = grid.at(a, b);
            if (c >= options.tau_link) result.links.push_back({a, b, static_cast<double>(c)});
        }
    }
    return result;
}

void write_matrix_csv(std::ostream& out, const CountMatrix& grid, const Vocabulary& vocab) {
    const std::size_t n = grid.size();
    for (VarId c = 0; c < n; ++c) out << ',' << vocab.label(c);
    out << '\n';
    for (VarId r = 0; r < n; ++r) {
        out << vocab.label(r);
        for (VarId c = 0; c < n; ++c) {
            out << ',';
            if (r == c)
                out << 'x';
            else
                out << grid.at(r, c);
        }
        out << '\n';
    }
}

}  // namespace catclust
