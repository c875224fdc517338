#pragma once
// Incremental pattern hierarchy.
//
// Presentations are routed to an existing node (exact match), to a new or
// existing extension of the largest node they contain, to the bookkeeping of
// the node they overlap best, or to a fresh root when they overlap nothing
// well enough. consolidate() then merges extensions that dominate their
// parent and splits nodes whose proper subsets are presented far more often.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "catclust/model.hpp"

namespace catclust {

struct HierarchyParams {
    double theta_merge = 2.0;  // extension count >= theta_merge * parent-only count -> merge
    double theta_split = 2.0;  // subset count >= theta_split * full-pattern count -> split
    double theta_new = 0.5;    // best overlap fraction below this -> new root

    // Throws ConfigError unless 0 < theta_new <= 1, theta_merge > 1, theta_split > 1.
    void validate() const;
    bool operator==(const HierarchyParams&) const = default;
};

struct PatternNode {
    Pattern pattern;    // full pattern
    Pattern extension;  // pattern minus the parent's pattern; empty for roots
    std::uint64_t occurrences = 0;
    std::map<Pattern, std::uint64_t> subsets;   // proper-subset presentations
    std::map<Pattern, std::uint64_t> overlaps;  // partial-overlap presentations
    std::vector<std::size_t> children;
    std::size_t parent = npos;
    bool alive = true;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    bool operator==(const PatternNode&) const = default;
};

class HierarchyStore {
public:
    explicit HierarchyStore(HierarchyParams params = {});

    void present(const Event& event);
    // Runs merges and splits until neither applies. Returns the number of
    // restructurings performed.
    std::size_t consolidate();

    const HierarchyParams& params() const { return params_; }
    const std::vector<std::size_t>& roots() const { return roots_; }
    const PatternNode& node(std::size_t id) const { return nodes_.at(id); }
    // Live node ids in depth-first order, roots first.
    std::vector<std::size_t> preorder() const;
    std::size_t node_count() const;

    std::uint64_t presentations() const { return presentations_; }
    // Sum of occurrences plus subset and overlap bookkeeping over live nodes.
    std::uint64_t occurrence_mass() const;
    // True when no merge or split rule applies.
    bool at_fixed_point() const;

    bool operator==(const HierarchyStore&) const = default;

private:
    bool try_merge(std::size_t id);
    bool try_split(std::size_t id);
    void detach(std::size_t id);
    void attach(std::size_t id, std::size_t parent);
    std::size_t find_exact(const Pattern& p) const;

    HierarchyParams params_;
    std::vector<PatternNode> nodes_;
    std::vector<std::size_t> roots_;
    std::uint64_t presentations_ = 0;
};

// Indented text tree. Extensions are marked with '+', subset and overlap
// bookkeeping with '~'.
std::string render_tree(const HierarchyStore& store, const Vocabulary& vocab);

}  // namespace catclust
