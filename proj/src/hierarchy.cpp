#include "catclust/hierarchy.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace catclust {

namespace {

bool is_subset(const Pattern& small, const Pattern& big) {
    return std::ranges::includes(big, small);
}

bool is_proper_subset(const Pattern& small, const Pattern& big) {
    return small.size() < big.size() && is_subset(small, big);
}

Pattern difference(const Pattern& a, const Pattern& b) {
    Pattern out;
    std::ranges::set_difference(a, b, std::back_inserter(out));
    return out;
}

std::size_t intersection_size(const Pattern& a, const Pattern& b) {
    std::size_t n = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) {
            ++n;
            ++i;
            ++j;
        } else if (*i < *j) {
            ++i;
        } else {
            ++j;
        }
    }
    return n;
}

template <class Map>
void add_counts(Map& into, const Map& from) {
    for (const auto& [k, v] : from) into[k] += v;
}

}  // namespace

void HierarchyParams::validate() const {
    if (!(theta_new > 0 && theta_new <= 1)) throw ConfigError("theta_new must lie in (0, 1]");
    if (!(theta_merge > 1)) throw ConfigError("theta_merge must be > 1");
    if (!(theta_split > 1)) throw ConfigError("theta_split must be > 1");
}

HierarchyStore::HierarchyStore(HierarchyParams params) : params_(params) { params_.validate(); }

std::vector<std::size_t> HierarchyStore::preorder() const {
    std::vector<std::size_t> out;
    std::vector<std::size_t> stack(roots_.rbegin(), roots_.rend());
    while (!stack.empty()) {
        const std::size_t id = stack.back();
        stack.pop_back();
        out.push_back(id);
        const auto& ch = nodes_[id].children;
        stack.insert(stack.end(), ch.rbegin(), ch.rend());
    }
    return out;
}

std::size_t HierarchyStore::node_count() const {
    return static_cast<std::size_t>(std::ranges::count_if(nodes_, &PatternNode::alive));
}

std::uint64_t HierarchyStore::occurrence_mass() const {
    std::uint64_t mass = 0;
    for (const auto& n : nodes_) {
        if (!n.alive) continue;
        mass += n.occurrences;
        for (const auto& [p, c] : n.subsets) mass += c;
        for (const auto& [p, c] : n.overlaps) mass += c;
    }
    return mass;
}

std::size_t HierarchyStore::find_exact(const Pattern& p) const {
    for (std::size_t id = 0; id < nodes_.size(); ++id)
        if (nodes_[id].alive && nodes_[id].pattern == p) return id;
    return PatternNode::npos;
}

void HierarchyStore::present(const Event& event) {
    ++presentations_;
    const Pattern pat = event.pattern();
    const auto order = preorder();

    std::size_t container = PatternNode::npos;
    for (std::size_t id : order) {
        const auto& n = nodes_[id];
        if (n.pattern == pat) {
            ++nodes_[id].occurrences;
            return;
        }
        if (is_proper_subset(n.pattern, pat) &&
            (container == PatternNode::npos || n.pattern.size() > nodes_[container].pattern.size()))
            container = id;
    }

    if (container != PatternNode::npos) {
        PatternNode child;
        child.pattern = pat;
        child.occurrences = 1;
        nodes_.push_back(std::move(child));
        attach(nodes_.size() - 1, container);
        return;
    }

    // Best overlap: highest fraction of the event covered, then the smaller
    // node, then the earlier node in depth-first order.
    std::size_t best = PatternNode::npos;
    std::size_t best_shared = 0;
    for (std::size_t id : order) {
        const std::size_t shared = intersection_size(nodes_[id].pattern, pat);
        if (shared == 0) continue;
        if (best == PatternNode::npos || shared > best_shared ||
            (shared == best_shared && nodes_[id].pattern.size() < nodes_[best].pattern.size())) {
            best = id;
            best_shared = shared;
        }
    }

    const double fraction = static_cast<double>(best_shared) / static_cast<double>(pat.size());
    if (best != PatternNode::npos && fraction >= params_.theta_new) {
        if (best_shared == pat.size())
            ++nodes_[best].subsets[pat];
        else
            ++nodes_[best].overlaps[pat];
        return;
    }

    PatternNode root;
    root.pattern = pat;
    root.occurrences = 1;
    nodes_.push_back(std::move(root));
    roots_.push_back(nodes_.size() - 1);
}

void HierarchyStore::detach(std::size_t id) {
    auto& n = nodes_[id];
    auto& siblings = n.parent == PatternNode::npos ? roots_ : nodes_[n.parent].children;
    std::erase(siblings, id);
    n.parent = PatternNode::npos;
    n.extension.clear();
}

void HierarchyStore::attach(std::size_t id, std::size_t parent) {
    auto& n = nodes_[id];
    n.parent = parent;
    if (parent == PatternNode::npos) {
        n.extension.clear();
        roots_.push_back(id);
    } else {
        n.extension = difference(n.pattern, nodes_[parent].pattern);
        nodes_[parent].children.push_back(id);
    }
}

bool HierarchyStore::try_merge(std::size_t id) {
    const double limit = params_.theta_merge * static_cast<double>(nodes_[id].occurrences);
    std::size_t pick = PatternNode::npos;
    for (std::size_t c : nodes_[id].children) {
        const auto& child = nodes_[c];
        if (static_cast<double>(child.occurrences) < limit) continue;
        if (pick == PatternNode::npos || child.occurrences > nodes_[pick].occurrences ||
            (child.occurrences == nodes_[pick].occurrences && child.extension < nodes_[pick].extension))
            pick = c;
    }
    if (pick == PatternNode::npos) return false;

    PatternNode& parent = nodes_[id];
    PatternNode& child = nodes_[pick];
    parent.pattern = child.pattern;
    parent.occurrences += child.occurrences;
    add_counts(parent.subsets, child.subsets);
    add_counts(parent.overlaps, child.overlaps);
    child.alive = false;
    child.subsets.clear();
    child.overlaps.clear();
    child.occurrences = 0;

    if (parent.parent != PatternNode::npos)
        parent.extension = difference(parent.pattern, nodes_[parent.parent].pattern);

    auto siblings = std::move(parent.children);
    auto grandchildren = std::move(child.children);
    parent.children.clear();
    child.children.clear();
    for (std::size_t g : grandchildren) {
        nodes_[g].parent = PatternNode::npos;
        attach(g, id);
    }
    // Siblings that no longer extend the merged pattern become roots of
    // their own.
    for (std::size_t s : siblings) {
        if (s == pick) continue;
        nodes_[s].parent = PatternNode::npos;
        if (is_proper_subset(nodes_[id].pattern, nodes_[s].pattern))
            attach(s, id);
        else
            attach(s, PatternNode::npos);
    }
    return true;
}

bool HierarchyStore::try_split(std::size_t id) {
    const double limit = params_.theta_split * static_cast<double>(nodes_[id].occurrences);
    const Pattern* pick = nullptr;
    std::uint64_t pick_count = 0;
    for (const auto& [sub, count] : nodes_[id].subsets) {
        if (static_cast<double>(count) < limit) continue;
        if (!pick || count > pick_count) {
            pick = &sub;
            pick_count = count;
        }
    }
    if (!pick) return false;
    const Pattern subset = *pick;
    nodes_[id].subsets.erase(subset);

    // A node with exactly this pattern already exists elsewhere: the
    // presentations were exact matches for it all along.
    if (std::size_t existing = find_exact(subset); existing != PatternNode::npos) {
        nodes_[existing].occurrences += pick_count;
        return true;
    }

    PatternNode fresh;
    fresh.pattern = subset;
    fresh.occurrences = pick_count;
    for (auto it = nodes_[id].subsets.begin(); it != nodes_[id].subsets.end();) {
        if (is_proper_subset(it->first, subset)) {
            fresh.subsets.insert(*it);
            it = nodes_[id].subsets.erase(it);
        } else {
            ++it;
        }
    }
    nodes_.push_back(std::move(fresh));
    const std::size_t split_id = nodes_.size() - 1;

    // Hang the new node under the deepest ancestor it still extends.
    std::size_t anchor = nodes_[id].parent;
    while (anchor != PatternNode::npos && !is_proper_subset(nodes_[anchor].pattern, subset))
        anchor = nodes_[anchor].parent;

    detach(id);
    attach(split_id, anchor);
    attach(id, split_id);
    return true;
}

std::size_t HierarchyStore::consolidate() {
    std::size_t steps = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t id : preorder()) {
            if (!nodes_[id].alive) continue;
            if (try_merge(id) || try_split(id)) {
                ++steps;
                changed = true;
                break;
            }
        }
    }
    return steps;
}

bool HierarchyStore::at_fixed_point() const {
    for (const auto& n : nodes_) {
        if (!n.alive) continue;
        const double occ = static_cast<double>(n.occurrences);
        for (std::size_t c : n.children)
            if (static_cast<double>(nodes_[c].occurrences) >= params_.theta_merge * occ) return false;
        for (const auto& [sub, count] : n.subsets)
            if (static_cast<double>(count) >= params_.theta_split * occ) return false;
    }
    return true;
}

namespace {

std::string bracket(const Pattern& p, const Vocabulary& vocab) {
    return "{" + join_labels(p, vocab) + "}";
}

void render_node(std::ostringstream& out, const HierarchyStore& store, std::size_t id,
                 const Vocabulary& vocab, int depth) {
    const auto& n = store.node(id);
    const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    out << indent;
    if (n.parent == PatternNode::npos)
        out << bracket(n.pattern, vocab);
    else
        out << "+ " << bracket(n.extension, vocab) << " -> " << bracket(n.pattern, vocab);
    out << " x" << n.occurrences << '\n';
    for (const auto& [sub, count] : n.subsets)
        out << indent << "  ~ subset " << bracket(sub, vocab) << " x" << count << '\n';
    for (const auto& [ov, count] : n.overlaps)
        out << indent << "  ~ overlap " << bracket(ov, vocab) << " x" << count << '\n';
    for (std::size_t c : n.children) render_node(out, store, c, vocab, depth + 1);
}

}  // namespace

std::string render_tree(const HierarchyStore& store, const Vocabulary& vocab) {
    std::ostringstream out;
    for (std::size_t r : store.roots()) render_node(out, store, r, vocab, 0);
    return out.str();
}

}  // namespace catclust
