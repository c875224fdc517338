#include "catclust/model.hpp"

#include <algorithm>
#include <set>

namespace catclust {

Vocabulary::Vocabulary(std::span<const std::string> labels) {
    for (const auto& l : labels) {
        if (index_.contains(l)) throw InputError("duplicate vocabulary label '" + l + "'");
        intern(l);
    }
}

VarId Vocabulary::intern(std::string_view label) {
    if (auto it = index_.find(label); it != index_.end()) return it->second;
    auto id = static_cast<VarId>(labels_.size());
    labels_.emplace_back(label);
    index_.emplace(labels_.back(), id);
    return id;
}

std::optional<VarId> Vocabulary::find(std::string_view label) const {
    if (auto it = index_.find(label); it != index_.end()) return it->second;
    return std::nullopt;
}

std::vector<Variable> Vocabulary::variables() const {
    std::vector<Variable> out;
    out.reserve(labels_.size());
    for (VarId i = 0; i < labels_.size(); ++i) out.push_back({i, labels_[i]});
    return out;
}

Event::Event(std::vector<VarId> members) : members_(std::move(members)) {
    if (members_.empty()) throw InputError("event has no members");
    auto sorted = members_;
    std::ranges::sort(sorted);
    if (std::ranges::adjacent_find(sorted) != sorted.end())
        throw InputError("event repeats a member");
}

bool Event::contains(VarId v) const { return std::ranges::find(members_, v) != members_.end(); }

Pattern Event::pattern() const {
    Pattern p = members_;
    std::ranges::sort(p);
    return p;
}

void Dataset::validate() const {
    for (std::size_t i = 0; i < events.size(); ++i)
        for (VarId v : events[i].members())
            if (v >= vocabulary.size())
                throw InputError("event " + std::to_string(i) + " refers to unknown variable id " +
                                 std::to_string(v));
}

void Weights::validate() const {
    if (!(omega_i > 0)) throw ConfigError("omega_i must be > 0");
    if (!(omega_g > 0)) throw ConfigError("omega_g must be > 0");
    if (!(delta >= 0)) throw ConfigError("delta must be >= 0");
}

void Partition::validate(std::size_t universe) const {
    std::vector<int> seen(universe, 0);
    auto mark = [&](VarId v) {
        if (v >= universe) throw std::logic_error("partition member outside universe");
        if (seen[v]++) throw std::logic_error("partition member appears twice");
    };
    for (const auto& c : clusters) {
        if (c.empty()) throw std::logic_error("empty cluster in partition");
        for (VarId v : c) mark(v);
    }
    for (VarId v : unassigned) mark(v);
    if (std::ranges::find(seen, 0) != seen.end())
        throw std::logic_error("partition does not cover the universe");
}

void Partition::normalize() {
    for (auto& c : clusters) std::ranges::sort(c);
    std::ranges::sort(clusters, [](const Pattern& a, const Pattern& b) { return a.front() < b.front(); });
    std::ranges::sort(unassigned);
}

VocabularyBuild build_vocabulary(const std::vector<std::vector<std::string>>& events) {
    VocabularyBuild out;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& tokens = events[i];
        if (tokens.empty()) {
            out.diagnostics.push_back({i + 1, "event has no tokens"});
            continue;
        }
        std::set<std::string_view> distinct(tokens.begin(), tokens.end());
        if (distinct.size() != tokens.size()) {
            out.diagnostics.push_back({i + 1, "event repeats a token"});
            continue;
        }
        std::vector<VarId> ids;
        ids.reserve(tokens.size());
        for (const auto& t : tokens) ids.push_back(out.dataset.vocabulary.intern(t));
        out.dataset.events.emplace_back(std::move(ids));
    }
    return out;
}

std::vector<std::vector<std::string>> decode_events(const Dataset& dataset) {
    std::vector<std::vector<std::string>> out;
    out.reserve(dataset.events.size());
    for (const auto& e : dataset.events) {
        auto& row = out.emplace_back();
        for (VarId v : e.members()) row.push_back(dataset.vocabulary.label(v));
    }
    return out;
}

Partition resolve_partition(const LabeledPartition& groups, const Vocabulary& vocab) {
    Partition p;
    std::vector<int> seen(vocab.size(), 0);
    for (const auto& group : groups) {
        if (group.empty()) throw InputError("reference partition has an empty group");
        Pattern ids;
        for (const auto& label : group) {
            auto id = vocab.find(label);
            if (!id) throw InputError("reference label '" + label + "' is not in the data vocabulary");
            if (seen[*id]++) throw InputError("reference label '" + label + "' appears twice");
            ids.push_back(*id);
        }
        if (ids.size() == 1)
            p.unassigned.push_back(ids.front());
        else
            p.clusters.push_back(std::move(ids));
    }
    for (VarId v = 0; v < vocab.size(); ++v)
        if (!seen[v])
            throw InputError("data variable '" + vocab.label(v) + "' is missing from the reference partition");
    p.normalize();
    return p;
}

LabeledPartition label_partition(const Partition& partition, const Vocabulary& vocab,
                                 bool include_singletons) {
    LabeledPartition out;
    for (const auto& c : partition.clusters) {
        auto& g = out.emplace_back();
        for (VarId v : c) g.push_back(vocab.label(v));
    }
    if (include_singletons)
        for (VarId v : partition.unassigned) out.push_back({vocab.label(v)});
    return out;
}

bool overlaps(std::span<const VarId> a, std::span<const VarId> b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return true;
        if (*i < *j)
            ++i;
        else
            ++j;
    }
    return false;
}

std::string join_labels(std::span<const VarId> ids, const Vocabulary& vocab, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += sep;
        out += vocab.label(ids[i]);
    }
    return out;
}

}  // namespace catclust
