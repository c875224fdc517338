#pragma once
// Shared vocabulary, event, dataset and result types used by every engine.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace catclust {

using VarId = std::uint32_t;

// A sorted, duplicate-free set of variable ids.
using Pattern = std::vector<VarId>;

// Malformed or unreadable input data (CLI exit code 1).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameters or options (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Variable {
    VarId id = 0;
    std::string label;
};

// Label <-> dense id mapping. Ids are handed out in first-seen order.
class Vocabulary {
public:
    Vocabulary() = default;
    explicit Vocabulary(std::span<const std::string> labels);

    VarId intern(std::string_view label);
    std::optional<VarId> find(std::string_view label) const;
    const std::string& label(VarId id) const { return labels_.at(id); }
    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::vector<Variable> variables() const;

    bool operator==(const Vocabulary& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
    std::map<std::string, VarId, std::less<>> index_;
};

// One presentation of co-occurring variables. Members keep presentation
// order; the first member is the source.
class Event {
public:
    Event() = default;
    // Throws InputError when empty or when a member repeats.
    explicit Event(std::vector<VarId> members);

    const std::vector<VarId>& members() const { return members_; }
    VarId source() const { return members_.front(); }
    std::size_t size() const { return members_.size(); }
    bool contains(VarId v) const;
    // Members as a sorted Pattern.
    Pattern pattern() const;

    bool operator==(const Event&) const = default;

private:
    std::vector<VarId> members_;
};

struct Dataset {
    Vocabulary vocabulary;
    std::vector<Event> events;

    // Throws InputError if an event refers to an id outside the vocabulary.
    void validate() const;
    bool operator==(const Dataset&) const = default;
};

struct Weights {
    double omega_i = 1.0;  // individual increment
    double omega_g = 1.0;  // group increment
    double delta = 0.0;    // absence decrement (single-variable reinforcement)

    // Throws ConfigError on omega <= 0 or delta < 0.
    void validate() const;
};

struct Partition {
    std::vector<Pattern> clusters;
    Pattern unassigned;

    // Throws std::logic_error unless clusters are non-empty, pairwise
    // disjoint and together with unassigned cover exactly 0..universe-1.
    void validate(std::size_t universe) const;
    // Sorts members of every block and orders clusters by smallest member.
    void normalize();
    bool operator==(const Partition&) const = default;
};

struct InterPatternLink {
    VarId a = 0;
    VarId b = 0;
    double strength = 0;
    bool operator==(const InterPatternLink&) const = default;
};

// A partition expressed through labels, e.g. a reference clustering loaded
// from disk before it is resolved against a vocabulary.
using LabeledPartition = std::vector<std::vector<std::string>>;

struct Diagnostic {
    std::size_t line = 0;  // 1-based source line, 0 when not line-bound
    std::string message;
};

struct VocabularyBuild {
    Dataset dataset;
    std::vector<Diagnostic> diagnostics;
};

// Interns raw token lists. Events with a repeated token are rejected with a
// diagnostic (line = 1-based index of the event) and left out.
VocabularyBuild build_vocabulary(const std::vector<std::vector<std::string>>& events);

// Inverse of build_vocabulary for the events that were kept.
std::vector<std::vector<std::string>> decode_events(const Dataset& dataset);

// Resolves a labelled partition against a vocabulary. Labels missing from
// the vocabulary, repeated labels, and vocabulary entries the partition does
// not mention all raise InputError. Singleton groups become unassigned.
Partition resolve_partition(const LabeledPartition& groups, const Vocabulary& vocab);

LabeledPartition label_partition(const Partition& partition, const Vocabulary& vocab,
                                 bool include_singletons = false);

// True if the two sorted patterns share a member.
bool overlaps(std::span<const VarId> a, std::span<const VarId> b);

std::string join_labels(std::span<const VarId> ids, const Vocabulary& vocab,
                        std::string_view sep = ", ");

}  // namespace catclust
