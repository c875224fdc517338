#pragma once
// Counting mechanism over unique pattern instances.
//
// Every distinct presented member set becomes an instance with a local count
// I (exact-match presentations) and a global count G (presentations sharing
// at least one member with the instance, counted from the instance's creation
// event onward, creation event included). Instances whose G and I stay close
// are the coherent ones and are picked as clusters.

#include <cstddef>
#include <map>
#include <vector>

#include "catclust/model.hpp"

namespace catclust {

struct InstanceRecord {
    Pattern pattern;
    double local_count = 0;   // I
    double global_count = 0;  // G
    std::size_t created_at = 0;

    bool operator==(const InstanceRecord&) const = default;
};

enum class CoherenceMeasure {
    difference,  // G - I
    ratio,       // 1 - I / G
};

double coherence(const InstanceRecord& record, CoherenceMeasure measure = CoherenceMeasure::difference);

class InstanceStore {
public:
    InstanceStore() = default;

    void present(const Event& event, const Weights& weights = {});

    const std::vector<InstanceRecord>& instances() const { return instances_; }
    const InstanceRecord* find(const Pattern& pattern) const;
    std::size_t event_counter() const { return event_counter_; }
    bool empty() const { return instances_.empty(); }

private:
    std::vector<InstanceRecord> instances_;
    std::map<Pattern, std::size_t> by_pattern_;
    // variable id -> instances containing it, for overlap lookups
    std::vector<std::vector<std::size_t>> postings_;
    std::vector<std::size_t> touched_;  // last event index that touched each instance
    std::size_t event_counter_ = 0;
};

// Ranking used by select_clusters: coherence ascending, then larger I, then
// smaller pattern, then lexicographic pattern order.
bool ranks_before(const InstanceRecord& a, const InstanceRecord& b,
                  CoherenceMeasure measure = CoherenceMeasure::difference);

// Greedy selection of disjoint instances in rank order. Variables not covered
// by an accepted instance are unassigned.
Partition select_clusters(const InstanceStore& store, std::size_t universe,
                          CoherenceMeasure measure = CoherenceMeasure::difference);

}  // namespace catclust
