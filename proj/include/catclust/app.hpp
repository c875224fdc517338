#pragma once
// Command implementations behind the catclust CLI. Each command returns the
// full text it would print so output can be compared byte for byte.

#include <optional>
#include <string>
#include <vector>

#include "catclust/counting_mechanism.hpp"
#include "catclust/grid.hpp"
#include "catclust/hierarchy.hpp"
#include "catclust/ingest.hpp"
#include "catclust/model.hpp"
#include "catclust/reinforce.hpp"

namespace catclust {

enum class Method { reinforce, cm, grid };
enum class OutputFormat { text, json, csv };

Method parse_method(std::string_view name);
std::string_view method_name(Method m);
OutputFormat parse_output_format(std::string_view name);

struct RunConfig {
    Method method = Method::grid;
    Weights weights;
    ExtractOptions extract;
    CoherenceMeasure coherence = CoherenceMeasure::difference;
    HierarchyParams hierarchy;
    std::string input_path;  // exactly one of input_path / fixture
    std::string fixture;
    TransactionFormat format;
    OutputFormat output = OutputFormat::text;
    std::size_t shards = 1;
    bool timing = false;

    // Throws ConfigError on inconsistent settings.
    void validate() const;
};

struct PhaseTiming {
    double parse_ms = 0;
    double count_ms = 0;
    double extract_ms = 0;
};

struct LoadedInput {
    std::string name;  // fixture id or path
    Dataset dataset;
    std::vector<Diagnostic> diagnostics;
    double parse_ms = 0;
};

LoadedInput load_input(const RunConfig& config);

struct MethodRun {
    Method method = Method::grid;
    Partition partition;
    std::vector<InterPatternLink> links;
    std::optional<ReinforceState> reinforce;
    std::vector<CountBand> bands;
    std::optional<InstanceStore> instances;
    std::optional<CountMatrix> grid;
    std::optional<GridClusterResult> grid_result;
    PhaseTiming timing;
};

// Counts with the configured method (sharded where the method allows it)
// and extracts a partition.
MethodRun run_method(const Dataset& dataset, const RunConfig& config);

// Sharded counting helpers; shards are contiguous event ranges merged in
// shard order.
CountMatrix count_grid(const Dataset& dataset, std::size_t shards);
ReinforceState count_reinforce(const Dataset& dataset, const Weights& weights, std::size_t shards);

std::string cmd_cluster(const RunConfig& config);
std::string cmd_compare(const RunConfig& config, const std::vector<Method>& methods,
                        const std::string& reference);
std::string cmd_tables();
std::string cmd_hierarchy(const RunConfig& config);

}  // namespace catclust
