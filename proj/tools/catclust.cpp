// catclust: clustering of categorical event data by co-occurrence counting.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catclust/app.hpp"

namespace {

struct Options {
    std::string method = "grid";
    std::string format = "text";
    std::string gap_tie = "larger";
    std::string singletons = "unassigned";
    std::string coherence = "difference";
    std::string methods = "reinforce,cm,grid";
    std::string reference = "appendix_a_reference";
    std::string delimiter = ",";
    bool all_members = false;
    bool no_mutual = false;
    catclust::Count tau_link = 2;
};

void add_input_options(CLI::App* cmd, catclust::RunConfig& cfg, Options& opt) {
    cmd->add_option("--input", cfg.input_path, "Transaction file (one record per line)");
    cmd->add_option("--fixture", cfg.fixture, "Built-in dataset: seven_event");
    cmd->add_option("--format", opt.format, "Output format: text, json or csv");
    cmd->add_option("--delimiter", opt.delimiter, "Field delimiter of the input file");
    cmd->add_flag("--all-members", opt.all_members, "Treat every field as a member (no leading record label)");
    cmd->add_flag("--transpose", cfg.format.transpose, "Cluster record labels by the members they share");
    cmd->add_flag("--timing", cfg.timing, "Report per-phase timing (output is then no longer reproducible)");
}

void add_engine_options(CLI::App* cmd, catclust::RunConfig& cfg, Options& opt) {
    cmd->add_option("--omega-i", cfg.weights.omega_i, "Individual increment");
    cmd->add_option("--omega-g", cfg.weights.omega_g, "Group increment");
    cmd->add_option("--delta", cfg.weights.delta, "Absence decrement (reinforce)");
    cmd->add_option("--tau-link", opt.tau_link, "Minimum cell count for an inter-pattern link");
    cmd->add_option("--gap-tie", opt.gap_tie, "Head-set cut on tied gaps: larger or smaller");
    cmd->add_flag("--no-mutual", opt.no_mutual, "Skip the reciprocal head-set check");
    cmd->add_option("--singletons", opt.singletons, "Unclustered variables: unassigned or attach");
    cmd->add_option("--coherence", opt.coherence, "Instance coherence: difference or ratio");
    cmd->add_option("--shards", cfg.shards, "Worker shards for counting");
}

void add_hierarchy_options(CLI::App* cmd, catclust::RunConfig& cfg) {
    cmd->add_option("--theta-merge", cfg.hierarchy.theta_merge, "Extension dominance ratio for merging");
    cmd->add_option("--theta-split", cfg.hierarchy.theta_split, "Subset dominance ratio for splitting");
    cmd->add_option("--theta-new", cfg.hierarchy.theta_new, "Overlap fraction below which a new root is made");
}

void finish_config(catclust::RunConfig& cfg, const Options& opt) {
    using namespace catclust;
    cfg.method = parse_method(opt.method);
    cfg.output = parse_output_format(opt.format);
    if (opt.delimiter.size() != 1) throw ConfigError("--delimiter must be a single character");
    cfg.format.delimiter = opt.delimiter.front();
    cfg.format.label_policy =
        opt.all_members ? LabelPolicy::all_fields_are_members : LabelPolicy::first_field_is_record_label;
    cfg.extract.tau_link = opt.tau_link;
    cfg.extract.mutual_check = !opt.no_mutual;
    if (opt.gap_tie == "larger")
        cfg.extract.gap_tie = GapTie::toward_larger;
    else if (opt.gap_tie == "smaller")
        cfg.extract.gap_tie = GapTie::toward_smaller;
    else
        throw ConfigError("--gap-tie must be larger or smaller");
    if (opt.singletons == "unassigned")
        cfg.extract.singletons = SingletonPolicy::unassigned;
    else if (opt.singletons == "attach")
        cfg.extract.singletons = SingletonPolicy::attach_strongest;
    else
        throw ConfigError("--singletons must be unassigned or attach");
    if (opt.coherence == "difference")
        cfg.coherence = CoherenceMeasure::difference;
    else if (opt.coherence == "ratio")
        cfg.coherence = CoherenceMeasure::ratio;
    else
        throw ConfigError("--coherence must be difference or ratio");
}

std::vector<catclust::Method> split_methods(const std::string& list) {
    std::vector<catclust::Method> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto end = list.find(',', start);
        const auto item = list.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!item.empty()) out.push_back(catclust::parse_method(item));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clustering of categorical event data by co-occurrence counting"};
    app.require_subcommand(1);

    catclust::RunConfig cfg;
    Options opt;

    auto* cluster = app.add_subcommand("cluster", "Run one counting method and extract clusters");
    cluster->add_option("--method", opt.method, "reinforce, cm or grid");
    add_input_options(cluster, cfg, opt);
    add_engine_options(cluster, cfg, opt);

    auto* compare = app.add_subcommand("compare", "Score methods against a reference partition");
    compare->add_option("--methods", opt.methods, "Comma-separated methods");
    compare->add_option("--reference", opt.reference, "appendix_a_reference or a JSON file of label lists");
    add_input_options(compare, cfg, opt);
    add_engine_options(compare, cfg, opt);

    auto* tables = app.add_subcommand("tables", "Print the seven-event worked tables");

    auto* hierarchy = app.add_subcommand("hierarchy", "Build and consolidate the pattern hierarchy");
    add_input_options(hierarchy, cfg, opt);
    add_hierarchy_options(hierarchy, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        finish_config(cfg, opt);
        std::string output;
        if (*cluster)
            output = catclust::cmd_cluster(cfg);
        else if (*compare)
            output = catclust::cmd_compare(cfg, split_methods(opt.methods), opt.reference);
        else if (*tables)
            output = catclust::cmd_tables();
        else if (*hierarchy)
            output = catclust::cmd_hierarchy(cfg);
        std::cout << output;
        return 0;
    } catch (const catclust::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const catclust::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 1;
    }
}
