#include "catclust/app.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "catclust/eval.hpp"

namespace catclust {

using ordered_json = nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string num(double x) {
    if (std::isfinite(x) && x == std::floor(x) && std::fabs(x) < 1e15) {
        std::ostringstream s;
        s << static_cast<long long>(x);
        return s.str();
    }
    std::ostringstream s;
    s << std::setprecision(6) << x;
    return s.str();
}

std::string fixed(double x, int digits = 4) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << x;
    return s.str();
}

std::vector<std::string> labels_of(const Pattern& p, const Vocabulary& vocab) {
    std::vector<std::string> out;
    for (VarId v : p) out.push_back(vocab.label(v));
    return out;
}

std::string braced(const Pattern& p, const Vocabulary& vocab) { return "{" + join_labels(p, vocab) + "}"; }

template <class Work>
void run_shards(std::size_t events, std::size_t shards, Work work) {
    shards = std::max<std::size_t>(1, std::min(shards, std::max<std::size_t>(events, 1)));
    if (shards == 1) {
        work(0, 0, events);
        return;
    }
    std::vector<std::jthread> workers;
    workers.reserve(shards);
    for (std::size_t s = 0; s < shards; ++s) {
        const std::size_t begin = events * s / shards;
        const std::size_t end = events * (s + 1) / shards;
        workers.emplace_back(work, s, begin, end);
    }
}

}  // namespace

Method parse_method(std::string_view name) {
    if (name == "reinforce") return Method::reinforce;
    if (name == "cm") return Method::cm;
    if (name == "grid") return Method::grid;
    throw ConfigError("unknown method '" + std::string(name) + "' (expected reinforce, cm or grid)");
}

std::string_view method_name(Method m) {
    switch (m) {
    case Method::reinforce: return "reinforce";
    case Method::cm: return "cm";
    case Method::grid: return "grid";
    }
    return "?";
}

OutputFormat parse_output_format(std::string_view name) {
    if (name == "text") return OutputFormat::text;
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    throw ConfigError("unknown format '" + std::string(name) + "' (expected text, json or csv)");
}

void RunConfig::validate() const {
    if (input_path.empty() == fixture.empty()) throw ConfigError("give exactly one of --input or --fixture");
    weights.validate();
    hierarchy.validate();
    if (extract.tau_link < 1) throw ConfigError("tau_link must be >= 1");
    if (shards < 1) throw ConfigError("shards must be >= 1");
}

LoadedInput load_input(const RunConfig& config) {
    const auto start = Clock::now();
    LoadedInput in;
    if (!config.fixture.empty()) {
        in.name = config.fixture;
        auto fx = load_fixture(config.fixture);
        if (!std::holds_alternative<Dataset>(fx))
            throw InputError("fixture '" + config.fixture + "' is a reference partition, not a dataset");
        in.dataset = std::get<Dataset>(std::move(fx));
    } else {
        in.name = config.input_path;
        auto parsed = parse_transactions_file(config.input_path, config.format);
        in.dataset = std::move(parsed.dataset);
        in.diagnostics = std::move(parsed.diagnostics);
    }
    in.parse_ms = elapsed_ms(start);
    return in;
}

CountMatrix count_grid(const Dataset& dataset, std::size_t shards) {
    const std::size_t n = dataset.vocabulary.size();
    std::vector<CountMatrix> parts(std::max<std::size_t>(shards, 1), CountMatrix(n));
    run_shards(dataset.events.size(), shards, [&](std::size_t s, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) parts[s].update(dataset.events[i]);
    });
    CountMatrix total(n);
    for (const auto& p : parts) total.merge(p);
    return total;
}

ReinforceState count_reinforce(const Dataset& dataset, const Weights& weights, std::size_t shards) {
    const std::size_t n = dataset.vocabulary.size();
    // The decrement clamps at zero, which makes counting order dependent.
    if (weights.delta > 0) shards = 1;
    std::vector<ReinforceState> parts(std::max<std::size_t>(shards, 1), ReinforceState(n));
    run_shards(dataset.events.size(), shards, [&](std::size_t s, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) parts[s].update(dataset.events[i], weights);
    });
    ReinforceState total(n);
    for (const auto& p : parts) total.merge(p);
    return total;
}

MethodRun run_method(const Dataset& dataset, const RunConfig& config) {
    MethodRun run;
    run.method = config.method;
    const std::size_t n = dataset.vocabulary.size();

    auto start = Clock::now();
    switch (config.method) {
    case Method::reinforce: {
        run.reinforce = count_reinforce(dataset, config.weights, config.shards);
        run.timing.count_ms = elapsed_ms(start);
        start = Clock::now();
        run.bands = band_clusters(*run.reinforce);
        run.partition = bands_to_partition(run.bands, n);
        break;
    }
    case Method::cm: {
        InstanceStore store;
        for (const auto& e : dataset.events) store.present(e, config.weights);
        run.timing.count_ms = elapsed_ms(start);
        start = Clock::now();
        run.partition = select_clusters(store, n, config.coherence);
        run.instances = std::move(store);
        break;
    }
    case Method::grid: {
        run.grid = count_grid(dataset, config.shards);
        run.timing.count_ms = elapsed_ms(start);
        start = Clock::now();
        run.grid_result = extract_clusters(*run.grid, config.extract);
        run.partition = run.grid_result->partition;
        run.links = run.grid_result->links;
        break;
    }
    }
    run.timing.extract_ms = elapsed_ms(start);
    run.partition.validate(n);
    return run;
}

namespace {

ordered_json parameters_json(const RunConfig& c) {
    ordered_json p;
    p["omega_i"] = c.weights.omega_i;
    p["omega_g"] = c.weights.omega_g;
    p["delta"] = c.weights.delta;
    p["tau_link"] = c.extract.tau_link;
    p["gap_tie"] = c.extract.gap_tie == GapTie::toward_larger ? "larger" : "smaller";
    p["mutual_check"] = c.extract.mutual_check;
    p["singletons"] = c.extract.singletons == SingletonPolicy::unassigned ? "unassigned" : "attach";
    p["coherence"] = c.coherence == CoherenceMeasure::difference ? "difference" : "ratio";
    p["shards"] = c.shards;
    return p;
}

ordered_json timing_json(const PhaseTiming& t) {
    return {{"parse", t.parse_ms}, {"count", t.count_ms}, {"extract", t.extract_ms}};
}

void text_partition(std::ostream& out, const Partition& p, const Vocabulary& vocab) {
    out << "clusters: " << p.clusters.size() << '\n';
    for (std::size_t i = 0; i < p.clusters.size(); ++i)
        out << "  " << i + 1 << ". " << join_labels(p.clusters[i], vocab) << '\n';
    out << "unassigned: " << (p.unassigned.empty() ? "-" : join_labels(p.unassigned, vocab)) << '\n';
}

void text_matrix(std::ostream& out, const CountMatrix& grid, const Vocabulary& vocab) {
    for (VarId c = 0; c < grid.size(); ++c) out << '\t' << vocab.label(c);
    out << '\n';
    for (VarId r = 0; r < grid.size(); ++r) {
        out << vocab.label(r);
        for (VarId c = 0; c < grid.size(); ++c) {
            out << '\t';
            if (r == c)
                out << 'x';
            else
                out << grid.at(r, c);
        }
        out << '\n';
    }
}

constexpr std::size_t kTextMatrixLimit = 30;

std::string render_cluster_text(const RunConfig& cfg, const LoadedInput& in, const MethodRun& run) {
    const auto& vocab = in.dataset.vocabulary;
    std::ostringstream out;
    out << "method: " << method_name(run.method) << '\n';
    out << "input: " << in.name << '\n';
    out << "variables: " << vocab.size() << "  events: " << in.dataset.events.size()
        << "  skipped lines: " << in.diagnostics.size() << '\n';

    switch (run.method) {
    case Method::reinforce:
        out << "counts:\n";
        for (VarId v = 0; v < vocab.size(); ++v)
            out << "  " << vocab.label(v) << '\t' << num(run.reinforce->count(v)) << '\n';
        out << "bands:\n";
        for (const auto& b : run.bands) out << "  " << num(b.count) << ": " << join_labels(b.members, vocab) << '\n';
        break;
    case Method::cm:
        out << "instances: " << run.instances->instances().size() << '\n';
        out << "  I\tG\tG-I\tcreated\tpattern\n";
        for (const auto& r : run.instances->instances())
            out << "  " << num(r.local_count) << '\t' << num(r.global_count) << '\t'
                << num(coherence(r, cfg.coherence)) << '\t' << r.created_at << '\t' << braced(r.pattern, vocab)
                << '\n';
        break;
    case Method::grid:
        if (vocab.size() <= kTextMatrixLimit) {
            out << "matrix:\n";
            text_matrix(out, *run.grid, vocab);
        } else {
            out << "matrix: omitted for " << vocab.size() << " variables (use --format csv)\n";
        }
        break;
    }

    text_partition(out, run.partition, vocab);
    if (run.method == Method::grid) {
        out << "links (tau " << cfg.extract.tau_link << "): " << run.links.size() << '\n';
        for (const auto& l : run.links)
            out << "  " << vocab.label(l.a) << " - " << vocab.label(l.b) << '\t' << num(l.strength) << '\n';
    }
    if (cfg.timing) {
        out << "timing_ms: parse " << fixed(run.timing.parse_ms, 3) << "  count " << fixed(run.timing.count_ms, 3)
            << "  extract " << fixed(run.timing.extract_ms, 3) << '\n';
    }
    return out.str();
}

std::string render_cluster_json(const RunConfig& cfg, const LoadedInput& in, const MethodRun& run) {
    const auto& vocab = in.dataset.vocabulary;
    ordered_json j;
    j["method"] = method_name(run.method);
    j["parameters"] = parameters_json(cfg);
    j["input"] = in.name;
    j["variables"] = vocab.labels();
    j["events"] = in.dataset.events.size();
    j["skipped_lines"] = in.diagnostics.size();

    auto clusters = ordered_json::array();
    for (const auto& c : run.partition.clusters) clusters.push_back(labels_of(c, vocab));
    j["clusters"] = clusters;
    j["unassigned"] = labels_of(run.partition.unassigned, vocab);
    auto links = ordered_json::array();
    for (const auto& l : run.links)
        links.push_back({{"a", vocab.label(l.a)}, {"b", vocab.label(l.b)}, {"strength", l.strength}});
    j["links"] = links;

    switch (run.method) {
    case Method::reinforce: {
        ordered_json counts = ordered_json::object();
        for (VarId v = 0; v < vocab.size(); ++v) counts[vocab.label(v)] = run.reinforce->count(v);
        j["counts"] = counts;
        auto bands = ordered_json::array();
        for (const auto& b : run.bands) bands.push_back({{"count", b.count}, {"members", labels_of(b.members, vocab)}});
        j["bands"] = bands;
        break;
    }
    case Method::cm: {
        auto inst = ordered_json::array();
        for (const auto& r : run.instances->instances())
            inst.push_back({{"pattern", labels_of(r.pattern, vocab)},
                            {"local_count", r.local_count},
                            {"global_count", r.global_count},
                            {"coherence", coherence(r, cfg.coherence)},
                            {"created_at", r.created_at}});
        j["instances"] = inst;
        break;
    }
    case Method::grid: {
        auto rows = ordered_json::array();
        for (VarId r = 0; r < run.grid->size(); ++r) {
            auto span = run.grid->row(r);
            rows.push_back(std::vector<Count>(span.begin(), span.end()));
        }
        j["matrix"] = rows;
        break;
    }
    }
    if (cfg.timing) j["timing_ms"] = timing_json(run.timing);
    return j.dump(2) + "\n";
}

std::string render_cluster_csv(const RunConfig& cfg, const LoadedInput& in, const MethodRun& run) {
    const auto& vocab = in.dataset.vocabulary;
    std::ostringstream out;
    switch (run.method) {
    case Method::reinforce:
        out << "variable,count\n";
        for (VarId v = 0; v < vocab.size(); ++v) out << vocab.label(v) << ',' << num(run.reinforce->count(v)) << '\n';
        break;
    case Method::cm:
        out << "pattern,local_count,global_count,coherence,created_at\n";
        for (const auto& r : run.instances->instances())
            out << join_labels(r.pattern, vocab, ";") << ',' << num(r.local_count) << ',' << num(r.global_count)
                << ',' << num(coherence(r, cfg.coherence)) << ',' << r.created_at << '\n';
        break;
    case Method::grid:
        write_matrix_csv(out, *run.grid, vocab);
        break;
    }
    out << "\ncluster,variable\n";
    for (std::size_t i = 0; i < run.partition.clusters.size(); ++i)
        for (VarId v : run.partition.clusters[i]) out << i + 1 << ',' << vocab.label(v) << '\n';
    for (VarId v : run.partition.unassigned) out << "0," << vocab.label(v) << '\n';
    return out.str();
}

LabeledPartition load_reference(const std::string& reference) {
    if (reference == kAppendixAFixture) return appendix_a_reference();
    if (reference == kSevenEventFixture) throw InputError("fixture 'seven_event' is a dataset, not a reference partition");
    return read_labeled_partition_file(reference);
}

ordered_json report_json(const AgreementReport& r, const Vocabulary& vocab) {
    ordered_json j;
    j["pairwise_precision"] = r.pairwise_precision;
    j["pairwise_recall"] = r.pairwise_recall;
    j["pairwise_f1"] = r.pairwise_f1;
    j["rand_index"] = r.rand_index;
    j["produced_pairs"] = r.produced_pairs;
    j["reference_pairs"] = r.reference_pairs;
    j["shared_pairs"] = r.shared_pairs;
    j["exact_cluster_matches"] = r.exact_cluster_matches;
    j["produced_blocks"] = r.produced_blocks;
    j["reference_blocks"] = r.reference_blocks;
    auto rows = ordered_json::array();
    for (const auto& m : r.per_cluster) {
        if (m.produced.size() < 2) continue;
        rows.push_back({{"produced", labels_of(m.produced, vocab)},
                        {"best_reference", labels_of(m.best_reference, vocab)},
                        {"overlap", m.overlap},
                        {"jaccard", m.jaccard}});
    }
    j["per_cluster"] = rows;
    return j;
}

}  // namespace

std::string cmd_cluster(const RunConfig& config) {
    config.validate();
    const auto in = load_input(config);
    auto run = run_method(in.dataset, config);
    run.timing.parse_ms = in.parse_ms;
    switch (config.output) {
    case OutputFormat::json: return render_cluster_json(config, in, run);
    case OutputFormat::csv: return render_cluster_csv(config, in, run);
    case OutputFormat::text:
    default: return render_cluster_text(config, in, run);
    }
}

std::string cmd_compare(const RunConfig& config, const std::vector<Method>& methods, const std::string& reference) {
    config.validate();
    if (methods.empty()) throw ConfigError("compare needs at least one method");
    if (config.output == OutputFormat::csv) throw ConfigError("compare supports text and json output");

    const auto in = load_input(config);
    const auto& vocab = in.dataset.vocabulary;
    const Partition ref = resolve_partition(load_reference(reference), vocab);

    std::vector<AgreementReport> reports;
    std::vector<PhaseTiming> timings;
    for (Method m : methods) {
        RunConfig c = config;
        c.method = m;
        auto run = run_method(in.dataset, c);
        run.timing.parse_ms = in.parse_ms;
        reports.push_back(pairwise_agreement(run.partition, ref, vocab.size()));
        timings.push_back(run.timing);
    }

    if (config.output == OutputFormat::json) {
        ordered_json j;
        j["input"] = in.name;
        j["reference"] = reference;
        j["universe"] = vocab.size();
        j["parameters"] = parameters_json(config);
        ordered_json per = ordered_json::object();
        for (std::size_t i = 0; i < methods.size(); ++i) {
            auto rj = report_json(reports[i], vocab);
            if (config.timing) rj["timing_ms"] = timing_json(timings[i]);
            per[std::string(method_name(methods[i]))] = rj;
        }
        j["reports"] = per;
        j["notes"] = "unassigned variables count as singleton clusters; precision is 1 when a partition has no "
                     "co-clustered pairs";
        return j.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "input: " << in.name << '\n';
    out << "reference: " << reference << " (" << reports.front().reference_blocks << " blocks over "
        << vocab.size() << " variables)\n";
    out << std::left << std::setw(24) << "metric";
    for (Method m : methods) out << std::setw(12) << method_name(m);
    out << '\n';
    auto row = [&](const std::string& name, auto value) {
        out << std::setw(24) << name;
        for (const auto& r : reports) out << std::setw(12) << value(r);
        out << '\n';
    };
    row("pairwise_precision", [](const AgreementReport& r) { return fixed(r.pairwise_precision); });
    row("pairwise_recall", [](const AgreementReport& r) { return fixed(r.pairwise_recall); });
    row("pairwise_f1", [](const AgreementReport& r) { return fixed(r.pairwise_f1); });
    row("rand_index", [](const AgreementReport& r) { return fixed(r.rand_index); });
    row("exact_cluster_matches", [](const AgreementReport& r) { return std::to_string(r.exact_cluster_matches); });
    row("produced_blocks", [](const AgreementReport& r) { return std::to_string(r.produced_blocks); });
    if (config.timing) {
        row("time_ms", [&](const AgreementReport& r) {
            const auto i = static_cast<std::size_t>(&r - reports.data());
            return fixed(timings[i].parse_ms + timings[i].count_ms + timings[i].extract_ms, 1);
        });
    }
    out << "(precision is 1 when a partition has no co-clustered pairs)\n";
    for (std::size_t i = 0; i < methods.size(); ++i) {
        out << '\n' << method_name(methods[i]) << " clusters vs best reference match:\n";
        for (const auto& m : reports[i].per_cluster) {
            if (m.produced.size() < 2) continue;
            out << "  " << braced(m.produced, vocab) << "  ->  " << braced(m.best_reference, vocab)
                << "  overlap " << m.overlap << "  jaccard " << fixed(m.jaccard, 3) << '\n';
        }
    }
    return out.str();
}

std::string cmd_tables() {
    const Dataset ds = seven_event_dataset();
    const auto& vocab = ds.vocabulary;
    std::ostringstream out;

    ReinforceState reinforce(vocab.size());
    for (const auto& e : ds.events) reinforce.update(e, {});
    out << "reinforce\n";
    for (VarId v = 0; v < vocab.size(); ++v) out << '\t' << vocab.label(v);
    out << "\nI";
    for (VarId v = 0; v < vocab.size(); ++v) out << '\t' << num(reinforce.count(v));
    out << "\n\n";

    InstanceStore store;
    for (const auto& e : ds.events) store.present(e);
    out << "cm\n";
    for (const auto& r : store.instances()) out << '\t' << join_labels(r.pattern, vocab);
    out << "\nI";
    for (const auto& r : store.instances()) out << '\t' << num(r.local_count);
    out << "\nG";
    for (const auto& r : store.instances()) out << '\t' << num(r.global_count);
    out << "\n\n";

    CountMatrix grid(vocab.size());
    for (const auto& e : ds.events) grid.update(e);
    out << "grid\n";
    text_matrix(out, grid, vocab);
    return out.str();
}

std::string cmd_hierarchy(const RunConfig& config) {
    config.validate();
    if (config.output == OutputFormat::csv) throw ConfigError("hierarchy supports text and json output");
    const auto in = load_input(config);
    const auto& vocab = in.dataset.vocabulary;

    HierarchyStore store(config.hierarchy);
    for (const auto& e : in.dataset.events) store.present(e);
    const std::string before = render_tree(store, vocab);
    const std::size_t steps = store.consolidate();

    if (config.output == OutputFormat::json) {
        std::function<ordered_json(std::size_t)> node_json = [&](std::size_t id) {
            const auto& n = store.node(id);
            ordered_json j;
            j["pattern"] = labels_of(n.pattern, vocab);
            j["extension"] = labels_of(n.extension, vocab);
            j["occurrences"] = n.occurrences;
            auto subsets = ordered_json::array();
            for (const auto& [p, c] : n.subsets) subsets.push_back({{"pattern", labels_of(p, vocab)}, {"count", c}});
            j["subsets"] = subsets;
            auto overlaps = ordered_json::array();
            for (const auto& [p, c] : n.overlaps) overlaps.push_back({{"pattern", labels_of(p, vocab)}, {"count", c}});
            j["overlaps"] = overlaps;
            auto ext = ordered_json::array();
            for (std::size_t c : n.children) ext.push_back(node_json(c));
            j["extensions"] = ext;
            return j;
        };
        ordered_json j;
        j["input"] = in.name;
        j["parameters"] = {{"theta_merge", config.hierarchy.theta_merge},
                           {"theta_split", config.hierarchy.theta_split},
                           {"theta_new", config.hierarchy.theta_new}};
        j["presentations"] = store.presentations();
        j["consolidation_steps"] = steps;
        auto roots = ordered_json::array();
        for (std::size_t r : store.roots()) roots.push_back(node_json(r));
        j["roots"] = roots;
        return j.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "input: " << in.name << "  presentations: " << store.presentations() << '\n';
    out << "before consolidation:\n" << before;
    out << "after consolidation (" << steps << " steps):\n" << render_tree(store, vocab);
    return out.str();
}

}  // namespace catclust
