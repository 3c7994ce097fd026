#include "citegrowth/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "citegrowth/benchgen.hpp"
#include "citegrowth/corpus.hpp"
#include "citegrowth/dot.hpp"
#include "citegrowth/eval.hpp"
#include "citegrowth/forecast/train.hpp"
#include "citegrowth/parallel.hpp"
#include "citegrowth/rng.hpp"
#include "citegrowth/sbm/nested.hpp"
#include "citegrowth/series.hpp"

namespace citegrowth::pipeline {

namespace fs = std::filesystem;

std::string config_echo(const PipelineConfig& c) {
    std::ostringstream out;
    out << "input.patents = " << c.patents << '\n'
        << "input.citations = " << c.citations << '\n'
        << "input.ipc_prefixes = " << c.ipc_prefixes << '\n'
        << "sbm.seed = " << c.seed << '\n'
        << "sbm.chains = " << c.chains << '\n'
        << "sbm.nested = " << (c.nested ? "true" : "false") << '\n'
        << "sbm.b_min = " << c.b_min << '\n'
        << "sbm.b_max = " << c.b_max << '\n'
        << "sbm.restarts = " << c.restarts << '\n'
        << "series.attribution = " << c.attribution << '\n'
        << "series.year_start = " << c.year_start << '\n'
        << "series.year_end = " << c.year_end << '\n'
        << "series.min_total = " << c.min_total << '\n'
        << "series.min_years_active = " << c.min_years_active << '\n'
        << "forecast.hidden = " << c.hidden << '\n'
        << "forecast.layers = " << c.layers << '\n'
        << "forecast.window = " << c.window << '\n'
        << "forecast.epochs = " << c.epochs << '\n'
        << "forecast.learning_rate = " << c.learning_rate << '\n'
        << "forecast.clip_norm = " << c.clip_norm << '\n'
        << "forecast.train_fraction = " << c.train_fraction << '\n'
        << "forecast.train_seed = " << c.train_seed << '\n'
        << "forecast.recursive = " << (c.recursive ? "true" : "false") << '\n'
        << "output.out_dir = " << c.out_dir << '\n'
        << "output.jobs = " << c.jobs << '\n';
    return out.str();
}

namespace {

std::string comment_block(const std::string& echo, const std::string& prefix) {
    std::istringstream in(echo);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        out << prefix << ' ' << line << '\n';
    }
    return out.str();
}

std::vector<std::string> split_list(const std::string& csv_list) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : csv_list) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

void require_artifact(const fs::path& path, const std::string& stage, const std::string& producer) {
    if (!fs::exists(path)) {
        throw std::runtime_error(stage + ": missing input " + path.string() + "; run the " +
                                 producer + " stage first");
    }
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

series::Attribution attribution_of(const PipelineConfig& config) {
    if (config.attribution == "received") return series::Attribution::received;
    if (config.attribution == "outgoing") return series::Attribution::outgoing;
    throw std::runtime_error("series: attribution must be 'received' or 'outgoing', got '" +
                             config.attribution + "'");
}

sbm::NestedConfig nested_config(const PipelineConfig& config) {
    sbm::NestedConfig nc;
    nc.select.restarts = config.restarts;
    nc.b_min = config.b_min;
    nc.b_max = config.b_max;
    return nc;
}

sbm::Hierarchy fit_hierarchy(const sbm::NetworkPtr& net, const PipelineConfig& config,
                             std::uint64_t seed) {
    if (config.nested) {
        return sbm::fit_nested(net, nested_config(config), seed);
    }
    // flat mode: one selected level, closed with a single-block level so
    // the stack still ends at one block
    sbm::SelectConfig sc;
    sc.restarts = config.restarts;
    sc.agglom.mode = sbm::Objective::degree_corrected;
    int b_max = config.b_max > 0 ? std::min(config.b_max, net->n_nodes) : net->n_nodes;
    sbm::BlockState state =
        sbm::select_block_count(net, std::max(1, config.b_min), b_max, sc, seed);
    sbm::Hierarchy h;
    h.labels.push_back(state.labels());
    h.n_blocks.push_back(state.num_nonempty());
    if (state.num_nonempty() > 1) {
        h.labels.emplace_back(state.num_nonempty(), 0);
        h.n_blocks.push_back(1);
    }
    h.dl = sbm::description_length(h, net);
    return h;
}

struct SeriesSplit {
    int split_index = 0;     // first test position
    bool trainable = false;  // enough points for at least one window
};

SeriesSplit split_of(const series::CommunitySeries& s, const PipelineConfig& config) {
    SeriesSplit split;
    int len = s.n_years();
    split.split_index = static_cast<int>(std::floor(config.train_fraction * len));
    split.trainable = split.split_index >= config.window + 1 && split.split_index < len;
    return split;
}

void validate_config(const PipelineConfig& config) {
    if (config.window < 1) throw std::runtime_error("config: forecast.window must be >= 1");
    if (config.layers < 1) throw std::runtime_error("config: forecast.layers must be >= 1");
    if (config.hidden < 1) throw std::runtime_error("config: forecast.hidden must be >= 1");
    if (config.epochs < 1) throw std::runtime_error("config: forecast.epochs must be >= 1");
    if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0)) {
        throw std::runtime_error("config: forecast.train_fraction must be inside (0, 1)");
    }
    if (config.year_end < config.year_start) {
        throw std::runtime_error("config: series year range is empty");
    }
    if (config.b_min < 1 || (config.b_max != 0 && config.b_max < config.b_min)) {
        throw std::runtime_error("config: sbm block count bounds are invalid");
    }
}

fs::path checkpoint_path(const PipelineConfig& config, int community_id) {
    return fs::path(config.out_dir) / "checkpoints" /
           ("community_" + std::to_string(community_id) + ".json");
}

}  // namespace

void load_config_file(const std::string& path, PipelineConfig& config) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::string line, section;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        std::size_t a = s.find_first_not_of(" \t\r");
        std::size_t b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        if (text.front() == '[' && text.back() == ']') {
            section = trim(text.substr(1, text.size() - 2));
            continue;
        }
        std::size_t eq = text.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config: line " + std::to_string(line_no) +
                                     ": expected key = value");
        }
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        std::string full = section.empty() ? key : section + "." + key;

        auto as_bool = [&]() {
            if (value == "true" || value == "1") return true;
            if (value == "false" || value == "0") return false;
            throw std::runtime_error("config: line " + std::to_string(line_no) + ": '" + full +
                                     "' expects true or false");
        };
        auto as_int = [&]() { return std::stoi(value); };
        auto as_ll = [&]() { return std::stoll(value); };
        auto as_u64 = [&]() { return static_cast<std::uint64_t>(std::stoull(value)); };
        auto as_double = [&]() { return std::stod(value); };

        try {
            if (full == "input.patents") config.patents = value;
            else if (full == "input.citations") config.citations = value;
            else if (full == "input.ipc_prefixes") config.ipc_prefixes = value;
            else if (full == "sbm.seed") config.seed = as_u64();
            else if (full == "sbm.chains") config.chains = as_int();
            else if (full == "sbm.nested") config.nested = as_bool();
            else if (full == "sbm.b_min") config.b_min = as_int();
            else if (full == "sbm.b_max") config.b_max = as_int();
            else if (full == "sbm.restarts") config.restarts = as_int();
            else if (full == "series.attribution") config.attribution = value;
            else if (full == "series.year_start") config.year_start = as_int();
            else if (full == "series.year_end") config.year_end = as_int();
            else if (full == "series.min_total") config.min_total = as_ll();
            else if (full == "series.min_years_active") config.min_years_active = as_int();
            else if (full == "forecast.hidden") config.hidden = as_int();
            else if (full == "forecast.layers") config.layers = as_int();
            else if (full == "forecast.window") config.window = as_int();
            else if (full == "forecast.epochs") config.epochs = as_int();
            else if (full == "forecast.learning_rate") config.learning_rate = as_double();
            else if (full == "forecast.clip_norm") config.clip_norm = as_double();
            else if (full == "forecast.train_fraction") config.train_fraction = as_double();
            else if (full == "forecast.train_seed") config.train_seed = as_u64();
            else if (full == "forecast.recursive") config.recursive = as_bool();
            else if (full == "synth.mode") config.synth_mode = value;
            else if (full == "synth.communities") config.synth_communities = as_int();
            else if (full == "synth.nodes_per_community") config.synth_nodes_per_community = as_int();
            else if (full == "synth.assortativity") config.synth_assortativity = as_double();
            else if (full == "synth.noise") config.synth_noise = as_double();
            else if (full == "synth.amplitude") config.synth_amplitude = as_double();
            else if (full == "synth.nodes") config.synth_nodes = as_int();
            else if (full == "synth.blocks") config.synth_blocks = as_int();
            else if (full == "synth.mean_degree") config.synth_mean_degree = as_double();
            else if (full == "synth.seed") config.synth_seed = as_u64();
            else if (full == "output.dir") config.out_dir = value;
            else if (full == "output.jobs") config.jobs = as_int();
            else {
                throw std::runtime_error("config: line " + std::to_string(line_no) +
                                         ": unknown key '" + full + "'");
            }
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("config: line " + std::to_string(line_no) + ": '" + full +
                                     "' has an unparseable value '" + value + "'");
        }
    }
}

void run_ingest(const PipelineConfig& config) {
    validate_config(config);
    fs::create_directories(config.out_dir);
    corpus::PatentTable table = corpus::load_patents(config.patents);
    for (const auto& warning : table.warnings) {
        std::cerr << "warning: " << warning << '\n';
    }
    std::vector<std::string> prefixes = split_list(config.ipc_prefixes);
    if (!prefixes.empty()) {
        table = corpus::filter_by_ipc(table, prefixes);
    }
    std::vector<corpus::Citation> citations = corpus::load_citations(config.citations);
    corpus::DropCounts drops;
    corpus::CitationGraph graph = corpus::build_graph(table, citations, &drops);

    std::string echo = config_echo(config);
    write_text(fs::path(config.out_dir) / "graph.dot",
               comment_block(echo, "//") + corpus::dot_string(graph));

    nlohmann::json j;
    j["config"] = echo;
    j["n_records"] = table.records.size();
    j["n_nodes"] = graph.n_nodes;
    j["n_edges"] = graph.edges.size();
    j["dropped"] = {{"dangling", drops.dangling},
                    {"self_loops", drops.self_loops},
                    {"duplicates", drops.duplicates}};
    write_text(fs::path(config.out_dir) / "ingest.json", j.dump(2) + "\n");
}

void run_cluster(const PipelineConfig& config) {
    validate_config(config);
    fs::path graph_path = fs::path(config.out_dir) / "graph.dot";
    require_artifact(graph_path, "cluster", "ingest");
    corpus::CitationGraph graph = corpus::read_dot(graph_path.string());
    if (graph.n_nodes == 0) {
        throw std::runtime_error("cluster: the graph is empty");
    }
    sbm::NetworkPtr net = sbm::Network::from_graph(graph);

    int n_chains = std::max(1, config.chains);
    std::vector<std::optional<sbm::Hierarchy>> results(n_chains);
    parallel_for(n_chains, config.jobs, [&](int chain) {
        results[chain] = fit_hierarchy(net, config, derive_seed(config.seed, chain));
    });
    int best = 0;
    for (int chain = 1; chain < n_chains; ++chain) {
        if (results[chain]->dl.total < results[best]->dl.total) best = chain;
    }
    const sbm::Hierarchy& hierarchy = *results[best];

    std::string echo = config_echo(config);
    nlohmann::json j;
    j["config"] = echo;
    j["seed"] = config.seed;
    j["chain"] = best;
    j["objective"] = {{"level0", "degree_corrected"}, {"upper_levels", "multigraph"}};
    j["hierarchy"] = nlohmann::json::parse(sbm::hierarchy_to_json(hierarchy));
    write_text(fs::path(config.out_dir) / "hierarchy.json", j.dump(2) + "\n");

    std::vector<int> communities = sbm::project_level(hierarchy, 0);
    write_text(fs::path(config.out_dir) / "clustered.dot",
               comment_block(echo, "//") + corpus::dot_string(graph, &communities));
}

void run_series(const PipelineConfig& config) {
    validate_config(config);
    fs::path graph_path = fs::path(config.out_dir) / "graph.dot";
    fs::path hierarchy_path = fs::path(config.out_dir) / "hierarchy.json";
    require_artifact(graph_path, "series", "ingest");
    require_artifact(hierarchy_path, "series", "cluster");
    corpus::CitationGraph graph = corpus::read_dot(graph_path.string());
    nlohmann::json j = nlohmann::json::parse(read_text(hierarchy_path));
    sbm::Hierarchy hierarchy = sbm::hierarchy_from_json(j.at("hierarchy").dump());

    std::vector<int> communities = sbm::project_level(hierarchy, 0);
    auto all = series::build_series(graph, communities, config.year_start, config.year_end,
                                    attribution_of(config));
    auto kept = series::filter_series(all, config.min_total, config.min_years_active);
    std::cerr << "series: " << kept.size() << " of " << all.size()
              << " communities pass the activity filter\n";
    series::save_series_csv(kept, (fs::path(config.out_dir) / "series.csv").string(),
                            comment_block(config_echo(config), "#"));
}

void run_train(const PipelineConfig& config) {
    validate_config(config);
    fs::path series_path = fs::path(config.out_dir) / "series.csv";
    require_artifact(series_path, "train", "series");
    auto all = series::load_series_csv(series_path.string());
    fs::create_directories(fs::path(config.out_dir) / "checkpoints");

    forecast::ModelConfig model_cfg;
    model_cfg.n_layers = config.layers;
    model_cfg.hidden_size = config.hidden;
    model_cfg.window = config.window;
    forecast::TrainConfig train_cfg;
    train_cfg.epochs = config.epochs;
    train_cfg.learning_rate = config.learning_rate;
    train_cfg.clip_norm = config.clip_norm;
    train_cfg.train_fraction = config.train_fraction;

    std::string echo = config_echo(config);
    std::vector<std::vector<double>> curves(all.size());
    std::vector<char> trained(all.size(), 0);  // byte per slot, workers write concurrently

    parallel_for(static_cast<int>(all.size()), config.jobs, [&](int idx) {
        const series::CommunitySeries& s = all[idx];
        SeriesSplit split = split_of(s, config);
        if (!split.trainable) return;
        std::vector<double> counts(s.counts.begin(), s.counts.end());
        std::vector<double> train_segment(counts.begin(), counts.begin() + split.split_index);

        std::uint64_t seed = derive_seed(config.train_seed, s.community_id);
        forecast::LstmModel model = forecast::LstmModel::init(model_cfg, seed);
        model.normalizer = forecast::Normalizer::fit(train_segment);
        auto samples = forecast::make_windows(train_segment, config.window);
        forecast::TrainConfig cfg = train_cfg;
        cfg.seed = seed;
        curves[idx] = forecast::train(model, samples, cfg);
        write_text(checkpoint_path(config, s.community_id),
                   forecast::model_to_json(model, seed, echo) + "\n");
        trained[idx] = 1;
    });

    std::ostringstream losses;
    losses << comment_block(echo, "#") << "community_id,epoch,loss\n";
    for (std::size_t idx = 0; idx < all.size(); ++idx) {
        if (!trained[idx]) {
            std::cerr << "warning: train: community " << all[idx].community_id
                      << " is too short for window " << config.window << ", skipped\n";
            continue;
        }
        for (std::size_t e = 0; e < curves[idx].size(); ++e) {
            losses << all[idx].community_id << ',' << e << ',' << curves[idx][e] << '\n';
        }
    }
    write_text(fs::path(config.out_dir) / "losses.csv", losses.str());
}

void run_evaluate(const PipelineConfig& config) {
    validate_config(config);
    fs::path series_path = fs::path(config.out_dir) / "series.csv";
    require_artifact(series_path, "evaluate", "series");
    fs::path checkpoints_dir = fs::path(config.out_dir) / "checkpoints";
    if (!fs::exists(checkpoints_dir) || fs::is_empty(checkpoints_dir)) {
        throw std::runtime_error("evaluate: no checkpoints under " + checkpoints_dir.string() +
                                 "; run the train stage first");
    }
    auto all = series::load_series_csv(series_path.string());

    std::string echo = config_echo(config);
    std::ostringstream predictions;
    predictions << comment_block(echo, "#")
                << "community_id,year,true,predicted,segment\n";
    std::vector<eval::CommunityMetrics> metrics;

    for (const series::CommunitySeries& s : all) {
        fs::path ckpt = checkpoint_path(config, s.community_id);
        if (!fs::exists(ckpt)) continue;  // skipped as untrainable
        forecast::LstmModel model = forecast::model_from_json(read_text(ckpt));
        SeriesSplit split = split_of(s, config);
        std::vector<double> counts(s.counts.begin(), s.counts.end());
        auto pred = forecast::predict_series(model, counts, split.split_index, config.recursive);

        for (std::size_t i = 0; i < pred.train_pred.size(); ++i) {
            int t = config.window + static_cast<int>(i);
            predictions << s.community_id << ',' << (s.year_start + t) << ',' << counts[t] << ','
                        << pred.train_pred[i] << ",train\n";
        }
        for (std::size_t i = 0; i < pred.test_pred.size(); ++i) {
            int t = split.split_index + static_cast<int>(i);
            predictions << s.community_id << ',' << (s.year_start + t) << ',' << counts[t] << ','
                        << pred.test_pred[i] << ",test\n";
        }

        eval::CommunityMetrics m;
        m.community_id = s.community_id;
        m.n_test_points = pred.test_pred.size();
        if (!pred.test_pred.empty()) {
            std::vector<double> truth_test(counts.begin() + split.split_index, counts.end());
            auto mape_result = eval::mape(truth_test, pred.test_pred);
            m.mape = mape_result.value;
            m.mape_excluded_zeros = mape_result.excluded_zeros;
            // one-step-ahead directions measured against the previous true
            // value, so prepend the last training point
            std::vector<double> truth_dir(counts.begin() + split.split_index - 1, counts.end());
            std::vector<double> pred_dir;
            pred_dir.push_back(truth_dir[0]);  // placeholder, never scored
            pred_dir.insert(pred_dir.end(), pred.test_pred.begin(), pred.test_pred.end());
            m.direction = eval::direction_accuracy(truth_dir, pred_dir);
        }
        metrics.push_back(std::move(m));
    }
    if (metrics.empty()) {
        throw std::runtime_error("evaluate: no community has both a checkpoint and series data");
    }
    eval::MetricReport report = eval::aggregate_report(metrics);
    write_text(fs::path(config.out_dir) / "predictions.csv", predictions.str());
    write_text(fs::path(config.out_dir) / "report.json",
               eval::report_to_json(report, echo) + "\n");
    eval::save_report_csv(report, (fs::path(config.out_dir) / "report.csv").string());
}

void run_synth(const PipelineConfig& config) {
    fs::create_directories(config.out_dir);
    std::string echo = config_echo(config);
    std::string csv_comment = comment_block(echo, "#");
    fs::path dir(config.out_dir);

    auto write_planted = [&](const std::vector<std::string>& ids, const std::vector<int>& labels) {
        std::ostringstream out;
        out << csv_comment << "app_id,community\n";
        for (std::size_t i = 0; i < ids.size(); ++i) {
            out << ids[i] << ',' << labels[i] << '\n';
        }
        write_text(dir / "planted.csv", out.str());
    };

    if (config.synth_mode == "corpus") {
        benchgen::SynthCorpusSpec spec;
        spec.n_communities = config.synth_communities;
        spec.nodes_per_community = config.synth_nodes_per_community;
        spec.year_start = config.year_start;
        spec.year_end = config.year_end;
        spec.assortativity = config.synth_assortativity;
        spec.noise = config.synth_noise;
        spec.amplitude = config.synth_amplitude;
        spec.seed = config.synth_seed;
        benchgen::SynthCorpus corpus_out = benchgen::synth_corpus(spec);
        corpus::save_patents(corpus_out.patents, (dir / "patents.csv").string(), {}, csv_comment);
        corpus::save_citations(corpus_out.citations, (dir / "citations.csv").string(), csv_comment);
        series::save_series_csv(corpus_out.target_series, (dir / "target_series.csv").string(),
                                csv_comment);
        std::vector<std::string> ids;
        for (const auto& rec : corpus_out.patents.records) ids.push_back(rec.app_id);
        write_planted(ids, corpus_out.planted);
    } else if (config.synth_mode == "planted") {
        benchgen::PlantedSpec spec;
        spec.n_nodes = config.synth_nodes;
        spec.n_blocks = config.synth_blocks;
        spec.mean_degree = config.synth_mean_degree;
        spec.assortativity = config.synth_assortativity;
        spec.year_start = config.year_start;
        spec.year_end = config.year_end;
        spec.seed = config.synth_seed;
        benchgen::PlantedGraph planted = benchgen::planted_graph(spec);
        corpus::PatentTable table;
        for (int v = 0; v < planted.graph.n_nodes; ++v) {
            corpus::PatentRecord rec;
            rec.app_id = planted.graph.id_of[v];
            rec.app_year = planted.graph.year_of[v];
            rec.ipc_codes = {"SYN0/00"};
            table.records.push_back(std::move(rec));
        }
        std::vector<corpus::Citation> citations;
        for (const auto& [u, v] : planted.graph.edges) {
            citations.emplace_back(planted.graph.id_of[u], planted.graph.id_of[v]);
        }
        corpus::save_patents(table, (dir / "patents.csv").string(), {}, csv_comment);
        corpus::save_citations(citations, (dir / "citations.csv").string(), csv_comment);
        write_planted(planted.graph.id_of, planted.labels);
    } else if (config.synth_mode == "series") {
        int length = config.year_end - config.year_start + 1;
        std::vector<series::CommunitySeries> out;
        for (int c = 0; c < config.synth_communities; ++c) {
            benchgen::LifecycleShape shape = c % 2 == 0 ? benchgen::LifecycleShape::growth
                                                        : benchgen::LifecycleShape::peak_decline;
            auto s = benchgen::lifecycle_series(shape, length, config.synth_noise,
                                                derive_seed(config.synth_seed, c),
                                                config.synth_amplitude, config.year_start);
            s.community_id = c;
            out.push_back(std::move(s));
        }
        series::save_series_csv(out, (dir / "series.csv").string(), csv_comment);
    } else {
        throw std::runtime_error("synth: mode must be corpus, planted or series, got '" +
                                 config.synth_mode + "'");
    }
}

void run_pipeline(const PipelineConfig& config) {
    run_ingest(config);
    run_cluster(config);
    run_series(config);
    run_train(config);
    run_evaluate(config);
}

}  // namespace citegrowth::pipeline
