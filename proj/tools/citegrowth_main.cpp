#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "citegrowth/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"patent citation network clustering and growth forecasting"};
    app.fallthrough();

    citegrowth::pipeline::PipelineConfig cfg;

    // the config file loads first so command-line flags override its values
    std::string config_path;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    }
    if (!config_path.empty()) {
        try {
            citegrowth::pipeline::load_config_file(config_path, cfg);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 1;
        }
    }
    std::string config_path_opt;
    app.add_option("--config", config_path_opt, "config file with [section] key = value entries");

    app.add_option("--input.patents", cfg.patents, "patents csv path")->capture_default_str();
    app.add_option("--input.citations", cfg.citations, "citations csv path")->capture_default_str();
    app.add_option("--input.ipc_prefixes", cfg.ipc_prefixes,
                   "comma-separated IPC prefixes; empty keeps all records")
        ->capture_default_str();

    app.add_option("--sbm.seed", cfg.seed, "clustering seed")->capture_default_str();
    app.add_option("--sbm.chains", cfg.chains, "independent chains, minimum-dl result wins")
        ->capture_default_str();
    app.add_option("--sbm.nested", cfg.nested, "fit the full hierarchy (false: single level)")
        ->capture_default_str();
    app.add_option("--sbm.b_min", cfg.b_min, "lower bound for the block count search")
        ->capture_default_str();
    app.add_option("--sbm.b_max", cfg.b_max, "upper bound for the block count search (0 = auto)")
        ->capture_default_str();
    app.add_option("--sbm.restarts", cfg.restarts, "fits per evaluated block count")
        ->capture_default_str();

    app.add_option("--series.attribution", cfg.attribution, "received or outgoing")
        ->capture_default_str();
    app.add_option("--series.year_start", cfg.year_start, "first year of the series range")
        ->capture_default_str();
    app.add_option("--series.year_end", cfg.year_end, "last year of the series range")
        ->capture_default_str();
    app.add_option("--series.min_total", cfg.min_total, "minimum total citations per community")
        ->capture_default_str();
    app.add_option("--series.min_years_active", cfg.min_years_active,
                   "minimum number of nonzero years per community")
        ->capture_default_str();

    app.add_option("--forecast.hidden", cfg.hidden, "hidden units per recurrent layer")
        ->capture_default_str();
    app.add_option("--forecast.layers", cfg.layers, "number of recurrent layers")
        ->capture_default_str();
    app.add_option("--forecast.window", cfg.window, "input window length")->capture_default_str();
    app.add_option("--forecast.epochs", cfg.epochs, "training epochs")->capture_default_str();
    app.add_option("--forecast.learning_rate", cfg.learning_rate, "Adam learning rate")
        ->capture_default_str();
    app.add_option("--forecast.clip_norm", cfg.clip_norm, "gradient norm clip (0 disables)")
        ->capture_default_str();
    app.add_option("--forecast.train_fraction", cfg.train_fraction,
                   "chronological train split fraction")
        ->capture_default_str();
    app.add_option("--forecast.train_seed", cfg.train_seed, "weight init seed")
        ->capture_default_str();
    app.add_flag("--forecast.recursive", cfg.recursive,
                 "free-running test predictions instead of teacher forcing");

    app.add_option("--synth.mode", cfg.synth_mode, "corpus, planted or series")
        ->capture_default_str();
    app.add_option("--synth.communities", cfg.synth_communities, "synthetic community count")
        ->capture_default_str();
    app.add_option("--synth.nodes_per_community", cfg.synth_nodes_per_community,
                   "nodes per synthetic community")
        ->capture_default_str();
    app.add_option("--synth.assortativity", cfg.synth_assortativity,
                   "within-community citation share")
        ->capture_default_str();
    app.add_option("--synth.noise", cfg.synth_noise, "multiplicative series noise")
        ->capture_default_str();
    app.add_option("--synth.amplitude", cfg.synth_amplitude, "series amplitude scale")
        ->capture_default_str();
    app.add_option("--synth.nodes", cfg.synth_nodes, "planted mode node count")
        ->capture_default_str();
    app.add_option("--synth.blocks", cfg.synth_blocks, "planted mode block count")
        ->capture_default_str();
    app.add_option("--synth.mean_degree", cfg.synth_mean_degree, "planted mode mean degree")
        ->capture_default_str();
    app.add_option("--synth.seed", cfg.synth_seed, "generator seed")->capture_default_str();

    app.add_option("--output.dir", cfg.out_dir, "artifact directory")->capture_default_str();
    app.add_option("--output.jobs", cfg.jobs, "worker threads for chains and training")
        ->envname("CITEGROWTH_JOBS")
        ->capture_default_str();

    struct Stage {
        const char* name;
        const char* help;
        void (*run)(const citegrowth::pipeline::PipelineConfig&);
    };
    const Stage stages[] = {
        {"ingest", "read patent and citation csv files, build the graph, emit DOT",
         citegrowth::pipeline::run_ingest},
        {"cluster", "detect communities, emit hierarchy.json and clustered.dot",
         citegrowth::pipeline::run_cluster},
        {"series", "tabulate per-community annual citation counts",
         citegrowth::pipeline::run_series},
        {"train", "train one forecaster per community, emit checkpoints",
         citegrowth::pipeline::run_train},
        {"evaluate", "predict and score, emit predictions.csv and report.json",
         citegrowth::pipeline::run_evaluate},
        {"synth", "generate a synthetic corpus or series set",
         citegrowth::pipeline::run_synth},
        {"pipeline", "run ingest, cluster, series, train and evaluate in order",
         citegrowth::pipeline::run_pipeline},
    };
    for (const Stage& stage : stages) {
        app.add_subcommand(stage.name, stage.help);
    }
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    for (const Stage& stage : stages) {
        if (app.got_subcommand(stage.name)) {
            try {
                stage.run(cfg);
            } catch (const std::exception& e) {
                std::cerr << "error [" << stage.name << "]: " << e.what() << '\n';
                return 2;
            }
            return 0;
        }
    }
    return 1;
}
