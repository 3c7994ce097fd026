#pragma once

#include <cstdint>
#include <string>

namespace citegrowth::pipeline {

/// Every knob of every stage. Keys map 1:1 onto "[section] key = value"
/// config entries and --section.key command-line flags.
struct PipelineConfig {
    // [input]
    std::string patents = "patents.csv";
    std::string citations = "citations.csv";
    std::string ipc_prefixes;  // comma-separated; empty keeps everything

    // [sbm]
    std::uint64_t seed = 1;
    int chains = 1;     // independent fits, minimum-dl result wins
    bool nested = true; // false: single level plus a closing one-block level
    int b_min = 1;
    int b_max = 0;      // 0 = node count
    int restarts = 1;   // restarts per evaluated block count

    // [series]
    std::string attribution = "received";  // or "outgoing"
    int year_start = 1960;
    int year_end = 2013;
    long long min_total = 30;
    int min_years_active = 5;

    // [forecast]
    int hidden = 32;
    int layers = 4;
    int window = 5;
    int epochs = 500;
    double learning_rate = 1e-3;
    double clip_norm = 5.0;
    double train_fraction = 0.8;
    std::uint64_t train_seed = 1;
    bool recursive = false;  // free-running test predictions instead of
                             // teacher forcing

    // [synth]
    std::string synth_mode = "corpus";  // corpus | planted | series
    int synth_communities = 20;
    int synth_nodes_per_community = 80;
    double synth_assortativity = 0.9;
    double synth_noise = 0.03;
    double synth_amplitude = 30.0;
    int synth_nodes = 400;        // planted mode
    int synth_blocks = 4;         // planted mode
    double synth_mean_degree = 10.0;
    std::uint64_t synth_seed = 1;

    // [output]
    std::string out_dir = "out";
    int jobs = 1;
};

/// canonical "section.key = value" listing embedded in every artifact
std::string config_echo(const PipelineConfig& config);

/// Flat config file: "[section]" headers, "key = value" lines, '#'
/// comments. Every key is the section-qualified name of a command-line
/// flag; flags given on the command line take precedence.
void load_config_file(const std::string& path, PipelineConfig& config);

// Stages. Each reads its inputs from disk (the previous stage's artifacts
// under out_dir) and writes its own artifacts, so running `pipeline` is
// the same as running the stages one by one.
void run_ingest(const PipelineConfig& config);
void run_cluster(const PipelineConfig& config);
void run_series(const PipelineConfig& config);
void run_train(const PipelineConfig& config);
void run_evaluate(const PipelineConfig& config);
void run_synth(const PipelineConfig& config);
void run_pipeline(const PipelineConfig& config);

}  // namespace citegrowth::pipeline
