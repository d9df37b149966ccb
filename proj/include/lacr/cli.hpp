#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lacr/recover.hpp"

namespace lacr::cli {

// Exit codes shared by all subcommands.
inline constexpr int kSuccess = 0;
inline constexpr int kPartial = 1;
inline constexpr int kFailure = 2;

struct FetchDocsOptions {
    std::string dataset = "ASIA";
    std::string variant = "original";
    std::string data_dir = "data/ground_truth";
    std::string out_dir = "corpus";
    std::string fixtures_dir;
    bool offline = false;
    int titles = 20;
    int docs = 10;
    std::string query_template = "{a} and {b}";
    int backoff_ms = 250;
};

int cmd_fetch_docs(const FetchDocsOptions& options, std::ostream& out);

struct RecoverOptions {
    RecoveryConfig config;
    std::string data_dir = "data/ground_truth";
    std::string prompts_dir = "prompts";
    std::string corpus_dir;
    std::string data_csv;
    std::string out_dir;
    std::string cache_file;
    std::string mock;  // "oracle", a script path, or empty for the live client
};

int cmd_recover(const RecoverOptions& options, std::ostream& out);

struct EvalOptions {
    std::string run_dir;
    std::vector<std::string> truths;  // "NAME:variant"
    std::string data_dir = "data/ground_truth";
};

int cmd_eval(const EvalOptions& options, std::ostream& out);

struct SimulateOptions {
    double voter_accuracy = 0.7;
    std::vector<int> voters = {1, 3, 5, 7, 9};
    int trials = 500;
    std::uint64_t seed = 17;
    int nodes = 8;
    double tolerance = 0.01;
};

int cmd_simulate(const SimulateOptions& options, std::ostream& out);

struct SampleDataOptions {
    std::string cpt_file;
    std::string out_csv;  // empty: stdout
    std::size_t rows = 1000;
    std::uint64_t seed = 1;
    std::string drop_level;  // "Variable=level" rows to exclude
};

int cmd_sample_data(const SampleDataOptions& options, std::ostream& out);

}  // namespace lacr::cli
