#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lacr/cli.hpp"
#include "lacr/config.hpp"

namespace {

// flags > environment > config file > defaults, per key.
struct Layered {
    lacr::ConfigResolver* resolver;

    std::string str(const CLI::Option* flag, const std::string& key,
                    const std::string& current) const {
        if (flag && flag->count() > 0) return current;
        return resolver->resolve(key, current);
    }
    int integer(const CLI::Option* flag, const std::string& key, int current) const {
        if (flag && flag->count() > 0) return current;
        return resolver->resolve_int(key, current);
    }
    double real(const CLI::Option* flag, const std::string& key, double current) const {
        if (flag && flag->count() > 0) return current;
        return resolver->resolve_double(key, current);
    }
};

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(std::stoi(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"causal skeleton and orientation recovery by knowledge-base vote aggregation"};
    app.require_subcommand(1);

    std::string config_file;
    app.add_option("--config", config_file, "JSON config file (lowest-priority layer above defaults)");

    // fetch-docs
    auto* fetch = app.add_subcommand("fetch-docs", "build the per-pair document corpus");
    lacr::cli::FetchDocsOptions fetch_options;
    auto* fetch_dataset = fetch->add_option("--dataset", fetch_options.dataset, "dataset name");
    fetch->add_option("--variant", fetch_options.variant, "ground-truth variant");
    auto* fetch_titles = fetch->add_option("--titles", fetch_options.titles, "titles per pair");
    auto* fetch_docs_n = fetch->add_option("--docs", fetch_options.docs, "document cap per pair");
    auto* fetch_out = fetch->add_option("--out", fetch_options.out_dir, "corpus directory");
    fetch->add_option("--fixtures", fetch_options.fixtures_dir, "fixture directory for --offline");
    fetch->add_flag("--offline", fetch_options.offline, "use recorded fixtures, no network");
    auto* fetch_data_dir =
        fetch->add_option("--data-dir", fetch_options.data_dir, "ground-truth registry directory");
    fetch->add_option("--query-template", fetch_options.query_template,
                      "search string template ({a}, {b})");

    // recover
    auto* recover = app.add_subcommand("recover", "run the two-phase recovery pipeline");
    lacr::cli::RecoverOptions recover_options;
    std::string kb_list = "bg";
    auto* recover_dataset =
        recover->add_option("--dataset", recover_options.config.dataset, "dataset name");
    recover->add_option("--variant", recover_options.config.variant, "ground-truth variant");
    recover->add_option("--kb", kb_list, "knowledge bases: comma list of bg,doc,pc");
    recover->add_option("--mock", recover_options.mock, "'oracle' or a mock script JSON");
    auto* recover_out = recover->add_option("--out", recover_options.out_dir, "run directory");
    recover->add_option("--corpus", recover_options.corpus_dir, "corpus directory (doc KB)");
    recover->add_option("--data", recover_options.data_csv, "dataset CSV (pc KB)");
    recover->add_option("--cache", recover_options.cache_file, "cache file override");
    auto* recover_alpha =
        recover->add_option("--alpha", recover_options.config.alpha, "CI significance level");
    auto* recover_order =
        recover->add_option("--max-order", recover_options.config.max_order, "PC order cap");
    auto* recover_model =
        recover->add_option("--model", recover_options.config.client.model, "model name");
    auto* recover_jobs =
        recover->add_option("--jobs", recover_options.config.jobs, "concurrent chains");
    auto* recover_docs_cap = recover->add_option("--docs", recover_options.config.document_cap,
                                                 "documents per pair");
    auto* recover_data_dir = recover->add_option("--data-dir", recover_options.data_dir,
                                                 "ground-truth registry directory");
    recover->add_option("--prompts-dir", recover_options.prompts_dir, "prompt template directory");
    recover->add_flag("--skeleton-only", recover_options.config.skeleton_only,
                      "skip the orientation phase");
    recover->add_option("--domain", recover_options.config.domain_override,
                        "override the {domain} placeholder");

    // eval
    auto* evaluate = app.add_subcommand("eval", "score a run directory against ground truth");
    lacr::cli::EvalOptions eval_options;
    evaluate->add_option("--run", eval_options.run_dir, "run directory")->required();
    evaluate->add_option("--truth", eval_options.truths, "NAME:variant (repeatable)");
    auto* eval_data_dir =
        evaluate->add_option("--data-dir", eval_options.data_dir, "ground-truth registry directory");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "majority-vote accuracy by voter count");
    lacr::cli::SimulateOptions simulate_options;
    std::string voters_csv = "1,3,5,7,9";
    auto* simulate_p =
        simulate->add_option("--p", simulate_options.voter_accuracy, "per-voter accuracy");
    simulate->add_option("--voters", voters_csv, "comma list of odd voter counts");
    auto* simulate_trials =
        simulate->add_option("--trials", simulate_options.trials, "trials per count");
    auto* simulate_seed = simulate->add_option("--seed", simulate_options.seed, "root seed");
    simulate->add_option("--nodes", simulate_options.nodes, "random truth skeleton size");
    simulate->add_option("--tolerance", simulate_options.tolerance,
                         "allowed decrease between counts");

    // sample-data
    auto* sample = app.add_subcommand("sample-data", "emit CSV from a CPT model JSON");
    lacr::cli::SampleDataOptions sample_options;
    sample->add_option("--cpt", sample_options.cpt_file, "CPT model JSON")->required();
    sample->add_option("--rows", sample_options.rows, "row count");
    sample->add_option("--seed", sample_options.seed, "sampling seed");
    sample->add_option("--out", sample_options.out_csv, "output CSV (default stdout)");
    sample->add_option("--drop", sample_options.drop_level, "exclude rows with Variable=level");

    CLI11_PARSE(app, argc, argv);

    try {
        lacr::ConfigResolver resolver = lacr::ConfigResolver::from_file(config_file);
        Layered layered{&resolver};

        if (fetch->parsed()) {
            fetch_options.dataset = layered.str(fetch_dataset, "dataset", fetch_options.dataset);
            fetch_options.titles = layered.integer(fetch_titles, "titles", fetch_options.titles);
            fetch_options.docs = layered.integer(fetch_docs_n, "docs", fetch_options.docs);
            fetch_options.out_dir = layered.str(fetch_out, "corpus", fetch_options.out_dir);
            fetch_options.data_dir = layered.str(fetch_data_dir, "data-dir", fetch_options.data_dir);
            return lacr::cli::cmd_fetch_docs(fetch_options, std::cout);
        }
        if (recover->parsed()) {
            recover_options.config.use_background = kb_list.find("bg") != std::string::npos;
            recover_options.config.use_documents = kb_list.find("doc") != std::string::npos;
            recover_options.config.use_pc = kb_list.find("pc") != std::string::npos;
            recover_options.config.dataset =
                layered.str(recover_dataset, "dataset", recover_options.config.dataset);
            recover_options.config.alpha =
                layered.real(recover_alpha, "pc.alpha", recover_options.config.alpha);
            recover_options.config.max_order =
                layered.integer(recover_order, "pc.max_order", recover_options.config.max_order);
            recover_options.config.client.model =
                layered.str(recover_model, "model", recover_options.config.client.model);
            recover_options.config.jobs =
                layered.integer(recover_jobs, "jobs", recover_options.config.jobs);
            recover_options.config.document_cap =
                layered.integer(recover_docs_cap, "docs", recover_options.config.document_cap);
            recover_options.data_dir =
                layered.str(recover_data_dir, "data-dir", recover_options.data_dir);
            if (recover_out->count() == 0)
                recover_options.out_dir = resolver.resolve("out", recover_options.out_dir);
            return lacr::cli::cmd_recover(recover_options, std::cout);
        }
        if (evaluate->parsed()) {
            eval_options.data_dir = layered.str(eval_data_dir, "data-dir", eval_options.data_dir);
            return lacr::cli::cmd_eval(eval_options, std::cout);
        }
        if (simulate->parsed()) {
            simulate_options.voter_accuracy =
                layered.real(simulate_p, "simulate.p", simulate_options.voter_accuracy);
            simulate_options.trials =
                layered.integer(simulate_trials, "simulate.trials", simulate_options.trials);
            simulate_options.seed = static_cast<std::uint64_t>(layered.integer(
                simulate_seed, "simulate.seed", static_cast<int>(simulate_options.seed)));
            simulate_options.voters = parse_int_list(voters_csv);
            return lacr::cli::cmd_simulate(simulate_options, std::cout);
        }
        if (sample->parsed()) return lacr::cli::cmd_sample_data(sample_options, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return lacr::cli::kFailure;
    }
    return lacr::cli::kFailure;
}
