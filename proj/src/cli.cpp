#include "lacr/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include <nlohmann/json.hpp>

#include "lacr/metrics.hpp"
#include "lacr/mock.hpp"
#include "lacr/retrieval.hpp"
#include "lacr/simulate.hpp"

namespace lacr::cli {

namespace fs = std::filesystem;

int cmd_fetch_docs(const FetchDocsOptions& options, std::ostream& out) {
    try {
        GroundTruthRegistry registry(options.data_dir);
        const GroundTruthEntry truth = registry.load(options.dataset, options.variant);

        std::vector<std::pair<std::string, std::string>> pairs;
        const int n = static_cast<int>(truth.variables.size());
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                pairs.emplace_back(truth.variables[a], truth.variables[b]);

        CorpusConfig config;
        config.directory = options.out_dir;
        config.titles = options.titles;
        config.document_cap = options.docs;
        config.query_template = options.query_template;
        config.backoff_ms = options.backoff_ms;

        CorpusManifest manifest;
        if (options.offline) {
            if (options.fixtures_dir.empty()) {
                out << "error: --offline needs --fixtures <dir>\n";
                return kFailure;
            }
            FixtureTitleSearch search(options.fixtures_dir);
            FixtureDocumentFetch fetch(options.fixtures_dir);
            manifest = build_corpus(search, fetch, pairs, config);
        } else {
            HttpTitleSearch search = HttpTitleSearch::from_env();
            HttpDocumentFetch fetch = HttpDocumentFetch::from_env();
            manifest = build_corpus(search, fetch, pairs, config);
        }

        std::size_t documents = 0;
        std::size_t incomplete = 0;
        for (const auto& [key, entry] : manifest.pairs) {
            documents += entry.documents.size();
            if (!entry.complete) ++incomplete;
        }
        out << manifest.to_json().dump(2) << "\n";
        out << "corpus: " << manifest.pairs.size() << " pairs, " << documents << " documents, "
            << incomplete << " incomplete\n";
        return incomplete == 0 ? kSuccess : kPartial;
    } catch (const std::exception& e) {
        out << "error: " << e.what() << "\n";
        return kFailure;
    }
}

int cmd_recover(const RecoverOptions& options, std::ostream& out) {
    try {
        GroundTruthRegistry registry(options.data_dir);
        PromptLibrary prompts(options.prompts_dir);

        std::unique_ptr<ChatClient> client;
        if (options.mock == "oracle") {
            const GroundTruthEntry truth =
                registry.load(options.config.dataset, options.config.variant);
            if (options.config.use_documents) {
                const CorpusManifest manifest = load_corpus_manifest(options.corpus_dir);
                client = std::make_unique<ScriptedClient>(oracle_script(truth, &manifest));
            } else {
                client = std::make_unique<ScriptedClient>(oracle_script(truth));
            }
        } else if (!options.mock.empty()) {
            client = std::make_unique<ScriptedClient>(ScriptedClient::from_file(options.mock));
        } else {
            client = std::make_unique<HttpChatClient>(HttpChatClient::from_env());
        }

        PipelineEnv env;
        env.client = client.get();
        env.registry = &registry;
        env.prompts = &prompts;
        env.corpus_dir = options.corpus_dir;
        env.data_csv = options.data_csv;
        env.run_dir = options.out_dir;
        env.cache_file = options.cache_file;

        const RecoveryReport report = run_pipeline(options.config, env);
        out << "recovered skeleton: " << report.skeleton.edge_count() << " edges, "
            << report.directed.size() << " oriented, " << report.unresolved.size()
            << " unresolved\n";
        if (!report.partial_failures.empty()) {
            out << "partial failures:\n";
            for (const auto& failure : report.partial_failures) out << "  " << failure << "\n";
            return kPartial;
        }
        return kSuccess;
    } catch (const std::exception& e) {
        out << "error: " << e.what() << "\n";
        return kFailure;
    }
}

int cmd_eval(const EvalOptions& options, std::ostream& out) {
    try {
        const fs::path report_path = fs::path(options.run_dir) / "report.json";
        std::ifstream in(report_path);
        if (!in) {
            out << "error: no report at " << report_path.string() << "\n";
            return kFailure;
        }
        const RecoveryReport report = report_from_json(nlohmann::json::parse(in));

        GroundTruthRegistry registry(options.data_dir);
        std::vector<GroundTruthEntry> truths;
        for (const auto& spec : options.truths) {
            const auto colon = spec.find(':');
            const std::string name = colon == std::string::npos ? spec : spec.substr(0, colon);
            const std::string variant =
                colon == std::string::npos ? "original" : spec.substr(colon + 1);
            truths.push_back(registry.load(name, variant));
        }
        if (truths.empty()) truths.push_back(registry.load(report.dataset, report.variant));

        const Evaluation evaluation = evaluate_report(report, truths);
        out << evaluation.to_text();

        std::ofstream metrics_out(fs::path(options.run_dir) / "metrics.json", std::ios::binary);
        metrics_out << evaluation.to_json().dump(2) << "\n";
        return kSuccess;
    } catch (const std::exception& e) {
        out << "error: " << e.what() << "\n";
        return kFailure;
    }
}

int cmd_simulate(const SimulateOptions& options, std::ostream& out) {
    try {
        if (!(options.voter_accuracy > 0.5 && options.voter_accuracy < 1.0)) {
            out << "error: voter accuracy must lie in (0.5, 1)\n";
            return kFailure;
        }
        const Skeleton truth = random_skeleton(options.nodes, options.seed);
        const SimulationTable table = simulate_majority_accuracy(
            truth, options.voter_accuracy, options.voters, options.trials, options.seed + 1);

        out << "voters  mean F1   stderr    pair acc  analytic\n";
        for (const auto& row : table.rows) {
            char line[128];
            std::snprintf(line, sizeof(line), "%-7d %-9.4f %-9.4f %-9.4f %-9.4f\n", row.voters,
                          row.mean_f1, row.stderr_f1, row.pair_accuracy,
                          majority_accuracy(options.voter_accuracy, row.voters));
            out << line;
        }
        const double worst = table.worst_decrease();
        if (worst > options.tolerance) {
            out << "monotonicity violated: worst decrease " << worst << " exceeds tolerance "
                << options.tolerance << "\n";
            return kPartial;
        }
        out << "monotone within tolerance " << options.tolerance << "\n";
        return kSuccess;
    } catch (const std::exception& e) {
        out << "error: " << e.what() << "\n";
        return kFailure;
    }
}

int cmd_sample_data(const SampleDataOptions& options, std::ostream& out) {
    try {
        const CptModel model = CptModel::from_file(options.cpt_file);
        CategoricalDataset data = model.sample(options.rows, options.seed);

        if (!options.drop_level.empty()) {
            const auto equals = options.drop_level.find('=');
            if (equals == std::string::npos) {
                out << "error: --drop expects Variable=level\n";
                return kFailure;
            }
            const std::string variable = options.drop_level.substr(0, equals);
            const std::string level = options.drop_level.substr(equals + 1);
            const int v = data.index_of(variable);
            const auto& names = model.levels(v);
            const auto it = std::find(names.begin(), names.end(), level);
            if (it == names.end()) {
                out << "error: unknown level '" << level << "' for " << variable << "\n";
                return kFailure;
            }
            const int code = static_cast<int>(it - names.begin());
            std::vector<bool> keep(data.row_count());
            for (std::size_t r = 0; r < data.row_count(); ++r)
                keep[r] = data.cell(r, v) != code;
            data = data.filtered(keep);
        }

        if (options.out_csv.empty()) {
            data.write_csv(out);
        } else {
            std::ofstream file(options.out_csv, std::ios::binary);
            if (!file) {
                out << "error: cannot write " << options.out_csv << "\n";
                return kFailure;
            }
            data.write_csv(file);
            out << "wrote " << data.row_count() << " rows to " << options.out_csv << "\n";
        }
        return kSuccess;
    } catch (const std::exception& e) {
        out << "error: " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace lacr::cli
