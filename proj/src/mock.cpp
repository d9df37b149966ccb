#include "lacr/mock.hpp"

#include <algorithm>

#include "lacr/chains.hpp"

namespace lacr {

namespace {

nlohmann::json stage_answers(const GroundTruthEntry& truth, int a, int b, bool with_reference) {
    const std::string factor_a = truth.variables[a];
    const std::string factor_b = truth.variables[b];
    const bool adjacent = truth.skeleton.has_edge(a, b);
    const std::string reference =
        "\n\nReference:\n" + factor_a + " and " + factor_b + " were jointly analyzed.";

    nlohmann::json stages = nlohmann::json::object();
    if (adjacent) {
        stages["association"] = std::string("Thoughts:\nThe factors co-occur.\n\nAnswer:\n"
                                            "(A) Associated") +
                                (with_reference ? reference : "");
        stages["type"] = std::string("Thoughts:\nNo third factor removes the association.\n\n"
                                     "Answer:\n(D) Directly Associated") +
                         (with_reference ? reference : "");
    } else {
        stages["association"] = std::string("Thoughts:\nNo dependence is reported.\n\nAnswer:\n"
                                            "(B) Independent") +
                                (with_reference ? reference : "");
    }

    if (truth.directed && adjacent) {
        const bool forward =
            std::find(truth.arrows.begin(), truth.arrows.end(), std::make_pair(a, b)) !=
            truth.arrows.end();
        const std::string choice = forward ? "(A) " + factor_a + " is the cause of " + factor_b
                                           : "(B) " + factor_b + " is the cause of " + factor_a;
        stages["orientation"] =
            "Thoughts:\nDirection follows the reference graph.\n\nAnswer:\n" + choice +
            (with_reference ? reference : "");
    } else {
        stages["orientation"] = "Thoughts:\nNo direction is established.\n\nAnswer:\n(C) Unknown";
    }
    return stages;
}

}  // namespace

nlohmann::json oracle_script(const GroundTruthEntry& truth, const CorpusManifest* manifest) {
    nlohmann::json script = nlohmann::json::object();
    const int n = static_cast<int>(truth.variables.size());
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const std::string key = pair_key(truth.variables[a], truth.variables[b]);
            nlohmann::json kbs = nlohmann::json::object();
            kbs["BG"] = stage_answers(truth, a, b, false);
            if (manifest) {
                const auto it = manifest->pairs.find(
                    pair_directory_name(truth.variables[a], truth.variables[b]));
                if (it != manifest->pairs.end()) {
                    for (const auto& doc : it->second.documents)
                        kbs["doc:" + doc.id] = stage_answers(truth, a, b, true);
                }
            }
            script[key] = std::move(kbs);
        }
    }
    return script;
}

}  // namespace lacr
