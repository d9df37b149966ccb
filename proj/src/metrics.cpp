#include "lacr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lacr {

ConfusionCounts skeleton_confusion(const Skeleton& predicted, const Skeleton& truth) {
    if (predicted.variable_names() != truth.variable_names())
        throw std::invalid_argument("skeleton comparison needs matching variable sets");
    ConfusionCounts counts;
    for (const auto& edge : predicted.edges()) {
        if (truth.edges().count(edge)) ++counts.tp;
        else ++counts.fp;
    }
    for (const auto& edge : truth.edges())
        if (!predicted.edges().count(edge)) ++counts.fn;
    return counts;
}

SkeletonMetrics skeleton_metrics(const ConfusionCounts& counts, int n) {
    if (n < 2) throw std::invalid_argument("metrics need at least 2 variables");
    if (counts.tp < 0 || counts.fp < 0 || counts.fn < 0)
        throw std::invalid_argument("confusion counts must be non-negative");

    SkeletonMetrics metrics;
    metrics.nhd = static_cast<double>(counts.fp + counts.fn) / (static_cast<double>(n) * n);

    const int predicted = counts.tp + counts.fp;
    const int actual = counts.tp + counts.fn;
    if (predicted == 0 && actual == 0) {
        // Both graphs empty: exact agreement.
        metrics.ap = 1.0;
        metrics.ar = 1.0;
        metrics.f1 = 1.0;
        return metrics;
    }
    if (predicted > 0) metrics.ap = static_cast<double>(counts.tp) / predicted;
    metrics.ar = actual > 0 ? static_cast<double>(counts.tp) / actual : 1.0;
    const double ap = metrics.ap.value_or(0.0);
    metrics.f1 = (ap + metrics.ar) > 0 ? 2.0 * ap * metrics.ar / (ap + metrics.ar) : 0.0;
    return metrics;
}

std::vector<Edge> true_positive_edges(const Skeleton& predicted, const Skeleton& truth) {
    std::vector<Edge> out;
    for (const auto& edge : predicted.edges())
        if (truth.edges().count(edge)) out.push_back(edge);
    return out;
}

std::optional<OrientationMetrics> tea(const std::vector<std::pair<int, int>>& predicted_arrows,
                                      const std::vector<std::pair<int, int>>& truth_arrows,
                                      const std::vector<Edge>& tp_edges) {
    if (tp_edges.empty()) return std::nullopt;

    auto has_arrow = [](const std::vector<std::pair<int, int>>& arrows, int from, int to) {
        return std::find(arrows.begin(), arrows.end(), std::make_pair(from, to)) != arrows.end();
    };

    OrientationMetrics metrics;
    metrics.total_tp = static_cast<int>(tp_edges.size());
    for (const auto& [a, b] : tp_edges) {
        const bool forward = has_arrow(predicted_arrows, a, b) && has_arrow(truth_arrows, a, b);
        const bool backward = has_arrow(predicted_arrows, b, a) && has_arrow(truth_arrows, b, a);
        if (forward || backward) ++metrics.correct;
    }
    metrics.tea = static_cast<double>(metrics.correct) / metrics.total_tp;
    return metrics;
}

namespace {

std::string format_metric(const std::optional<double>& value) {
    if (!value) return "—";
    std::ostringstream out;
    out << std::fixed << std::setprecision(3) << *value;
    return out.str();
}

}  // namespace

std::string Evaluation::to_text() const {
    std::ostringstream out;
    out << std::left << std::setw(22) << "Truth" << std::setw(8) << "AP" << std::setw(8) << "AR"
        << std::setw(8) << "F1" << std::setw(18) << "NHD (a.k.a. SHD)" << std::setw(8) << "TEA"
        << "Notes\n";
    for (const auto& row : rows) {
        std::optional<double> tea_value;
        if (row.orientation) tea_value = row.orientation->tea;
        out << std::left << std::setw(22) << row.truth_label << std::setw(8)
            << format_metric(row.skeleton.ap) << std::setw(8)
            << format_metric(row.skeleton.ar) << std::setw(8)
            << format_metric(row.skeleton.f1) << std::setw(18)
            << format_metric(row.skeleton.nhd) << std::setw(8) << format_metric(tea_value);
        for (std::size_t k = 0; k < row.notes.size(); ++k)
            out << (k ? "; " : "") << row.notes[k];
        out << "\n";
    }
    return out.str();
}

nlohmann::json Evaluation::to_json() const {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json entry = {{"truth", row.truth_label},
                                {"tp", row.counts.tp},
                                {"fp", row.counts.fp},
                                {"fn", row.counts.fn},
                                {"ar", row.skeleton.ar},
                                {"f1", row.skeleton.f1},
                                {"nhd", row.skeleton.nhd},
                                {"notes", row.notes}};
        entry["ap"] = row.skeleton.ap ? nlohmann::json(*row.skeleton.ap) : nlohmann::json();
        if (row.orientation) {
            entry["tea"] = row.orientation->tea;
            entry["oriented_correctly"] = row.orientation->correct;
            entry["true_positive_edges"] = row.orientation->total_tp;
        } else {
            entry["tea"] = nlohmann::json();
        }
        rows_json.push_back(std::move(entry));
    }
    return {{"rows", rows_json}};
}

Evaluation evaluate_report(const RecoveryReport& recovery,
                           const std::vector<GroundTruthEntry>& truths) {
    Evaluation evaluation;
    for (const auto& truth : truths) {
        if (truth.variables != recovery.skeleton.variable_names())
            throw std::invalid_argument("variable set mismatch against truth " + truth.name +
                                        ":" + truth.variant);
        EvaluationRow row;
        row.truth_label = truth.name + ":" + truth.variant;
        row.counts = skeleton_confusion(recovery.skeleton, truth.skeleton);
        row.skeleton = skeleton_metrics(row.counts, static_cast<int>(truth.variables.size()));

        if (truth.directed && !recovery.directed.empty()) {
            const auto tp = true_positive_edges(recovery.skeleton, truth.skeleton);
            row.orientation = tea(recovery.directed, truth.arrows, tp);
        }

        for (const auto& entry : recovery.ledger.entries) {
            for (const auto& flag : entry.flags)
                row.notes.push_back(entry.names.first + "-" + entry.names.second + ": " + flag);
        }
        for (const auto& flag : recovery.flags) row.notes.push_back(flag);
        evaluation.rows.push_back(std::move(row));
    }
    return evaluation;
}

}  // namespace lacr
