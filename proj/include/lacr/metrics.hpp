#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lacr/graph.hpp"
#include "lacr/ground_truth.hpp"
#include "lacr/recover.hpp"

namespace lacr {

struct ConfusionCounts {
    int tp = 0;
    int fp = 0;
    int fn = 0;
};

struct SkeletonMetrics {
    std::optional<double> ap;  // absent when nothing was predicted
    double ar = 0.0;
    double f1 = 0.0;
    double nhd = 0.0;  // (FP + FN) / n^2
};

struct OrientationMetrics {
    double tea = 0.0;
    int correct = 0;
    int total_tp = 0;
};

// Unordered-edge set comparison; variable sets must match.
ConfusionCounts skeleton_confusion(const Skeleton& predicted, const Skeleton& truth);

SkeletonMetrics skeleton_metrics(const ConfusionCounts& counts, int n);

// True-positive skeleton edges of `predicted` against `truth`.
std::vector<Edge> true_positive_edges(const Skeleton& predicted, const Skeleton& truth);

// An edge counts as correctly oriented iff the predicted arrow appears among
// the truth arrows (a reciprocal truth pair accepts either direction).
// Undefined (nullopt) when there are no true-positive edges.
std::optional<OrientationMetrics> tea(const std::vector<std::pair<int, int>>& predicted_arrows,
                                      const std::vector<std::pair<int, int>>& truth_arrows,
                                      const std::vector<Edge>& tp_edges);

struct EvaluationRow {
    std::string truth_label;  // "<name>:<variant>"
    ConfusionCounts counts;
    SkeletonMetrics skeleton;
    std::optional<OrientationMetrics> orientation;
    std::vector<std::string> notes;
};

// Table-shaped comparison of one recovery against one or more truths; both a
// text table and machine-readable JSON.
struct Evaluation {
    std::vector<EvaluationRow> rows;

    std::string to_text() const;
    nlohmann::json to_json() const;
};

Evaluation evaluate_report(const RecoveryReport& recovery,
                           const std::vector<GroundTruthEntry>& truths);

}  // namespace lacr
