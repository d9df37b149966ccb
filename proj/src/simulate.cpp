#include "lacr/simulate.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "lacr/dataset.hpp"

namespace lacr {

double majority_accuracy(double p, int voters) {
    if (voters < 1 || voters % 2 == 0)
        throw std::invalid_argument("majority accuracy needs an odd voter count");
    double total = 0.0;
    for (int k = voters / 2 + 1; k <= voters; ++k) {
        // C(voters, k) built multiplicatively to stay in double range.
        double coefficient = 1.0;
        for (int t = 0; t < k; ++t)
            coefficient *= static_cast<double>(voters - t) / static_cast<double>(t + 1);
        total += coefficient * std::pow(p, k) * std::pow(1.0 - p, voters - k);
    }
    return total;
}

Skeleton random_skeleton(int nodes, std::uint64_t seed) {
    if (nodes < 2) throw std::invalid_argument("random skeleton needs at least 2 nodes");
    std::vector<std::string> names;
    names.reserve(nodes);
    for (int v = 1; v <= nodes; ++v) names.push_back("V" + std::to_string(v));
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int a = 0; a < nodes; ++a)
        for (int b = a + 1; b < nodes; ++b)
            if (rng.next_double() < 0.5) edges.push_back({a, b});
    return Skeleton(names, edges);
}

double SimulationTable::worst_decrease() const {
    double worst = 0.0;
    for (std::size_t k = 1; k < rows.size(); ++k)
        worst = std::max(worst, rows[k - 1].mean_f1 - rows[k].mean_f1);
    return worst;
}

std::string SimulationTable::to_text() const {
    std::ostringstream out;
    out << std::left << std::setw(8) << "voters" << std::setw(12) << "mean F1" << std::setw(12)
        << "stderr" << std::setw(16) << "pair accuracy" << "analytic\n";
    for (const auto& row : rows) {
        out << std::left << std::setw(8) << row.voters << std::fixed << std::setprecision(4)
            << std::setw(12) << row.mean_f1 << std::setw(12) << row.stderr_f1 << std::setw(16)
            << row.pair_accuracy << "-\n";
    }
    return out.str();
}

SimulationTable simulate_majority_accuracy(const Skeleton& truth, double voter_accuracy,
                                           const std::vector<int>& voter_counts, int trials,
                                           std::uint64_t seed) {
    if (!(voter_accuracy > 0.5 && voter_accuracy < 1.0))
        throw std::invalid_argument("voter accuracy must lie in (0.5, 1)");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    for (int m : voter_counts)
        if (m < 1 || m % 2 == 0)
            throw std::invalid_argument("voter counts must be odd and positive");

    const int n = truth.variable_count();
    SimulationTable table;

    for (std::size_t c = 0; c < voter_counts.size(); ++c) {
        const int voters = voter_counts[c];
        double f1_sum = 0.0, f1_square_sum = 0.0;
        long correct_decisions = 0, total_decisions = 0;

        for (int trial = 0; trial < trials; ++trial) {
            Rng rng = Rng::derive(seed, (static_cast<std::uint64_t>(c) << 32) |
                                            static_cast<std::uint64_t>(trial));
            int tp = 0, fp = 0, fn = 0;
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    const bool truth_adjacent = truth.has_edge(a, b);
                    int score = 0;
                    for (int v = 0; v < voters; ++v) {
                        const bool report = rng.next_double() < voter_accuracy
                                                ? truth_adjacent
                                                : !truth_adjacent;
                        score += report ? 1 : -1;
                    }
                    const bool keep = score > 0;
                    ++total_decisions;
                    if (keep == truth_adjacent) ++correct_decisions;
                    if (keep && truth_adjacent) ++tp;
                    else if (keep) ++fp;
                    else if (truth_adjacent) ++fn;
                }
            }
            const int denominator = 2 * tp + fp + fn;
            const double f1 = denominator > 0 ? 2.0 * tp / denominator : 1.0;
            f1_sum += f1;
            f1_square_sum += f1 * f1;
        }

        SimulationRow row;
        row.voters = voters;
        row.mean_f1 = f1_sum / trials;
        const double variance =
            std::max(0.0, f1_square_sum / trials - row.mean_f1 * row.mean_f1);
        row.stderr_f1 = std::sqrt(variance / trials);
        row.pair_accuracy = static_cast<double>(correct_decisions) / total_decisions;
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace lacr
