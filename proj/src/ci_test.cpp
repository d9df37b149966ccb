#include "lacr/ci_test.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace lacr {

namespace {

struct Stratum {
    std::vector<std::vector<double>> counts;
    double total = 0;
};

std::map<std::vector<int>, Stratum> stratify(const CategoricalDataset& data, int i, int j,
                                             const std::vector<int>& z) {
    std::map<std::vector<int>, Stratum> strata;
    const int ri = data.arity(i);
    const int rj = data.arity(j);
    std::vector<int> key(z.size());
    for (std::size_t r = 0; r < data.row_count(); ++r) {
        for (std::size_t k = 0; k < z.size(); ++k) key[k] = data.cell(r, z[k]);
        Stratum& s = strata[key];
        if (s.counts.empty()) s.counts.assign(ri, std::vector<double>(rj, 0.0));
        s.counts[data.cell(r, i)][data.cell(r, j)] += 1.0;
        s.total += 1.0;
    }
    return strata;
}

void check_query(const CategoricalDataset& data, int i, int j, const std::vector<int>& z,
                 double alpha) {
    if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha must be in (0, 1)");
    if (i == j) throw std::invalid_argument("CI test needs distinct variables");
    const int n = data.variable_count();
    if (i < 0 || i >= n || j < 0 || j >= n) throw std::out_of_range("variable index out of range");
    for (int v : z) {
        if (v < 0 || v >= n) throw std::out_of_range("conditioning index out of range");
        if (v == i || v == j)
            throw std::invalid_argument("conditioning set must exclude the tested pair");
    }
}

template <typename CellStat>
CiResult run_test(const CategoricalDataset& data, int i, int j, const std::vector<int>& z,
                  double alpha, CellStat cell_stat) {
    check_query(data, i, j, z, alpha);

    const int ri = data.arity(i);
    const int rj = data.arity(j);
    const int dof_per_stratum = (ri - 1) * (rj - 1);

    CiResult result;
    for (const auto& [key, stratum] : stratify(data, i, j, z)) {
        if (stratum.total <= 0) continue;
        if (stratum.total < 5.0) result.small_strata = true;
        std::vector<double> row_sums(ri, 0.0), col_sums(rj, 0.0);
        for (int a = 0; a < ri; ++a)
            for (int b = 0; b < rj; ++b) {
                row_sums[a] += stratum.counts[a][b];
                col_sums[b] += stratum.counts[a][b];
            }
        for (int a = 0; a < ri; ++a) {
            for (int b = 0; b < rj; ++b) {
                const double expected = row_sums[a] * col_sums[b] / stratum.total;
                result.statistic += cell_stat(stratum.counts[a][b], expected);
            }
        }
        result.degrees_of_freedom += dof_per_stratum;
    }

    if (result.degrees_of_freedom <= 0) {
        // Nothing testable: a constant variable or no populated stratum.
        result.statistic = 0.0;
        result.degrees_of_freedom = 0;
        result.p_value = 1.0;
        result.independent = true;
        result.degenerate = true;
        return result;
    }

    boost::math::chi_squared dist(result.degrees_of_freedom);
    result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
    result.independent = result.p_value > alpha;
    return result;
}

}  // namespace

CiResult ci_test(const CategoricalDataset& data, int i, int j, const std::vector<int>& z,
                 double alpha) {
    return run_test(data, i, j, z, alpha, [](double observed, double expected) {
        if (observed <= 0.0 || expected <= 0.0) return 0.0;
        return 2.0 * observed * std::log(observed / expected);
    });
}

CiResult pearson_ci_test(const CategoricalDataset& data, int i, int j, const std::vector<int>& z,
                         double alpha) {
    return run_test(data, i, j, z, alpha, [](double observed, double expected) {
        if (expected <= 0.0) return 0.0;
        const double diff = observed - expected;
        return diff * diff / expected;
    });
}

}  // namespace lacr
