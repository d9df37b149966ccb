#pragma once

#include <string>
#include <vector>

#include "lacr/dataset.hpp"

namespace lacr {

struct CiResult {
    double statistic = 0.0;       // G^2 value
    int degrees_of_freedom = 0;   // summed over non-empty strata
    double p_value = 1.0;
    bool independent = true;      // p_value > alpha
    bool degenerate = false;      // no usable stratum: dof 0
    bool small_strata = false;    // some non-empty stratum had < 5 counts
};

// G^2 likelihood-ratio test of i ⟂ j within each stratum of z.
// dof = (#non-empty strata) * (r_i - 1)(r_j - 1); independent ⇔ p > alpha.
CiResult ci_test(const CategoricalDataset& data, int i, int j, const std::vector<int>& z,
                 double alpha);

// Pearson chi-squared on the same stratification; kept alongside G^2 so the
// two can be cross-checked on large samples.
CiResult pearson_ci_test(const CategoricalDataset& data, int i, int j, const std::vector<int>& z,
                         double alpha);

// Conditional-independence verdict source driving the PC sweep.
class CiOracle {
public:
    virtual ~CiOracle() = default;
    virtual CiResult test(int i, int j, const std::vector<int>& z) = 0;
    virtual int variable_count() const = 0;
    virtual const std::vector<std::string>& variable_names() const = 0;
};

class DataCiOracle : public CiOracle {
public:
    DataCiOracle(const CategoricalDataset& data, double alpha) : data_(data), alpha_(alpha) {}

    CiResult test(int i, int j, const std::vector<int>& z) override {
        return ci_test(data_, i, j, z, alpha_);
    }
    int variable_count() const override { return data_.variable_count(); }
    const std::vector<std::string>& variable_names() const override {
        return data_.variable_names();
    }

private:
    const CategoricalDataset& data_;
    double alpha_;
};

}  // namespace lacr
