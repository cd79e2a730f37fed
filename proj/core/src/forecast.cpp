#include "fimcast/forecast.hpp"

#include <algorithm>
#include <cmath>

#include "fimcast/design.hpp"

namespace fimcast {

int horizon_bound(int n_samples, int T, int d) {
    const int reach = std::max(T, d);
    if (n_samples <= reach) {
        throw DimensionError("horizon bound needs n_samples > max(T, d) = " +
                             std::to_string(reach) + ", got n_samples = " +
                             std::to_string(n_samples));
    }
    return n_samples - reach;
}

namespace {

Eigen::RowVectorXd standardize_row(const FittedModel& model, Eigen::RowVectorXd row) {
    if (model.standardized) {
        row = (row - model.coord_mean.transpose()).array() /
              model.coord_sd.transpose().array();
    }
    return row;
}

} // namespace

ForecastResult predict(const Series& series, const FittedModel& model,
                       const ForecastConfig& fc) {
    series.validate();
    if (fc.T < 1) throw ConfigError("forecast horizon T must be >= 1");
    if (model.basis.d != model.embedding.d) {
        throw ConfigError("model basis dimension " + std::to_string(model.basis.d) +
                          " does not match its embedding dimension " +
                          std::to_string(model.embedding.d));
    }
    if (model.a_mean.size() != static_cast<Eigen::Index>(model.basis.terms.size())) {
        throw ConfigError("model has " + std::to_string(model.a_mean.size()) +
                          " coefficients but basis has " +
                          std::to_string(model.basis.terms.size()) + " terms");
    }

    const int d = model.embedding.d;
    const int lag = model.embedding.lag;
    const int n = static_cast<int>(series.size());
    const int first_base = (d - 1) * lag;
    if (n <= first_base) {
        throw DimensionError("series too short for the model's embedding");
    }

    const int requested = fc.m_p ? *fc.m_p : horizon_bound(n, fc.T, d);
    if (requested < 1) throw ConfigError("m_p must be >= 1");
    // Truth alignment caps the effective count: the last target with an
    // observed counterpart is n - 1, so at most n - T - (d-1)*lag pairs exist.
    const int capacity = n - fc.T - first_base;
    if (capacity < 1) {
        throw DimensionError("no truth-aligned predictions possible: need series "
                             "longer than " + std::to_string(fc.T + first_base) +
                             " samples");
    }
    const int m_p = std::min(requested, capacity);

    ForecastResult result;
    result.config = fc;
    result.m_p_requested = requested;
    result.m_p = m_p;
    result.first_target_index = first_base + fc.T;
    result.predicted.resize(m_p);
    result.aligned_truth.resize(m_p);
    result.pointwise_sq_error.resize(m_p);

    if (fc.mode == ForecastMode::Direct) {
        for (int j = 0; j < m_p; ++j) {
            const int base = first_base + j;
            Eigen::RowVectorXd delay_vec(d);
            for (int i = 0; i < d; ++i) delay_vec(i) = series.values[base - i * lag];
            result.predicted(j) =
                expand_row(model.basis, standardize_row(model, delay_vec))
                    .dot(model.a_mean);
        }
    } else {
        // Closed loop: working copy of the signal; once a target has been
        // predicted, later delay vectors read the prediction, not the truth.
        std::vector<double> working = series.values;
        for (int j = 0; j < m_p; ++j) {
            const int base = first_base + j;
            Eigen::RowVectorXd delay_vec(d);
            for (int i = 0; i < d; ++i) delay_vec(i) = working[base - i * lag];
            const double pred =
                expand_row(model.basis, standardize_row(model, delay_vec))
                    .dot(model.a_mean);
            result.predicted(j) = pred;
            working[base + fc.T] = pred;
        }
    }

    for (int j = 0; j < m_p; ++j) {
        result.aligned_truth(j) = series.values[result.first_target_index + j];
        const double diff = result.aligned_truth(j) - result.predicted(j);
        result.pointwise_sq_error(j) = diff * diff;
    }
    result.mse = result.pointwise_sq_error.mean();
    return result;
}

double mse(const Eigen::VectorXd& truth, const Eigen::VectorXd& predicted) {
    if (truth.size() != predicted.size()) {
        throw DimensionError("mse length mismatch: " + std::to_string(truth.size()) +
                             " vs " + std::to_string(predicted.size()));
    }
    if (truth.size() == 0) throw DimensionError("mse of empty vectors");
    return (truth - predicted).squaredNorm() / static_cast<double>(truth.size());
}

Eigen::VectorXd rolling_mse(const Eigen::VectorXd& truth,
                            const Eigen::VectorXd& predicted, int window) {
    if (truth.size() != predicted.size()) {
        throw DimensionError("rolling_mse length mismatch");
    }
    const int n = static_cast<int>(truth.size());
    if (window < 1 || window > n) {
        throw DimensionError("rolling_mse window must be in [1, " + std::to_string(n) +
                             "], got " + std::to_string(window));
    }
    const Eigen::VectorXd sq = (truth - predicted).array().square();
    Eigen::VectorXd out(n - window + 1);
    double acc = sq.head(window).sum();
    out(0) = acc / window;
    for (int j = 1; j < n - window + 1; ++j) {
        acc += sq(j + window - 1) - sq(j - 1);
        out(j) = acc / window;
    }
    return out;
}

} // namespace fimcast
