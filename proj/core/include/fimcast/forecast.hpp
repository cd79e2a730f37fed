#ifndef FIMCAST_FORECAST_HPP
#define FIMCAST_FORECAST_HPP

#include <Eigen/Dense>
#include <optional>

#include "fimcast/inference.hpp"
#include "fimcast/series.hpp"

namespace fimcast {

enum class ForecastMode { Direct, Iterated };

struct ForecastConfig {
    int T = 1;
    ForecastMode mode = ForecastMode::Direct;
    std::optional<int> m_p; // requested number of predictions; default from
                            // horizon_bound, clamped to truth availability
};

struct ForecastResult {
    Eigen::VectorXd predicted;
    Eigen::VectorXd aligned_truth;      // observed samples at the same indices
    Eigen::VectorXd pointwise_sq_error;
    double mse = 0.0;
    int m_p_requested = 0;
    int m_p = 0;                        // effective count (vector lengths)
    int first_target_index = 0;         // absolute sample index of prediction 0
    ForecastConfig config;
};

/// Fiduciary prediction count M_P = n_samples - max(T, d).
/// Throws DimensionError unless n_samples > max(T, d).
int horizon_bound(int n_samples, int T, int d);

/// Prediction phase. Direct mode expands each observed delay vector and
/// applies the fitted coefficients; iterated mode feeds predictions back as
/// inputs once a delay coordinate falls beyond the first target index.
/// The effective prediction count is min(requested, truth-aligned capacity),
/// where capacity = n - T - (d-1)*lag; requested and effective counts are
/// both reported.
/// Throws ConfigError on basis/embedding inconsistency.
ForecastResult predict(const Series& series, const FittedModel& model,
                       const ForecastConfig& fc);

/// Mean squared error. Throws DimensionError on length mismatch or empty
/// input.
double mse(const Eigen::VectorXd& truth, const Eigen::VectorXd& predicted);

/// Sliding-window mean of squared errors, output length n - window + 1.
Eigen::VectorXd rolling_mse(const Eigen::VectorXd& truth,
                            const Eigen::VectorXd& predicted, int window);

} // namespace fimcast

#endif
