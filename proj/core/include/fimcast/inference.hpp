#ifndef FIMCAST_INFERENCE_HPP
#define FIMCAST_INFERENCE_HPP

#include <Eigen/Dense>

#include "fimcast/design.hpp"
#include "fimcast/embedding.hpp"

namespace fimcast {

/// Result of the modeling phase: the coefficient expectation vector, the
/// residual variance, and everything needed to apply the model to new data.
struct FittedModel {
    Eigen::VectorXd a_mean;  // length N_c
    double sigma2 = 0.0;     // residual sum of squares / max(M - rank, 1)
    MonomialBasis basis;
    EmbeddingConfig embedding;
    int T = 1;               // forecast horizon in samples
    int rank = 0;            // effective rank of W
    double svd_tol = 0.0;    // relative singular-value cutoff actually used
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    bool standardized = false;
    Eigen::VectorXd coord_mean;
    Eigen::VectorXd coord_sd;
};

/// Relative cutoff applied when svd_tol = 0 is requested.
inline constexpr double kDefaultSvdTol = 1e-12;

/// Minimum-norm least-squares solve of W a = v_T via SVD. Singular values
/// below svd_tol * sigma_max are treated as zero (svd_tol = 0 selects the
/// default cutoff). Throws DimensionError on an empty system and DataError on
/// non-finite entries.
FittedModel fit_coefficients(const DesignMatrix& dm, double svd_tol = 0.0);

/// Moore-Penrose pseudo-inverse with a relative singular-value cutoff.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m, double svd_tol = 0.0);

/// Fisher information matrix W^T W / sigma2, symmetrized against round-off.
/// Throws ConfigError unless sigma2 > 0.
Eigen::MatrixXd fisher_information_matrix(const DesignMatrix& dm, double sigma2);

/// Coefficient covariance sigma2 * (W^T W)^+; equals the exact inverse on
/// full column rank. Throws ConfigError unless sigma2 > 0.
Eigen::MatrixXd coefficient_covariance(const DesignMatrix& dm, double sigma2);

/// Gaussian log-density of a coefficient vector given the training system:
/// -(N_c/2) ln(2 pi sigma2) - |v_T - W a|^2 / (2 sigma2).
double log_density(const Eigen::VectorXd& a, const DesignMatrix& dm, double sigma2);

/// Data-only Fisher diagnostic: sum_k C_k / |v_k|, with targets smaller in
/// magnitude than eps clamped to eps.
struct EmpiricalFim {
    double value = 0.0;
    int guard_count = 0; // how many targets hit the eps clamp
};

EmpiricalFim empirical_fim(const Eigen::VectorXd& targets,
                           const Eigen::VectorXd& c_weights, double eps);

/// Default clamp for empirical_fim: 1e-9 * max |v_k|.
double empirical_fim_default_eps(const Eigen::VectorXd& targets);

/// Diagonal of the empirical-FIM Hessian, entries 2 C_k / |v_k|^3.
/// Throws ConfigError if any target is within eps of zero.
Eigen::VectorXd empirical_fim_hessian_diag(const Eigen::VectorXd& targets,
                                           const Eigen::VectorXd& c_weights,
                                           double eps = 0.0);

} // namespace fimcast

#endif
