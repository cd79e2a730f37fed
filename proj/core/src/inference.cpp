#include "fimcast/inference.hpp"

#include <cmath>
#include <numbers>

namespace fimcast {

namespace {

double effective_tol(double svd_tol) {
    if (svd_tol < 0.0) throw ConfigError("svd_tol must be >= 0");
    return svd_tol == 0.0 ? kDefaultSvdTol : svd_tol;
}

void require_positive_sigma2(double sigma2) {
    if (!(sigma2 > 0.0)) {
        throw ConfigError("sigma2 must be positive, got " + std::to_string(sigma2));
    }
}

} // namespace

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m, double svd_tol) {
    const double tol = effective_tol(svd_tol);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? tol * sv(0) : 0.0;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

FittedModel fit_coefficients(const DesignMatrix& dm, double svd_tol) {
    if (dm.w.rows() == 0 || dm.w.cols() == 0) {
        throw DimensionError("design matrix is empty");
    }
    if (dm.targets.size() != dm.w.rows()) {
        throw DimensionError("target vector length " + std::to_string(dm.targets.size()) +
                             " does not match design matrix rows " +
                             std::to_string(dm.w.rows()));
    }
    if (!dm.w.allFinite() || !dm.targets.allFinite()) {
        throw DataError("design matrix or targets contain non-finite entries");
    }
    const double tol = effective_tol(svd_tol);

    Eigen::BDCSVD<Eigen::MatrixXd> svd(dm.w, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? tol * sv(0) : 0.0;

    // Minimum-norm least-squares solution with truncated singular values.
    Eigen::VectorXd ut_b = svd.matrixU().transpose() * dm.targets;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) {
            ut_b(i) /= sv(i);
            ++rank;
        } else {
            ut_b(i) = 0.0;
        }
    }

    FittedModel model;
    model.a_mean = svd.matrixV() * ut_b;
    model.basis = dm.basis;
    model.rank = rank;
    model.svd_tol = tol;
    model.sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    model.sigma_min = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
    model.standardized = dm.standardized;
    model.coord_mean = dm.coord_mean;
    model.coord_sd = dm.coord_sd;

    const double rss = (dm.targets - dm.w * model.a_mean).squaredNorm();
    const int dof = std::max(static_cast<int>(dm.w.rows()) - rank, 1);
    model.sigma2 = rss / static_cast<double>(dof);
    return model;
}

Eigen::MatrixXd fisher_information_matrix(const DesignMatrix& dm, double sigma2) {
    require_positive_sigma2(sigma2);
    Eigen::MatrixXd fim = dm.w.transpose() * dm.w / sigma2;
    return 0.5 * (fim + fim.transpose());
}

Eigen::MatrixXd coefficient_covariance(const DesignMatrix& dm, double sigma2) {
    require_positive_sigma2(sigma2);
    const Eigen::MatrixXd gram = dm.w.transpose() * dm.w;
    return sigma2 * pseudo_inverse(0.5 * (gram + gram.transpose()));
}

double log_density(const Eigen::VectorXd& a, const DesignMatrix& dm, double sigma2) {
    require_positive_sigma2(sigma2);
    if (a.size() != dm.w.cols()) {
        throw DimensionError("coefficient vector length " + std::to_string(a.size()) +
                             " does not match N_c = " + std::to_string(dm.w.cols()));
    }
    const double nc = static_cast<double>(dm.w.cols());
    const double rss = (dm.targets - dm.w * a).squaredNorm();
    return -0.5 * nc * std::log(2.0 * std::numbers::pi * sigma2) - rss / (2.0 * sigma2);
}

EmpiricalFim empirical_fim(const Eigen::VectorXd& targets,
                           const Eigen::VectorXd& c_weights, double eps) {
    if (targets.size() != c_weights.size()) {
        throw DimensionError("targets and weights have different lengths");
    }
    if (!(eps > 0.0)) throw ConfigError("empirical_fim eps must be positive");

    EmpiricalFim out;
    for (Eigen::Index k = 0; k < targets.size(); ++k) {
        double mag = std::abs(targets(k));
        if (mag < eps) {
            mag = eps;
            ++out.guard_count;
        }
        out.value += c_weights(k) / mag;
    }
    return out;
}

double empirical_fim_default_eps(const Eigen::VectorXd& targets) {
    const double max_mag = targets.size() > 0 ? targets.cwiseAbs().maxCoeff() : 0.0;
    return max_mag > 0.0 ? 1e-9 * max_mag : 1e-9;
}

Eigen::VectorXd empirical_fim_hessian_diag(const Eigen::VectorXd& targets,
                                           const Eigen::VectorXd& c_weights,
                                           double eps) {
    if (targets.size() != c_weights.size()) {
        throw DimensionError("targets and weights have different lengths");
    }
    const double threshold = eps > 0.0 ? eps : empirical_fim_default_eps(targets);
    Eigen::VectorXd diag(targets.size());
    for (Eigen::Index k = 0; k < targets.size(); ++k) {
        const double mag = std::abs(targets(k));
        if (mag < threshold) {
            throw ConfigError("target " + std::to_string(k) +
                              " is within eps of zero; Hessian diverges");
        }
        diag(k) = 2.0 * c_weights(k) / (mag * mag * mag);
    }
    return diag;
}

} // namespace fimcast
