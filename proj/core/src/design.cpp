#include "fimcast/design.hpp"

#include <cmath>
#include <limits>

namespace fimcast {

namespace {
// Relative singular-value cutoff for the rank estimate in sigma_meta.
constexpr double kRankCutoff = 1e-12;
} // namespace

std::int64_t count_terms(int d, int k) {
    if (d < 1 || k < 1) {
        throw ConfigError("count_terms requires d >= 1 and k >= 1");
    }
    // C(d+k-1, k) by the multiplicative formula; each partial product is an
    // exact integer, checked in 128-bit before narrowing.
    __int128 result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * (d - 1 + i);
        result /= i;
        if (result > std::numeric_limits<std::int64_t>::max()) {
            throw NumericalError("count_terms(" + std::to_string(d) + ", " +
                                 std::to_string(k) + ") overflows 64-bit integers");
        }
    }
    return static_cast<std::int64_t>(result);
}

std::int64_t total_coefficients(int d, int np) {
    if (d < 1 || np < 0) {
        throw ConfigError("total_coefficients requires d >= 1 and np >= 0");
    }
    std::int64_t total = 1; // the constant term a0
    for (int k = 1; k <= np; ++k) {
        const std::int64_t c = count_terms(d, k);
        if (total > std::numeric_limits<std::int64_t>::max() - c) {
            throw NumericalError("total_coefficients overflows 64-bit integers");
        }
        total += c;
    }
    return total;
}

namespace {

void emit_tuples(int d, int degree, int min_index, std::vector<int>& current,
                 std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == degree) {
        out.push_back(current);
        return;
    }
    for (int i = min_index; i < d; ++i) {
        current.push_back(i);
        emit_tuples(d, degree, i, current, out);
        current.pop_back();
    }
}

} // namespace

MonomialBasis enumerate_monomials(int d, int np) {
    MonomialBasis basis;
    basis.d = d;
    basis.np = np;
    basis.terms.reserve(static_cast<std::size_t>(total_coefficients(d, np)));
    basis.terms.emplace_back(); // constant term
    std::vector<int> current;
    for (int degree = 1; degree <= np; ++degree) {
        emit_tuples(d, degree, 0, current, basis.terms);
    }
    return basis;
}

double eval_monomial(const std::vector<int>& term,
                     const Eigen::Ref<const Eigen::RowVectorXd>& delay_vec) {
    double product = 1.0;
    for (int idx : term) product *= delay_vec(idx);
    return product;
}

Eigen::RowVectorXd expand_row(const MonomialBasis& basis,
                              const Eigen::Ref<const Eigen::RowVectorXd>& delay_vec) {
    if (delay_vec.size() != basis.d) {
        throw DimensionError("delay vector has " + std::to_string(delay_vec.size()) +
                             " components, basis expects " + std::to_string(basis.d));
    }
    Eigen::RowVectorXd row(static_cast<Eigen::Index>(basis.terms.size()));
    for (std::size_t j = 0; j < basis.terms.size(); ++j) {
        row(static_cast<Eigen::Index>(j)) = eval_monomial(basis.terms[j], delay_vec);
    }
    return row;
}

DesignMatrix build_design_matrix(const DelayMatrix& delays, const Series& series,
                                 int T, int M, const MonomialBasis& basis,
                                 bool standardize) {
    if (T < 1) throw ConfigError("forecast horizon T must be >= 1");
    if (M < 1) throw ConfigError("training size M must be >= 1");
    if (basis.d != delays.config.d) {
        throw ConfigError("basis dimension " + std::to_string(basis.d) +
                          " does not match embedding dimension " +
                          std::to_string(delays.config.d));
    }

    const int n = static_cast<int>(series.size());
    // Valid training rows are those whose T-ahead target exists.
    int feasible = 0;
    for (int r = 0; r < static_cast<int>(delays.base_indices.size()); ++r) {
        if (delays.base_indices[r] + T <= n - 1) ++feasible;
    }
    if (M > feasible) {
        throw DimensionError("requested M=" + std::to_string(M) +
                             " training pairs but only " + std::to_string(feasible) +
                             " are feasible for T=" + std::to_string(T));
    }

    DesignMatrix dm;
    dm.basis = basis;
    dm.standardized = standardize;
    const Eigen::Index nc = static_cast<Eigen::Index>(basis.terms.size());
    dm.w.resize(M, nc);
    dm.targets.resize(M);
    dm.base_indices.resize(M);

    Eigen::MatrixXd coords = delays.rows.topRows(M);
    if (standardize) {
        dm.coord_mean = coords.colwise().mean();
        Eigen::RowVectorXd sd =
            ((coords.rowwise() - dm.coord_mean.transpose()).array().square().colwise().sum() /
             std::max(M - 1, 1))
                .sqrt();
        for (Eigen::Index i = 0; i < sd.size(); ++i) {
            if (sd(i) <= 0.0) sd(i) = 1.0; // constant coordinate: leave centered
        }
        dm.coord_sd = sd;
        coords = (coords.rowwise() - dm.coord_mean.transpose()).array().rowwise() /
                 sd.array();
    }

    for (int r = 0; r < M; ++r) {
        dm.w.row(r) = expand_row(basis, coords.row(r));
        dm.base_indices[r] = delays.base_indices[r];
        dm.targets(r) = series.values[delays.base_indices[r] + T];
    }

    // Conditioning report from the singular values of W.
    Eigen::BDCSVD<Eigen::MatrixXd> svd(dm.w);
    const Eigen::VectorXd& sv = svd.singularValues();
    dm.sigma_meta.sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    dm.sigma_meta.sigma_min = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
    const double cutoff = kRankCutoff * dm.sigma_meta.sigma_max;
    dm.sigma_meta.rank = static_cast<int>((sv.array() > cutoff).count());
    return dm;
}

} // namespace fimcast
