#ifndef FIMCAST_DESIGN_HPP
#define FIMCAST_DESIGN_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "fimcast/embedding.hpp"
#include "fimcast/series.hpp"

namespace fimcast {

/// Ordered list of monomial terms over d delay coordinates up to degree np.
/// Each term is a non-decreasing tuple of 0-based coordinate indices; the
/// empty tuple is the constant term and always comes first. Terms are ordered
/// by degree, then lexicographically.
struct MonomialBasis {
    int d = 1;
    int np = 0;
    std::vector<std::vector<int>> terms;

    std::size_t size() const { return terms.size(); }
};

/// Number of degree-k monomials in d variables (combinations with
/// repetition). Exact integer arithmetic; throws NumericalError on overflow.
std::int64_t count_terms(int d, int k);

/// Total number of ansatz coefficients: 1 (constant) plus all degrees 1..np.
std::int64_t total_coefficients(int d, int np);

/// Builds the full basis for dimension d and maximum degree np.
MonomialBasis enumerate_monomials(int d, int np);

/// Evaluates one monomial term on a delay vector (product of the named
/// components; empty term evaluates to 1).
double eval_monomial(const std::vector<int>& term,
                     const Eigen::Ref<const Eigen::RowVectorXd>& delay_vec);

/// Expands a delay vector into a full design-matrix row.
Eigen::RowVectorXd expand_row(const MonomialBasis& basis,
                              const Eigen::Ref<const Eigen::RowVectorXd>& delay_vec);

/// Conditioning summary of a design matrix.
struct ConditioningReport {
    int rank = 0;
    double sigma_max = 0.0;
    double sigma_min = 0.0; // smallest singular value (possibly ~0)
};

/// Training system W a = v_T: monomial expansions of the first M valid delay
/// vectors and their T-ahead targets.
struct DesignMatrix {
    Eigen::MatrixXd w;       // M x N_c, column 0 all ones
    Eigen::VectorXd targets; // length M
    std::vector<int> base_indices;
    MonomialBasis basis;
    ConditioningReport sigma_meta;
    bool standardized = false;
    Eigen::VectorXd coord_mean; // per delay coordinate, when standardized
    Eigen::VectorXd coord_sd;
};

/// Assembles the design matrix from the first M delay vectors (in time
/// order) whose T-ahead target lies inside the series. When standardize is
/// set, delay coordinates are z-scored before monomial expansion and the
/// transform is recorded for reuse at prediction time.
/// Throws DimensionError naming the maximum feasible M when M is infeasible.
DesignMatrix build_design_matrix(const DelayMatrix& delays, const Series& series,
                                 int T, int M, const MonomialBasis& basis,
                                 bool standardize = false);

} // namespace fimcast

#endif
