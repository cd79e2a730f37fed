#ifndef FIMCAST_GENERATORS_HPP
#define FIMCAST_GENERATORS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "fimcast/design.hpp"
#include "fimcast/series.hpp"

namespace fimcast {

/// Mackey-Glass delay differential equation
///   dx/dt = a x(t-tau) / (1 + x(t-tau)^10) - b x(t)
/// integrated with classical RK4; the delayed term is linearly interpolated
/// from a ring-buffer history. History is the constant x0 for t <= 0.
struct MackeyGlassConfig {
    double a = 0.2;
    double b = 0.1;
    double tau = 30.0;      // delay in seconds
    double x0 = 1.2;        // constant history value
    double dt = 0.1;        // integration step
    int sample_every = 10;  // output decimation; output spacing = dt * sample_every
    int n_samples = 1500;

    void validate() const;
};

/// Integrates the configured trajectory. The first output sample is x(0);
/// output dt metadata is dt * sample_every. Throws NumericalError (naming the
/// failing step) if the state goes non-finite.
Series mackey_glass(const MackeyGlassConfig& cfg);

/// Iterates v(t+1) = sum_j a_true[j] * monomial_j(delay vector at t) from the
/// seed values; exact ground truth for coefficient-recovery tests.
/// Throws DimensionError on seed/coefficient size mismatch and NumericalError
/// if the trajectory exceeds 1e12 in magnitude.
Series synthetic_polynomial_series(const Eigen::VectorXd& a_true,
                                   const MonomialBasis& basis,
                                   const std::vector<double>& seed_values,
                                   int n, int lag = 1, double dt = 1.0);

/// ECG-like surrogate: periodic spike train (sharp positive peak with a
/// shallow recovery dip) plus small Gaussian noise. Deterministic for a given
/// seed on a given platform.
Series synthetic_ecg(int n_samples, double rate_hz, std::uint64_t seed);

} // namespace fimcast

#endif
