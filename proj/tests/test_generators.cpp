#include <doctest.h>

#include <cmath>

#include "fimcast/embedding.hpp"
#include "fimcast/generators.hpp"

using namespace fimcast;

TEST_CASE("with a = 0 the trajectory decays as x0 * exp(-b t)") {
    MackeyGlassConfig cfg;
    cfg.a = 0.0;
    cfg.b = 0.1;
    cfg.x0 = 1.2;
    cfg.dt = 0.01;
    cfg.sample_every = 100; // one sample per second
    cfg.n_samples = 11;
    const Series s = mackey_glass(cfg);
    REQUIRE(s.size() == 11);
    CHECK(s.values[0] == 1.2);
    CHECK(s.values[10] ==
          doctest::Approx(1.2 * std::exp(-1.0)).epsilon(1e-6));
    CHECK(s.dt == doctest::Approx(1.0));
}

TEST_CASE("x = 1 is a fixed point when a = 2b") {
    // a x / (1 + x^10) - b x = 0 at x = 1 when a / 2 = b.
    MackeyGlassConfig cfg;
    cfg.a = 0.2;
    cfg.b = 0.1;
    cfg.x0 = 1.0;
    cfg.n_samples = 200;
    const Series s = mackey_glass(cfg);
    for (double v : s.values) {
        CHECK(std::abs(v - 1.0) <= 1e-9);
    }
}

namespace {

// Max error against the closed-form decay x0 * exp(-b t) over [0, 20] when
// the delayed term is switched off (a = 0). Pure RK4 territory, so halving
// the step must shrink this by about 2^4.
double decay_error(double dt) {
    MackeyGlassConfig cfg;
    cfg.a = 0.0;
    cfg.b = 0.1;
    cfg.x0 = 1.2;
    cfg.dt = dt;
    cfg.sample_every = static_cast<int>(std::lround(1.0 / dt));
    cfg.n_samples = 21;
    const Series s = mackey_glass(cfg);
    double worst = 0.0;
    for (int i = 0; i < 21; ++i) {
        worst = std::max(worst,
                         std::abs(s.values[i] - 1.2 * std::exp(-0.1 * i)));
    }
    return worst;
}

} // namespace

TEST_CASE("halving the step shrinks the closed-form decay error at fourth order") {
    const double e_coarse = decay_error(0.1);
    const double e_fine = decay_error(0.05);
    REQUIRE(e_fine > 0.0);
    const double factor = e_coarse / e_fine;
    CHECK(factor >= 12.0);
    CHECK(factor <= 20.0);
}

TEST_CASE("default chaotic configuration stays within [0, 2]") {
    const Series s = mackey_glass(MackeyGlassConfig{});
    REQUIRE(s.size() == 1500);
    for (double v : s.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 2.0);
    }
}

TEST_CASE("repeated integration is bitwise deterministic") {
    const Series a = mackey_glass(MackeyGlassConfig{});
    const Series b = mackey_glass(MackeyGlassConfig{});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.values[i] == b.values[i]);
    }
}

TEST_CASE("configuration validation") {
    MackeyGlassConfig cfg;
    cfg.tau = 0.05; // below dt = 0.1
    CHECK_THROWS_AS(mackey_glass(cfg), ConfigError);
    cfg.tau = 30.0;
    cfg.dt = 0.0;
    CHECK_THROWS_AS(mackey_glass(cfg), ConfigError);
    cfg.dt = 0.1;
    cfg.n_samples = 0;
    CHECK_THROWS_AS(mackey_glass(cfg), ConfigError);
    cfg.n_samples = 10;
    cfg.sample_every = 0;
    CHECK_THROWS_AS(mackey_glass(cfg), ConfigError);
}

TEST_CASE("zero delay reduces to an ordinary ODE") {
    // With tau = 0, dx/dt = a x/(1+x^10) - b x; x = 1 stays fixed for a = 2b.
    MackeyGlassConfig cfg;
    cfg.tau = 0.0;
    cfg.x0 = 1.0;
    cfg.n_samples = 50;
    const Series s = mackey_glass(cfg);
    for (double v : s.values) {
        CHECK(std::abs(v - 1.0) <= 1e-9);
    }
}

TEST_CASE("synthetic polynomial series with constant-only coefficients") {
    const MonomialBasis basis = enumerate_monomials(2, 1);
    Eigen::VectorXd a = Eigen::VectorXd::Zero(3);
    a(0) = 0.5;
    const Series s = synthetic_polynomial_series(a, basis, {0.1, 0.2}, 10);
    REQUIRE(s.size() == 10);
    CHECK(s.values[0] == 0.1);
    CHECK(s.values[1] == 0.2);
    for (std::size_t i = 2; i < s.size(); ++i) {
        CHECK(s.values[i] == 0.5);
    }
}

TEST_CASE("synthetic polynomial series reproduces an identity map") {
    // v(t+1) = v(t): coefficient 1 on the most-recent coordinate.
    const MonomialBasis basis = enumerate_monomials(2, 1);
    Eigen::VectorXd a = Eigen::VectorXd::Zero(3);
    a(1) = 1.0;
    const Series s = synthetic_polynomial_series(a, basis, {0.3, 0.7}, 8);
    for (std::size_t i = 2; i < s.size(); ++i) {
        CHECK(s.values[i] == 0.7);
    }
}

TEST_CASE("divergent polynomial map throws") {
    const MonomialBasis basis = enumerate_monomials(1, 2);
    Eigen::VectorXd a = Eigen::VectorXd::Zero(3);
    a(2) = 1.0; // v(t+1) = v(t)^2 from v = 3 diverges super-exponentially
    CHECK_THROWS_AS(synthetic_polynomial_series(a, basis, {3.0}, 50),
                    NumericalError);
}

TEST_CASE("polynomial seed size must match the embedding span") {
    const MonomialBasis basis = enumerate_monomials(3, 1);
    const Eigen::VectorXd a = Eigen::VectorXd::Zero(4);
    CHECK_THROWS_AS(synthetic_polynomial_series(a, basis, {0.1, 0.2}, 10),
                    DimensionError);
}

TEST_CASE("surrogate spike train is deterministic and well-formed") {
    const Series a = synthetic_ecg(5000, 250.0, 42);
    const Series b = synthetic_ecg(5000, 250.0, 42);
    const Series c = synthetic_ecg(5000, 250.0, 43);
    REQUIRE(a.size() == 5000);
    CHECK(a.dt == doctest::Approx(1.0 / 250.0));
    bool identical = true, differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        identical = identical && a.values[i] == b.values[i];
        differs = differs || a.values[i] != c.values[i];
    }
    CHECK(identical);
    CHECK(differs);
    // Spikes present: the peak-to-trough range dominates the noise floor.
    double lo = a.values[0], hi = a.values[0];
    for (double v : a.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi - lo > 0.5);
}

TEST_CASE("false-neighbor sweep on the default chaotic trajectory") {
    // Pins the observed behavior of the dimension estimator on this
    // generator's 1500-sample default output with default tolerances.
    const Series s = mackey_glass(MackeyGlassConfig{});
    const FnnResult r = fnn_dimension(s, 8);
    CHECK_FALSE(r.saturated);
    CHECK(r.dimension == 3);
}
