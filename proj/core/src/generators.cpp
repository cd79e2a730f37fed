#include "fimcast/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace fimcast {

void MackeyGlassConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("mackey_glass dt must be positive");
    if (tau < 0.0) throw ConfigError("mackey_glass tau must be >= 0");
    if (n_samples < 1) throw ConfigError("mackey_glass n_samples must be >= 1");
    if (sample_every < 1) throw ConfigError("mackey_glass sample_every must be >= 1");
}

namespace {

// Fixed-capacity history of the last `capacity` integration states, addressed
// by absolute step index. Steps at or before zero read the constant initial
// history; fractional steps are linearly interpolated.
class RingHistory {
public:
    RingHistory(int capacity, double initial)
        : buffer_(static_cast<std::size_t>(capacity), initial),
          initial_(initial) {}

    void push(int step, double value) {
        buffer_[static_cast<std::size_t>(step) % buffer_.size()] = value;
    }

    double at_step(double step) const {
        if (step <= 0.0) return initial_;
        const double floor_step = std::floor(step);
        const int lo = static_cast<int>(floor_step);
        const double frac = step - floor_step;
        const double v_lo = value_at(lo);
        if (frac == 0.0) return v_lo;
        return v_lo + frac * (value_at(lo + 1) - v_lo);
    }

private:
    double value_at(int step) const {
        if (step <= 0) return initial_;
        return buffer_[static_cast<std::size_t>(step) % buffer_.size()];
    }

    std::vector<double> buffer_;
    double initial_;
};

double mg_rhs(double a, double b, double x, double x_delayed) {
    const double p = std::pow(x_delayed, 10);
    return a * x_delayed / (1.0 + p) - b * x;
}

} // namespace

Series mackey_glass(const MackeyGlassConfig& cfg) {
    cfg.validate();

    // Delay expressed in integration steps; the config invariant keeps the
    // rounding error below dt/2. A delay shorter than one step cannot be
    // resolved by the history buffer.
    if (cfg.tau > 0.0 && cfg.tau < cfg.dt) {
        throw ConfigError("mackey_glass tau must be 0 or >= dt");
    }
    const double delay_steps = cfg.tau / cfg.dt;
    const bool undelayed = cfg.tau == 0.0;

    const int total_steps = (cfg.n_samples - 1) * cfg.sample_every;
    const int history_capacity =
        std::max(static_cast<int>(std::ceil(delay_steps)) + 2, 4);
    RingHistory history(history_capacity, cfg.x0);
    history.push(0, cfg.x0);

    Series out;
    out.name = "mackey-glass";
    out.dt = cfg.dt * cfg.sample_every;
    out.values.reserve(static_cast<std::size_t>(cfg.n_samples));
    out.values.push_back(cfg.x0);

    double x = cfg.x0;
    for (int step = 0; step < total_steps; ++step) {
        // Delayed values at t - tau, t + dt/2 - tau, t + dt - tau all lie in
        // the stored history because tau >= dt.
        double k1, k2, k3, k4;
        if (undelayed) {
            // tau = 0: the "delayed" argument is the current substep state.
            const double y1 = x;
            k1 = mg_rhs(cfg.a, cfg.b, y1, y1);
            const double y2 = x + 0.5 * cfg.dt * k1;
            k2 = mg_rhs(cfg.a, cfg.b, y2, y2);
            const double y3 = x + 0.5 * cfg.dt * k2;
            k3 = mg_rhs(cfg.a, cfg.b, y3, y3);
            const double y4 = x + cfg.dt * k3;
            k4 = mg_rhs(cfg.a, cfg.b, y4, y4);
        } else {
            const double xd0 = history.at_step(step - delay_steps);
            const double xd_half = history.at_step(step + 0.5 - delay_steps);
            const double xd1 = history.at_step(step + 1.0 - delay_steps);
            k1 = mg_rhs(cfg.a, cfg.b, x, xd0);
            k2 = mg_rhs(cfg.a, cfg.b, x + 0.5 * cfg.dt * k1, xd_half);
            k3 = mg_rhs(cfg.a, cfg.b, x + 0.5 * cfg.dt * k2, xd_half);
            k4 = mg_rhs(cfg.a, cfg.b, x + cfg.dt * k3, xd1);
        }
        x += cfg.dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (!std::isfinite(x)) {
            throw NumericalError("mackey_glass state went non-finite at step " +
                                 std::to_string(step + 1));
        }
        history.push(step + 1, x);
        if ((step + 1) % cfg.sample_every == 0) {
            out.values.push_back(x);
        }
    }
    return out;
}

Series synthetic_polynomial_series(const Eigen::VectorXd& a_true,
                                   const MonomialBasis& basis,
                                   const std::vector<double>& seed_values,
                                   int n, int lag, double dt) {
    if (a_true.size() != static_cast<Eigen::Index>(basis.terms.size())) {
        throw DimensionError("coefficient vector length " + std::to_string(a_true.size()) +
                             " does not match basis size " +
                             std::to_string(basis.terms.size()));
    }
    const int min_seed = (basis.d - 1) * lag + 1;
    if (static_cast<int>(seed_values.size()) < min_seed) {
        throw DimensionError("seed needs at least " + std::to_string(min_seed) +
                             " values for d=" + std::to_string(basis.d) +
                             ", lag=" + std::to_string(lag));
    }
    if (n < static_cast<int>(seed_values.size())) {
        throw ConfigError("requested length shorter than the seed");
    }

    Series out;
    out.name = "synthetic-polynomial";
    out.dt = dt;
    out.values = seed_values;
    out.values.reserve(static_cast<std::size_t>(n));
    Eigen::RowVectorXd delay_vec(basis.d);
    while (static_cast<int>(out.values.size()) < n) {
        const int base = static_cast<int>(out.values.size()) - 1;
        for (int i = 0; i < basis.d; ++i) delay_vec(i) = out.values[base - i * lag];
        const double next = expand_row(basis, delay_vec).dot(a_true);
        if (!std::isfinite(next) || std::abs(next) > 1e12) {
            throw NumericalError("synthetic polynomial series diverged at index " +
                                 std::to_string(base + 1));
        }
        out.values.push_back(next);
    }
    return out;
}

Series synthetic_ecg(int n_samples, double rate_hz, std::uint64_t seed) {
    if (n_samples < 1) throw ConfigError("synthetic_ecg n_samples must be >= 1");
    if (!(rate_hz > 0.0)) throw ConfigError("synthetic_ecg rate must be positive");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 0.02);

    Series out;
    out.name = "synthetic-ecg";
    out.dt = 1.0 / rate_hz;
    out.values.resize(static_cast<std::size_t>(n_samples));

    const double beat_period = 0.8; // seconds between spikes
    for (int i = 0; i < n_samples; ++i) {
        const double t = i * out.dt;
        const double phase = std::fmod(t, beat_period);
        // Sharp positive peak followed by a shallow recovery dip.
        const double peak = std::exp(-std::pow((phase - 0.2) / 0.012, 2));
        const double dip = -0.25 * std::exp(-std::pow((phase - 0.28) / 0.03, 2));
        const double baseline = 0.05 * std::sin(2.0 * std::numbers::pi * t / 3.7);
        out.values[static_cast<std::size_t>(i)] =
            peak + dip + baseline + noise(rng);
    }
    return out;
}

} // namespace fimcast
