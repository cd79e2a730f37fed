#include "fimcast/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fimcast {

void EmbeddingConfig::validate() const {
    if (d < 1) {
        throw ConfigError("embedding dimension must be >= 1, got " + std::to_string(d));
    }
    if (lag < 1) {
        throw ConfigError("embedding lag must be >= 1, got " + std::to_string(lag));
    }
}

DelayMatrix delay_embed(const Series& series, const EmbeddingConfig& cfg) {
    cfg.validate();
    series.validate();

    const int n = static_cast<int>(series.size());
    const int first = (cfg.d - 1) * cfg.lag;
    if (n <= first) {
        throw DimensionError("series of length " + std::to_string(n) +
                             " too short for d=" + std::to_string(cfg.d) +
                             ", lag=" + std::to_string(cfg.lag) +
                             "; need at least " + std::to_string(first + 1) +
                             " samples");
    }

    DelayMatrix out;
    out.config = cfg;
    out.rows.resize(n - first, cfg.d);
    out.base_indices.resize(n - first);
    for (int r = 0; r < n - first; ++r) {
        const int base = first + r;
        out.base_indices[r] = base;
        for (int i = 0; i < cfg.d; ++i) {
            out.rows(r, i) = series.values[base - i * cfg.lag];
        }
    }
    return out;
}

namespace {

// Exact nearest neighbor among the given delay rows in the first d
// coordinates, excluding the query point itself.
int nearest_neighbor(const Eigen::MatrixXd& rows, int d, int query) {
    double best = std::numeric_limits<double>::infinity();
    int best_idx = -1;
    for (int m = 0; m < rows.rows(); ++m) {
        if (m == query) continue;
        const double dist2 = (rows.row(m).head(d) - rows.row(query).head(d)).squaredNorm();
        if (dist2 < best) {
            best = dist2;
            best_idx = m;
        }
    }
    return best_idx;
}

} // namespace

FnnResult fnn_dimension(const Series& series, int d_max, int lag, double r_tol,
                        double a_tol, double fnn_threshold) {
    series.validate();
    if (d_max < 2) {
        throw ConfigError("fnn_dimension requires d_max >= 2");
    }
    const int n = static_cast<int>(series.size());
    // Testing dimension d needs the (d+1)-th delay coordinate, so the whole
    // sweep works on the points embeddable at d_max + 1.
    if (n <= d_max * lag) {
        throw DimensionError("series of length " + std::to_string(n) +
                             " too short for FNN sweep to d_max=" + std::to_string(d_max) +
                             ", lag=" + std::to_string(lag) + "; need at least " +
                             std::to_string(d_max * lag + 1) + " samples");
    }

    const double mean = std::accumulate(series.values.begin(), series.values.end(), 0.0) /
                        static_cast<double>(n);
    double var = 0.0;
    for (double v : series.values) var += (v - mean) * (v - mean);
    const double attractor_size = std::sqrt(var / static_cast<double>(n));

    FnnResult result;
    result.fractions.resize(d_max, 1.0);
    result.dimension = d_max;
    result.saturated = true;

    for (int d = 1; d <= d_max; ++d) {
        // Embed at d + 1 so every point carries the extra coordinate the
        // false-neighbor test inspects.
        const DelayMatrix emb = delay_embed(series, EmbeddingConfig{d + 1, lag});
        const int m_rows = static_cast<int>(emb.rows.rows());
        int false_count = 0;
        int total = 0;
        for (int q = 0; q < m_rows; ++q) {
            const int nn = nearest_neighbor(emb.rows, d, q);
            if (nn < 0) continue;
            const double r_d = (emb.rows.row(nn).head(d) - emb.rows.row(q).head(d)).norm();
            const double extra = std::abs(emb.rows(q, d) - emb.rows(nn, d));
            bool is_false = false;
            if (r_d > 0.0 && extra / r_d > r_tol) is_false = true;
            if (attractor_size > 0.0 &&
                std::sqrt(r_d * r_d + extra * extra) / attractor_size > a_tol) {
                is_false = true;
            }
            ++total;
            if (is_false) ++false_count;
        }
        const double fraction =
            total > 0 ? static_cast<double>(false_count) / static_cast<double>(total) : 0.0;
        result.fractions[d - 1] = fraction;
        if (result.saturated && fraction < fnn_threshold) {
            result.dimension = d;
            result.saturated = false;
            // Fractions for larger d are still filled in for reporting.
        }
    }
    return result;
}

} // namespace fimcast
