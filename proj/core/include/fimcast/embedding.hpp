#ifndef FIMCAST_EMBEDDING_HPP
#define FIMCAST_EMBEDDING_HPP

#include <Eigen/Dense>
#include <vector>

#include "fimcast/series.hpp"

namespace fimcast {

/// Time-delay embedding parameters. A delay vector at base index n is
/// [v(n), v(n - lag), ..., v(n - (d-1)*lag)], most recent value first.
struct EmbeddingConfig {
    int d = 1;   // embedding dimension, >= 1
    int lag = 1; // delay in samples, >= 1

    void validate() const;

    /// Smallest series length this configuration can embed.
    int min_series_length() const { return (d - 1) * lag + 1; }
};

/// Delay vectors of a series, one per valid base index. Row r corresponds to
/// base index base_indices[r] and component i holds v(base - i*lag).
struct DelayMatrix {
    Eigen::MatrixXd rows;          // (N - (d-1)*lag) x d
    std::vector<int> base_indices; // ascending, starts at (d-1)*lag
    EmbeddingConfig config;
};

/// Embeds a scalar series into d-dimensional delay vectors.
/// Throws DimensionError if the series is shorter than (d-1)*lag + 1.
DelayMatrix delay_embed(const Series& series, const EmbeddingConfig& cfg);

/// Outcome of false-nearest-neighbor dimension estimation.
struct FnnResult {
    int dimension = 0;             // selected embedding dimension
    bool saturated = false;        // no d <= d_max fell below the threshold
    std::vector<double> fractions; // false-neighbor fraction per d = 1..d_max
};

/// Kennel-style false-nearest-neighbor estimate of the embedding dimension.
/// Tests d = 1..d_max with exact (direct-search) nearest neighbors and
/// returns the smallest d whose false-neighbor fraction drops below
/// fnn_threshold; if none does, returns d_max with the saturation flag set.
/// Testing dimension d inspects the (d+1)-th delay coordinate, so the series
/// must be longer than d_max * lag samples.
FnnResult fnn_dimension(const Series& series, int d_max, int lag = 1,
                        double r_tol = 15.0, double a_tol = 2.0,
                        double fnn_threshold = 0.01);

} // namespace fimcast

#endif
