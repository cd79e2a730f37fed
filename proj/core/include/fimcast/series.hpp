#ifndef FIMCAST_SERIES_HPP
#define FIMCAST_SERIES_HPP

#include <string>
#include <vector>

#include "fimcast/errors.hpp"

namespace fimcast {

/// A uniformly sampled scalar signal. Indices are 0-based throughout the
/// library; sample n sits at time n * dt seconds.
struct Series {
    std::vector<double> values;
    double dt = 1.0;
    std::string name;

    std::size_t size() const { return values.size(); }

    /// Throws DataError if empty, dt <= 0, or any sample is non-finite.
    void validate() const;
};

} // namespace fimcast

#endif
