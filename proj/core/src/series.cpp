#include "fimcast/series.hpp"

#include <cmath>

namespace fimcast {

void Series::validate() const {
    if (values.empty()) {
        throw DataError("series '" + name + "' is empty");
    }
    if (!(dt > 0.0)) {
        throw DataError("series '" + name + "' has non-positive dt");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw DataError("series '" + name + "' has non-finite sample at index " +
                            std::to_string(i));
        }
    }
}

} // namespace fimcast
