#ifndef FIMCAST_MODEL_IO_HPP
#define FIMCAST_MODEL_IO_HPP

#include <filesystem>

#include "fimcast/inference.hpp"

namespace fimcast {

/// Persists a fitted model as human-readable structured text. The format is
/// versioned with a schema tag (`fimcast-model v1`) so files survive tool
/// upgrades. Coefficients are written with enough digits to round-trip
/// 64-bit floats exactly.
void save_model(const FittedModel& model, const std::filesystem::path& path);

/// Loads a model saved by save_model. Throws DataError on schema or parse
/// problems.
FittedModel load_model(const std::filesystem::path& path);

} // namespace fimcast

#endif
