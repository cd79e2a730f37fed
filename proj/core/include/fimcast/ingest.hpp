#ifndef FIMCAST_INGEST_HPP
#define FIMCAST_INGEST_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "fimcast/forecast.hpp"
#include "fimcast/series.hpp"

namespace fimcast {

/// Description of a delimited-text signal file. Values use a decimal point
/// only; the column delimiter (comma or whitespace) is auto-detected. An
/// optional header comment `# rate_hz=<value>` supplies the sampling rate;
/// an explicit rate override always wins (with a notice).
struct SignalFile {
    std::filesystem::path path;
    std::optional<double> rate_hz_override;
    std::optional<int> channel; // 0-based column; default: last column
};

/// Loads a series from a single-column or time-value text export.
/// Throws DataError on parse failures (naming the line), missing sampling
/// rate, or empty files.
Series load_series(const SignalFile& file);

/// Writes a series as delimited text with a `# rate_hz=` header.
void write_series(const Series& series, const std::filesystem::path& path,
                  int precision = 9);

/// Writes predictions as `index,time_s,truth,predicted,sq_error` rows, one
/// per prediction plus a header. Throws DataError on I/O failure.
void write_result(const ForecastResult& result, double dt,
                  const std::filesystem::path& path, int precision = 9);

/// Writes a key = value summary file (keys in insertion order).
void write_summary(const std::vector<std::pair<std::string, std::string>>& entries,
                   const std::filesystem::path& path);

} // namespace fimcast

#endif
