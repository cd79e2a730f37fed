#include "fimcast/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fimcast {

namespace {

std::vector<std::string> split_fields(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    if (delimiter == ',') {
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
    } else {
        std::stringstream ss(line);
        std::string field;
        while (ss >> field) fields.push_back(field);
    }
    return fields;
}

double parse_double(const std::string& text, std::size_t line_no) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t' || *(end - 1) == '\r'))
        --end;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw DataError("cannot parse number '" + text + "' at line " +
                        std::to_string(line_no));
    }
    return value;
}

} // namespace

Series load_series(const SignalFile& file) {
    std::ifstream in(file.path);
    if (!in) {
        throw DataError("cannot open signal file " + file.path.string());
    }

    std::optional<double> header_rate;
    Series out;
    out.name = file.path.stem().string();

    std::string line;
    std::size_t line_no = 0;
    char delimiter = '\0'; // detected from the first data line
    int n_columns = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto pos = line.find("rate_hz=");
            if (pos != std::string::npos) {
                header_rate = parse_double(line.substr(pos + 8), line_no);
            }
            continue;
        }
        if (delimiter == '\0') {
            delimiter = line.find(',') != std::string::npos ? ',' : ' ';
        }
        const auto fields = split_fields(line, delimiter);
        if (fields.empty()) continue;
        if (n_columns == 0) {
            n_columns = static_cast<int>(fields.size());
        } else if (static_cast<int>(fields.size()) != n_columns) {
            throw DataError("inconsistent column count at line " +
                            std::to_string(line_no) + " of " + file.path.string());
        }
        int column = file.channel.value_or(n_columns - 1);
        if (column < 0 || column >= n_columns) {
            throw DataError("channel " + std::to_string(column) +
                            " out of range for " + std::to_string(n_columns) +
                            "-column file " + file.path.string());
        }
        const double value = parse_double(fields[static_cast<std::size_t>(column)], line_no);
        if (!std::isfinite(value)) {
            throw DataError("non-finite sample at line " + std::to_string(line_no) +
                            " of " + file.path.string());
        }
        out.values.push_back(value);
    }

    if (out.values.empty()) {
        throw DataError("signal file " + file.path.string() + " contains no samples");
    }

    double rate = 0.0;
    if (file.rate_hz_override) {
        rate = *file.rate_hz_override;
        if (header_rate && *header_rate != rate) {
            std::cerr << "note: overriding header rate_hz=" << *header_rate
                      << " with " << rate << " for " << file.path.string() << "\n";
        }
    } else if (header_rate) {
        rate = *header_rate;
    } else {
        throw DataError("no sampling rate for " + file.path.string() +
                        ": add a '# rate_hz=<value>' header or pass an override");
    }
    if (!(rate > 0.0)) {
        throw DataError("sampling rate must be positive, got " + std::to_string(rate));
    }
    out.dt = 1.0 / rate;
    return out;
}

namespace {

std::string format_double(double value, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    return out;
}

} // namespace

void write_series(const Series& series, const std::filesystem::path& path,
                  int precision) {
    auto out = open_output(path);
    out << "# rate_hz=" << format_double(1.0 / series.dt, 17) << "\n";
    for (double v : series.values) {
        out << format_double(v, precision) << "\n";
    }
    if (!out) throw DataError("write failed for " + path.string());
}

void write_result(const ForecastResult& result, double dt,
                  const std::filesystem::path& path, int precision) {
    auto out = open_output(path);
    out << "index,time_s,truth,predicted,sq_error\n";
    for (int j = 0; j < result.m_p; ++j) {
        const int idx = result.first_target_index + j;
        out << idx << ',' << format_double(idx * dt, precision) << ','
            << format_double(result.aligned_truth(j), precision) << ','
            << format_double(result.predicted(j), precision) << ','
            << format_double(result.pointwise_sq_error(j), precision) << "\n";
    }
    if (!out) throw DataError("write failed for " + path.string());
}

void write_summary(const std::vector<std::pair<std::string, std::string>>& entries,
                   const std::filesystem::path& path) {
    auto out = open_output(path);
    for (const auto& [key, value] : entries) {
        out << key << " = " << value << "\n";
    }
    if (!out) throw DataError("write failed for " + path.string());
}

} // namespace fimcast
