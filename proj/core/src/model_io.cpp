#include "fimcast/model_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace fimcast {

namespace {

constexpr const char* kSchemaTag = "fimcast-model v1";

std::string full_precision(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

double parse_double_or_throw(const std::string& text, const std::string& what) {
    try {
        return std::stod(text);
    } catch (const std::exception&) {
        throw DataError("model file: cannot parse " + what + " from '" + text + "'");
    }
}

} // namespace

void save_model(const FittedModel& model, const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");

    out << kSchemaTag << "\n";
    out << "d = " << model.embedding.d << "\n";
    out << "lag = " << model.embedding.lag << "\n";
    out << "np = " << model.basis.np << "\n";
    out << "T = " << model.T << "\n";
    out << "n_coefficients = " << model.a_mean.size() << "\n";
    out << "rank = " << model.rank << "\n";
    out << "svd_tol = " << full_precision(model.svd_tol) << "\n";
    out << "sigma2 = " << full_precision(model.sigma2) << "\n";
    out << "sigma_max = " << full_precision(model.sigma_max) << "\n";
    out << "sigma_min = " << full_precision(model.sigma_min) << "\n";
    out << "standardize = " << (model.standardized ? 1 : 0) << "\n";
    if (model.standardized) {
        out << "coord_mean =";
        for (Eigen::Index i = 0; i < model.coord_mean.size(); ++i)
            out << ' ' << full_precision(model.coord_mean(i));
        out << "\n";
        out << "coord_sd =";
        for (Eigen::Index i = 0; i < model.coord_sd.size(); ++i)
            out << ' ' << full_precision(model.coord_sd(i));
        out << "\n";
    }
    out << "coefficients:\n";
    for (Eigen::Index i = 0; i < model.a_mean.size(); ++i) {
        out << full_precision(model.a_mean(i)) << "\n";
    }
    if (!out) throw DataError("write failed for " + path.string());
}

FittedModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model file " + path.string());

    std::string line;
    if (!std::getline(in, line) || line != kSchemaTag) {
        throw DataError("model file " + path.string() + " has an unrecognized schema tag");
    }

    std::map<std::string, std::string> fields;
    while (std::getline(in, line)) {
        if (line == "coefficients:") break;
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) {
            throw DataError("model file " + path.string() + ": malformed line '" + line + "'");
        }
        fields[line.substr(0, eq)] = line.substr(eq + 3);
    }

    auto get = [&](const std::string& key) -> const std::string& {
        const auto it = fields.find(key);
        if (it == fields.end()) {
            throw DataError("model file " + path.string() + ": missing field '" + key + "'");
        }
        return it->second;
    };

    FittedModel model;
    model.embedding.d = std::stoi(get("d"));
    model.embedding.lag = std::stoi(get("lag"));
    model.basis = enumerate_monomials(model.embedding.d, std::stoi(get("np")));
    model.T = std::stoi(get("T"));
    model.rank = std::stoi(get("rank"));
    model.svd_tol = parse_double_or_throw(get("svd_tol"), "svd_tol");
    model.sigma2 = parse_double_or_throw(get("sigma2"), "sigma2");
    model.sigma_max = parse_double_or_throw(get("sigma_max"), "sigma_max");
    model.sigma_min = parse_double_or_throw(get("sigma_min"), "sigma_min");
    model.standardized = std::stoi(get("standardize")) != 0;

    auto parse_vector = [&](const std::string& text) {
        std::stringstream ss(text);
        std::vector<double> values;
        double v;
        while (ss >> v) values.push_back(v);
        return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                 static_cast<Eigen::Index>(values.size()))
            .eval();
    };
    if (model.standardized) {
        model.coord_mean = parse_vector(get("coord_mean"));
        model.coord_sd = parse_vector(get("coord_sd"));
        if (model.coord_mean.size() != model.embedding.d ||
            model.coord_sd.size() != model.embedding.d) {
            throw DataError("model file " + path.string() +
                            ": standardization vectors have the wrong length");
        }
    }

    const int n_coefficients = std::stoi(get("n_coefficients"));
    if (n_coefficients != static_cast<int>(model.basis.terms.size())) {
        throw DataError("model file " + path.string() + ": n_coefficients " +
                        std::to_string(n_coefficients) + " does not match basis size " +
                        std::to_string(model.basis.terms.size()));
    }
    model.a_mean.resize(n_coefficients);
    for (int i = 0; i < n_coefficients; ++i) {
        if (!std::getline(in, line)) {
            throw DataError("model file " + path.string() + ": truncated coefficient list");
        }
        model.a_mean(i) = parse_double_or_throw(line, "coefficient " + std::to_string(i));
    }
    return model;
}

} // namespace fimcast
