// Command-line front end: generate benchmark signals, fit the polynomial
// pseudo-inverse model, predict, and run the bundled end-to-end recipes.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "fimcast/design.hpp"
#include "fimcast/embedding.hpp"
#include "fimcast/forecast.hpp"
#include "fimcast/generators.hpp"
#include "fimcast/inference.hpp"
#include "fimcast/ingest.hpp"
#include "fimcast/model_io.hpp"

namespace fs = std::filesystem;
using namespace fimcast;

namespace {

// Exit codes: 0 success, 2 usage, 3 data, 4 dimension, 5 numerical, 6 config.
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitDimension = 4;
constexpr int kExitNumerical = 5;
constexpr int kExitConfig = 6;

fs::path default_out_dir() {
    if (const char* env = std::getenv("FIMCAST_OUT_DIR")) return fs::path(env);
    return fs::current_path();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct FitOptions {
    std::string d_spec = "auto"; // integer or "auto" (FNN selection)
    int d_max = 10;
    int lag = 1;
    int np = 3;
    int M = 0;
    int T = 1;
    double svd_tol = 0.0;
    bool standardize = false;
    double fim_eps = 0.0; // 0: default 1e-9 * max |target|
    double fim_c = 1.0;
};

struct FitOutcome {
    FittedModel model;
    DesignMatrix dm;
    int selected_d = 0;
    bool fnn_saturated = false;
    bool fnn_used = false;
};

FitOutcome run_fit(const Series& series, const FitOptions& opt,
                   std::vector<std::pair<std::string, std::string>>& report) {
    FitOutcome out;
    if (opt.d_spec == "auto") {
        const FnnResult fnn = fnn_dimension(series, opt.d_max, opt.lag);
        out.selected_d = fnn.dimension;
        out.fnn_saturated = fnn.saturated;
        out.fnn_used = true;
    } else {
        out.selected_d = std::stoi(opt.d_spec);
    }

    const EmbeddingConfig emb{out.selected_d, opt.lag};
    const MonomialBasis basis = enumerate_monomials(out.selected_d, opt.np);
    const DelayMatrix delays = delay_embed(series, emb);
    out.dm = build_design_matrix(delays, series, opt.T, opt.M, basis, opt.standardize);
    out.model = fit_coefficients(out.dm, opt.svd_tol);
    out.model.embedding = emb;
    out.model.T = opt.T;

    const double eps =
        opt.fim_eps > 0.0 ? opt.fim_eps : empirical_fim_default_eps(out.dm.targets);
    const Eigen::VectorXd c_weights =
        Eigen::VectorXd::Constant(out.dm.targets.size(), opt.fim_c);
    const EmpiricalFim efim = empirical_fim(out.dm.targets, c_weights, eps);

    report.emplace_back("input", series.name);
    report.emplace_back("n_samples", std::to_string(series.size()));
    report.emplace_back("dt_s", fmt(series.dt));
    report.emplace_back("d", std::to_string(out.selected_d));
    report.emplace_back("d_selection", out.fnn_used ? "fnn" : "explicit");
    if (out.fnn_used) {
        report.emplace_back("fnn_saturated", out.fnn_saturated ? "1" : "0");
    }
    report.emplace_back("lag", std::to_string(opt.lag));
    report.emplace_back("np", std::to_string(opt.np));
    report.emplace_back("M", std::to_string(opt.M));
    report.emplace_back("T", std::to_string(opt.T));
    report.emplace_back("n_coefficients", std::to_string(out.model.a_mean.size()));
    report.emplace_back("rank", std::to_string(out.model.rank));
    report.emplace_back("svd_tol", fmt(out.model.svd_tol));
    report.emplace_back("sigma2", fmt(out.model.sigma2));
    report.emplace_back("sigma_max", fmt(out.model.sigma_max));
    report.emplace_back("sigma_min", fmt(out.model.sigma_min));
    const double cond = out.model.sigma_min > 0.0
                            ? (out.model.sigma_max / out.model.sigma_min) *
                                  (out.model.sigma_max / out.model.sigma_min)
                            : std::numeric_limits<double>::infinity();
    report.emplace_back("fim_condition_number", fmt(cond));
    report.emplace_back("standardize", opt.standardize ? "1" : "0");
    report.emplace_back("empirical_fim", fmt(efim.value));
    report.emplace_back("empirical_fim_eps", fmt(eps));
    report.emplace_back("empirical_fim_c", fmt(opt.fim_c));
    report.emplace_back("empirical_fim_guard_count", std::to_string(efim.guard_count));
    return out;
}

struct PredictOptions {
    std::optional<int> m_p;
    ForecastMode mode = ForecastMode::Direct;
    std::optional<int> window;
    int precision = 9;
};

void run_predict(const Series& series, const FittedModel& model,
                 const PredictOptions& opt, const fs::path& prefix,
                 std::vector<std::pair<std::string, std::string>>& summary) {
    ForecastConfig fc;
    fc.T = model.T;
    fc.mode = opt.mode;
    fc.m_p = opt.m_p;
    const ForecastResult result = predict(series, model, fc);

    // Default rolling window: one second of samples.
    int window = opt.window.value_or(
        std::max(1, static_cast<int>(std::lround(1.0 / series.dt))));
    window = std::min(window, result.m_p);

    const fs::path pred_path = prefix.string() + "_predictions.csv";
    const fs::path mse_path = prefix.string() + "_rolling_mse.csv";
    write_result(result, series.dt, pred_path, opt.precision);

    const Eigen::VectorXd trace =
        rolling_mse(result.aligned_truth, result.predicted, window);
    {
        std::ofstream out(mse_path);
        if (!out) throw DataError("cannot open " + mse_path.string() + " for writing");
        out << "index,time_s,rolling_mse\n";
        for (Eigen::Index j = 0; j < trace.size(); ++j) {
            const int idx = result.first_target_index + static_cast<int>(j);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.*g", opt.precision, trace(j));
            out << idx << ',' << idx * series.dt << ',' << buf << "\n";
        }
    }

    summary.emplace_back("mode",
                         opt.mode == ForecastMode::Direct ? "direct" : "iterated");
    summary.emplace_back("m_p", std::to_string(result.m_p_requested));
    summary.emplace_back("m_p_aligned", std::to_string(result.m_p));
    summary.emplace_back("first_target_index",
                         std::to_string(result.first_target_index));
    summary.emplace_back("mse", fmt(result.mse));
    summary.emplace_back("rolling_window", std::to_string(window));
    summary.emplace_back("predictions_file", pred_path.string());
    summary.emplace_back("rolling_mse_file", mse_path.string());
}

Series load_input(const std::string& path, std::optional<double> rate,
                  std::optional<int> channel) {
    SignalFile file;
    file.path = path;
    file.rate_hz_override = rate;
    file.channel = channel;
    return load_series(file);
}

// ---------------------------------------------------------------------------
// reproduce recipes

struct Recipe {
    std::string name;
    bool generated = false;   // Mackey-Glass recipes synthesize their input
    double default_rate = 0.0; // for file-based recipes
    int d = 0;
    int np = 3;
    int T = 1;
    // Training size scales with the input length so the recipe also runs on
    // surrogates; on the reference exports it reproduces the exact M.
    double m_fraction = 0.0;
    int m_fixed = 0; // for generated recipes
};

std::optional<Recipe> find_recipe(const std::string& name) {
    static const std::vector<Recipe> recipes = {
        {"mg-t1", true, 0.0, 5, 3, 1, 0.0, 300},
        {"mg-t5", true, 0.0, 5, 3, 5, 0.0, 300},
        {"mit207-t1", false, 360.0, 4, 3, 1, 18000.0 / 108000.0, 0},
        {"mit207-t5", false, 360.0, 4, 3, 5, 18000.0 / 108000.0, 0},
        {"cu02-t1", false, 250.0, 4, 3, 1, 30000.0 / 127232.0, 0},
        {"cu02-t5", false, 250.0, 4, 3, 5, 30000.0 / 127232.0, 0},
    };
    for (const auto& r : recipes) {
        if (r.name == name) return r;
    }
    return std::nullopt;
}

int run_reproduce(const std::string& name, const std::string& input,
                  std::optional<double> rate, std::optional<int> channel,
                  const fs::path& out_dir) {
    const auto recipe = find_recipe(name);
    if (!recipe) {
        std::cerr << "unknown recipe '" << name
                  << "' (expected one of mg-t1, mg-t5, mit207-t1, mit207-t5, "
                     "cu02-t1, cu02-t5)\n";
        return kExitUsage;
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);

    Series series;
    if (recipe->generated) {
        MackeyGlassConfig cfg;
        cfg.a = 0.2;
        cfg.b = 0.1;
        cfg.tau = 30.0;
        cfg.x0 = 1.2;
        cfg.dt = 0.1;
        cfg.sample_every = 10;
        cfg.n_samples = 1500;
        series = mackey_glass(cfg);
        write_series(series, out_dir / (name + "_series.csv"), 17);
    } else {
        if (input.empty()) {
            std::cerr << "recipe '" << name
                      << "' needs a delimited-text signal export; pass it with "
                         "--input <file> (e.g. --input "
                      << (name.substr(0, 3) == "mit" ? "mit207_mlii.csv" : "cu02.csv")
                      << ")\n";
            return kExitData;
        }
        series = load_input(input, rate ? rate : std::optional<double>(recipe->default_rate),
                            channel);
    }

    FitOptions fit_opt;
    fit_opt.d_spec = std::to_string(recipe->d);
    fit_opt.np = recipe->np;
    fit_opt.T = recipe->T;
    fit_opt.M = recipe->generated
                    ? recipe->m_fixed
                    : static_cast<int>(std::lround(recipe->m_fraction *
                                                   static_cast<double>(series.size())));

    std::vector<std::pair<std::string, std::string>> summary;
    summary.emplace_back("recipe", name);
    const FitOutcome fit = run_fit(series, fit_opt, summary);
    save_model(fit.model, out_dir / (name + "_model.txt"));

    PredictOptions pred_opt;
    run_predict(series, fit.model, pred_opt, out_dir / name, summary);
    write_summary(summary, out_dir / (name + "_summary.txt"));
    std::cout << "recipe " << name << " complete; outputs under " << out_dir.string()
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial pseudo-inverse time-series forecasting toolkit"};
    app.require_subcommand(1);

    // generate ---------------------------------------------------------------
    auto* generate = app.add_subcommand("generate", "Synthesize a benchmark signal");
    generate->require_subcommand(1);

    MackeyGlassConfig mg_cfg;
    std::string mg_out;
    auto* gen_mg = generate->add_subcommand("mackey-glass",
                                            "Mackey-Glass DDE trajectory (RK4)");
    gen_mg->add_option("--a", mg_cfg.a, "Feedback gain")->capture_default_str();
    gen_mg->add_option("--b", mg_cfg.b, "Decay rate")->capture_default_str();
    gen_mg->add_option("--tau", mg_cfg.tau, "Delay in seconds")->capture_default_str();
    gen_mg->add_option("--x0", mg_cfg.x0, "Constant history value")->capture_default_str();
    gen_mg->add_option("--dt", mg_cfg.dt, "Integration step")->capture_default_str();
    gen_mg->add_option("--sample-every", mg_cfg.sample_every, "Output decimation")
        ->capture_default_str();
    gen_mg->add_option("--n", mg_cfg.n_samples, "Output sample count")->required();
    gen_mg->add_option("--out", mg_out, "Output file")->required();

    int ecg_n = 10000;
    double ecg_rate = 360.0;
    std::uint64_t ecg_seed = 1;
    std::string ecg_out;
    auto* gen_ecg = generate->add_subcommand("synthetic-ecg",
                                             "ECG-like surrogate (spikes + noise)");
    gen_ecg->add_option("--n", ecg_n, "Sample count")->capture_default_str();
    gen_ecg->add_option("--rate", ecg_rate, "Sampling rate in Hz")->capture_default_str();
    gen_ecg->add_option("--seed", ecg_seed, "RNG seed")->capture_default_str();
    gen_ecg->add_option("--out", ecg_out, "Output file")->required();

    // fit ---------------------------------------------------------------------
    auto* fit_cmd = app.add_subcommand("fit", "Modeling phase: estimate coefficients");
    std::string fit_input, fit_model_out, fit_report_out;
    std::optional<double> fit_rate;
    std::optional<int> fit_channel;
    FitOptions fit_opt;
    fit_cmd->add_option("--input", fit_input, "Signal file")->required();
    fit_cmd->add_option("--rate", fit_rate, "Sampling rate override (Hz)");
    fit_cmd->add_option("--channel", fit_channel, "0-based column selector");
    fit_cmd->add_option("--d", fit_opt.d_spec,
                        "Embedding dimension (integer or 'auto' for FNN)")
        ->capture_default_str();
    fit_cmd->add_option("--d-max", fit_opt.d_max, "FNN sweep limit for --d auto")
        ->capture_default_str();
    fit_cmd->add_option("--lag", fit_opt.lag, "Delay in samples")->capture_default_str();
    fit_cmd->add_option("--np", fit_opt.np, "Polynomial degree")->capture_default_str();
    fit_cmd->add_option("--M", fit_opt.M, "Training pairs")->required();
    fit_cmd->add_option("--T", fit_opt.T, "Forecast horizon in samples")
        ->capture_default_str();
    fit_cmd->add_option("--svd-tol", fit_opt.svd_tol,
                        "Relative singular-value cutoff (0 = default)")
        ->capture_default_str();
    fit_cmd->add_flag("--standardize", fit_opt.standardize,
                      "Z-score delay coordinates before expansion");
    fit_cmd->add_option("--fim-eps", fit_opt.fim_eps,
                        "Empirical-FIM zero guard (0 = 1e-9 * max |target|)");
    fit_cmd->add_option("--fim-c", fit_opt.fim_c, "Empirical-FIM integration constant")
        ->capture_default_str();
    fit_cmd->add_option("--out-model", fit_model_out, "Model file")->required();
    fit_cmd->add_option("--report", fit_report_out, "Report file (default: stdout)");

    // predict -------------------------------------------------------------------
    auto* predict_cmd = app.add_subcommand("predict", "Prediction phase");
    std::string pred_input, pred_model, pred_prefix, pred_mode = "direct";
    std::optional<double> pred_rate;
    std::optional<int> pred_channel, pred_mp, pred_window;
    PredictOptions pred_opt;
    predict_cmd->add_option("--input", pred_input, "Signal file")->required();
    predict_cmd->add_option("--rate", pred_rate, "Sampling rate override (Hz)");
    predict_cmd->add_option("--channel", pred_channel, "0-based column selector");
    predict_cmd->add_option("--model", pred_model, "Model file from 'fit'")->required();
    predict_cmd->add_option("--mp", pred_mp,
                            "Prediction count (default: n - max(T, d))");
    predict_cmd->add_option("--mode", pred_mode, "direct or iterated")
        ->check(CLI::IsMember({"direct", "iterated"}))
        ->capture_default_str();
    predict_cmd->add_option("--window", pred_window,
                            "Rolling-MSE window (default: one second of samples)");
    predict_cmd->add_option("--precision", pred_opt.precision, "Output decimals")
        ->capture_default_str();
    predict_cmd->add_option("--out-prefix", pred_prefix, "Output file prefix")
        ->required();

    // reproduce -----------------------------------------------------------------
    auto* repro_cmd = app.add_subcommand(
        "reproduce", "Run a named end-to-end configuration");
    std::string repro_name, repro_input;
    std::optional<double> repro_rate;
    std::optional<int> repro_channel;
    std::string repro_out_dir = default_out_dir().string();
    repro_cmd->add_option("name", repro_name,
                          "mg-t1 | mg-t5 | mit207-t1 | mit207-t5 | cu02-t1 | cu02-t5")
        ->required();
    repro_cmd->add_option("--input", repro_input, "Signal export for ECG recipes");
    repro_cmd->add_option("--rate", repro_rate, "Sampling rate override (Hz)");
    repro_cmd->add_option("--channel", repro_channel, "0-based column selector");
    repro_cmd->add_option("--out-dir", repro_out_dir, "Output directory")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen_mg->parsed()) {
            write_series(mackey_glass(mg_cfg), mg_out, 17);
            std::cout << "wrote " << mg_cfg.n_samples << " samples to " << mg_out << "\n";
        } else if (gen_ecg->parsed()) {
            write_series(synthetic_ecg(ecg_n, ecg_rate, ecg_seed), ecg_out, 17);
            std::cout << "wrote " << ecg_n << " samples to " << ecg_out << "\n";
        } else if (fit_cmd->parsed()) {
            const Series series = load_input(fit_input, fit_rate, fit_channel);
            std::vector<std::pair<std::string, std::string>> report;
            const FitOutcome outcome = run_fit(series, fit_opt, report);
            save_model(outcome.model, fit_model_out);
            report.emplace_back("model_file", fit_model_out);
            if (fit_report_out.empty()) {
                for (const auto& [k, v] : report) std::cout << k << " = " << v << "\n";
            } else {
                write_summary(report, fit_report_out);
            }
        } else if (predict_cmd->parsed()) {
            const Series series = load_input(pred_input, pred_rate, pred_channel);
            const FittedModel model = load_model(pred_model);
            pred_opt.m_p = pred_mp;
            pred_opt.window = pred_window;
            pred_opt.mode = pred_mode == "iterated" ? ForecastMode::Iterated
                                                    : ForecastMode::Direct;
            std::vector<std::pair<std::string, std::string>> summary;
            summary.emplace_back("input", pred_input);
            summary.emplace_back("model_file", pred_model);
            summary.emplace_back("d", std::to_string(model.embedding.d));
            summary.emplace_back("lag", std::to_string(model.embedding.lag));
            summary.emplace_back("np", std::to_string(model.basis.np));
            summary.emplace_back("T", std::to_string(model.T));
            run_predict(series, model, pred_opt, pred_prefix, summary);
            const fs::path summary_path = pred_prefix + "_summary.txt";
            write_summary(summary, summary_path);
            std::cout << "wrote " << summary_path.string() << "\n";
        } else if (repro_cmd->parsed()) {
            return run_reproduce(repro_name, repro_input, repro_rate, repro_channel,
                                 repro_out_dir);
        }
    } catch (const DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return kExitDimension;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
