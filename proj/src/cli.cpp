#include "lambda_entangle/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "lambda_entangle/entropy.hpp"
#include "lambda_entangle/parallel.hpp"
#include "lambda_entangle/ww_dynamics.hpp"

namespace lambda_entangle::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

std::vector<double> grid_times(const TimeGrid& g) {
    const auto count = static_cast<std::size_t>(
        std::floor((g.end - g.start) / g.step + 1e-9)) + 1;
    std::vector<double> times(count);
    for (std::size_t i = 0; i < count; ++i) {
        times[i] = g.start + static_cast<double>(i) * g.step;
    }
    return times;
}

std::vector<double> log_spaced(double lo, double hi, int points) {
    std::vector<double> out(static_cast<std::size_t>(points));
    if (points == 1) {
        out[0] = lo;
        return out;
    }
    const double ratio = std::log(hi / lo) / static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) {
        out[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i);
    }
    return out;
}

std::string format_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for '" + key + "'");
    }
    if (pos != value.size()) {
        throw std::invalid_argument("config: bad numeric value for '" + key + "'");
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::invalid_argument("config: bad boolean value for '" + key + "'");
}

void add_common_meta(dataset::CurveDataset& ds, const RunConfig& cfg,
                     const std::string& command) {
    ds.add_meta("tool", "lambda_entangle");
    ds.add_meta("version", kVersion);
    ds.add_meta("command", command);
    for (const auto& [k, v] : params_to_key_values(cfg.params)) ds.add_meta(k, v);
    ds.add_meta("precision", std::to_string(cfg.precision));
}

void add_detector_meta(dataset::CurveDataset& ds, const RunConfig& cfg) {
    ds.add_meta("efficiency", format_exact(cfg.detector.efficiency));
    ds.add_meta("t_d", format_exact(cfg.detector.t_d));
    ds.add_meta("filter", to_string(cfg.detector.filter));
}

void add_grid_meta(dataset::CurveDataset& ds, const TimeGrid& g) {
    ds.add_meta("t_start", format_exact(g.start));
    ds.add_meta("t_end", format_exact(g.end));
    ds.add_meta("t_step", format_exact(g.step));
}

const char* entropy_unit(const RunConfig& cfg) {
    return cfg.bits ? "bits" : "nats";
}

double entropy_scale(const RunConfig& cfg) {
    return cfg.bits ? 1.0 / std::log(2.0) : 1.0;
}

}  // namespace

RunConfig default_config() {
    RunConfig cfg;
    cfg.params.omega = 100.0;
    cfg.params.delta_omega = delta_omega_from_mhz(122.0);
    cfg.params.gamma_plus = 1.0 / 24.0;
    cfg.params.gamma_minus = 1.0 / 24.0;
    cfg.detector.efficiency = 1.0;
    cfg.detector.t_d = 7.0;
    cfg.detector.filter = Polarization::H;
    // The experiment's 300 ps bin has Δω·δt = 0.23 at this splitting, outside
    // the analytic-eraser gate Δω·δt < 0.05; the default bin stays inside it.
    // δt = 0.3 remains available via --delta-t-ns together with the blur path.
    cfg.shutter_delta_t = 0.05;
    return cfg;
}

RunConfig default_oracle_config() {
    RunConfig cfg = default_config();
    cfg.params = oracle::desk_params(4.0);
    cfg.detector.t_d = 5.0;
    cfg.detector.efficiency = 0.1;
    cfg.format = Format::json;
    return cfg;
}

double delta_omega_from_mhz(double mhz) {
    // 1 MHz = 10⁻³ cycles/ns.
    return 2.0 * M_PI * mhz * 1e-3;
}

void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "omega") cfg.params.omega = parse_double(key, value);
    else if (key == "delta_omega") cfg.params.delta_omega = parse_double(key, value);
    else if (key == "delta_omega_mhz") cfg.params.delta_omega = delta_omega_from_mhz(parse_double(key, value));
    else if (key == "gamma_plus") cfg.params.gamma_plus = parse_double(key, value);
    else if (key == "gamma_minus") cfg.params.gamma_minus = parse_double(key, value);
    else if (key == "gamma_inv_ns") {
        const double g = 1.0 / parse_double(key, value);
        cfg.params.gamma_plus = 0.5 * g;
        cfg.params.gamma_minus = 0.5 * g;
    } else if (key == "efficiency") cfg.detector.efficiency = parse_double(key, value);
    else if (key == "t_d") cfg.detector.t_d = parse_double(key, value);
    else if (key == "filter") cfg.detector.filter = polarization_from_string(value);
    else if (key == "delta_t") cfg.shutter_delta_t = parse_double(key, value);
    else if (key == "phi") cfg.phi = parse_double(key, value);
    else if (key == "t_start") cfg.grid.start = parse_double(key, value);
    else if (key == "t_end") cfg.grid.end = parse_double(key, value);
    else if (key == "t_step") cfg.grid.step = parse_double(key, value);
    else if (key == "half_width_gammas") cfg.oracle_grid.half_width_gammas = parse_double(key, value);
    else if (key == "modes_per_gamma") cfg.oracle_grid.modes_per_gamma = parse_double(key, value);
    else if (key == "horizon") cfg.oracle_grid.horizon = parse_double(key, value);
    else if (key == "delta_t_min") cfg.blur.delta_t_min = parse_double(key, value);
    else if (key == "delta_t_max") cfg.blur.delta_t_max = parse_double(key, value);
    else if (key == "blur_points") cfg.blur.points = static_cast<int>(parse_double(key, value));
    else if (key == "tau") cfg.blur.tau = parse_double(key, value);
    else if (key == "ratio_min") cfg.sweep.ratio_min = parse_double(key, value);
    else if (key == "ratio_max") cfg.sweep.ratio_max = parse_double(key, value);
    else if (key == "sweep_points") cfg.sweep.points = static_cast<int>(parse_double(key, value));
    else if (key == "out") cfg.out = value;
    else if (key == "format") {
        if (value == "csv") cfg.format = Format::csv;
        else if (value == "json") cfg.format = Format::json;
        else throw std::invalid_argument("config: format must be csv or json");
    } else if (key == "precision") cfg.precision = static_cast<int>(parse_double(key, value));
    else if (key == "bits") cfg.bits = parse_bool(key, value);
    else if (key == "drop_pre_arrival") cfg.drop_pre_arrival = parse_bool(key, value);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file '" + path + "'");
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string{};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        const std::string stripped = strip(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not 'key = value'");
        }
        apply_key_value(cfg, strip(stripped.substr(0, eq)), strip(stripped.substr(eq + 1)));
    }
}

void validate_config(const RunConfig& cfg) {
    validate_params(cfg.params);
    photodetect::validate_detector(cfg.detector);
    if (!(cfg.grid.step > 0.0)) {
        throw std::invalid_argument("config: t_step must be positive");
    }
    if (!(cfg.grid.end > cfg.grid.start)) {
        throw std::invalid_argument("config: t_end must exceed t_start");
    }
    if (cfg.precision < 6 || cfg.precision > 17) {
        throw std::invalid_argument("config: precision must be in [6, 17]");
    }
    if (cfg.blur.points < 1 || cfg.sweep.points < 1) {
        throw std::invalid_argument("config: sweep point counts must be positive");
    }
}

dataset::CurveDataset run_entropy(const RunConfig& cfg) {
    validate_config(cfg);
    const std::vector<double> times = grid_times(cfg.grid);
    std::vector<double> s_fo(times.size()), s_fp(times.size()), gap(times.size());
    par::parallel_for(times.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            s_fo[i] = entropy::entropy_frequency_only(cfg.params, times[i]);
            s_fp[i] = entropy::entropy_frequency_polarization(cfg.params, times[i]);
            gap[i] = s_fp[i] - s_fo[i];
        }
    });
    // Route through EntropyCurve so the three-level band invariant guards the
    // emitted values before any display scaling.
    entropy::EntropyCurve fo =
        entropy::make_entropy_curve(times, std::move(s_fo), entropy::CurveLabel::fo);
    entropy::EntropyCurve fp =
        entropy::make_entropy_curve(times, std::move(s_fp), entropy::CurveLabel::fp);
    const double scale = entropy_scale(cfg);
    if (cfg.bits) {
        for (std::size_t i = 0; i < times.size(); ++i) {
            fo.values[i] *= scale;
            fp.values[i] *= scale;
            gap[i] *= scale;
        }
    }
    dataset::CurveDataset ds;
    add_common_meta(ds, cfg, "entropy");
    add_grid_meta(ds, cfg.grid);
    ds.add_meta("entropy_unit", entropy_unit(cfg));
    const std::string unit = entropy_unit(cfg);
    ds.add_column("t_ns", times);
    ds.add_column("s_fo_" + unit, std::move(fo.values));
    ds.add_column("s_fp_" + unit, std::move(fp.values));
    ds.add_column("gap_" + unit, std::move(gap));
    return ds;
}

dataset::CurveDataset run_detect(const RunConfig& cfg) {
    validate_config(cfg);
    std::vector<double> taus = grid_times(cfg.grid);
    if (cfg.drop_pre_arrival) {
        std::erase_if(taus, [](double tau) { return tau <= 0.0; });
    }
    const bool with_entropy = cfg.params.equal_widths();
    std::vector<double> p_h(taus.size()), p_v(taus.size()), s_post(taus.size(), 0.0);
    photodetect::DetectorParams det_h = cfg.detector;
    det_h.filter = Polarization::H;
    photodetect::DetectorParams det_v = cfg.detector;
    det_v.filter = Polarization::V;
    const double eff = cfg.detector.efficiency;
    const double scale = entropy_scale(cfg);
    par::parallel_for(taus.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const double t_D = taus[i] + cfg.detector.t_d;
            p_h[i] = photodetect::conditional_probability(cfg.params, det_h, t_D, cfg.phi) / eff;
            p_v[i] = photodetect::conditional_probability(cfg.params, det_v, t_D, cfg.phi) / eff;
            if (with_entropy && taus[i] > 0.0) {
                s_post[i] = scale * photodetect::post_detection_entropy(cfg.params, taus[i]);
            }
        }
    });
    dataset::CurveDataset ds;
    add_common_meta(ds, cfg, "detect");
    add_detector_meta(ds, cfg);
    add_grid_meta(ds, cfg.grid);
    ds.add_meta("phi", format_exact(cfg.phi));
    ds.add_column("tau_ns", taus);
    ds.add_column("p_h_over_eff", std::move(p_h));
    ds.add_column("p_v_over_eff", std::move(p_v));
    if (with_entropy) {
        ds.add_meta("entropy_unit", entropy_unit(cfg));
        ds.add_column(std::string("s_post_") + entropy_unit(cfg), std::move(s_post));
    }
    return ds;
}

dataset::CurveDataset run_erase(const RunConfig& cfg) {
    validate_config(cfg);
    std::vector<double> taus = grid_times(cfg.grid);
    if (cfg.drop_pre_arrival) {
        std::erase_if(taus, [](double tau) { return tau <= 0.0; });
    }
    {
        // Fail fast with the blurrer advice before any rows are produced.
        eraser::ShutterSpec probe{cfg.detector.t_d + 1.0, cfg.shutter_delta_t};
        if (!eraser::shutter_invariant_ok(cfg.params, probe)) {
            throw std::invalid_argument(
                "erase: shutter window violates the eraser regime "
                "(gamma*delta_t < 0.05 and delta_omega*delta_t < 0.05); "
                "use the blur command for wide windows");
        }
    }
    std::vector<double> p_h(taus.size()), p_v(taus.size()), purity(taus.size(), 0.0);
    photodetect::DetectorParams det_h = cfg.detector;
    det_h.filter = Polarization::H;
    photodetect::DetectorParams det_v = cfg.detector;
    det_v.filter = Polarization::V;
    par::parallel_for(taus.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const eraser::ShutterSpec shutter{taus[i] + cfg.detector.t_d, cfg.shutter_delta_t};
            p_h[i] = eraser::joint_probability(cfg.params, det_h, shutter, cfg.phi);
            p_v[i] = eraser::joint_probability(cfg.params, det_v, shutter, cfg.phi);
            if (taus[i] > 0.0) {
                purity[i] =
                    eraser::rho_erased(cfg.params, det_h, shutter).normalized().purity();
            }
        }
    });
    dataset::CurveDataset ds;
    add_common_meta(ds, cfg, "erase");
    add_detector_meta(ds, cfg);
    add_grid_meta(ds, cfg.grid);
    ds.add_meta("delta_t", format_exact(cfg.shutter_delta_t));
    ds.add_meta("phi", format_exact(cfg.phi));
    ds.add_column("tau_ns", taus);
    ds.add_column("p_joint_h", std::move(p_h));
    ds.add_column("p_joint_v", std::move(p_v));
    ds.add_column("purity", std::move(purity));
    return ds;
}

dataset::CurveDataset run_blur(const RunConfig& cfg) {
    validate_config(cfg);
    if (!(cfg.blur.delta_t_min > 0.0 && cfg.blur.delta_t_max >= cfg.blur.delta_t_min)) {
        throw std::invalid_argument("blur: need 0 < delta_t_min <= delta_t_max");
    }
    const std::vector<double> widths =
        log_spaced(cfg.blur.delta_t_min, cfg.blur.delta_t_max, cfg.blur.points);
    const double t_D = cfg.detector.t_d + cfg.blur.tau;
    std::vector<double> coherence(widths.size()), trace(widths.size()),
        purity(widths.size());
    const double eff = cfg.detector.efficiency;
    par::parallel_for(widths.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const QubitDensityMatrix rho =
                eraser::blurred_density_matrix(cfg.params, cfg.detector, t_D, widths[i]);
            const double denom = std::sqrt(rho.population_plus() * rho.population_minus());
            coherence[i] = denom > 0.0 ? std::abs(rho.coherence()) / denom : 0.0;
            trace[i] = rho.trace() / eff;
            purity[i] = rho.is_zero() ? 0.0 : rho.normalized().purity();
        }
    });
    dataset::CurveDataset ds;
    add_common_meta(ds, cfg, "blur");
    add_detector_meta(ds, cfg);
    ds.add_meta("tau", format_exact(cfg.blur.tau));
    ds.add_column("delta_t_ns", widths);
    ds.add_column("coherence_magnitude", std::move(coherence));
    ds.add_column("trace_over_eff", std::move(trace));
    ds.add_column("purity_normalized", std::move(purity));
    return ds;
}

dataset::CurveDataset run_sweep(const RunConfig& cfg) {
    validate_config(cfg);
    if (!(cfg.sweep.ratio_min > 0.0 && cfg.sweep.ratio_max >= cfg.sweep.ratio_min)) {
        throw std::invalid_argument("sweep: need 0 < ratio_min <= ratio_max");
    }
    const std::vector<double> ratios =
        log_spaced(cfg.sweep.ratio_min, cfg.sweep.ratio_max, cfg.sweep.points);
    std::vector<double> eta_inf(ratios.size()), s_fo(ratios.size()), s_fp(ratios.size());
    const double scale = entropy_scale(cfg);
    par::parallel_for(ratios.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            SystemParams p = cfg.params;
            p.delta_omega = ratios[i] * p.gamma();
            eta_inf[i] = 1.0 / std::sqrt(1.0 + ratios[i] * ratios[i]);
            s_fo[i] = scale * entropy::entropy_frequency_only_asymptote(p);
            s_fp[i] = scale * entropy::entropy_frequency_polarization_asymptote(p);
        }
    });
    dataset::CurveDataset ds;
    add_common_meta(ds, cfg, "sweep");
    ds.add_meta("entropy_unit", entropy_unit(cfg));
    const std::string unit = entropy_unit(cfg);
    ds.add_column("dw_over_gamma", ratios);
    ds.add_column("eta_inf_abs", std::move(eta_inf));
    ds.add_column("s_fo_inf_" + unit, std::move(s_fo));
    ds.add_column("s_fp_inf_" + unit, std::move(s_fp));
    return ds;
}

oracle::ValidationReport run_oracle(const RunConfig& cfg) {
    validate_config(cfg);
    const oracle::ModeGrid grid =
        oracle::build_grid(cfg.params, cfg.oracle_grid.half_width_gammas,
                   cfg.oracle_grid.modes_per_gamma);
    const oracle::Trajectory trajectory = oracle::integrate(
        cfg.params, grid, cfg.oracle_grid.horizon, cfg.detector, oracle::Options{});
    return oracle::validate(cfg.params, grid, trajectory, cfg.detector);
}

std::string oracle_report_json(const RunConfig& cfg, const oracle::ValidationReport& report) {
    nlohmann::ordered_json root;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    meta["tool"] = "lambda_entangle";
    meta["version"] = kVersion;
    meta["command"] = "oracle";
    for (const auto& [k, v] : params_to_key_values(cfg.params)) meta[k] = v;
    meta["efficiency"] = format_exact(cfg.detector.efficiency);
    meta["t_d"] = format_exact(cfg.detector.t_d);
    meta["filter"] = to_string(cfg.detector.filter);
    meta["half_width_gammas"] = format_exact(cfg.oracle_grid.half_width_gammas);
    meta["modes_per_gamma"] = format_exact(cfg.oracle_grid.modes_per_gamma);
    meta["horizon"] = format_exact(cfg.oracle_grid.horizon);
    root["meta"] = std::move(meta);

    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& check : report.checks) {
        nlohmann::ordered_json entry;
        entry["name"] = check.name;
        entry["max_deviation"] =
            std::stod(dataset::format_significant(check.max_deviation, cfg.precision));
        entry["tolerance"] = check.tolerance;
        entry["pass"] = check.pass;
        if (!check.detail.empty()) entry["detail"] = check.detail;
        checks.push_back(std::move(entry));
    }
    root["checks"] = std::move(checks);
    root["pass"] = report.all_pass();
    return root.dump(2) + "\n";
}

void write_text_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        if (!std::cout) throw IoError("failed writing to stdout");
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw IoError("cannot open output file '" + cfg.out + "'");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing output file '" + cfg.out + "'");
}

void write_output(const RunConfig& cfg, const dataset::CurveDataset& ds) {
    std::ostringstream buffer;
    if (cfg.format == Format::csv) {
        dataset::write_csv(buffer, ds, cfg.precision);
    } else {
        dataset::write_json(buffer, ds, cfg.precision);
    }
    write_text_output(cfg, buffer.str());
}

int run_command(const std::string& command, const RunConfig& cfg) {
    if (command == "oracle") {
        const oracle::ValidationReport report = run_oracle(cfg);
        write_text_output(cfg, oracle_report_json(cfg, report));
        return report.all_pass() ? 0 : 3;
    }
    dataset::CurveDataset ds;
    if (command == "entropy") ds = run_entropy(cfg);
    else if (command == "detect") ds = run_detect(cfg);
    else if (command == "erase") ds = run_erase(cfg);
    else if (command == "blur") ds = run_blur(cfg);
    else if (command == "sweep") ds = run_sweep(cfg);
    else throw std::invalid_argument("unknown command '" + command + "'");
    write_output(cfg, ds);
    return 0;
}

}  // namespace lambda_entangle::cli
