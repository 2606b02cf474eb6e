// cli.hpp — run configuration, flat config files, and the command
// implementations behind the lambda_entangle binary.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "lambda_entangle/dataset.hpp"
#include "lambda_entangle/eraser.hpp"
#include "lambda_entangle/oracle.hpp"
#include "lambda_entangle/params.hpp"
#include "lambda_entangle/photodetect.hpp"

namespace lambda_entangle::cli {

enum class Format { csv, json };

struct TimeGrid {
    double start = 0.0;
    double end = 60.0;
    double step = 0.05;  // ns
};

struct OracleGrid {
    double half_width_gammas = 80.0;
    double modes_per_gamma = 10.0;
    double horizon = 30.0;  // ns
};

struct BlurSweep {
    double delta_t_min = 0.1;  // ns
    double delta_t_max = 20.0;
    int points = 40;
    double tau = 60.0;  // shutter closes at t_d + tau
};

struct RatioSweep {
    double ratio_min = 1e-3;  // Δω/Γ
    double ratio_max = 1e3;
    int points = 121;
};

struct RunConfig {
    SystemParams params;
    photodetect::DetectorParams detector;
    double shutter_delta_t = 0.05;  // ns; inside the analytic-eraser gate
    double phi = 0.0;              // microwave projection phase, rad
    TimeGrid grid;
    OracleGrid oracle_grid;
    BlurSweep blur;
    RatioSweep sweep;
    std::string out;  // empty = stdout
    Format format = Format::csv;
    int precision = 9;
    bool bits = false;             // display entropies in bits instead of nats
    bool drop_pre_arrival = false; // omit rows with t_D ≤ t_d instead of zeros
};

// Paper-quoted defaults: Γ = 1/12 ns⁻¹ split equally, Δω = 2π×122 MHz,
// t_d = 7 ns, δt = 0.3 ns.
RunConfig default_config();
// Scaled desk scenario for the oracle: Γ = 0.1/ns, Δω/Γ = 4, Ω = 100Γ, t_d = 5.
RunConfig default_oracle_config();

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flat `key = value` lines, '#' comments, unknown keys rejected.
void apply_config_file(RunConfig& cfg, const std::string& path);
void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value);
void validate_config(const RunConfig& cfg);

double delta_omega_from_mhz(double mhz);  // Δω = 2π × MHz, in rad/ns

dataset::CurveDataset run_entropy(const RunConfig& cfg);
dataset::CurveDataset run_detect(const RunConfig& cfg);
dataset::CurveDataset run_erase(const RunConfig& cfg);
dataset::CurveDataset run_blur(const RunConfig& cfg);
dataset::CurveDataset run_sweep(const RunConfig& cfg);

oracle::ValidationReport run_oracle(const RunConfig& cfg);
std::string oracle_report_json(const RunConfig& cfg, const oracle::ValidationReport& report);

// Writes csv/json per cfg; empty cfg.out streams to stdout. Throws IoError.
void write_output(const RunConfig& cfg, const dataset::CurveDataset& ds);
void write_text_output(const RunConfig& cfg, const std::string& text);

// Full dispatch: 0 success, 1 config/params error, 2 I/O error, 3 failed
// oracle check (report still written).
int run_command(const std::string& command, const RunConfig& cfg);

}  // namespace lambda_entangle::cli
