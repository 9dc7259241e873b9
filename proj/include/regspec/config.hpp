#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regspec/dense_matrix.hpp"
#include "regspec/errors.hpp"
#include "regspec/regular_digraph.hpp"

namespace regspec {

/// Invalid configuration text or values (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class ExperimentKind { Sample, Spectrum, CircularLaw, SvRegimes, Normals, Anticonc, Report };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_kind(const std::string& name);

constexpr int kConfigSchemaVersion = 1;

/// Flat key=value configuration. Every key below may appear at most once;
/// unknown keys are rejected. Zero-valued knobs marked "auto" are resolved
/// from n, d and the other knobs by the experiment that uses them.
struct ExperimentConfig {
    int schema_version = kConfigSchemaVersion;
    ExperimentKind kind = ExperimentKind::Sample;
    bool kind_declared = false;  ///< the text contained a kind key (not part of canonical())
    int n = 0;
    int d = 0;
    std::vector<Complex> z_grid = {Complex(0.0, 0.0)};
    int trials = 1;
    std::uint64_t master_seed = 0;
    int threads = 1;

    SamplerKind sampler = SamplerKind::Automatic;
    double burn_in_factor = 20.0;

    std::string matrix;               ///< spectrum: text-format matrix file (instead of sampling)
    std::vector<std::string> inputs;  ///< report: run directories to aggregate
    std::string overlay = "circular"; ///< circular | kesten-mckay

    double T = 2.0;          ///< tail cutoff for sv-regimes
    double C = 1.0;          ///< existential constants exposed as knobs
    double c = 0.1;
    double alpha = 1.0;
    double beta = 0.1;
    double gamma = 1.0 / 288.0;
    double a = 0.5;
    double rho = 0.0;        ///< auto: per-experiment default
    double floor = 1e-30;
    double delta = 0.1;
    double L = 0.0;          ///< auto: 1 / (2 sqrt(C delta)), clamped into [1, 1/(2 delta)]
    Complex lambda{0.0, 0.0};
    int span_rows = 0;       ///< normals: rows of B_z spanning E; auto: n/2
    int row_index = 0;       ///< anticonc: position i for row distances; auto: n - max(1, n/20)
    int u = 0;

    /// Throws ConfigError when a value is outside its documented range.
    void validate() const;
    /// Every key with its effective value, one per line, in a fixed order.
    std::string canonical() const;
    /// FNV-1a 64 of canonical().
    std::uint64_t hash() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// "1.5", "-2i", "0.3-0.4i", "i".
Complex parse_complex(const std::string& text);
std::string format_complex(Complex z);

std::string hex64(std::uint64_t value);

}  // namespace regspec
