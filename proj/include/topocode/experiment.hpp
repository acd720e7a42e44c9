#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topocode/channel.hpp"
#include "topocode/image.hpp"
#include "topocode/metrics.hpp"
#include "topocode/pipeline.hpp"

namespace topocode {

inline constexpr const char* kVersion = "1.0.0";

enum class ExperimentKind { detect_single, detect_batch, correct_compare, snr_sweep };

std::string experiment_name(ExperimentKind kind);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::detect_batch;
    std::string dataset = "synthetic"; // "synthetic", an IDX file, or a PGM directory
    int image_count = 50;
    int image_index = 0;               // detect-single
    std::vector<double> snr_list{3.0}; // exactly one for detect-* and correct-compare
    NoisePattern pattern{NoisePattern::Type::pixel_subset, 0.25};
    std::vector<double> alphas{0.0, 0.15, 0.30, 0.45};
    double epsilon = 0.05;
    std::uint64_t seed = 1;
    Orientation orientation = Orientation::superlevel;
    std::vector<Scheme> schemes{Scheme::uncoded, Scheme::topocode, Scheme::topocode_no_boundary,
                                Scheme::ldpc, Scheme::conv};
    CorrectionConfig correction;
    int ldpc_n = 1000;
    int ldpc_variable_degree = 5;
    int ldpc_check_degree = 20;
    std::uint64_t ldpc_seed = 1;
    std::string output_prefix = "topocode-run";
};

struct RunResult {
    std::string csv_path;
    std::string manifest_path;
    // detect-batch summary
    double accept_fraction = 0.0;
    double reject_fraction = 0.0;
};

// Execute the experiment and write <prefix>.csv plus <prefix>.manifest.json.
// Output is deterministic for a fixed spec: rows are ordered by (image index,
// scheme, snr) and numbers printed with a fixed format. Throws ConfigError
// or IoError on invalid specs or missing datasets.
RunResult run(const ExperimentSpec& spec);

// Rebuild a spec from a manifest written by run(); re-running reproduces the
// CSV byte for byte.
ExperimentSpec spec_from_manifest(const std::string& path);

} // namespace topocode
