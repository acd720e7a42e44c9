#include "topocode/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "topocode/conv.hpp"
#include "topocode/dataset.hpp"
#include "topocode/diagram_ops.hpp"
#include "topocode/errors.hpp"
#include "topocode/ldpc.hpp"
#include "topocode/packet.hpp"
#include "topocode/wasserstein.hpp"

namespace topocode {

namespace {

constexpr double kPsnrAggregationCap = 60.0; // identical images would otherwise push means to infinity

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::uint64_t trial_seed(const ExperimentSpec& spec, int image, int snr_index, int scheme_group) {
    return split_seed(spec.seed, (static_cast<std::uint64_t>(image) << 24) |
                                     (static_cast<std::uint64_t>(snr_index) << 8) |
                                     static_cast<std::uint64_t>(scheme_group));
}

int scheme_group(Scheme scheme) {
    switch (scheme) {
    case Scheme::uncoded: return 0;
    case Scheme::topocode:
    case Scheme::topocode_no_boundary: return 1; // shared trial: same transmission, cropped evaluation
    case Scheme::ldpc: return 2;
    case Scheme::conv: return 3;
    }
    return 0;
}

// renormalize by the maximum (the rule applied before every diagram)
GrayImage renormalized(const GrayImage& image) {
    return normalize(image.pixels, image.width, image.height, NormalizeMode::per_image_max);
}

double evaluation_wasserstein(const GrayImage& source, const GrayImage& recovered, Orientation o) {
    const PersistenceDiagram a = diagram_of(renormalized(source), o);
    const PersistenceDiagram b = diagram_of(renormalized(recovered), o);
    return total_distance(a, b, 2.0, {0, 1});
}

std::vector<GrayImage> load_dataset(const ExperimentSpec& spec) {
    std::vector<GrayImage> images;
    if (spec.dataset == "synthetic") {
        images = synthetic_dataset(spec.image_count, split_seed(spec.seed, 0xda7a));
    } else if (std::filesystem::is_directory(spec.dataset)) {
        images = load_pgm_dir(spec.dataset);
    } else if (std::filesystem::is_regular_file(spec.dataset)) {
        images = load_idx(spec.dataset);
    } else {
        throw IoError("dataset not found: " + spec.dataset);
    }
    if (static_cast<int>(images.size()) > spec.image_count) images.resize(static_cast<std::size_t>(spec.image_count));
    if (images.empty()) throw IoError("dataset is empty: " + spec.dataset);
    return images;
}

void validate(const ExperimentSpec& spec) {
    if (spec.image_count < 1) throw ConfigError("image count must be >= 1");
    if (spec.snr_list.empty()) throw ConfigError("SNR list must not be empty");
    if (spec.pattern.fraction < 0.0 || spec.pattern.fraction > 1.0)
        throw ConfigError("noise fraction must lie in [0, 1]");
    const bool needs_schemes = spec.kind == ExperimentKind::correct_compare || spec.kind == ExperimentKind::snr_sweep;
    if (needs_schemes && spec.schemes.empty()) throw ConfigError("scheme set must not be empty");
    if (spec.kind == ExperimentKind::correct_compare && spec.snr_list.size() != 1)
        throw ConfigError("correct-compare uses exactly one SNR");
    for (std::size_t i = 0; i < spec.alphas.size(); ++i) {
        if (spec.alphas[i] < 0.0 || spec.alphas[i] > 1.0) throw ConfigError("alpha outside [0, 1]");
        if (i > 0 && spec.alphas[i] < spec.alphas[i - 1]) throw ConfigError("alphas must be ascending");
    }
    if (spec.epsilon < 0.0) throw ConfigError("epsilon must be nonnegative");
}

struct TopocodeTrial {
    GrayImage received;             // normalized received payload
    PersistenceDiagram received_code; // dequantized Topocode after the channel
    std::size_t coordinate_bytes = 0;
};

// Send the packet across the channel. The payload sees the configured noise
// pattern; the coordinate bytes see full noise under the `all` pattern and
// arrive clean under the localized patterns (which are defined on pixels).
// Framing metadata is modeled error-free.
TopocodeTrial transmit_packet(const GrayImage& source, const ExperimentSpec& spec, double snr_db,
                              std::uint64_t seed) {
    const std::vector<std::uint8_t> payload = to_bytes(source);
    const PersistenceDiagram diagram = diagram_of(source, spec.orientation);
    std::vector<std::uint8_t> packet =
        encode_packet(payload, source.width, source.height, diagram, spec.orientation);
    const PacketRegions regions = locate_regions(packet);

    const ChannelConfig channel{snr_db, seed, spec.pattern};
    const std::vector<std::size_t> noisy = select_noisy_bytes(source.width, source.height, channel);
    const std::vector<std::uint8_t> received_payload =
        transmit_bytes_subset(payload, noisy, snr_db, split_seed(seed, 1));
    std::copy(received_payload.begin(), received_payload.end(),
              packet.begin() + static_cast<std::ptrdiff_t>(regions.payload_offset));

    if (spec.pattern.type == NoisePattern::Type::all) {
        std::vector<std::uint8_t> coords;
        for (const auto& [offset, size] : regions.coordinate_regions)
            coords.insert(coords.end(), packet.begin() + static_cast<std::ptrdiff_t>(offset),
                          packet.begin() + static_cast<std::ptrdiff_t>(offset + size));
        coords = transmit_bytes(coords, snr_db, split_seed(seed, 2));
        std::size_t cursor = 0;
        for (const auto& [offset, size] : regions.coordinate_regions) {
            std::copy(coords.begin() + static_cast<std::ptrdiff_t>(cursor),
                      coords.begin() + static_cast<std::ptrdiff_t>(cursor + size),
                      packet.begin() + static_cast<std::ptrdiff_t>(offset));
            cursor += size;
        }
    }

    const DecodeResult decoded = decode_packet(packet);
    if (!decoded.ok()) throw IoError("internal: transmitted packet failed to parse: " + decoded.error->message);

    TopocodeTrial trial;
    trial.received = normalize_bytes(decoded.packet->payload, source.width, source.height);
    trial.received_code = decoded.packet->diagram;
    trial.coordinate_bytes = regions.coordinate_bytes();
    return trial;
}

struct SchemeRow {
    double psnr_db = 0.0;
    double ssim_value = 0.0;
    double wasserstein_distance = 0.0;
    long packet_bits = 0;
};

struct FecCodes {
    LdpcCode ldpc;
};

SchemeRow evaluate_scheme(Scheme scheme, const GrayImage& source, const ExperimentSpec& spec,
                          const FecCodes& codes, double snr_db, std::uint64_t seed) {
    SchemeRow row;
    switch (scheme) {
    case Scheme::uncoded: {
        const ChannelConfig channel{snr_db, seed, spec.pattern};
        const GrayImage received = transmit_image(source, channel);
        row.psnr_db = psnr(source, received);
        row.ssim_value = ssim(source, received);
        row.wasserstein_distance = evaluation_wasserstein(source, received, spec.orientation);
        row.packet_bits = packet_length_bits(Scheme::uncoded, source.width, source.height, 0);
        break;
    }
    case Scheme::topocode:
    case Scheme::topocode_no_boundary: {
        const TopocodeTrial trial = transmit_packet(source, spec, snr_db, seed);
        const CorrectionResult corrected =
            correct(trial.received, trial.received_code, spec.orientation, spec.correction);
        GrayImage evaluated = corrected.corrected;
        GrayImage reference = source;
        if (scheme == Scheme::topocode_no_boundary) {
            evaluated = crop_interior(evaluated, 1);
            reference = crop_interior(reference, 1);
        }
        row.psnr_db = psnr(reference, evaluated);
        row.ssim_value = ssim(reference, evaluated);
        row.wasserstein_distance = evaluation_wasserstein(reference, evaluated, spec.orientation);
        row.packet_bits = packet_length_bits(scheme, source.width, source.height, trial.coordinate_bytes,
                                             codes.ldpc.n, codes.ldpc.k);
        break;
    }
    case Scheme::ldpc: {
        const std::vector<std::uint8_t> bits = bytes_to_bits(to_bytes(source));
        const std::vector<std::uint8_t> coded = ldpc_encode_stream(bits, codes.ldpc);
        const std::vector<double> symbols = awgn(bpsk_modulate(coded), snr_db, split_seed(seed, 3));
        const std::vector<std::uint8_t> decoded =
            ldpc_decode_stream(symbols, noise_variance(snr_db), bits.size(), codes.ldpc);
        const GrayImage received = normalize_bytes(bits_to_bytes(decoded), source.width, source.height);
        row.psnr_db = psnr(source, received);
        row.ssim_value = ssim(source, received);
        row.wasserstein_distance = evaluation_wasserstein(source, received, spec.orientation);
        row.packet_bits = packet_length_bits(Scheme::ldpc, source.width, source.height, 0,
                                             codes.ldpc.n, codes.ldpc.k);
        break;
    }
    case Scheme::conv: {
        const ConvCode code;
        const std::vector<std::uint8_t> bits = bytes_to_bits(to_bytes(source));
        const std::vector<std::uint8_t> coded = conv_encode(bits, code);
        const std::vector<double> symbols = awgn(bpsk_modulate(coded), snr_db, split_seed(seed, 4));
        const std::vector<std::uint8_t> decoded = viterbi_decode(symbols, bits.size(), code);
        const GrayImage received = normalize_bytes(bits_to_bytes(decoded), source.width, source.height);
        row.psnr_db = psnr(source, received);
        row.ssim_value = ssim(source, received);
        row.wasserstein_distance = evaluation_wasserstein(source, received, spec.orientation);
        row.packet_bits = packet_length_bits(Scheme::conv, source.width, source.height, 0);
        break;
    }
    }
    return row;
}

nlohmann::json manifest_json(const ExperimentSpec& spec) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["experiment"] = experiment_name(spec.kind);
    j["dataset"] = spec.dataset;
    j["image_count"] = spec.image_count;
    j["image_index"] = spec.image_index;
    j["snr_list"] = spec.snr_list;
    j["pattern_type"] = spec.pattern.type == NoisePattern::Type::all ? "all"
                        : spec.pattern.type == NoisePattern::Type::pixel_subset ? "pixel" : "line";
    j["pattern_fraction"] = spec.pattern.fraction;
    j["alphas"] = spec.alphas;
    j["epsilon"] = spec.epsilon;
    j["seed"] = spec.seed;
    j["orientation"] = spec.orientation == Orientation::superlevel ? "superlevel" : "sublevel";
    std::vector<std::string> names;
    for (Scheme s : spec.schemes) names.push_back(scheme_name(s));
    j["schemes"] = names;
    j["gamma"] = spec.correction.gamma;
    j["p"] = spec.correction.p;
    j["step"] = spec.correction.step;
    j["iterations"] = spec.correction.iterations;
    j["tolerance"] = spec.correction.tolerance;
    j["ldpc_n"] = spec.ldpc_n;
    j["ldpc_variable_degree"] = spec.ldpc_variable_degree;
    j["ldpc_check_degree"] = spec.ldpc_check_degree;
    j["ldpc_seed"] = spec.ldpc_seed;
    j["psnr_aggregation_cap_db"] = kPsnrAggregationCap;
    return j;
}

} // namespace

std::string experiment_name(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::detect_single: return "detect-single";
    case ExperimentKind::detect_batch: return "detect-batch";
    case ExperimentKind::correct_compare: return "correct-compare";
    case ExperimentKind::snr_sweep: return "snr-sweep";
    }
    return "unknown";
}

RunResult run(const ExperimentSpec& spec) {
    validate(spec);
    const std::vector<GrayImage> images = load_dataset(spec);

    RunResult result;
    result.csv_path = spec.output_prefix + ".csv";
    result.manifest_path = spec.output_prefix + ".manifest.json";

    std::string csv;
    nlohmann::json manifest = manifest_json(spec);

    if (spec.kind == ExperimentKind::detect_single || spec.kind == ExperimentKind::detect_batch) {
        csv += "image_index,snr_db,alpha,distance_total,distance_h0,distance_h1,below_epsilon\n";
        const double snr_db = spec.snr_list.front();
        DetectionConfig detection;
        detection.alphas = spec.alphas;
        detection.epsilon = spec.epsilon;

        std::vector<int> indices;
        if (spec.kind == ExperimentKind::detect_single) {
            if (spec.image_index < 0 || spec.image_index >= static_cast<int>(images.size()))
                throw ConfigError("image index outside the dataset");
            indices.push_back(spec.image_index);
        } else {
            for (int i = 0; i < static_cast<int>(images.size()); ++i) indices.push_back(i);
        }

        int accepted = 0;
        for (int index : indices) {
            const GrayImage& source = images[static_cast<std::size_t>(index)];
            const TopocodeTrial trial =
                transmit_packet(source, spec, snr_db, trial_seed(spec, index, 0, 1));
            const DetectionReport report =
                detect(trial.received, trial.received_code, spec.orientation, detection);
            for (const DetectionRow& row : report.rows) {
                csv += std::to_string(index) + "," + format_number(snr_db) + "," + format_number(row.alpha) +
                       "," + format_number(row.distance_total) + "," + format_number(row.distance_h0) + "," +
                       format_number(row.distance_h1) + "," + (row.distance_total < spec.epsilon ? "1" : "0") +
                       "\n";
            }
            if (report.accepted) ++accepted;
        }
        result.accept_fraction = static_cast<double>(accepted) / static_cast<double>(indices.size());
        result.reject_fraction = 1.0 - result.accept_fraction;
        manifest["summary"] = {{"accept_fraction", result.accept_fraction},
                               {"reject_fraction", result.reject_fraction},
                               {"images", indices.size()}};
    } else {
        // canonical scheme order, duplicates removed
        std::vector<Scheme> schemes = spec.schemes;
        std::sort(schemes.begin(), schemes.end());
        schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());

        FecCodes codes{make_ldpc_code(spec.ldpc_n, spec.ldpc_variable_degree, spec.ldpc_check_degree,
                                      spec.ldpc_seed)};

        if (spec.kind == ExperimentKind::correct_compare) {
            csv += "image_index,scheme,snr_db,psnr_db,ssim,wasserstein,packet_bits\n";
            const double snr_db = spec.snr_list.front();
            for (int i = 0; i < static_cast<int>(images.size()); ++i) {
                for (Scheme scheme : schemes) {
                    const SchemeRow row = evaluate_scheme(scheme, images[static_cast<std::size_t>(i)], spec,
                                                          codes, snr_db, trial_seed(spec, i, 0, scheme_group(scheme)));
                    csv += std::to_string(i) + "," + scheme_name(scheme) + "," + format_number(snr_db) + "," +
                           format_number(row.psnr_db) + "," + format_number(row.ssim_value) + "," +
                           format_number(row.wasserstein_distance) + "," + std::to_string(row.packet_bits) + "\n";
                }
            }
        } else { // snr_sweep
            csv += "scheme,snr_db,mean_psnr_db,mean_ssim,mean_wasserstein,mean_packet_bits\n";
            for (Scheme scheme : schemes) {
                for (int s = 0; s < static_cast<int>(spec.snr_list.size()); ++s) {
                    const double snr_db = spec.snr_list[static_cast<std::size_t>(s)];
                    double sum_psnr = 0.0, sum_ssim = 0.0, sum_w = 0.0, sum_bits = 0.0;
                    for (int i = 0; i < static_cast<int>(images.size()); ++i) {
                        const SchemeRow row = evaluate_scheme(scheme, images[static_cast<std::size_t>(i)], spec,
                                                              codes, snr_db, trial_seed(spec, i, s, scheme_group(scheme)));
                        sum_psnr += std::min(row.psnr_db, kPsnrAggregationCap);
                        sum_ssim += row.ssim_value;
                        sum_w += row.wasserstein_distance;
                        sum_bits += static_cast<double>(row.packet_bits);
                    }
                    const double count = static_cast<double>(images.size());
                    csv += scheme_name(scheme) + "," + format_number(snr_db) + "," +
                           format_number(sum_psnr / count) + "," + format_number(sum_ssim / count) + "," +
                           format_number(sum_w / count) + "," + format_number(sum_bits / count) + "\n";
                }
            }
        }
    }

    std::ofstream csv_out(result.csv_path, std::ios::binary);
    if (!csv_out) throw IoError("cannot write " + result.csv_path);
    csv_out << csv;
    std::ofstream manifest_out(result.manifest_path, std::ios::binary);
    if (!manifest_out) throw IoError("cannot write " + result.manifest_path);
    manifest_out << manifest.dump(2) << "\n";
    return result;
}

ExperimentSpec spec_from_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path);
    nlohmann::json j;
    in >> j;

    ExperimentSpec spec;
    const std::string experiment = j.at("experiment").get<std::string>();
    if (experiment == "detect-single") spec.kind = ExperimentKind::detect_single;
    else if (experiment == "detect-batch") spec.kind = ExperimentKind::detect_batch;
    else if (experiment == "correct-compare") spec.kind = ExperimentKind::correct_compare;
    else if (experiment == "snr-sweep") spec.kind = ExperimentKind::snr_sweep;
    else throw ConfigError("unknown experiment in manifest: " + experiment);

    spec.dataset = j.at("dataset").get<std::string>();
    spec.image_count = j.at("image_count").get<int>();
    spec.image_index = j.at("image_index").get<int>();
    spec.snr_list = j.at("snr_list").get<std::vector<double>>();
    const std::string pattern = j.at("pattern_type").get<std::string>();
    spec.pattern.type = pattern == "all" ? NoisePattern::Type::all
                        : pattern == "pixel" ? NoisePattern::Type::pixel_subset : NoisePattern::Type::line_subset;
    spec.pattern.fraction = j.at("pattern_fraction").get<double>();
    spec.alphas = j.at("alphas").get<std::vector<double>>();
    spec.epsilon = j.at("epsilon").get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    spec.orientation = j.at("orientation").get<std::string>() == "sublevel" ? Orientation::sublevel
                                                                            : Orientation::superlevel;
    spec.schemes.clear();
    for (const auto& name : j.at("schemes")) {
        const std::string s = name.get<std::string>();
        if (s == "uncoded") spec.schemes.push_back(Scheme::uncoded);
        else if (s == "topocode") spec.schemes.push_back(Scheme::topocode);
        else if (s == "topocode-no-boundary") spec.schemes.push_back(Scheme::topocode_no_boundary);
        else if (s == "ldpc") spec.schemes.push_back(Scheme::ldpc);
        else if (s == "conv") spec.schemes.push_back(Scheme::conv);
        else throw ConfigError("unknown scheme in manifest: " + s);
    }
    spec.correction.gamma = j.at("gamma").get<double>();
    spec.correction.p = j.at("p").get<double>();
    spec.correction.step = j.at("step").get<double>();
    spec.correction.iterations = j.at("iterations").get<int>();
    spec.correction.tolerance = j.at("tolerance").get<double>();
    spec.ldpc_n = j.at("ldpc_n").get<int>();
    spec.ldpc_variable_degree = j.at("ldpc_variable_degree").get<int>();
    spec.ldpc_check_degree = j.at("ldpc_check_degree").get<int>();
    spec.ldpc_seed = j.at("ldpc_seed").get<std::uint64_t>();
    return spec;
}

} // namespace topocode
