#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "topocode/image.hpp"
#include "topocode/rng.hpp"

namespace topocode {

struct NoisePattern {
    enum class Type { all, pixel_subset, line_subset };
    Type type = Type::all;
    double fraction = 1.0; // of pixels (pixel_subset) or of the H+W lines (line_subset)
};

struct ChannelConfig {
    double snr_db = 3.0; // per-symbol SNR, unit symbol energy; +infinity disables noise
    std::uint64_t seed = 0;
    NoisePattern pattern;
};

// bit 0 -> +1, bit 1 -> -1
std::vector<double> bpsk_modulate(std::span<const std::uint8_t> bits);

// sign threshold at 0; exactly 0 decides bit 0
std::vector<std::uint8_t> demodulate(std::span<const double> symbols);

// noise variance for a given per-symbol SNR in dB
inline double noise_variance(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

// i.i.d. zero-mean Gaussian noise with variance 10^(-snr_db/10) on every
// symbol; identical seeds give identical realizations; snr_db = +infinity
// returns the input unchanged.
std::vector<double> awgn(std::vector<double> symbols, double snr_db, std::uint64_t seed);

// MSB-first bit (de)serialization, row-major byte order
std::vector<std::uint8_t> bytes_to_bits(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> bits_to_bytes(std::span<const std::uint8_t> bits);

// BPSK/AWGN round trip of a byte stream, full-noise pattern.
std::vector<std::uint8_t> transmit_bytes(std::span<const std::uint8_t> bytes, double snr_db,
                                         std::uint64_t seed);

// Transmit the 8-bit representation of `image` and renormalize the received
// bytes by their maximum. Subset patterns add noise only to the selected
// pixels' symbols (pixel_subset: ceil(fraction * N) pixels without
// replacement; line_subset: ceil(fraction * (H+W)) of the H+W rows/columns).
GrayImage transmit_image(const GrayImage& image, const ChannelConfig& config);

// Noise-carrying byte positions of a width x height payload under `config`
// (every position for the all pattern). Used to expose packet payloads to the
// same noise pattern as bare images.
std::vector<std::size_t> select_noisy_bytes(int width, int height, const ChannelConfig& config);

// Apply BPSK/AWGN to the selected byte positions only; other bytes pass
// through bit-identically.
std::vector<std::uint8_t> transmit_bytes_subset(std::span<const std::uint8_t> bytes,
                                                std::span<const std::size_t> noisy_positions,
                                                double snr_db, std::uint64_t seed);

} // namespace topocode
