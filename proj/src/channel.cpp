#include "topocode/channel.hpp"

#include <cmath>

namespace topocode {

std::vector<double> bpsk_modulate(std::span<const std::uint8_t> bits) {
    std::vector<double> symbols(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) symbols[i] = bits[i] ? -1.0 : 1.0;
    return symbols;
}

std::vector<std::uint8_t> demodulate(std::span<const double> symbols) {
    std::vector<std::uint8_t> bits(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) bits[i] = symbols[i] < 0.0 ? 1 : 0;
    return bits;
}

std::vector<double> awgn(std::vector<double> symbols, double snr_db, std::uint64_t seed) {
    if (std::isinf(snr_db) && snr_db > 0) return symbols;
    const double sigma = std::sqrt(noise_variance(snr_db));
    Rng rng(seed);
    for (double& s : symbols) s += sigma * rng.normal();
    return symbols;
}

std::vector<std::uint8_t> bytes_to_bits(std::span<const std::uint8_t> bytes) {
    std::vector<std::uint8_t> bits;
    bits.reserve(bytes.size() * 8);
    for (std::uint8_t byte : bytes)
        for (int b = 7; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((byte >> b) & 1));
    return bits;
}

std::vector<std::uint8_t> bits_to_bytes(std::span<const std::uint8_t> bits) {
    std::vector<std::uint8_t> bytes(bits.size() / 8, 0);
    for (std::size_t i = 0; i < bytes.size() * 8; ++i)
        if (bits[i]) bytes[i / 8] = static_cast<std::uint8_t>(bytes[i / 8] | (1u << (7 - i % 8)));
    return bytes;
}

std::vector<std::uint8_t> transmit_bytes(std::span<const std::uint8_t> bytes, double snr_db,
                                         std::uint64_t seed) {
    const auto bits = bytes_to_bits(bytes);
    const auto received = demodulate(awgn(bpsk_modulate(bits), snr_db, seed));
    return bits_to_bytes(received);
}

std::vector<std::size_t> select_noisy_bytes(int width, int height, const ChannelConfig& config) {
    const std::size_t pixel_count = static_cast<std::size_t>(width) * height;
    std::vector<std::size_t> positions;

    switch (config.pattern.type) {
    case NoisePattern::Type::all:
        positions.resize(pixel_count);
        for (std::size_t i = 0; i < pixel_count; ++i) positions[i] = i;
        break;
    case NoisePattern::Type::pixel_subset: {
        const std::size_t k = static_cast<std::size_t>(std::ceil(config.pattern.fraction * static_cast<double>(pixel_count)));
        Rng rng(split_seed(config.seed, 0x5e1ec7));
        positions = rng.sample_without_replacement(pixel_count, k);
        break;
    }
    case NoisePattern::Type::line_subset: {
        const std::size_t candidates = static_cast<std::size_t>(height + width);
        const std::size_t k = static_cast<std::size_t>(std::ceil(config.pattern.fraction * static_cast<double>(candidates)));
        Rng rng(split_seed(config.seed, 0x5e1ec7));
        const auto lines = rng.sample_without_replacement(candidates, k);
        std::vector<char> selected(pixel_count, 0);
        for (std::size_t line : lines) {
            if (line < static_cast<std::size_t>(height)) { // a row
                for (int c = 0; c < width; ++c) selected[line * width + static_cast<std::size_t>(c)] = 1;
            } else { // a column
                const std::size_t col = line - static_cast<std::size_t>(height);
                for (int r = 0; r < height; ++r) selected[static_cast<std::size_t>(r) * width + col] = 1;
            }
        }
        for (std::size_t i = 0; i < pixel_count; ++i)
            if (selected[i]) positions.push_back(i);
        break;
    }
    }
    return positions;
}

std::vector<std::uint8_t> transmit_bytes_subset(std::span<const std::uint8_t> bytes,
                                                std::span<const std::size_t> noisy_positions,
                                                double snr_db, std::uint64_t seed) {
    std::vector<std::uint8_t> received(bytes.begin(), bytes.end());
    if (std::isinf(snr_db) && snr_db > 0) return received;

    const double sigma = std::sqrt(noise_variance(snr_db));
    Rng rng(seed);
    for (std::size_t position : noisy_positions) {
        const std::uint8_t byte = bytes[position];
        std::uint8_t out = 0;
        for (int b = 7; b >= 0; --b) {
            const double symbol = ((byte >> b) & 1) ? -1.0 : 1.0;
            const double noisy = symbol + sigma * rng.normal();
            if (noisy < 0.0) out = static_cast<std::uint8_t>(out | (1u << b));
        }
        received[position] = out;
    }
    return received;
}

GrayImage transmit_image(const GrayImage& image, const ChannelConfig& config) {
    const std::vector<std::uint8_t> payload = to_bytes(image);
    const std::vector<std::size_t> noisy = select_noisy_bytes(image.width, image.height, config);
    const std::vector<std::uint8_t> received =
        transmit_bytes_subset(payload, noisy, config.snr_db, split_seed(config.seed, 0xa6471));
    return normalize_bytes(received, image.width, image.height, NormalizeMode::per_image_max);
}

} // namespace topocode
