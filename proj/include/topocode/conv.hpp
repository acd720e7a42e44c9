#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace topocode {

// Rate-1/2 constraint-length-7 convolutional code (generators 171/133 octal)
// punctured to rate 2/3, terminated with tail bits. Decoding is soft-decision
// Viterbi over the full block; punctured positions contribute no metric.
struct ConvCode {
    int constraint_length = 7;
    std::uint32_t g1 = 0171;
    std::uint32_t g2 = 0133;
    bool punctured = true; // rate 2/3: per two steps keep x1 y1 x2, drop y2

    int memory() const { return constraint_length - 1; }
    int states() const { return 1 << memory(); }
};

// Coded bits for a whole terminated block. Odd-length messages are padded
// with one zero bit internally; the decoder drops the pad.
std::vector<std::uint8_t> conv_encode(std::span<const std::uint8_t> message, const ConvCode& code);

// number of coded bits conv_encode emits for a message of this length
std::size_t conv_coded_length(std::size_t message_bits, const ConvCode& code);

// soft symbols (one per coded bit, +1 for bit 0) -> message bits
std::vector<std::uint8_t> viterbi_decode(std::span<const double> symbols, std::size_t message_bits,
                                         const ConvCode& code);

} // namespace topocode
