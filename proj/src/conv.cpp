#include "topocode/conv.hpp"

#include <bit>
#include <limits>

#include "topocode/errors.hpp"

namespace topocode {

namespace {

// parity of the 7-bit window [input bit, state] under a generator
inline std::uint8_t generator_output(std::uint32_t window, std::uint32_t generator) {
    return static_cast<std::uint8_t>(std::popcount(window & generator) & 1);
}

// keep x every step, y on even steps only (pattern x1 y1 x2 over two steps)
inline bool keep_y(std::size_t step, const ConvCode& code) {
    return !code.punctured || step % 2 == 0;
}

std::size_t padded_length(std::size_t message_bits, const ConvCode& code) {
    if (code.punctured && message_bits % 2 != 0) return message_bits + 1;
    return message_bits;
}

} // namespace

std::size_t conv_coded_length(std::size_t message_bits, const ConvCode& code) {
    const std::size_t steps = padded_length(message_bits, code) + static_cast<std::size_t>(code.memory());
    std::size_t coded = 0;
    for (std::size_t s = 0; s < steps; ++s) coded += keep_y(s, code) ? 2 : 1;
    return coded;
}

std::vector<std::uint8_t> conv_encode(std::span<const std::uint8_t> message, const ConvCode& code) {
    const std::size_t padded = padded_length(message.size(), code);
    const std::size_t steps = padded + static_cast<std::size_t>(code.memory());

    std::vector<std::uint8_t> out;
    out.reserve(conv_coded_length(message.size(), code));

    std::uint32_t state = 0; // most recent bit in the highest of memory() bits
    for (std::size_t s = 0; s < steps; ++s) {
        const std::uint32_t bit = s < message.size() ? message[s] : 0; // pad and tail are zeros
        const std::uint32_t window = (bit << code.memory()) | state;
        out.push_back(generator_output(window, code.g1));
        if (keep_y(s, code)) out.push_back(generator_output(window, code.g2));
        state = window >> 1;
    }
    return out;
}

std::vector<std::uint8_t> viterbi_decode(std::span<const double> symbols, std::size_t message_bits,
                                         const ConvCode& code) {
    const std::size_t padded = padded_length(message_bits, code);
    const std::size_t steps = padded + static_cast<std::size_t>(code.memory());
    if (symbols.size() != conv_coded_length(message_bits, code))
        throw ValueError("viterbi_decode: symbol count does not match message length");

    const int state_count = code.states();
    const double neg_inf = -std::numeric_limits<double>::infinity();

    std::vector<double> metric(static_cast<std::size_t>(state_count), neg_inf);
    std::vector<double> next_metric(static_cast<std::size_t>(state_count));
    metric[0] = 0.0; // terminated trellis starts in the zero state
    std::vector<std::uint8_t> predecessors(steps * static_cast<std::size_t>(state_count));

    std::size_t position = 0;
    for (std::size_t s = 0; s < steps; ++s) {
        const double sx = symbols[position++];
        const double sy = keep_y(s, code) ? symbols[position++] : 0.0;

        std::fill(next_metric.begin(), next_metric.end(), neg_inf);
        std::uint8_t* predecessor = predecessors.data() + s * static_cast<std::size_t>(state_count);
        for (int state = 0; state < state_count; ++state) {
            const double base = metric[static_cast<std::size_t>(state)];
            if (base == neg_inf) continue;
            for (std::uint32_t bit = 0; bit <= 1; ++bit) {
                const std::uint32_t window = (bit << code.memory()) | static_cast<std::uint32_t>(state);
                // correlation metric: +1 symbol for coded bit 0, -1 for bit 1
                const double ex = generator_output(window, code.g1) ? -1.0 : 1.0;
                const double ey = generator_output(window, code.g2) ? -1.0 : 1.0;
                const double branch = base + sx * ex + (keep_y(s, code) ? sy * ey : 0.0);
                const int next_state = static_cast<int>(window >> 1);
                if (branch > next_metric[static_cast<std::size_t>(next_state)]) {
                    next_metric[static_cast<std::size_t>(next_state)] = branch;
                    predecessor[next_state] = static_cast<std::uint8_t>(state);
                }
            }
        }
        metric.swap(next_metric);
    }

    // traceback from the zero state; the input bit of a transition is the
    // top memory bit of the successor state
    std::vector<std::uint8_t> bits(steps);
    int state = 0;
    for (std::size_t s = steps; s-- > 0;) {
        bits[s] = static_cast<std::uint8_t>(state >> (code.memory() - 1));
        state = predecessors[s * static_cast<std::size_t>(state_count) + static_cast<std::size_t>(state)];
    }

    bits.resize(message_bits);
    return bits;
}

} // namespace topocode
