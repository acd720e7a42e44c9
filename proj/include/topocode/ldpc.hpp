#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace topocode {

// Regular LDPC code with a seeded random (dv, dc)-regular parity-check
// matrix. Encoding is systematic with message bits on the Gaussian-
// elimination free columns; decoding is normalized min-sum belief
// propagation with early exit on parity satisfaction.
struct LdpcCode {
    int n = 0;  // codeword length
    int m = 0;  // parity checks
    int k = 0;  // message bits (n - m, full-rank construction)
    int variable_degree = 0;
    int check_degree = 0;
    std::uint64_t seed = 0;
    int max_iterations = 50;
    double normalization = 0.8;

    std::vector<std::vector<int>> check_neighbors;    // per check: variable indices
    std::vector<std::vector<int>> variable_neighbors; // per variable: check indices
    std::vector<int> pivot_columns;                   // one per check row, RREF pivots
    std::vector<int> free_columns;                    // message positions, ascending
    std::vector<std::vector<std::uint64_t>> parity_map; // per pivot row: bitset over message bits

    double rate() const { return static_cast<double>(k) / n; }
};

// Build a (variable_degree, check_degree)-regular code. Retries internally
// with derived seeds until the parity-check matrix has full rank; throws
// CodeConstructionError when no attempt succeeds.
LdpcCode make_ldpc_code(int n = 1000, int variable_degree = 5, int check_degree = 20,
                        std::uint64_t seed = 1);

// message (k bits) -> codeword (n bits)
std::vector<std::uint8_t> ldpc_encode(std::span<const std::uint8_t> message, const LdpcCode& code);

bool ldpc_parity_ok(std::span<const std::uint8_t> codeword, const LdpcCode& code);

// soft received symbols (+1/-1 plus noise, one per codeword bit) -> message bits
std::vector<std::uint8_t> ldpc_decode(std::span<const double> symbols, double noise_var,
                                      const LdpcCode& code);

// Block helpers for arbitrary-length bit streams; the tail block is padded
// with zeros and the pad is dropped after decoding.
std::vector<std::uint8_t> ldpc_encode_stream(std::span<const std::uint8_t> bits, const LdpcCode& code);
std::vector<std::uint8_t> ldpc_decode_stream(std::span<const double> symbols, double noise_var,
                                             std::size_t message_bits, const LdpcCode& code);

} // namespace topocode
