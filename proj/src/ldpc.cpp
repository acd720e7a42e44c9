#include "topocode/ldpc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "topocode/errors.hpp"
#include "topocode/rng.hpp"

namespace topocode {

namespace {

// dense GF(2) rows as 64-bit words
using BitRow = std::vector<std::uint64_t>;

bool get_bit(const BitRow& row, int i) { return (row[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1; }
void flip_bit(BitRow& row, int i) { row[static_cast<std::size_t>(i) / 64] ^= 1ULL << (i % 64); }

void xor_rows(BitRow& dst, const BitRow& src) {
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

// one seeded attempt at a regular edge assignment without parallel edges
bool try_build_graph(int n, int dv, int dc, std::uint64_t seed,
                     std::vector<std::vector<int>>& check_neighbors) {
    const int edges = n * dv;
    const int m = edges / dc;
    std::vector<int> stubs(static_cast<std::size_t>(edges));
    for (int e = 0; e < edges; ++e) stubs[static_cast<std::size_t>(e)] = e / dv;

    Rng rng(seed);
    for (int i = edges - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(i) + 1));
        std::swap(stubs[static_cast<std::size_t>(i)], stubs[static_cast<std::size_t>(j)]);
    }

    // repair duplicate variables within a check by swapping with random stubs
    for (int pass = 0; pass < 64; ++pass) {
        bool clean = true;
        for (int c = 0; c < m; ++c) {
            for (int a = c * dc; a < (c + 1) * dc; ++a) {
                for (int b = c * dc; b < a; ++b) {
                    if (stubs[static_cast<std::size_t>(a)] != stubs[static_cast<std::size_t>(b)]) continue;
                    clean = false;
                    const int other = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(edges)));
                    std::swap(stubs[static_cast<std::size_t>(a)], stubs[static_cast<std::size_t>(other)]);
                }
            }
        }
        if (clean) {
            check_neighbors.assign(static_cast<std::size_t>(m), {});
            for (int c = 0; c < m; ++c)
                for (int e = c * dc; e < (c + 1) * dc; ++e)
                    check_neighbors[static_cast<std::size_t>(c)].push_back(stubs[static_cast<std::size_t>(e)]);
            return true;
        }
    }
    return false;
}

} // namespace

LdpcCode make_ldpc_code(int n, int variable_degree, int check_degree, std::uint64_t seed) {
    if (n <= 0 || (n * variable_degree) % check_degree != 0)
        throw CodeConstructionError("make_ldpc_code: n * dv must be divisible by dc");
    const int m = n * variable_degree / check_degree;

    for (int attempt = 0; attempt < 100; ++attempt) {
        const std::uint64_t attempt_seed = split_seed(seed, static_cast<std::uint64_t>(attempt));
        std::vector<std::vector<int>> check_neighbors;
        if (!try_build_graph(n, variable_degree, check_degree, attempt_seed, check_neighbors)) continue;

        // Gaussian elimination to reduced row-echelon form
        const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
        std::vector<BitRow> rows(static_cast<std::size_t>(m), BitRow(words, 0));
        for (int c = 0; c < m; ++c)
            for (int v : check_neighbors[static_cast<std::size_t>(c)])
                flip_bit(rows[static_cast<std::size_t>(c)], v);

        std::vector<int> pivot_columns;
        int rank = 0;
        for (int col = 0; col < n && rank < m; ++col) {
            int pivot = -1;
            for (int r = rank; r < m; ++r) {
                if (get_bit(rows[static_cast<std::size_t>(r)], col)) { pivot = r; break; }
            }
            if (pivot < 0) continue;
            std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
            for (int r = 0; r < m; ++r)
                if (r != rank && get_bit(rows[static_cast<std::size_t>(r)], col))
                    xor_rows(rows[static_cast<std::size_t>(r)], rows[static_cast<std::size_t>(rank)]);
            pivot_columns.push_back(col);
            ++rank;
        }
        if (rank < m) continue; // rank-deficient draw; try the next seed

        LdpcCode code;
        code.n = n;
        code.m = m;
        code.k = n - m;
        code.variable_degree = variable_degree;
        code.check_degree = check_degree;
        code.seed = attempt_seed;
        code.check_neighbors = std::move(check_neighbors);
        code.variable_neighbors.assign(static_cast<std::size_t>(n), {});
        for (int c = 0; c < m; ++c)
            for (int v : code.check_neighbors[static_cast<std::size_t>(c)])
                code.variable_neighbors[static_cast<std::size_t>(v)].push_back(c);
        code.pivot_columns = pivot_columns;

        std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
        for (int col : pivot_columns) is_pivot[static_cast<std::size_t>(col)] = 1;
        std::vector<int> message_index(static_cast<std::size_t>(n), -1);
        for (int col = 0; col < n; ++col) {
            if (is_pivot[static_cast<std::size_t>(col)]) continue;
            message_index[static_cast<std::size_t>(col)] = static_cast<int>(code.free_columns.size());
            code.free_columns.push_back(col);
        }

        // per pivot row: which message bits feed its parity bit
        const std::size_t kwords = (static_cast<std::size_t>(code.k) + 63) / 64;
        code.parity_map.assign(static_cast<std::size_t>(m), BitRow(kwords, 0));
        for (int r = 0; r < m; ++r)
            for (int col = 0; col < n; ++col)
                if (!is_pivot[static_cast<std::size_t>(col)] && get_bit(rows[static_cast<std::size_t>(r)], col))
                    flip_bit(code.parity_map[static_cast<std::size_t>(r)], message_index[static_cast<std::size_t>(col)]);
        return code;
    }
    throw CodeConstructionError("make_ldpc_code: no full-rank construction found");
}

std::vector<std::uint8_t> ldpc_encode(std::span<const std::uint8_t> message, const LdpcCode& code) {
    if (message.size() != static_cast<std::size_t>(code.k))
        throw ValueError("ldpc_encode: message length must equal k");

    const std::size_t kwords = (static_cast<std::size_t>(code.k) + 63) / 64;
    BitRow message_bits(kwords, 0);
    for (int i = 0; i < code.k; ++i)
        if (message[static_cast<std::size_t>(i)]) flip_bit(message_bits, i);

    std::vector<std::uint8_t> codeword(static_cast<std::size_t>(code.n), 0);
    for (int i = 0; i < code.k; ++i)
        codeword[static_cast<std::size_t>(code.free_columns[static_cast<std::size_t>(i)])] = message[static_cast<std::size_t>(i)];
    for (int r = 0; r < code.m; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < kwords; ++w)
            acc ^= code.parity_map[static_cast<std::size_t>(r)][w] & message_bits[w];
        codeword[static_cast<std::size_t>(code.pivot_columns[static_cast<std::size_t>(r)])] =
            static_cast<std::uint8_t>(std::popcount(acc) & 1);
    }
    return codeword;
}

bool ldpc_parity_ok(std::span<const std::uint8_t> codeword, const LdpcCode& code) {
    for (const auto& neighbors : code.check_neighbors) {
        int sum = 0;
        for (int v : neighbors) sum ^= codeword[static_cast<std::size_t>(v)];
        if (sum) return false;
    }
    return true;
}

std::vector<std::uint8_t> ldpc_decode(std::span<const double> symbols, double noise_var,
                                      const LdpcCode& code) {
    if (symbols.size() != static_cast<std::size_t>(code.n))
        throw ValueError("ldpc_decode: symbol count must equal n");

    const int edges = code.n * code.variable_degree;
    std::vector<double> llr(static_cast<std::size_t>(code.n));
    for (int i = 0; i < code.n; ++i) llr[static_cast<std::size_t>(i)] = 2.0 * symbols[static_cast<std::size_t>(i)] / noise_var;

    // edge storage grouped by check
    std::vector<int> edge_variable(static_cast<std::size_t>(edges));
    std::vector<std::vector<int>> variable_edges(static_cast<std::size_t>(code.n));
    {
        int e = 0;
        for (int c = 0; c < code.m; ++c) {
            for (int v : code.check_neighbors[static_cast<std::size_t>(c)]) {
                edge_variable[static_cast<std::size_t>(e)] = v;
                variable_edges[static_cast<std::size_t>(v)].push_back(e);
                ++e;
            }
        }
    }

    std::vector<double> v2c(static_cast<std::size_t>(edges));
    std::vector<double> c2v(static_cast<std::size_t>(edges), 0.0);
    for (int e = 0; e < edges; ++e) v2c[static_cast<std::size_t>(e)] = llr[static_cast<std::size_t>(edge_variable[static_cast<std::size_t>(e)])];

    std::vector<std::uint8_t> hard(static_cast<std::size_t>(code.n), 0);
    std::vector<double> posterior(static_cast<std::size_t>(code.n));

    for (int iteration = 0; iteration < code.max_iterations; ++iteration) {
        // check update: normalized min-sum
        int e0 = 0;
        for (int c = 0; c < code.m; ++c) {
            const int degree = static_cast<int>(code.check_neighbors[static_cast<std::size_t>(c)].size());
            double min1 = 1e300, min2 = 1e300;
            int min_edge = -1;
            int sign_product = 1;
            for (int e = e0; e < e0 + degree; ++e) {
                const double v = v2c[static_cast<std::size_t>(e)];
                const double mag = std::abs(v);
                if (v < 0) sign_product = -sign_product;
                if (mag < min1) { min2 = min1; min1 = mag; min_edge = e; }
                else if (mag < min2) { min2 = mag; }
            }
            for (int e = e0; e < e0 + degree; ++e) {
                const double v = v2c[static_cast<std::size_t>(e)];
                const int sign = sign_product * (v < 0 ? -1 : 1);
                const double mag = (e == min_edge) ? min2 : min1;
                c2v[static_cast<std::size_t>(e)] = code.normalization * sign * mag;
            }
            e0 += degree;
        }

        // variable update and hard decision
        for (int v = 0; v < code.n; ++v) {
            double total = llr[static_cast<std::size_t>(v)];
            for (int e : variable_edges[static_cast<std::size_t>(v)]) total += c2v[static_cast<std::size_t>(e)];
            posterior[static_cast<std::size_t>(v)] = total;
            hard[static_cast<std::size_t>(v)] = total < 0 ? 1 : 0;
            for (int e : variable_edges[static_cast<std::size_t>(v)])
                v2c[static_cast<std::size_t>(e)] = total - c2v[static_cast<std::size_t>(e)];
        }

        if (ldpc_parity_ok(hard, code)) break;
    }

    std::vector<std::uint8_t> message(static_cast<std::size_t>(code.k));
    for (int i = 0; i < code.k; ++i)
        message[static_cast<std::size_t>(i)] = hard[static_cast<std::size_t>(code.free_columns[static_cast<std::size_t>(i)])];
    return message;
}

std::vector<std::uint8_t> ldpc_encode_stream(std::span<const std::uint8_t> bits, const LdpcCode& code) {
    const std::size_t k = static_cast<std::size_t>(code.k);
    const std::size_t blocks = (bits.size() + k - 1) / k;
    std::vector<std::uint8_t> out;
    out.reserve(blocks * static_cast<std::size_t>(code.n));
    std::vector<std::uint8_t> block(k, 0);
    for (std::size_t b = 0; b < blocks; ++b) {
        std::fill(block.begin(), block.end(), 0);
        const std::size_t start = b * k;
        const std::size_t count = std::min(k, bits.size() - start);
        std::copy(bits.begin() + static_cast<std::ptrdiff_t>(start),
                  bits.begin() + static_cast<std::ptrdiff_t>(start + count), block.begin());
        const auto codeword = ldpc_encode(block, code);
        out.insert(out.end(), codeword.begin(), codeword.end());
    }
    return out;
}

std::vector<std::uint8_t> ldpc_decode_stream(std::span<const double> symbols, double noise_var,
                                             std::size_t message_bits, const LdpcCode& code) {
    const std::size_t n = static_cast<std::size_t>(code.n);
    const std::size_t blocks = symbols.size() / n;
    std::vector<std::uint8_t> out;
    out.reserve(blocks * static_cast<std::size_t>(code.k));
    for (std::size_t b = 0; b < blocks; ++b) {
        const auto message = ldpc_decode(symbols.subspan(b * n, n), noise_var, code);
        out.insert(out.end(), message.begin(), message.end());
    }
    out.resize(message_bits);
    return out;
}

} // namespace topocode
