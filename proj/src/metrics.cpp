#include "topocode/metrics.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "topocode/conv.hpp"
#include "topocode/errors.hpp"

namespace topocode {

double psnr(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw DimensionError("psnr: image dimensions differ");
    double mse = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = a.pixels[i] - b.pixels[i];
        mse += d * d;
    }
    mse /= static_cast<double>(a.pixels.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01; // (K1 L)^2
constexpr double kC2 = 0.03 * 0.03; // (K2 L)^2

std::vector<double> gaussian_window(int size, double sigma) {
    std::vector<double> w(static_cast<std::size_t>(size) * size);
    const int half = size / 2;
    double total = 0.0;
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double dy = y - half, dx = x - half;
            const double g = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            w[static_cast<std::size_t>(y) * size + x] = g;
            total += g;
        }
    }
    for (double& v : w) v /= total;
    return w;
}

double windowed_ssim(const GrayImage& a, const GrayImage& b, int top, int left, int size,
                     const std::vector<double>& weights) {
    double mu_a = 0.0, mu_b = 0.0;
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double w = weights[static_cast<std::size_t>(y) * size + x];
            mu_a += w * a.at(top + y, left + x);
            mu_b += w * b.at(top + y, left + x);
        }
    }
    double var_a = 0.0, var_b = 0.0, cov = 0.0;
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double w = weights[static_cast<std::size_t>(y) * size + x];
            const double da = a.at(top + y, left + x) - mu_a;
            const double db = b.at(top + y, left + x) - mu_b;
            var_a += w * da * da;
            var_b += w * db * db;
            cov += w * da * db;
        }
    }
    return ((2.0 * mu_a * mu_b + kC1) * (2.0 * cov + kC2)) /
           ((mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2));
}

} // namespace

double ssim(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw DimensionError("ssim: image dimensions differ");

    const int size = std::min({kWindow, a.width, a.height});
    const std::vector<double> weights = gaussian_window(size, kSigma);

    double total = 0.0;
    long count = 0;
    for (int top = 0; top + size <= a.height; ++top) {
        for (int left = 0; left + size <= a.width; ++left) {
            total += windowed_ssim(a, b, top, left, size, weights);
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

long packet_length_bits(Scheme scheme, int width, int height, std::size_t topocode_coordinate_bytes,
                        int ldpc_n, int ldpc_k) {
    const long payload_bits = 8L * width * height;
    switch (scheme) {
    case Scheme::uncoded:
        return payload_bits;
    case Scheme::topocode:
    case Scheme::topocode_no_boundary:
        return payload_bits + 8L * static_cast<long>(topocode_coordinate_bytes);
    case Scheme::ldpc: {
        const long blocks = (payload_bits + ldpc_k - 1) / ldpc_k;
        return blocks * ldpc_n;
    }
    case Scheme::conv:
        return static_cast<long>(conv_coded_length(static_cast<std::size_t>(payload_bits), ConvCode{}));
    }
    return payload_bits;
}

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
    case Scheme::uncoded: return "uncoded";
    case Scheme::topocode: return "topocode";
    case Scheme::topocode_no_boundary: return "topocode-no-boundary";
    case Scheme::ldpc: return "ldpc";
    case Scheme::conv: return "conv";
    }
    return "unknown";
}

} // namespace topocode
