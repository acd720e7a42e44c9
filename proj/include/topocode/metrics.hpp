#pragma once

#include <cstddef>
#include <string>

#include "topocode/image.hpp"

namespace topocode {

// 10 log10(1 / MSE) on normalized images (peak 1.0); +infinity for identical
// inputs. Throws DimensionError on mismatched dimensions.
double psnr(const GrayImage& a, const GrayImage& b);

// Mean SSIM: 11x11 Gaussian window, sigma 1.5, K1 = 0.01, K2 = 0.03, L = 1,
// averaged over valid window positions (no padding). Images smaller than the
// window fall back to a single global window.
double ssim(const GrayImage& a, const GrayImage& b);

enum class Scheme { uncoded, topocode, topocode_no_boundary, ldpc, conv };

std::string scheme_name(Scheme scheme);

// On-air bits per image: the 8 H W payload plus, per scheme, the Topocode
// coordinate bytes (uncoded diagrams ride along), LDPC block expansion
// (ceil(bits / k) blocks of n), or the rate-2/3 convolutional expansion with
// its termination tail.
long packet_length_bits(Scheme scheme, int width, int height, std::size_t topocode_coordinate_bytes,
                        int ldpc_n = 1000, int ldpc_k = 750);

} // namespace topocode
