// Independent reference implementations used to check the library. These are
// deliberately written as direct transcriptions of the definitions (quadruple
// loops, per-pixel set scans) and share no code with the implementations they
// verify.

#ifndef MAMSEG_TESTS_ORACLES_HPP
#define MAMSEG_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <random>

#include "mamseg/convolve.hpp"
#include "mamseg/image.hpp"

namespace oracle {

// Direct evaluation of out(r,c) = sum_{u,v} k(u,v) * in(r-u+h, c-v+w).
inline mamseg::FloatRaster convolve(const mamseg::FloatRaster& in,
                                    const mamseg::FloatRaster& kernel, mamseg::Border border) {
    const int h = kernel.height / 2;
    const int w = kernel.width / 2;
    mamseg::FloatRaster out(in.width, in.height, 0.0);
    for (int r = 0; r < in.height; ++r)
        for (int c = 0; c < in.width; ++c) {
            double acc = 0.0;
            for (int u = 0; u < kernel.height; ++u)
                for (int v = 0; v < kernel.width; ++v) {
                    int i = r - u + h;
                    int j = c - v + w;
                    double sample;
                    if (i >= 0 && i < in.height && j >= 0 && j < in.width) {
                        sample = in.at(i, j);
                    } else if (border == mamseg::Border::Zero) {
                        sample = 0.0;
                    } else {
                        i = std::min(std::max(i, 0), in.height - 1);
                        j = std::min(std::max(j, 0), in.width - 1);
                        sample = in.at(i, j);
                    }
                    acc += kernel.at(u, v) * sample;
                }
            out.at(r, c) = acc;
        }
    return out;
}

// Plain global histogram equalization over one histogram bin per intensity
// level (8-bit images).
inline mamseg::GrayImage equalize_global(const mamseg::GrayImage& img) {
    const int levels = 256;
    std::vector<long long> hist(levels, 0);
    for (auto v : img.pixels) ++hist[v];
    std::vector<long long> cdf(levels, 0);
    long long run = 0;
    for (int v = 0; v < levels; ++v) {
        run += hist[v];
        cdf[v] = run;
    }
    long long cdf_min = 0;
    for (int v = 0; v < levels; ++v)
        if (cdf[v] > 0) {
            cdf_min = cdf[v];
            break;
        }
    const long long n = static_cast<long long>(img.pixels.size());
    mamseg::GrayImage out(img.width, img.height, 8);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        if (n == cdf_min) {
            out.pixels[i] = 0;
            continue;
        }
        const double m =
            static_cast<double>(cdf[img.pixels[i]] - cdf_min) / static_cast<double>(n - cdf_min) * 255.0;
        out.pixels[i] = static_cast<std::uint16_t>(std::floor(m + 0.5));
    }
    return out;
}

// Set-definition binary morphology on the infinite plane (mask false outside),
// restricted back to the image window.
inline bool disk_member(int dy, int dx, int radius) {
    return dy * dy + dx * dx <= radius * radius;
}

inline mamseg::BinaryMask erode_set(const mamseg::BinaryMask& m, int radius) {
    mamseg::BinaryMask out(m.width, m.height);
    for (int r = 0; r < m.height; ++r)
        for (int c = 0; c < m.width; ++c) {
            bool keep = true;
            for (int dy = -radius; dy <= radius && keep; ++dy)
                for (int dx = -radius; dx <= radius && keep; ++dx) {
                    if (!disk_member(dy, dx, radius)) continue;
                    const int rr = r + dy, cc = c + dx;
                    const bool inside =
                        rr >= 0 && rr < m.height && cc >= 0 && cc < m.width && m.at(rr, cc);
                    if (!inside) keep = false;
                }
            out.set(r, c, keep);
        }
    return out;
}

inline mamseg::BinaryMask dilate_set(const mamseg::BinaryMask& m, int radius) {
    mamseg::BinaryMask out(m.width, m.height);
    for (int r = 0; r < m.height; ++r)
        for (int c = 0; c < m.width; ++c) {
            bool hit = false;
            for (int dy = -radius; dy <= radius && !hit; ++dy)
                for (int dx = -radius; dx <= radius && !hit; ++dx) {
                    if (!disk_member(dy, dx, radius)) continue;
                    const int rr = r + dy, cc = c + dx;
                    if (rr >= 0 && rr < m.height && cc >= 0 && cc < m.width && m.at(rr, cc))
                        hit = true;
                }
            out.set(r, c, hit);
        }
    return out;
}

inline mamseg::BinaryMask open_set(const mamseg::BinaryMask& m, int radius) {
    return dilate_set(erode_set(m, radius), radius);
}

// Closing computed on a canvas padded far enough that no dilated pixel is
// clipped, then cropped.
inline mamseg::BinaryMask close_set(const mamseg::BinaryMask& m, int radius) {
    const int pad = radius + 1;
    mamseg::BinaryMask big(m.width + 2 * pad, m.height + 2 * pad);
    for (int r = 0; r < m.height; ++r)
        for (int c = 0; c < m.width; ++c) big.set(r + pad, c + pad, m.at(r, c));
    const mamseg::BinaryMask closed = erode_set(dilate_set(big, radius), radius);
    mamseg::BinaryMask out(m.width, m.height);
    for (int r = 0; r < m.height; ++r)
        for (int c = 0; c < m.width; ++c) out.set(r, c, closed.at(r + pad, c + pad));
    return out;
}

inline double dice(const mamseg::BinaryMask& a, const mamseg::BinaryMask& b) {
    long long inter = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.bits.size(); ++i) {
        na += a.bits[i] != 0;
        nb += b.bits[i] != 0;
        inter += (a.bits[i] && b.bits[i]);
    }
    return na + nb == 0 ? 1.0 : 2.0 * static_cast<double>(inter) / static_cast<double>(na + nb);
}

inline bool subset(const mamseg::BinaryMask& a, const mamseg::BinaryMask& b) {
    for (std::size_t i = 0; i < a.bits.size(); ++i)
        if (a.bits[i] && !b.bits[i]) return false;
    return true;
}

inline mamseg::GrayImage random_image(std::mt19937& rng, int w, int h, int depth) {
    mamseg::GrayImage img(w, h, depth);
    std::uniform_int_distribution<std::uint32_t> dist(0, (1u << depth) - 1u);
    for (auto& p : img.pixels) p = static_cast<std::uint16_t>(dist(rng));
    return img;
}

inline mamseg::BinaryMask random_mask(std::mt19937& rng, int w, int h, double density = 0.5) {
    mamseg::BinaryMask m(w, h);
    std::bernoulli_distribution dist(density);
    for (auto& b : m.bits) b = dist(rng) ? 1 : 0;
    return m;
}

inline mamseg::FloatRaster random_raster(std::mt19937& rng, int w, int h, double lo = -1.0,
                                         double hi = 1.0) {
    mamseg::FloatRaster r(w, h);
    std::uniform_real_distribution<double> dist(lo, hi);
    for (auto& v : r.values) v = dist(rng);
    return r;
}

}  // namespace oracle

#endif
