#include "mamseg/convolve.hpp"

#include <algorithm>
#include <cmath>

namespace mamseg {

FloatRaster to_raster(const GrayImage& img) {
    FloatRaster r(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        r.values[i] = static_cast<double>(img.pixels[i]);
    return r;
}

namespace {

void check_kernel(const FloatRaster& input, const FloatRaster& kernel) {
    if (kernel.width < 1 || kernel.height < 1 || kernel.width % 2 == 0 || kernel.height % 2 == 0)
        throw data_error("convolve2d: kernel dimensions must be odd");
    if (kernel.width > input.width || kernel.height > input.height)
        throw data_error("convolve2d: kernel larger than image");
    for (double v : kernel.values)
        if (!std::isfinite(v)) throw data_error("convolve2d: non-finite kernel");
}

// Input extended by the kernel half-sizes on every side so the accumulation
// loops need no bounds checks.
FloatRaster pad_input(const FloatRaster& in, int hr, int wr, Border border) {
    FloatRaster pad(in.width + 2 * wr, in.height + 2 * hr, 0.0);
    for (int r = -hr; r < in.height + hr; ++r) {
        double* dst = &pad.values[static_cast<std::size_t>(r + hr) * pad.width];
        int sr = std::clamp(r, 0, in.height - 1);
        const double* src = &in.values[static_cast<std::size_t>(sr) * in.width];
        bool row_outside = (r != sr);
        for (int c = -wr; c < in.width + wr; ++c) {
            int sc = std::clamp(c, 0, in.width - 1);
            bool outside = row_outside || (c != sc);
            dst[c + wr] = (border == Border::Zero && outside) ? 0.0 : src[sc];
        }
    }
    return pad;
}

}  // namespace

FloatRaster convolve2d(const FloatRaster& input, const FloatRaster& kernel, Border border) {
    check_kernel(input, kernel);
    const int W = input.width, H = input.height;
    const int kw = kernel.width, kh = kernel.height;
    const int wr = kw / 2, hr = kh / 2;

    FloatRaster pad = pad_input(input, hr, wr, border);

    // True convolution: flip the kernel once, then accumulate as a plain
    // correlation over the padded buffer. The innermost loop runs over
    // contiguous columns and auto-vectorizes.
    std::vector<double> flipped(kernel.values.size());
    for (int u = 0; u < kh; ++u)
        for (int v = 0; v < kw; ++v)
            flipped[static_cast<std::size_t>(u) * kw + v] =
                kernel.values[static_cast<std::size_t>(kh - 1 - u) * kw + (kw - 1 - v)];

    FloatRaster out(W, H, 0.0);
    for (int r = 0; r < H; ++r) {
        double* out_row = &out.values[static_cast<std::size_t>(r) * W];
        for (int u = 0; u < kh; ++u) {
            const double* pad_row = &pad.values[static_cast<std::size_t>(r + u) * pad.width];
            const double* krow = &flipped[static_cast<std::size_t>(u) * kw];
            for (int v = 0; v < kw; ++v) {
                const double k = krow[v];
                const double* src = pad_row + v;
                for (int c = 0; c < W; ++c) out_row[c] += k * src[c];
            }
        }
    }
    return out;
}

FloatRaster convolve2d(const GrayImage& input, const FloatRaster& kernel, Border border) {
    return convolve2d(to_raster(input), kernel, border);
}

GrayImage rescale_to_depth(const FloatRaster& raster, int depth) {
    if (depth != 8 && depth != 16)
        throw data_error("rescale_to_depth: depth must be 8 or 16");
    if (raster.values.empty())
        throw data_error("rescale_to_depth: empty raster");
    for (double v : raster.values)
        if (!std::isfinite(v)) throw data_error("rescale_to_depth: non-finite value");

    const auto [mn_it, mx_it] = std::minmax_element(raster.values.begin(), raster.values.end());
    const double mn = *mn_it, mx = *mx_it;
    const double maxv = static_cast<double>((1u << depth) - 1u);

    GrayImage out(raster.width, raster.height, depth);
    if (mx == mn) return out;  // constant raster maps to 0
    const double scale = maxv / (mx - mn);
    for (std::size_t i = 0; i < raster.values.size(); ++i) {
        double mapped = (raster.values[i] - mn) * scale;
        long long q = round_half_up(mapped);
        q = std::clamp<long long>(q, 0, static_cast<long long>(maxv));
        out.pixels[i] = static_cast<std::uint16_t>(q);
    }
    return out;
}

}  // namespace mamseg
