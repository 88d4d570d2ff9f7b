#include "mamseg/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mamseg {

GaborParams default_params_for(int kernel_size) {
    GaborParams p;
    p.gamma = 0.5;
    p.lambda = kernel_size / 4.0;
    p.sigma = 0.56 * p.lambda;
    p.psi = 0.0;
    return p;
}

GaborKernel make_kernel(const GaborParams& params, int size) {
    if (size < 3 || size % 2 == 0)
        throw data_error("make_kernel: size must be odd and >= 3");
    if (!(params.lambda > 0.0) || !(params.sigma > 0.0) || !(params.gamma > 0.0))
        throw data_error("make_kernel: lambda, sigma and gamma must be positive");

    GaborKernel k;
    k.size = size;
    k.real.resize(static_cast<std::size_t>(size) * size);
    k.imag.resize(static_cast<std::size_t>(size) * size);

    const int half = (size - 1) / 2;
    const double ct = std::cos(params.theta);
    const double st = std::sin(params.theta);
    const double g2 = params.gamma * params.gamma;
    const double two_sigma2 = 2.0 * params.sigma * params.sigma;
    const double freq = 2.0 * std::numbers::pi / params.lambda;

    for (int r = 0; r < size; ++r) {
        const double y = static_cast<double>(r - half);
        for (int c = 0; c < size; ++c) {
            const double x = static_cast<double>(c - half);
            const double xp = x * ct + y * st;
            const double yp = y * ct - x * st;
            const double envelope = std::exp(-(xp * xp + g2 * yp * yp) / two_sigma2);
            const double phase = freq * xp + params.psi;
            const std::size_t i = static_cast<std::size_t>(r) * size + c;
            k.real[i] = envelope * std::cos(phase);
            k.imag[i] = envelope * std::sin(phase);
        }
    }
    return k;
}

FilterBank make_bank(const GaborParams& base, int n_orientations, int size) {
    if (n_orientations < 1)
        throw data_error("make_bank: need at least one orientation");

    FilterBank bank;
    bank.kernels.reserve(n_orientations);
    bank.thetas.reserve(n_orientations);
    for (int i = 0; i < n_orientations; ++i) {
        GaborParams p = base;
        p.theta = static_cast<double>(i) * std::numbers::pi / n_orientations;
        GaborKernel kernel = make_kernel(p, size);

        // Zero-mean real part: the raw Gabor carries a DC term for small
        // lambda/sigma which would make flat regions respond.
        double mean = 0.0;
        for (double v : kernel.real) mean += v;
        mean /= static_cast<double>(kernel.real.size());
        for (double& v : kernel.real) v -= mean;

        bank.kernels.push_back(std::move(kernel));
        bank.thetas.push_back(p.theta);
    }
    return bank;
}

int kernel_size_for(int width, int height) {
    const int m = std::min(width, height);
    if (m < 30)
        throw data_error("kernel_size_for: image too small (min dimension < 30)");
    int k = (m - 1) / 10;  // largest integer strictly below m/10
    if (k % 2 == 0) --k;
    return std::max(k, 3);
}

FloatRaster bank_response(const GrayImage& image, const FilterBank& bank,
                          Superposition mode, Border border) {
    if (bank.kernels.empty())
        throw data_error("bank_response: empty filter bank");
    for (const GaborKernel& k : bank.kernels)
        if (k.size > image.width || k.size > image.height)
            throw data_error("bank_response: kernel larger than image");

    const FloatRaster raster = to_raster(image);
    FloatRaster acc(image.width, image.height, 0.0);
    for (const GaborKernel& k : bank.kernels) {
        FloatRaster kr;
        kr.width = k.size;
        kr.height = k.size;
        kr.values = k.real;
        FloatRaster resp = convolve2d(raster, kr, border);
        for (std::size_t i = 0; i < acc.values.size(); ++i) {
            const double rectified = std::max(resp.values[i], 0.0);
            if (mode == Superposition::Max)
                acc.values[i] = std::max(acc.values[i], rectified);
            else
                acc.values[i] += rectified;
        }
    }
    return acc;
}

GrayImage suppress_vessels(const GrayImage& image, const FloatRaster& response, double gain) {
    require_same_dims(image.width, image.height, response.width, response.height,
                      "suppress_vessels");
    if (gain < 0.0)
        throw data_error("suppress_vessels: gain must be >= 0");

    const double maxv = static_cast<double>(image.max_value());
    const auto [mn_it, mx_it] =
        std::minmax_element(response.values.begin(), response.values.end());
    const double mn = *mn_it, mx = *mx_it;
    for (double v : response.values)
        if (!std::isfinite(v)) throw data_error("suppress_vessels: non-finite response");

    // A response whose spread is far below one intensity step carries no
    // structure (e.g. convolution roundoff on a constant image); rescaling it
    // to full range would amplify noise. Treat it as null.
    const double spread = mx - mn;
    GrayImage out(image.width, image.height, image.bit_depth);
    if (spread <= 1e-6 * maxv) {
        out.pixels = image.pixels;
        return out;
    }

    const double scale = maxv / spread;
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        const double scaled = (response.values[i] - mn) * scale;
        double v = static_cast<double>(image.pixels[i]) - gain * scaled;
        v = std::clamp(v, 0.0, maxv);
        out.pixels[i] = static_cast<std::uint16_t>(round_half_up(v));
    }
    return out;
}

}  // namespace mamseg
