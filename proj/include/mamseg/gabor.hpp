#ifndef MAMSEG_GABOR_HPP
#define MAMSEG_GABOR_HPP

#include <vector>

#include "mamseg/convolve.hpp"
#include "mamseg/image.hpp"

namespace mamseg {

/// Parameters of one Gabor filter: orientation theta (radians), spatial
/// aspect ratio gamma, sinusoid wavelength lambda (pixels/cycle), Gaussian
/// envelope width sigma (pixels), phase offset psi (radians).
struct GaborParams {
    double theta = 0.0;
    double gamma = 0.5;
    double lambda = 8.0;
    double sigma = 0.56 * 8.0;
    double psi = 0.0;
};

/// Default bank parameters for a given kernel size: gamma 0.5, lambda a
/// quarter of the kernel side (about four visible wavelengths across the
/// window), sigma = 0.56 * lambda, psi 0.
GaborParams default_params_for(int kernel_size);

/// Sampled kernel: size x size row-major buffers of the real and imaginary
/// parts. Grid coordinates run x,y in [-(size-1)/2, +(size-1)/2], x along
/// columns, y along rows.
struct GaborKernel {
    int size = 0;
    std::vector<double> real;
    std::vector<double> imag;

    double real_at(int r, int c) const {
        return real[static_cast<std::size_t>(r) * size + c];
    }
    double imag_at(int r, int c) const {
        return imag[static_cast<std::size_t>(r) * size + c];
    }
};

struct FilterBank {
    std::vector<GaborKernel> kernels;
    std::vector<double> thetas;  // strictly increasing within [0, pi)
};

enum class Superposition { Max, Sum };

/// Sample the complex Gabor at the given size (odd, >= 3). No normalization
/// is applied; the center sample of the real part equals cos(psi) exactly.
GaborKernel make_kernel(const GaborParams& params, int size);

/// Bank at orientations theta_k = k*pi/n, all other parameters shared
/// (base.theta is ignored). Each kernel's real part is shifted to zero mean
/// so constant regions produce a null response.
FilterBank make_bank(const GaborParams& base, int n_orientations, int size);

/// Largest odd kernel side strictly below one tenth of the smaller image
/// dimension, floored at 3. Requires min(width, height) >= 30.
int kernel_size_for(int width, int height);

/// Convolve the image with each kernel's real part and superimpose the
/// rectified (negative-clipped) responses, by pixelwise maximum by default.
FloatRaster bank_response(const GrayImage& image, const FilterBank& bank,
                          Superposition mode = Superposition::Max,
                          Border border = Border::Replicate);

/// Rescale the response onto the image's intensity range and subtract it,
/// scaled by `gain`, from the image; clamped and rounded to the image depth.
GrayImage suppress_vessels(const GrayImage& image, const FloatRaster& response, double gain);

}  // namespace mamseg

#endif
