#ifndef MAMSEG_CONVOLVE_HPP
#define MAMSEG_CONVOLVE_HPP

#include "mamseg/image.hpp"

namespace mamseg {

enum class Border {
    Replicate,  // clamp coordinates to the image (default)
    Zero,       // out-of-bounds samples read as 0
};

/// Spatial 2D convolution (kernel flipped, true convolution). Output has the
/// same dimensions as the input. Kernel must be odd-sized in both dimensions
/// and no larger than the input.
FloatRaster convolve2d(const FloatRaster& input, const FloatRaster& kernel,
                       Border border = Border::Replicate);
FloatRaster convolve2d(const GrayImage& input, const FloatRaster& kernel,
                       Border border = Border::Replicate);

/// Affine map [min,max] -> [0, 2^depth - 1], round-half-up. A constant raster
/// maps to all zeros.
GrayImage rescale_to_depth(const FloatRaster& raster, int depth);

}  // namespace mamseg

#endif
