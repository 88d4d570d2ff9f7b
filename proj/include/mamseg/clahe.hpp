#ifndef MAMSEG_CLAHE_HPP
#define MAMSEG_CLAHE_HPP

#include <cstdint>
#include <vector>

#include "mamseg/image.hpp"

namespace mamseg {

struct ClaheConfig {
    int tiles_x = 8;
    int tiles_y = 8;
    double clip_limit = 4.0;  // fraction of tile pixel count per bin
    int bins = 256;
};

/// Cut bins above `limit` and redistribute the total excess equally across
/// all bins, remainder one-per-bin from bin 0 upward. Single pass, no
/// re-clipping; the total count is conserved exactly.
std::vector<std::uint64_t> clip_histogram(std::vector<std::uint64_t> hist,
                                          std::uint64_t limit);

/// Contrast limited adaptive histogram equalization. Per tile: clipped
/// histogram, cumulative mapping m(v) = round((cdf(v)-cdf_min)/(n-cdf_min) *
/// (2^depth-1)); per pixel: bilinear interpolation among the surrounding tile
/// mappings. Edge tiles absorb remainder pixels when dimensions do not divide
/// evenly.
GrayImage clahe(const GrayImage& image, const ClaheConfig& config);

/// Masked variant: pixels outside the mask are excluded from tile histograms
/// and map to 0 in the output.
GrayImage clahe(const GrayImage& image, const ClaheConfig& config, const BinaryMask& mask);

/// Per-tile equalization mappings (tiles_y * tiles_x rows, bins columns),
/// exposed for inspection; each row is monotone nondecreasing.
std::vector<std::vector<std::uint32_t>> clahe_tile_mappings(const GrayImage& image,
                                                            const ClaheConfig& config,
                                                            const BinaryMask* mask = nullptr);

}  // namespace mamseg

#endif
