#ifndef MAMSEG_PREPROCESS_HPP
#define MAMSEG_PREPROCESS_HPP

#include "mamseg/image.hpp"

namespace mamseg {

/// Half-open pixel box [row0,row1) x [col0,col1).
struct RoiBox {
    int row0 = 0, row1 = 0, col0 = 0, col1 = 0;

    int rows() const { return row1 - row0; }
    int cols() const { return col1 - col0; }
    bool operator==(const RoiBox&) const = default;
};

/// Per-line breast run statistics plus the mask bounding box.
struct BreastExtent {
    int widest_row = 0;    // row with the most true pixels (ties: smallest index)
    int max_width = 0;     // that count
    int tallest_col = 0;   // column with the most true pixels
    int max_height = 0;
    int leftmost_col = 0, rightmost_col = 0;
    int top_row = 0, bottom_row = 0;
};

/// Zero out pixels outside the mask.
GrayImage apply_mask(const GrayImage& image, const BinaryMask& mask);

struct OrientResult {
    GrayImage image;
    BinaryMask mask;
    bool flipped = false;
};

/// Horizontally flip image and mask when the mask centroid lies in the right
/// half, so breast tissue sits toward the left edge. Idempotent.
OrientResult orient_left(const GrayImage& image, const BinaryMask& mask);

BreastExtent breast_extent(const BinaryMask& mask);

/// Fibroglandular-disc ROI: a band of rows of height max_height/2 centered on
/// the widest row, and columns from one third of the breast width to its full
/// width (chest-wall side excluded), clamped to the image. Integer floor
/// division throughout.
RoiBox roi_box(const BreastExtent& extent, int image_width, int image_height);

GrayImage crop(const GrayImage& image, const RoiBox& box);
BinaryMask crop(const BinaryMask& mask, const RoiBox& box);

}  // namespace mamseg

#endif
