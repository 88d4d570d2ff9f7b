#ifndef MAMSEG_SEGMENT_HPP
#define MAMSEG_SEGMENT_HPP

#include "mamseg/clahe.hpp"
#include "mamseg/gabor.hpp"
#include "mamseg/image.hpp"

namespace mamseg {

enum class Reference { Max, Mean };

struct SegmentConfig {
    double t_low = 0.60;
    double t_high = 0.80;
    Reference reference = Reference::Max;
    int morph_radius = 3;
    double gain = 1.0;  // vessel-suppression gain
};

/// True where the pixel is inside `region` and at or above fraction * the
/// reference intensity (max or mean of the region pixels).
BinaryMask threshold(const GrayImage& image, const BinaryMask& region, double fraction,
                     Reference reference);

BinaryMask and_masks(const BinaryMask& a, const BinaryMask& b);

/// Binary opening / closing with a discrete disk {(dx,dy): dx^2+dy^2 <= r^2}.
/// Radius 0 is the identity; pixels outside the image read as false.
BinaryMask morph_open(const BinaryMask& mask, int radius);
BinaryMask morph_close(const BinaryMask& mask, int radius);

struct SegmentStages {
    GrayImage enhanced;
    FloatRaster response;
    GrayImage suppressed;
    BinaryMask low;
    BinaryMask high;
    BinaryMask fused;
    BinaryMask dense;
};

/// Full decision pipeline over an ROI: CLAHE (region-masked) -> superimposed
/// Gabor responses -> vessel suppression -> dual thresholds fused with AND ->
/// open, close. The result is constrained to `region`.
SegmentStages segment_dense_stages(const GrayImage& roi, const BinaryMask& region,
                                   const FilterBank& bank, const ClaheConfig& clahe_cfg,
                                   const SegmentConfig& cfg,
                                   Superposition mode = Superposition::Max);

BinaryMask segment_dense(const GrayImage& roi, const BinaryMask& region,
                         const FilterBank& bank, const ClaheConfig& clahe_cfg,
                         const SegmentConfig& cfg,
                         Superposition mode = Superposition::Max);

}  // namespace mamseg

#endif
