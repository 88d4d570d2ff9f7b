#include "mamseg/segment.hpp"

#include <algorithm>
#include <cmath>

namespace mamseg {

BinaryMask threshold(const GrayImage& image, const BinaryMask& region, double fraction,
                     Reference reference) {
    require_same_dims(image.width, image.height, region.width, region.height, "threshold");
    if (fraction < 0.0 || fraction > 1.0)
        throw data_error("threshold: fraction must lie in [0,1]");

    std::uint32_t max_val = 0;
    std::uint64_t sum = 0, n = 0;
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        if (!region.bits[i]) continue;
        max_val = std::max<std::uint32_t>(max_val, image.pixels[i]);
        sum += image.pixels[i];
        ++n;
    }
    if (n == 0)
        throw data_error("threshold: empty region");

    const double ref = reference == Reference::Max
                           ? static_cast<double>(max_val)
                           : static_cast<double>(sum) / static_cast<double>(n);
    const double cut = fraction * ref;

    // A positive fraction never admits zero-intensity pixels; otherwise an
    // all-zero region (reference 0) would pass everything.
    const bool require_positive = fraction > 0.0;
    BinaryMask out(image.width, image.height);
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        const bool pass = static_cast<double>(image.pixels[i]) >= cut &&
                          (!require_positive || image.pixels[i] > 0);
        out.bits[i] = (region.bits[i] && pass) ? 1 : 0;
    }
    return out;
}

BinaryMask and_masks(const BinaryMask& a, const BinaryMask& b) {
    require_same_dims(a.width, a.height, b.width, b.height, "and_masks");
    BinaryMask out(a.width, a.height);
    for (std::size_t i = 0; i < a.bits.size(); ++i)
        out.bits[i] = (a.bits[i] && b.bits[i]) ? 1 : 0;
    return out;
}

namespace {

std::vector<std::pair<int, int>> disk_offsets(int radius) {
    std::vector<std::pair<int, int>> off;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dx * dx + dy * dy <= radius * radius) off.emplace_back(dy, dx);
    return off;
}

// Erosion/dilation over an explicit domain; reads outside [0,h)x[0,w) are false.
BinaryMask erode(const BinaryMask& m, const std::vector<std::pair<int, int>>& off) {
    BinaryMask out(m.width, m.height);
    for (int r = 0; r < m.height; ++r)
        for (int c = 0; c < m.width; ++c) {
            bool all = true;
            for (auto [dy, dx] : off) {
                const int rr = r + dy, cc = c + dx;
                if (rr < 0 || rr >= m.height || cc < 0 || cc >= m.width || !m.at(rr, cc)) {
                    all = false;
                    break;
                }
            }
            out.set(r, c, all);
        }
    return out;
}

BinaryMask dilate(const BinaryMask& m, const std::vector<std::pair<int, int>>& off) {
    BinaryMask out(m.width, m.height);
    for (int r = 0; r < m.height; ++r)
        for (int c = 0; c < m.width; ++c) {
            bool any = false;
            for (auto [dy, dx] : off) {
                const int rr = r + dy, cc = c + dx;
                if (rr >= 0 && rr < m.height && cc >= 0 && cc < m.width && m.at(rr, cc)) {
                    any = true;
                    break;
                }
            }
            out.set(r, c, any);
        }
    return out;
}

}  // namespace

BinaryMask morph_open(const BinaryMask& mask, int radius) {
    if (radius < 0)
        throw data_error("morph_open: radius must be >= 0");
    if (radius == 0) return mask;
    const auto off = disk_offsets(radius);
    return dilate(erode(mask, off), off);
}

BinaryMask morph_close(const BinaryMask& mask, int radius) {
    if (radius < 0)
        throw data_error("morph_close: radius must be >= 0");
    if (radius == 0) return mask;
    const auto off = disk_offsets(radius);

    // Dilate into a radius-padded frame before eroding: clipping the dilation
    // at the image border would lose border pixels and break extensivity
    // (m must be a subset of close(m)).
    BinaryMask padded(mask.width + 2 * radius, mask.height + 2 * radius);
    for (int r = 0; r < mask.height; ++r)
        for (int c = 0; c < mask.width; ++c)
            padded.set(r + radius, c + radius, mask.at(r, c));
    const BinaryMask closed = erode(dilate(padded, off), off);

    BinaryMask out(mask.width, mask.height);
    for (int r = 0; r < mask.height; ++r)
        for (int c = 0; c < mask.width; ++c)
            out.set(r, c, closed.at(r + radius, c + radius));
    return out;
}

SegmentStages segment_dense_stages(const GrayImage& roi, const BinaryMask& region,
                                   const FilterBank& bank, const ClaheConfig& clahe_cfg,
                                   const SegmentConfig& cfg, Superposition mode) {
    require_same_dims(roi.width, roi.height, region.width, region.height, "segment_dense");
    if (!(cfg.t_low > 0.0) || cfg.t_low > cfg.t_high || cfg.t_high > 1.0)
        throw data_error("segment_dense: need 0 < t_low <= t_high <= 1");

    SegmentStages s;
    s.enhanced = clahe(roi, clahe_cfg, region);
    s.response = bank_response(s.enhanced, bank, mode);
    s.suppressed = suppress_vessels(s.enhanced, s.response, cfg.gain);
    s.low = threshold(s.suppressed, region, cfg.t_low, cfg.reference);
    s.high = threshold(s.suppressed, region, cfg.t_high, cfg.reference);
    s.fused = and_masks(s.low, s.high);
    BinaryMask cleaned = morph_close(morph_open(s.fused, cfg.morph_radius), cfg.morph_radius);
    s.dense = and_masks(cleaned, region);  // closing may bleed past the region
    return s;
}

BinaryMask segment_dense(const GrayImage& roi, const BinaryMask& region, const FilterBank& bank,
                         const ClaheConfig& clahe_cfg, const SegmentConfig& cfg,
                         Superposition mode) {
    return segment_dense_stages(roi, region, bank, clahe_cfg, cfg, mode).dense;
}

}  // namespace mamseg
