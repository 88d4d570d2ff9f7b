#include "mamseg/clahe.hpp"

#include <algorithm>
#include <cmath>

namespace mamseg {

std::vector<std::uint64_t> clip_histogram(std::vector<std::uint64_t> hist,
                                          std::uint64_t limit) {
    if (limit < 1)
        throw data_error("clip_histogram: limit must be >= 1");
    if (hist.empty()) return hist;

    std::uint64_t excess = 0;
    for (std::uint64_t& h : hist)
        if (h > limit) {
            excess += h - limit;
            h = limit;
        }
    const std::uint64_t bins = hist.size();
    const std::uint64_t base = excess / bins;
    const std::uint64_t rem = excess % bins;
    for (std::uint64_t b = 0; b < bins; ++b)
        hist[b] += base + (b < rem ? 1 : 0);
    return hist;
}

namespace {

struct TileGrid {
    std::vector<int> x0, x1, y0, y1;  // half-open tile spans
    std::vector<double> cx, cy;       // tile centers in pixel coordinates
};

TileGrid make_grid(int width, int height, int tiles_x, int tiles_y) {
    TileGrid g;
    const int tw = width / tiles_x;
    const int th = height / tiles_y;
    for (int t = 0; t < tiles_x; ++t) {
        g.x0.push_back(t * tw);
        g.x1.push_back(t + 1 == tiles_x ? width : (t + 1) * tw);  // last absorbs remainder
        g.cx.push_back((g.x0.back() + g.x1.back() - 1) / 2.0);
    }
    for (int t = 0; t < tiles_y; ++t) {
        g.y0.push_back(t * th);
        g.y1.push_back(t + 1 == tiles_y ? height : (t + 1) * th);
        g.cy.push_back((g.y0.back() + g.y1.back() - 1) / 2.0);
    }
    return g;
}

// Neighbor pair and interpolation weight along one axis given tile centers.
void axis_neighbors(const std::vector<double>& centers, double coord,
                    int& lo, int& hi, double& w) {
    const int n = static_cast<int>(centers.size());
    if (coord <= centers.front()) {
        lo = hi = 0;
        w = 0.0;
        return;
    }
    if (coord >= centers.back()) {
        lo = hi = n - 1;
        w = 0.0;
        return;
    }
    int t = 0;
    while (t + 1 < n && centers[t + 1] <= coord) ++t;
    lo = t;
    hi = t + 1;
    w = (coord - centers[t]) / (centers[t + 1] - centers[t]);
}

int bin_of(std::uint16_t v, int bins, int depth) {
    return static_cast<int>((static_cast<std::uint64_t>(v) * static_cast<std::uint64_t>(bins)) >>
                            depth);
}

void validate(const GrayImage& image, const ClaheConfig& cfg, const BinaryMask* mask) {
    if (cfg.tiles_x < 1 || cfg.tiles_y < 1)
        throw data_error("clahe: tile counts must be >= 1");
    if (image.width < cfg.tiles_x || image.height < cfg.tiles_y)
        throw data_error("clahe: tile grid exceeds image dimensions");
    if (cfg.bins < 1)
        throw data_error("clahe: bins must be >= 1");
    if (!(cfg.clip_limit > 0.0))
        throw data_error("clahe: clip limit must be positive");
    if (mask)
        require_same_dims(image.width, image.height, mask->width, mask->height, "clahe");
}

std::vector<std::vector<std::uint32_t>> build_mappings(const GrayImage& image,
                                                       const ClaheConfig& cfg,
                                                       const BinaryMask* mask,
                                                       const TileGrid& grid) {
    const double maxv = static_cast<double>(image.max_value());
    std::vector<std::vector<std::uint32_t>> mappings;
    mappings.reserve(static_cast<std::size_t>(cfg.tiles_x) * cfg.tiles_y);

    for (int ty = 0; ty < cfg.tiles_y; ++ty) {
        for (int tx = 0; tx < cfg.tiles_x; ++tx) {
            std::vector<std::uint64_t> hist(cfg.bins, 0);
            std::uint64_t n = 0;
            for (int r = grid.y0[ty]; r < grid.y1[ty]; ++r)
                for (int c = grid.x0[tx]; c < grid.x1[tx]; ++c) {
                    if (mask && !mask->at(r, c)) continue;
                    ++hist[bin_of(image.at(r, c), cfg.bins, image.bit_depth)];
                    ++n;
                }

            std::vector<std::uint32_t> map(cfg.bins, 0);
            if (n == 0) {
                // All-background tile: identity ramp so interpolation near the
                // mask boundary degrades gracefully.
                for (int b = 0; b < cfg.bins; ++b)
                    map[b] = cfg.bins > 1 ? static_cast<std::uint32_t>(round_half_up(
                                                b * maxv / (cfg.bins - 1)))
                                          : 0;
            } else {
                const std::uint64_t limit = std::max<std::uint64_t>(
                    1, static_cast<std::uint64_t>(std::floor(
                           cfg.clip_limit * static_cast<double>(n) / cfg.bins)));
                hist = clip_histogram(std::move(hist), limit);

                std::uint64_t cdf = 0;
                std::uint64_t cdf_min = 0;
                for (int b = 0; b < cfg.bins; ++b) {
                    cdf += hist[b];
                    if (cdf_min == 0 && cdf > 0) cdf_min = cdf;
                }
                const std::uint64_t denom = n - cdf_min;
                cdf = 0;
                for (int b = 0; b < cfg.bins; ++b) {
                    cdf += hist[b];
                    if (denom == 0 || cdf < cdf_min) {
                        map[b] = 0;  // below the first occupied bin, or a single occupied one
                    } else {
                        const double m = static_cast<double>(cdf - cdf_min) /
                                         static_cast<double>(denom) * maxv;
                        map[b] = static_cast<std::uint32_t>(round_half_up(m));
                    }
                }
            }
            mappings.push_back(std::move(map));
        }
    }
    return mappings;
}

GrayImage apply_clahe(const GrayImage& image, const ClaheConfig& cfg, const BinaryMask* mask) {
    validate(image, cfg, mask);
    const TileGrid grid = make_grid(image.width, image.height, cfg.tiles_x, cfg.tiles_y);
    const auto mappings = build_mappings(image, cfg, mask, grid);

    auto map_at = [&](int ty, int tx) -> const std::vector<std::uint32_t>& {
        return mappings[static_cast<std::size_t>(ty) * cfg.tiles_x + tx];
    };

    GrayImage out(image.width, image.height, image.bit_depth);
    for (int r = 0; r < image.height; ++r) {
        int ty0, ty1;
        double wy;
        axis_neighbors(grid.cy, static_cast<double>(r), ty0, ty1, wy);
        for (int c = 0; c < image.width; ++c) {
            if (mask && !mask->at(r, c)) {
                out.at(r, c) = 0;
                continue;
            }
            int tx0, tx1;
            double wx;
            axis_neighbors(grid.cx, static_cast<double>(c), tx0, tx1, wx);
            const int b = bin_of(image.at(r, c), cfg.bins, image.bit_depth);

            // Exact paths when neighbors coincide keep single-tile CLAHE
            // bit-identical to plain histogram equalization.
            if (ty0 == ty1 && tx0 == tx1) {
                out.at(r, c) = static_cast<std::uint16_t>(map_at(ty0, tx0)[b]);
            } else if (ty0 == ty1) {
                const double v = (1.0 - wx) * map_at(ty0, tx0)[b] + wx * map_at(ty0, tx1)[b];
                out.at(r, c) = static_cast<std::uint16_t>(round_half_up(v));
            } else if (tx0 == tx1) {
                const double v = (1.0 - wy) * map_at(ty0, tx0)[b] + wy * map_at(ty1, tx0)[b];
                out.at(r, c) = static_cast<std::uint16_t>(round_half_up(v));
            } else {
                const double top = (1.0 - wx) * map_at(ty0, tx0)[b] + wx * map_at(ty0, tx1)[b];
                const double bot = (1.0 - wx) * map_at(ty1, tx0)[b] + wx * map_at(ty1, tx1)[b];
                const double v = (1.0 - wy) * top + wy * bot;
                out.at(r, c) = static_cast<std::uint16_t>(round_half_up(v));
            }
        }
    }
    return out;
}

}  // namespace

GrayImage clahe(const GrayImage& image, const ClaheConfig& config) {
    return apply_clahe(image, config, nullptr);
}

GrayImage clahe(const GrayImage& image, const ClaheConfig& config, const BinaryMask& mask) {
    return apply_clahe(image, config, &mask);
}

std::vector<std::vector<std::uint32_t>> clahe_tile_mappings(const GrayImage& image,
                                                            const ClaheConfig& config,
                                                            const BinaryMask* mask) {
    validate(image, config, mask);
    const TileGrid grid = make_grid(image.width, image.height, config.tiles_x, config.tiles_y);
    return build_mappings(image, config, mask, grid);
}

}  // namespace mamseg
