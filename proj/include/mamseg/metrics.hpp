#ifndef MAMSEG_METRICS_HPP
#define MAMSEG_METRICS_HPP

#include <array>
#include <string>
#include <vector>

#include "mamseg/image.hpp"
#include "mamseg/segment.hpp"

namespace mamseg {

struct DensityReport {
    std::string image_id;
    long long breast_px = 0;
    long long dense_px = 0;
    double percent_dense = 0.0;  // fraction in [0,1]
    int category = 1;            // 1..4
    Reference threshold_reference = Reference::Max;
};

/// |dense| / |breast|. `dense` must be a subset of `breast`, which must be
/// nonempty.
double density_percent(const BinaryMask& dense, const BinaryMask& breast);

inline constexpr std::array<double, 3> kDefaultCategoryEdges{0.25, 0.50, 0.75};

/// Four-way density category with right-open edges; 1.0 falls in category 4.
int categorize(double percent, const std::array<double, 3>& edges = kDefaultCategoryEdges);

const char* reference_name(Reference r);

std::string csv_header();
std::string csv_row(const DensityReport& report);

}  // namespace mamseg

#endif
