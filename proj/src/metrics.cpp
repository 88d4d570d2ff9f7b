#include "mamseg/metrics.hpp"

#include <cstdio>

namespace mamseg {

double density_percent(const BinaryMask& dense, const BinaryMask& breast) {
    require_same_dims(dense.width, dense.height, breast.width, breast.height,
                      "density_percent");
    long long dense_n = 0, breast_n = 0;
    for (std::size_t i = 0; i < dense.bits.size(); ++i) {
        if (dense.bits[i] && !breast.bits[i])
            throw data_error("density_percent: dense mask not a subset of breast mask");
        dense_n += dense.bits[i] != 0;
        breast_n += breast.bits[i] != 0;
    }
    if (breast_n == 0)
        throw data_error("density_percent: empty breast mask");
    return static_cast<double>(dense_n) / static_cast<double>(breast_n);
}

int categorize(double percent, const std::array<double, 3>& edges) {
    if (percent < 0.0 || percent > 1.0)
        throw data_error("categorize: percent out of [0,1]");
    if (percent < edges[0]) return 1;
    if (percent < edges[1]) return 2;
    if (percent < edges[2]) return 3;
    return 4;
}

const char* reference_name(Reference r) {
    return r == Reference::Max ? "max" : "mean";
}

std::string csv_header() {
    return "image_id,breast_px,dense_px,percent_dense,category,threshold_reference";
}

std::string csv_row(const DensityReport& report) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", report.percent_dense);
    return report.image_id + "," + std::to_string(report.breast_px) + "," +
           std::to_string(report.dense_px) + "," + buf + "," +
           std::to_string(report.category) + "," + reference_name(report.threshold_reference);
}

}  // namespace mamseg
