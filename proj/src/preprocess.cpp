#include "mamseg/preprocess.hpp"

#include <algorithm>

namespace mamseg {

GrayImage apply_mask(const GrayImage& image, const BinaryMask& mask) {
    require_same_dims(image.width, image.height, mask.width, mask.height, "apply_mask");
    GrayImage out = image;
    for (std::size_t i = 0; i < out.pixels.size(); ++i)
        if (!mask.bits[i]) out.pixels[i] = 0;
    return out;
}

OrientResult orient_left(const GrayImage& image, const BinaryMask& mask) {
    require_same_dims(image.width, image.height, mask.width, mask.height, "orient_left");
    long long n = 0;
    long long col_sum = 0;
    for (int r = 0; r < mask.height; ++r)
        for (int c = 0; c < mask.width; ++c)
            if (mask.at(r, c)) {
                ++n;
                col_sum += c;
            }
    if (n == 0)
        throw data_error("orient_left: empty mask");

    const double centroid = static_cast<double>(col_sum) / static_cast<double>(n);
    const double center = (mask.width - 1) / 2.0;

    OrientResult res;
    res.flipped = centroid > center;
    if (!res.flipped) {
        res.image = image;
        res.mask = mask;
        return res;
    }
    res.image = GrayImage(image.width, image.height, image.bit_depth);
    res.mask = BinaryMask(mask.width, mask.height);
    for (int r = 0; r < image.height; ++r)
        for (int c = 0; c < image.width; ++c) {
            res.image.at(r, c) = image.at(r, image.width - 1 - c);
            res.mask.set(r, c, mask.at(r, mask.width - 1 - c));
        }
    return res;
}

BreastExtent breast_extent(const BinaryMask& mask) {
    std::vector<int> row_counts(mask.height, 0);
    std::vector<int> col_counts(mask.width, 0);
    int top = -1, bottom = -1, left = -1, right = -1;
    for (int r = 0; r < mask.height; ++r)
        for (int c = 0; c < mask.width; ++c)
            if (mask.at(r, c)) {
                ++row_counts[r];
                ++col_counts[c];
                if (top < 0) top = r;
                bottom = r;
                if (left < 0 || c < left) left = c;
                if (c > right) right = c;
            }
    if (top < 0)
        throw data_error("breast_extent: empty mask");

    BreastExtent e;
    e.top_row = top;
    e.bottom_row = bottom;
    e.leftmost_col = left;
    e.rightmost_col = right;
    // Ties break toward the smallest index.
    auto widest = std::max_element(row_counts.begin(), row_counts.end());
    e.widest_row = static_cast<int>(widest - row_counts.begin());
    e.max_width = *widest;
    auto tallest = std::max_element(col_counts.begin(), col_counts.end());
    e.tallest_col = static_cast<int>(tallest - col_counts.begin());
    e.max_height = *tallest;
    return e;
}

RoiBox roi_box(const BreastExtent& extent, int image_width, int image_height) {
    if (extent.max_width < 3 || extent.max_height < 4)
        throw data_error("roi_box: degenerate breast extent");
    if (extent.widest_row < 0 || extent.widest_row >= image_height ||
        extent.leftmost_col < 0 || extent.leftmost_col >= image_width)
        throw data_error("roi_box: extent outside image");

    RoiBox box;
    const int half_band = extent.max_height / 4;
    box.row0 = std::max(extent.widest_row - half_band, 0);
    box.row1 = std::min(extent.widest_row + half_band, image_height);
    box.col0 = std::max(extent.leftmost_col + extent.max_width / 3, 0);
    box.col1 = std::min(extent.leftmost_col + extent.max_width, image_width);
    if (box.row0 >= box.row1 || box.col0 >= box.col1)
        throw data_error("roi_box: degenerate ROI");
    return box;
}

namespace {

void check_box(int width, int height, const RoiBox& box, const char* what) {
    if (box.row0 < 0 || box.col0 < 0 || box.row0 >= box.row1 || box.col0 >= box.col1 ||
        box.row1 > height || box.col1 > width)
        throw data_error(std::string(what) + ": box out of bounds");
}

}  // namespace

GrayImage crop(const GrayImage& image, const RoiBox& box) {
    check_box(image.width, image.height, box, "crop");
    GrayImage out(box.cols(), box.rows(), image.bit_depth);
    for (int r = 0; r < out.height; ++r)
        for (int c = 0; c < out.width; ++c)
            out.at(r, c) = image.at(box.row0 + r, box.col0 + c);
    return out;
}

BinaryMask crop(const BinaryMask& mask, const RoiBox& box) {
    check_box(mask.width, mask.height, box, "crop");
    BinaryMask out(box.cols(), box.rows());
    for (int r = 0; r < out.height; ++r)
        for (int c = 0; c < out.width; ++c)
            out.set(r, c, mask.at(box.row0 + r, box.col0 + c));
    return out;
}

}  // namespace mamseg
