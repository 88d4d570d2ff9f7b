#ifndef MAMSEG_IMAGE_HPP
#define MAMSEG_IMAGE_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mamseg {

// File-level failures (missing path, unreadable, write error).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed content, dimension mismatches, precondition violations.
struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Grayscale raster, row-major, 8- or 16-bit samples stored in uint16.
struct GrayImage {
    int width = 0;
    int height = 0;
    int bit_depth = 8;  // 8 or 16
    std::vector<std::uint16_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, int depth, std::uint16_t fill = 0)
        : width(w), height(h), bit_depth(depth),
          pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    std::uint16_t max_value() const {
        return static_cast<std::uint16_t>((1u << bit_depth) - 1u);
    }
    std::uint16_t at(int r, int c) const {
        return pixels[static_cast<std::size_t>(r) * width + c];
    }
    std::uint16_t& at(int r, int c) {
        return pixels[static_cast<std::size_t>(r) * width + c];
    }
    bool operator==(const GrayImage&) const = default;
};

/// Boolean raster, row-major. uint8 storage, 0 = false, 1 = true.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    BinaryMask() = default;
    BinaryMask(int w, int h, bool fill = false)
        : width(w), height(h),
          bits(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill ? 1 : 0) {}

    bool at(int r, int c) const {
        return bits[static_cast<std::size_t>(r) * width + c] != 0;
    }
    void set(int r, int c, bool v) {
        bits[static_cast<std::size_t>(r) * width + c] = v ? 1 : 0;
    }
    long long count() const {
        long long n = 0;
        for (std::uint8_t b : bits) n += (b != 0);
        return n;
    }
    bool operator==(const BinaryMask&) const = default;
};

/// Real-valued raster carrying filter responses and other intermediates.
struct FloatRaster {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    FloatRaster() = default;
    FloatRaster(int w, int h, double fill = 0.0)
        : width(w), height(h),
          values(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    double at(int r, int c) const {
        return values[static_cast<std::size_t>(r) * width + c];
    }
    double& at(int r, int c) {
        return values[static_cast<std::size_t>(r) * width + c];
    }
};

inline void require_same_dims(int wa, int ha, int wb, int hb, const char* what) {
    if (wa != wb || ha != hb)
        throw data_error(std::string(what) + ": dimension mismatch (" +
                         std::to_string(wa) + "x" + std::to_string(ha) + " vs " +
                         std::to_string(wb) + "x" + std::to_string(hb) + ")");
}

/// Deterministic round-half-up used for every float-to-integer quantization.
inline long long round_half_up(double x) {
    return static_cast<long long>(std::floor(x + 0.5));
}

FloatRaster to_raster(const GrayImage& img);

}  // namespace mamseg

#endif
