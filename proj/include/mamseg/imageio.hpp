#ifndef MAMSEG_IMAGEIO_HPP
#define MAMSEG_IMAGEIO_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "mamseg/image.hpp"

namespace mamseg {

/// Decode a P2 (ASCII) or P5 (binary) PGM. Header comments (#) are accepted
/// wherever whitespace is legal. bit_depth is 8 when maxval <= 255, else 16;
/// sample values are never rescaled.
GrayImage read_pgm(const std::vector<std::uint8_t>& bytes);

/// Encode as P2 when ascii, else P5. maxval = 2^bit_depth - 1; 16-bit binary
/// samples are big-endian. No comments are emitted.
std::vector<std::uint8_t> write_pgm(const GrayImage& image, bool ascii = false);

/// Decode a PGM (any maxval) or PBM (P1/P4) as a mask: nonzero sample -> true.
BinaryMask read_mask(const std::vector<std::uint8_t>& bytes);

// File-backed convenience wrappers. Open/read/write failures raise io_error;
// malformed content raises data_error.
GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const std::filesystem::path& path, const GrayImage& image, bool ascii = false);
BinaryMask load_mask(const std::filesystem::path& path);
void save_mask(const std::filesystem::path& path, const BinaryMask& mask);

}  // namespace mamseg

#endif
