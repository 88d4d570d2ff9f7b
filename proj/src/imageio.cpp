#include "mamseg/imageio.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <string>

namespace mamseg {

namespace {

// Token scanner over the Netpbm header area. '#' starts a comment running to
// end of line and is legal anywhere whitespace is.
struct Scanner {
    const std::vector<std::uint8_t>& buf;
    std::size_t pos = 0;

    explicit Scanner(const std::vector<std::uint8_t>& b) : buf(b) {}

    bool eof() const { return pos >= buf.size(); }

    void skip_space_and_comments() {
        while (pos < buf.size()) {
            std::uint8_t ch = buf[pos];
            if (ch == '#') {
                while (pos < buf.size() && buf[pos] != '\n') ++pos;
            } else if (std::isspace(ch)) {
                ++pos;
            } else {
                break;
            }
        }
    }

    std::string token() {
        skip_space_and_comments();
        std::string t;
        while (pos < buf.size() && !std::isspace(buf[pos]) && buf[pos] != '#') {
            t.push_back(static_cast<char>(buf[pos]));
            ++pos;
        }
        return t;
    }

    // Parses a nonnegative decimal integer token; `what` names the field in errors.
    long long integer(const char* what) {
        std::string t = token();
        if (t.empty())
            throw data_error(std::string("pgm: missing ") + what);
        long long v = 0;
        for (char c : t) {
            if (c < '0' || c > '9')
                throw data_error(std::string("pgm: non-numeric ") + what + " '" + t + "'");
            v = v * 10 + (c - '0');
            if (v > 1'000'000'000LL)
                throw data_error(std::string("pgm: ") + what + " out of range");
        }
        return v;
    }

    // Single whitespace byte separating the last header field from raster data.
    void raster_separator() {
        if (pos >= buf.size() || !std::isspace(buf[pos]))
            throw data_error("pgm: missing separator before pixel data");
        ++pos;
    }
};

struct Header {
    char format;  // '1','2','4','5'
    int width = 0, height = 0;
    long long maxval = 1;
};

Header parse_header(Scanner& sc, bool allow_pbm, bool allow_pgm) {
    std::string magic = sc.token();
    bool is_pbm = (magic == "P1" || magic == "P4");
    bool is_pgm = (magic == "P2" || magic == "P5");
    if (!((allow_pbm && is_pbm) || (allow_pgm && is_pgm)))
        throw data_error("pgm: malformed magic number '" + magic + "'");

    Header h;
    h.format = magic[1];
    long long w = sc.integer("width");
    long long hgt = sc.integer("height");
    if (w < 1 || hgt < 1)
        throw data_error("pgm: nonpositive dimensions");
    if (w > 65536 || hgt > 65536 || w * hgt > 268'435'456LL)
        throw data_error("pgm: dimensions out of range");
    h.width = static_cast<int>(w);
    h.height = static_cast<int>(hgt);
    if (is_pgm) {
        h.maxval = sc.integer("maxval");
        if (h.maxval < 1 || h.maxval > 65535)
            throw data_error("pgm: maxval out of range");
    }
    return h;
}

GrayImage decode_gray(const std::vector<std::uint8_t>& bytes) {
    Scanner sc(bytes);
    Header h = parse_header(sc, /*allow_pbm=*/false, /*allow_pgm=*/true);
    GrayImage img(h.width, h.height, h.maxval <= 255 ? 8 : 16);
    std::size_t n = img.pixels.size();

    if (h.format == '2') {
        for (std::size_t i = 0; i < n; ++i) {
            sc.skip_space_and_comments();
            if (sc.eof()) throw data_error("pgm: truncated pixel data");
            long long v = sc.integer("sample");
            if (v > h.maxval) throw data_error("pgm: sample exceeds maxval");
            img.pixels[i] = static_cast<std::uint16_t>(v);
        }
    } else {  // P5
        sc.raster_separator();
        std::size_t bytes_per_sample = h.maxval <= 255 ? 1 : 2;
        if (bytes.size() - sc.pos < n * bytes_per_sample)
            throw data_error("pgm: truncated pixel data");
        const std::uint8_t* p = bytes.data() + sc.pos;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t v;
            if (bytes_per_sample == 1) {
                v = p[i];
            } else {
                v = (static_cast<std::uint32_t>(p[2 * i]) << 8) | p[2 * i + 1];
            }
            if (v > static_cast<std::uint32_t>(h.maxval))
                throw data_error("pgm: sample exceeds maxval");
            img.pixels[i] = static_cast<std::uint16_t>(v);
        }
    }
    return img;
}

BinaryMask decode_pbm(Scanner& sc, const Header& h, const std::vector<std::uint8_t>& bytes) {
    BinaryMask mask(h.width, h.height);
    if (h.format == '1') {
        std::size_t n = mask.bits.size();
        for (std::size_t i = 0; i < n; ++i) {
            sc.skip_space_and_comments();
            if (sc.eof()) throw data_error("pgm: truncated pixel data");
            std::uint8_t ch = bytes[sc.pos++];
            if (ch != '0' && ch != '1')
                throw data_error("pgm: bad P1 sample");
            mask.bits[i] = (ch == '1') ? 1 : 0;
        }
    } else {  // P4: bit-packed rows, MSB first, each row padded to a byte
        sc.raster_separator();
        std::size_t row_bytes = (static_cast<std::size_t>(h.width) + 7) / 8;
        if (bytes.size() - sc.pos < row_bytes * h.height)
            throw data_error("pgm: truncated pixel data");
        const std::uint8_t* p = bytes.data() + sc.pos;
        for (int r = 0; r < h.height; ++r) {
            const std::uint8_t* row = p + static_cast<std::size_t>(r) * row_bytes;
            for (int c = 0; c < h.width; ++c) {
                std::uint8_t byte = row[c / 8];
                bool bit = (byte >> (7 - c % 8)) & 1;
                mask.set(r, c, bit);
            }
        }
    }
    return mask;
}

}  // namespace

GrayImage read_pgm(const std::vector<std::uint8_t>& bytes) {
    return decode_gray(bytes);
}

std::vector<std::uint8_t> write_pgm(const GrayImage& image, bool ascii) {
    if (image.width < 1 || image.height < 1)
        throw data_error("pgm: cannot encode empty image");
    if (image.bit_depth != 8 && image.bit_depth != 16)
        throw data_error("pgm: unsupported bit depth");

    std::string header = std::string(ascii ? "P2" : "P5") + "\n" +
                         std::to_string(image.width) + " " + std::to_string(image.height) +
                         "\n" + std::to_string(image.max_value()) + "\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());

    if (ascii) {
        // Keep plain-format lines under 70 characters: 11 samples of at most
        // 5 digits plus separators.
        std::string line;
        int on_line = 0;
        for (std::size_t i = 0; i < image.pixels.size(); ++i) {
            if (on_line > 0) line.push_back(' ');
            line += std::to_string(image.pixels[i]);
            if (++on_line == 11 || i + 1 == image.pixels.size()) {
                line.push_back('\n');
                out.insert(out.end(), line.begin(), line.end());
                line.clear();
                on_line = 0;
            }
        }
    } else if (image.bit_depth == 8) {
        for (std::uint16_t v : image.pixels)
            out.push_back(static_cast<std::uint8_t>(v));
    } else {
        for (std::uint16_t v : image.pixels) {
            out.push_back(static_cast<std::uint8_t>(v >> 8));
            out.push_back(static_cast<std::uint8_t>(v & 0xff));
        }
    }
    return out;
}

BinaryMask read_mask(const std::vector<std::uint8_t>& bytes) {
    Scanner probe(bytes);
    std::string magic = probe.token();
    if (magic == "P1" || magic == "P4") {
        Scanner sc(bytes);
        Header h = parse_header(sc, /*allow_pbm=*/true, /*allow_pgm=*/false);
        return decode_pbm(sc, h, bytes);
    }
    GrayImage img = decode_gray(bytes);
    BinaryMask mask(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        mask.bits[i] = img.pixels[i] != 0 ? 1 : 0;
    return mask;
}

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open file: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad())
        throw io_error("read failure: " + path.string());
    return bytes;
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw io_error("cannot create file: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw io_error("write failure: " + path.string());
}

}  // namespace

GrayImage load_pgm(const std::filesystem::path& path) {
    try {
        return read_pgm(read_file(path));
    } catch (const data_error& e) {
        throw data_error(path.string() + ": " + e.what());
    }
}

void save_pgm(const std::filesystem::path& path, const GrayImage& image, bool ascii) {
    write_file(path, write_pgm(image, ascii));
}

BinaryMask load_mask(const std::filesystem::path& path) {
    try {
        return read_mask(read_file(path));
    } catch (const data_error& e) {
        throw data_error(path.string() + ": " + e.what());
    }
}

void save_mask(const std::filesystem::path& path, const BinaryMask& mask) {
    GrayImage img(mask.width, mask.height, 8);
    for (std::size_t i = 0; i < mask.bits.size(); ++i)
        img.pixels[i] = mask.bits[i] ? 255 : 0;
    write_file(path, write_pgm(img, false));
}

}  // namespace mamseg
