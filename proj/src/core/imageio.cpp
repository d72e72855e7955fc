#include "core/imageio.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include "core/errors.hpp"

namespace svx {

namespace {

std::string lower_ext(const std::string &path) {
    auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return ext;
}

struct FileCloser {
    void operator()(FILE *f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

GrayImage load_png(const std::string &path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError("cannot open " + path);
    png_byte header[8];
    if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8))
        throw IoError("not a PNG file: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (!png || !info) throw IoError("libpng init failed");
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("failed to decode " + path);
    }
    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    png_uint_32 w = png_get_image_width(png, info);
    png_uint_32 h = png_get_image_height(png, info);
    int color = png_get_color_type(png, info);
    int depth = png_get_bit_depth(png, info);

    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (depth == 16) png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    int channels = png_get_channels(png, info);
    std::vector<png_byte> row(size_t(w) * size_t(channels));
    GrayImage img{int(w), int(h)};
    for (png_uint_32 y = 0; y < h; ++y) {
        png_read_row(png, row.data(), nullptr);
        for (png_uint_32 x = 0; x < w; ++x) {
            double v;
            if (channels >= 3) {
                double r = row[size_t(x) * channels] / 255.0;
                double g = row[size_t(x) * channels + 1] / 255.0;
                double b = row[size_t(x) * channels + 2] / 255.0;
                v = 0.299 * r + 0.587 * g + 0.114 * b;
            } else {
                v = row[size_t(x) * channels] / 255.0;
            }
            img.at(int(x), int(y)) = v;
        }
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

void save_png(const GrayImage &img, const std::string &path) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError("cannot write " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (!png || !info) throw IoError("libpng init failed");
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to encode " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, png_uint_32(img.width), png_uint_32(img.height), 8,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_byte> row(size_t(img.width), 0);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double v = std::clamp(img.at(x, y), 0.0, 1.0);
            row[size_t(x)] = png_byte(std::lround(v * 255.0));
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

uint32_t read_u32le(const unsigned char *p) {
    return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 | uint32_t(p[3]) << 24;
}
uint16_t read_u16le(const unsigned char *p) { return uint16_t(p[0] | p[1] << 8); }

GrayImage load_bmp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (data.size() < 54 || data[0] != 'B' || data[1] != 'M')
        throw IoError("not a BMP file: " + path);
    uint32_t offset = read_u32le(&data[10]);
    uint32_t header_size = read_u32le(&data[14]);
    if (header_size < 40) throw IoError("unsupported BMP header: " + path);
    int32_t w = int32_t(read_u32le(&data[18]));
    int32_t h = int32_t(read_u32le(&data[22]));
    uint16_t bpp = read_u16le(&data[28]);
    uint32_t compression = read_u32le(&data[30]);
    if (compression != 0 || w <= 0 || h == 0)
        throw IoError("unsupported BMP variant: " + path);
    bool flipped = h > 0;
    int height = std::abs(h);

    const unsigned char *palette = data.data() + 14 + header_size;
    size_t row_size = (size_t(w) * bpp / 8 + 3) & ~size_t(3);
    GrayImage img(w, height);
    for (int y = 0; y < height; ++y) {
        size_t src_y = size_t(flipped ? height - 1 - y : y);
        const unsigned char *row = data.data() + offset + src_y * row_size;
        if (offset + (src_y + 1) * row_size > data.size())
            throw IoError("truncated BMP: " + path);
        for (int x = 0; x < w; ++x) {
            double v;
            if (bpp == 8) {
                const unsigned char *entry = palette + size_t(row[x]) * 4;
                v = (0.114 * entry[0] + 0.587 * entry[1] + 0.299 * entry[2]) / 255.0;
            } else if (bpp == 24 || bpp == 32) {
                const unsigned char *px = row + size_t(x) * bpp / 8;
                v = (0.114 * px[0] + 0.587 * px[1] + 0.299 * px[2]) / 255.0;
            } else {
                throw IoError("unsupported BMP depth: " + path);
            }
            img.at(x, y) = v;
        }
    }
    return img;
}

void save_bmp(const GrayImage &img, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    size_t row_size = (size_t(img.width) + 3) & ~size_t(3);
    uint32_t data_size = uint32_t(row_size * size_t(img.height));
    uint32_t offset = 14 + 40 + 256 * 4;
    uint32_t file_size = offset + data_size;
    auto put32 = [&](uint32_t v) {
        char b[4] = {char(v), char(v >> 8), char(v >> 16), char(v >> 24)};
        out.write(b, 4);
    };
    auto put16 = [&](uint16_t v) {
        char b[2] = {char(v), char(v >> 8)};
        out.write(b, 2);
    };
    out.write("BM", 2);
    put32(file_size);
    put32(0);
    put32(offset);
    put32(40);
    put32(uint32_t(img.width));
    put32(uint32_t(img.height));
    put16(1);
    put16(8);
    put32(0);
    put32(data_size);
    put32(2835);
    put32(2835);
    put32(256);
    put32(0);
    for (int i = 0; i < 256; ++i) {
        char entry[4] = {char(i), char(i), char(i), 0};
        out.write(entry, 4);
    }
    std::vector<char> row(row_size, 0);
    for (int y = img.height - 1; y >= 0; --y) {
        for (int x = 0; x < img.width; ++x) {
            double v = std::clamp(img.at(x, y), 0.0, 1.0);
            row[size_t(x)] = char(std::lround(v * 255.0));
        }
        out.write(row.data(), std::streamsize(row_size));
    }
}

GrayImage load_pgm(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::string magic;
    in >> magic;
    if (magic != "P5" && magic != "P2") throw IoError("not a PGM file: " + path);
    auto next_token = [&]() {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
        throw IoError("truncated PGM: " + path);
    };
    int w = std::stoi(next_token());
    int h = std::stoi(next_token());
    int maxval = std::stoi(next_token());
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535)
        throw IoError("bad PGM header: " + path);
    GrayImage img(w, h);
    if (magic == "P2") {
        for (int i = 0; i < w * h; ++i) {
            int v = std::stoi(next_token());
            img.samples[size_t(i)] = double(v) / maxval;
        }
    } else {
        in.get(); // single whitespace after maxval
        int bytes = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> buf(size_t(w) * size_t(h) * size_t(bytes));
        in.read(reinterpret_cast<char *>(buf.data()), std::streamsize(buf.size()));
        if (!in) throw IoError("truncated PGM: " + path);
        for (size_t i = 0; i < size_t(w) * size_t(h); ++i) {
            int v = bytes == 1 ? buf[i] : (buf[2 * i] << 8 | buf[2 * i + 1]);
            img.samples[i] = double(v) / maxval;
        }
    }
    return img;
}

void save_pgm(const GrayImage &img, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<char> row(size_t(img.width), 0);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double v = std::clamp(img.at(x, y), 0.0, 1.0);
            row[size_t(x)] = char(std::lround(v * 255.0));
        }
        out.write(row.data(), img.width);
    }
}

} // namespace

GrayImage load_gray(const std::string &path) {
    std::string ext = lower_ext(path);
    if (ext == "png") return load_png(path);
    if (ext == "bmp") return load_bmp(path);
    if (ext == "pgm") return load_pgm(path);
    // Sniff by signature when the extension is unhelpful.
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    char sig[2] = {0, 0};
    in.read(sig, 2);
    if (sig[0] == char(0x89) && sig[1] == 'P') return load_png(path);
    if (sig[0] == 'B' && sig[1] == 'M') return load_bmp(path);
    if (sig[0] == 'P' && (sig[1] == '5' || sig[1] == '2')) return load_pgm(path);
    throw IoError("unsupported raster format: " + path);
}

void save_gray(const GrayImage &img, const std::string &path) {
    std::string ext = lower_ext(path);
    if (ext == "bmp") return save_bmp(img, path);
    if (ext == "pgm") return save_pgm(img, path);
    return save_png(img, path);
}

BinaryImage mask_from_gray(const GrayImage &img) {
    BinaryImage out(img.width, img.height);
    for (size_t i = 0; i < img.samples.size(); ++i) out.bits[i] = img.samples[i] < 0.5 ? 1 : 0;
    return out;
}

GrayImage gray_from_mask(const BinaryImage &mask) {
    GrayImage out(mask.width, mask.height, 1.0);
    for (size_t i = 0; i < mask.bits.size(); ++i)
        if (mask.bits[i]) out.samples[i] = 0.0;
    return out;
}

} // namespace svx
