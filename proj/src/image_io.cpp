// Copyright 2026 The vstats authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vstats/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>

namespace vstats {
namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error("image '" + path.string() + "': " + what);
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

Frame readPng(const std::filesystem::path& path, FilePtr file) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "libpng init failed");
    }
    std::vector<png_bytep> rows;
    Frame frame;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "PNG decode error");
    }
    png_init_io(png, file.get());
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int bitDepth = png_get_bit_depth(png, info);
    const int colorType = png_get_color_type(png, info);

    // Normalize everything to 8-bit RGB.
    if (colorType == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (colorType == PNG_COLOR_TYPE_GRAY && bitDepth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (bitDepth == 16) png_set_strip_16(png);
    if (colorType == PNG_COLOR_TYPE_GRAY || colorType == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    if (w == 0 || h == 0 || png_get_rowbytes(png, info) != std::size_t(w) * 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "unsupported PNG layout");
    }

    frame = Frame(int(w), int(h));
    rows.resize(h);
    for (png_uint_32 y = 0; y < h; ++y)
        rows[y] = frame.pixels.data() + std::size_t(y) * w * 3;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return frame;
}

// Reads one PPM header token, skipping whitespace and '#' comments.
bool ppmToken(std::istream& in, std::string& token) {
    token.clear();
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c)) {
        token.push_back(char(c));
        c = in.get();
    }
    return !token.empty();
}

Frame readPpm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    std::string magic, ws, hs, maxs;
    if (!ppmToken(in, magic) || magic != "P6") fail(path, "not a binary PPM (P6)");
    if (!ppmToken(in, ws) || !ppmToken(in, hs) || !ppmToken(in, maxs))
        fail(path, "truncated PPM header");
    long w = 0, h = 0, maxval = 0;
    try {
        w = std::stol(ws);
        h = std::stol(hs);
        maxval = std::stol(maxs);
    } catch (const std::exception&) {
        fail(path, "malformed PPM header");
    }
    if (w <= 0 || h <= 0) fail(path, "bad PPM dimensions");
    if (maxval != 255) fail(path, "only maxval 255 PPM supported");
    Frame frame{int(w), int(h)};
    in.read(reinterpret_cast<char*>(frame.pixels.data()),
            std::streamsize(frame.pixels.size()));
    if (std::size_t(in.gcount()) != frame.pixels.size()) fail(path, "truncated PPM payload");
    return frame;
}

} // namespace

Frame readImage(const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.string().c_str(), "rb"));
    if (!file) fail(path, "cannot open");
    unsigned char magic[8] = {};
    const std::size_t got = std::fread(magic, 1, sizeof(magic), file.get());
    if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0) {
        std::rewind(file.get());
        return readPng(path, std::move(file));
    }
    if (got >= 2 && magic[0] == 'P' && magic[1] == '6') {
        file.reset();
        return readPpm(path);
    }
    fail(path, "unrecognized image format (expected PNG or P6 PPM)");
}

namespace {

void writePngImpl(const std::filesystem::path& path, int width, int height,
                  const std::uint8_t* data, int colorType, int channels) {
    FilePtr file(std::fopen(path.string().c_str(), "wb"));
    if (!file) fail(path, "cannot open for writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        fail(path, "libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail(path, "PNG encode error");
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, png_uint_32(width), png_uint_32(height), 8, colorType,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < height; ++y)
        png_write_row(png, const_cast<png_bytep>(data + std::size_t(y) * width * channels));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

} // namespace

void writePng(const std::filesystem::path& path, const Frame& frame) {
    writePngImpl(path, frame.width, frame.height, frame.pixels.data(), PNG_COLOR_TYPE_RGB, 3);
}

void writeGrayPng(const std::filesystem::path& path, int width, int height,
                  const std::vector<std::uint8_t>& gray) {
    if (gray.size() != std::size_t(width) * height)
        throw std::invalid_argument("writeGrayPng: buffer size mismatch");
    writePngImpl(path, width, height, gray.data(), PNG_COLOR_TYPE_GRAY, 1);
}

void writePpm(const std::filesystem::path& path, const Frame& frame) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << "P6\n" << frame.width << " " << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.pixels.data()),
              std::streamsize(frame.pixels.size()));
    if (!out) fail(path, "write failed");
}

} // namespace vstats
