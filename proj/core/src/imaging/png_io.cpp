#include "shapecell/imaging/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>

namespace shapecell::imaging {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// Raw 8-bit interleaved decode, always expanded to the requested channel
// count (1 or 3), alpha stripped.
std::vector<std::uint8_t> decode_png_bytes(const std::string& path, int want_channels,
                                           int& height, int& width) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) throw DataError("cannot open PNG for reading: " + path);

    png_byte header[8];
    if (std::fread(header, 1, 8, file.get()) != 8 || png_sig_cmp(header, 0, 8) != 0)
        throw DataError("not a PNG file: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw DataError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw DataError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("PNG decode error: " + path);
    }

    png_init_io(png, file.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    png_set_expand(png);  // palette -> rgb, gray<8 -> 8-bit, tRNS -> alpha
    if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
    png_set_strip_alpha(png);
    const png_byte color_type = png_get_color_type(png, info);
    if (want_channels == 3 &&
        (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA))
        png_set_gray_to_rgb(png);
    if (want_channels == 1 &&
        (color_type == PNG_COLOR_TYPE_RGB || color_type == PNG_COLOR_TYPE_RGB_ALPHA ||
         color_type == PNG_COLOR_TYPE_PALETTE))
        png_set_rgb_to_gray_fixed(png, 1, -1, -1);
    png_read_update_info(png, info);

    height = static_cast<int>(png_get_image_height(png, info));
    width = static_cast<int>(png_get_image_width(png, info));
    const int channels = static_cast<int>(png_get_channels(png, info));
    if (channels != want_channels) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("unexpected channel count " + std::to_string(channels) + " in " + path);
    }

    std::vector<std::uint8_t> pixels(static_cast<std::size_t>(height) * width * want_channels);
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y)
        rows[y] = pixels.data() + static_cast<std::size_t>(y) * width * want_channels;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return pixels;
}

void append_bytes(png_structp png, png_bytep data, png_size_t length) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + length);
}

void flush_noop(png_structp) {}

std::vector<std::uint8_t> encode_gray_or_rgb(const std::uint8_t* pixels, int height, int width,
                                             int channels) {
    std::vector<std::uint8_t> out;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw DataError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw DataError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw DataError("PNG encode error");
    }

    png_set_write_fn(png, &out, append_bytes, flush_noop);
    // Pinned filter/compression settings keep the byte stream reproducible.
    png_set_compression_level(png, 6);
    png_set_filter(png, 0, PNG_FILTER_NONE);
    png_set_IHDR(png, info, width, height, 8,
                 channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y)
        rows[y] = const_cast<png_bytep>(pixels + static_cast<std::size_t>(y) * width * channels);
    png_write_image(png, rows.data());
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    return out;
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw DataError("cannot open PNG for writing: " + path);
    if (std::fwrite(bytes.data(), 1, bytes.size(), file.get()) != bytes.size())
        throw DataError("short write: " + path);
}

}  // namespace

Image read_png(const std::string& path) {
    int h = 0, w = 0;
    const std::vector<std::uint8_t> pixels = decode_png_bytes(path, 3, h, w);
    Image img(h, w, 3);
    for (std::size_t i = 0; i < pixels.size(); ++i)
        img.data()[i] = static_cast<float>(pixels[i]) / 255.0f;
    return img;
}

Mask read_mask_png(const std::string& path) {
    int h = 0, w = 0;
    const std::vector<std::uint8_t> pixels = decode_png_bytes(path, 1, h, w);
    Mask mask(h, w);
    for (std::size_t i = 0; i < pixels.size(); ++i) mask.data()[i] = pixels[i] != 0 ? 1 : 0;
    return mask;
}

std::vector<std::uint8_t> encode_png(const Image& img) {
    if (img.channels() != 3) throw InvalidInputError("encode_png: expected a 3-channel image");
    std::vector<std::uint8_t> pixels(img.data().size());
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        const float v = std::clamp(img.data()[i], 0.0f, 1.0f);
        pixels[i] = static_cast<std::uint8_t>(std::lround(v * 255.0f));
    }
    return encode_gray_or_rgb(pixels.data(), img.height(), img.width(), 3);
}

std::vector<std::uint8_t> encode_mask_png(const Mask& mask) {
    std::vector<std::uint8_t> pixels(mask.data().size());
    for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = mask.data()[i] ? 255 : 0;
    return encode_gray_or_rgb(pixels.data(), mask.height(), mask.width(), 1);
}

void write_png(const std::string& path, const Image& img) { write_bytes(path, encode_png(img)); }

void write_mask_png(const std::string& path, const Mask& mask) {
    write_bytes(path, encode_mask_png(mask));
}

}  // namespace shapecell::imaging
