#include "stereocolor/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "stereocolor/errors.hpp"

namespace stereocolor {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_error_handler(png_structp png, png_const_charp msg) {
    auto* text = static_cast<std::string*>(png_get_error_ptr(png));
    if (text) *text = msg;
    png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

}  // namespace

unsigned char quantize8(double v) {
    const double scaled = std::floor(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5);
    return static_cast<unsigned char>(std::clamp(scaled, 0.0, 255.0));
}

Image read_png(const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.string().c_str(), "rb"));
    if (!file) throw IoError("cannot open " + path.string());

    unsigned char sig[8];
    if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw IoError(path.string() + " is not a PNG file");

    std::string error;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error, png_error_handler, png_warning_handler);
    if (!png) throw IoError("png: out of memory");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("png: out of memory");
    }

    // declared before setjmp so a decode error never skips their destructors
    std::vector<unsigned char> pixels;
    std::vector<png_bytep> rows;
    png_uint_32 width = 0, height = 0;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("png: failed to decode " + path.string() + ": " + error);
    }
    png_init_io(png, file.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    width = png_get_image_width(png, info);
    height = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const std::size_t row_bytes = png_get_rowbytes(png, info);
    pixels.resize(row_bytes * height);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = pixels.data() + y * row_bytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    if (row_bytes != static_cast<std::size_t>(width) * 3) throw IoError("png: unexpected row layout in " + path.string());
    std::vector<double> samples(pixels.size());
    std::transform(pixels.begin(), pixels.end(), samples.begin(), [](unsigned char v) { return v / 255.0; });
    return Image(static_cast<int>(width), static_cast<int>(height), std::move(samples));
}

void write_png(const std::filesystem::path& path, const Image& img) {
    if (img.empty()) throw IoError("write_png: empty image");
    std::filesystem::path tmp = path;
    tmp += ".partial";
    std::vector<unsigned char> bytes(img.size());
    std::transform(img.data().begin(), img.data().end(), bytes.begin(), quantize8);

    volatile bool ok = false;
    std::string error;
    {
        FilePtr file(std::fopen(tmp.string().c_str(), "wb"));
        if (!file) throw IoError("cannot create " + tmp.string());
        png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error, png_error_handler, png_warning_handler);
        png_infop info = png ? png_create_info_struct(png) : nullptr;
        if (png && info) {
            if (setjmp(png_jmpbuf(png)) == 0) {
                png_init_io(png, file.get());
                png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()), 8,
                             PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
                png_write_info(png, info);
                const std::size_t stride = static_cast<std::size_t>(img.width()) * 3;
                for (int y = 0; y < img.height(); ++y) png_write_row(png, bytes.data() + static_cast<std::size_t>(y) * stride);
                png_write_end(png, nullptr);
                ok = true;
            }
        }
        png_destroy_write_struct(png ? &png : nullptr, info ? &info : nullptr);
        if (ok && std::fflush(file.get()) != 0) ok = false;
    }
    std::error_code ec;
    if (!ok) {
        std::filesystem::remove(tmp, ec);
        throw IoError("png: failed to write " + path.string() + (error.empty() ? "" : ": " + error));
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

}  // namespace stereocolor
