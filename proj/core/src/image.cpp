#include "jointcanvas/image.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <memory>

#include "jointcanvas/errors.hpp"

namespace jointcanvas {

namespace {

void quadrant_origin(int index, int& ox, int& oy) {
  ox = (index % 2) * kViewSize;
  oy = (index / 2) * kViewSize;
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

TiledImage tile_views(const std::array<ViewImage, kNumViews>& views) {
  for (int i = 0; i < kNumViews; ++i) {
    if (views[i].view_name != kViewOrder[i]) {
      throw WrongViewSet("views must be ordered front, wrist, left_shoulder, "
                         "right_shoulder; slot " +
                         std::to_string(i) + " holds " +
                         view_name_string(views[i].view_name));
    }
    if (views[i].width != kViewSize || views[i].height != kViewSize) {
      throw WrongViewSet("view " + view_name_string(views[i].view_name) +
                         " is not 256x256");
    }
  }
  TiledImage tile;
  for (int i = 0; i < kNumViews; ++i) {
    int ox, oy;
    quadrant_origin(i, ox, oy);
    for (int y = 0; y < kViewSize; ++y) {
      std::memcpy(&tile.at(ox, oy + y), &views[i].at(0, y),
                  sizeof(Rgb) * kViewSize);
    }
  }
  return tile;
}

std::array<ViewImage, kNumViews> untile_views(const TiledImage& tile) {
  if (tile.width != kTileSize || tile.height != kTileSize) {
    throw WrongViewSet("tile is not 512x512");
  }
  std::array<ViewImage, kNumViews> views;
  for (int i = 0; i < kNumViews; ++i) {
    views[i].view_name = kViewOrder[i];
    int ox, oy;
    quadrant_origin(i, ox, oy);
    for (int y = 0; y < kViewSize; ++y) {
      std::memcpy(&views[i].at(0, y), &tile.at(ox, oy + y),
                  sizeof(Rgb) * kViewSize);
    }
  }
  return views;
}

PixelMask tile_masks(const std::array<PixelMask, kNumViews>& masks) {
  PixelMask out(static_cast<size_t>(kTileSize) * kTileSize, 0);
  for (int i = 0; i < kNumViews; ++i) {
    if (masks[i].size() != static_cast<size_t>(kViewSize) * kViewSize) {
      throw WrongViewSet("mask size mismatch for quadrant " + std::to_string(i));
    }
    int ox, oy;
    quadrant_origin(i, ox, oy);
    for (int y = 0; y < kViewSize; ++y) {
      std::memcpy(&out[static_cast<size_t>(oy + y) * kTileSize + ox],
                  &masks[i][static_cast<size_t>(y) * kViewSize], kViewSize);
    }
  }
  return out;
}

void write_png(const std::string& path, int width, int height,
               const std::vector<Rgb>& pixels) {
  if (pixels.size() != static_cast<size_t>(width) * height) {
    throw IoFailure("pixel buffer size mismatch writing " + path);
  }
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoFailure("cannot open for writing: " + path);

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoFailure("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoFailure("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoFailure("libpng error writing " + path);
  }
  png_init_io(png, fp.get());
  // Fixed settings keep output byte-stable across runs.
  png_set_compression_level(png, 6);
  png_set_filter(png, 0, PNG_FILTER_SUB);
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) {
    rows[y] = reinterpret_cast<png_bytep>(
        const_cast<Rgb*>(&pixels[static_cast<size_t>(y) * width]));
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void write_png(const std::string& path, const TiledImage& image) {
  write_png(path, image.width, image.height, image.pixels);
}

void write_png(const std::string& path, const ViewImage& image) {
  write_png(path, image.width, image.height, image.pixels);
}

DecodedPng read_png(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw IoFailure("cannot open for reading: " + path);

  png_byte header[8];
  if (std::fread(header, 1, 8, fp.get()) != 8 ||
      png_sig_cmp(header, 0, 8) != 0) {
    throw BadTargetImage("not a PNG file: " + path);
  }
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoFailure("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoFailure("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw BadTargetImage("undecodable PNG: " + path);
  }
  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  // Normalize any valid PNG into 8-bit RGB.
  png_set_strip_16(png);
  png_set_palette_to_rgb(png);
  png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY ||
      png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  DecodedPng out;
  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  if (png_get_rowbytes(png, info) != static_cast<size_t>(out.width) * 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw BadTargetImage("unexpected row size in " + path);
  }
  out.pixels.resize(static_cast<size_t>(out.width) * out.height);
  std::vector<png_bytep> rows(out.height);
  for (int y = 0; y < out.height; ++y) {
    rows[y] = reinterpret_cast<png_bytep>(
        &out.pixels[static_cast<size_t>(y) * out.width]);
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

TiledImage read_png_tile(const std::string& path) {
  DecodedPng png = read_png(path);
  if (png.width != kTileSize || png.height != kTileSize) {
    throw BadTargetImage("expected 512x512 tile, got " +
                         std::to_string(png.width) + "x" +
                         std::to_string(png.height) + ": " + path);
  }
  TiledImage tile;
  tile.pixels = std::move(png.pixels);
  return tile;
}

}  // namespace jointcanvas
