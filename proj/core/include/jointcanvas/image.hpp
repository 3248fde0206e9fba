#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "jointcanvas/camera.hpp"

namespace jointcanvas {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

// One camera view, 8-bit RGB, row-major.
struct ViewImage {
  int width = kViewSize;
  int height = kViewSize;
  ViewName view_name = ViewName::Front;
  std::vector<Rgb> pixels;

  ViewImage() : pixels(static_cast<size_t>(kViewSize) * kViewSize) {}
  ViewImage(int w, int h, ViewName v)
      : width(w), height(h), view_name(v),
        pixels(static_cast<size_t>(w) * h) {}

  Rgb& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
  const Rgb& at(int x, int y) const {
    return pixels[static_cast<size_t>(y) * width + x];
  }
  bool operator==(const ViewImage&) const = default;
};

// 2x2 tiling of the four views into one 512x512 canvas. Quadrant order is
// kViewOrder, row-major: front top-left, wrist top-right, left_shoulder
// bottom-left, right_shoulder bottom-right.
struct TiledImage {
  int width = kTileSize;
  int height = kTileSize;
  std::vector<Rgb> pixels;

  TiledImage() : pixels(static_cast<size_t>(kTileSize) * kTileSize) {}

  Rgb& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
  const Rgb& at(int x, int y) const {
    return pixels[static_cast<size_t>(y) * width + x];
  }
  bool operator==(const TiledImage&) const = default;
};

// Per-pixel boolean mask over a view or a tile (1 = covered).
using PixelMask = std::vector<std::uint8_t>;

// Tiles four 256x256 views in quadrant order. Throws WrongViewSet when the
// views are mis-ordered or mis-sized.
TiledImage tile_views(const std::array<ViewImage, kNumViews>& views);

// Inverse of tile_views; untile(tile(x)) == x bit-exactly. Throws
// WrongViewSet when the tile is not 512x512.
std::array<ViewImage, kNumViews> untile_views(const TiledImage& tile);

// Assembles per-view masks into a tiled 512x512 mask in quadrant order.
PixelMask tile_masks(const std::array<PixelMask, kNumViews>& masks);

// PNG I/O, 8-bit RGB only. Throws IoFailure on filesystem errors and
// BadTargetImage on undecodable content.
void write_png(const std::string& path, int width, int height,
               const std::vector<Rgb>& pixels);
void write_png(const std::string& path, const TiledImage& image);
void write_png(const std::string& path, const ViewImage& image);

struct DecodedPng {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;
};
DecodedPng read_png(const std::string& path);
TiledImage read_png_tile(const std::string& path);

}  // namespace jointcanvas
