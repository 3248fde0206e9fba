#include <algorithm>
#include <cmath>
#include <cstdint>

#include "jointcanvas/errors.hpp"
#include "jointcanvas/palette.hpp"
#include "jointcanvas/render.hpp"
#include "jointcanvas/rng.hpp"

namespace jointcanvas {

namespace {

// Samples a color that no detector pass can mistake for a sphere color.
Rgb safe_random_color(Rng& rng, const Palette& pal) {
  for (int tries = 0; tries < 64; ++tries) {
    Rgb c{static_cast<std::uint8_t>(rng.uniform_int(256)),
          static_cast<std::uint8_t>(rng.uniform_int(256)),
          static_cast<std::uint8_t>(rng.uniform_int(256))};
    if (pal.background_color_safe(c)) return c;
  }
  return Rgb{150, 150, 150};
}

// Pair of colors whose connecting segment stays safe, for gradients/noise.
void safe_color_pair(Rng& rng, const Palette& pal, Rgb& a, Rgb& b) {
  for (int tries = 0; tries < 64; ++tries) {
    a = safe_random_color(rng, pal);
    b = safe_random_color(rng, pal);
    if (pal.background_segment_safe(a, b)) return;
  }
  a = Rgb{140, 140, 140};
  b = Rgb{190, 190, 190};
}

Rgb lerp_rgb(const Rgb& a, const Rgb& b, double t) {
  auto mix = [&](std::uint8_t x, std::uint8_t y) {
    return static_cast<std::uint8_t>(std::round(x + (y - x) * t));
  };
  return Rgb{mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

double lattice_hash(std::int64_t ix, std::int64_t iy, std::uint32_t salt) {
  std::uint64_t s = mix_seed({static_cast<std::uint64_t>(ix) * 2654435761ULL,
                              static_cast<std::uint64_t>(iy) * 40503ULL, salt});
  return static_cast<double>(s >> 11) * (1.0 / 9007199254740992.0);
}

struct PixelBuffer {
  std::vector<Rgb>& pixels;
  int width;
  int height;
};

void composite_into(PixelBuffer out, const PixelMask& sphere_mask,
                    std::uint64_t seed) {
  const Palette pal = Palette::default_palette();
  Rng rng(mix_seed({seed, 0xBAC6u}));

  const int W = out.width, H = out.height;
  const int family = rng.uniform_int(4);
  Rgb a, b;
  safe_color_pair(rng, pal, a, b);

  switch (family) {
    case 0: {  // solid fill
      for (size_t i = 0; i < out.pixels.size(); ++i) {
        if (!sphere_mask[i]) out.pixels[i] = a;
      }
      break;
    }
    case 1: {  // linear gradient at a random orientation
      const double ang = rng.uniform(0.0, 2.0 * M_PI);
      const double gx = std::cos(ang), gy = std::sin(ang);
      const double span = std::abs(gx) * W + std::abs(gy) * H;
      for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
          const size_t i = static_cast<size_t>(y) * W + x;
          if (sphere_mask[i]) continue;
          double t = (gx * x + gy * y) / span + 0.5;
          out.pixels[i] = lerp_rgb(a, b, std::clamp(t, 0.0, 1.0));
        }
      }
      break;
    }
    case 2: {  // checkerboard
      const int cell = 16 + 8 * rng.uniform_int(5);
      for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
          const size_t i = static_cast<size_t>(y) * W + x;
          if (sphere_mask[i]) continue;
          out.pixels[i] = (((x / cell) + (y / cell)) & 1) ? b : a;
        }
      }
      break;
    }
    default: {  // bilinear value noise
      const double scale = 24.0 + 12.0 * rng.uniform_int(4);
      const std::uint32_t salt =
          static_cast<std::uint32_t>(rng.uniform_int(1 << 30));
      for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
          const size_t i = static_cast<size_t>(y) * W + x;
          if (sphere_mask[i]) continue;
          const double fu = x / scale, fv = y / scale;
          const std::int64_t iu = static_cast<std::int64_t>(std::floor(fu));
          const std::int64_t iv = static_cast<std::int64_t>(std::floor(fv));
          const double tu = fu - iu, tv = fv - iv;
          const double v00 = lattice_hash(iu, iv, salt);
          const double v10 = lattice_hash(iu + 1, iv, salt);
          const double v01 = lattice_hash(iu, iv + 1, salt);
          const double v11 = lattice_hash(iu + 1, iv + 1, salt);
          const double t = (v00 * (1 - tu) + v10 * tu) * (1 - tv) +
                           (v01 * (1 - tu) + v11 * tu) * tv;
          out.pixels[i] = lerp_rgb(a, b, t);
        }
      }
      break;
    }
  }
}

}  // namespace

ViewImage composite_random_background(const ViewImage& image,
                                      const PixelMask& sphere_mask,
                                      std::uint64_t seed) {
  if (sphere_mask.size() != image.pixels.size()) {
    throw ConfigError("sphere mask size does not match image");
  }
  ViewImage out = image;
  composite_into({out.pixels, out.width, out.height}, sphere_mask, seed);
  return out;
}

TiledImage composite_random_background(const TiledImage& image,
                                       const PixelMask& sphere_mask,
                                       std::uint64_t seed) {
  if (sphere_mask.size() != image.pixels.size()) {
    throw ConfigError("sphere mask size does not match image");
  }
  TiledImage out = image;
  composite_into({out.pixels, out.width, out.height}, sphere_mask, seed);
  return out;
}

}  // namespace jointcanvas
