#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "va/common.hpp"

namespace va {

// Single-channel float raster.
struct Plane {
  int w = 0;
  int h = 0;
  std::vector<float> v;

  Plane() = default;
  Plane(int w_, int h_, float fill = 0.f) : w(w_), h(h_), v(static_cast<size_t>(w_) * h_, fill) {}
  float& at(int x, int y) { return v[static_cast<size_t>(y) * w + x]; }
  float at(int x, int y) const { return v[static_cast<size_t>(y) * w + x]; }
};

// Planar float RGB image, values nominally in [0, 1].
struct Image {
  int w = 0;
  int h = 0;
  std::vector<float> v;  // 3 planes: r then g then b

  Image() = default;
  Image(int w_, int h_) : w(w_), h(h_), v(static_cast<size_t>(w_) * h_ * 3, 0.f) {}

  size_t plane_size() const { return static_cast<size_t>(w) * h; }
  float& at(int c, int x, int y) { return v[c * plane_size() + static_cast<size_t>(y) * w + x]; }
  float at(int c, int x, int y) const { return v[c * plane_size() + static_cast<size_t>(y) * w + x]; }
  void set_px(int x, int y, float r, float g, float b) {
    at(0, x, y) = r;
    at(1, x, y) = g;
    at(2, x, y) = b;
  }
};

// Binary PPM (P6, maxval 255).  Deterministic byte-for-byte output.
Image load_ppm(const std::string& path);
void save_ppm(const std::string& path, const Image& img);

Image resize_bilinear(const Image& img, int new_w, int new_h);
// Resize so the shorter side equals `target`, preserving aspect ratio.
Image resize_shorter_side(const Image& img, int target);
Image crop(const Image& img, int x0, int y0, int cw, int ch);
Image hflip(const Image& img);
// Lossless 90-degree counter-clockwise rotation.
Image rot90(const Image& img);

Plane luma(const Image& img);
Plane gaussian_blur(const Plane& p, double sigma);
Image gaussian_blur(const Image& img, double sigma);
Plane resize_bilinear(const Plane& p, int new_w, int new_h);

// BT.601 luma/chroma split.  y in [0,1]; cb, cr centered on 0.
void rgb_to_ycbcr(const Image& img, Plane& y, Plane& cb, Plane& cr);
Image ycbcr_to_rgb(const Plane& y, const Plane& cb, const Plane& cr);

// Mean squared 4-neighbour Laplacian over a rectangular region (border
// pixels of the image are skipped).  High values mean sharp detail.
double laplacian_energy(const Plane& p, int x0, int y0, int x1, int y1);

// Convenience band regions used by the sharpness oracle: a centered box
// covering `center_fraction` of each side, and a border band of width
// `border_fraction * min(w, h)`.
double center_band_energy(const Plane& p, double center_fraction);
double fringe_band_energy(const Plane& p, double border_fraction);

}  // namespace va
