#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fisim {

// 8-bit grayscale raster, row-major, origin at the top-left corner.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> px;

  Image() = default;
  Image(int w, int h, uint8_t fill = 0)
      : width(w), height(h), px(static_cast<size_t>(w) * h, fill) {}

  uint8_t& at(int x, int y) { return px[static_cast<size_t>(y) * width + x]; }
  uint8_t at(int x, int y) const { return px[static_cast<size_t>(y) * width + x]; }
  uint8_t* row(int y) { return px.data() + static_cast<size_t>(y) * width; }
  const uint8_t* row(int y) const { return px.data() + static_cast<size_t>(y) * width; }
  size_t size() const { return px.size(); }

  bool operator==(const Image& o) const {
    return width == o.width && height == o.height && px == o.px;
  }
};

// Debug frame export: ASCII header line "W H\n" followed by raw row-major
// bytes. Throws std::runtime_error on I/O failure.
void save_raw(const Image& img, const std::string& path);
Image load_raw(const std::string& path);

}  // namespace fisim
