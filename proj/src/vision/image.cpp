#include "fisim/vision/image.hpp"

#include <fstream>
#include <stdexcept>

namespace fisim {

void save_raw(const Image& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << img.width << " " << img.height << "\n";
  out.write(reinterpret_cast<const char*>(img.px.data()),
            static_cast<std::streamsize>(img.px.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

Image load_raw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for read: " + path);
  int w = 0, h = 0;
  in >> w >> h;
  in.ignore(1);  // newline after the header
  if (!in || w <= 0 || h <= 0) throw std::runtime_error("bad raw image header: " + path);
  Image img(w, h);
  in.read(reinterpret_cast<char*>(img.px.data()),
          static_cast<std::streamsize>(img.px.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.px.size()))
    throw std::runtime_error("truncated raw image: " + path);
  return img;
}

}  // namespace fisim
