#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rastar/grid.hpp"

namespace rastar {

// Binary netpbm I/O. Writers emit "P5\n<w> <h>\n255\n" (or P6) followed by
// the row-major payload; grids and masks are stored as 0 / 255.

enum class RasterErrc {
  kOpenFailed,
  kBadMagic,
  kMalformedHeader,
  kUnsupportedMaxval,
  kDimensionMismatch,
  kTruncated,
  kWriteFailed,
};

const char* to_string(RasterErrc code);

class RasterError : public std::runtime_error {
 public:
  RasterError(RasterErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  RasterErrc code() const { return code_; }

 private:
  RasterErrc code_;
};

/// Interleaved 8-bit RGB raster; channel c of pixel (col,row) lives at
/// 3 * (row * width + col) + c.
struct RgbRaster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  RgbRaster() = default;
  RgbRaster(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

  std::uint8_t& at(Cell c, int channel) {
    return pixels[3 * (static_cast<std::size_t>(c.row) * width + c.col) + channel];
  }
  std::uint8_t at(Cell c, int channel) const {
    return pixels[3 * (static_cast<std::size_t>(c.row) * width + c.col) + channel];
  }
  // Nonzero samples of one channel as a BitGrid.
  BitGrid channel_bits(int channel) const;

  friend bool operator==(const RgbRaster&, const RgbRaster&) = default;
};

std::string encode_pgm(const BitGrid& bits);
// Any nonzero sample decodes as set.
BitGrid decode_pgm(std::string_view bytes);
std::string encode_ppm(const RgbRaster& image);
RgbRaster decode_ppm(std::string_view bytes);

void write_pgm(const BitGrid& bits, const std::filesystem::path& path);
BitGrid read_pgm(const std::filesystem::path& path);
// Same, but fails with kDimensionMismatch unless the raster is width x height.
BitGrid read_pgm(const std::filesystem::path& path, int width, int height);

void write_ppm(const RgbRaster& image, const std::filesystem::path& path);
RgbRaster read_ppm(const std::filesystem::path& path);

std::string read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace rastar
