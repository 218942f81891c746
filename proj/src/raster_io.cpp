#include "rastar/raster_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>

namespace rastar {

const char* to_string(RasterErrc code) {
  switch (code) {
    case RasterErrc::kOpenFailed: return "open failed";
    case RasterErrc::kBadMagic: return "bad magic number";
    case RasterErrc::kMalformedHeader: return "malformed header";
    case RasterErrc::kUnsupportedMaxval: return "unsupported maxval";
    case RasterErrc::kDimensionMismatch: return "dimension mismatch";
    case RasterErrc::kTruncated: return "truncated payload";
    case RasterErrc::kWriteFailed: return "write failed";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail(RasterErrc code, const std::string& detail = {}) {
  std::string msg = to_string(code);
  if (!detail.empty()) msg += ": " + detail;
  throw RasterError(code, msg);
}

struct Header {
  int width = 0;
  int height = 0;
  std::size_t payload_offset = 0;
};

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long long read_uint(const char* what) {
    skip_space_and_comments();
    long long value = 0;
    const char* first = bytes_.data() + pos_;
    const char* last = bytes_.data() + bytes_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first || value < 0) {
      fail(pos_ >= bytes_.size() ? RasterErrc::kTruncated : RasterErrc::kMalformedHeader,
           std::string("expected ") + what);
    }
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

Header parse_header(std::string_view bytes, std::string_view magic, std::size_t channels) {
  if (bytes.size() < 2) fail(RasterErrc::kTruncated, "missing magic number");
  if (bytes.substr(0, 2) != magic) {
    fail(RasterErrc::kBadMagic, "expected " + std::string(magic));
  }
  HeaderReader reader(bytes);
  reader.advance(2);
  Header h;
  const long long w = reader.read_uint("width");
  const long long ht = reader.read_uint("height");
  const long long maxval = reader.read_uint("maxval");
  if (w < 1 || ht < 1 || w > (1 << 20) || ht > (1 << 20)) {
    fail(RasterErrc::kMalformedHeader, "bad dimensions");
  }
  if (maxval != 255) fail(RasterErrc::kUnsupportedMaxval, std::to_string(maxval));
  // Exactly one whitespace byte separates maxval from the payload.
  if (reader.pos() >= bytes.size()) fail(RasterErrc::kTruncated, "missing payload");
  if (!std::isspace(static_cast<unsigned char>(bytes[reader.pos()]))) {
    fail(RasterErrc::kMalformedHeader, "no whitespace after maxval");
  }
  h.width = static_cast<int>(w);
  h.height = static_cast<int>(ht);
  h.payload_offset = reader.pos() + 1;
  const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(ht) * channels;
  if (bytes.size() - h.payload_offset < need) {
    fail(RasterErrc::kTruncated, "expected " + std::to_string(need) + " payload bytes");
  }
  return h;
}

std::string header(std::string_view magic, int w, int h) {
  return std::string(magic) + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
}

}  // namespace

BitGrid RgbRaster::channel_bits(int channel) const {
  BitGrid out(width, height);
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      if (at({col, row}, channel) != 0) out.set({col, row});
    }
  }
  return out;
}

std::string encode_pgm(const BitGrid& bits) {
  std::string out = header("P5", bits.width(), bits.height());
  out.reserve(out.size() + bits.size());
  for (std::uint8_t b : bits.data()) out.push_back(static_cast<char>(b ? 255 : 0));
  return out;
}

BitGrid decode_pgm(std::string_view bytes) {
  const Header h = parse_header(bytes, "P5", 1);
  BitGrid out(h.width, h.height);
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = bytes[h.payload_offset + i] != 0 ? 1 : 0;
  }
  return out;
}

std::string encode_ppm(const RgbRaster& image) {
  std::string out = header("P6", image.width, image.height);
  out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
  return out;
}

RgbRaster decode_ppm(std::string_view bytes) {
  const Header h = parse_header(bytes, "P6", 3);
  RgbRaster out(h.width, h.height);
  const auto* src = reinterpret_cast<const std::uint8_t*>(bytes.data() + h.payload_offset);
  std::copy(src, src + out.pixels.size(), out.pixels.begin());
  return out;
}

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(RasterErrc::kOpenFailed, path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file_bytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(RasterErrc::kWriteFailed, path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(RasterErrc::kWriteFailed, path.string());
}

void write_pgm(const BitGrid& bits, const std::filesystem::path& path) {
  write_file_bytes(path, encode_pgm(bits));
}

BitGrid read_pgm(const std::filesystem::path& path) { return decode_pgm(read_file_bytes(path)); }

BitGrid read_pgm(const std::filesystem::path& path, int width, int height) {
  BitGrid out = read_pgm(path);
  if (out.width() != width || out.height() != height) {
    fail(RasterErrc::kDimensionMismatch,
         path.string() + " is " + std::to_string(out.width()) + "x" +
             std::to_string(out.height()) + ", expected " + std::to_string(width) + "x" +
             std::to_string(height));
  }
  return out;
}

void write_ppm(const RgbRaster& image, const std::filesystem::path& path) {
  write_file_bytes(path, encode_ppm(image));
}

RgbRaster read_ppm(const std::filesystem::path& path) { return decode_ppm(read_file_bytes(path)); }

}  // namespace rastar
