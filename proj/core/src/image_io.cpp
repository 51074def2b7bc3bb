// Copyright 2026 The RIP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rip/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>

#include "rip/engine.hpp"
#include "rip/error.hpp"

namespace rip {

double rgb_to_luma(double red, double green, double blue) {
  return std::floor(0.299 * red + 0.587 * green + 0.114 * blue + 0.5);
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageFormatError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string lowercase_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext;
}

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string next_token(const std::string& bytes, std::size_t& pos) {
  for (;;) {
    while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    if (pos < bytes.size() && bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  return bytes.substr(start, pos - start);
}

int parse_header_int(const std::string& token, const char* field) {
  if (token.empty() || !std::all_of(token.begin(), token.end(),
                                    [](unsigned char ch) { return std::isdigit(ch); })) {
    throw ImageFormatError(std::string("PGM: malformed ") + field);
  }
  if (token.size() > 9) throw ImageFormatError(std::string("PGM: ") + field + " too large");
  return std::stoi(token);
}

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::FILE* file = nullptr;
  ~PngReader() {
    png_destroy_read_struct(&png, &info, nullptr);
    if (file != nullptr) std::fclose(file);
  }
};

void png_error_handler(png_structp png, png_const_charp message) {
  auto* text = static_cast<std::string*>(png_get_error_ptr(png));
  *text = message;
  std::longjmp(png_jmpbuf(png), 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

Plane decode_png(const std::filesystem::path& path) {
  PngReader reader;
  std::string libpng_message;
  reader.file = std::fopen(path.c_str(), "rb");
  if (reader.file == nullptr) throw ImageFormatError("cannot open " + path.string());

  unsigned char signature[8];
  if (std::fread(signature, 1, 8, reader.file) != 8 || png_sig_cmp(signature, 0, 8) != 0) {
    throw ImageFormatError(path.string() + ": not a PNG file");
  }
  reader.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &libpng_message,
                                      png_error_handler, png_warning_handler);
  if (reader.png == nullptr) throw ImageFormatError("libpng initialization failed");
  reader.info = png_create_info_struct(reader.png);
  if (reader.info == nullptr) throw ImageFormatError("libpng initialization failed");

  // Rows are decoded into a buffer owned outside the setjmp scope so no
  // object with a destructor is skipped by longjmp.
  std::vector<png_byte> buffer;
  std::vector<png_bytep> rows;
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int channels = 0;
  bool unsupported_depth = false;
  int bit_depth = 0;

  if (setjmp(png_jmpbuf(reader.png))) {
    throw ImageFormatError(path.string() + ": " + libpng_message);
  }
  png_init_io(reader.png, reader.file);
  png_set_sig_bytes(reader.png, 8);
  png_read_info(reader.png, reader.info);
  width = png_get_image_width(reader.png, reader.info);
  height = png_get_image_height(reader.png, reader.info);
  bit_depth = png_get_bit_depth(reader.png, reader.info);
  const int color_type = png_get_color_type(reader.png, reader.info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) {
    png_set_palette_to_rgb(reader.png);
  } else if (bit_depth != 8) {
    unsupported_depth = true;
  }
  if (!unsupported_depth) {
    if (png_get_valid(reader.png, reader.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(reader.png);
    png_set_strip_alpha(reader.png);
    png_read_update_info(reader.png, reader.info);
    channels = png_get_channels(reader.png, reader.info);
    const std::size_t stride = png_get_rowbytes(reader.png, reader.info);
    buffer.resize(stride * height);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = buffer.data() + y * stride;
    png_read_image(reader.png, rows.data());
    png_read_end(reader.png, nullptr);
  }

  if (unsupported_depth) {
    throw ImageFormatError(path.string() + ": unsupported bit depth " +
                           std::to_string(bit_depth) + " (8-bit required)");
  }
  if (channels != 1 && channels != 3) {
    throw ImageFormatError(path.string() + ": unexpected channel count " +
                           std::to_string(channels));
  }

  Plane plane(static_cast<int>(width), static_cast<int>(height));
  const std::size_t stride = width * static_cast<std::size_t>(channels);
  for (png_uint_32 y = 0; y < height; ++y) {
    const png_byte* row = buffer.data() + y * stride;
    for (png_uint_32 x = 0; x < width; ++x) {
      if (channels == 1) {
        plane(static_cast<int>(y), static_cast<int>(x)) = row[x];
      } else {
        const png_byte* px = row + 3 * x;
        plane(static_cast<int>(y), static_cast<int>(x)) = rgb_to_luma(px[0], px[1], px[2]);
      }
    }
  }
  return plane;
}

}  // namespace

Plane decode_pgm(const std::string& bytes) {
  std::size_t pos = 0;
  if (next_token(bytes, pos) != "P5") throw ImageFormatError("PGM: expected P5 magic");
  const int width = parse_header_int(next_token(bytes, pos), "width");
  const int height = parse_header_int(next_token(bytes, pos), "height");
  const int maxval = parse_header_int(next_token(bytes, pos), "maxval");
  if (maxval < 1 || maxval > 255) {
    throw ImageFormatError("PGM: unsupported bit depth (maxval " + std::to_string(maxval) +
                           "), 8-bit required");
  }
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw ImageFormatError("PGM: malformed header");
  }
  ++pos;
  const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - pos < need) {
    throw ImageFormatError("PGM: pixel data truncated (" + std::to_string(bytes.size() - pos) +
                           " of " + std::to_string(need) + " bytes)");
  }
  Plane plane(width, height);
  for (std::size_t i = 0; i < need; ++i) {
    plane.pixels()[i] = static_cast<unsigned char>(bytes[pos + i]);
  }
  return plane;
}

Plane decode_to_luminance(const std::filesystem::path& path) {
  const std::string ext = lowercase_extension(path);
  if (ext == ".png") return decode_png(path);
  if (ext == ".pgm") return decode_pgm(read_file(path));
  // Fall back to sniffing the signature.
  const std::string bytes = read_file(path);
  if (bytes.rfind("P5", 0) == 0) return decode_pgm(bytes);
  if (bytes.size() >= 8 && png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) == 0) {
    return decode_png(path);
  }
  throw ImageFormatError(path.string() + ": unrecognized image format (PGM P5 or PNG expected)");
}

std::string encode_pgm(const Plane& plane) {
  std::string out = "P5\n" + std::to_string(plane.width()) + " " +
                    std::to_string(plane.height()) + "\n255\n";
  out.reserve(out.size() + plane.pixels().size());
  for (double v : plane.pixels()) {
    out.push_back(static_cast<char>(static_cast<unsigned char>(quantize_sample(v))));
  }
  return out;
}

void write_pgm(const Plane& plane, const std::filesystem::path& path) {
  const std::string bytes = encode_pgm(plane);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error("write failed: " + path.string());
}

std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw InvalidArgument(dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = lowercase_extension(entry.path());
    if (ext == ".png" || ext == ".pgm") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rip
