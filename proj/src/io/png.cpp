// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/io/png.hpp"

#include <zlib.h>

#include <cstdlib>
#include <cstring>
#include <fstream>

#include "groupforge/core/error.hpp"

namespace gf {

namespace {

constexpr uint8_t kSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
constexpr int kZlibLevel = 6;  // pinned so identical pixels give identical bytes

void put_u32be(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

uint32_t get_u32be(const uint8_t* p) {
  return (static_cast<uint32_t>(p[0]) << 24) | (static_cast<uint32_t>(p[1]) << 16) |
         (static_cast<uint32_t>(p[2]) << 8) | static_cast<uint32_t>(p[3]);
}

void append_chunk(std::vector<uint8_t>& out, const char type[4], const uint8_t* data, size_t len) {
  put_u32be(out, static_cast<uint32_t>(len));
  const size_t typeAt = out.size();
  out.insert(out.end(), type, type + 4);
  if (len) out.insert(out.end(), data, data + len);
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, out.data() + typeAt, static_cast<uInt>(4 + len));
  put_u32be(out, static_cast<uint32_t>(crc));
}

std::vector<uint8_t> encode_png(int width, int height, int channels,
                                const std::vector<uint8_t>& pixels) {
  if (width <= 0 || height <= 0) raise(Errc::IoError, "png encode: empty canvas");
  const size_t stride = static_cast<size_t>(width) * channels;
  if (pixels.size() != stride * static_cast<size_t>(height))
    raise(Errc::IoError, "png encode: pixel buffer size mismatch");

  // filter byte 0 (None) per scanline
  std::vector<uint8_t> raw;
  raw.reserve((stride + 1) * static_cast<size_t>(height));
  for (int y = 0; y < height; ++y) {
    raw.push_back(0);
    raw.insert(raw.end(), pixels.begin() + static_cast<size_t>(y) * stride,
               pixels.begin() + static_cast<size_t>(y + 1) * stride);
  }

  uLongf compLen = compressBound(static_cast<uLong>(raw.size()));
  std::vector<uint8_t> comp(compLen);
  if (compress2(comp.data(), &compLen, raw.data(), static_cast<uLong>(raw.size()), kZlibLevel) !=
      Z_OK)
    raise(Errc::IoError, "png encode: deflate failed");
  comp.resize(compLen);

  std::vector<uint8_t> out;
  out.insert(out.end(), kSignature, kSignature + 8);
  uint8_t ihdr[13];
  ihdr[0] = static_cast<uint8_t>(static_cast<uint32_t>(width) >> 24);
  ihdr[1] = static_cast<uint8_t>(static_cast<uint32_t>(width) >> 16);
  ihdr[2] = static_cast<uint8_t>(static_cast<uint32_t>(width) >> 8);
  ihdr[3] = static_cast<uint8_t>(width);
  ihdr[4] = static_cast<uint8_t>(static_cast<uint32_t>(height) >> 24);
  ihdr[5] = static_cast<uint8_t>(static_cast<uint32_t>(height) >> 16);
  ihdr[6] = static_cast<uint8_t>(static_cast<uint32_t>(height) >> 8);
  ihdr[7] = static_cast<uint8_t>(height);
  ihdr[8] = 8;                                      // bit depth
  ihdr[9] = channels == 1 ? 0 : 2;                  // gray / truecolor
  ihdr[10] = 0;                                     // compression
  ihdr[11] = 0;                                     // filter method
  ihdr[12] = 0;                                     // no interlace
  append_chunk(out, "IHDR", ihdr, sizeof(ihdr));
  append_chunk(out, "IDAT", comp.data(), comp.size());
  append_chunk(out, "IEND", nullptr, 0);
  return out;
}

int paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a);
  const int pb = std::abs(p - b);
  const int pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

}  // namespace

std::vector<uint8_t> encode_png_rgb(const Image& image) {
  return encode_png(image.width, image.height, 3, image.rgb);
}

std::vector<uint8_t> encode_png_gray(int width, int height, const std::vector<uint8_t>& gray) {
  return encode_png(width, height, 1, gray);
}

void write_png_rgb(const std::string& path, const Image& image) {
  const std::vector<uint8_t> bytes = encode_png_rgb(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::IoError, "cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) raise(Errc::IoError, "write failed: " + path);
}

void write_png_gray(const std::string& path, int width, int height,
                    const std::vector<uint8_t>& gray) {
  const std::vector<uint8_t> bytes = encode_png_gray(width, height, gray);
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::IoError, "cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) raise(Errc::IoError, "write failed: " + path);
}

PngBuffer decode_png(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kSignature, 8) != 0)
    raise(Errc::IoError, "not a png file");

  int width = 0, height = 0, colorType = -1;
  std::vector<uint8_t> idat;
  size_t pos = 8;
  while (pos + 8 <= bytes.size()) {
    const uint32_t len = get_u32be(bytes.data() + pos);
    if (pos + 12 + len > bytes.size()) raise(Errc::IoError, "truncated png chunk");
    const char* type = reinterpret_cast<const char*>(bytes.data() + pos + 4);
    const uint8_t* data = bytes.data() + pos + 8;
    if (std::memcmp(type, "IHDR", 4) == 0) {
      if (len != 13) raise(Errc::IoError, "bad IHDR");
      width = static_cast<int>(get_u32be(data));
      height = static_cast<int>(get_u32be(data + 4));
      const int bitDepth = data[8];
      colorType = data[9];
      if (bitDepth != 8) raise(Errc::IoError, "unsupported png bit depth");
      if (colorType != 0 && colorType != 2 && colorType != 6)
        raise(Errc::IoError, "unsupported png color type (palette?)");
      if (data[12] != 0) raise(Errc::IoError, "interlaced png not supported");
    } else if (std::memcmp(type, "IDAT", 4) == 0) {
      idat.insert(idat.end(), data, data + len);
    } else if (std::memcmp(type, "IEND", 4) == 0) {
      break;
    }
    pos += 12 + len;
  }
  if (width <= 0 || height <= 0 || idat.empty()) raise(Errc::IoError, "png has no image data");

  const int srcChannels = colorType == 0 ? 1 : (colorType == 2 ? 3 : 4);
  const size_t stride = static_cast<size_t>(width) * srcChannels;
  std::vector<uint8_t> raw((stride + 1) * static_cast<size_t>(height));
  uLongf rawLen = static_cast<uLongf>(raw.size());
  if (uncompress(raw.data(), &rawLen, idat.data(), static_cast<uLong>(idat.size())) != Z_OK ||
      rawLen != raw.size())
    raise(Errc::IoError, "png inflate failed");

  // undo per-scanline filters
  const int bpp = srcChannels;
  std::vector<uint8_t> flat(stride * static_cast<size_t>(height));
  for (int y = 0; y < height; ++y) {
    const uint8_t filter = raw[static_cast<size_t>(y) * (stride + 1)];
    const uint8_t* src = raw.data() + static_cast<size_t>(y) * (stride + 1) + 1;
    uint8_t* cur = flat.data() + static_cast<size_t>(y) * stride;
    const uint8_t* prev = y > 0 ? cur - stride : nullptr;
    for (size_t i = 0; i < stride; ++i) {
      const int a = i >= static_cast<size_t>(bpp) ? cur[i - bpp] : 0;
      const int b = prev ? prev[i] : 0;
      const int c = (prev && i >= static_cast<size_t>(bpp)) ? prev[i - bpp] : 0;
      int v = src[i];
      switch (filter) {
        case 0: break;
        case 1: v += a; break;
        case 2: v += b; break;
        case 3: v += (a + b) / 2; break;
        case 4: v += paeth(a, b, c); break;
        default: raise(Errc::IoError, "unknown png filter");
      }
      cur[i] = static_cast<uint8_t>(v & 0xFF);
    }
  }

  PngBuffer out;
  out.width = width;
  out.height = height;
  if (srcChannels == 4) {
    out.channels = 3;
    out.pixels.resize(static_cast<size_t>(width) * height * 3);
    for (size_t p = 0; p < static_cast<size_t>(width) * height; ++p) {
      out.pixels[3 * p] = flat[4 * p];
      out.pixels[3 * p + 1] = flat[4 * p + 1];
      out.pixels[3 * p + 2] = flat[4 * p + 2];
    }
  } else {
    out.channels = srcChannels;
    out.pixels = std::move(flat);
  }
  return out;
}

PngBuffer read_png(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::MissingImage, "cannot open: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return decode_png(bytes);
}

Image image_from_png(const PngBuffer& buf) {
  Image img(buf.width, buf.height);
  if (buf.channels == 3) {
    img.rgb = buf.pixels;
  } else {
    for (size_t p = 0; p < buf.pixels.size(); ++p) {
      img.rgb[3 * p] = buf.pixels[p];
      img.rgb[3 * p + 1] = buf.pixels[p];
      img.rgb[3 * p + 2] = buf.pixels[p];
    }
  }
  return img;
}

}  // namespace gf
