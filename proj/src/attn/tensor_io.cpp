// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/attn/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "groupforge/core/error.hpp"

namespace gf {

namespace {

constexpr char kMagic[4] = {'G', 'F', 'T', 'N'};

void put_u32(std::ostream& out, uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                         static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  out.write(bytes, 4);
}

uint32_t get_u32(std::istream& in) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  if (!in) raise(Errc::IoError, "truncated tensor record");
  return static_cast<uint32_t>(bytes[0]) | (static_cast<uint32_t>(bytes[1]) << 8) |
         (static_cast<uint32_t>(bytes[2]) << 16) | (static_cast<uint32_t>(bytes[3]) << 24);
}

}  // namespace

size_t Tensor::element_count() const {
  size_t n = 1;
  for (uint32_t d : dims) n *= d;
  return dims.empty() ? 0 : n;
}

void write_tensor(std::ostream& out, const Tensor& tensor) {
  out.write(kMagic, 4);
  put_u32(out, static_cast<uint32_t>(tensor.dims.size()));
  for (uint32_t d : tensor.dims) put_u32(out, d);
  for (float f : tensor.data) put_u32(out, std::bit_cast<uint32_t>(f));
}

Tensor read_tensor(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    raise(Errc::IoError, "bad tensor magic (expected GFTN)");
  const uint32_t rank = get_u32(in);
  if (rank == 0 || rank > 8) raise(Errc::IoError, "unsupported tensor rank");
  Tensor t;
  t.dims.resize(rank);
  size_t count = 1;
  for (uint32_t& d : t.dims) {
    d = get_u32(in);
    count *= d;
  }
  if (count > (1u << 30)) raise(Errc::IoError, "tensor too large");
  t.data.resize(count);
  for (float& f : t.data) f = std::bit_cast<float>(get_u32(in));
  return t;
}

void save_tensors(const std::string& path, std::span<const Tensor> tensors) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::IoError, "cannot open for writing: " + path);
  for (const Tensor& t : tensors) write_tensor(out, t);
  if (!out) raise(Errc::IoError, "write failed: " + path);
}

std::vector<Tensor> load_tensors(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::IoError, "cannot open: " + path);
  std::vector<Tensor> out;
  while (in.peek() != std::char_traits<char>::eof()) out.push_back(read_tensor(in));
  return out;
}

Tensor tensor_from_mat(const Mat& m) {
  Tensor t;
  t.dims = {static_cast<uint32_t>(m.rows), static_cast<uint32_t>(m.cols)};
  t.data.reserve(m.data.size());
  for (double v : m.data) t.data.push_back(static_cast<float>(v));
  return t;
}

Mat mat_from_tensor(const Tensor& t) {
  if (t.dims.size() != 2) raise(Errc::IoError, "expected a rank-2 tensor");
  Mat m(t.dims[0], t.dims[1]);
  for (size_t i = 0; i < t.data.size(); ++i) m.data[i] = static_cast<double>(t.data[i]);
  return m;
}

namespace {

Tensor tensor_from_vec(const std::vector<double>& v) {
  Tensor t;
  t.dims = {static_cast<uint32_t>(v.size())};
  t.data.reserve(v.size());
  for (double x : v) t.data.push_back(static_cast<float>(x));
  return t;
}

std::vector<double> vec_from_tensor(const Tensor& t) {
  if (t.dims.size() != 1) raise(Errc::IoError, "expected a rank-1 tensor");
  std::vector<double> v(t.data.size());
  for (size_t i = 0; i < t.data.size(); ++i) v[i] = static_cast<double>(t.data[i]);
  return v;
}

}  // namespace

void save_fusion_weights(const std::string& path, const FusionWeights& weights) {
  std::vector<Tensor> records;
  records.push_back(tensor_from_mat(weights.mlpWeight));
  records.push_back(tensor_from_vec(weights.mlpBias));
  records.push_back(tensor_from_mat(weights.keyWeight));
  records.push_back(tensor_from_vec(weights.keyBias));
  records.push_back(tensor_from_mat(weights.valueWeight));
  records.push_back(tensor_from_vec(weights.valueBias));
  Tensor flags;
  flags.dims = {1};
  flags.data = {weights.relu ? 1.0f : 0.0f};
  records.push_back(flags);
  save_tensors(path, records);
}

FusionWeights load_fusion_weights(const std::string& path) {
  const std::vector<Tensor> records = load_tensors(path);
  if (records.size() != 7) raise(Errc::IoError, "fusion weights file needs 7 records");
  FusionWeights w;
  w.mlpWeight = mat_from_tensor(records[0]);
  w.mlpBias = vec_from_tensor(records[1]);
  w.keyWeight = mat_from_tensor(records[2]);
  w.keyBias = vec_from_tensor(records[3]);
  w.valueWeight = mat_from_tensor(records[4]);
  w.valueBias = vec_from_tensor(records[5]);
  w.relu = !records[6].data.empty() && records[6].data[0] != 0.0f;
  return w;
}

}  // namespace gf
