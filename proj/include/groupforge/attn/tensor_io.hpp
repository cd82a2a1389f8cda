// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "groupforge/attn/types.hpp"

namespace gf {

// Self-describing binary tensor record: magic "GFTN", then little-endian
// u32 rank, u32 dims[rank], and f32 payload row-major. Files may hold a
// sequence of records.
struct Tensor {
  std::vector<uint32_t> dims;
  std::vector<float> data;

  size_t element_count() const;
};

void write_tensor(std::ostream& out, const Tensor& tensor);
Tensor read_tensor(std::istream& in);  // throws IoError on malformed input

void save_tensors(const std::string& path, std::span<const Tensor> tensors);
std::vector<Tensor> load_tensors(const std::string& path);

Tensor tensor_from_mat(const Mat& m);
Mat mat_from_tensor(const Tensor& t);  // rank-2 records only

// FusionWeights container: seven records in fixed order
// (mlpWeight, mlpBias, keyWeight, keyBias, valueWeight, valueBias, flags)
// where flags is a one-element tensor holding the relu bit.
void save_fusion_weights(const std::string& path, const FusionWeights& weights);
FusionWeights load_fusion_weights(const std::string& path);

}  // namespace gf
