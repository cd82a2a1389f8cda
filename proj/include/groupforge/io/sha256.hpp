// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace gf {

// FIPS 180-4 SHA-256, hex-encoded. Used for manifest content digests.
std::string sha256_hex(std::span<const uint8_t> bytes);
std::string sha256_hex(const std::string& text);
std::string sha256_file_hex(const std::string& path);  // throws IoError

}  // namespace gf
