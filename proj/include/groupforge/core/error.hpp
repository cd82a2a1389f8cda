// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace gf {

enum class Errc {
  EmptyIntersection,
  DimensionMismatch,
  MissingJoint,
  NoRotatableLimb,
  EmptyMask,
  EmptyImage,
  EmptyPerson,
  ShapeMismatch,
  NonFinite,
  SchemaError,
  MissingImage,
  GenerationExhausted,
  IoError,
};

constexpr const char* errc_name(Errc c) {
  switch (c) {
    case Errc::EmptyIntersection: return "EmptyIntersection";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::MissingJoint: return "MissingJoint";
    case Errc::NoRotatableLimb: return "NoRotatableLimb";
    case Errc::EmptyMask: return "EmptyMask";
    case Errc::EmptyImage: return "EmptyImage";
    case Errc::EmptyPerson: return "EmptyPerson";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NonFinite: return "NonFinite";
    case Errc::SchemaError: return "SchemaError";
    case Errc::MissingImage: return "MissingImage";
    case Errc::GenerationExhausted: return "GenerationExhausted";
    case Errc::IoError: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace gf
