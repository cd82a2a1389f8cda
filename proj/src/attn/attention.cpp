// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/attn/attention.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "groupforge/core/error.hpp"
#include "groupforge/kernels/kernels.hpp"

namespace gf {

bool Mat::finite() const {
  for (double v : data)
    if (!std::isfinite(v)) return false;
  return true;
}

FusionWeights FusionWeights::identity(const AttentionConfig& config) {
  if (config.keyDim != config.channels)
    raise(Errc::ShapeMismatch, "identity fusion weights need keyDim == channels");
  const auto d = static_cast<size_t>(config.keyDim);
  const auto c = static_cast<size_t>(config.channels);
  const auto cp = static_cast<size_t>(config.poseChannels);
  FusionWeights w;
  w.mlpWeight = Mat(d, c + cp);
  for (size_t i = 0; i < d; ++i) w.mlpWeight.at(i, i) = 1.0;  // pose columns stay zero
  w.mlpBias.assign(d, 0.0);
  w.keyWeight = Mat(d, d);
  for (size_t i = 0; i < d; ++i) w.keyWeight.at(i, i) = 1.0;
  w.keyBias.assign(d, 0.0);
  w.valueWeight = Mat(d, c);
  for (size_t i = 0; i < d; ++i) w.valueWeight.at(i, i) = 1.0;
  w.valueBias.assign(d, 0.0);
  return w;
}

FusionWeights FusionWeights::random(SeedSpec seed, const AttentionConfig& config) {
  Rng rng(seed);
  const auto d = static_cast<size_t>(config.keyDim);
  const auto c = static_cast<size_t>(config.channels);
  const auto cp = static_cast<size_t>(config.poseChannels);
  auto fill = [&rng](Mat& m, double scale) {
    for (double& v : m.data) v = rng.uniform(-scale, scale);
  };
  FusionWeights w;
  w.mlpWeight = Mat(d, c + cp);
  fill(w.mlpWeight, 1.0 / std::sqrt(static_cast<double>(c + cp)));
  w.mlpBias.assign(d, 0.0);
  w.keyWeight = Mat(d, d);
  fill(w.keyWeight, 1.0 / std::sqrt(static_cast<double>(d)));
  w.keyBias.assign(d, 0.0);
  w.valueWeight = Mat(d, c);
  fill(w.valueWeight, 1.0 / std::sqrt(static_cast<double>(c)));
  w.valueBias.assign(d, 0.0);
  return w;
}

void FusionWeights::validate(const AttentionConfig& config) const {
  const auto d = static_cast<size_t>(config.keyDim);
  const auto c = static_cast<size_t>(config.channels);
  const auto cp = static_cast<size_t>(config.poseChannels);
  if (mlpWeight.rows != d || mlpWeight.cols != c + cp || mlpBias.size() != d ||
      keyWeight.rows != d || keyWeight.cols != d || keyBias.size() != d ||
      valueWeight.rows != d || valueWeight.cols != c || valueBias.size() != d)
    raise(Errc::ShapeMismatch, "fusion weights do not match the attention config");
}

namespace {

void affine_into(const Mat& weight, std::span<const double> bias, const double* x, double* out) {
  const auto& ops = kernels::active_ops();
  for (size_t i = 0; i < weight.rows; ++i) out[i] = bias[i] + ops.dot_f64(weight.row(i), x, weight.cols);
}

void require_finite(const Mat& m, const char* what) {
  if (!m.finite()) raise(Errc::NonFinite, std::string(what) + " contains non-finite entries");
}

// Shared attention core. `indicator` may be null (baseline); when present,
// bias = w' from reweight_scale, else 0. One arithmetic path for both
// kernels keeps the w=0 case bit-identical to the baseline. With a null
// `values` the softmax rows themselves are returned.
Mat attention_core(const Mat& queries, const Mat& keys, const Mat* values,
                   const IndicatorMatrix* indicator, const ReweightParams& params) {
  if (params.w < 0.0 || params.sigma < 0.0 || params.keyDim < 1)
    throw std::invalid_argument("reweight params: need w >= 0, sigma >= 0, d >= 1");
  if (queries.cols != keys.cols || queries.cols != params.keyDim || keys.rows == 0 ||
      queries.rows == 0)
    raise(Errc::ShapeMismatch, "attention shapes are inconsistent");
  if (values && (values->cols != keys.cols || values->rows != keys.rows))
    raise(Errc::ShapeMismatch, "value matrix does not match (T*N, d)");
  if (indicator && (indicator->rows != queries.rows || indicator->cols != keys.rows))
    raise(Errc::ShapeMismatch, "indicator matrix does not match (HW, T*N)");
  require_finite(queries, "queries");
  require_finite(keys, "keys");
  if (values) require_finite(*values, "values");

  const auto& ops = kernels::active_ops();
  const size_t hw = queries.rows;
  const size_t tn = keys.rows;
  const size_t d = keys.cols;

  Mat logits(hw, tn);
  for (size_t i = 0; i < hw; ++i) {
    double* row = logits.row(i);
    const double* q = queries.row(i);
    for (size_t j = 0; j < tn; ++j) row[j] = ops.dot_f64(q, keys.row(j), d);
  }

  double bias = 0.0;
  if (indicator && !params.perRowMax)
    bias = reweight_scale(params, ops.reduce_max_f64(logits.data.data(), logits.data.size()));

  const double invSqrtD = 1.0 / std::sqrt(static_cast<double>(d));
  Mat out(hw, values ? d : tn);
  std::vector<double> buf(tn);
  for (size_t i = 0; i < hw; ++i) {
    double rowBias = bias;
    if (indicator && params.perRowMax)
      rowBias = reweight_scale(params, ops.reduce_max_f64(logits.row(i), tn));

    if (indicator) {
      ops.bias_scale_f64(buf.data(), logits.row(i), indicator->row(i), rowBias, invSqrtD, tn);
    } else {
      std::copy(logits.row(i), logits.row(i) + tn, buf.data());
      ops.scale_f64(buf.data(), invSqrtD, tn);
    }

    row_softmax_inplace(buf);

    double* o = out.row(i);
    if (values) {
      for (size_t j = 0; j < tn; ++j) ops.axpy_f64(o, buf[j], values->row(j), d);
    } else {
      std::copy(buf.begin(), buf.end(), o);
    }
  }
  return out;
}

}  // namespace

void row_softmax_inplace(std::span<double> logits) {
  const auto& ops = kernels::active_ops();
  const size_t n = logits.size();
  if (n == 0) return;
  const double m = ops.reduce_max_f64(logits.data(), n);
  for (size_t j = 0; j < n; ++j) logits[j] = std::exp(logits[j] - m);
  const double sum = ops.reduce_add_f64(logits.data(), n);
  if (!(sum > 0.0) || !std::isfinite(sum)) raise(Errc::NonFinite, "softmax normalizer degenerate");
  ops.scale_f64(logits.data(), 1.0 / sum, n);
}

double reweight_scale(const ReweightParams& params, double mattnMax) {
  if (params.w < 0.0 || params.sigma < 0.0 || params.keyDim < 1)
    throw std::invalid_argument("reweight params: need w >= 0, sigma >= 0, d >= 1");
  if (!std::isfinite(mattnMax)) raise(Errc::NonFinite, "max(M_attn) is not finite");
  const double scale = params.w * std::log1p(params.sigma) * mattnMax;
  if (!std::isfinite(scale)) raise(Errc::NonFinite, "reweight scale overflowed");
  return scale;
}

Mat compute_attention(const QueryGrid& queries, const Mat& keys, const Mat& values,
                      const IndicatorMatrix& indicator, const ReweightParams& params) {
  return attention_core(queries.rows, keys, &values, &indicator, params);
}

Mat attention_baseline(const Mat& queries, const Mat& keys, const Mat& values) {
  ReweightParams params;
  params.keyDim = keys.cols;
  return attention_core(queries, keys, &values, nullptr, params);
}

Mat attention_probabilities(const QueryGrid& queries, const Mat& keys,
                            const IndicatorMatrix* indicator, const ReweightParams& params) {
  return attention_core(queries.rows, keys, nullptr, indicator, params);
}

Mat fuse_intra_person_keys(std::span<const FeatureGrid> feats, std::span<const PoseFeature> poses,
                           const FusionWeights& weights, const AttentionConfig& config) {
  weights.validate(config);
  const auto t = static_cast<size_t>(config.tokensPerRef);
  const auto c = static_cast<size_t>(config.channels);
  const auto cp = static_cast<size_t>(config.poseChannels);
  const auto d = static_cast<size_t>(config.keyDim);
  if (feats.empty() || feats.size() != poses.size())
    raise(Errc::ShapeMismatch, "need matching non-empty feature and pose lists");
  for (size_t n = 0; n < feats.size(); ++n) {
    if (feats[n].tokens.rows != t || feats[n].tokens.cols != c)
      raise(Errc::ShapeMismatch, "feature grid " + std::to_string(n) + " is not T x C");
    if (poses[n].tokens.rows != t || poses[n].tokens.cols != cp)
      raise(Errc::ShapeMismatch, "pose feature " + std::to_string(n) + " is not T x Cp");
  }

  Mat out(t * feats.size(), d);
  std::vector<double> cat(c + cp);
  std::vector<double> fused(d);
  for (size_t n = 0; n < feats.size(); ++n) {
    for (size_t tok = 0; tok < t; ++tok) {
      const double* img = feats[n].tokens.row(tok);
      const double* pose = poses[n].tokens.row(tok);
      std::copy(img, img + c, cat.data());
      std::copy(pose, pose + cp, cat.data() + c);
      affine_into(weights.mlpWeight, weights.mlpBias, cat.data(), fused.data());
      if (weights.relu)
        for (double& v : fused) v = std::max(v, 0.0);
      affine_into(weights.keyWeight, weights.keyBias, fused.data(), out.row(n * t + tok));
    }
  }
  return out;
}

Mat project_values(std::span<const FeatureGrid> feats, const FusionWeights& weights,
                   const AttentionConfig& config) {
  weights.validate(config);
  const auto t = static_cast<size_t>(config.tokensPerRef);
  const auto c = static_cast<size_t>(config.channels);
  if (feats.empty()) raise(Errc::ShapeMismatch, "need at least one feature grid");
  Mat out(t * feats.size(), static_cast<size_t>(config.keyDim));
  for (size_t n = 0; n < feats.size(); ++n) {
    if (feats[n].tokens.rows != t || feats[n].tokens.cols != c)
      raise(Errc::ShapeMismatch, "feature grid " + std::to_string(n) + " is not T x C");
    for (size_t tok = 0; tok < t; ++tok)
      affine_into(weights.valueWeight, weights.valueBias, feats[n].tokens.row(tok),
                  out.row(n * t + tok));
  }
  return out;
}

IndicatorMatrix build_indicator_matrix(std::span<const MaskGrid> masks,
                                       const AttentionConfig& config) {
  if (masks.empty()) raise(Errc::ShapeMismatch, "need at least one indicator mask");
  const int h = masks[0].height;
  const int w = masks[0].width;
  for (const MaskGrid& m : masks)
    if (m.width != w || m.height != h)
      raise(Errc::ShapeMismatch, "indicator masks must share one resolution");

  const auto t = static_cast<size_t>(config.tokensPerRef);
  IndicatorMatrix out;
  out.rows = static_cast<size_t>(h) * w;
  out.cols = t * masks.size();
  out.entries.assign(out.rows * out.cols, 0);
  for (size_t i = 0; i < out.rows; ++i) {
    uint8_t* row = out.entries.data() + i * out.cols;
    for (size_t n = 0; n < masks.size(); ++n) {
      const uint8_t v = masks[n].bits[i];
      std::fill(row + n * t, row + (n + 1) * t, v);
    }
  }
  return out;
}

MaskGrid downsample_mask_area(const MaskGrid& mask, int outWidth, int outHeight) {
  if (outWidth <= 0 || outHeight <= 0)
    throw std::invalid_argument("downsample target must be positive");
  MaskGrid out(outWidth, outHeight);
  const double sx = static_cast<double>(mask.width) / outWidth;
  const double sy = static_cast<double>(mask.height) / outHeight;
  for (int oy = 0; oy < outHeight; ++oy) {
    const double y0 = oy * sy;
    const double y1 = (oy + 1) * sy;
    for (int ox = 0; ox < outWidth; ++ox) {
      const double x0 = ox * sx;
      const double x1 = (ox + 1) * sx;
      double covered = 0.0;
      for (int py = static_cast<int>(std::floor(y0)); py < static_cast<int>(std::ceil(y1)); ++py) {
        const double oy0 = std::max(y0, static_cast<double>(py));
        const double oy1 = std::min(y1, static_cast<double>(py) + 1.0);
        if (oy1 <= oy0) continue;
        for (int px = static_cast<int>(std::floor(x0)); px < static_cast<int>(std::ceil(x1));
             ++px) {
          const double ox0 = std::max(x0, static_cast<double>(px));
          const double ox1 = std::min(x1, static_cast<double>(px) + 1.0);
          if (ox1 <= ox0 || !mask.at(px, py)) continue;
          covered += (oy1 - oy0) * (ox1 - ox0);
        }
      }
      out.set(ox, oy, covered / (sx * sy) >= 0.5 ? 1 : 0);
    }
  }
  return out;
}

}  // namespace gf
