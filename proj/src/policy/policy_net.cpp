// Copyright 2026 The audamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "audamp/policy/policy_net.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>
#include <fmt/format.h>

#include "audamp/common/error.hpp"
#include "audamp/common/rng.hpp"

namespace audamp::policy {

void NetLayout::validate() const {
  if (input_dim != env::kObservationSize) {
    throw ConfigError("net.input_dim", fmt::format("net.input_dim must be {}", env::kObservationSize));
  }
  for (int width : hidden) {
    if (width != 128) throw ConfigError("net.hidden", "net.hidden must be [128, 128, 128]");
  }
  if (continuous_dim != 2) throw ConfigError("net.continuous_dim", "net.continuous_dim must be 2");
  if (discrete_cardinality != env::kIdleStateCount) {
    throw ConfigError("net.discrete_cardinality", "net.discrete_cardinality must be 4");
  }
}

std::size_t NetLayout::trunk_parameter_count() const {
  std::size_t count = 0;
  int in = input_dim;
  for (int width : hidden) {
    count += static_cast<std::size_t>(in) * static_cast<std::size_t>(width) + static_cast<std::size_t>(width);
    in = width;
  }
  return count;
}

std::size_t NetLayout::parameter_count() const {
  const auto last = static_cast<std::size_t>(hidden.back());
  const auto c = static_cast<std::size_t>(continuous_dim);
  const auto d = static_cast<std::size_t>(discrete_cardinality);
  return trunk_parameter_count() + (last * c + c) + c + (last * d + d) + (last + 1);
}

PolicyParams::PolicyParams(const NetLayout& layout) : layout_(layout) {
  std::size_t offset = 0;
  auto take = [&offset](int rows, int cols) {
    ParamBlock block{offset, rows, cols};
    offset += block.size();
    return block;
  };
  int in = layout.input_dim;
  for (std::size_t l = 0; l < kTrunkDepth; ++l) {
    trunk_w_[l] = take(layout.hidden[l], in);
    trunk_b_[l] = take(layout.hidden[l], 1);
    in = layout.hidden[l];
  }
  mean_w_ = take(layout.continuous_dim, in);
  mean_b_ = take(layout.continuous_dim, 1);
  log_std_ = take(layout.continuous_dim, 1);
  logits_w_ = take(layout.discrete_cardinality, in);
  logits_b_ = take(layout.discrete_cardinality, 1);
  value_w_ = take(1, in);
  value_b_ = take(1, 1);
  flat_.assign(offset, 0.0);
}

bool PolicyParams::all_finite() const {
  return std::all_of(flat_.begin(), flat_.end(), [](double v) { return std::isfinite(v); });
}

void PolicyParams::set_zero() { std::fill(flat_.begin(), flat_.end(), 0.0); }

void PolicyParams::canonicalize() {
  auto ls = log_std();
  for (Eigen::Index i = 0; i < ls.size(); ++i) ls[i] = std::clamp(ls[i], kMinLogStd, kMaxLogStd);
  for (double& v : flat_) v = static_cast<double>(static_cast<float>(v));
}

namespace {

void orthogonal_fill(MatrixMap w, double gain, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::Index rows = w.rows();
  const Eigen::Index cols = w.cols();
  const Eigen::Index tall = std::max(rows, cols);
  const Eigen::Index wide = std::min(rows, cols);
  Eigen::MatrixXd gaussian(tall, wide);
  for (Eigen::Index i = 0; i < tall; ++i) {
    for (Eigen::Index j = 0; j < wide; ++j) gaussian(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(tall, wide);
  const Eigen::MatrixXd r = qr.matrixQR().topLeftCorner(wide, wide);
  for (Eigen::Index j = 0; j < wide; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  if (rows >= cols) {
    w = gain * q;
  } else {
    w = gain * q.transpose();
  }
}

void check_finite(const Matrix& m, const char* layer) {
  if (!m.allFinite()) throw NumericalError(fmt::format("non-finite values in {}", layer));
}

constexpr std::array<const char*, kTrunkDepth> kTrunkNames{"trunk layer 0", "trunk layer 1",
                                                           "trunk layer 2"};

}  // namespace

PolicyParams init_params(std::uint64_t seed, const NetLayout& layout, const InitOptions& options) {
  PolicyParams params(layout);
  Rng rng(seed);
  for (int l = 0; l < kTrunkDepth; ++l) orthogonal_fill(params.trunk_weight(l), options.trunk_gain, rng);
  orthogonal_fill(params.mean_weight(), options.policy_gain, rng);
  orthogonal_fill(params.logits_weight(), options.policy_gain, rng);
  orthogonal_fill(params.value_weight(), options.value_gain, rng);
  params.log_std().setConstant(options.initial_log_std);
  params.canonicalize();
  return params;
}

HeadOutputs forward_batch(const PolicyParams& params, const Matrix& observations,
                          ForwardCache* cache) {
  if (observations.cols() != params.layout().input_dim) {
    throw Error(fmt::format("observation width {} != input_dim {}", observations.cols(),
                            params.layout().input_dim));
  }
  check_finite(observations, "observation input");

  Matrix h = observations;
  if (cache != nullptr) cache->input = observations;
  for (int l = 0; l < kTrunkDepth; ++l) {
    Matrix pre = h * params.trunk_weight(l).transpose();
    pre.rowwise() += params.trunk_bias(l).transpose();
    h = pre.array().tanh().matrix();
    check_finite(h, kTrunkNames[static_cast<std::size_t>(l)]);
    if (cache != nullptr) cache->hidden[static_cast<std::size_t>(l)] = h;
  }

  HeadOutputs out;
  out.mean = h * params.mean_weight().transpose();
  out.mean.rowwise() += params.mean_bias().transpose();
  out.logits = h * params.logits_weight().transpose();
  out.logits.rowwise() += params.logits_bias().transpose();
  out.value = (h * params.value_weight().transpose()).col(0);
  out.value.array() += params.value_bias()[0];
  out.log_std = params.log_std();
  check_finite(out.mean, "mean head");
  check_finite(out.logits, "logits head");
  check_finite(out.value, "value head");
  return out;
}

LossGradients gradients(const PolicyParams& params, const Matrix& observations, const HeadLoss& loss) {
  ForwardCache cache;
  const HeadOutputs heads = forward_batch(params, observations, &cache);
  HeadLossValue lv = loss(heads);
  if (!std::isfinite(lv.loss)) throw NumericalError("non-finite loss value");
  check_finite(lv.grad.mean, "mean head gradient");
  check_finite(lv.grad.logits, "logits head gradient");
  check_finite(lv.grad.value, "value head gradient");
  check_finite(lv.grad.log_std, "log-std gradient");

  LossGradients out{lv.loss, Gradients(params.layout())};
  Gradients& g = out.grads;
  const Matrix& top = cache.hidden.back();

  g.mean_weight() = lv.grad.mean.transpose() * top;
  g.mean_bias() = lv.grad.mean.colwise().sum().transpose();
  g.log_std() = lv.grad.log_std;
  g.logits_weight() = lv.grad.logits.transpose() * top;
  g.logits_bias() = lv.grad.logits.colwise().sum().transpose();
  g.value_weight() = lv.grad.value.transpose() * top;
  g.value_bias()[0] = lv.grad.value.sum();

  Matrix upstream = lv.grad.mean * params.mean_weight() + lv.grad.logits * params.logits_weight() +
                    lv.grad.value * params.value_weight();
  for (int l = kTrunkDepth - 1; l >= 0; --l) {
    const Matrix& act = cache.hidden[static_cast<std::size_t>(l)];
    const Matrix& below = l == 0 ? cache.input : cache.hidden[static_cast<std::size_t>(l - 1)];
    const Matrix delta = (upstream.array() * (1.0 - act.array().square())).matrix();
    g.trunk_weight(l) = delta.transpose() * below;
    g.trunk_bias(l) = delta.colwise().sum().transpose();
    check_finite(g.trunk_weight(l), kTrunkNames[static_cast<std::size_t>(l)]);
    if (l > 0) upstream = delta * params.trunk_weight(l);
  }
  return out;
}

double loss_value(const PolicyParams& params, const Matrix& observations, const HeadLoss& loss) {
  return loss(forward_batch(params, observations)).loss;
}

Matrix observation_matrix(std::span<const env::Observation> observations) {
  Matrix m(static_cast<Eigen::Index>(observations.size()), env::kObservationSize);
  for (std::size_t i = 0; i < observations.size(); ++i) {
    for (int j = 0; j < env::kObservationSize; ++j) {
      m(static_cast<Eigen::Index>(i), j) = observations[i][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

}  // namespace audamp::policy
