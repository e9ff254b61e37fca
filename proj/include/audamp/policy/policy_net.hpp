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

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "audamp/env/corridor_env.hpp"

namespace audamp::policy {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using MatrixMap = Eigen::Map<Matrix>;
using ConstMatrixMap = Eigen::Map<const Matrix>;
using VectorMap = Eigen::Map<Vector>;
using ConstVectorMap = Eigen::Map<const Vector>;

inline constexpr int kTrunkDepth = 3;
inline constexpr double kMinLogStd = -5.0;
inline constexpr double kMaxLogStd = 2.0;

/// Shape of the actor-critic network: a shared tanh trunk feeding a Gaussian
/// mean head, a state-independent log-std, a categorical idle-state head and a
/// scalar value head.
struct NetLayout {
  int input_dim = env::kObservationSize;
  std::array<int, kTrunkDepth> hidden{128, 128, 128};
  int continuous_dim = 2;
  int discrete_cardinality = env::kIdleStateCount;

  /// Throws ConfigError unless the layout is the 16 -> 3x128 -> {2, 4, 1} network.
  void validate() const;
  std::size_t trunk_parameter_count() const;
  std::size_t parameter_count() const;

  bool operator==(const NetLayout&) const = default;
};

/// Location of one weight matrix or bias vector inside the flat parameter
/// vector. Matrices are stored row-major as (out x in).
struct ParamBlock {
  std::size_t offset = 0;
  int rows = 0;
  int cols = 1;

  std::size_t size() const { return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols); }
};

/// Flat parameter vector with typed views. Serialization order is the block
/// order: trunk (W, b) x3, mean (W, b), log_std, logits (W, b), value (W, b).
class PolicyParams {
 public:
  explicit PolicyParams(const NetLayout& layout = {});

  const NetLayout& layout() const { return layout_; }
  std::size_t size() const { return flat_.size(); }
  std::span<double> values() { return flat_; }
  std::span<const double> values() const { return flat_; }

  MatrixMap trunk_weight(int layer) { return matrix(trunk_w_[static_cast<std::size_t>(layer)]); }
  ConstMatrixMap trunk_weight(int layer) const { return matrix(trunk_w_[static_cast<std::size_t>(layer)]); }
  VectorMap trunk_bias(int layer) { return vector(trunk_b_[static_cast<std::size_t>(layer)]); }
  ConstVectorMap trunk_bias(int layer) const { return vector(trunk_b_[static_cast<std::size_t>(layer)]); }
  MatrixMap mean_weight() { return matrix(mean_w_); }
  ConstMatrixMap mean_weight() const { return matrix(mean_w_); }
  VectorMap mean_bias() { return vector(mean_b_); }
  ConstVectorMap mean_bias() const { return vector(mean_b_); }
  VectorMap log_std() { return vector(log_std_); }
  ConstVectorMap log_std() const { return vector(log_std_); }
  MatrixMap logits_weight() { return matrix(logits_w_); }
  ConstMatrixMap logits_weight() const { return matrix(logits_w_); }
  VectorMap logits_bias() { return vector(logits_b_); }
  ConstVectorMap logits_bias() const { return vector(logits_b_); }
  MatrixMap value_weight() { return matrix(value_w_); }
  ConstMatrixMap value_weight() const { return matrix(value_w_); }
  VectorMap value_bias() { return vector(value_b_); }
  ConstVectorMap value_bias() const { return vector(value_b_); }

  const ParamBlock& mean_block() const { return mean_w_; }
  const ParamBlock& logits_block() const { return logits_w_; }
  const ParamBlock& value_block() const { return value_w_; }

  bool all_finite() const;
  void set_zero();
  /// Clamps log-std into [kMinLogStd, kMaxLogStd] and rounds every entry to
  /// the nearest float, so checkpoints round-trip exactly.
  void canonicalize();

  bool operator==(const PolicyParams& other) const { return layout_ == other.layout_ && flat_ == other.flat_; }

 private:
  MatrixMap matrix(const ParamBlock& b) { return {flat_.data() + b.offset, b.rows, b.cols}; }
  ConstMatrixMap matrix(const ParamBlock& b) const { return {flat_.data() + b.offset, b.rows, b.cols}; }
  VectorMap vector(const ParamBlock& b) { return {flat_.data() + b.offset, b.rows}; }
  ConstVectorMap vector(const ParamBlock& b) const { return {flat_.data() + b.offset, b.rows}; }

  NetLayout layout_;
  std::vector<double> flat_;
  std::array<ParamBlock, kTrunkDepth> trunk_w_{};
  std::array<ParamBlock, kTrunkDepth> trunk_b_{};
  ParamBlock mean_w_, mean_b_, log_std_, logits_w_, logits_b_, value_w_, value_b_;
};

/// Same shape as the parameters.
using Gradients = PolicyParams;

struct InitOptions {
  double trunk_gain = 1.4142135623730951;
  double policy_gain = 0.01;
  double value_gain = 1.0;
  double initial_log_std = 0.0;
};

/// Orthogonal initialization, deterministic per seed.
PolicyParams init_params(std::uint64_t seed, const NetLayout& layout = {},
                         const InitOptions& options = {});

struct HeadOutputs {
  Matrix mean;     // batch x continuous_dim
  Matrix logits;   // batch x discrete_cardinality
  Vector value;    // batch
  Vector log_std;  // continuous_dim, shared by all rows
};

/// Activations kept for the backward pass.
struct ForwardCache {
  Matrix input;
  std::array<Matrix, kTrunkDepth> hidden;
};

/// Batched forward pass; one observation per row. Throws NumericalError on
/// non-finite inputs or activations, naming the layer.
HeadOutputs forward_batch(const PolicyParams& params, const Matrix& observations,
                          ForwardCache* cache = nullptr);

/// Loss contribution expressed over the network heads: the loss value and its
/// derivative with respect to every head output.
struct HeadGradients {
  Matrix mean;
  Matrix logits;
  Vector value;
  Vector log_std;
};

struct HeadLossValue {
  double loss = 0.0;
  HeadGradients grad;
};

using HeadLoss = std::function<HeadLossValue(const HeadOutputs&)>;

struct LossGradients {
  double loss = 0.0;
  Gradients grads;
};

/// Exact reverse-mode gradient of `loss` over the batch.
LossGradients gradients(const PolicyParams& params, const Matrix& observations, const HeadLoss& loss);

/// Loss value only (used by finite-difference checks).
double loss_value(const PolicyParams& params, const Matrix& observations, const HeadLoss& loss);

/// Packs observations into a batch matrix.
Matrix observation_matrix(std::span<const env::Observation> observations);

}  // namespace audamp::policy
