#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "vaguecam/corpus.hpp"
#include "vaguecam/embeddings.hpp"
#include "vaguecam/textproc.hpp"

namespace vaguecam {

enum class Pooling { kAverage, kMax };

struct ModelConfig {
  std::size_t n_layers = 3;
  std::size_t kernels = 128;  // K, feature maps per layer
  std::size_t kernel_size = 5;
  std::size_t embed_dim = kDefaultEmbeddingDim;
  std::size_t n_classes = 2;  // C
  Pooling pooling = Pooling::kAverage;

  // Throws Error(kInvalidArgument) unless all sizes are positive and the
  // kernel size is odd.
  void validate() const;
  bool operator==(const ModelConfig&) const = default;
};

template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using ColVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Conv weights are stored im2col style: row `tap * in_dim + i`, column `k`,
// where tap 0 looks `kernel_size / 2` positions back.
template <typename Scalar>
struct BasicConvLayer {
  RowMatrix<Scalar> weight;  // (kernel_size * in_dim) x K
  ColVector<Scalar> bias;    // K
};

template <typename Scalar>
struct BasicModelParams {
  ModelConfig config;
  std::vector<BasicConvLayer<Scalar>> conv;
  RowMatrix<Scalar> W;  // K x C
  ColVector<Scalar> b;  // C

  // Zero-valued parameters with the shapes implied by `config`.
  static BasicModelParams zeros(const ModelConfig& config);

  std::size_t parameter_count() const;
  // Visits every parameter in checkpoint order.
  template <typename Fn>
  void for_each(Fn&& fn);
  template <typename Fn>
  void for_each(Fn&& fn) const;

  bool all_finite() const;
};

using ModelParams = BasicModelParams<float>;

template <typename Scalar>
struct BasicFeatureMaps {
  RowMatrix<Scalar> F;                // T x K, last conv layer after ReLU
  Eigen::VectorXd pooled;             // F_g, K
  Eigen::VectorXd logits;             // S = W^T F_g + b, C
  Eigen::VectorXd probs;              // softmax(S)
  std::vector<Eigen::Index> argmax;   // per-k winning position (max pooling only)
};

using FeatureMaps = BasicFeatureMaps<float>;

struct CamVector {
  std::vector<double> scores;  // one per input position, signed
  std::size_t class_index = 0;
};

// Glorot-uniform kernels and final weights, zero biases.
template <typename Scalar>
BasicModelParams<Scalar> initialize_params(const ModelConfig& config, std::uint64_t seed);

// Same-padded convolutions with ReLU, global pooling and the affine softmax
// layer. Throws Error(kShapeMismatch) for an empty input or wrong width.
template <typename Scalar>
BasicFeatureMaps<Scalar> forward(const BasicModelParams<Scalar>& params,
                                 const RowMatrix<Scalar>& input);

// CAM(t) = sum_k W(k, c) * F(t, k). Throws Error(kOutOfRange) for a bad class.
template <typename Scalar>
CamVector compute_cam(const BasicModelParams<Scalar>& params,
                      const BasicFeatureMaps<Scalar>& features, std::size_t class_index);

template <typename Scalar>
struct BasicExample {
  RowMatrix<Scalar> input;
  std::size_t label = 0;
};

// Summed cross-entropy over `batch`; gradient has the same layout as params.
template <typename Scalar>
double loss_and_gradient(const BasicModelParams<Scalar>& params,
                         std::span<const BasicExample<Scalar>> batch,
                         BasicModelParams<Scalar>& gradient);

struct GradientCheckResult {
  double max_relative_error = 0.0;
  std::size_t parameters_checked = 0;
  // Coordinates whose finite-difference probe crossed a ReLU kink or a max
  // pooling switch; they are excluded from the maximum.
  std::size_t parameters_skipped = 0;
};

// Central differences with step 1e-4 on a random 64-bit model against the
// analytic gradient, for every parameter. Requires T <= 8 and K <= 4.
GradientCheckResult gradient_check(const ModelConfig& config,
                                   const BasicExample<double>& sample, std::uint64_t seed);

struct TrainOptions {
  std::size_t epochs = 20;
  std::size_t batch_size = 32;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t max_tokens = 512;
  std::uint64_t seed = 42;
};

struct EpochLog {
  std::size_t epoch = 0;
  double mean_loss = 0.0;
  double heldout_f1 = 0.0;
};

struct TrainingLog {
  std::vector<EpochLog> epochs;
};

struct TrainResult {
  ModelParams params;
  TrainingLog log;
};

// Mini-batch Adam on cross-entropy. Documents are tokenized and embedded with
// `table`; `heldout` (if given) supplies the per-epoch F1, otherwise the
// training set does. Throws for an empty or single-class corpus.
TrainResult train(const ModelConfig& config, const Corpus& corpus, const EmbeddingTable& table,
                  const TrainOptions& options, const Corpus* heldout = nullptr);

struct Prediction {
  double bias_score = 0.0;  // probability of the biased class
  std::vector<Token> tokens;
  CamVector cam;  // class biased, aligned with tokens
};

Prediction predict(const ModelParams& params, std::string_view text, const EmbeddingTable& table);

// Versioned binary container: "FCLF", u32 version, five u32 config fields,
// then little-endian float32 tensors in for_each order.
std::string save_checkpoint(const ModelParams& params);
ModelParams load_checkpoint(std::string_view bytes);

void save_checkpoint_file(const ModelParams& params, const std::string& path);
ModelParams load_checkpoint_file(const std::string& path);

inline constexpr std::uint32_t kCheckpointVersion = 1;

// ---------------------------------------------------------------------------

template <typename Scalar>
template <typename Fn>
void BasicModelParams<Scalar>::for_each(Fn&& fn) {
  for (auto& layer : conv) {
    for (Eigen::Index i = 0; i < layer.weight.size(); ++i) fn(layer.weight.data()[i]);
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) fn(layer.bias.data()[i]);
  }
  for (Eigen::Index i = 0; i < W.size(); ++i) fn(W.data()[i]);
  for (Eigen::Index i = 0; i < b.size(); ++i) fn(b.data()[i]);
}

template <typename Scalar>
template <typename Fn>
void BasicModelParams<Scalar>::for_each(Fn&& fn) const {
  for (const auto& layer : conv) {
    for (Eigen::Index i = 0; i < layer.weight.size(); ++i) fn(layer.weight.data()[i]);
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) fn(layer.bias.data()[i]);
  }
  for (Eigen::Index i = 0; i < W.size(); ++i) fn(W.data()[i]);
  for (Eigen::Index i = 0; i < b.size(); ++i) fn(b.data()[i]);
}

}  // namespace vaguecam
