#include "vaguecam/classifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "vaguecam/error.hpp"
#include "vaguecam/metrics.hpp"
#include "vaguecam/random.hpp"

namespace vaguecam {

void ModelConfig::validate() const {
  if (n_layers == 0 || kernels == 0 || kernel_size == 0 || embed_dim == 0 || n_classes == 0) {
    throw Error(ErrorCode::kInvalidArgument, "model sizes must all be positive");
  }
  if (kernel_size % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument, "kernel_size must be odd for same padding");
  }
}

template <typename Scalar>
BasicModelParams<Scalar> BasicModelParams<Scalar>::zeros(const ModelConfig& config) {
  config.validate();
  BasicModelParams p;
  p.config = config;
  const auto k = static_cast<Eigen::Index>(config.kernels);
  const auto taps = static_cast<Eigen::Index>(config.kernel_size);
  for (std::size_t l = 0; l < config.n_layers; ++l) {
    const auto in = static_cast<Eigen::Index>(l == 0 ? config.embed_dim : config.kernels);
    BasicConvLayer<Scalar> layer;
    layer.weight = RowMatrix<Scalar>::Zero(taps * in, k);
    layer.bias = ColVector<Scalar>::Zero(k);
    p.conv.push_back(std::move(layer));
  }
  p.W = RowMatrix<Scalar>::Zero(k, static_cast<Eigen::Index>(config.n_classes));
  p.b = ColVector<Scalar>::Zero(static_cast<Eigen::Index>(config.n_classes));
  return p;
}

template <typename Scalar>
std::size_t BasicModelParams<Scalar>::parameter_count() const {
  std::size_t n = 0;
  for_each([&n](const Scalar&) { ++n; });
  return n;
}

template <typename Scalar>
bool BasicModelParams<Scalar>::all_finite() const {
  bool ok = true;
  for_each([&ok](const Scalar& x) { ok = ok && std::isfinite(static_cast<double>(x)); });
  return ok;
}

template <typename Scalar>
BasicModelParams<Scalar> initialize_params(const ModelConfig& config, std::uint64_t seed) {
  auto p = BasicModelParams<Scalar>::zeros(config);
  Rng rng(seed);
  auto fill = [&rng](RowMatrix<Scalar>& m, double fan_in, double fan_out) {
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      m.data()[i] = static_cast<Scalar>(rng.uniform(-limit, limit));
    }
  };
  const double taps = static_cast<double>(config.kernel_size);
  for (std::size_t l = 0; l < config.n_layers; ++l) {
    const double in = static_cast<double>(l == 0 ? config.embed_dim : config.kernels);
    fill(p.conv[l].weight, taps * in, taps * static_cast<double>(config.kernels));
  }
  fill(p.W, static_cast<double>(config.kernels), static_cast<double>(config.n_classes));
  return p;
}

namespace {

template <typename Scalar>
struct ForwardCache {
  std::vector<RowMatrix<Scalar>> cols;  // im2col input per layer
  std::vector<RowMatrix<Scalar>> pre;   // pre-activation per layer
  BasicFeatureMaps<Scalar> maps;
};

template <typename Scalar>
void im2col(const RowMatrix<Scalar>& x, std::size_t kernel_size, RowMatrix<Scalar>& cols) {
  const Eigen::Index T = x.rows();
  const Eigen::Index in = x.cols();
  const auto taps = static_cast<Eigen::Index>(kernel_size);
  const Eigen::Index pad = taps / 2;
  cols.setZero(T, taps * in);
  for (Eigen::Index tap = 0; tap < taps; ++tap) {
    const Eigen::Index offset = tap - pad;
    const Eigen::Index lo = std::max<Eigen::Index>(0, -offset);
    const Eigen::Index hi = std::min<Eigen::Index>(T, T - offset);
    if (hi > lo) cols.block(lo, tap * in, hi - lo, in) = x.block(lo + offset, 0, hi - lo, in);
  }
}

template <typename Scalar>
void col2im_add(const RowMatrix<Scalar>& dcols, std::size_t kernel_size, Eigen::Index in,
                RowMatrix<Scalar>& dx) {
  const Eigen::Index T = dcols.rows();
  const auto taps = static_cast<Eigen::Index>(kernel_size);
  const Eigen::Index pad = taps / 2;
  dx.setZero(T, in);
  for (Eigen::Index tap = 0; tap < taps; ++tap) {
    const Eigen::Index offset = tap - pad;
    const Eigen::Index lo = std::max<Eigen::Index>(0, -offset);
    const Eigen::Index hi = std::min<Eigen::Index>(T, T - offset);
    if (hi > lo) dx.block(lo + offset, 0, hi - lo, in) += dcols.block(lo, tap * in, hi - lo, in);
  }
}

Eigen::VectorXd softmax(const Eigen::VectorXd& s) {
  const double m = s.maxCoeff();
  Eigen::VectorXd e = (s.array() - m).exp();
  return e / e.sum();
}

template <typename Scalar>
void check_input(const BasicModelParams<Scalar>& params, const RowMatrix<Scalar>& input) {
  if (input.rows() == 0) throw Error(ErrorCode::kShapeMismatch, "input has no positions");
  if (static_cast<std::size_t>(input.cols()) != params.config.embed_dim) {
    throw Error(ErrorCode::kShapeMismatch,
                "input width " + std::to_string(input.cols()) + " does not match embed_dim " +
                    std::to_string(params.config.embed_dim));
  }
}

template <typename Scalar>
void run_forward(const BasicModelParams<Scalar>& params, const RowMatrix<Scalar>& input,
                 ForwardCache<Scalar>& cache) {
  check_input(params, input);
  const std::size_t layers = params.conv.size();
  cache.cols.resize(layers);
  cache.pre.resize(layers);
  const RowMatrix<Scalar>* x = &input;
  RowMatrix<Scalar> activation;
  for (std::size_t l = 0; l < layers; ++l) {
    im2col(*x, params.config.kernel_size, cache.cols[l]);
    cache.pre[l].noalias() = cache.cols[l] * params.conv[l].weight;
    cache.pre[l].rowwise() += params.conv[l].bias.transpose();
    activation = cache.pre[l].cwiseMax(Scalar(0));
    x = &activation;
  }
  auto& maps = cache.maps;
  maps.F = std::move(activation);
  const Eigen::Index T = maps.F.rows();
  const Eigen::Index K = maps.F.cols();
  maps.pooled.setZero(K);
  maps.argmax.clear();
  if (params.config.pooling == Pooling::kAverage) {
    for (Eigen::Index t = 0; t < T; ++t) {
      for (Eigen::Index k = 0; k < K; ++k) maps.pooled(k) += static_cast<double>(maps.F(t, k));
    }
    maps.pooled /= static_cast<double>(T);
  } else {
    maps.argmax.assign(static_cast<std::size_t>(K), 0);
    for (Eigen::Index k = 0; k < K; ++k) {
      Eigen::Index best = 0;
      for (Eigen::Index t = 1; t < T; ++t) {
        if (maps.F(t, k) > maps.F(best, k)) best = t;
      }
      maps.argmax[static_cast<std::size_t>(k)] = best;
      maps.pooled(k) = static_cast<double>(maps.F(best, k));
    }
  }
  maps.logits = params.W.template cast<double>().transpose() * maps.pooled +
                params.b.template cast<double>();
  maps.probs = softmax(maps.logits);
}

// Accumulates d(loss)/d(params) into `grad` given d(loss)/d(logits).
template <typename Scalar>
void run_backward(const BasicModelParams<Scalar>& params, const ForwardCache<Scalar>& cache,
                  const Eigen::VectorXd& dlogits, BasicModelParams<Scalar>& grad) {
  const auto& maps = cache.maps;
  const Eigen::Index T = maps.F.rows();
  const Eigen::Index K = maps.F.cols();

  grad.W += (maps.pooled * dlogits.transpose()).template cast<Scalar>();
  grad.b += dlogits.template cast<Scalar>();
  const Eigen::VectorXd dpooled = params.W.template cast<double>() * dlogits;

  RowMatrix<Scalar> dA;
  if (params.config.pooling == Pooling::kAverage) {
    const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> row =
        (dpooled / static_cast<double>(T)).transpose().template cast<Scalar>();
    dA = row.replicate(T, 1);
  } else {
    dA.setZero(T, K);
    for (Eigen::Index k = 0; k < K; ++k) {
      dA(maps.argmax[static_cast<std::size_t>(k)], k) = static_cast<Scalar>(dpooled(k));
    }
  }

  RowMatrix<Scalar> dZ;
  RowMatrix<Scalar> dcols;
  for (std::size_t l = params.conv.size(); l-- > 0;) {
    dZ = dA.cwiseProduct((cache.pre[l].array() > Scalar(0)).template cast<Scalar>().matrix());
    grad.conv[l].weight.noalias() += cache.cols[l].transpose() * dZ;
    grad.conv[l].bias += dZ.colwise().sum().transpose();
    if (l == 0) break;
    dcols.noalias() = dZ * params.conv[l].weight.transpose();
    col2im_add(dcols, params.config.kernel_size, static_cast<Eigen::Index>(params.config.kernels),
               dA);
  }
}

double cross_entropy(const Eigen::VectorXd& logits, std::size_t label) {
  const double m = logits.maxCoeff();
  const double lse = m + std::log((logits.array() - m).exp().sum());
  return lse - logits(static_cast<Eigen::Index>(label));
}

}  // namespace

template <typename Scalar>
BasicFeatureMaps<Scalar> forward(const BasicModelParams<Scalar>& params,
                                 const RowMatrix<Scalar>& input) {
  ForwardCache<Scalar> cache;
  run_forward(params, input, cache);
  return std::move(cache.maps);
}

template <typename Scalar>
CamVector compute_cam(const BasicModelParams<Scalar>& params,
                      const BasicFeatureMaps<Scalar>& features, std::size_t class_index) {
  if (class_index >= params.config.n_classes) {
    throw Error(ErrorCode::kOutOfRange, "class index " + std::to_string(class_index) +
                                            " out of range");
  }
  const auto c = static_cast<Eigen::Index>(class_index);
  CamVector cam;
  cam.class_index = class_index;
  cam.scores.resize(static_cast<std::size_t>(features.F.rows()));
  for (Eigen::Index t = 0; t < features.F.rows(); ++t) {
    double sum = 0.0;
    for (Eigen::Index k = 0; k < features.F.cols(); ++k) {
      sum += static_cast<double>(params.W(k, c)) * static_cast<double>(features.F(t, k));
    }
    cam.scores[static_cast<std::size_t>(t)] = sum;
  }
  return cam;
}

template <typename Scalar>
double loss_and_gradient(const BasicModelParams<Scalar>& params,
                         std::span<const BasicExample<Scalar>> batch,
                         BasicModelParams<Scalar>& gradient) {
  gradient = BasicModelParams<Scalar>::zeros(params.config);
  double loss = 0.0;
  ForwardCache<Scalar> cache;
  for (const auto& ex : batch) {
    if (ex.label >= params.config.n_classes) {
      throw Error(ErrorCode::kOutOfRange, "label out of range");
    }
    run_forward(params, ex.input, cache);
    loss += cross_entropy(cache.maps.logits, ex.label);
    Eigen::VectorXd dlogits = cache.maps.probs;
    dlogits(static_cast<Eigen::Index>(ex.label)) -= 1.0;
    run_backward(params, cache, dlogits, gradient);
  }
  return loss;
}

template BasicModelParams<float> BasicModelParams<float>::zeros(const ModelConfig&);
template BasicModelParams<double> BasicModelParams<double>::zeros(const ModelConfig&);
template std::size_t BasicModelParams<float>::parameter_count() const;
template std::size_t BasicModelParams<double>::parameter_count() const;
template bool BasicModelParams<float>::all_finite() const;
template bool BasicModelParams<double>::all_finite() const;
template BasicModelParams<float> initialize_params<float>(const ModelConfig&, std::uint64_t);
template BasicModelParams<double> initialize_params<double>(const ModelConfig&, std::uint64_t);
template BasicFeatureMaps<float> forward(const BasicModelParams<float>&, const RowMatrix<float>&);
template BasicFeatureMaps<double> forward(const BasicModelParams<double>&,
                                          const RowMatrix<double>&);
template CamVector compute_cam(const BasicModelParams<float>&, const BasicFeatureMaps<float>&,
                               std::size_t);
template CamVector compute_cam(const BasicModelParams<double>&, const BasicFeatureMaps<double>&,
                               std::size_t);
template double loss_and_gradient(const BasicModelParams<float>&,
                                  std::span<const BasicExample<float>>,
                                  BasicModelParams<float>&);
template double loss_and_gradient(const BasicModelParams<double>&,
                                  std::span<const BasicExample<double>>,
                                  BasicModelParams<double>&);

// ---------------------------------------------------------------------------
// Gradient check

namespace {

// ReLU masks and pooling winners; equal patterns mean the loss is smooth
// between two parameter settings.
std::vector<bool> activation_pattern(const ForwardCache<double>& cache) {
  std::vector<bool> pattern;
  for (const auto& z : cache.pre) {
    for (Eigen::Index i = 0; i < z.size(); ++i) pattern.push_back(z.data()[i] > 0.0);
  }
  for (Eigen::Index idx : cache.maps.argmax) {
    for (int bit = 0; bit < 16; ++bit) pattern.push_back(((idx >> bit) & 1) != 0);
  }
  return pattern;
}

}  // namespace

GradientCheckResult gradient_check(const ModelConfig& config, const BasicExample<double>& sample,
                                   std::uint64_t seed) {
  config.validate();
  if (sample.input.rows() > 8 || config.kernels > 4) {
    throw Error(ErrorCode::kInvalidArgument, "gradient_check expects T <= 8 and K <= 4");
  }
  auto params = initialize_params<double>(config, seed);
  Rng rng(seed ^ 0xB1A5ULL);
  for (auto& layer : params.conv) {
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) layer.bias(i) = rng.uniform(-0.5, 0.5);
  }
  for (Eigen::Index i = 0; i < params.b.size(); ++i) params.b(i) = rng.uniform(-0.5, 0.5);

  BasicModelParams<double> analytic;
  const std::span<const BasicExample<double>> batch(&sample, 1);
  loss_and_gradient(params, batch, analytic);

  ForwardCache<double> cache;
  run_forward(params, sample.input, cache);
  const auto base_pattern = activation_pattern(cache);

  auto loss_at = [&](std::vector<bool>& pattern) {
    run_forward(params, sample.input, cache);
    pattern = activation_pattern(cache);
    return cross_entropy(cache.maps.logits, sample.label);
  };

  std::vector<double*> slots;
  params.for_each([&slots](double& x) { slots.push_back(&x); });
  std::vector<double> grads;
  analytic.for_each([&grads](const double& g) { grads.push_back(g); });

  constexpr double kStep = 1e-4;
  GradientCheckResult result;
  std::vector<bool> plus_pattern;
  std::vector<bool> minus_pattern;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    double& x = *slots[i];
    const double saved = x;
    x = saved + kStep;
    const double plus = loss_at(plus_pattern);
    x = saved - kStep;
    const double minus = loss_at(minus_pattern);
    x = saved;
    if (plus_pattern != base_pattern || minus_pattern != base_pattern) {
      ++result.parameters_skipped;
      continue;
    }
    const double numeric = (plus - minus) / (2.0 * kStep);
    const double a = grads[i];
    const double denom = std::max(std::abs(a) + std::abs(numeric), 1e-8);
    result.max_relative_error = std::max(result.max_relative_error, std::abs(a - numeric) / denom);
    ++result.parameters_checked;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Training and inference

namespace {

std::vector<std::string> document_tokens(std::string_view text, std::size_t max_tokens) {
  std::vector<std::string> out;
  for (auto& tok : tokenize(text)) {
    if (out.size() == max_tokens) break;
    out.push_back(std::move(tok.surface));
  }
  return out;
}

class EmbeddingCache {
 public:
  explicit EmbeddingCache(const EmbeddingTable& table) : table_(table) {}

  RowMatrix<float> embed(const std::vector<std::string>& tokens) {
    RowMatrix<float> m(static_cast<Eigen::Index>(tokens.size()),
                       static_cast<Eigen::Index>(table_.dimension()));
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      auto it = cache_.find(tokens[t]);
      if (it == cache_.end()) it = cache_.emplace(tokens[t], table_.lookup(tokens[t])).first;
      std::memcpy(m.row(static_cast<Eigen::Index>(t)).data(), it->second.data(),
                  it->second.size() * sizeof(float));
    }
    return m;
  }

 private:
  const EmbeddingTable& table_;
  std::unordered_map<std::string, std::vector<float>> cache_;
};

struct PreparedDoc {
  std::vector<std::string> tokens;
  std::size_t label = 0;
};

std::vector<PreparedDoc> prepare(const Corpus& corpus, std::size_t max_tokens) {
  std::vector<PreparedDoc> docs;
  docs.reserve(corpus.size());
  for (const auto& doc : corpus.documents()) {
    if (!doc.label) {
      throw Error(ErrorCode::kUnlabeled, "document '" + doc.id + "' has no label");
    }
    auto tokens = document_tokens(doc.text, max_tokens);
    if (tokens.empty()) continue;
    docs.push_back({std::move(tokens), static_cast<std::size_t>(*doc.label)});
  }
  return docs;
}

double f1_on(const ModelParams& params, const std::vector<PreparedDoc>& docs,
             EmbeddingCache& cache) {
  std::vector<bool> predicted;
  std::vector<bool> actual;
  for (const auto& doc : docs) {
    const auto maps = forward(params, cache.embed(doc.tokens));
    predicted.push_back(maps.probs(1) >= 0.5);
    actual.push_back(doc.label == 1);
  }
  return binary_metrics(predicted, actual).f1();
}

}  // namespace

TrainResult train(const ModelConfig& config, const Corpus& corpus, const EmbeddingTable& table,
                  const TrainOptions& options, const Corpus* heldout) {
  config.validate();
  if (config.n_classes != 2) {
    throw Error(ErrorCode::kInvalidArgument, "training supports the two-class setup only");
  }
  if (table.dimension() != config.embed_dim) {
    throw Error(ErrorCode::kShapeMismatch, "embedding dimension does not match model config");
  }
  if (corpus.empty()) throw Error(ErrorCode::kInvalidArgument, "training corpus is empty");
  if (options.batch_size == 0 || options.max_tokens == 0) {
    throw Error(ErrorCode::kInvalidArgument, "batch_size and max_tokens must be positive");
  }
  const auto docs = prepare(corpus, options.max_tokens);
  const bool has_pos = std::any_of(docs.begin(), docs.end(), [](auto& d) { return d.label == 1; });
  const bool has_neg = std::any_of(docs.begin(), docs.end(), [](auto& d) { return d.label == 0; });
  if (!has_pos || !has_neg) {
    throw Error(ErrorCode::kInvalidArgument, "training corpus must contain both classes");
  }
  const auto heldout_docs = heldout ? prepare(*heldout, options.max_tokens) : docs;

  TrainResult result{initialize_params<float>(config, options.seed), {}};
  ModelParams& params = result.params;

  // Adam state, flattened in for_each order.
  const std::size_t n_params = params.parameter_count();
  std::vector<double> m1(n_params, 0.0);
  std::vector<double> m2(n_params, 0.0);
  std::uint64_t step = 0;

  EmbeddingCache cache(table);
  Rng rng(options.seed ^ 0x5EEDF00DULL);
  std::vector<std::size_t> order(docs.size());
  std::vector<BasicExample<float>> batch;
  ModelParams grad;

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += options.batch_size) {
      const std::size_t end = std::min(order.size(), start + options.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) {
        const auto& doc = docs[order[i]];
        batch.push_back({cache.embed(doc.tokens), doc.label});
      }
      epoch_loss += loss_and_gradient(params, std::span<const BasicExample<float>>(batch), grad);

      ++step;
      const double scale = 1.0 / static_cast<double>(batch.size());
      const double bc1 = 1.0 - std::pow(options.beta1, static_cast<double>(step));
      const double bc2 = 1.0 - std::pow(options.beta2, static_cast<double>(step));
      std::vector<float> g;
      g.reserve(n_params);
      grad.for_each([&g](const float& x) { g.push_back(x); });
      std::size_t i = 0;
      params.for_each([&](float& w) {
        const double gi = static_cast<double>(g[i]) * scale;
        m1[i] = options.beta1 * m1[i] + (1.0 - options.beta1) * gi;
        m2[i] = options.beta2 * m2[i] + (1.0 - options.beta2) * gi * gi;
        const double mhat = m1[i] / bc1;
        const double vhat = m2[i] / bc2;
        w = static_cast<float>(static_cast<double>(w) -
                               options.learning_rate * mhat / (std::sqrt(vhat) + options.epsilon));
        ++i;
      });
    }
    EpochLog entry;
    entry.epoch = epoch + 1;
    entry.mean_loss = epoch_loss / static_cast<double>(docs.size());
    entry.heldout_f1 = f1_on(params, heldout_docs, cache);
    result.log.epochs.push_back(entry);
  }
  if (!params.all_finite()) {
    throw Error(ErrorCode::kInvalidArgument, "training diverged to non-finite parameters");
  }
  return result;
}

Prediction predict(const ModelParams& params, std::string_view text, const EmbeddingTable& table) {
  Prediction out;
  out.tokens = tokenize(text);
  if (out.tokens.empty()) throw Error(ErrorCode::kEmptyText, "text has no tokens");
  if (table.dimension() != params.config.embed_dim) {
    throw Error(ErrorCode::kShapeMismatch, "embedding dimension does not match model config");
  }
  if (params.config.n_classes < 2) {
    throw Error(ErrorCode::kInvalidArgument, "model has no biased class");
  }
  const auto input = embed_tokens(table, std::span<const Token>(out.tokens));
  const auto maps = forward(params, RowMatrix<float>(input));
  out.bias_score = maps.probs(1);
  out.cam = compute_cam(params, maps, 1);
  return out;
}

// ---------------------------------------------------------------------------
// Checkpoints

namespace {

constexpr char kMagic[4] = {'F', 'C', 'L', 'F'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(std::string_view in, std::size_t& pos) {
  if (pos + 4 > in.size()) throw Error(ErrorCode::kCheckpoint, "checkpoint truncated");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  }
  pos += 4;
  return v;
}

}  // namespace

std::string save_checkpoint(const ModelParams& params) {
  if (params.config.pooling != Pooling::kAverage) {
    throw Error(ErrorCode::kCheckpoint, "checkpoint format v1 stores average-pooling models only");
  }
  std::string out(kMagic, 4);
  put_u32(out, kCheckpointVersion);
  const auto& c = params.config;
  for (std::size_t v : {c.n_layers, c.kernels, c.kernel_size, c.embed_dim, c.n_classes}) {
    put_u32(out, static_cast<std::uint32_t>(v));
  }
  out.reserve(out.size() + params.parameter_count() * 4);
  params.for_each([&out](const float& x) { put_u32(out, std::bit_cast<std::uint32_t>(x)); });
  return out;
}

ModelParams load_checkpoint(std::string_view bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kCheckpoint, "not a checkpoint (bad magic)");
  }
  std::size_t pos = 4;
  const std::uint32_t version = get_u32(bytes, pos);
  if (version != kCheckpointVersion) {
    throw Error(ErrorCode::kCheckpoint, "unsupported checkpoint version " + std::to_string(version));
  }
  ModelConfig config;
  config.n_layers = get_u32(bytes, pos);
  config.kernels = get_u32(bytes, pos);
  config.kernel_size = get_u32(bytes, pos);
  config.embed_dim = get_u32(bytes, pos);
  config.n_classes = get_u32(bytes, pos);
  try {
    config.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kCheckpoint, std::string("bad checkpoint header: ") + e.what());
  }
  auto params = ModelParams::zeros(config);
  const std::size_t expected = pos + params.parameter_count() * 4;
  if (bytes.size() < expected) throw Error(ErrorCode::kCheckpoint, "checkpoint truncated");
  if (bytes.size() > expected) throw Error(ErrorCode::kCheckpoint, "trailing bytes in checkpoint");
  params.for_each([&](float& x) { x = std::bit_cast<float>(get_u32(bytes, pos)); });
  if (!params.all_finite()) throw Error(ErrorCode::kCheckpoint, "checkpoint has non-finite values");
  return params;
}

void save_checkpoint_file(const ModelParams& params, const std::string& path) {
  const std::string bytes = save_checkpoint(params);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write checkpoint " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

ModelParams load_checkpoint_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open checkpoint " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_checkpoint(buf.str());
}

}  // namespace vaguecam
