#include <doctest.h>

#include <cmath>
#include <cstring>

#include "vaguecam/classifier.hpp"
#include "vaguecam/error.hpp"
#include "vaguecam/random.hpp"

using namespace vaguecam;

namespace {

ModelConfig tiny_config(std::size_t layers = 2, std::size_t k = 3, std::size_t ks = 3,
                        std::size_t d = 4) {
  ModelConfig c;
  c.n_layers = layers;
  c.kernels = k;
  c.kernel_size = ks;
  c.embed_dim = d;
  return c;
}

template <typename S>
RowMatrix<S> random_input(Rng& rng, std::size_t t, std::size_t d) {
  RowMatrix<S> x(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = static_cast<S>(rng.uniform(-1.0, 1.0));
  return x;
}

template <typename S>
void randomize_biases(BasicModelParams<S>& p, Rng& rng) {
  for (auto& layer : p.conv) {
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) layer.bias(i) = static_cast<S>(rng.uniform(-0.3, 0.3));
  }
  for (Eigen::Index i = 0; i < p.b.size(); ++i) p.b(i) = static_cast<S>(rng.uniform(-0.3, 0.3));
}

// Direct loops over positions, taps and channels with explicit zero padding.
RowMatrix<double> naive_last_layer(const BasicModelParams<double>& p, const RowMatrix<double>& x) {
  RowMatrix<double> a = x;
  const auto ks = static_cast<long>(p.config.kernel_size);
  for (const auto& layer : p.conv) {
    const long T = a.rows();
    const long in = a.cols();
    const long K = layer.weight.cols();
    RowMatrix<double> out(T, K);
    for (long t = 0; t < T; ++t) {
      for (long k = 0; k < K; ++k) {
        double z = layer.bias(k);
        for (long tap = 0; tap < ks; ++tap) {
          const long src = t + tap - ks / 2;
          if (src < 0 || src >= T) continue;
          for (long i = 0; i < in; ++i) z += a(src, i) * layer.weight(tap * in + i, k);
        }
        out(t, k) = z > 0 ? z : 0;
      }
    }
    a = out;
  }
  return a;
}

std::vector<double> flat(const BasicModelParams<double>& p) {
  std::vector<double> v;
  p.for_each([&v](const double& x) { v.push_back(x); });
  return v;
}

}  // namespace

TEST_SUITE("classifier") {

TEST_CASE("config validation") {
  ModelConfig c;
  CHECK_NOTHROW(c.validate());
  c.kernel_size = 4;
  CHECK_THROWS_AS(c.validate(), Error);
  c.kernel_size = 5;
  c.kernels = 0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("hand computed forward pass") {
  ModelConfig c = tiny_config(1, 1, 1, 1);
  auto p = ModelParams::zeros(c);
  p.conv[0].weight(0, 0) = 1.0f;
  p.W(0, 0) = 1.0f;
  p.W(0, 1) = -1.0f;
  RowMatrix<float> x(2, 1);
  x << 2.0f, 4.0f;
  const auto m = forward(p, x);
  REQUIRE(m.F.rows() == 2);
  CHECK(m.F(0, 0) == 2.0f);
  CHECK(m.F(1, 0) == 4.0f);
  CHECK(m.pooled(0) == 3.0);
  CHECK(m.logits(0) == 3.0);
  CHECK(m.logits(1) == -3.0);
}

TEST_CASE("im2col forward equals direct convolution") {
  Rng rng(21);
  for (std::size_t ks : {1u, 3u, 5u}) {
    for (std::size_t t : {1u, 2u, 7u}) {
      auto p = initialize_params<double>(tiny_config(3, 4, ks, 5), 100 + ks * 10 + t);
      randomize_biases(p, rng);
      const auto x = random_input<double>(rng, t, 5);
      const auto m = forward(p, x);
      const auto want = naive_last_layer(p, x);
      CHECK((m.F - want).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("pooling, logits and softmax invariants") {
  Rng rng(4);
  const auto c = tiny_config(3, 6, 5, 7);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = initialize_params<float>(c, static_cast<std::uint64_t>(trial));
    randomize_biases(p, rng);
    const auto t = 1 + rng.uniform_index(30);
    const auto m = forward(p, random_input<float>(rng, t, 7));
    CHECK(m.F.rows() == static_cast<Eigen::Index>(t));
    for (Eigen::Index k = 0; k < m.F.cols(); ++k) {
      double s = 0;
      for (Eigen::Index r = 0; r < m.F.rows(); ++r) s += m.F(r, k);
      CHECK(std::abs(m.pooled(k) - s / static_cast<double>(t)) < 1e-6);
    }
    const Eigen::VectorXd s = p.W.cast<double>().transpose() * m.pooled + p.b.cast<double>();
    CHECK((s - m.logits).cwiseAbs().maxCoeff() < 1e-5);
    CHECK(std::abs(m.probs.sum() - 1.0) < 1e-6);
  }
}

TEST_CASE("single position input") {
  auto p = initialize_params<float>(ModelConfig{}, 1);
  Rng rng(8);
  const auto m = forward(p, random_input<float>(rng, 1, 300));
  CHECK(m.F.rows() == 1);
  for (std::size_t c = 0; c < 2; ++c) {
    const auto cam = compute_cam(p, m, c);
    REQUIRE(cam.scores.size() == 1);
    CHECK(std::abs(cam.scores[0] - (m.logits(static_cast<Eigen::Index>(c)) - p.b(static_cast<Eigen::Index>(c)))) < 1e-5);
  }
}

TEST_CASE("shape errors") {
  auto p = initialize_params<float>(tiny_config(), 1);
  CHECK_THROWS_AS(forward(p, RowMatrix<float>(0, 4)), Error);
  CHECK_THROWS_AS(forward(p, RowMatrix<float>(3, 5)), Error);
  Rng rng(1);
  const auto m = forward(p, random_input<float>(rng, 3, 4));
  try {
    compute_cam(p, m, 2);
    FAIL("expected OutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutOfRange);
  }
}

TEST_CASE("CAM with zero class weights is zero") {
  auto p = initialize_params<float>(tiny_config(), 3);
  p.W.col(1).setZero();
  Rng rng(2);
  const auto cam = compute_cam(p, forward(p, random_input<float>(rng, 6, 4)), 1);
  for (double s : cam.scores) CHECK(s == 0.0);
}

TEST_CASE("CAM mean equals logit minus bias") {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = initialize_params<float>(tiny_config(2, 8, 5, 6), static_cast<std::uint64_t>(trial));
    randomize_biases(p, rng);
    const auto t = 1 + rng.uniform_index(40);
    const auto m = forward(p, random_input<float>(rng, t, 6));
    for (std::size_t c = 0; c < 2; ++c) {
      const auto cam = compute_cam(p, m, c);
      REQUIRE(cam.scores.size() == t);
      double mean = 0;
      for (double s : cam.scores) mean += s;
      mean /= static_cast<double>(t);
      const auto ci = static_cast<Eigen::Index>(c);
      CHECK(std::abs(mean - (m.logits(ci) - p.b(ci))) < 1e-5);
    }
  }
}

TEST_CASE("shifting both biases leaves probabilities and CAM unchanged") {
  Rng rng(13);
  auto p = initialize_params<float>(tiny_config(2, 4, 3, 5), 5);
  randomize_biases(p, rng);
  const auto x = random_input<float>(rng, 9, 5);
  const auto before = forward(p, x);
  auto q = p;
  q.b.array() += 0.75f;
  const auto after = forward(q, x);
  for (Eigen::Index c = 0; c < 2; ++c) {
    CHECK(std::abs(after.logits(c) - before.logits(c) - 0.75) < 1e-6);
    CHECK(std::abs(after.probs(c) - before.probs(c)) < 1e-6);
    CHECK(compute_cam(q, after, static_cast<std::size_t>(c)).scores ==
          compute_cam(p, before, static_cast<std::size_t>(c)).scores);
  }
}

TEST_CASE("gradient check on random tiny models") {
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = tiny_config(1 + rng.uniform_index(3), 1 + rng.uniform_index(4),
                               1 + 2 * rng.uniform_index(3), 1 + rng.uniform_index(4));
    BasicExample<double> ex{random_input<double>(rng, 1 + rng.uniform_index(8), c.embed_dim),
                            rng.uniform_index(2)};
    const auto r = gradient_check(c, ex, static_cast<std::uint64_t>(trial));
    CHECK(r.max_relative_error < 1e-4);
    CHECK(r.parameters_checked > 0);
  }
}

TEST_CASE("gradient check with max pooling") {
  Rng rng(7);
  auto c = tiny_config(2, 3, 3, 3);
  c.pooling = Pooling::kMax;
  BasicExample<double> ex{random_input<double>(rng, 6, 3), 1};
  const auto r = gradient_check(c, ex, 17);
  CHECK(r.max_relative_error < 1e-4);
  CHECK(r.parameters_checked > 0);
}

TEST_CASE("gradient check size limits") {
  Rng rng(1);
  BasicExample<double> ex{random_input<double>(rng, 9, 2), 0};
  CHECK_THROWS_AS(gradient_check(tiny_config(1, 2, 1, 2), ex, 1), Error);
}

TEST_CASE("zero input gives zero first-layer kernel gradient") {
  auto p = initialize_params<double>(tiny_config(2, 3, 3, 4), 3);
  Rng rng(5);
  randomize_biases(p, rng);
  BasicExample<double> ex{RowMatrix<double>::Zero(5, 4), 1};
  BasicModelParams<double> g;
  loss_and_gradient(p, std::span<const BasicExample<double>>(&ex, 1), g);
  CHECK(g.conv[0].weight.isZero(0.0));
}

TEST_CASE("duplicated sample doubles the gradient") {
  auto p = initialize_params<double>(tiny_config(2, 3, 3, 4), 4);
  Rng rng(6);
  randomize_biases(p, rng);
  BasicExample<double> ex{random_input<double>(rng, 5, 4), 0};
  const std::vector<BasicExample<double>> two{ex, ex};
  BasicModelParams<double> g1;
  BasicModelParams<double> g2;
  const double l1 = loss_and_gradient(p, std::span<const BasicExample<double>>(&ex, 1), g1);
  const double l2 = loss_and_gradient(p, std::span<const BasicExample<double>>(two), g2);
  CHECK(l2 == doctest::Approx(2 * l1).epsilon(1e-12));
  const auto a = flat(g1);
  const auto b = flat(g2);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(b[i] - 2 * a[i]) <= 1e-12 * (1 + std::abs(a[i])));
}

TEST_CASE("glorot initialization bounds") {
  const ModelConfig c;
  const auto p = initialize_params<float>(c, 42);
  const double limit0 = std::sqrt(6.0 / (5.0 * 300 + 5.0 * 128));
  CHECK(p.conv[0].weight.cwiseAbs().maxCoeff() <= limit0);
  CHECK(p.conv[0].bias.isZero(0.0f));
  const double limit_w = std::sqrt(6.0 / (128.0 + 2.0));
  CHECK(p.W.cwiseAbs().maxCoeff() <= limit_w);
  CHECK(p.parameter_count() == (5 * 300 * 128 + 128) + 2 * (5 * 128 * 128 + 128) + 128 * 2 + 2);
  const auto q = initialize_params<float>(c, 42);
  CHECK(save_checkpoint(p) == save_checkpoint(q));
}

TEST_CASE("checkpoint round trip") {
  Rng rng(14);
  auto p = initialize_params<float>(tiny_config(3, 4, 5, 6), 9);
  randomize_biases(p, rng);
  const auto bytes = save_checkpoint(p);
  const auto q = load_checkpoint(bytes);
  CHECK(q.config == p.config);
  const auto x = random_input<float>(rng, 11, 6);
  const auto a = forward(p, x);
  const auto b = forward(q, x);
  CHECK(a.F == b.F);
  CHECK(a.logits == b.logits);
  CHECK(a.probs == b.probs);
  CHECK(save_checkpoint(q) == bytes);
}

TEST_CASE("checkpoint errors") {
  const auto bytes = save_checkpoint(initialize_params<float>(tiny_config(), 1));
  auto expect_code = [](const std::string& b) {
    try {
      load_checkpoint(b);
      FAIL("expected a checkpoint error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kCheckpoint);
    }
  };
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  expect_code(bad_magic);
  std::string bad_version = bytes;
  bad_version[4] = 2;
  expect_code(bad_version);
  expect_code(bytes.substr(0, bytes.size() - 1));
  expect_code(bytes.substr(0, 10));
  expect_code(bytes + "x");
  std::string nan_value = bytes;
  const float nan = std::nanf("");
  std::memcpy(nan_value.data() + 28, &nan, 4);
  expect_code(nan_value);
}

TEST_CASE("default checkpoint header") {
  const auto bytes = save_checkpoint(initialize_params<float>(ModelConfig{}, 1));
  CHECK(bytes.substr(0, 4) == "FCLF");
  auto u32 = [&bytes](std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + i])) << (8 * i);
    return v;
  };
  CHECK(u32(4) == 1);
  CHECK(u32(8) == 3);
  CHECK(u32(12) == 128);
  CHECK(u32(16) == 5);
  CHECK(u32(20) == 300);
  CHECK(u32(24) == 2);
  CHECK(bytes.size() == 28 + 4 * initialize_params<float>(ModelConfig{}, 1).parameter_count());
}

TEST_CASE("max pooling models are not checkpointed") {
  auto c = tiny_config();
  c.pooling = Pooling::kMax;
  CHECK_THROWS_AS(save_checkpoint(initialize_params<float>(c, 1)), Error);
}

namespace {

Corpus toy_corpus() {
  Corpus c;
  const char* biased[] = {"awful shameless lies again", "shameless awful spin", "lies lies awful"};
  const char* legit[] = {"council met on monday", "the report was published", "monday council report"};
  int i = 0;
  for (const char* t : biased) c.add({"b" + std::to_string(i++), t, Label::kBiased, "toy"});
  for (const char* t : legit) c.add({"l" + std::to_string(i++), t, Label::kLegitimate, "toy"});
  return c;
}

}  // namespace

TEST_CASE("zero epochs returns the initialization") {
  const auto c = tiny_config(2, 4, 3, 8);
  TrainOptions o;
  o.epochs = 0;
  o.seed = 5;
  const auto r = train(c, toy_corpus(), EmbeddingTable::hashed(8, 1), o);
  CHECK(save_checkpoint(r.params) == save_checkpoint(initialize_params<float>(c, 5)));
  CHECK(r.log.epochs.empty());
}

TEST_CASE("training is deterministic and learns the toy corpus") {
  const auto c = tiny_config(2, 8, 3, 16);
  TrainOptions o;
  o.epochs = 60;
  o.batch_size = 2;
  o.learning_rate = 1e-2;
  const auto table = EmbeddingTable::hashed(16, 3);
  const auto a = train(c, toy_corpus(), table, o);
  const auto b = train(c, toy_corpus(), table, o);
  CHECK(a.log.epochs.back().mean_loss == b.log.epochs.back().mean_loss);
  CHECK(save_checkpoint(a.params) == save_checkpoint(b.params));
  CHECK(a.log.epochs.back().mean_loss < a.log.epochs.front().mean_loss);
  CHECK(a.log.epochs.back().heldout_f1 == 1.0);
}

TEST_CASE("training errors") {
  const auto c = tiny_config(1, 2, 1, 4);
  const auto table = EmbeddingTable::hashed(4, 1);
  CHECK_THROWS_AS(train(c, Corpus{}, table, TrainOptions{}), Error);
  Corpus one;
  one.add({"a", "text", Label::kBiased, ""});
  one.add({"b", "more text", Label::kBiased, ""});
  CHECK_THROWS_AS(train(c, one, table, TrainOptions{}), Error);
  CHECK_THROWS_AS(train(c, toy_corpus(), EmbeddingTable::hashed(5, 1), TrainOptions{}), Error);
}

TEST_CASE("predict contracts") {
  auto p = initialize_params<float>(tiny_config(2, 3, 3, 4), 2);
  const EmbeddingTable zero(4, OovPolicy::kZeroVector);
  const auto one = predict(p, "unknownword", zero);
  REQUIRE(one.cam.scores.size() == 1);
  CHECK(one.cam.scores[0] == 0.0);
  const auto hashed = EmbeddingTable::hashed(4, 9);
  const auto many = predict(p, "A longer text, with punctuation and 12 tokens!", hashed);
  CHECK(many.cam.scores.size() == many.tokens.size());
  CHECK(many.bias_score >= 0.0);
  CHECK(many.bias_score <= 1.0);
  CHECK(many.cam.class_index == 1);
  try {
    predict(p, "   ", hashed);
    FAIL("expected EmptyText");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyText);
  }
}

TEST_CASE("zero weights give an even score and zero CAM") {
  const auto p = ModelParams::zeros(tiny_config(2, 3, 3, 4));
  const auto r = predict(p, "Any text at all.", EmbeddingTable::hashed(4, 1));
  CHECK(r.bias_score == 0.5);
  for (double s : r.cam.scores) CHECK(s == 0.0);
}

}  // TEST_SUITE
