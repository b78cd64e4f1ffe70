#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vaguecam/analysis.hpp"
#include "vaguecam/classifier.hpp"
#include "vaguecam/error.hpp"
#include "vaguecam/scoring.hpp"
#include "vaguecam/service.hpp"
#include "vaguecam/textproc.hpp"

#include "vaguecam/random.hpp"

namespace py = pybind11;
namespace vc = vaguecam;
using namespace pybind11::literals;

namespace {

std::string analyze(const std::string& text, const std::string& lexicon_path, bool count_punctuation,
                    bool per_occurrence) {
  const auto lex = vc::load_lexicon_file(lexicon_path);
  vc::ScoringOptions opts;
  opts.count_punctuation = count_punctuation;
  opts.per_occurrence = per_occurrence;
  const auto report = vc::score_text(text, lex, opts);
  auto j = vc::to_json(report, text);
  const auto b = vc::barometer_summary(report);
  j["barometers"] = {{"vague_pct", b.vague_pct}, {"opinion_pct", b.opinion_pct}};
  j["trigger_count"] = report.trigger_count();
  return j.dump();
}

py::tuple detect_language(const std::string& text) {
  const auto g = vc::detect_language(text);
  return py::make_tuple(std::string(vc::language_tag(g.language)), g.confidence);
}

py::tuple generate_corpus(std::size_t n_docs, double bias_fraction, std::uint64_t seed,
                          const std::string& lexicon_path, double lexicon_fraction) {
  vc::SyntheticSpec spec;
  spec.n_docs = n_docs;
  spec.bias_fraction = bias_fraction;
  spec.seed = seed;
  spec.fill_defaults(vc::load_lexicon_file(lexicon_path), lexicon_fraction);
  const auto out = vc::generate_synthetic_corpus(spec);
  return py::make_tuple(out.corpus.to_jsonl(), out.manifest.dump());
}

vc::EmbeddingTable make_table(std::size_t dim, std::uint64_t embedding_seed,
                              const std::string& vectors_path) {
  if (!vectors_path.empty()) return vc::load_vectors_file(vectors_path);
  return vc::EmbeddingTable::hashed(dim, embedding_seed);
}

class Model {
 public:
  Model(vc::ModelParams params, vc::EmbeddingTable table)
      : params_(std::move(params)), table_(std::move(table)) {}

  static Model train(const std::string& corpus_jsonl, std::size_t epochs, std::size_t batch_size,
                     double learning_rate, std::uint64_t seed, std::size_t n_layers,
                     std::size_t kernels, std::size_t kernel_size, std::size_t embed_dim,
                     std::uint64_t embedding_seed, const std::string& vectors_path) {
    auto table = make_table(embed_dim, embedding_seed, vectors_path);
    vc::ModelConfig cfg;
    cfg.n_layers = n_layers;
    cfg.kernels = kernels;
    cfg.kernel_size = kernel_size;
    cfg.embed_dim = table.dimension();
    vc::TrainOptions opts;
    opts.epochs = epochs;
    opts.batch_size = batch_size;
    opts.learning_rate = learning_rate;
    opts.seed = seed;
    const auto corpus = vc::ingest_jsonl(corpus_jsonl);
    vc::TrainResult r;
    {
      py::gil_scoped_release release;
      r = vc::train(cfg, corpus, table, opts);
    }
    return Model(std::move(r.params), std::move(table));
  }

  static Model load(const std::string& checkpoint, std::uint64_t embedding_seed,
                    const std::string& vectors_path) {
    auto params = vc::load_checkpoint_file(checkpoint);
    auto table = make_table(params.config.embed_dim, embedding_seed, vectors_path);
    if (table.dimension() != params.config.embed_dim) {
      throw vc::Error(vc::ErrorCode::kShapeMismatch, "embedding width does not match the model");
    }
    return Model(std::move(params), std::move(table));
  }

  void save(const std::string& path) const { vc::save_checkpoint_file(params_, path); }
  py::bytes checkpoint_bytes() const { return py::bytes(vc::save_checkpoint(params_)); }

  py::dict predict(const std::string& text) const {
    const auto p = vc::predict(params_, text, table_);
    std::vector<std::string> tokens;
    for (const auto& t : p.tokens) tokens.push_back(t.surface);
    py::dict d;
    d["bias_score"] = p.bias_score;
    d["tokens"] = tokens;
    d["cam"] = p.cam.scores;
    return d;
  }

  // Raw forward pass on a T x d embedding matrix.
  py::dict forward(const vc::RowMatrix<float>& x) const {
    const auto m = vc::forward(params_, x);
    py::dict d;
    d["features"] = m.F;
    d["logits"] = m.logits;
    d["probs"] = m.probs;
    d["cam"] = std::vector<std::vector<double>>{vc::compute_cam(params_, m, 0).scores,
                                                vc::compute_cam(params_, m, 1).scores};
    return d;
  }

  py::dict evaluate(const std::string& corpus_jsonl) const {
    const auto r = vc::evaluate(params_, vc::ingest_jsonl(corpus_jsonl), table_);
    return py::dict("f1"_a = r.metrics.f1(), "precision"_a = r.metrics.precision(),
                    "recall"_a = r.metrics.recall(), "accuracy"_a = r.metrics.accuracy());
  }

  std::vector<std::size_t> config() const {
    const auto& c = params_.config;
    return {c.n_layers, c.kernels, c.kernel_size, c.embed_dim, c.n_classes};
  }

  const vc::ModelParams& params() const { return params_; }
  const vc::EmbeddingTable& table() const { return table_; }

 private:
  vc::ModelParams params_;
  vc::EmbeddingTable table_;
};

double gradcheck(std::size_t models, std::uint64_t seed) {
  vc::Rng rng(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < models; ++i) {
    vc::ModelConfig c;
    c.n_layers = 1 + rng.uniform_index(3);
    c.kernels = 1 + rng.uniform_index(4);
    c.kernel_size = 1 + 2 * rng.uniform_index(3);
    c.embed_dim = 1 + rng.uniform_index(4);
    vc::BasicExample<double> ex;
    ex.input.resize(static_cast<Eigen::Index>(1 + rng.uniform_index(8)),
                    static_cast<Eigen::Index>(c.embed_dim));
    for (Eigen::Index k = 0; k < ex.input.size(); ++k) ex.input.data()[k] = rng.uniform(-1, 1);
    ex.label = rng.uniform_index(2);
    worst = std::max(worst, vc::gradient_check(c, ex, seed + i).max_relative_error);
  }
  return worst;
}

}  // namespace

PYBIND11_MODULE(_vaguecam, m) {
  m.doc() = "Vagueness scoring and CAM bias classification.";

  static py::exception<vc::Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const vc::Error& e) {
      PyErr_SetString(error.ptr(), (std::string(vc::to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("analyze", &analyze, "text"_a, "lexicon_path"_a, "count_punctuation"_a = false,
        "per_occurrence"_a = true, "Score a text; returns the report as JSON.");
  m.def("detect_language", &detect_language, "text"_a);
  m.def("generate_corpus", &generate_corpus, "n_docs"_a = 2000, "bias_fraction"_a = 0.5,
        "seed"_a = 42, "lexicon_path"_a, "lexicon_fraction"_a = 0.5,
        "Returns (jsonl, manifest_json).");
  m.def("gradcheck", &gradcheck, "models"_a = 20, "seed"_a = 1,
        "Max relative gradient error over random tiny models.");
  m.def("default_lexicon_dir", &vc::default_lexicon_dir);

  py::class_<Model>(m, "Model")
      .def_static("train", &Model::train, "corpus_jsonl"_a, "epochs"_a = 20, "batch_size"_a = 32,
                  "learning_rate"_a = 1e-3, "seed"_a = 42, "n_layers"_a = 3, "kernels"_a = 128,
                  "kernel_size"_a = 5, "embed_dim"_a = vc::kDefaultEmbeddingDim,
                  "embedding_seed"_a = 0, "vectors_path"_a = "")
      .def_static("load", &Model::load, "checkpoint"_a, "embedding_seed"_a = 0, "vectors_path"_a = "")
      .def("save", &Model::save, "path"_a)
      .def("checkpoint_bytes", &Model::checkpoint_bytes)
      .def("predict", &Model::predict, "text"_a)
      .def("forward", &Model::forward, "x"_a)
      .def("evaluate", &Model::evaluate, "corpus_jsonl"_a)
      .def_property_readonly("config", &Model::config);
}
