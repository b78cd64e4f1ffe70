// vaguecam command-line tool.
//
// Exit codes: 0 success, 1 operational failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vaguecam/analysis.hpp"
#include "vaguecam/classifier.hpp"
#include "vaguecam/error.hpp"
#include "vaguecam/random.hpp"
#include "vaguecam/scoring.hpp"
#include "vaguecam/service.hpp"

namespace vc = vaguecam;

namespace {

struct Globals {
  std::uint64_t seed = 42;
  bool seed_given = false;
  std::string config_path;
  bool json = false;
  std::string lexicon_dir;
  std::string embeddings;
  std::size_t dim = 0;  // 0: config or checkpoint width
  std::optional<std::uint64_t> embedding_seed;
};

struct CorpusArgs {
  std::string path;
  std::string format = "jsonl";
  vc::ColumnMap columns;
  std::string split = "all";
  double test_fraction = 0.2;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vc::Error(vc::ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw vc::Error(vc::ErrorCode::kIo, "cannot write " + path);
  out << content;
  if (!out) throw vc::Error(vc::ErrorCode::kIo, "write failed for " + path);
}

vc::ServiceConfig load_config(const Globals& g) {
  vc::ServiceConfig cfg;
  if (!g.config_path.empty()) cfg = vc::load_service_config_file(g.config_path);
  if (!g.lexicon_dir.empty()) cfg.lexicon_dir = g.lexicon_dir;
  if (!g.embeddings.empty()) cfg.embeddings = g.embeddings;
  if (g.dim) cfg.embed_dim = g.dim;
  if (g.embedding_seed) cfg.embedding_seed = *g.embedding_seed;
  return cfg;
}

std::uint64_t effective_seed(const Globals& g, const vc::ServiceConfig& cfg) {
  return g.seed_given ? g.seed : cfg.seed;
}

vc::Lexicon load_lexicon_for(const vc::ServiceConfig& cfg, vc::Language lang,
                             const std::string& override_path) {
  const std::string path = override_path.empty() ? cfg.resolved_lexicon_path(lang) : override_path;
  return vc::load_lexicon(read_input(path), lang);
}

vc::EmbeddingTable load_table(const vc::ServiceConfig& cfg, std::size_t dim) {
  if (!cfg.embeddings.empty()) return vc::load_vectors_file(cfg.embeddings);
  return vc::EmbeddingTable::hashed(dim, cfg.embedding_seed);
}

vc::Corpus load_corpus(const CorpusArgs& a, std::uint64_t seed) {
  if (a.format != "jsonl" && a.format != "csv") {
    throw vc::Error(vc::ErrorCode::kInvalidArgument, "unknown corpus format " + a.format);
  }
  vc::Corpus corpus = vc::ingest_corpus(
      a.path, a.format == "csv" ? vc::CorpusFormat::kCsv : vc::CorpusFormat::kJsonl, a.columns);
  if (corpus.dropped_empty) {
    std::fprintf(stderr, "dropped %zu records with empty text\n", corpus.dropped_empty);
  }
  if (a.split == "all") return corpus;
  auto split = vc::split_corpus(corpus, a.test_fraction, seed);
  return a.split == "train" ? std::move(split.train) : std::move(split.test);
}

void add_corpus_options(CLI::App* cmd, CorpusArgs& a, const std::string& default_split) {
  a.split = default_split;
  cmd->add_option("--corpus", a.path, "Corpus file")->required();
  cmd->add_option("--format", a.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
  cmd->add_option("--id-col", a.columns.id, "Id column or field");
  cmd->add_option("--text-col", a.columns.text, "Text column or field");
  cmd->add_option("--label-col", a.columns.label, "Label column or field");
  cmd->add_option("--source-col", a.columns.source, "Source column or field");
  cmd->add_option("--split", a.split, "Documents to use: all, train or test")
      ->check(CLI::IsMember({"all", "train", "test"}));
  cmd->add_option("--test-fraction", a.test_fraction, "Held-out fraction of the split");
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

void print_report(const vc::TextReport& report, std::string_view text) {
  const auto b = vc::barometer_summary(report);
  std::printf("language: %s\n", std::string(vc::language_tag(report.language)).c_str());
  std::printf("sentences: %zu\n", report.n_sentences);
  std::printf("vague sentences: %lld/%lld (%d%%)\n", static_cast<long long>(report.r_vague.num),
              static_cast<long long>(report.r_vague.den), b.vague_pct);
  std::printf("subjective sentences: %lld/%lld (%d%%)\n",
              static_cast<long long>(report.r_subjective.num),
              static_cast<long long>(report.r_subjective.den), b.opinion_pct);
  for (std::size_t i = 0; i < report.sentences.size(); ++i) {
    const auto& s = report.sentences[i];
    std::printf("\n[%zu] %s\n", i + 1, std::string(text.substr(s.span.begin, s.span.size())).c_str());
    std::printf("    words=%zu  vague=%lld/%lld  subjective=%lld/%lld\n", s.n_words,
                static_cast<long long>(s.r_vague.num), static_cast<long long>(s.r_vague.den),
                static_cast<long long>(s.r_subjective.num),
                static_cast<long long>(s.r_subjective.den));
    for (const auto& t : s.triggers) {
      std::printf("    %-4s %s\n", std::string(vc::category_tag(t.category)).c_str(),
                  std::string(text.substr(t.span.begin, t.span.size())).c_str());
    }
  }
}

int run_analyze(const Globals& g, const std::string& input, const std::string& lang,
                const std::string& lexicon_path, const vc::ScoringOptions& opts) {
  const auto cfg = load_config(g);
  const std::string text = read_input(input);
  vc::Language language;
  if (!lang.empty()) {
    language = *vc::parse_language_tag(lang);
  } else if (!lexicon_path.empty() && vc::language_from_filename(lexicon_path)) {
    language = *vc::language_from_filename(lexicon_path);
  } else {
    language = vc::detect_language(text).language;
  }
  const auto lexicon = load_lexicon_for(cfg, language, lexicon_path);
  const auto report = vc::score_text(text, lexicon, opts);
  if (g.json) {
    auto j = vc::to_json(report, text);
    const auto b = vc::barometer_summary(report);
    j["barometers"] = {{"vague_pct", b.vague_pct}, {"opinion_pct", b.opinion_pct}};
    j["trigger_count"] = report.trigger_count();
    print_json(j);
  } else {
    print_report(report, text);
  }
  return 0;
}

int run_serve(const Globals& g, int port, const std::string& bind, const std::string& checkpoint,
              std::size_t max_chars) {
  auto cfg = load_config(g);
  if (g.seed_given) cfg.seed = g.seed;
  if (port >= 0) cfg.port = port;
  if (!bind.empty()) cfg.bind = bind;
  if (!checkpoint.empty()) cfg.checkpoint = checkpoint;
  if (max_chars) cfg.max_input_chars = max_chars;
  auto resources = vc::load_service_resources(cfg);
  vc::AnalysisService service(cfg, std::move(resources));
  vc::HttpServer server(service);
  const int bound = server.bind(cfg.bind, cfg.port);
  std::printf("listening on http://%s:%d\n", cfg.bind.c_str(), bound);
  std::fflush(stdout);
  server.listen();
  return 0;
}

int run_gen_corpus(const Globals& g, std::size_t n_docs, double bias_fraction,
                   double lexicon_fraction, const std::string& out, const std::string& manifest,
                   const std::string& lexicon_path) {
  const auto cfg = load_config(g);
  const auto lexicon = load_lexicon_for(cfg, vc::Language::kEnglish, lexicon_path);
  vc::SyntheticSpec spec;
  spec.n_docs = n_docs;
  spec.bias_fraction = bias_fraction;
  spec.seed = effective_seed(g, cfg);
  spec.fill_defaults(lexicon, lexicon_fraction);
  const auto syn = vc::generate_synthetic_corpus(spec);
  if (out.empty() || out == "-") {
    std::cout << syn.corpus.to_jsonl();
  } else {
    write_output(out, syn.corpus.to_jsonl());
  }
  if (!manifest.empty()) write_output(manifest, syn.manifest.dump(2) + "\n");
  return 0;
}

int run_train(const Globals& g, CorpusArgs corpus_args, vc::ModelConfig model,
              vc::TrainOptions opts, const std::string& out, const std::string& log_path) {
  const auto cfg = load_config(g);
  const std::uint64_t seed = effective_seed(g, cfg);
  opts.seed = seed;
  model.embed_dim = g.dim ? g.dim : cfg.embed_dim;
  const auto table = load_table(cfg, model.embed_dim);
  model.embed_dim = table.dimension();

  std::string split = corpus_args.split;
  corpus_args.split = "all";
  const vc::Corpus all = load_corpus(corpus_args, seed);
  vc::TrainResult result;
  if (split == "all") {
    result = vc::train(model, all, table, opts);
  } else {
    auto parts = vc::split_corpus(all, corpus_args.test_fraction, seed);
    result = vc::train(model, parts.train, table, opts, &parts.test);
  }
  vc::save_checkpoint_file(result.params, out);

  nlohmann::json log = nlohmann::json::array();
  for (const auto& e : result.log.epochs) {
    log.push_back({{"epoch", e.epoch}, {"mean_loss", e.mean_loss}, {"heldout_f1", e.heldout_f1}});
  }
  if (!log_path.empty()) write_output(log_path, log.dump(2) + "\n");
  if (g.json) {
    print_json({{"checkpoint", out}, {"epochs", log}});
  } else {
    for (const auto& e : result.log.epochs) {
      std::printf("epoch %3zu  loss %.6f  held-out F1 %.4f\n", e.epoch, e.mean_loss, e.heldout_f1);
    }
    std::printf("saved %s\n", out.c_str());
  }
  return 0;
}

struct ModelBundle {
  vc::ModelParams params;
  vc::EmbeddingTable table;
};

ModelBundle load_model(const Globals& g, const vc::ServiceConfig& cfg, const std::string& path) {
  const std::string ckpt = path.empty() ? cfg.checkpoint : path;
  if (ckpt.empty()) throw vc::Error(vc::ErrorCode::kInvalidArgument, "no checkpoint given");
  auto params = vc::load_checkpoint_file(ckpt);
  auto table = load_table(cfg, params.config.embed_dim);
  if (table.dimension() != params.config.embed_dim) {
    throw vc::Error(vc::ErrorCode::kShapeMismatch, "embedding width does not match the model");
  }
  return {std::move(params), std::move(table)};
}

int run_predict(const Globals& g, const std::string& checkpoint, const std::string& input) {
  const auto cfg = load_config(g);
  const auto m = load_model(g, cfg, checkpoint);
  const std::string text = read_input(input);
  const auto p = vc::predict(m.params, text, m.table);
  if (g.json) {
    nlohmann::json tokens = nlohmann::json::array();
    for (const auto& t : p.tokens) tokens.push_back(t.surface);
    print_json({{"bias_score", p.bias_score}, {"tokens", tokens}, {"cam_scores", p.cam.scores}});
  } else {
    std::printf("bias_score %.6f (%s)\n", p.bias_score, p.bias_score >= 0.5 ? "biased" : "legitimate");
    for (std::size_t i = 0; i < p.tokens.size(); ++i) {
      std::printf("%12.6f  %s\n", p.cam.scores[i], p.tokens[i].surface.c_str());
    }
  }
  return 0;
}

int run_evaluate(const Globals& g, const std::string& checkpoint, const CorpusArgs& a) {
  const auto cfg = load_config(g);
  const auto m = load_model(g, cfg, checkpoint);
  const auto corpus = load_corpus(a, effective_seed(g, cfg));
  const auto report = vc::evaluate(m.params, corpus, m.table);
  if (g.json) {
    print_json(vc::to_json(report));
  } else {
    const auto& mt = report.metrics;
    std::printf("n %zu  F1 %.4f  precision %.4f  recall %.4f  accuracy %.4f\n", report.scores.size(),
                mt.f1(), mt.precision(), mt.recall(), mt.accuracy());
    for (const auto& [source, s] : report.score_by_source) {
      std::printf("%-24s n=%-6zu median %.4f  quartiles [%.4f, %.4f]\n", source.c_str(), s.n,
                  s.median, s.quartiles.first, s.quartiles.second);
    }
  }
  return 0;
}

int run_study(const Globals& g, const std::string& checkpoint, const CorpusArgs& a,
              const std::string& lexicon_path) {
  const auto cfg = load_config(g);
  const auto m = load_model(g, cfg, checkpoint);
  const auto lexicon = load_lexicon_for(cfg, vc::Language::kEnglish, lexicon_path);
  const auto corpus = load_corpus(a, effective_seed(g, cfg));
  const auto r = vc::vagueness_bias_study(m.params, corpus, lexicon, m.table);
  if (g.json) {
    print_json(vc::to_json(r));
  } else {
    std::printf("n %zu (skipped %zu)\n", r.vague.n, r.skipped_documents);
    std::printf("r(predicted biased, vague ratio)      = %.4f\n", r.vague.r);
    std::printf("r(predicted biased, subjective ratio) = %.4f\n", r.subjective.r);
    std::printf("r(bias score, vague ratio)            = %.4f\n", r.vague_continuous.r);
    std::printf("r(bias score, subjective ratio)       = %.4f\n", r.subjective_continuous.r);
  }
  return 0;
}

struct WordTableArgs {
  std::string checkpoint;
  CorpusArgs corpus;
  std::string lexicon;
  std::size_t min_occurrences = 10;
  bool all_pos = false;
  std::string annotations;
  std::size_t top = 30;
  std::string out;
};

std::vector<vc::WordScoreRow> build_word_table(const Globals& g, const WordTableArgs& a,
                                               bool modifiers_only) {
  const auto cfg = load_config(g);
  const auto m = load_model(g, cfg, a.checkpoint);
  const auto lexicon = load_lexicon_for(cfg, vc::Language::kEnglish, a.lexicon);
  const auto corpus = load_corpus(a.corpus, effective_seed(g, cfg));
  vc::PosAnnotations annotations;
  vc::WordTableOptions opts;
  opts.min_occurrences = a.min_occurrences;
  opts.adjectives_and_adverbs_only = modifiers_only;
  if (!a.annotations.empty()) {
    annotations = vc::load_pos_annotations(read_input(a.annotations));
    opts.annotations = &annotations;
  }
  return vc::word_cam_table(m.params, corpus, lexicon, m.table, opts);
}

int run_word_table(const Globals& g, const WordTableArgs& a) {
  auto rows = build_word_table(g, a, !a.all_pos);
  if (a.top && rows.size() > a.top) rows.resize(a.top);
  if (g.json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) j.push_back(vc::to_json(r));
    print_json(j);
  } else {
    std::cout << vc::format_word_table(rows);
  }
  return 0;
}

int run_expand(const Globals& g, const WordTableArgs& a) {
  const auto rows = build_word_table(g, a, true);
  const auto candidates = vc::expansion_candidates(rows, a.top);
  const std::string tsv = vc::candidates_to_tsv(candidates);
  if (!a.out.empty()) write_output(a.out, tsv);
  if (g.json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : candidates) j.push_back(vc::to_json(r));
    print_json(j);
  } else if (a.out.empty()) {
    std::cout << tsv;
  }
  return 0;
}

int run_gradcheck(const Globals& g, std::size_t models, std::size_t tokens, vc::ModelConfig model,
                  double tolerance) {
  const std::uint64_t seed = effective_seed(g, load_config(g));
  double worst = 0.0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < models; ++i) {
    vc::Rng rng(seed + 7919 * i);
    vc::BasicExample<double> sample;
    sample.input.resize(static_cast<Eigen::Index>(tokens), static_cast<Eigen::Index>(model.embed_dim));
    for (Eigen::Index r = 0; r < sample.input.rows(); ++r) {
      for (Eigen::Index c = 0; c < sample.input.cols(); ++c) sample.input(r, c) = rng.uniform(-1.0, 1.0);
    }
    sample.label = static_cast<std::size_t>(rng.uniform_index(model.n_classes));
    const auto res = vc::gradient_check(model, sample, seed + i);
    worst = std::max(worst, res.max_relative_error);
    checked += res.parameters_checked;
    skipped += res.parameters_skipped;
  }
  const bool ok = worst < tolerance;
  if (g.json) {
    print_json({{"models", models},
                {"max_relative_error", worst},
                {"parameters_checked", checked},
                {"parameters_skipped", skipped},
                {"tolerance", tolerance},
                {"pass", ok}});
  } else {
    std::printf("models %zu  checked %zu  skipped %zu  max relative error %.3e  %s\n", models,
                checked, skipped, worst, ok ? "PASS" : "FAIL");
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vagueness scoring and CAM text classification"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Random seed (split, init, generation)");
  app.add_option("--config", g.config_path, "key = value config file");
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--lexicon-dir", g.lexicon_dir, "Directory holding seed.en.tsv and seed.fr.tsv");
  app.add_option("--embeddings", g.embeddings, "Word vector file; hashed vectors otherwise");
  app.add_option("--dim", g.dim, "Embedding width for hashed vectors");
  app.add_option("--embedding-seed", g.embedding_seed, "Seed of the hashed vectors");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Vagueness report for a text file or stdin");
  std::string analyze_input = "-";
  std::string lang;
  std::string analyze_lexicon;
  vc::ScoringOptions scoring;
  bool once_per_sentence = false;
  analyze->add_option("input", analyze_input, "Text file, - for stdin");
  analyze->add_option("--lang", lang, "EN or FR; detected when absent")
      ->check(CLI::IsMember({"EN", "FR"}));
  analyze->add_option("--lexicon", analyze_lexicon, "Lexicon file");
  analyze->add_flag("--count-punctuation", scoring.count_punctuation,
                    "Count punctuation tokens in the sentence length");
  analyze->add_flag("--once-per-sentence", once_per_sentence,
                    "Count a repeated trigger once per sentence");

  // serve
  auto* serve = app.add_subcommand("serve", "HTTP analysis service");
  int port = -1;
  std::string bind;
  std::string serve_checkpoint;
  std::size_t max_chars = 0;
  serve->add_option("--port", port, "Port, 0 picks a free one");
  serve->add_option("--bind", bind, "Bind address");
  serve->add_option("--checkpoint", serve_checkpoint, "Classifier checkpoint");
  serve->add_option("--max-input-chars", max_chars, "Request size limit in characters");

  // gen-corpus
  auto* gen = app.add_subcommand("gen-corpus", "Synthetic labeled corpus with planted tokens");
  std::size_t n_docs = 2000;
  double bias_fraction = 0.5;
  double lexicon_fraction = 0.5;
  std::string gen_out;
  std::string gen_manifest;
  std::string gen_lexicon;
  gen->add_option("--n-docs", n_docs, "Number of documents");
  gen->add_option("--bias-fraction", bias_fraction, "Fraction of biased documents");
  gen->add_option("--lexicon-fraction", lexicon_fraction,
                  "Fraction of lexicon VC adjectives used as bias tokens");
  gen->add_option("--out", gen_out, "JSONL output, stdout by default");
  gen->add_option("--manifest", gen_manifest, "Ground-truth manifest JSON");
  gen->add_option("--lexicon", gen_lexicon, "English lexicon file");

  // train
  auto* train = app.add_subcommand("train", "Train the convolutional classifier");
  CorpusArgs train_corpus;
  vc::ModelConfig model;
  vc::TrainOptions topts;
  std::string train_out;
  std::string train_log;
  add_corpus_options(train, train_corpus, "test");
  train->add_option("--out", train_out, "Checkpoint path")->required();
  train->add_option("--log", train_log, "Per-epoch log JSON");
  train->add_option("--epochs", topts.epochs);
  train->add_option("--batch-size", topts.batch_size);
  train->add_option("--lr", topts.learning_rate);
  train->add_option("--max-tokens", topts.max_tokens);
  train->add_option("--layers", model.n_layers);
  train->add_option("--kernels", model.kernels);
  train->add_option("--kernel-size", model.kernel_size);
  train->add_option("--classes", model.n_classes);

  // predict
  auto* predict = app.add_subcommand("predict", "Bias score and CAM for one text");
  std::string predict_checkpoint;
  std::string predict_input = "-";
  predict->add_option("--checkpoint", predict_checkpoint, "Classifier checkpoint");
  predict->add_option("input", predict_input, "Text file, - for stdin");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "F1 and per-source score summaries");
  std::string eval_checkpoint;
  CorpusArgs eval_corpus;
  evaluate->add_option("--checkpoint", eval_checkpoint, "Classifier checkpoint");
  add_corpus_options(evaluate, eval_corpus, "test");

  // study
  auto* study = app.add_subcommand("study", "Correlation of predictions with vagueness ratios");
  std::string study_checkpoint;
  std::string study_lexicon;
  CorpusArgs study_corpus;
  study->add_option("--checkpoint", study_checkpoint, "Classifier checkpoint");
  study->add_option("--lexicon", study_lexicon, "English lexicon file");
  add_corpus_options(study, study_corpus, "all");

  // word-table and expand-lexicon
  WordTableArgs wt;
  auto* word_table = app.add_subcommand("word-table", "Average CAM per word");
  auto* expand = app.add_subcommand("expand-lexicon", "Propose non-lexicon words as VC entries");
  for (auto* cmd : {word_table, expand}) {
    cmd->add_option("--checkpoint", wt.checkpoint, "Classifier checkpoint");
    cmd->add_option("--lexicon", wt.lexicon, "English lexicon file");
    cmd->add_option("--min-occurrences", wt.min_occurrences);
    cmd->add_option("--annotations", wt.annotations, "word<TAB>pos overrides");
    cmd->add_option("--top", wt.top, "Number of rows");
    add_corpus_options(cmd, wt.corpus, "all");
  }
  word_table->add_flag("--all-pos", wt.all_pos, "Keep every part of speech");
  expand->add_option("--out", wt.out, "TSV output");
  expand->get_option("--top")->default_val(20);

  // gradcheck
  auto* gradcheck = app.add_subcommand("gradcheck", "Finite-difference check of backpropagation");
  std::size_t gc_models = 20;
  std::size_t gc_tokens = 6;
  double gc_tolerance = 1e-4;
  vc::ModelConfig gc_model;
  gc_model.n_layers = 2;
  gc_model.kernels = 3;
  gc_model.kernel_size = 3;
  gc_model.embed_dim = 4;
  gradcheck->add_option("--models", gc_models);
  gradcheck->add_option("--tokens", gc_tokens)->check(CLI::Range(1, 8));
  gradcheck->add_option("--layers", gc_model.n_layers);
  gradcheck->add_option("--kernels", gc_model.kernels)->check(CLI::Range(1, 4));
  gradcheck->add_option("--kernel-size", gc_model.kernel_size);
  gradcheck->add_option("--input-dim", gc_model.embed_dim);
  gradcheck->add_option("--tolerance", gc_tolerance);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  g.seed_given = seed_opt->count() > 0;
  scoring.per_occurrence = !once_per_sentence;

  try {
    if (*analyze) return run_analyze(g, analyze_input, lang, analyze_lexicon, scoring);
    if (*serve) return run_serve(g, port, bind, serve_checkpoint, max_chars);
    if (*gen) {
      return run_gen_corpus(g, n_docs, bias_fraction, lexicon_fraction, gen_out, gen_manifest,
                            gen_lexicon);
    }
    if (*train) return run_train(g, train_corpus, model, topts, train_out, train_log);
    if (*predict) return run_predict(g, predict_checkpoint, predict_input);
    if (*evaluate) return run_evaluate(g, eval_checkpoint, eval_corpus);
    if (*study) return run_study(g, study_checkpoint, study_corpus, study_lexicon);
    if (*word_table) return run_word_table(g, wt);
    if (*expand) return run_expand(g, wt);
    if (*gradcheck) return run_gradcheck(g, gc_models, gc_tokens, gc_model, gc_tolerance);
  } catch (const vc::Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", vc::to_string(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
