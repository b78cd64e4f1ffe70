#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "vaguecam/classifier.hpp"
#include "vaguecam/embeddings.hpp"
#include "vaguecam/lexicon.hpp"

namespace vaguecam {

struct ServiceConfig {
  std::string bind = "127.0.0.1";
  int port = 8080;
  std::size_t max_input_chars = 1200;  // code points
  std::string lexicon_dir;             // empty: default_lexicon_dir()
  std::string lexicon_en;              // empty: <lexicon_dir>/seed.en.tsv
  std::string lexicon_fr;              // empty: <lexicon_dir>/seed.fr.tsv
  std::string checkpoint;              // optional
  std::string embeddings;              // optional; hashed vectors otherwise
  std::size_t embed_dim = kDefaultEmbeddingDim;
  std::uint64_t seed = 42;            // split, initialization and generation
  std::uint64_t embedding_seed = 0;   // hashed vectors
  std::string cors_origin = "*";

  // Throws Error(kInvalidArgument) when max_input_chars is 0 or the port is
  // outside [0, 65535].
  void validate() const;

  std::string resolved_lexicon_dir() const;
  std::string resolved_lexicon_path(Language language) const;
};

// $VAGO_LEXICON_DIR if set, else the data directory of the source tree.
std::string default_lexicon_dir();

// `key = value` lines, `#` comments. Unknown keys and bad values are
// Error(kParse) with the line number. Keys absent from the file keep the
// values of `base`.
ServiceConfig parse_service_config(std::string_view content, ServiceConfig base = {});
ServiceConfig load_service_config_file(const std::string& path, ServiceConfig base = {});

struct ServiceResources {
  Lexicon english{Language::kEnglish};
  Lexicon french{Language::kFrench};
  std::optional<ModelParams> model;
  std::optional<EmbeddingTable> embeddings;
};

// Loads both lexicons, the checkpoint and the embedding table named by the
// config. Without an embeddings file a loaded model gets hashed vectors of
// its own input width.
ServiceResources load_service_resources(const ServiceConfig& config);

struct Response {
  int status = 200;
  nlohmann::json body;
};

// Request handlers independent of the transport. Bodies carry no clock or
// host dependent values, so identical requests give identical responses.
class AnalysisService {
 public:
  AnalysisService(ServiceConfig config, ServiceResources resources);

  // {text, lang?} -> text report plus barometers.
  // 400: bad JSON, empty or over-limit text, unknown lang.
  // 422: no lang given and the language cannot be detected.
  Response analyze(std::string_view request_body) const;

  // {text} -> {bias_score, tokens, cam_scores}. 503 without a model.
  Response classify(std::string_view request_body) const;

  // {status, lexicon_counts, model_loaded, max_input_chars}
  Response health() const;

  const ServiceConfig& config() const { return config_; }
  const ServiceResources& resources() const { return resources_; }

 private:
  ServiceConfig config_;
  ServiceResources resources_;
};

// POST /analyze, POST /classify, GET /health with CORS headers.
class HttpServer {
 public:
  explicit HttpServer(const AnalysisService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds the socket; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  // Serves until stop() is called. Requires bind().
  void listen();
  void stop();
  bool is_running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vaguecam
