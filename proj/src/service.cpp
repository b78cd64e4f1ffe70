#include "vaguecam/service.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <variant>

#include <httplib.h>

#include "vaguecam/error.hpp"
#include "vaguecam/scoring.hpp"
#include "vaguecam/textproc.hpp"
#include "vaguecam/unicode.hpp"

#ifndef VAGUECAM_DATA_DIR
#define VAGUECAM_DATA_DIR "data"
#endif

namespace vaguecam {

void ServiceConfig::validate() const {
  if (max_input_chars == 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_input_chars must be at least 1");
  }
  if (port < 0 || port > 65535) throw Error(ErrorCode::kInvalidArgument, "port out of range");
  if (embed_dim == 0) throw Error(ErrorCode::kInvalidArgument, "embed_dim must be positive");
}

std::string default_lexicon_dir() {
  if (const char* env = std::getenv("VAGO_LEXICON_DIR"); env && *env) return env;
  return std::string(VAGUECAM_DATA_DIR) + "/lexicon";
}

std::string ServiceConfig::resolved_lexicon_dir() const {
  return lexicon_dir.empty() ? default_lexicon_dir() : lexicon_dir;
}

std::string ServiceConfig::resolved_lexicon_path(Language language) const {
  const std::string& explicit_path = language == Language::kEnglish ? lexicon_en : lexicon_fr;
  if (!explicit_path.empty()) return explicit_path;
  return resolved_lexicon_dir() +
         (language == Language::kEnglish ? "/seed.en.tsv" : "/seed.fr.tsv");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename Int>
Int parse_unsigned(std::string_view value, std::size_t line_no, std::string_view key) {
  std::string s(value);
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || s[0] == '-' || *end != '\0' || errno != 0) {
    throw Error(ErrorCode::kParse, "config line " + std::to_string(line_no) + ": '" +
                                       std::string(key) + "' needs a non-negative integer");
  }
  return static_cast<Int>(v);
}

std::string read_file(const std::string& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + std::string(what) + " " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Response error_response(int status, std::string_view code, std::string message) {
  return {status, {{"error", {{"code", code}, {"message", std::move(message)}}}}};
}

nlohmann::json counts_json(const Lexicon& lexicon) {
  const auto counts = lexicon.category_counts();
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t c = 0; c < kNumCategories; ++c) {
    j[std::string(category_tag(static_cast<VaguenessCategory>(c)))] = counts[c];
  }
  j["total"] = lexicon.size();
  return j;
}

struct TextRequest {
  std::string text;
  std::optional<std::string> lang;
};

// Parses {text, lang?}; on failure returns the error response instead.
std::variant<TextRequest, Response> parse_text_request(std::string_view body,
                                                      std::size_t max_chars) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error&) {
    return error_response(400, "bad_request", "request body is not valid JSON");
  }
  if (!j.is_object() || !j.contains("text") || !j["text"].is_string()) {
    return error_response(400, "bad_request", "request needs a string field 'text'");
  }
  TextRequest req;
  req.text = j["text"].get<std::string>();
  if (j.contains("lang") && !j["lang"].is_null()) {
    if (!j["lang"].is_string()) return error_response(400, "bad_request", "'lang' must be a string");
    req.lang = j["lang"].get<std::string>();
  }
  if (req.text.find_first_not_of(" \t\r\n") == std::string::npos) {
    return error_response(400, "empty_text", "text is empty");
  }
  const std::size_t n = unicode::length(req.text);
  if (n > max_chars) {
    return error_response(400, "text_too_long",
                          "text has " + std::to_string(n) + " characters; the limit is " +
                              std::to_string(max_chars));
  }
  return req;
}

}  // namespace

ServiceConfig parse_service_config(std::string_view content, ServiceConfig base) {
  ServiceConfig cfg = std::move(base);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = trim(content.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParse,
                  "config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string value(trim(line.substr(eq + 1)));
    if (key == "bind") {
      cfg.bind = value;
    } else if (key == "port") {
      cfg.port = parse_unsigned<int>(value, line_no, key);
    } else if (key == "max_input_chars") {
      cfg.max_input_chars = parse_unsigned<std::size_t>(value, line_no, key);
    } else if (key == "lexicon_dir") {
      cfg.lexicon_dir = value;
    } else if (key == "lexicon_en") {
      cfg.lexicon_en = value;
    } else if (key == "lexicon_fr") {
      cfg.lexicon_fr = value;
    } else if (key == "checkpoint") {
      cfg.checkpoint = value;
    } else if (key == "embeddings") {
      cfg.embeddings = value;
    } else if (key == "embed_dim") {
      cfg.embed_dim = parse_unsigned<std::size_t>(value, line_no, key);
    } else if (key == "seed") {
      cfg.seed = parse_unsigned<std::uint64_t>(value, line_no, key);
    } else if (key == "embedding_seed") {
      cfg.embedding_seed = parse_unsigned<std::uint64_t>(value, line_no, key);
    } else if (key == "cors_origin") {
      cfg.cors_origin = value;
    } else {
      throw Error(ErrorCode::kParse, "config line " + std::to_string(line_no) +
                                         ": unknown key '" + std::string(key) + "'");
    }
  }
  return cfg;
}

ServiceConfig load_service_config_file(const std::string& path, ServiceConfig base) {
  return parse_service_config(read_file(path, "config"), std::move(base));
}

ServiceResources load_service_resources(const ServiceConfig& config) {
  config.validate();
  ServiceResources res;
  res.english = load_lexicon(read_file(config.resolved_lexicon_path(Language::kEnglish), "lexicon"),
                             Language::kEnglish);
  res.french = load_lexicon(read_file(config.resolved_lexicon_path(Language::kFrench), "lexicon"),
                            Language::kFrench);
  if (!config.checkpoint.empty()) res.model = load_checkpoint_file(config.checkpoint);
  if (!config.embeddings.empty()) {
    res.embeddings = load_vectors_file(config.embeddings);
  } else if (res.model) {
    res.embeddings = EmbeddingTable::hashed(res.model->config.embed_dim, config.embedding_seed);
  }
  if (res.model && res.embeddings && res.embeddings->dimension() != res.model->config.embed_dim) {
    throw Error(ErrorCode::kShapeMismatch,
                "embedding dimension " + std::to_string(res.embeddings->dimension()) +
                    " does not match the model input width " +
                    std::to_string(res.model->config.embed_dim));
  }
  return res;
}

AnalysisService::AnalysisService(ServiceConfig config, ServiceResources resources)
    : config_(std::move(config)), resources_(std::move(resources)) {
  config_.validate();
}

Response AnalysisService::analyze(std::string_view request_body) const {
  auto parsed = parse_text_request(request_body, config_.max_input_chars);
  if (auto* err = std::get_if<Response>(&parsed)) return *err;
  const auto& req = std::get<TextRequest>(parsed);

  Language language = Language::kEnglish;
  std::optional<LanguageGuess> guess;
  if (req.lang) {
    auto tag = parse_language_tag(*req.lang);
    if (!tag) return error_response(400, "bad_request", "unknown lang '" + *req.lang + "'");
    language = *tag;
  } else {
    try {
      guess = detect_language(req.text);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInsufficientText) throw;
      return error_response(422, "language_undetectable",
                            "text is too short to detect its language; pass 'lang'");
    }
    language = guess->language;
  }

  const Lexicon& lexicon = language == Language::kEnglish ? resources_.english : resources_.french;
  TextReport report;
  try {
    report = score_text(req.text, lexicon);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyText) throw;
    return error_response(400, "empty_text", "text contains no words");
  }
  nlohmann::json body = to_json(report, req.text);
  const Barometers b = barometer_summary(report);
  body["barometers"] = {{"vague_pct", b.vague_pct}, {"opinion_pct", b.opinion_pct}};
  body["trigger_count"] = report.trigger_count();
  if (guess) {
    body["language_detection"] = {{"confidence", guess->confidence},
                                  {"distance_en", guess->distance_en},
                                  {"distance_fr", guess->distance_fr}};
  } else {
    body["language_detection"] = nullptr;
  }
  return {200, std::move(body)};
}

Response AnalysisService::classify(std::string_view request_body) const {
  if (!resources_.model || !resources_.embeddings) {
    return error_response(503, "no_model", "no classifier checkpoint is loaded");
  }
  auto parsed = parse_text_request(request_body, config_.max_input_chars);
  if (auto* err = std::get_if<Response>(&parsed)) return *err;
  const auto& req = std::get<TextRequest>(parsed);

  const Prediction p = predict(*resources_.model, req.text, *resources_.embeddings);
  nlohmann::json tokens = nlohmann::json::array();
  nlohmann::json spans = nlohmann::json::array();
  for (const auto& t : p.tokens) {
    tokens.push_back(t.surface);
    spans.push_back({t.span.begin, t.span.end});
  }
  return {200,
          {{"bias_score", p.bias_score},
           {"label", p.bias_score >= 0.5 ? "biased" : "legitimate"},
           {"tokens", tokens},
           {"token_spans", spans},
           {"cam_scores", p.cam.scores}}};
}

Response AnalysisService::health() const {
  return {200,
          {{"status", "ok"},
           {"lexicon_counts",
            {{"EN", counts_json(resources_.english)}, {"FR", counts_json(resources_.french)}}},
           {"model_loaded", resources_.model.has_value()},
           {"max_input_chars", config_.max_input_chars}}};
}

// ---------------------------------------------------------------------------

struct HttpServer::Impl {
  const AnalysisService& service;
  httplib::Server server;
  explicit Impl(const AnalysisService& s) : service(s) {}
};

HttpServer::HttpServer(const AnalysisService& service) : impl_(std::make_unique<Impl>(service)) {
  auto& svr = impl_->server;
  const std::string origin = service.config().cors_origin;
  svr.set_default_headers({{"Access-Control-Allow-Origin", origin},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  auto guarded = [reply](auto&& handler) {
    return [reply, handler](const httplib::Request& req, httplib::Response& res) {
      try {
        reply(res, handler(req));
      } catch (const std::exception& e) {
        reply(res, error_response(500, "internal", e.what()));
      }
    };
  };
  const AnalysisService* s = &service;
  svr.Post("/analyze", guarded([s](const httplib::Request& req) { return s->analyze(req.body); }));
  svr.Post("/classify",
           guarded([s](const httplib::Request& req) { return s->classify(req.body); }));
  svr.Get("/health", guarded([s](const httplib::Request&) { return s->health(); }));
  svr.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& svr = impl_->server;
  if (port == 0) {
    const int bound = svr.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::kIo, "cannot bind " + host);
    return bound;
  }
  if (!svr.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

bool HttpServer::is_running() const { return impl_->server.is_running(); }

}  // namespace vaguecam
