#include "vaguecam/embeddings.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vaguecam/error.hpp"
#include "vaguecam/unicode.hpp"

namespace vaguecam {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

std::vector<float> hashed_vector(std::string_view token, std::size_t dimension,
                                 std::uint64_t seed) {
  std::vector<float> v(dimension);
  const std::uint64_t base = splitmix64(fnv1a(token) ^ splitmix64(seed));
  for (std::size_t i = 0; i < dimension; ++i) {
    const std::uint64_t h = splitmix64(base + i);
    // top 53 bits -> [0, 1]
    const double unit = static_cast<double>(h >> 11) / static_cast<double>((1ULL << 53) - 1);
    v[i] = static_cast<float>(-0.1 + 0.2 * unit);
  }
  return v;
}

EmbeddingTable::EmbeddingTable(std::size_t dimension, OovPolicy policy, std::uint64_t seed)
    : dimension_(dimension), policy_(policy), seed_(seed) {
  if (dimension == 0) throw Error(ErrorCode::kInvalidArgument, "embedding dimension must be >= 1");
}

EmbeddingTable EmbeddingTable::hashed(std::size_t dimension, std::uint64_t seed) {
  return EmbeddingTable(dimension, OovPolicy::kHashed, seed);
}

void EmbeddingTable::insert(std::string token, std::vector<float> vector) {
  if (vector.size() != dimension_) {
    throw Error(ErrorCode::kShapeMismatch, "vector for '" + token + "' has " +
                                               std::to_string(vector.size()) +
                                               " components, expected " +
                                               std::to_string(dimension_));
  }
  auto [it, inserted] = vocab_.insert_or_assign(token, std::move(vector));
  if (inserted) order_.push_back(std::move(token));
}

bool EmbeddingTable::contains(std::string_view token) const {
  return vocab_.count(std::string(token)) > 0;
}

const std::vector<float>* EmbeddingTable::find(std::string_view token) const {
  auto it = vocab_.find(std::string(token));
  return it == vocab_.end() ? nullptr : &it->second;
}

std::vector<float> EmbeddingTable::lookup(std::string_view token) const {
  const std::string lowered = unicode::to_lower(token);
  if (auto it = vocab_.find(lowered); it != vocab_.end()) return it->second;
  if (policy_ == OovPolicy::kHashed) return hashed_vector(lowered, dimension_, seed_);
  return std::vector<float>(dimension_, 0.0f);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    out.push_back(line.substr(start, pos - start));
  }
  return out;
}

float parse_float(std::string_view s, std::size_t line_no) {
  float value = 0.0f;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, "vectors line " + std::to_string(line_no) +
                                       ": bad number '" + std::string(s) + "'");
  }
  return value;
}

std::size_t parse_size(std::string_view s, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, std::string("vectors header: bad ") + what);
  }
  return value;
}

}  // namespace

EmbeddingTable load_vectors(std::string_view content, OovPolicy policy) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= content.size()) return false;
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    line = content.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;
    return true;
  };

  std::string_view line;
  if (!next_line(line)) throw Error(ErrorCode::kParse, "vectors: missing header");
  auto header = split_fields(line);
  if (header.size() != 2) throw Error(ErrorCode::kParse, "vectors header: expected '<count> <dim>'");
  const std::size_t count = parse_size(header[0], "count");
  const std::size_t dim = parse_size(header[1], "dimension");

  EmbeddingTable table(dim, policy);
  std::size_t rows = 0;
  while (next_line(line)) {
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != dim + 1) {
      throw Error(ErrorCode::kShapeMismatch,
                  "vectors line " + std::to_string(line_no) + ": expected " +
                      std::to_string(dim) + " components, got " +
                      std::to_string(fields.size() - 1));
    }
    std::vector<float> v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = parse_float(fields[i + 1], line_no);
    table.insert(std::string(fields[0]), std::move(v));
    ++rows;
  }
  if (rows != count) {
    throw Error(ErrorCode::kParse, "vectors: header declares " + std::to_string(count) +
                                       " entries, found " + std::to_string(rows));
  }
  return table;
}

EmbeddingTable load_vectors_file(const std::string& path, OovPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open vectors file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_vectors(buf.str(), policy);
}

std::string save_vectors(const EmbeddingTable& table) {
  std::string out = std::to_string(table.size()) + " " + std::to_string(table.dimension()) + "\n";
  char buf[32];
  for (const auto& token : table.tokens()) {
    out += token;
    for (float x : *table.find(token)) {
      std::snprintf(buf, sizeof buf, " %.9g", static_cast<double>(x));
      out += buf;
    }
    out.push_back('\n');
  }
  return out;
}

EmbeddingMatrix embed_tokens(const EmbeddingTable& table, std::span<const std::string> tokens) {
  if (tokens.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot embed an empty token list");
  EmbeddingMatrix m(static_cast<Eigen::Index>(tokens.size()),
                    static_cast<Eigen::Index>(table.dimension()));
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const auto v = table.lookup(tokens[t]);
    for (std::size_t j = 0; j < v.size(); ++j) {
      m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = v[j];
    }
  }
  return m;
}

EmbeddingMatrix embed_tokens(const EmbeddingTable& table, std::span<const Token> tokens) {
  std::vector<std::string> surfaces;
  surfaces.reserve(tokens.size());
  for (const auto& t : tokens) surfaces.push_back(t.surface);
  return embed_tokens(table, std::span<const std::string>(surfaces));
}

}  // namespace vaguecam
