#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace vaguecam {

enum class Label : int { kLegitimate = 0, kBiased = 1 };

std::string_view label_name(Label label);

// Maps source-corpus label strings onto the two classes. "fake", "bullshit",
// "bs", "biased" (and "1") are biased; "legitimate", "real", "true" (and "0")
// are legitimate. Case-insensitive.
std::optional<Label> normalize_label(std::string_view raw);

struct Document {
  std::string id;
  std::string text;
  std::optional<Label> label;
  std::string source;

  bool operator==(const Document&) const = default;
};

class Corpus {
 public:
  Corpus() = default;

  // Throws Error(kDuplicateEntry) for a repeated id and kInvalidArgument for
  // empty text.
  void add(Document doc);

  const std::vector<Document>& documents() const { return docs_; }
  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }
  const Document& operator[](std::size_t i) const { return docs_[i]; }

  // Number of records dropped at ingestion for having empty text.
  std::size_t dropped_empty = 0;

  // One JSON object per line, ids in corpus order.
  std::string to_jsonl() const;

 private:
  std::vector<Document> docs_;
  std::vector<std::string> sorted_ids_;
};

nlohmann::json to_json(const Document& doc);

}  // namespace vaguecam
