#include "vaguecam/corpus.hpp"

#include <algorithm>

#include "vaguecam/error.hpp"
#include "vaguecam/unicode.hpp"

namespace vaguecam {

std::string_view label_name(Label label) {
  return label == Label::kBiased ? "biased" : "legitimate";
}

std::optional<Label> normalize_label(std::string_view raw) {
  std::string s = unicode::to_lower(raw);
  s.erase(0, s.find_first_not_of(" \t\r\n\""));
  s.erase(s.find_last_not_of(" \t\r\n\"") + 1);
  if (s == "biased" || s == "fake" || s == "bullshit" || s == "bs" || s == "1") {
    return Label::kBiased;
  }
  if (s == "legitimate" || s == "legit" || s == "real" || s == "true" || s == "0") {
    return Label::kLegitimate;
  }
  return std::nullopt;
}

void Corpus::add(Document doc) {
  if (doc.text.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "document '" + doc.id + "' has empty text");
  }
  auto it = std::lower_bound(sorted_ids_.begin(), sorted_ids_.end(), doc.id);
  if (it != sorted_ids_.end() && *it == doc.id) {
    throw Error(ErrorCode::kDuplicateEntry, "duplicate document id '" + doc.id + "'");
  }
  sorted_ids_.insert(it, doc.id);
  docs_.push_back(std::move(doc));
}

nlohmann::json to_json(const Document& doc) {
  nlohmann::json j = {{"id", doc.id}, {"text", doc.text}, {"source", doc.source}};
  if (doc.label) j["label"] = std::string(label_name(*doc.label));
  return j;
}

std::string Corpus::to_jsonl() const {
  std::string out;
  for (const auto& doc : docs_) {
    out += to_json(doc).dump();
    out.push_back('\n');
  }
  return out;
}

}  // namespace vaguecam
