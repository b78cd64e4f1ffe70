#include <fstream>
#include <sstream>

#include "vaguecam/analysis.hpp"
#include "vaguecam/error.hpp"

namespace vaguecam {

std::vector<std::vector<std::string>> parse_csv(std::string_view content) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
    record.clear();
  };
  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_record();
    } else if (c == '\r') {
      // CRLF
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) throw Error(ErrorCode::kParse, "csv: unterminated quoted field");
  if (field_started || !record.empty()) end_record();
  return records;
}

namespace {

struct RawRecord {
  std::optional<std::string> id;
  std::string text;
  std::optional<std::string> label;
  std::optional<std::string> source;
};

void add_record(Corpus& corpus, RawRecord rec, std::size_t row, std::string_view default_source) {
  if (rec.text.find_first_not_of(" \t\r\n") == std::string::npos) {
    ++corpus.dropped_empty;
    return;
  }
  Document doc;
  doc.id = rec.id ? *rec.id : std::to_string(row);
  doc.text = std::move(rec.text);
  doc.source = rec.source ? *rec.source : std::string(default_source);
  if (rec.label && !rec.label->empty()) {
    doc.label = normalize_label(*rec.label);
    if (!doc.label) {
      throw Error(ErrorCode::kParse, "record " + std::to_string(row) + " (id '" + doc.id +
                                         "'): unknown label '" + *rec.label + "'");
    }
  }
  try {
    corpus.add(std::move(doc));
  } catch (const Error& e) {
    throw Error(e.code(), "record " + std::to_string(row) + ": " + e.what());
  }
}

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return {};
  return v.dump();
}

}  // namespace

Corpus ingest_jsonl(std::string_view content, const ColumnMap& columns,
                    std::string_view default_source) {
  Corpus corpus;
  std::size_t row = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    ++row;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kParse, "jsonl record " + std::to_string(row) + ": " + e.what());
    }
    if (!obj.is_object()) {
      throw Error(ErrorCode::kParse, "jsonl record " + std::to_string(row) + ": not an object");
    }
    if (!obj.contains(columns.text)) {
      throw Error(ErrorCode::kParse, "jsonl record " + std::to_string(row) + ": missing '" +
                                         columns.text + "'");
    }
    RawRecord rec;
    rec.text = json_scalar(obj[columns.text]);
    if (obj.contains(columns.id)) rec.id = json_scalar(obj[columns.id]);
    if (obj.contains(columns.label)) rec.label = json_scalar(obj[columns.label]);
    if (obj.contains(columns.source)) rec.source = json_scalar(obj[columns.source]);
    add_record(corpus, std::move(rec), row, default_source);
  }
  return corpus;
}

Corpus ingest_csv(std::string_view content, const ColumnMap& columns,
                  std::string_view default_source) {
  const auto records = parse_csv(content);
  if (records.empty()) throw Error(ErrorCode::kParse, "csv: missing header row");
  const auto& header = records.front();
  auto find_col = [&header](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return std::nullopt;
  };
  const auto text_col = find_col(columns.text);
  if (!text_col) throw Error(ErrorCode::kParse, "csv: no column named '" + columns.text + "'");
  const auto id_col = find_col(columns.id);
  const auto label_col = find_col(columns.label);
  const auto source_col = find_col(columns.source);

  Corpus corpus;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    auto cell = [&rec](std::optional<std::size_t> col) -> std::optional<std::string> {
      if (!col || *col >= rec.size()) return std::nullopt;
      return rec[*col];
    };
    RawRecord raw;
    raw.text = cell(text_col).value_or("");
    raw.id = cell(id_col);
    raw.label = cell(label_col);
    raw.source = cell(source_col);
    add_record(corpus, std::move(raw), r, default_source);
  }
  return corpus;
}

Corpus ingest_corpus(const std::string& path, CorpusFormat format, const ColumnMap& columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  // Source defaults to the file stem.
  std::string stem = path.substr(path.find_last_of('/') + 1);
  stem = stem.substr(0, stem.find('.'));
  return format == CorpusFormat::kJsonl ? ingest_jsonl(buf.str(), columns, stem)
                                        : ingest_csv(buf.str(), columns, stem);
}

}  // namespace vaguecam
