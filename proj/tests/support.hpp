#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "vaguecam/lexicon.hpp"

namespace vctest {

inline constexpr const char* kToyText =
    "Most sensational news articles are sometimes hard to believe. Two plus two equals four. "
    "Mary left Paris around 2pm.";

inline std::string data_path(const std::string& rel) {
  return std::string(VAGUECAM_TEST_DATA_DIR) + "/" + rel;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline const vaguecam::Lexicon& seed_en() {
  static const vaguecam::Lexicon lex = vaguecam::load_lexicon_file(data_path("lexicon/seed.en.tsv"));
  return lex;
}

}  // namespace vctest
