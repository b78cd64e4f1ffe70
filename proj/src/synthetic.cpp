#include <algorithm>
#include <cmath>
#include <set>

#include "vaguecam/analysis.hpp"
#include "vaguecam/error.hpp"
#include "vaguecam/random.hpp"

namespace vaguecam {

namespace {

const std::vector<std::string>& default_neutral() {
  static const std::vector<std::string> kWords = {
      "the", "a", "of", "in", "on", "to", "and", "with", "for", "by", "from", "after",
      "before", "during", "minister", "council", "city", "report", "budget", "school",
      "road", "bridge", "river", "market", "company", "factory", "worker", "teacher",
      "student", "doctor", "nurse", "police", "court", "judge", "law", "bill", "vote",
      "election", "party", "leader", "member", "meeting", "week", "month", "year", "day",
      "morning", "evening", "station", "train", "bus", "airport", "harbor", "ship", "farmer",
      "harvest", "price", "tax", "bank", "loan", "office", "building", "museum", "library",
      "team", "match", "game", "player", "coach", "season", "film", "book", "author",
      "study", "research", "data", "figure", "plan", "project", "contract", "agreement",
      "statement", "interview", "press", "camera", "phone", "computer", "network",
      "water", "energy", "power", "oil", "gas", "steel", "wind", "rain", "snow", "weather",
      "said", "told", "met", "visited", "opened", "closed", "signed", "announced",
      "reported", "confirmed", "published", "released", "received", "sent", "built",
      "moved", "started", "finished", "planned", "discussed", "reviewed", "approved",
      "Tuesday", "Friday", "March", "April", "north", "south", "east", "west", "center"};
  return kWords;
}

const std::vector<std::string>& default_novel_bias() {
  static const std::vector<std::string> kWords = {
      "sociopathic", "arrogantly", "shamelessly", "blatantly", "misogynistic", "outrageously",
      "devious", "laughably"};
  return kWords;
}

const std::vector<std::string>& default_legit() {
  static const std::vector<std::string> kWords = {
      "provisionally", "fortnightly", "procedural", "sectoral", "topographic", "directorial"};
  return kWords;
}

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

}  // namespace

void SyntheticSpec::fill_defaults(const Lexicon& lexicon, double lexicon_fraction) {
  if (bias_lexicon_tokens.empty()) {
    std::vector<std::string> candidates;
    for (const auto& e : lexicon.entries()) {
      const bool modifier =
          !e.part_of_speech || parse_pos(*e.part_of_speech).value_or(PartOfSpeech::kOther) !=
                                   PartOfSpeech::kOther;
      if (e.category == VaguenessCategory::kCombinatorial && e.tokens.size() == 1 && modifier) {
        candidates.push_back(e.tokens.front());
      }
    }
    std::sort(candidates.begin(), candidates.end());
    Rng rng(seed ^ 0x1E71C0ULL);
    rng.shuffle(candidates);
    const auto keep = static_cast<std::size_t>(
        std::ceil(static_cast<double>(candidates.size()) * std::clamp(lexicon_fraction, 0.0, 1.0)));
    candidates.resize(std::min(keep, candidates.size()));
    std::sort(candidates.begin(), candidates.end());
    bias_lexicon_tokens = std::move(candidates);
  }
  if (factual_tokens.empty()) {
    for (const auto& e : lexicon.entries()) {
      if (is_factual(e.category)) factual_tokens.push_back(e.surface());
    }
    std::sort(factual_tokens.begin(), factual_tokens.end());
  }
  if (bias_novel_tokens.empty()) {
    for (const auto& w : default_novel_bias()) {
      if (!lexicon.find_word(w)) bias_novel_tokens.push_back(w);
    }
  }
  if (legit_tokens.empty()) {
    for (const auto& w : default_legit()) {
      if (!lexicon.find_word(w)) legit_tokens.push_back(w);
    }
  }
  if (neutral_tokens.empty()) {
    for (const auto& w : default_neutral()) {
      std::vector<std::string> probe{w};
      if (!lexicon.lookup_longest(probe, 0)) neutral_tokens.push_back(w);
    }
  }
}

void SyntheticSpec::validate() const {
  if (n_docs == 0) throw Error(ErrorCode::kInvalidArgument, "synthetic corpus needs n_docs >= 1");
  if (!(bias_fraction >= 0.0 && bias_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bias_fraction must lie in [0, 1]");
  }
  for (double rate : {bias_rate_biased, bias_rate_legit, legit_rate_legit, legit_rate_biased,
                      factual_rate}) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "planting rates must lie in [0, 1]");
    }
  }
  if (neutral_tokens.empty()) throw Error(ErrorCode::kInvalidArgument, "no neutral tokens");
  if (bias_lexicon_tokens.empty() && bias_novel_tokens.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no bias tokens to plant");
  }
  if (min_sentences == 0 || min_sentences > max_sentences || min_words == 0 ||
      min_words > max_words) {
    throw Error(ErrorCode::kInvalidArgument, "bad sentence or word count range");
  }
  std::set<std::string> seen;
  for (const auto* set : {&neutral_tokens, &bias_lexicon_tokens, &bias_novel_tokens,
                          &legit_tokens, &factual_tokens}) {
    for (const auto& tok : *set) {
      if (!seen.insert(tok).second) {
        throw Error(ErrorCode::kInvalidArgument, "token '" + tok + "' appears in two token sets");
      }
    }
  }
}

SyntheticCorpus generate_synthetic_corpus(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  const auto n_biased = static_cast<std::size_t>(
      std::llround(static_cast<double>(spec.n_docs) * spec.bias_fraction));
  std::vector<bool> biased(spec.n_docs, false);
  for (std::size_t i = 0; i < n_biased; ++i) biased[i] = true;
  rng.shuffle(biased);

  std::vector<std::string> bias_pool = spec.bias_lexicon_tokens;
  bias_pool.insert(bias_pool.end(), spec.bias_novel_tokens.begin(), spec.bias_novel_tokens.end());

  auto pick = [&rng](const std::vector<std::string>& pool) -> const std::string& {
    return pool[static_cast<std::size_t>(rng.uniform_index(pool.size()))];
  };
  auto range = [&rng](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng.uniform_index(hi - lo + 1));
  };

  SyntheticCorpus out;
  nlohmann::json docs_manifest = nlohmann::json::array();
  const std::size_t id_width = std::to_string(spec.n_docs).size();
  for (std::size_t d = 0; d < spec.n_docs; ++d) {
    const bool is_biased = biased[d];
    const double bias_rate = is_biased ? spec.bias_rate_biased : spec.bias_rate_legit;
    const double legit_rate = is_biased ? spec.legit_rate_biased : spec.legit_rate_legit;
    std::string text;
    std::vector<std::string> planted;
    const std::size_t n_sentences = range(spec.min_sentences, spec.max_sentences);
    for (std::size_t s = 0; s < n_sentences; ++s) {
      std::vector<std::string> words;
      const std::size_t n_words = range(spec.min_words, spec.max_words);
      for (std::size_t w = 0; w < n_words; ++w) words.push_back(pick(spec.neutral_tokens));
      auto plant = [&](const std::vector<std::string>& pool, double rate) {
        if (pool.empty() || !rng.bernoulli(rate)) return;
        const std::string& tok = pick(pool);
        const auto at = static_cast<std::size_t>(rng.uniform_index(words.size() + 1));
        words.insert(words.begin() + static_cast<std::ptrdiff_t>(at), tok);
        planted.push_back(tok);
      };
      plant(bias_pool, bias_rate);
      plant(spec.legit_tokens, legit_rate);
      plant(spec.factual_tokens, spec.factual_rate);
      if (!text.empty()) text.push_back(' ');
      for (std::size_t w = 0; w < words.size(); ++w) {
        if (w) text.push_back(' ');
        text += w == 0 ? capitalize(words[w]) : words[w];
      }
      text.push_back('.');
    }
    std::string id = std::to_string(d);
    id = "syn-" + std::string(id_width - id.size(), '0') + id;
    Document doc;
    doc.id = id;
    doc.text = std::move(text);
    doc.label = is_biased ? Label::kBiased : Label::kLegitimate;
    doc.source = is_biased ? "synthetic-biased" : "synthetic-legitimate";
    docs_manifest.push_back({{"id", id},
                             {"label", std::string(label_name(*doc.label))},
                             {"planted", planted}});
    out.corpus.add(std::move(doc));
  }

  out.manifest = {{"seed", spec.seed},
                  {"n_docs", spec.n_docs},
                  {"n_biased", n_biased},
                  {"bias_fraction", spec.bias_fraction},
                  {"rates",
                   {{"bias_biased", spec.bias_rate_biased},
                    {"bias_legit", spec.bias_rate_legit},
                    {"legit_legit", spec.legit_rate_legit},
                    {"legit_biased", spec.legit_rate_biased},
                    {"factual", spec.factual_rate}}},
                  {"token_sets",
                   {{"neutral", spec.neutral_tokens},
                    {"bias_lexicon", spec.bias_lexicon_tokens},
                    {"bias_novel", spec.bias_novel_tokens},
                    {"legit", spec.legit_tokens},
                    {"factual", spec.factual_tokens}}},
                  {"documents", docs_manifest}};
  return out;
}

}  // namespace vaguecam
