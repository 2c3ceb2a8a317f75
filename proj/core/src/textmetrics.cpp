#include "askew/textmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "askew/csv.hpp"
#include "json.hpp"

namespace askew {

namespace {

bool is_word_byte(char ch) {
  const auto c = static_cast<unsigned char>(ch);
  return c >= 0x80 || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

bool is_handle_byte(char ch) { return is_word_byte(ch) || ch == '_'; }

bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\f' || ch == '\v'; }

bool is_url(std::string_view chunk) {
  return chunk.starts_with("http://") || chunk.starts_with("https://") || chunk.starts_with("www.");
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  const std::string lower = ascii_lower(text);
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };

  std::size_t i = 0;
  while (i < lower.size()) {
    while (i < lower.size() && is_space(lower[i])) ++i;
    std::size_t end = i;
    while (end < lower.size() && !is_space(lower[end])) ++end;
    const std::string_view chunk(lower.data() + i, end - i);
    i = end;
    if (chunk.empty() || is_url(chunk)) continue;

    for (std::size_t j = 0; j < chunk.size(); ++j) {
      const char ch = chunk[j];
      if (ch == '@') {
        flush();
        while (j + 1 < chunk.size() && is_handle_byte(chunk[j + 1])) ++j;
      } else if (is_word_byte(ch)) {
        current.push_back(ch);
      } else {
        flush();
      }
    }
    flush();
  }
  return tokens;
}

SentimentScore::SentimentScore(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) throw std::out_of_range("sentiment score outside [0, 1]");
}

LexiconScorer::LexiconScorer(const Lexicon& lexicon) : lexicon_(lexicon) {
  if (lexicon.kind() != LexiconKind::Sentiment) throw ConfigError("sentiment scorer needs a sentiment lexicon");
}

SentimentScore LexiconScorer::score(std::string_view text) const {
  double sum = 0.0;
  std::size_t matched = 0;
  for (const std::string& token : tokenize(text)) {
    if (auto polarity = lexicon_.value(token)) {
      sum += *polarity;
      ++matched;
    }
  }
  const double mean = matched ? sum / static_cast<double>(matched) : 0.0;
  return SentimentScore(std::clamp((mean + 1.0) / 2.0, 0.0, 1.0));
}

SentimentScore sentiment_score(std::string_view text, const Lexicon& lexicon) {
  return LexiconScorer(lexicon).score(text);
}

Polarity classify_sentiment(SentimentScore s, double threshold) {
  return s.value() >= threshold ? Polarity::Positive : Polarity::Negative;
}

namespace {

void require(const Lexicon* lex, LexiconKind kind) {
  if (lex == nullptr) throw ConfigError("formality report needs a " + std::string(to_string(kind)) + " lexicon");
  if (lex->kind() != kind) {
    throw ConfigError("expected a " + std::string(to_string(kind)) + " lexicon, got " +
                      std::string(to_string(lex->kind())));
  }
}

bool is_content_word(PosTag tag) {
  return tag == PosTag::Noun || tag == PosTag::Verb || tag == PosTag::Adj || tag == PosTag::Adv;
}

}  // namespace

FormalityReport formality_report(std::span<const TweetRecord> tweets, const FormalityLexicons& lex) {
  require(lex.pos_tags, LexiconKind::PosTags);
  require(lex.curse_words, LexiconKind::CurseWords);
  require(lex.word_frequency, LexiconKind::WordFrequency);

  FormalityReport report;
  report.tweet_count = tweets.size();
  std::size_t content = 0;
  std::size_t pronouns = 0;
  std::size_t curses = 0;
  std::size_t frequency_hits = 0;
  double frequency_sum = 0.0;
  for (const TweetRecord& t : tweets) {
    for (const std::string& token : tokenize(t.text)) {
      ++report.token_count;
      const PosTag tag = lex.pos_tags->tag(token);
      if (is_content_word(tag)) ++content;
      if (tag == PosTag::Pronoun3) ++pronouns;
      if (lex.curse_words->contains(token)) ++curses;
      if (auto f = lex.word_frequency->value(token)) {
        frequency_sum += *f;
        ++frequency_hits;
      }
    }
  }
  if (report.token_count == 0) return report;

  const auto tokens = static_cast<double>(report.token_count);
  report.wf = frequency_hits ? frequency_sum / static_cast<double>(frequency_hits) : 0.0;
  report.ld = static_cast<double>(content) / tokens;
  report.pp = static_cast<double>(pronouns) / static_cast<double>(report.tweet_count);
  report.cw = static_cast<double>(curses) / tokens;
  return report;
}

FormalityReport formality_report(const FlowSet& flow, const ConversationGraph& g, const FormalityLexicons& lex) {
  std::vector<TweetRecord> tweets;
  tweets.reserve(flow.tweet_ids.size());
  for (const std::string& id : flow.tweet_ids) {
    const TweetRecord* t = g.find_tweet(id);
    if (t == nullptr) throw ConsistencyError("flow tweet '" + id + "' is not in the graph");
    tweets.push_back(*t);
  }
  return formality_report(tweets, lex);
}

std::string formality_to_json(const std::string& flow, const FormalityReport& report) {
  nlohmann::ordered_json doc;
  doc["flow"] = flow;
  doc["wf"] = report.wf;
  doc["ld"] = report.ld;
  doc["pp"] = report.pp;
  doc["cw"] = report.cw;
  doc["token_count"] = report.token_count;
  doc["tweet_count"] = report.tweet_count;
  return doc.dump(2) + "\n";
}

std::pair<std::string, FormalityReport> formality_from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    FormalityReport r;
    r.wf = doc.at("wf").get<double>();
    r.ld = doc.at("ld").get<double>();
    r.pp = doc.at("pp").get<double>();
    r.cw = doc.at("cw").get<double>();
    r.token_count = doc.at("token_count").get<std::size_t>();
    r.tweet_count = doc.at("tweet_count").get<std::size_t>();
    return {doc.at("flow").get<std::string>(), r};
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(std::string("formality JSON: ") + e.what());
  }
}

CdfSeries empirical_cdf(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  CdfSeries cdf;
  const auto n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    cdf.push_back({values[i], static_cast<double>(i + 1) / n});
  }
  return cdf;
}

CdfSeries sentiment_cdf(const FlowSet& flow, const ConversationGraph& g, const SentimentScorer& scorer) {
  std::vector<double> scores;
  scores.reserve(flow.tweet_ids.size());
  for (const std::string& id : flow.tweet_ids) {
    const TweetRecord* t = g.find_tweet(id);
    if (t == nullptr) throw ConsistencyError("flow tweet '" + id + "' is not in the graph");
    scores.push_back(scorer.score(t->text).value());
  }
  return empirical_cdf(std::move(scores));
}

double cdf_at(const CdfSeries& cdf, double x) {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), x, [](double v, const CdfPoint& p) { return v < p.score; });
  return it == cdf.begin() ? 0.0 : std::prev(it)->cumulative_fraction;
}

bool dominates(const CdfSeries& a, const CdfSeries& b) {
  for (const CdfSeries* s : {&a, &b}) {
    for (const CdfPoint& p : *s) {
      if (cdf_at(a, p.score) < cdf_at(b, p.score)) return false;
    }
  }
  return true;
}

void write_cdf_csv(std::ostream& out, const CdfSeries& cdf) {
  out << "score,cumulative_fraction\n";
  for (const CdfPoint& p : cdf) out << csv::format_real(p.score) << ',' << csv::format_real(p.cumulative_fraction) << '\n';
}

CdfSeries read_cdf_csv(std::istream& in) {
  const auto lines = csv::read_lines(in);
  if (lines.empty() || lines.front() != "score,cumulative_fraction") throw IngestError("CDF CSV: bad header");
  CdfSeries cdf;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = csv::split(lines[i]);
    try {
      if (f.size() != 2) throw std::invalid_argument("field count");
      cdf.push_back({csv::parse_real(f[0]), csv::parse_real(f[1])});
    } catch (const std::invalid_argument&) {
      throw IngestError("CDF CSV: bad row " + std::to_string(i));
    }
  }
  return cdf;
}

}  // namespace askew
