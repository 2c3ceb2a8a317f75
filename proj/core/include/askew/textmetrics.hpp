#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "askew/graph.hpp"
#include "askew/ingest.hpp"

namespace askew {

/// Lowercases, drops URLs and @-handles, keeps hashtag bodies, then splits on
/// anything that is not an ASCII letter/digit. Non-ASCII bytes count as word
/// characters so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text);

/// Sentiment in [0, 1]: 0 extreme negative, 1 extreme positive.
class SentimentScore {
 public:
  /// Throws std::out_of_range outside [0, 1] or for NaN.
  explicit SentimentScore(double value);
  double value() const { return value_; }
  auto operator<=>(const SentimentScore&) const = default;

 private:
  double value_;
};

/// Anything that maps text to a SentimentScore.
class SentimentScorer {
 public:
  virtual ~SentimentScorer() = default;
  virtual SentimentScore score(std::string_view text) const = 0;
};

/// Mean polarity p of matched tokens (0 when nothing matches), mapped to (p + 1) / 2.
class LexiconScorer final : public SentimentScorer {
 public:
  /// Throws ConfigError unless `lexicon` is a sentiment lexicon.
  explicit LexiconScorer(const Lexicon& lexicon);
  SentimentScore score(std::string_view text) const override;

 private:
  const Lexicon& lexicon_;
};

SentimentScore sentiment_score(std::string_view text, const Lexicon& lexicon);

enum class Polarity : std::uint8_t { Positive, Negative };

Polarity classify_sentiment(SentimentScore s, double threshold = 0.5);

struct FormalityLexicons {
  const Lexicon* pos_tags = nullptr;
  const Lexicon* curse_words = nullptr;
  const Lexicon* word_frequency = nullptr;
};

/// WF: mean frequency of tokens found in the frequency table.
/// LD: content-word tokens (noun/verb/adj/adv) per token.
/// PP: third-person pronoun tokens per tweet.
/// CW: curse-word tokens per token.
struct FormalityReport {
  double wf = 0.0;
  double ld = 0.0;
  double pp = 0.0;
  double cw = 0.0;
  std::size_t token_count = 0;
  std::size_t tweet_count = 0;

  bool operator==(const FormalityReport&) const = default;
};

/// Throws ConfigError when a lexicon is missing or of the wrong kind.
FormalityReport formality_report(std::span<const TweetRecord> tweets, const FormalityLexicons& lex);
FormalityReport formality_report(const FlowSet& flow, const ConversationGraph& g,
                                 const FormalityLexicons& lex);

std::string formality_to_json(const std::string& flow, const FormalityReport& report);
/// Returns the flow label alongside the parsed report.
std::pair<std::string, FormalityReport> formality_from_json(std::string_view json);

struct CdfPoint {
  double score = 0.0;
  double cumulative_fraction = 0.0;

  bool operator==(const CdfPoint&) const = default;
};

using CdfSeries = std::vector<CdfPoint>;

/// One point per distinct value, ascending.
CdfSeries empirical_cdf(std::vector<double> values);

/// CDF of per-tweet scores over a flow. Throws ConsistencyError when a flow
/// tweet id is not in `g`.
CdfSeries sentiment_cdf(const FlowSet& flow, const ConversationGraph& g,
                        const SentimentScorer& scorer);

/// Step-function value at x; 0 for an empty series.
double cdf_at(const CdfSeries& cdf, double x);

/// a(x) >= b(x) for every x, i.e. a is stochastically smaller (more negative).
bool dominates(const CdfSeries& a, const CdfSeries& b);

void write_cdf_csv(std::ostream& out, const CdfSeries& cdf);
CdfSeries read_cdf_csv(std::istream& in);

}  // namespace askew
