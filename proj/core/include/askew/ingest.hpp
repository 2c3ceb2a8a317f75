#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "askew/types.hpp"

namespace askew {

enum class TweetKind : std::uint8_t { Reply, Mention, Retweet };

std::string_view to_string(TweetKind kind);
std::optional<TweetKind> parse_tweet_kind(std::string_view name);

/// One message event. A retweet is stored as kind=Retweet with the original
/// author as its single recipient.
struct TweetRecord {
  std::string tweet_id;
  UserId author;
  std::vector<UserId> recipients;  // sorted, unique, never contains author
  std::int64_t timestamp = 0;      // UTC epoch seconds
  std::string text;
  TweetKind kind = TweetKind::Reply;

  bool operator==(const TweetRecord&) const = default;
};

/// Per-reason tallies for one parse. Every input line lands in exactly one of
/// `accepted` or a drop counter, so lines == accepted + dropped().
struct IngestReport {
  std::size_t lines = 0;
  std::size_t accepted = 0;

  std::size_t blank = 0;
  std::size_t malformed = 0;       // not a JSON object
  std::size_t missing_field = 0;
  std::size_t invalid_field = 0;   // present but wrong type or unknown kind
  std::size_t bad_timestamp = 0;   // negative or non-integral
  std::size_t self_edge_only = 0;  // the author was the only recipient
  std::size_t duplicate_id = 0;

  /// Author entries removed from otherwise valid recipient lists. Not a drop.
  std::size_t self_edges_removed = 0;

  std::size_t dropped() const {
    return blank + malformed + missing_field + invalid_field + bad_timestamp +
           self_edge_only + duplicate_id;
  }
};

struct ParsedTweets {
  std::vector<TweetRecord> records;
  IngestReport report;
};

/// Parses JSONL tweet records. Invalid lines are tallied, never thrown.
ParsedTweets parse_tweets(std::istream& in);
ParsedTweets parse_tweets(std::span<const std::string> lines);

/// Throws IngestError when the file cannot be opened.
ParsedTweets load_tweets(const std::filesystem::path& path);

/// Serializes one record in the same schema parse_tweets accepts.
std::string to_jsonl(const TweetRecord& record);
void write_tweets(std::ostream& out, std::span<const TweetRecord> records);

// ---------------------------------------------------------------------------
// Lexicons

enum class LexiconKind : std::uint8_t { Sentiment, PosTags, CurseWords, WordFrequency };

enum class PosTag : std::uint8_t { Noun, Verb, Adj, Adv, Pronoun3, Other };

std::string_view to_string(LexiconKind kind);
std::optional<PosTag> parse_pos_tag(std::string_view name);

/// Token-keyed resource. Numeric kinds (sentiment polarity, word frequency,
/// curse flag = 1) share one table; POS tags live in their own.
class Lexicon {
 public:
  explicit Lexicon(LexiconKind kind) : kind_(kind) {}

  LexiconKind kind() const { return kind_; }
  std::size_t size() const { return kind_ == LexiconKind::PosTags ? tags_.size() : values_.size(); }
  bool contains(const std::string& token) const;

  /// Polarity, frequency, or 1.0 for curse words. Empty for POS lexicons.
  std::optional<double> value(const std::string& token) const;

  /// Tag for a POS lexicon; tokens missing from the table are Other.
  PosTag tag(const std::string& token) const;

  /// Inserts or overwrites. Returns true when the token was already present.
  /// Throws std::invalid_argument for an invalid token or out-of-range payload.
  bool set(std::string token, double value);
  bool set(std::string token, PosTag tag);

  std::vector<std::string> tokens() const;

  std::size_t duplicate_warnings = 0;
  std::size_t skipped_warnings = 0;

 private:
  LexiconKind kind_;
  std::unordered_map<std::string, double> values_;
  std::unordered_map<std::string, PosTag> tags_;
};

/// Lowercase, non-empty, no whitespace.
bool is_valid_token(std::string_view token);

/// ASCII lowercase; bytes >= 0x80 pass through untouched.
std::string ascii_lower(std::string_view text);

/// `token<TAB>payload` lines; `#` comments and blank lines skipped. Tokens are
/// lowercased, duplicates resolve last-wins, bad lines are skipped and tallied.
Lexicon parse_lexicon(std::istream& in, LexiconKind kind);
Lexicon load_lexicon(const std::filesystem::path& path, LexiconKind kind);

// ---------------------------------------------------------------------------
// User metadata

struct UserMeta {
  UserId user;
  std::optional<double> klout_score;  // [0, 100]
  std::optional<std::int64_t> account_created;
  std::optional<std::uint64_t> total_tweets;
  std::optional<std::uint64_t> followers;

  bool operator==(const UserMeta&) const = default;
};

struct UserMetaTable {
  std::map<UserId, UserMeta> users;
  std::size_t warnings = 0;
};

/// TSV with a header row naming the columns; `user` is required, unknown
/// columns are ignored, later duplicate rows overwrite earlier ones.
UserMetaTable parse_user_meta(std::istream& in);
UserMetaTable load_user_meta(const std::filesystem::path& path);

}  // namespace askew
