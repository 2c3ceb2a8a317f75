#include "askew/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "askew/csv.hpp"
#include "json.hpp"

namespace askew {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(TweetKind kind) {
  switch (kind) {
    case TweetKind::Reply: return "reply";
    case TweetKind::Mention: return "mention";
    case TweetKind::Retweet: return "retweet";
  }
  return "?";
}

std::optional<TweetKind> parse_tweet_kind(std::string_view name) {
  if (name == "reply") return TweetKind::Reply;
  if (name == "mention") return TweetKind::Mention;
  if (name == "retweet") return TweetKind::Retweet;
  return std::nullopt;
}

namespace {

enum class LineOutcome { Accepted, Blank, Malformed, MissingField, InvalidField, BadTimestamp, SelfEdgeOnly };

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

LineOutcome parse_line(std::string_view line, TweetRecord& out, std::size_t& self_removed) {
  if (is_blank(line)) return LineOutcome::Blank;
  json doc = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) return LineOutcome::Malformed;

  for (const char* key : {"tweet_id", "author", "recipients", "timestamp", "text", "kind"}) {
    if (!doc.contains(key)) return LineOutcome::MissingField;
  }

  const json& ts = doc["timestamp"];
  if (!ts.is_number_integer()) return LineOutcome::BadTimestamp;
  if (ts.is_number_unsigned()) {
    const auto v = ts.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(INT64_MAX)) return LineOutcome::BadTimestamp;
    out.timestamp = static_cast<std::int64_t>(v);
  } else {
    out.timestamp = ts.get<std::int64_t>();
    if (out.timestamp < 0) return LineOutcome::BadTimestamp;
  }

  const json& id = doc["tweet_id"];
  const json& author = doc["author"];
  const json& text = doc["text"];
  const json& kind = doc["kind"];
  const json& recipients = doc["recipients"];
  if (!id.is_string() || !author.is_string() || !text.is_string() || !kind.is_string() ||
      !recipients.is_array()) {
    return LineOutcome::InvalidField;
  }
  out.tweet_id = id.get<std::string>();
  out.author = author.get<std::string>();
  out.text = text.get<std::string>();
  if (out.tweet_id.empty() || out.author.empty()) return LineOutcome::InvalidField;
  auto parsed_kind = parse_tweet_kind(kind.get<std::string>());
  if (!parsed_kind) return LineOutcome::InvalidField;
  out.kind = *parsed_kind;

  out.recipients.clear();
  bool had_self = false;
  for (const json& r : recipients) {
    if (!r.is_string()) return LineOutcome::InvalidField;
    std::string name = r.get<std::string>();
    if (name.empty()) return LineOutcome::InvalidField;
    if (name == out.author) {
      had_self = true;
      continue;
    }
    out.recipients.push_back(std::move(name));
  }
  std::sort(out.recipients.begin(), out.recipients.end());
  out.recipients.erase(std::unique(out.recipients.begin(), out.recipients.end()), out.recipients.end());

  if (had_self) {
    if (out.recipients.empty()) return LineOutcome::SelfEdgeOnly;
    ++self_removed;
  }
  return LineOutcome::Accepted;
}

template <typename LineSource>
ParsedTweets parse_all(LineSource&& next_line) {
  ParsedTweets result;
  IngestReport& report = result.report;
  std::unordered_set<std::string> seen;
  std::string line;
  while (next_line(line)) {
    ++report.lines;
    TweetRecord record;
    std::size_t removed = 0;
    switch (parse_line(line, record, removed)) {
      case LineOutcome::Blank: ++report.blank; continue;
      case LineOutcome::Malformed: ++report.malformed; continue;
      case LineOutcome::MissingField: ++report.missing_field; continue;
      case LineOutcome::InvalidField: ++report.invalid_field; continue;
      case LineOutcome::BadTimestamp: ++report.bad_timestamp; continue;
      case LineOutcome::SelfEdgeOnly: ++report.self_edge_only; continue;
      case LineOutcome::Accepted: break;
    }
    if (!seen.insert(record.tweet_id).second) {
      ++report.duplicate_id;
      continue;
    }
    report.self_edges_removed += removed;
    ++report.accepted;
    result.records.push_back(std::move(record));
  }
  return result;
}

}  // namespace

ParsedTweets parse_tweets(std::istream& in) {
  return parse_all([&in](std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  });
}

ParsedTweets parse_tweets(std::span<const std::string> lines) {
  std::size_t i = 0;
  return parse_all([&](std::string& line) {
    if (i == lines.size()) return false;
    line = lines[i++];
    return true;
  });
}

ParsedTweets load_tweets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open tweet file: " + path.string());
  ParsedTweets parsed = parse_tweets(in);
  if (in.bad()) throw IngestError("read error in tweet file: " + path.string());
  return parsed;
}

std::string to_jsonl(const TweetRecord& record) {
  ordered_json doc;
  doc["tweet_id"] = record.tweet_id;
  doc["author"] = record.author;
  doc["recipients"] = record.recipients;
  doc["timestamp"] = record.timestamp;
  doc["text"] = record.text;
  doc["kind"] = to_string(record.kind);
  return doc.dump();
}

void write_tweets(std::ostream& out, std::span<const TweetRecord> records) {
  for (const TweetRecord& r : records) out << to_jsonl(r) << '\n';
}

// ---------------------------------------------------------------------------

std::string_view to_string(LexiconKind kind) {
  switch (kind) {
    case LexiconKind::Sentiment: return "sentiment";
    case LexiconKind::PosTags: return "pos_tags";
    case LexiconKind::CurseWords: return "curse_words";
    case LexiconKind::WordFrequency: return "word_frequency";
  }
  return "?";
}

std::optional<PosTag> parse_pos_tag(std::string_view name) {
  const std::string lower = ascii_lower(name);
  if (lower == "noun") return PosTag::Noun;
  if (lower == "verb") return PosTag::Verb;
  if (lower == "adj") return PosTag::Adj;
  if (lower == "adv") return PosTag::Adv;
  if (lower == "pronoun3") return PosTag::Pronoun3;
  if (lower == "other") return PosTag::Other;
  return std::nullopt;
}

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& ch : out) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return out;
}

bool is_valid_token(std::string_view token) {
  if (token.empty()) return false;
  for (char ch : token) {
    if (std::isspace(static_cast<unsigned char>(ch))) return false;
    if (ch >= 'A' && ch <= 'Z') return false;
  }
  return true;
}

bool Lexicon::contains(const std::string& token) const {
  return kind_ == LexiconKind::PosTags ? tags_.contains(token) : values_.contains(token);
}

std::optional<double> Lexicon::value(const std::string& token) const {
  auto it = values_.find(token);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

PosTag Lexicon::tag(const std::string& token) const {
  auto it = tags_.find(token);
  return it == tags_.end() ? PosTag::Other : it->second;
}

bool Lexicon::set(std::string token, double value) {
  if (!is_valid_token(token)) throw std::invalid_argument("invalid lexicon token '" + token + "'");
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite lexicon payload");
  switch (kind_) {
    case LexiconKind::Sentiment:
      if (value < -1.0 || value > 1.0) throw std::invalid_argument("polarity outside [-1, 1]");
      break;
    case LexiconKind::WordFrequency:
      if (value < 0.0) throw std::invalid_argument("negative word frequency");
      break;
    case LexiconKind::CurseWords:
      if (value != 1.0) throw std::invalid_argument("curse flag must be 1");
      break;
    case LexiconKind::PosTags:
      throw std::invalid_argument("POS lexicon takes tags, not numbers");
  }
  return !values_.insert_or_assign(std::move(token), value).second;
}

bool Lexicon::set(std::string token, PosTag tag) {
  if (kind_ != LexiconKind::PosTags) throw std::invalid_argument("not a POS lexicon");
  if (!is_valid_token(token)) throw std::invalid_argument("invalid lexicon token '" + token + "'");
  return !tags_.insert_or_assign(std::move(token), tag).second;
}

std::vector<std::string> Lexicon::tokens() const {
  std::vector<std::string> out;
  if (kind_ == LexiconKind::PosTags) {
    for (const auto& [token, _] : tags_) out.push_back(token);
  } else {
    for (const auto& [token, _] : values_) out.push_back(token);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Lexicon parse_lexicon(std::istream& in, LexiconKind kind) {
  Lexicon lex(kind);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    const auto tab = line.find('\t');
    std::string token = ascii_lower(line.substr(0, tab));
    const std::string payload = tab == std::string::npos ? std::string() : line.substr(tab + 1);
    try {
      bool duplicate = false;
      if (kind == LexiconKind::PosTags) {
        auto tag = parse_pos_tag(payload);
        if (!tag) throw std::invalid_argument("unknown POS tag");
        duplicate = lex.set(std::move(token), *tag);
      } else if (kind == LexiconKind::CurseWords) {
        if (!payload.empty() && payload != "1") throw std::invalid_argument("bad curse flag");
        duplicate = lex.set(std::move(token), 1.0);
      } else {
        duplicate = lex.set(std::move(token), csv::parse_real(payload));
      }
      if (duplicate) ++lex.duplicate_warnings;
    } catch (const std::invalid_argument&) {
      ++lex.skipped_warnings;
    }
  }
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path, LexiconKind kind) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + std::string(to_string(kind)) + " lexicon: " + path.string());
  return parse_lexicon(in, kind);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, '\t')) cells.push_back(cell);
  if (!line.empty() && line.back() == '\t') cells.emplace_back();
  return cells;
}

template <typename T>
std::optional<T> parse_optional_integer(const std::string& cell, long long min, std::size_t& warnings) {
  if (cell.empty()) return std::nullopt;
  try {
    const long long v = csv::parse_integer(cell);
    if (v < min) throw std::invalid_argument("out of range");
    return static_cast<T>(v);
  } catch (const std::invalid_argument&) {
    ++warnings;
    return std::nullopt;
  }
}

}  // namespace

UserMetaTable parse_user_meta(std::istream& in) {
  UserMetaTable table;
  std::string line;
  if (!std::getline(in, line)) return table;
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> header = split_tabs(line);
  auto column = [&header](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return std::nullopt;
  };
  const auto user_col = column("user");
  if (!user_col) throw IngestError("user-meta header has no 'user' column");
  const auto klout_col = column("klout_score");
  const auto created_col = column("account_created");
  const auto total_col = column("total_tweets");
  const auto followers_col = column("followers");

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_tabs(line);
    auto cell = [&cells](std::optional<std::size_t> col) -> std::string {
      return col && *col < cells.size() ? cells[*col] : std::string();
    };

    UserMeta meta;
    meta.user = cell(user_col);
    if (meta.user.empty()) {
      ++table.warnings;
      continue;
    }
    if (const std::string k = cell(klout_col); !k.empty()) {
      try {
        const double v = csv::parse_real(k);
        if (!(v >= 0.0 && v <= 100.0)) throw std::invalid_argument("klout out of range");
        meta.klout_score = v;
      } catch (const std::invalid_argument&) {
        ++table.warnings;
      }
    }
    meta.account_created = parse_optional_integer<std::int64_t>(cell(created_col), 0, table.warnings);
    meta.total_tweets = parse_optional_integer<std::uint64_t>(cell(total_col), 0, table.warnings);
    meta.followers = parse_optional_integer<std::uint64_t>(cell(followers_col), 0, table.warnings);
    UserId key = meta.user;
    table.users.insert_or_assign(std::move(key), std::move(meta));
  }
  return table;
}

UserMetaTable load_user_meta(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open user-meta file: " + path.string());
  return parse_user_meta(in);
}

}  // namespace askew
