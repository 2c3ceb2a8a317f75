#include "askew/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "askew/bowtie.hpp"
#include "askew/csv.hpp"
#include "askew/temporal.hpp"
#include "json.hpp"

namespace askew {

namespace fs = std::filesystem;

std::optional<std::vector<std::int64_t>> parse_days(const std::string& text) {
  if (ascii_lower(text) == "auto") return std::nullopt;
  std::vector<std::int64_t> days;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      days.push_back(csv::parse_integer(item));
    } catch (const std::invalid_argument&) {
      throw ConfigError("--days: '" + item + "' is not an epoch-seconds integer");
    }
  }
  if (days.size() < 2) throw ConfigError("--days needs AUTO or at least 2 boundaries");
  if (std::adjacent_find(days.begin(), days.end(), std::greater_equal<>()) != days.end()) {
    throw ConfigError("--days boundaries must be strictly ascending");
  }
  return days;
}

namespace {

struct Needs {
  bool sentiment = false;
  bool formality = false;
  bool meta = false;
};

fs::path lexicon_path(const RunConfig& config, const char* name) { return *config.lexicon_dir / name; }

/// Resolves every input before any analysis runs, so a bad flag never leaves
/// a half-written output tree behind.
void preflight(const RunConfig& config, Needs needs) {
  if (config.tweets.empty()) throw ConfigError("--tweets is required");
  if (!fs::is_regular_file(config.tweets)) throw ConfigError("--tweets: no such file: " + config.tweets.string());
  if (config.out.empty()) throw ConfigError("--out is required");
  if (needs.meta && config.meta && !fs::is_regular_file(*config.meta)) {
    throw ConfigError("--meta: no such file: " + config.meta->string());
  }
  if (needs.sentiment || needs.formality) {
    if (!config.lexicon_dir) throw ConfigError("--lexicon-dir is required for sentiment and formality analyses");
    std::vector<const char*> required;
    if (needs.sentiment) required.push_back(lexicon_files::kSentiment);
    if (needs.formality) {
      required.insert(required.end(), {lexicon_files::kPosTags, lexicon_files::kCurseWords, lexicon_files::kWordFrequency});
    }
    for (const char* name : required) {
      const fs::path p = lexicon_path(config, name);
      if (!fs::is_regular_file(p)) throw ConfigError("--lexicon-dir: missing lexicon " + p.string());
    }
  }
  config.rules.validate();
  fs::create_directories(config.out);
}

void write_file(const RunConfig& config, const char* name, const std::string& content) {
  const fs::path p = config.out / name;
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IngestError("cannot write " + p.string());
  out << content;
  if (!out) throw IngestError("write failed: " + p.string());
}

template <typename Writer>
void write_with(const RunConfig& config, const char* name, Writer&& writer) {
  std::ostringstream buffer;
  writer(buffer);
  write_file(config, name, buffer.str());
}

/// Everything derived from the tweet file alone.
struct Analysis {
  IngestReport report;
  ConversationGraph graph;
  SccDecomposition scc;
  BowTieDecomposition bowtie;
};

Analysis analyze_graph(const RunConfig& config) {
  ParsedTweets parsed = load_tweets(config.tweets);
  Analysis a;
  a.report = parsed.report;
  a.graph = build_graph(std::move(parsed.records));
  a.scc = scc_decompose(a.graph);
  a.bowtie = bowtie_decompose(a.graph, a.scc);
  return a;
}

std::string ingest_report_json(const IngestReport& r) {
  nlohmann::ordered_json doc;
  doc["lines"] = r.lines;
  doc["accepted"] = r.accepted;
  doc["dropped"] = {{"blank", r.blank},
                    {"malformed", r.malformed},
                    {"missing_field", r.missing_field},
                    {"invalid_field", r.invalid_field},
                    {"bad_timestamp", r.bad_timestamp},
                    {"self_edge_only", r.self_edge_only},
                    {"duplicate_id", r.duplicate_id}};
  doc["self_edges_removed"] = r.self_edges_removed;
  return doc.dump(2) + "\n";
}

void emit_decompose(const RunConfig& config, const Analysis& a) {
  write_file(config, outputs::kIngestReport, ingest_report_json(a.report));
  write_with(config, outputs::kEdges, [&](std::ostream& o) { write_edge_csv(o, a.graph); });
  write_with(config, outputs::kVertices, [&](std::ostream& o) { write_vertex_csv(o, a.graph); });
  write_with(config, outputs::kComponents, [&](std::ostream& o) { write_assignment_csv(o, a.bowtie); });
  write_file(config, outputs::kStats, stats_to_json(component_stats(a.graph, a.scc, a.bowtie)));
}

void emit_migrate(const RunConfig& config, const Analysis& a) {
  const std::vector<std::int64_t> days = config.days ? *config.days : auto_day_boundaries(a.graph);
  std::vector<AlluvialRow> rows;
  if (days.size() >= 2) rows = alluvial_rows(cumulative_slices(a.graph, days));
  write_with(config, outputs::kAlluvial, [&](std::ostream& o) { write_alluvial_csv(o, rows); });
}

void emit_flows(const RunConfig& config, const Analysis& a) {
  const Lexicon sentiment = load_lexicon(lexicon_path(config, lexicon_files::kSentiment), LexiconKind::Sentiment);
  const Lexicon pos = load_lexicon(lexicon_path(config, lexicon_files::kPosTags), LexiconKind::PosTags);
  const Lexicon curse = load_lexicon(lexicon_path(config, lexicon_files::kCurseWords), LexiconKind::CurseWords);
  const Lexicon freq = load_lexicon(lexicon_path(config, lexicon_files::kWordFrequency), LexiconKind::WordFrequency);
  const LexiconScorer scorer(sentiment);
  const FormalityLexicons lex{&pos, &curse, &freq};

  const FlowSet in_lscc = component_flow(a.graph, a.bowtie, Component::In, Component::Lscc);
  const FlowSet lscc_out = component_flow(a.graph, a.bowtie, Component::Lscc, Component::Out);
  write_file(config, outputs::kFormalityInLscc, formality_to_json("IN->LSCC", formality_report(in_lscc, a.graph, lex)));
  write_file(config, outputs::kFormalityLsccOut, formality_to_json("LSCC->OUT", formality_report(lscc_out, a.graph, lex)));
  write_with(config, outputs::kCdfInLscc, [&](std::ostream& o) { write_cdf_csv(o, sentiment_cdf(in_lscc, a.graph, scorer)); });
  write_with(config, outputs::kCdfLsccOut, [&](std::ostream& o) { write_cdf_csv(o, sentiment_cdf(lscc_out, a.graph, scorer)); });
}

void emit_classify(const RunConfig& config, const Analysis& a) {
  const Lexicon sentiment = load_lexicon(lexicon_path(config, lexicon_files::kSentiment), LexiconKind::Sentiment);
  const LexiconScorer scorer(sentiment);
  ScoreMap scores;
  for (const TweetRecord& t : a.graph.tweets()) scores.emplace(t.tweet_id, scorer.score(t.text));

  std::map<UserId, UserMeta> meta;
  if (config.meta) meta = load_user_meta(*config.meta).users;

  const ProfileMap profiles = build_profiles(a.graph, scores, meta);
  const auto types = classify_users(profiles, config.rules);
  write_with(config, outputs::kUsers, [&](std::ostream& o) { write_user_csv(o, user_rows(a.bowtie, profiles, types)); });
  write_file(config, outputs::kUserSummary,
             user_summary_json(type_distribution(a.bowtie, types), influence_by_component(a.bowtie, profiles)));
}

}  // namespace

void run_decompose(const RunConfig& config) {
  preflight(config, {});
  emit_decompose(config, analyze_graph(config));
}

void run_migrate(const RunConfig& config) {
  preflight(config, {});
  emit_migrate(config, analyze_graph(config));
}

void run_flows(const RunConfig& config) {
  preflight(config, {.sentiment = true, .formality = true});
  emit_flows(config, analyze_graph(config));
}

void run_classify(const RunConfig& config) {
  preflight(config, {.sentiment = true, .meta = true});
  emit_classify(config, analyze_graph(config));
}

void run_analyze(const RunConfig& config) {
  preflight(config, {.sentiment = true, .formality = true, .meta = true});
  const Analysis a = analyze_graph(config);
  emit_decompose(config, a);
  emit_migrate(config, a);
  emit_flows(config, a);
  emit_classify(config, a);
}

}  // namespace askew
