#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "askew/userclass.hpp"

namespace askew {

/// Resolved inputs for one analysis run.
struct RunConfig {
  std::filesystem::path tweets;
  std::optional<std::filesystem::path> meta;
  std::optional<std::filesystem::path> lexicon_dir;
  std::optional<std::vector<std::int64_t>> days;  // nullopt = derive UTC midnights
  std::filesystem::path out;
  std::uint64_t seed = 42;  // unused by the analyses, which are deterministic
  ClassifierRules rules;
};

/// Output file names written under RunConfig::out.
namespace outputs {
inline constexpr const char* kIngestReport = "ingest_report.json";
inline constexpr const char* kEdges = "graph_edges.csv";
inline constexpr const char* kVertices = "graph_vertices.csv";
inline constexpr const char* kComponents = "components.csv";
inline constexpr const char* kStats = "component_stats.json";
inline constexpr const char* kAlluvial = "alluvial.csv";
inline constexpr const char* kFormalityInLscc = "formality_IN_LSCC.json";
inline constexpr const char* kFormalityLsccOut = "formality_LSCC_OUT.json";
inline constexpr const char* kCdfInLscc = "sentiment_cdf_IN_LSCC.csv";
inline constexpr const char* kCdfLsccOut = "sentiment_cdf_LSCC_OUT.csv";
inline constexpr const char* kUsers = "users.csv";
inline constexpr const char* kUserSummary = "user_summary.json";
}  // namespace outputs

/// Lexicon file names expected inside --lexicon-dir.
namespace lexicon_files {
inline constexpr const char* kSentiment = "sentiment.tsv";
inline constexpr const char* kPosTags = "pos_tags.tsv";
inline constexpr const char* kCurseWords = "curse_words.tsv";
inline constexpr const char* kWordFrequency = "word_frequency.tsv";
}  // namespace lexicon_files

/// Parses "AUTO" (nullopt) or a comma-separated list of epoch seconds.
std::optional<std::vector<std::int64_t>> parse_days(const std::string& text);

// Each stage validates its inputs up front and throws ConfigError (bad or
// missing configuration) or IngestError (unreadable input) before writing.
void run_decompose(const RunConfig& config);
void run_migrate(const RunConfig& config);
void run_flows(const RunConfig& config);
void run_classify(const RunConfig& config);
/// All of the above into one output tree.
void run_analyze(const RunConfig& config);

}  // namespace askew
