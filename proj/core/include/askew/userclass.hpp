#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "askew/bowtie.hpp"
#include "askew/graph.hpp"
#include "askew/ingest.hpp"
#include "askew/textmetrics.hpp"

namespace askew {

struct UserProfile {
  UserId user;
  std::size_t tweet_count = 0;
  double mean_sentiment = 0.5;
  std::optional<double> klout;
  std::optional<UserMeta> meta;
};

using ProfileMap = std::map<UserId, UserProfile>;
using ScoreMap = std::unordered_map<std::string, SentimentScore>;

enum class UserType : std::uint8_t { Happy, Unhappy, Adversarial, Promoter };

std::string_view to_string(UserType type);
std::optional<UserType> parse_user_type(std::string_view name);

/// Sentiment extremity crossed with posting volume.
struct ClassifierRules {
  double pos_threshold = 0.6;
  double neg_threshold = 0.4;
  double volume_quantile = 0.9;

  /// Throws ConfigError unless neg < pos and the quantile lies in (0, 1).
  void validate() const;
};

/// Profiles every author; pure recipients get none. Throws ConsistencyError
/// when an authored tweet has no score.
ProfileMap build_profiles(const ConversationGraph& g, const ScoreMap& scores,
                          const std::map<UserId, UserMeta>& meta = {});

/// Nearest-rank quantile of per-profile tweet counts: the ceil(q*n)-th
/// smallest. 0 for an empty map.
std::size_t volume_cutoff(const ProfileMap& profiles, double quantile);

UserType classify_user(const UserProfile& p, const ClassifierRules& rules, std::size_t volume_cutoff);

std::map<UserId, UserType> classify_users(const ProfileMap& profiles, const ClassifierRules& rules);

/// Median klout per component over profiled users that have one. Components
/// without any klout are absent.
std::map<Component, double> influence_by_component(const BowTieDecomposition& d,
                                                   const ProfileMap& profiles);

/// nullopt is the UNSCORED bucket (users without a profile).
using TypeBucket = std::optional<UserType>;
using TypeDistribution = std::map<std::pair<Component, TypeBucket>, std::size_t>;

std::string_view to_string(const TypeBucket& bucket);

TypeDistribution type_distribution(const BowTieDecomposition& d,
                                   const std::map<UserId, UserType>& types);

struct UserRow {
  UserId user;
  Component component = Component::Disc;
  TypeBucket type;
  std::optional<double> mean_sentiment;
  std::size_t tweet_count = 0;
  std::optional<double> klout;

  bool operator==(const UserRow&) const = default;
};

std::vector<UserRow> user_rows(const BowTieDecomposition& d, const ProfileMap& profiles,
                               const std::map<UserId, UserType>& types);

/// `user,component,type,mean_sentiment,tweet_count,klout`; absent values are empty cells.
void write_user_csv(std::ostream& out, const std::vector<UserRow>& rows);
std::vector<UserRow> read_user_csv(std::istream& in);

std::string user_summary_json(const TypeDistribution& dist,
                              const std::map<Component, double>& influence);

}  // namespace askew
