#include "askew/userclass.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "askew/csv.hpp"
#include "json.hpp"

namespace askew {

std::string_view to_string(UserType type) {
  switch (type) {
    case UserType::Happy: return "HAPPY";
    case UserType::Unhappy: return "UNHAPPY";
    case UserType::Adversarial: return "ADVERSARIAL";
    case UserType::Promoter: return "PROMOTER";
  }
  return "?";
}

std::optional<UserType> parse_user_type(std::string_view name) {
  for (UserType t : {UserType::Happy, UserType::Unhappy, UserType::Adversarial, UserType::Promoter}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

std::string_view to_string(const TypeBucket& bucket) { return bucket ? to_string(*bucket) : "UNSCORED"; }

void ClassifierRules::validate() const {
  if (!(neg_threshold < pos_threshold)) throw ConfigError("--neg-threshold must be below --pos-threshold");
  if (!(volume_quantile > 0.0 && volume_quantile < 1.0)) throw ConfigError("--volume-quantile must lie in (0, 1)");
}

ProfileMap build_profiles(const ConversationGraph& g, const ScoreMap& scores, const std::map<UserId, UserMeta>& meta) {
  std::map<UserId, std::pair<std::size_t, double>> totals;
  for (const TweetRecord& t : g.tweets()) {
    auto it = scores.find(t.tweet_id);
    if (it == scores.end()) throw ConsistencyError("no sentiment score for tweet '" + t.tweet_id + "'");
    auto& [count, sum] = totals[t.author];
    ++count;
    sum += it->second.value();
  }

  ProfileMap profiles;
  for (const auto& [user, total] : totals) {
    UserProfile p;
    p.user = user;
    p.tweet_count = total.first;
    p.mean_sentiment = std::clamp(total.second / static_cast<double>(total.first), 0.0, 1.0);
    if (auto m = meta.find(user); m != meta.end()) {
      p.meta = m->second;
      p.klout = m->second.klout_score;
    }
    profiles.emplace(user, std::move(p));
  }
  return profiles;
}

std::size_t volume_cutoff(const ProfileMap& profiles, double quantile) {
  if (profiles.empty()) return 0;
  std::vector<std::size_t> counts;
  counts.reserve(profiles.size());
  for (const auto& [_, p] : profiles) counts.push_back(p.tweet_count);
  std::sort(counts.begin(), counts.end());
  const auto rank = static_cast<std::size_t>(std::ceil(quantile * static_cast<double>(counts.size())));
  return counts[std::clamp<std::size_t>(rank, 1, counts.size()) - 1];
}

UserType classify_user(const UserProfile& p, const ClassifierRules& rules, std::size_t cutoff) {
  const bool loud = p.tweet_count >= cutoff;
  if (loud && p.mean_sentiment >= rules.pos_threshold) return UserType::Promoter;
  if (loud && p.mean_sentiment <= rules.neg_threshold) return UserType::Adversarial;
  return p.mean_sentiment >= 0.5 ? UserType::Happy : UserType::Unhappy;
}

std::map<UserId, UserType> classify_users(const ProfileMap& profiles, const ClassifierRules& rules) {
  rules.validate();
  const std::size_t cutoff = volume_cutoff(profiles, rules.volume_quantile);
  std::map<UserId, UserType> types;
  for (const auto& [user, p] : profiles) types.emplace(user, classify_user(p, rules, cutoff));
  return types;
}

namespace {

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

}  // namespace

std::map<Component, double> influence_by_component(const BowTieDecomposition& d, const ProfileMap& profiles) {
  std::map<Component, std::vector<double>> klouts;
  for (const auto& [user, p] : profiles) {
    if (!p.klout) continue;
    if (auto c = d.label_of(user)) klouts[*c].push_back(*p.klout);
  }
  std::map<Component, double> medians;
  for (auto& [c, values] : klouts) medians.emplace(c, median(std::move(values)));
  return medians;
}

TypeDistribution type_distribution(const BowTieDecomposition& d, const std::map<UserId, UserType>& types) {
  TypeDistribution dist;
  for (std::size_t i = 0; i < d.user_count(); ++i) {
    auto it = types.find(d.users()[i]);
    const TypeBucket bucket = it == types.end() ? TypeBucket{} : TypeBucket{it->second};
    ++dist[{d.label(i), bucket}];
  }
  return dist;
}

std::vector<UserRow> user_rows(const BowTieDecomposition& d, const ProfileMap& profiles,
                               const std::map<UserId, UserType>& types) {
  std::vector<UserRow> rows;
  rows.reserve(d.user_count());
  for (std::size_t i = 0; i < d.user_count(); ++i) {
    UserRow row;
    row.user = d.users()[i];
    row.component = d.label(i);
    if (auto t = types.find(row.user); t != types.end()) row.type = t->second;
    if (auto p = profiles.find(row.user); p != profiles.end()) {
      row.mean_sentiment = p->second.mean_sentiment;
      row.tweet_count = p->second.tweet_count;
      row.klout = p->second.klout;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_user_csv(std::ostream& out, const std::vector<UserRow>& rows) {
  out << "user,component,type,mean_sentiment,tweet_count,klout\n";
  for (const UserRow& r : rows) {
    out << csv::join({r.user, std::string(to_string(r.component)), std::string(to_string(r.type)),
                      r.mean_sentiment ? csv::format_real(*r.mean_sentiment) : std::string(),
                      std::to_string(r.tweet_count), r.klout ? csv::format_real(*r.klout) : std::string()})
        << '\n';
  }
}

std::vector<UserRow> read_user_csv(std::istream& in) {
  const auto lines = csv::read_lines(in);
  if (lines.empty() || lines.front() != "user,component,type,mean_sentiment,tweet_count,klout") {
    throw IngestError("user CSV: bad header");
  }
  std::vector<UserRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = csv::split(lines[i]);
    try {
      if (f.size() != 6) throw std::invalid_argument("field count");
      UserRow row;
      row.user = f[0];
      const auto c = parse_component(f[1]);
      if (!c) throw std::invalid_argument("component");
      row.component = *c;
      if (f[2] != "UNSCORED") {
        row.type = parse_user_type(f[2]);
        if (!row.type) throw std::invalid_argument("type");
      }
      if (!f[3].empty()) row.mean_sentiment = csv::parse_real(f[3]);
      row.tweet_count = static_cast<std::size_t>(csv::parse_integer(f[4]));
      if (!f[5].empty()) row.klout = csv::parse_real(f[5]);
      rows.push_back(std::move(row));
    } catch (const std::invalid_argument&) {
      throw IngestError("user CSV: bad row " + std::to_string(i));
    }
  }
  return rows;
}

std::string user_summary_json(const TypeDistribution& dist, const std::map<Component, double>& influence) {
  nlohmann::ordered_json doc;
  doc["type_distribution"] = nlohmann::ordered_json::array();
  for (const auto& [key, count] : dist) {
    nlohmann::ordered_json cell;
    cell["component"] = to_string(key.first);
    cell["type"] = to_string(key.second);
    cell["count"] = count;
    doc["type_distribution"].push_back(std::move(cell));
  }
  doc["influence_median_klout"] = nlohmann::ordered_json::object();
  for (const auto& [c, value] : influence) doc["influence_median_klout"][std::string(to_string(c))] = value;
  return doc.dump(2) + "\n";
}

}  // namespace askew
