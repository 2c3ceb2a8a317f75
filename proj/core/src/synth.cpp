#include "askew/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace askew {

void SynthSpec::validate() const {
  double total = 0.0;
  for (double m : masses) {
    if (!(m >= 0.0 && m <= 1.0)) throw std::invalid_argument("component mass outside [0, 1]");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("component masses must sum to 1");
  for (double b : positive_bias) {
    if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("sentiment bias outside [0, 1]");
  }
  if (user_count < 10) throw std::invalid_argument("user_count must be at least 10");
  if (days < 1) throw std::invalid_argument("days must be at least 1");
  if (!(tweets_per_user > 0.0) || !std::isfinite(tweets_per_user)) {
    throw std::invalid_argument("tweets_per_user must be positive");
  }
  if (start < 0) throw std::invalid_argument("start must be a non-negative epoch");

  const auto sizes = planned_sizes();
  if (sizes[index_of(Component::Lscc)] < 2) {
    throw std::invalid_argument("LSCC mass yields fewer than 2 users; a strongly connected core needs 2");
  }
  if (sizes[index_of(Component::Tendrils)] > 0 && sizes[index_of(Component::In)] == 0 &&
      sizes[index_of(Component::Out)] == 0) {
    throw std::invalid_argument("TENDRILS need an IN or OUT component to hang from");
  }
}

std::array<std::size_t, kComponentCount> SynthSpec::planned_sizes() const {
  std::array<std::size_t, kComponentCount> sizes{};
  std::array<double, kComponentCount> remainder{};
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < kComponentCount; ++c) {
    const double exact = masses[c] * static_cast<double>(user_count);
    sizes[c] = static_cast<std::size_t>(std::floor(exact));
    remainder[c] = exact - std::floor(exact);
    assigned += sizes[c];
  }
  std::array<std::size_t, kComponentCount> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < user_count; ++i, ++assigned) ++sizes[order[i % kComponentCount]];
  return sizes;
}

namespace {

constexpr std::array kPositive{"good", "great", "love", "awesome", "happy", "thanks", "best", "amazing", "excellent", "superb"};
constexpr std::array kNegative{"bad", "worst", "hate", "fail", "angry", "delay", "refund", "broken", "terrible", "waste"};
constexpr std::array kNouns{"sale", "order", "phone", "deal", "offer", "delivery", "app", "price", "discount", "product"};
constexpr std::array kVerbs{"buy", "got", "check", "want", "ordered", "waiting", "cancelled"};
constexpr std::array kModifiers{"fast", "cheap", "quickly", "really", "late", "finally"};
constexpr std::array kPronouns{"he", "she", "they", "them", "his", "her", "their"};
constexpr std::array kFunction{"the", "a", "is", "to", "for", "on", "and", "of", "my", "i"};
constexpr std::array kCurses{"damn", "crap", "wtf"};

class Generator {
 public:
  Generator(const SynthSpec& spec, std::uint64_t seed) : spec_(spec), rng_(seed) {}

  SynthCorpus run() {
    plant_users();
    plant_structure();
    add_noise();
    return finish();
  }

 private:
  struct Draft {
    std::uint32_t author;
    std::vector<std::uint32_t> recipients;
  };

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <typename Words>
  const char* pick(const Words& words) { return words[below(words.size())]; }

  std::vector<std::uint32_t>& group(Component c) { return groups_[index_of(c)]; }

  void plant_users() {
    const std::size_t n = spec_.user_count;
    const std::size_t width = std::to_string(n - 1).size();
    names_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::string digits = std::to_string(i);
      names_.push_back("u" + std::string(width - digits.size(), '0') + digits);
    }
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng_);

    const auto sizes = spec_.planned_sizes();
    component_.resize(n);
    position_.resize(n);
    std::size_t next = 0;
    for (Component c : kComponents) {
      for (std::size_t k = 0; k < sizes[index_of(c)]; ++k) {
        const std::uint32_t u = perm[next++];
        component_[u] = c;
        position_[u] = group(c).size();
        group(c).push_back(u);
      }
    }
    tendrils_from_in_ = !group(Component::In).empty();

    // DISC: pairs, with a trailing triple when the count is odd; a lone user
    // stays isolated and only posts recipient-less tweets.
    const auto& disc = group(Component::Disc);
    disc_group_.resize(n, 0);
    for (std::size_t k = 0; k < disc.size(); ++k) {
      std::size_t g = k / 2;
      if (disc.size() % 2 == 1 && disc.size() >= 3 && k == disc.size() - 1) g = k / 2 - 1;
      disc_group_[disc[k]] = g;
    }
  }

  void edge(std::uint32_t src, std::uint32_t dst) { drafts_.push_back({src, {dst}}); }

  void plant_structure() {
    const auto& core = group(Component::Lscc);
    for (std::size_t k = 0; k < core.size(); ++k) edge(core[k], core[(k + 1) % core.size()]);

    const auto& in = group(Component::In);
    for (std::size_t k = 0; k < in.size(); ++k) {
      const std::size_t r = below(core.size() + k);
      edge(in[k], r < core.size() ? core[r] : in[r - core.size()]);
    }
    const auto& out = group(Component::Out);
    for (std::size_t k = 0; k < out.size(); ++k) {
      const std::size_t r = below(core.size() + k);
      edge(r < core.size() ? core[r] : out[r - core.size()], out[k]);
    }
    const auto& tendrils = group(Component::Tendrils);
    for (std::size_t k = 0; k < tendrils.size(); ++k) {
      if (tendrils_from_in_) {
        const std::size_t r = below(in.size() + k);
        edge(r < in.size() ? in[r] : tendrils[r - in.size()], tendrils[k]);
      } else {
        const std::size_t r = below(out.size() + k);
        edge(tendrils[k], r < out.size() ? out[r] : tendrils[r - out.size()]);
      }
    }
    const auto& disc = group(Component::Disc);
    if (disc.size() == 1) drafts_.push_back({disc[0], {}});
    for (std::size_t k = 1; k < disc.size(); ++k) {
      if (disc_group_[disc[k]] == disc_group_[disc[k - 1]]) edge(disc[k - 1], disc[k]);
    }
  }

  /// A recipient that leaves every planted label intact, or nullopt when the
  /// author has none (e.g. the last vertex of an OUT tree).
  std::optional<std::uint32_t> safe_target(std::uint32_t u) {
    const auto& core = group(Component::Lscc);
    const std::size_t pos = position_[u];
    switch (component_[u]) {
      case Component::Lscc: {
        const auto& out = group(Component::Out);
        const std::size_t r = below(core.size() + out.size());
        const std::uint32_t v = r < core.size() ? core[r] : out[r - core.size()];
        return v == u ? std::nullopt : std::optional(v);
      }
      case Component::In: {
        const auto& in = group(Component::In);
        const std::size_t r = below(core.size() + pos);
        return r < core.size() ? core[r] : in[r - core.size()];
      }
      case Component::Out: {
        const auto& out = group(Component::Out);
        if (pos + 1 >= out.size()) return std::nullopt;
        return out[pos + 1 + below(out.size() - pos - 1)];
      }
      case Component::Tendrils: {
        const auto& tendrils = group(Component::Tendrils);
        if (tendrils_from_in_) {
          if (pos + 1 >= tendrils.size()) return std::nullopt;
          return tendrils[pos + 1 + below(tendrils.size() - pos - 1)];
        }
        const auto& out = group(Component::Out);
        const std::size_t r = below(out.size() + pos);
        return r < out.size() ? out[r] : tendrils[r - out.size()];
      }
      case Component::Disc: {
        const auto& disc = group(Component::Disc);
        if (pos + 1 >= disc.size() || disc_group_[disc[pos + 1]] != disc_group_[u]) return std::nullopt;
        return disc[pos + 1];
      }
    }
    return std::nullopt;
  }

  void add_noise() {
    const auto target = static_cast<std::size_t>(std::llround(spec_.tweets_per_user * static_cast<double>(spec_.user_count)));
    const std::size_t lone_disc = group(Component::Disc).size() == 1 ? group(Component::Disc)[0] : SIZE_MAX;
    std::size_t misses = 0;
    while (drafts_.size() < target && misses < 64 * target + 64) {
      const auto u = static_cast<std::uint32_t>(below(spec_.user_count));
      if (u == lone_disc) {
        drafts_.push_back({u, {}});
        continue;
      }
      auto v = safe_target(u);
      if (!v) {
        ++misses;
        continue;
      }
      Draft d{u, {*v}};
      if (chance(0.15)) {
        if (auto w = safe_target(u); w && *w != *v) d.recipients.push_back(*w);
      }
      drafts_.push_back(std::move(d));
    }
  }

  std::string compose(const Draft& d) {
    std::string text;
    auto add = [&text](std::string_view word) {
      if (!text.empty()) text.push_back(' ');
      text += word;
    };
    if (!d.recipients.empty() && chance(0.5)) add("@" + names_[d.recipients.front()]);
    const double bias = spec_.positive_bias[index_of(component_[d.author])];
    const std::size_t words = 4 + below(6);
    for (std::size_t k = 0; k < words; ++k) {
      const double roll = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
      if (roll < 0.3) {
        add(chance(bias) ? pick(kPositive) : pick(kNegative));
      } else if (roll < 0.45) {
        add(pick(kNouns));
      } else if (roll < 0.55) {
        add(pick(kVerbs));
      } else if (roll < 0.62) {
        add(pick(kModifiers));
      } else if (roll < 0.72) {
        add(pick(kPronouns));
      } else if (roll < 0.97 - 0.04 * bias) {
        add(pick(kFunction));
      } else {
        add(pick(kCurses));
      }
    }
    if (chance(0.3)) add("#BigBillionDay");
    if (chance(0.1)) add("http://t.co/" + std::to_string(below(100000)));
    return text;
  }

  SynthCorpus finish() {
    const std::int64_t span = static_cast<std::int64_t>(spec_.days) * 86400;
    struct Stamped {
      std::int64_t timestamp;
      std::size_t draft;
    };
    std::vector<Stamped> order;
    order.reserve(drafts_.size());
    for (std::size_t k = 0; k < drafts_.size(); ++k) {
      order.push_back({spec_.start + std::uniform_int_distribution<std::int64_t>(0, span - 1)(rng_), k});
    }
    std::stable_sort(order.begin(), order.end(), [](const Stamped& a, const Stamped& b) { return a.timestamp < b.timestamp; });

    SynthCorpus corpus;
    const std::size_t width = std::to_string(drafts_.size()).size();
    corpus.tweets.reserve(drafts_.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      const Draft& d = drafts_[order[k].draft];
      TweetRecord t;
      std::string digits = std::to_string(k);
      t.tweet_id = "t" + std::string(width - digits.size(), '0') + digits;
      t.author = names_[d.author];
      for (std::uint32_t r : d.recipients) t.recipients.push_back(names_[r]);
      std::sort(t.recipients.begin(), t.recipients.end());
      t.timestamp = order[k].timestamp;
      const double roll = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
      t.kind = roll < 0.5 ? TweetKind::Reply : (roll < 0.85 || t.recipients.size() != 1 ? TweetKind::Mention : TweetKind::Retweet);
      t.text = compose(d);
      corpus.tweets.push_back(std::move(t));
    }
    for (std::size_t u = 0; u < names_.size(); ++u) corpus.planned.emplace(names_[u], component_[u]);
    return corpus;
  }

  const SynthSpec& spec_;
  std::mt19937_64 rng_;
  std::vector<std::string> names_;
  std::vector<Component> component_;
  std::vector<std::size_t> position_;
  std::vector<std::size_t> disc_group_;
  std::array<std::vector<std::uint32_t>, kComponentCount> groups_;
  bool tendrils_from_in_ = true;
  std::vector<Draft> drafts_;
};

}  // namespace

std::optional<std::array<double, kComponentCount>> preset_masses(std::string_view name) {
  // IN, LSCC, OUT, TENDRILS, DISC in percent, as rounded per event corpus.
  std::array<double, kComponentCount> pct;
  if (name == "bbd") pct = {63.0, 12.0, 1.5, 21.0, 2.8};
  else if (name == "basd2") pct = {55.3, 23.1, 3.5, 13.8, 6.7};
  else if (name == "basd3") pct = {57.1, 21.1, 1.2, 14.3, 6.2};
  else return std::nullopt;
  return normalized(pct);
}

std::array<double, kComponentCount> normalized(std::array<double, kComponentCount> masses) {
  double total = 0.0;
  for (double m : masses) total += m;
  if (!(total > 0.0) || !std::isfinite(total)) throw std::invalid_argument("component masses must have a positive sum");
  for (double& m : masses) m /= total;
  return masses;
}

SynthCorpus generate_corpus(const SynthSpec& spec, std::uint64_t seed) {
  spec.validate();
  return Generator(spec, seed).run();
}

}  // namespace askew
