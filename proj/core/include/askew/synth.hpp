#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "askew/ingest.hpp"
#include "askew/types.hpp"

namespace askew {

/// Parameters for a planted bow-tie corpus.
struct SynthSpec {
  std::array<double, kComponentCount> masses{0.63, 0.12, 0.015, 0.21, 0.025};
  std::size_t user_count = 1000;
  std::size_t days = 4;
  double tweets_per_user = 3.0;
  /// Probability that a sentiment-bearing word in a tweet is positive, by the
  /// author's planted component.
  std::array<double, kComponentCount> positive_bias{0.35, 0.6, 0.65, 0.45, 0.5};
  std::int64_t start = 1412899200;  // 2014-10-10T00:00:00Z

  double mass(Component c) const { return masses[index_of(c)]; }

  /// Throws std::invalid_argument for an infeasible spec.
  void validate() const;

  /// Largest-remainder apportionment of user_count over the masses.
  std::array<std::size_t, kComponentCount> planned_sizes() const;
};

/// Reference component-mass mixes (bbd, basd2, basd3), rescaled to sum to 1
/// since the rounded rows do not. Empty for an unknown name.
std::optional<std::array<double, kComponentCount>> preset_masses(std::string_view name);

/// Rescales to sum 1. Throws std::invalid_argument when the sum is not positive.
std::array<double, kComponentCount> normalized(std::array<double, kComponentCount> masses);

struct SynthCorpus {
  std::vector<TweetRecord> tweets;
  std::map<UserId, Component> planned;
};

/// Plants an LSCC cycle, attaches IN and OUT trees, hangs TENDRILS off IN (or
/// off OUT when IN is empty), forms small DISC groups, then adds noise tweets
/// whose edges cannot change any label. Deterministic per seed.
SynthCorpus generate_corpus(const SynthSpec& spec, std::uint64_t seed);

}  // namespace askew
