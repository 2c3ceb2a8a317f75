#include <cmath>

#include "askew/bowtie.hpp"
#include "askew/synth.hpp"
#include "doctest.h"

using namespace askew;

namespace {

SynthSpec small_spec(std::size_t users = 300) {
  SynthSpec s;
  s.user_count = users;
  return s;
}

}  // namespace

TEST_CASE("planned sizes apportion every user") {
  for (std::size_t n : {10u, 11u, 97u, 1000u, 5003u}) {
    const auto sizes = small_spec(n).planned_sizes();
    std::size_t total = 0;
    for (std::size_t s : sizes) total += s;
    CHECK(total == n);
  }
  SynthSpec s = small_spec(1000);
  CHECK(s.planned_sizes() == std::array<std::size_t, kComponentCount>{630, 120, 15, 210, 25});
}

TEST_CASE("generation is deterministic per seed") {
  const auto spec = small_spec();
  const auto a = generate_corpus(spec, 11);
  const auto b = generate_corpus(spec, 11);
  const auto c = generate_corpus(spec, 12);
  CHECK(a.tweets == b.tweets);
  CHECK(a.planned == b.planned);
  CHECK(a.tweets != c.tweets);
}

TEST_CASE("planted labels survive decomposition") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    SynthSpec spec = small_spec(200 + 37 * seed);
    spec.days = 1 + seed % 4;
    const auto corpus = generate_corpus(spec, seed);
    const auto g = build_graph(corpus.tweets);
    const auto d = bowtie_decompose(g);
    REQUIRE(d.user_count() == spec.user_count);
    for (const auto& [user, planned] : corpus.planned) CHECK(d.label_of(user) == planned);
    const auto sizes = spec.planned_sizes();
    for (Component c : kComponents) CHECK(d.size(c) == sizes[index_of(c)]);

    const std::int64_t end = spec.start + static_cast<std::int64_t>(spec.days) * 86400;
    for (const auto& t : corpus.tweets) {
      CHECK(t.timestamp >= spec.start);
      CHECK(t.timestamp < end);
    }
  }
}

TEST_CASE("degenerate but feasible mixes") {
  SUBCASE("all LSCC") {
    SynthSpec spec = small_spec(50);
    spec.masses = {0, 1, 0, 0, 0};
    const auto g = build_graph(generate_corpus(spec, 3).tweets);
    const auto d = bowtie_decompose(g);
    CHECK(d.size(Component::Lscc) == 50);
  }
  SUBCASE("tendrils off OUT") {
    SynthSpec spec = small_spec(60);
    spec.masses = {0, 0.5, 0.3, 0.2, 0};
    const auto corpus = generate_corpus(spec, 4);
    const auto d = bowtie_decompose(build_graph(corpus.tweets));
    CHECK(d.size(Component::Tendrils) == 12);
    CHECK(d.size(Component::In) == 0);
  }
}

TEST_CASE("infeasible specs are rejected") {
  auto rejects = [](SynthSpec s) { CHECK_THROWS_AS(s.validate(), std::invalid_argument); };
  SynthSpec s = small_spec();
  s.masses = {0.5, 0.5, 0.5, 0, 0};
  rejects(s);
  s.masses = {-0.1, 0.6, 0.5, 0, 0};
  rejects(s);
  s = small_spec(10);
  s.masses = {0.95, 0.05, 0, 0, 0};
  rejects(s);
  s = small_spec();
  s.masses = {0, 0.5, 0, 0.5, 0};
  rejects(s);
  s = small_spec(5);
  rejects(s);
  s = small_spec();
  s.days = 0;
  rejects(s);
  s = small_spec();
  s.tweets_per_user = 0;
  rejects(s);
  CHECK_THROWS_AS(generate_corpus(s, 1), std::invalid_argument);
}

TEST_CASE("BBD-shaped mix lands within two points of its targets") {
  SynthSpec spec = small_spec(5000);
  spec.masses = {0.63, 0.12, 0.015, 0.21, 0.025};
  const auto g = build_graph(generate_corpus(spec, 1).tweets);
  const auto d = bowtie_decompose(g);
  const auto stats = component_stats(g, d);
  for (Component c : kComponents) CHECK(std::abs(stats.mass(c) - 100.0 * spec.mass(c)) <= 2.0);
  CHECK(stats.is_askew);
}
