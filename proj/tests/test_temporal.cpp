#include <sstream>

#include "askew/temporal.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace askew;
using oracle::tweet;

namespace {

constexpr std::int64_t kDay = kSecondsPerDay;

std::map<UserId, Component> labels_of(const BowTieDecomposition& d) {
  std::map<UserId, Component> m;
  for (std::size_t i = 0; i < d.user_count(); ++i) m[d.users()[i]] = d.label(i);
  return m;
}

std::vector<TweetRecord> before(const std::vector<TweetRecord>& tweets, std::int64_t end) {
  std::vector<TweetRecord> out;
  for (const auto& t : tweets) {
    if (t.timestamp < end) out.push_back(t);
  }
  return out;
}

/// Day 0: cycle a->b->c->a, x->a, c->y, w->x. Day 1: a->x closes a cycle through x.
std::vector<TweetRecord> closing_corpus() {
  return {tweet("1", "a", {"b"}, 10), tweet("2", "b", {"c"}, 20), tweet("3", "c", {"a"}, 30),
          tweet("4", "x", {"a"}, 40), tweet("5", "c", {"y"}, 50), tweet("6", "w", {"x"}, 60),
          tweet("7", "a", {"x"}, kDay + 10)};
}

}  // namespace

TEST_CASE("auto_day_boundaries spans UTC midnights around the corpus") {
  const auto g = build_graph({tweet("a", "u", {"v"}, 100), tweet("b", "v", {"u"}, kDay + 5)});
  CHECK(auto_day_boundaries(g) == std::vector<std::int64_t>{0, kDay, 2 * kDay});
  CHECK(auto_day_boundaries(build_graph({})).empty());
  const auto one = build_graph({tweet("a", "u", {"v"}, 3 * kDay)});
  CHECK(auto_day_boundaries(one) == std::vector<std::int64_t>{3 * kDay, 4 * kDay});
}

TEST_CASE("cumulative_slices validates its boundaries") {
  const auto g = build_graph({tweet("a", "u", {"v"}, 1)});
  const std::vector<std::int64_t> one{0};
  const std::vector<std::int64_t> flat{0, 10, 10};
  CHECK_THROWS_AS(cumulative_slices(g, one), std::invalid_argument);
  CHECK_THROWS_AS(cumulative_slices(g, flat), std::invalid_argument);
}

TEST_CASE("no new data after day 0 leaves every slice identical") {
  const auto g = build_graph(oracle::random_corpus(4, 20, 0.1, kDay));
  const std::vector<std::int64_t> days{0, kDay, 2 * kDay, 3 * kDay};
  const auto s = cumulative_slices(g, days);
  REQUIRE(s.size() == 3);
  CHECK(s.decomps[0] == s.decomps[1]);
  CHECK(s.decomps[1] == s.decomps[2]);
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    const auto m = migration_matrix(s, k);
    CHECK(m.total_arrivals() == 0);
    for (Component a : kComponents) {
      for (Component b : kComponents) {
        if (a != b) CHECK(m.count(a, b) == 0);
      }
    }
  }
}

TEST_CASE("one-day series equals the full decomposition") {
  const auto g = build_graph(oracle::random_corpus(5, 20, 0.1, kDay));
  const std::vector<std::int64_t> days{0, kDay};
  const auto s = cumulative_slices(g, days);
  REQUIRE(s.size() == 1);
  CHECK(s.decomps[0] == bowtie_decompose(g));
}

TEST_CASE("closing a cycle through an IN vertex moves it into LSCC") {
  const auto tweets = closing_corpus();
  const auto g = build_graph(tweets);
  const std::vector<std::int64_t> days{0, kDay, 2 * kDay};
  const auto s = cumulative_slices(g, days);
  REQUIRE(s.size() == 2);

  const auto day0 = oracle::bowtie_labels(oracle::closure(before(tweets, kDay)));
  const auto day1 = oracle::bowtie_labels(oracle::closure(before(tweets, 2 * kDay)));
  CHECK(day0.at("x") == Component::In);
  CHECK(day1.at("x") == Component::Lscc);
  CHECK(labels_of(s.decomps[0]) == day0);
  CHECK(labels_of(s.decomps[1]) == day1);

  // Expected transitions tallied from the two oracle label maps.
  std::map<std::pair<Component, Component>, std::size_t> expected;
  for (const auto& [u, from] : day0) ++expected[{from, day1.at(u)}];
  const auto m = migration_matrix(s, 0);
  for (Component a : kComponents) {
    for (Component b : kComponents) CHECK(m.count(a, b) == expected[{a, b}]);
  }
  CHECK(m.count(Component::In, Component::Lscc) == 1);
  CHECK(m.total_arrivals() == 0);
}

TEST_CASE("migration_matrix index must name a slice pair") {
  const auto g = build_graph(closing_corpus());
  const std::vector<std::int64_t> days{0, kDay, 2 * kDay};
  const auto s = cumulative_slices(g, days);
  CHECK_NOTHROW(migration_matrix(s, 0));
  CHECK_THROWS_AS(migration_matrix(s, 1), std::out_of_range);
}

TEST_CASE("instability") {
  SUBCASE("constant decompositions are perfectly stable") {
    const auto g = build_graph(oracle::random_corpus(6, 15, 0.1, kDay));
    const std::vector<std::int64_t> days{0, kDay, 2 * kDay};
    const auto s = cumulative_slices(g, days);
    for (Component c : kComponents) CHECK(instability(s, c) == 0.0);
  }
  SUBCASE("a lone TENDRILS user that joins IN is fully unstable") {
    // Day 0: a<->b, x->a, x->t (t hangs off IN). Day 1: t->b.
    const auto g = build_graph({tweet("1", "a", {"b"}, 1), tweet("2", "b", {"a"}, 2), tweet("3", "x", {"a"}, 3),
                                tweet("4", "x", {"t"}, 4), tweet("5", "t", {"b"}, kDay + 1)});
    const std::vector<std::int64_t> days{0, kDay, 2 * kDay};
    const auto s = cumulative_slices(g, days);
    CHECK(s.decomps[0].label_of("t") == Component::Tendrils);
    CHECK(s.decomps[1].label_of("t") == Component::In);
    CHECK(instability(s, Component::Tendrils) == 1.0);
    CHECK(instability(s, Component::In) == 0.0);
    CHECK(instability(s, Component::Out) == 0.0);
  }
}

TEST_CASE("property: migration rows conserve slice sizes and arrivals conserve growth") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto g = build_graph(oracle::random_corpus(seed, 40, 0.04, 5 * kDay));
    const auto s = cumulative_slices(g, auto_day_boundaries(g));
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
      const auto m = migration_matrix(s, k);
      for (Component a : kComponents) CHECK(m.row_sum(a) == s.decomps[k].size(a));
      CHECK(m.total() == s.decomps[k].user_count());
      CHECK(m.total_arrivals() == s.decomps[k + 1].user_count() - s.decomps[k].user_count());
    }

    // Alluvial rows re-aggregate to per-slice component sizes.
    const auto rows = alluvial_rows(s);
    std::map<std::pair<std::size_t, Component>, std::size_t> out_of, into;
    for (const auto& r : rows) {
      if (r.from) out_of[{r.day_from, *r.from}] += r.count;
      into[{r.day_to, r.to}] += r.count;
    }
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
      for (Component c : kComponents) {
        CHECK(out_of[{k, c}] == s.decomps[k].size(c));
        CHECK(into[{k + 1, c}] == s.decomps[k + 1].size(c));
      }
    }

    std::ostringstream csv;
    write_alluvial_csv(csv, rows);
    std::istringstream in(csv.str());
    CHECK(read_alluvial_csv(in) == rows);
  }
}
