#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "askew/bowtie.hpp"
#include "askew/graph.hpp"

namespace askew {

inline constexpr std::int64_t kSecondsPerDay = 86400;

/// UTC midnights from the day of the earliest tweet through the midnight after
/// the latest one. Empty for a graph without tweets.
std::vector<std::int64_t> auto_day_boundaries(const ConversationGraph& g);

/// decomps[k] decomposes the cumulative prefix [boundaries[0], boundaries[k+1]).
struct SliceSeries {
  std::vector<std::int64_t> boundaries;
  std::vector<BowTieDecomposition> decomps;

  std::size_t size() const { return decomps.size(); }
};

/// Throws std::invalid_argument unless day_starts has >= 2 strictly ascending entries.
SliceSeries cumulative_slices(const ConversationGraph& g, std::span<const std::int64_t> day_starts);

/// Component transitions between slice k and k+1. Slices are cumulative, so
/// users never leave; newcomers are tallied under arrivals.
struct MigrationMatrix {
  std::size_t day_from = 0;
  std::size_t day_to = 0;
  std::array<std::array<std::size_t, kComponentCount>, kComponentCount> counts{};
  std::array<std::size_t, kComponentCount> arrivals{};

  std::size_t count(Component from, Component to) const {
    return counts[index_of(from)][index_of(to)];
  }
  std::size_t arrival(Component to) const { return arrivals[index_of(to)]; }
  std::size_t row_sum(Component from) const;
  std::size_t total() const;
  std::size_t total_arrivals() const;
};

/// Throws std::out_of_range unless k + 1 < s.size().
MigrationMatrix migration_matrix(const SliceSeries& s, std::size_t k);

/// Fraction of users labelled `c` in some non-final slice whose final label
/// differs. 0 when no such user exists.
double instability(const SliceSeries& s, Component c);

struct AlluvialRow {
  std::size_t day_from = 0;
  std::size_t day_to = 0;
  std::optional<Component> from;  // empty = ARRIVAL
  Component to = Component::In;
  std::size_t count = 0;

  bool operator==(const AlluvialRow&) const = default;
};

std::vector<AlluvialRow> alluvial_rows(const SliceSeries& s);

/// `day_from,day_to,from_component,to_component,count`, all 25 transition
/// cells then 5 ARRIVAL rows per consecutive slice pair, zeros included.
void write_alluvial_csv(std::ostream& out, std::span<const AlluvialRow> rows);
std::vector<AlluvialRow> read_alluvial_csv(std::istream& in);

}  // namespace askew
