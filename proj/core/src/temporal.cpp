#include "askew/temporal.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "askew/csv.hpp"

namespace askew {

namespace {

std::int64_t floor_day(std::int64_t t) {
  std::int64_t q = t / kSecondsPerDay;
  if (t % kSecondsPerDay < 0) --q;
  return q * kSecondsPerDay;
}

}  // namespace

std::vector<std::int64_t> auto_day_boundaries(const ConversationGraph& g) {
  const auto tweets = g.tweets();
  if (tweets.empty()) return {};
  const auto [lo, hi] = std::minmax_element(tweets.begin(), tweets.end(), [](const auto& a, const auto& b) {
    return a.timestamp < b.timestamp;
  });
  std::vector<std::int64_t> days;
  for (std::int64_t d = floor_day(lo->timestamp); d <= floor_day(hi->timestamp) + kSecondsPerDay;
       d += kSecondsPerDay) {
    days.push_back(d);
  }
  return days;
}

SliceSeries cumulative_slices(const ConversationGraph& g, std::span<const std::int64_t> day_starts) {
  if (day_starts.size() < 2) throw std::invalid_argument("cumulative slicing needs at least 2 day boundaries");
  if (std::adjacent_find(day_starts.begin(), day_starts.end(), std::greater_equal<>()) != day_starts.end()) {
    throw std::invalid_argument("day boundaries must be strictly ascending");
  }
  SliceSeries series;
  series.boundaries.assign(day_starts.begin(), day_starts.end());
  series.decomps.reserve(day_starts.size() - 1);
  for (std::size_t k = 1; k < day_starts.size(); ++k) {
    series.decomps.push_back(bowtie_decompose(time_slice(g, TimeWindow(day_starts.front(), day_starts[k]))));
  }
  return series;
}

std::size_t MigrationMatrix::row_sum(Component from) const {
  std::size_t sum = 0;
  for (std::size_t v : counts[index_of(from)]) sum += v;
  return sum;
}

std::size_t MigrationMatrix::total() const {
  std::size_t sum = 0;
  for (Component c : kComponents) sum += row_sum(c);
  return sum;
}

std::size_t MigrationMatrix::total_arrivals() const {
  std::size_t sum = 0;
  for (std::size_t v : arrivals) sum += v;
  return sum;
}

MigrationMatrix migration_matrix(const SliceSeries& s, std::size_t k) {
  if (k + 1 >= s.size()) throw std::out_of_range("migration index past the last slice pair");
  const BowTieDecomposition& before = s.decomps[k];
  const BowTieDecomposition& after = s.decomps[k + 1];

  MigrationMatrix m;
  m.day_from = k;
  m.day_to = k + 1;
  // Both user lists are sorted and `before` is a subset of `after`.
  std::size_t i = 0;
  for (std::size_t j = 0; j < after.user_count(); ++j) {
    const Component to = after.label(j);
    if (i < before.user_count() && before.users()[i] == after.users()[j]) {
      ++m.counts[index_of(before.label(i))][index_of(to)];
      ++i;
    } else {
      ++m.arrivals[index_of(to)];
    }
  }
  if (i != before.user_count()) throw std::logic_error("slice users are not cumulative");
  return m;
}

double instability(const SliceSeries& s, Component c) {
  if (s.size() < 2) return 0.0;
  const BowTieDecomposition& last = s.decomps.back();
  std::vector<bool> ever(last.user_count(), false);
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    const BowTieDecomposition& d = s.decomps[k];
    for (std::size_t i = 0; i < d.user_count(); ++i) {
      if (d.label(i) != c) continue;
      const auto it = std::lower_bound(last.users().begin(), last.users().end(), d.users()[i]);
      ever[static_cast<std::size_t>(it - last.users().begin())] = true;
    }
  }
  std::size_t population = 0;
  std::size_t moved = 0;
  for (std::size_t i = 0; i < ever.size(); ++i) {
    if (!ever[i]) continue;
    ++population;
    if (last.label(i) != c) ++moved;
  }
  return population ? static_cast<double>(moved) / static_cast<double>(population) : 0.0;
}

std::vector<AlluvialRow> alluvial_rows(const SliceSeries& s) {
  std::vector<AlluvialRow> rows;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    const MigrationMatrix m = migration_matrix(s, k);
    for (Component from : kComponents) {
      for (Component to : kComponents) rows.push_back({k, k + 1, from, to, m.count(from, to)});
    }
    for (Component to : kComponents) rows.push_back({k, k + 1, std::nullopt, to, m.arrival(to)});
  }
  return rows;
}

void write_alluvial_csv(std::ostream& out, std::span<const AlluvialRow> rows) {
  out << "day_from,day_to,from_component,to_component,count\n";
  for (const AlluvialRow& r : rows) {
    out << r.day_from << ',' << r.day_to << ',' << (r.from ? to_string(*r.from) : "ARRIVAL") << ','
        << to_string(r.to) << ',' << r.count << '\n';
  }
}

std::vector<AlluvialRow> read_alluvial_csv(std::istream& in) {
  const auto lines = csv::read_lines(in);
  if (lines.empty() || lines.front() != "day_from,day_to,from_component,to_component,count") {
    throw IngestError("alluvial CSV: bad header");
  }
  std::vector<AlluvialRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = csv::split(lines[i]);
    try {
      if (f.size() != 5) throw std::invalid_argument("field count");
      AlluvialRow row;
      row.day_from = static_cast<std::size_t>(csv::parse_integer(f[0]));
      row.day_to = static_cast<std::size_t>(csv::parse_integer(f[1]));
      if (f[2] != "ARRIVAL") {
        row.from = parse_component(f[2]);
        if (!row.from) throw std::invalid_argument("component");
      }
      const auto to = parse_component(f[3]);
      if (!to) throw std::invalid_argument("component");
      row.to = *to;
      row.count = static_cast<std::size_t>(csv::parse_integer(f[4]));
      rows.push_back(row);
    } catch (const std::invalid_argument&) {
      throw IngestError("alluvial CSV: bad row " + std::to_string(i));
    }
  }
  return rows;
}

}  // namespace askew
