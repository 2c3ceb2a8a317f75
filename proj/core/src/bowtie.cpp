#include "askew/bowtie.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>

#include "askew/csv.hpp"
#include "json.hpp"

namespace askew {

using Index = ConversationGraph::Index;

SccDecomposition scc_decompose(const ConversationGraph& g) {
  const std::size_t n = g.user_count();
  constexpr Index kUnvisited = std::numeric_limits<Index>::max();

  std::vector<Index> order(n, kUnvisited);  // discovery index
  std::vector<Index> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Index> stack;
  std::vector<std::pair<Index, std::size_t>> frames;  // (vertex, next successor slot)
  std::vector<std::vector<Index>> raw;
  Index counter = 0;

  for (Index root = 0; root < n; ++root) {
    if (order[root] != kUnvisited) continue;
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    frames.emplace_back(root, 0);

    while (!frames.empty()) {
      auto& [v, slot] = frames.back();
      const auto succ = g.successors(v);
      if (slot < succ.size()) {
        const Index w = succ[slot++];
        if (order[w] == kUnvisited) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], order[w]);
        }
        continue;
      }

      const Index done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const Index parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == order[done]) {
        std::vector<Index> component;
        Index w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != done);
        std::sort(component.begin(), component.end());
        raw.push_back(std::move(component));
      }
    }
  }

  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

  SccDecomposition result;
  result.component_of.assign(n, 0);
  result.members = std::move(raw);
  std::size_t best = 0;
  for (std::uint32_t id = 0; id < result.members.size(); ++id) {
    for (Index v : result.members[id]) result.component_of[v] = id;
    if (result.members[id].size() > best) {
      best = result.members[id].size();
      result.lscc_id = id;
    }
  }
  return result;
}

std::string_view to_string(TendrilRole role) {
  switch (role) {
    case TendrilRole::None: return "none";
    case TendrilRole::FromIn: return "tendril_in";
    case TendrilRole::ToOut: return "tendril_out";
    case TendrilRole::Tube: return "tube";
    case TendrilRole::Other: return "other";
  }
  return "?";
}

BowTieDecomposition::BowTieDecomposition(std::vector<UserId> users, std::vector<Component> labels,
                                         std::vector<TendrilRole> roles)
    : users_(std::move(users)), labels_(std::move(labels)), roles_(std::move(roles)) {
  if (labels_.size() != users_.size() || roles_.size() != users_.size()) {
    throw std::invalid_argument("bow-tie labels must cover every user");
  }
  if (!std::is_sorted(users_.begin(), users_.end())) throw std::invalid_argument("bow-tie users must be sorted");
  for (Component c : labels_) ++sizes_[index_of(c)];
}

std::optional<Component> BowTieDecomposition::label_of(std::string_view user) const {
  auto it = std::lower_bound(users_.begin(), users_.end(), user,
                             [](const UserId& a, std::string_view b) { return a < b; });
  if (it == users_.end() || *it != user) return std::nullopt;
  return labels_[static_cast<std::size_t>(it - users_.begin())];
}

std::vector<UserId> BowTieDecomposition::members(Component c) const {
  std::vector<UserId> out;
  for (std::size_t i = 0; i < users_.size(); ++i) {
    if (labels_[i] == c) out.push_back(users_[i]);
  }
  return out;
}

UserSet BowTieDecomposition::member_set(Component c) const {
  auto m = members(c);
  return UserSet(m.begin(), m.end());
}

std::vector<bool> BowTieDecomposition::mask(Component c) const {
  std::vector<bool> out(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) out[i] = labels_[i] == c;
  return out;
}

namespace {

enum class Direction { Forward, Backward, Undirected };

/// Marks every vertex reachable from the seeds (seeds included).
std::vector<bool> sweep(const ConversationGraph& g, const std::vector<bool>& seeds, Direction dir) {
  std::vector<bool> seen = seeds;
  std::vector<Index> queue;
  for (Index v = 0; v < seeds.size(); ++v) {
    if (seeds[v]) queue.push_back(v);
  }
  auto visit = [&](std::span<const Index> next) {
    for (Index w : next) {
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  };
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Index v = queue[head];
    if (dir != Direction::Backward) visit(g.successors(v));
    if (dir != Direction::Forward) visit(g.predecessors(v));
  }
  return seen;
}

}  // namespace

BowTieDecomposition bowtie_decompose(const ConversationGraph& g) { return bowtie_decompose(g, scc_decompose(g)); }

BowTieDecomposition bowtie_decompose(const ConversationGraph& g, const SccDecomposition& scc) {
  const std::size_t n = g.user_count();
  std::vector<UserId> users(g.users().begin(), g.users().end());
  if (n == 0 || !scc.lscc_id) return BowTieDecomposition(std::move(users), {}, {});

  std::vector<bool> core(n, false);
  for (Index v : scc.members[*scc.lscc_id]) core[v] = true;

  const auto reached = sweep(g, core, Direction::Forward);
  const auto reaching = sweep(g, core, Direction::Backward);
  const auto weak = sweep(g, core, Direction::Undirected);

  std::vector<Component> labels(n, Component::Disc);
  std::vector<bool> in_mask(n, false);
  std::vector<bool> out_mask(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (core[v]) {
      labels[v] = Component::Lscc;
    } else if (reaching[v]) {
      labels[v] = Component::In;
      in_mask[v] = true;
    } else if (reached[v]) {
      labels[v] = Component::Out;
      out_mask[v] = true;
    } else if (weak[v]) {
      labels[v] = Component::Tendrils;
    }
  }

  const auto from_in = sweep(g, in_mask, Direction::Forward);
  const auto to_out = sweep(g, out_mask, Direction::Backward);
  std::vector<TendrilRole> roles(n, TendrilRole::None);
  for (std::size_t v = 0; v < n; ++v) {
    if (labels[v] != Component::Tendrils) continue;
    if (from_in[v] && to_out[v]) {
      roles[v] = TendrilRole::Tube;
    } else if (from_in[v]) {
      roles[v] = TendrilRole::FromIn;
    } else if (to_out[v]) {
      roles[v] = TendrilRole::ToOut;
    } else {
      roles[v] = TendrilRole::Other;
    }
  }
  return BowTieDecomposition(std::move(users), std::move(labels), std::move(roles));
}

bool is_askew(const BowTieDecomposition& d) {
  const std::size_t in = d.size(Component::In);
  return in > d.size(Component::Lscc) && in > d.size(Component::Out);
}

namespace {

void require_same_users(const ConversationGraph& g, const BowTieDecomposition& d) {
  if (d.user_count() != g.user_count() || !std::equal(d.users().begin(), d.users().end(), g.users().begin())) {
    throw std::invalid_argument("bow-tie decomposition does not belong to this graph");
  }
}

}  // namespace

ComponentStats component_stats(const ConversationGraph& g, const BowTieDecomposition& d) {
  return component_stats(g, scc_decompose(g), d);
}

ComponentStats component_stats(const ConversationGraph& g, const SccDecomposition& scc,
                               const BowTieDecomposition& d) {
  require_same_users(g, d);
  ComponentStats stats;
  stats.user_count = g.user_count();
  stats.tweet_count = g.tweet_count();
  stats.is_askew = is_askew(d);
  for (Component c : kComponents) {
    const std::size_t size = d.size(c);
    stats.component_sizes[index_of(c)] = size;
    stats.mass_pct[index_of(c)] = stats.user_count ? 100.0 * static_cast<double>(size) / stats.user_count : 0.0;
  }

  std::size_t nontrivial = 0;
  for (const auto& members : scc.members) {
    if (members.size() >= 2) nontrivial += members.size();
  }
  if (nontrivial > 0) {
    stats.lscc_scc_mass_pct = 100.0 * static_cast<double>(d.size(Component::Lscc)) / static_cast<double>(nontrivial);
  }

  std::size_t conversational = 0;
  std::size_t touching = 0;
  for (std::size_t t = 0; t < g.tweet_count(); ++t) {
    const auto rs = g.tweet_recipients(t);
    if (rs.empty()) continue;
    ++conversational;
    const bool hit = d.label(g.tweet_author(t)) == Component::Lscc ||
                     std::any_of(rs.begin(), rs.end(), [&d](Index r) { return d.label(r) == Component::Lscc; });
    if (hit) ++touching;
  }
  if (conversational > 0) {
    stats.lscc_flow_pct = 100.0 * static_cast<double>(touching) / static_cast<double>(conversational);
  }
  return stats;
}

FlowSet component_flow(const ConversationGraph& g, const BowTieDecomposition& d, Component src, Component dst) {
  require_same_users(g, d);
  return cut_flow(g, d.mask(src), d.mask(dst), std::string(to_string(src)), std::string(to_string(dst)));
}

void write_assignment_csv(std::ostream& out, const BowTieDecomposition& d) {
  out << "user,component\n";
  for (std::size_t i = 0; i < d.user_count(); ++i) {
    out << csv::escape(d.users()[i]) << ',' << to_string(d.label(i)) << '\n';
  }
}

std::vector<std::pair<UserId, Component>> read_assignment_csv(std::istream& in) {
  const auto lines = csv::read_lines(in);
  if (lines.empty() || lines.front() != "user,component") throw IngestError("assignment CSV: bad header");
  std::vector<std::pair<UserId, Component>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = csv::split(lines[i]);
    const auto c = fields.size() == 2 ? parse_component(fields[1]) : std::nullopt;
    if (!c) throw IngestError("assignment CSV: bad row " + std::to_string(i));
    rows.emplace_back(std::move(fields[0]), *c);
  }
  return rows;
}

std::string stats_to_json(const ComponentStats& stats) {
  nlohmann::ordered_json doc;
  doc["user_count"] = stats.user_count;
  doc["tweet_count"] = stats.tweet_count;
  for (Component c : kComponents) {
    const std::string name(to_string(c));
    doc["component_sizes"][name] = stats.component_sizes[index_of(c)];
  }
  for (Component c : kComponents) {
    const std::string name(to_string(c));
    doc["mass_pct"][name] = stats.mass_pct[index_of(c)];
  }
  doc["lscc_scc_mass_pct"] = stats.lscc_scc_mass_pct ? nlohmann::ordered_json(*stats.lscc_scc_mass_pct) : nullptr;
  doc["lscc_flow_pct"] = stats.lscc_flow_pct ? nlohmann::ordered_json(*stats.lscc_flow_pct) : nullptr;
  doc["is_askew"] = stats.is_askew;
  return doc.dump(2) + "\n";
}

ComponentStats stats_from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    ComponentStats stats;
    stats.user_count = doc.at("user_count").get<std::size_t>();
    stats.tweet_count = doc.at("tweet_count").get<std::size_t>();
    for (Component c : kComponents) {
      const std::string name(to_string(c));
      stats.component_sizes[index_of(c)] = doc.at("component_sizes").at(name).get<std::size_t>();
      stats.mass_pct[index_of(c)] = doc.at("mass_pct").at(name).get<double>();
    }
    if (!doc.at("lscc_scc_mass_pct").is_null()) stats.lscc_scc_mass_pct = doc["lscc_scc_mass_pct"].get<double>();
    if (!doc.at("lscc_flow_pct").is_null()) stats.lscc_flow_pct = doc["lscc_flow_pct"].get<double>();
    stats.is_askew = doc.at("is_askew").get<bool>();
    return stats;
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(std::string("component stats JSON: ") + e.what());
  }
}

}  // namespace askew
