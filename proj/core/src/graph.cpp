#include "askew/graph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "askew/csv.hpp"

namespace askew {

TimeWindow::TimeWindow(std::int64_t start_, std::int64_t end_) : start(start_), end(end_) {
  if (!(start < end)) throw std::invalid_argument("time window needs start < end");
}

namespace {

using Index = ConversationGraph::Index;

constexpr std::uint64_t edge_key(Index src, Index dst) {
  return (static_cast<std::uint64_t>(src) << 32) | dst;
}
constexpr Index key_src(std::uint64_t key) { return static_cast<Index>(key >> 32); }
constexpr Index key_dst(std::uint64_t key) { return static_cast<Index>(key & 0xffffffffu); }

/// Sorts keys and folds duplicates, summing their weights.
void fold_edges(std::vector<std::uint64_t>& keys, std::vector<std::uint64_t>& weights) {
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::vector<std::uint64_t> folded_keys;
  std::vector<std::uint64_t> folded_weights;
  for (std::size_t i : order) {
    if (!folded_keys.empty() && folded_keys.back() == keys[i]) {
      folded_weights.back() += weights[i];
    } else {
      folded_keys.push_back(keys[i]);
      folded_weights.push_back(weights[i]);
    }
  }
  keys = std::move(folded_keys);
  weights = std::move(folded_weights);
}

}  // namespace

void ConversationGraph::build_adjacency(std::vector<std::uint64_t> keys, std::vector<std::uint64_t> weights) {
  const std::size_t n = users_.size();
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  out_targets_.resize(keys.size());
  out_weights_ = std::move(weights);
  in_sources_.resize(keys.size());

  // keys are sorted by (src, dst), so the out-CSR falls straight out of them.
  for (std::size_t e = 0; e < keys.size(); ++e) {
    ++out_offsets_[key_src(keys[e]) + 1];
    ++in_offsets_[key_dst(keys[e]) + 1];
    out_targets_[e] = key_dst(keys[e]);
  }
  std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());

  std::vector<std::size_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
  for (std::uint64_t key : keys) in_sources_[cursor[key_dst(key)]++] = key_src(key);
}

ConversationGraph build_graph(std::vector<TweetRecord> tweets, std::span<const UserId> extra_users) {
  ConversationGraph g;

  std::vector<UserId> names(extra_users.begin(), extra_users.end());
  for (const TweetRecord& t : tweets) {
    names.push_back(t.author);
    names.insert(names.end(), t.recipients.begin(), t.recipients.end());
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  g.users_ = std::move(names);
  if (g.users_.size() > std::numeric_limits<Index>::max()) {
    throw std::length_error("too many users for 32-bit vertex indices");
  }

  std::vector<std::uint64_t> keys;
  g.tweet_author_.reserve(tweets.size());
  g.recipient_offsets_.reserve(tweets.size() + 1);
  for (const TweetRecord& t : tweets) {
    const Index author = *g.index_of(t.author);
    g.tweet_author_.push_back(author);
    for (const UserId& r : t.recipients) {
      const Index dst = *g.index_of(r);
      if (dst == author) continue;
      g.recipient_indices_.push_back(dst);
      keys.push_back(edge_key(author, dst));
    }
    g.recipient_offsets_.push_back(g.recipient_indices_.size());
  }
  std::vector<std::uint64_t> weights(keys.size(), 1);
  fold_edges(keys, weights);
  g.build_adjacency(std::move(keys), std::move(weights));

  g.tweets_ = std::move(tweets);
  g.tweet_order_.resize(g.tweets_.size());
  std::iota(g.tweet_order_.begin(), g.tweet_order_.end(), std::size_t{0});
  std::sort(g.tweet_order_.begin(), g.tweet_order_.end(), [&g](std::size_t a, std::size_t b) {
    return g.tweets_[a].tweet_id < g.tweets_[b].tweet_id;
  });
  return g;
}

ConversationGraph ConversationGraph::from_edges(std::vector<UserId> users, std::span<const Edge> edges) {
  for (const Edge& e : edges) {
    if (e.src == e.dst) throw std::invalid_argument("self-loop edge for user '" + e.src + "'");
    users.push_back(e.src);
    users.push_back(e.dst);
  }
  ConversationGraph g;
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());
  g.users_ = std::move(users);

  std::vector<std::uint64_t> keys;
  std::vector<std::uint64_t> weights;
  for (const Edge& e : edges) {
    keys.push_back(edge_key(*g.index_of(e.src), *g.index_of(e.dst)));
    weights.push_back(e.weight);
  }
  fold_edges(keys, weights);
  g.build_adjacency(std::move(keys), std::move(weights));
  return g;
}

std::optional<Index> ConversationGraph::index_of(std::string_view user) const {
  auto it = std::lower_bound(users_.begin(), users_.end(), user,
                             [](const UserId& a, std::string_view b) { return a < b; });
  if (it == users_.end() || *it != user) return std::nullopt;
  return static_cast<Index>(it - users_.begin());
}

std::span<const Index> ConversationGraph::successors(Index u) const {
  return {out_targets_.data() + out_offsets_[u], out_offsets_[u + 1] - out_offsets_[u]};
}

std::span<const std::uint64_t> ConversationGraph::successor_weights(Index u) const {
  return {out_weights_.data() + out_offsets_[u], out_offsets_[u + 1] - out_offsets_[u]};
}

std::span<const Index> ConversationGraph::predecessors(Index u) const {
  return {in_sources_.data() + in_offsets_[u], in_offsets_[u + 1] - in_offsets_[u]};
}

std::span<const Index> ConversationGraph::tweet_recipients(std::size_t t) const {
  return {recipient_indices_.data() + recipient_offsets_[t], recipient_offsets_[t + 1] - recipient_offsets_[t]};
}

std::uint64_t ConversationGraph::weight(std::string_view src, std::string_view dst) const {
  const auto s = index_of(src);
  const auto d = index_of(dst);
  if (!s || !d) return 0;
  const auto succ = successors(*s);
  auto it = std::lower_bound(succ.begin(), succ.end(), *d);
  if (it == succ.end() || *it != *d) return 0;
  return successor_weights(*s)[static_cast<std::size_t>(it - succ.begin())];
}

std::uint64_t ConversationGraph::total_weight() const {
  return std::accumulate(out_weights_.begin(), out_weights_.end(), std::uint64_t{0});
}

std::vector<Edge> ConversationGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Index u = 0; u < users_.size(); ++u) {
    const auto succ = successors(u);
    const auto w = successor_weights(u);
    for (std::size_t i = 0; i < succ.size(); ++i) out.push_back({users_[u], users_[succ[i]], w[i]});
  }
  return out;
}

const TweetRecord* ConversationGraph::find_tweet(std::string_view tweet_id) const {
  auto it = std::lower_bound(tweet_order_.begin(), tweet_order_.end(), tweet_id,
                             [this](std::size_t t, std::string_view id) { return tweets_[t].tweet_id < id; });
  if (it == tweet_order_.end() || tweets_[*it].tweet_id != tweet_id) return nullptr;
  return &tweets_[*it];
}

ConversationGraph time_slice(const ConversationGraph& g, const TimeWindow& window) {
  std::vector<TweetRecord> kept;
  for (const TweetRecord& t : g.tweets()) {
    if (window.contains(t.timestamp)) kept.push_back(t);
  }
  return build_graph(std::move(kept));
}

ConversationGraph induced_subgraph(const ConversationGraph& g, const UserSet& users) {
  std::vector<UserId> vertices;
  for (const UserId& u : users) {
    if (g.contains(u)) vertices.push_back(u);
  }
  std::vector<TweetRecord> kept;
  for (const TweetRecord& t : g.tweets()) {
    if (!users.contains(t.author)) continue;
    TweetRecord restricted = t;
    std::erase_if(restricted.recipients, [&users](const UserId& r) { return !users.contains(r); });
    if (restricted.recipients.empty()) continue;
    kept.push_back(std::move(restricted));
  }
  return build_graph(std::move(kept), vertices);
}

FlowSet cut_flow(const ConversationGraph& g, const std::vector<bool>& src_mask,
                 const std::vector<bool>& dst_mask, std::string source_label, std::string target_label) {
  if (src_mask.size() != g.user_count() || dst_mask.size() != g.user_count()) {
    throw std::invalid_argument("cut_flow mask size does not match the graph");
  }
  std::vector<std::size_t> hits;
  for (std::size_t t = 0; t < g.tweet_count(); ++t) {
    if (!src_mask[g.tweet_author(t)]) continue;
    const auto rs = g.tweet_recipients(t);
    if (std::any_of(rs.begin(), rs.end(), [&dst_mask](Index r) { return dst_mask[r]; })) hits.push_back(t);
  }
  const auto tweets = g.tweets();
  std::sort(hits.begin(), hits.end(), [&tweets](std::size_t a, std::size_t b) {
    return std::tie(tweets[a].timestamp, tweets[a].tweet_id) < std::tie(tweets[b].timestamp, tweets[b].tweet_id);
  });
  FlowSet flow{std::move(source_label), std::move(target_label), {}};
  flow.tweet_ids.reserve(hits.size());
  for (std::size_t t : hits) flow.tweet_ids.push_back(tweets[t].tweet_id);
  return flow;
}

FlowSet cut_flow(const ConversationGraph& g, const UserSet& src, const UserSet& dst, std::string source_label,
                 std::string target_label) {
  std::vector<bool> src_mask(g.user_count(), false);
  std::vector<bool> dst_mask(g.user_count(), false);
  for (const UserId& u : src) {
    if (auto i = g.index_of(u)) src_mask[*i] = true;
  }
  for (const UserId& u : dst) {
    if (auto i = g.index_of(u)) dst_mask[*i] = true;
  }
  return cut_flow(g, src_mask, dst_mask, std::move(source_label), std::move(target_label));
}

void write_edge_csv(std::ostream& out, const ConversationGraph& g) {
  out << "src,dst,weight\n";
  for (const Edge& e : g.edges()) out << csv::join({e.src, e.dst, std::to_string(e.weight)}) << '\n';
}

void write_vertex_csv(std::ostream& out, const ConversationGraph& g) {
  out << "user\n";
  for (const UserId& u : g.users()) out << csv::escape(u) << '\n';
}

ConversationGraph read_graph_csv(std::istream& vertices, std::istream& edges) {
  try {
    const auto vertex_lines = csv::read_lines(vertices);
    if (vertex_lines.empty() || vertex_lines.front() != "user") throw IngestError("vertex CSV: bad header");
    std::vector<UserId> users;
    for (std::size_t i = 1; i < vertex_lines.size(); ++i) {
      auto fields = csv::split(vertex_lines[i]);
      if (fields.size() != 1 || fields[0].empty()) throw IngestError("vertex CSV: bad row " + std::to_string(i));
      users.push_back(std::move(fields[0]));
    }

    const auto edge_lines = csv::read_lines(edges);
    if (edge_lines.empty() || edge_lines.front() != "src,dst,weight") throw IngestError("edge CSV: bad header");
    std::vector<Edge> parsed;
    for (std::size_t i = 1; i < edge_lines.size(); ++i) {
      auto fields = csv::split(edge_lines[i]);
      if (fields.size() != 3) throw IngestError("edge CSV: bad row " + std::to_string(i));
      const long long w = csv::parse_integer(fields[2]);
      if (w < 0) throw IngestError("edge CSV: negative weight on row " + std::to_string(i));
      parsed.push_back({std::move(fields[0]), std::move(fields[1]), static_cast<std::uint64_t>(w)});
    }
    return ConversationGraph::from_edges(std::move(users), parsed);
  } catch (const std::invalid_argument& e) {
    throw IngestError(std::string("graph CSV: ") + e.what());
  }
}

}  // namespace askew
