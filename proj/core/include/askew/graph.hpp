#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "askew/ingest.hpp"
#include "askew/types.hpp"

namespace askew {

using UserSet = std::set<UserId>;

/// Half-open interval [start, end) of epoch seconds.
struct TimeWindow {
  std::int64_t start;
  std::int64_t end;

  TimeWindow(std::int64_t start_, std::int64_t end_);
  bool contains(std::int64_t t) const { return start <= t && t < end; }
};

struct Edge {
  UserId src;
  UserId dst;
  std::uint64_t weight = 0;

  bool operator==(const Edge&) const = default;
};

/// Tweets authored in the source set with at least one recipient in the
/// target set, ordered by (timestamp, tweet_id). Each tweet appears once.
struct FlowSet {
  std::string source_label;
  std::string target_label;
  std::vector<std::string> tweet_ids;
};

/// Weighted directed user graph together with the tweets that induced it.
///
/// Users are interned in lexicographic order, so a vertex index doubles as the
/// rank of its id; every derived structure that iterates by index is therefore
/// deterministic. Immutable after construction.
class ConversationGraph {
 public:
  using Index = std::uint32_t;

  ConversationGraph() = default;

  /// Graph without tweet-level detail, e.g. re-read from a CSV export.
  static ConversationGraph from_edges(std::vector<UserId> users, std::span<const Edge> edges);

  std::size_t user_count() const { return users_.size(); }
  std::size_t edge_count() const { return out_targets_.size(); }
  std::size_t tweet_count() const { return tweets_.size(); }

  std::span<const UserId> users() const { return users_; }
  const UserId& user(Index i) const { return users_[i]; }
  std::optional<Index> index_of(std::string_view user) const;
  bool contains(std::string_view user) const { return index_of(user).has_value(); }

  std::span<const Index> successors(Index u) const;
  std::span<const std::uint64_t> successor_weights(Index u) const;
  std::span<const Index> predecessors(Index u) const;

  /// 0 when there is no edge.
  std::uint64_t weight(std::string_view src, std::string_view dst) const;
  std::uint64_t total_weight() const;

  /// All edges sorted by (src, dst).
  std::vector<Edge> edges() const;

  /// Tweets in input order.
  std::span<const TweetRecord> tweets() const { return tweets_; }
  const TweetRecord* find_tweet(std::string_view tweet_id) const;

  Index tweet_author(std::size_t t) const { return tweet_author_[t]; }
  std::span<const Index> tweet_recipients(std::size_t t) const;

  friend ConversationGraph build_graph(std::vector<TweetRecord> tweets,
                                       std::span<const UserId> extra_users);

 private:
  void build_adjacency(std::vector<std::uint64_t> keyed_edges, std::vector<std::uint64_t> weights);

  std::vector<UserId> users_;

  std::vector<std::size_t> out_offsets_{0};
  std::vector<Index> out_targets_;
  std::vector<std::uint64_t> out_weights_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<Index> in_sources_;

  std::vector<TweetRecord> tweets_;
  std::vector<std::size_t> tweet_order_;  // tweet positions sorted by id
  std::vector<Index> tweet_author_;
  std::vector<std::size_t> recipient_offsets_{0};
  std::vector<Index> recipient_indices_;
};

/// Users = all authors and recipients (plus `extra_users`, which become
/// isolated vertices when no tweet touches them). Edge weight is the number
/// of tweets authored by src that address dst.
ConversationGraph build_graph(std::vector<TweetRecord> tweets,
                              std::span<const UserId> extra_users = {});

/// Rebuilds from the tweets created inside `window`.
ConversationGraph time_slice(const ConversationGraph& g, const TimeWindow& window);

/// Vertex set users ∩ g.users; keeps tweets whose author is inside and that
/// still have a recipient inside, with recipients restricted to the set.
ConversationGraph induced_subgraph(const ConversationGraph& g, const UserSet& users);

FlowSet cut_flow(const ConversationGraph& g, const UserSet& src, const UserSet& dst,
                 std::string source_label = "src", std::string target_label = "dst");

/// Same predicate over index masks of length g.user_count().
FlowSet cut_flow(const ConversationGraph& g, const std::vector<bool>& src_mask,
                 const std::vector<bool>& dst_mask, std::string source_label,
                 std::string target_label);

/// `src,dst,weight` with a header row, sorted by (src, dst).
void write_edge_csv(std::ostream& out, const ConversationGraph& g);
/// `user` with a header row, sorted.
void write_vertex_csv(std::ostream& out, const ConversationGraph& g);
/// Inverse of the two writers. Throws IngestError on malformed rows.
ConversationGraph read_graph_csv(std::istream& vertices, std::istream& edges);

}  // namespace askew
