#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "askew/graph.hpp"
#include "askew/types.hpp"

namespace askew {

/// Strongly connected components over the vertex indices of one graph.
///
/// SCC ids are assigned in order of each component's smallest member index,
/// which (users being interned lexicographically) is the order of each
/// component's smallest UserId.
struct SccDecomposition {
  std::vector<std::uint32_t> component_of;        // vertex index -> scc id
  std::vector<std::vector<std::uint32_t>> members;  // scc id -> sorted vertex indices
  std::optional<std::uint32_t> lscc_id;           // absent only for the empty graph

  std::size_t count() const { return members.size(); }
};

/// Iterative Tarjan. LSCC is the largest SCC, ties broken by smallest member id.
SccDecomposition scc_decompose(const ConversationGraph& g);

/// Diagnostic refinement of TENDRILS. Everything outside TENDRILS is None.
enum class TendrilRole : std::uint8_t {
  None,
  FromIn,  // reached from IN, does not reach OUT
  ToOut,   // reaches OUT, not reached from IN
  Tube,    // on an IN -> OUT path that bypasses LSCC
  Other,   // weakly attached only
};

std::string_view to_string(TendrilRole role);

/// Total labelling of a graph's users. Keeps its own copy of the (sorted) user
/// ids so decompositions of different slices can be compared by user.
class BowTieDecomposition {
 public:
  BowTieDecomposition() = default;
  BowTieDecomposition(std::vector<UserId> users, std::vector<Component> labels,
                      std::vector<TendrilRole> roles);

  std::size_t user_count() const { return users_.size(); }
  std::span<const UserId> users() const { return users_; }
  std::span<const Component> labels() const { return labels_; }
  Component label(std::size_t index) const { return labels_[index]; }
  TendrilRole role(std::size_t index) const { return roles_[index]; }

  std::optional<Component> label_of(std::string_view user) const;

  std::size_t size(Component c) const { return sizes_[index_of(c)]; }
  std::vector<UserId> members(Component c) const;
  UserSet member_set(Component c) const;
  std::vector<bool> mask(Component c) const;

  bool operator==(const BowTieDecomposition& other) const {
    return users_ == other.users_ && labels_ == other.labels_;
  }

 private:
  std::vector<UserId> users_;
  std::vector<Component> labels_;
  std::vector<TendrilRole> roles_;
  std::array<std::size_t, kComponentCount> sizes_{};
};

/// Labels every user by reachability to and from the LSCC: forward search
/// gives OUT, backward search gives IN, an undirected sweep separates
/// TENDRILS from DISC. An edgeless graph gets a singleton LSCC (smallest id)
/// and everything else in DISC; the empty graph gets an empty decomposition.
BowTieDecomposition bowtie_decompose(const ConversationGraph& g);
BowTieDecomposition bowtie_decompose(const ConversationGraph& g, const SccDecomposition& scc);

/// |IN| > |LSCC| and |IN| > |OUT|.
bool is_askew(const BowTieDecomposition& d);

struct ComponentStats {
  std::size_t user_count = 0;
  std::size_t tweet_count = 0;
  std::array<std::size_t, kComponentCount> component_sizes{};
  std::array<double, kComponentCount> mass_pct{};
  /// |LSCC| over the summed size of SCCs with >= 2 members; absent when none exist.
  std::optional<double> lscc_scc_mass_pct;
  /// Conversational tweets touching LSCC on either end over all conversational
  /// tweets; absent when no tweet has a recipient.
  std::optional<double> lscc_flow_pct;
  bool is_askew = false;

  double mass(Component c) const { return mass_pct[index_of(c)]; }
  bool operator==(const ComponentStats&) const = default;
};

/// `d` must come from `g`. An empty graph yields all-zero masses.
ComponentStats component_stats(const ConversationGraph& g, const BowTieDecomposition& d);
ComponentStats component_stats(const ConversationGraph& g, const SccDecomposition& scc,
                               const BowTieDecomposition& d);

/// 𝒯(src -> dst) between two components, labelled with their names.
FlowSet component_flow(const ConversationGraph& g, const BowTieDecomposition& d, Component src,
                       Component dst);

/// `user,component` rows with a header, in user order.
void write_assignment_csv(std::ostream& out, const BowTieDecomposition& d);
std::vector<std::pair<UserId, Component>> read_assignment_csv(std::istream& in);

std::string stats_to_json(const ComponentStats& stats);
ComponentStats stats_from_json(std::string_view json);

}  // namespace askew
