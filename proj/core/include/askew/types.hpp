#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace askew {

/// External user handle. Graph code interns these to dense indices.
using UserId = std::string;

/// The five components of a bow-tie decomposition, in report order.
enum class Component : std::uint8_t { In, Lscc, Out, Tendrils, Disc };

inline constexpr std::size_t kComponentCount = 5;
inline constexpr std::array<Component, kComponentCount> kComponents{
    Component::In, Component::Lscc, Component::Out, Component::Tendrils, Component::Disc};

constexpr std::size_t index_of(Component c) { return static_cast<std::size_t>(c); }

/// "IN", "LSCC", "OUT", "TENDRILS", "DISC".
std::string_view to_string(Component c);
std::optional<Component> parse_component(std::string_view name);

/// Fatal input problems: unreadable files, missing resources.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid run configuration (bad flag values, missing required resources).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs that violate a cross-structure precondition, e.g. a tweet without a score.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace askew
