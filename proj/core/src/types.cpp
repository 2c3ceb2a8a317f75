#include "askew/types.hpp"

namespace askew {

std::string_view to_string(Component c) {
  switch (c) {
    case Component::In: return "IN";
    case Component::Lscc: return "LSCC";
    case Component::Out: return "OUT";
    case Component::Tendrils: return "TENDRILS";
    case Component::Disc: return "DISC";
  }
  return "?";
}

std::optional<Component> parse_component(std::string_view name) {
  for (Component c : kComponents) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

}  // namespace askew
