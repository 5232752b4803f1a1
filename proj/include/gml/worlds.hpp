#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "gml/errors.hpp"
#include "gml/worldset.hpp"

namespace gml {

// World identifiers are kept sorted lexicographically; indices elsewhere in a
// model refer to positions in the sorted list.
inline std::vector<std::string> canonical_worlds(std::vector<std::string> worlds) {
  if (worlds.empty()) throw input_error("a model needs at least one world");
  std::sort(worlds.begin(), worlds.end());
  if (std::adjacent_find(worlds.begin(), worlds.end()) != worlds.end())
    throw input_error("duplicate world identifier");
  return worlds;
}

inline int find_world(const std::vector<std::string>& worlds, std::string_view name) {
  auto it = std::lower_bound(worlds.begin(), worlds.end(), name);
  if (it == worlds.end() || *it != name) return -1;
  return static_cast<int>(it - worlds.begin());
}

inline int require_world(const std::vector<std::string>& worlds, std::string_view name) {
  int i = find_world(worlds, name);
  if (i < 0) throw input_error("unknown world \"" + std::string(name) + "\"");
  return i;
}

inline std::vector<std::string> set_names(const std::vector<std::string>& worlds,
                                          const WorldSet& s) {
  std::vector<std::string> out;
  for (int i : s.members()) out.push_back(worlds[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace gml
