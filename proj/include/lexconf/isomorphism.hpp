#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lexconf/verifier.hpp"

namespace lexconf {

/// Levi graphs larger than this (points + lines) are refused.
inline constexpr std::size_t kDefaultVertexBudget = 10'000;

/// Point map and line map, both 0-based, taking the first structure onto the
/// second. Points go to points and lines to lines.
struct Isomorphism {
  std::vector<std::uint32_t> points;
  std::vector<std::uint32_t> lines;
};

/// Colour refinement plus individualisation search over the Levi graphs. Every
/// returned map is checked edge by edge. Throws SizeLimitError over budget.
std::optional<Isomorphism> find_isomorphism(const Configuration& a, const Configuration& b,
                                            std::size_t vertex_budget = kDefaultVertexBudget);

bool isomorphic(const Configuration& a, const Configuration& b, std::size_t vertex_budget = kDefaultVertexBudget);

/// Order of the group of incidence-preserving point/line permutations
/// (dualities excluded). Throws SizeLimitError over budget or if the order
/// does not fit in 64 bits.
std::uint64_t automorphism_count(const Configuration& c, std::size_t vertex_budget = kDefaultVertexBudget);

/// Renames point p to point_map[p] and moves line i to position line_map[i].
Configuration relabel(const Configuration& c, const std::vector<std::uint32_t>& point_map,
                      const std::vector<std::uint32_t>& line_map);

}  // namespace lexconf
