#include "lexconf/isomorphism.hpp"

#include <algorithm>
#include <numeric>

#include "lexconf/errors.hpp"

namespace lexconf {
namespace {

using Coloring = std::vector<std::uint32_t>;
using Perm = std::vector<std::uint32_t>;

// Points are vertices 0 .. v-1, lines v .. 2v-1.
struct Graph {
  std::size_t v = 0;
  std::vector<std::vector<std::uint32_t>> adj;
};

Graph levi(const Configuration& c) {
  Graph g;
  g.v = c.v;
  g.adj.resize(c.v + c.lines.size());
  for (std::size_t l = 0; l < c.lines.size(); ++l) {
    const auto lv = static_cast<std::uint32_t>(c.v + l);
    for (auto p : c.lines[l]) {
      g.adj[lv].push_back(p);
      g.adj[p].push_back(lv);
    }
  }
  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  return g;
}

Coloring initial_coloring(const Graph& g) {
  Coloring c(g.adj.size(), 0);
  for (std::size_t i = g.v; i < c.size(); ++i) c[i] = 1;
  return c;
}

std::uint32_t color_count(const Coloring& a, const Coloring& b) {
  std::uint32_t top = 0;
  for (auto x : a) top = std::max(top, x + 1);
  for (auto x : b) top = std::max(top, x + 1);
  return top;
}

// Joint refinement of both colourings. Signatures are ranked over the union,
// so equal colours mean the same thing on both sides. False when the class
// sizes disagree, which rules out any isomorphism extending the colouring.
bool refine(const Graph& ga, Coloring& ca, const Graph& gb, Coloring& cb) {
  const std::size_t na = ga.adj.size();
  const std::size_t total = na + gb.adj.size();
  std::uint32_t classes = color_count(ca, cb);
  std::vector<std::vector<std::uint32_t>> sig(total);
  std::vector<std::uint32_t> order(total);
  for (;;) {
    for (std::size_t i = 0; i < total; ++i) {
      const bool left = i < na;
      const auto& g = left ? ga : gb;
      const auto& c = left ? ca : cb;
      const std::size_t u = left ? i : i - na;
      auto& s = sig[i];
      s.clear();
      s.push_back(c[u]);
      for (auto w : g.adj[u]) s.push_back(c[w]);
      std::sort(s.begin() + 1, s.end());
    }
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) { return sig[x] < sig[y]; });
    std::uint32_t rank = 0;
    std::vector<std::int64_t> balance;
    for (std::size_t t = 0; t < total; ++t) {
      if (t > 0 && sig[order[t]] != sig[order[t - 1]]) ++rank;
      const std::uint32_t i = order[t];
      if (rank >= balance.size()) balance.push_back(0);
      if (i < na) {
        ca[i] = rank;
        ++balance[rank];
      } else {
        cb[i - na] = rank;
        --balance[rank];
      }
    }
    for (auto x : balance)
      if (x != 0) return false;
    const std::uint32_t now = rank + 1;
    if (now == classes) return true;
    classes = now;
  }
}

// Largest non-singleton cell, lowest colour on ties. nullopt when discrete.
// Large cells hold vertices in general position, which in planes generate
// far more structure than, say, the lines through one point.
std::optional<std::uint32_t> target_cell(const Coloring& c) {
  std::vector<std::uint32_t> size(color_count(c, {}), 0);
  for (auto x : c) ++size[x];
  std::optional<std::uint32_t> best;
  for (std::uint32_t col = 0; col < size.size(); ++col)
    if (size[col] > 1 && (!best || size[col] > size[*best])) best = col;
  return best;
}

bool is_isomorphism(const Graph& ga, const Graph& gb, const Perm& map) {
  std::vector<std::uint32_t> image;
  for (std::size_t u = 0; u < ga.adj.size(); ++u) {
    image.clear();
    for (auto w : ga.adj[u]) image.push_back(map[w]);
    std::sort(image.begin(), image.end());
    if (image != gb.adj[map[u]]) return false;
  }
  return true;
}

std::optional<Perm> search(const Graph& ga, Coloring ca, const Graph& gb, Coloring cb) {
  if (!refine(ga, ca, gb, cb)) return std::nullopt;
  const auto cell = target_cell(ca);
  if (!cell) {
    std::vector<std::uint32_t> by_color(ca.size());
    for (std::uint32_t u = 0; u < cb.size(); ++u) by_color[cb[u]] = u;
    Perm map(ca.size());
    for (std::uint32_t u = 0; u < ca.size(); ++u) map[u] = by_color[ca[u]];
    if (is_isomorphism(ga, gb, map)) return map;
    return std::nullopt;
  }
  const std::uint32_t fresh = color_count(ca, cb);
  const auto x = static_cast<std::uint32_t>(std::find(ca.begin(), ca.end(), *cell) - ca.begin());
  for (std::uint32_t y = 0; y < cb.size(); ++y) {
    if (cb[y] != *cell) continue;
    Coloring na = ca;
    Coloring nb = cb;
    na[x] = fresh;
    nb[y] = fresh;
    if (auto found = search(ga, std::move(na), gb, std::move(nb))) return found;
  }
  return std::nullopt;
}

void check_budget(const Configuration& c, std::size_t budget) {
  const std::size_t vertices = c.v + c.lines.size();
  if (vertices > budget)
    throw SizeLimitError("Levi graph with " + std::to_string(vertices) + " vertices exceeds the budget of " +
                         std::to_string(budget));
}

std::vector<char> orbit_of(std::uint32_t x, const std::vector<Perm>& gens, std::size_t size) {
  std::vector<char> seen(size, 0);
  std::vector<std::uint32_t> queue{x};
  seen[x] = 1;
  while (!queue.empty()) {
    const auto u = queue.back();
    queue.pop_back();
    for (const auto& g : gens) {
      if (!seen[g[u]]) {
        seen[g[u]] = 1;
        queue.push_back(g[u]);
      }
    }
  }
  return seen;
}

}  // namespace

std::optional<Isomorphism> find_isomorphism(const Configuration& a, const Configuration& b,
                                            std::size_t vertex_budget) {
  check_budget(a, vertex_budget);
  check_budget(b, vertex_budget);
  if (a.v != b.v || a.lines.size() != b.lines.size()) return std::nullopt;
  const Graph ga = levi(a);
  const Graph gb = levi(b);
  auto map = search(ga, initial_coloring(ga), gb, initial_coloring(gb));
  if (!map) return std::nullopt;
  Isomorphism iso;
  for (std::size_t p = 0; p < a.v; ++p) iso.points.push_back((*map)[p]);
  for (std::size_t l = 0; l < a.lines.size(); ++l) iso.lines.push_back(static_cast<std::uint32_t>((*map)[a.v + l] - b.v));
  return iso;
}

bool isomorphic(const Configuration& a, const Configuration& b, std::size_t vertex_budget) {
  return find_isomorphism(a, b, vertex_budget).has_value();
}

std::uint64_t automorphism_count(const Configuration& c, std::size_t vertex_budget) {
  check_budget(c, vertex_budget);
  const Graph g = levi(c);
  Coloring col = initial_coloring(g);
  std::uint64_t order = 1;
  // Orbit-stabiliser down the leftmost path: |Aut| is the product of the orbit
  // sizes of each individualised vertex in the stabiliser of the earlier ones.
  for (;;) {
    Coloring copy = col;
    refine(g, col, g, copy);
    const auto cell = target_cell(col);
    if (!cell) break;
    const std::uint32_t fresh = color_count(col, {});
    const auto x = static_cast<std::uint32_t>(std::find(col.begin(), col.end(), *cell) - col.begin());
    std::vector<Perm> gens;  // automorphisms fixing every earlier vertex
    auto orbit = orbit_of(x, gens, col.size());
    for (std::uint32_t y = 0; y < col.size(); ++y) {
      if (col[y] != *cell || orbit[y]) continue;
      Coloring left = col;
      Coloring right = col;
      left[x] = fresh;
      right[y] = fresh;
      if (auto found = search(g, std::move(left), g, std::move(right))) {
        gens.push_back(std::move(*found));
        orbit = orbit_of(x, gens, col.size());
      }
    }
    const auto size = static_cast<std::uint64_t>(std::count(orbit.begin(), orbit.end(), 1));
    if (__builtin_mul_overflow(order, size, &order))
      throw SizeLimitError("automorphism group order does not fit in 64 bits");
    col[x] = fresh;
  }
  return order;
}

Configuration relabel(const Configuration& c, const std::vector<std::uint32_t>& point_map,
                      const std::vector<std::uint32_t>& line_map) {
  if (point_map.size() != c.v || line_map.size() != c.lines.size())
    throw InvalidParameter("relabel: permutation sizes do not match the configuration");
  Configuration out = c;
  for (std::size_t l = 0; l < c.lines.size(); ++l) {
    auto& dst = out.lines[line_map[l]];
    dst.clear();
    for (auto p : c.lines[l]) dst.push_back(point_map[p]);
    std::sort(dst.begin(), dst.end());
  }
  return out;
}

}  // namespace lexconf
