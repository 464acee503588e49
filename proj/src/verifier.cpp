#include "lexconf/verifier.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "lexconf/errors.hpp"
#include "lexconf/galois_field.hpp"

namespace lexconf {
namespace {

std::vector<std::uint32_t> intersection(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::string Violation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::not_square:
      os << "matrix is not square";
      break;
    case Kind::row_weight:
      os << "line " << first << " has " << count << " points";
      break;
    case Kind::column_weight:
      os << "point " << first << " lies on " << count << " lines";
      break;
    case Kind::shared_points:
      os << "lines " << first << " and " << second << " share " << count << " points (";
      for (std::size_t t = 0; t < shared.size(); ++t) os << (t ? "," : "") << shared[t];
      os << ")";
      break;
  }
  return os.str();
}

VerifyOutcome verify_configuration(const IncidenceMatrix& b, unsigned n) {
  Violation bad;
  if (!b.square()) return bad;
  const std::size_t v = b.rows();
  if (v > kMaxVerifySize)
    throw SizeLimitError("configuration with " + std::to_string(v) + " lines exceeds the verification limit");

  Configuration c;
  c.v = v;
  c.k = n + 1;
  c.lines.resize(v);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j : b.row_ones(i)) c.lines[i].push_back(static_cast<std::uint32_t>(j));
    if (c.lines[i].size() != c.k) {
      bad.kind = Violation::Kind::row_weight;
      bad.first = i + 1;
      bad.count = c.lines[i].size();
      return bad;
    }
  }
  std::vector<std::size_t> degree(v, 0);
  for (const auto& line : c.lines)
    for (auto point : line) ++degree[point];
  for (std::size_t j = 0; j < v; ++j) {
    if (degree[j] != c.k) {
      bad.kind = Violation::Kind::column_weight;
      bad.first = j + 1;
      bad.count = degree[j];
      return bad;
    }
  }
  for (std::size_t a = 0; a < v; ++a) {
    for (std::size_t other = a + 1; other < v; ++other) {
      const auto common = intersection(c.lines[a], c.lines[other]);
      if (common.size() > 1) {
        bad.kind = Violation::Kind::shared_points;
        bad.first = a + 1;
        bad.second = other + 1;
        bad.count = common.size();
        for (auto point : common) bad.shared.push_back(point + 1u);
        return bad;
      }
    }
  }
  return c;
}

bool is_projective_plane(const Configuration& c) {
  if (c.k < 3) return false;
  const std::size_t n = c.k - 1;
  if (c.v != n * n + n + 1) return false;
  // Counting forces every two lines to meet; confirm it.
  for (std::size_t a = 0; a < c.lines.size(); ++a)
    for (std::size_t b = a + 1; b < c.lines.size(); ++b)
      if (intersection(c.lines[a], c.lines[b]).size() != 1)
        throw InvariantViolation("configuration with n^2+n+1 points has two lines not meeting in one point");
  return true;
}

Configuration reference_plane(unsigned q) {
  const GaloisField field(q);
  // Normalised vectors (first non-zero coordinate 1) in lexicographic order.
  std::vector<std::array<unsigned, 3>> vectors;
  for (unsigned x = 0; x <= 1; ++x) {
    for (unsigned y = 0; y < q; ++y) {
      for (unsigned z = 0; z < q; ++z) {
        if (x == 0 && y > 1) continue;
        if (x == 0 && y == 0 && z != 1) continue;
        vectors.push_back({x, y, z});
      }
    }
  }
  Configuration c;
  c.v = vectors.size();
  c.k = q + 1;
  c.lines.resize(c.v);
  for (std::size_t l = 0; l < c.v; ++l) {
    for (std::size_t p = 0; p < c.v; ++p) {
      unsigned dot = 0;
      for (int t = 0; t < 3; ++t) dot = field.add(dot, field.mul(vectors[l][t], vectors[p][t]));
      if (dot == 0) c.lines[l].push_back(static_cast<std::uint32_t>(p));
    }
  }
  return c;
}

IncidenceMatrix incidence_matrix(const Configuration& c) {
  IncidenceMatrix m(c.lines.size(), c.v);
  for (std::size_t i = 0; i < c.lines.size(); ++i)
    for (auto p : c.lines[i]) m.set(i, p);
  return m;
}

std::string levi_dot(const Configuration& c) {
  std::ostringstream os;
  os << "graph levi {\n";
  for (std::size_t p = 0; p < c.v; ++p) os << "  p" << p + 1 << " [shape=circle];\n";
  for (std::size_t l = 0; l < c.lines.size(); ++l) os << "  l" << l + 1 << " [shape=box];\n";
  for (std::size_t l = 0; l < c.lines.size(); ++l)
    for (auto p : c.lines[l]) os << "  l" << l + 1 << " -- p" << p + 1 << ";\n";
  os << "}\n";
  return os.str();
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  if (violation) {
    os << "violation: " << violation->describe() << "\n";
    return os.str();
  }
  if (plane)
    os << "projective plane of order " << k - 1;
  else
    os << "configuration " << v << "_" << k;
  if (isomorphic) os << "; isomorphic: " << (*isomorphic ? "yes" : "no");
  if (automorphisms) os << "; automorphisms: " << *automorphisms;
  os << "\n";
  os << "points: " << v << "\n";
  os << "lines: " << v << "\n";
  os << "points per line: " << k << "\n";
  if (iso_order) os << "reference: PG(2," << *iso_order << ")\n";
  if (automorphisms) os << "automorphism convention: point and line permutations preserving incidence, dualities excluded\n";
  return os.str();
}

}  // namespace lexconf
