#pragma once

#include <vector>

namespace lexconf {

/// Arithmetic in GF(q) for the small orders used by the reference planes.
/// Elements are 0 .. q-1, read as base-p digit vectors of polynomials modulo
/// a fixed irreducible: x^2+x+1 (q=4), x^3+x+1 (q=8), x^2+1 (q=9),
/// x^4+x+1 (q=16).
class GaloisField {
 public:
  /// Throws UnsupportedOrder unless q is in {2,3,4,5,7,8,9,11,13,16}.
  explicit GaloisField(unsigned q);

  unsigned order() const noexcept { return q_; }
  unsigned characteristic() const noexcept { return p_; }
  unsigned add(unsigned a, unsigned b) const noexcept { return add_[a * q_ + b]; }
  unsigned mul(unsigned a, unsigned b) const noexcept { return mul_[a * q_ + b]; }

 private:
  unsigned q_;
  unsigned p_;
  std::vector<unsigned> add_;
  std::vector<unsigned> mul_;
};

}  // namespace lexconf
