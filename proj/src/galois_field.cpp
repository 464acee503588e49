#include "lexconf/galois_field.hpp"

#include <string>

#include "lexconf/errors.hpp"

namespace lexconf {
namespace {

struct FieldSpec {
  unsigned q;
  unsigned p;
  unsigned degree;
  // Low-order coefficients of the monic irreducible (x^degree omitted).
  std::vector<unsigned> modulus;
};

const FieldSpec* find_spec(unsigned q) {
  static const std::vector<FieldSpec> specs = {
      {2, 2, 1, {0}},        {3, 3, 1, {0}},       {4, 2, 2, {1, 1}},    {5, 5, 1, {0}},
      {7, 7, 1, {0}},        {8, 2, 3, {1, 1, 0}}, {9, 3, 2, {1, 0}},    {11, 11, 1, {0}},
      {13, 13, 1, {0}},      {16, 2, 4, {1, 1, 0, 0}},
  };
  for (const auto& s : specs)
    if (s.q == q) return &s;
  return nullptr;
}

std::vector<unsigned> digits(unsigned value, unsigned p, unsigned degree) {
  std::vector<unsigned> out(degree);
  for (unsigned i = 0; i < degree; ++i) {
    out[i] = value % p;
    value /= p;
  }
  return out;
}

unsigned from_digits(const std::vector<unsigned>& d, unsigned p) {
  unsigned value = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) value = value * p + *it;
  return value;
}

}  // namespace

GaloisField::GaloisField(unsigned q) : q_(q) {
  const FieldSpec* spec = find_spec(q);
  if (!spec) throw UnsupportedOrder("no field of order " + std::to_string(q) + " is supported");
  p_ = spec->p;
  const unsigned e = spec->degree;
  add_.resize(q * q);
  mul_.resize(q * q);
  for (unsigned a = 0; a < q; ++a) {
    const auto da = digits(a, p_, e);
    for (unsigned b = 0; b < q; ++b) {
      const auto db = digits(b, p_, e);
      std::vector<unsigned> sum(e);
      for (unsigned i = 0; i < e; ++i) sum[i] = (da[i] + db[i]) % p_;
      add_[a * q + b] = from_digits(sum, p_);

      std::vector<unsigned> prod(2 * e - 1, 0);
      for (unsigned i = 0; i < e; ++i)
        for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      // x^e = -(modulus) reduces the high terms.
      for (unsigned t = 2 * e - 2; t >= e; --t) {
        const unsigned c = prod[t];
        prod[t] = 0;
        for (unsigned i = 0; i < e; ++i)
          prod[t - e + i] = (prod[t - e + i] + (p_ - spec->modulus[i] % p_) % p_ * c) % p_;
      }
      prod.resize(e);
      mul_[a * q + b] = from_digits(prod, p_);
    }
  }
}

}  // namespace lexconf
