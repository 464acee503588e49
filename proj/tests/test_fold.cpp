#include <doctest.h>

#include "lexconf/errors.hpp"
#include "lexconf/fold.hpp"
#include "lexconf/isomorphism.hpp"
#include "lexconf/verifier.hpp"
#include "oracle/properties.hpp"

using namespace lexconf;

namespace {

const PeriodResult& period_of(unsigned n) {
  static std::vector<std::optional<PeriodResult>> cache(8);
  if (!cache[n]) cache[n] = detect_period(n, 100'000);
  return *cache[n];
}

// Rotating rows and columns by one: B(v+1)_{ij} = B(v)_{i+1, j+1}, indices mod p_bar.
BitMatrix rotate(const BitMatrix& b) {
  const std::size_t s = b.rows();
  BitMatrix out(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      if (b.get((i + 1) % s, (j + 1) % s)) out.set(i, j);
  return out;
}

}  // namespace

TEST_CASE("fold parameter validation") {
  const auto& e3 = period_of(3);
  CHECK_THROWS_AS(make_fold_params(e3, 0), ConstraintViolation);
  // m = 1 gives p_bar = 16 < 2 * l_max = 18.
  CHECK_THROWS_AS(make_fold_params(e3, 1), ConstraintViolation);
  CHECK_NOTHROW(make_fold_params(e3, 1, std::nullopt, FoldHypotheses::allow_short_period));
  const auto fp = make_fold_params(e3, 2);
  CHECK(fp.p_bar == 32);
  CHECK(fp.r == 16);
  CHECK(fp.v == 48 + 32);
  CHECK_THROWS_AS(make_fold_params(e3, 2, 79), ConstraintViolation);
  CHECK(make_fold_params(e3, 2, 200).v == 200);
  CHECK_THROWS_AS(make_fold_params(e3, kMaxFoldSize), SizeLimitError);

  SUBCASE("p_bar at most 2 (l_max - 2) is refused") {
    PeriodResult r;
    r.n = 2;
    r.p = 10;
    r.b_breadth = 2;
    r.l_max = 12;
    // p_bar = 20 = 2 * (12 - 2).
    CHECK_THROWS_AS(make_fold_params(r, 2), ConstraintViolation);
    CHECK_THROWS_AS(make_fold_params(r, 1), ConstraintViolation);
  }
  SUBCASE("breadth must fit in half the width") {
    PeriodResult r;
    r.n = 2;
    r.p = 7;
    r.b_breadth = 4;
    r.l_max = 1;
    CHECK_THROWS_AS(make_fold_params(r, 1), ConstraintViolation);  // floor(7/2) = 3
    CHECK_NOTHROW(make_fold_params(r, 2));
  }
}

TEST_CASE("n = 1, m = 2, v = 6 gives two disjoint triangles") {
  const auto& e1 = period_of(1);
  const auto b = fold(e1, make_fold_params(e1, 2, 6));
  const auto expected = BitMatrix::from_rows({
      "110000",
      "101000",
      "011000",
      "000110",
      "000101",
      "000011",
  });
  CHECK(b == expected);
}

TEST_CASE("folds agree with the literal three-band definition") {
  for (unsigned n = 1; n <= 4; ++n) {
    const auto& r = period_of(n);
    const Index m0 = minimal_fold_multiplier(r);
    for (Index m = m0; m <= m0 + 2; ++m) {
      for (Index extra : {0, 1, 5, 13}) {
        const auto fp = make_fold_params(r, m, r.pp + r.p * m + extra);
        const auto rows = generate_range(n, fp.v + 1, fp.v + fp.p_bar);
        const auto b = fold(r, fp, rows);
        CHECK(b == oracle::literal_fold(rows, fp.v, fp.p_bar));
        CHECK(oracle::check_folded(b, n) == "");
        CHECK(std::holds_alternative<Configuration>(verify_configuration(b, n)));
      }
    }
  }
}

TEST_CASE("n = 3 folds at the minimal multiplier") {
  const auto& e3 = period_of(3);
  const Index m = minimal_fold_multiplier(e3);
  for (Index v : {80, 81, 95, 100, 1000}) {
    const auto b = fold(e3, make_fold_params(e3, m, v));
    CHECK(b.rows() == 16 * m);
    const auto out = verify_configuration(b, 3);
    REQUIRE(std::holds_alternative<Configuration>(out));
    CHECK(std::get<Configuration>(out).k == 4);
  }
}

TEST_CASE("changing v only rotates the fold") {
  for (unsigned n : {1u, 3u}) {
    const auto& r = period_of(n);
    const Index m = minimal_fold_multiplier(r);
    const auto base = make_fold_params(r, m);
    const auto b0 = fold(r, base);
    const auto b1 = fold(r, make_fold_params(r, m, base.v + 1));
    CHECK(b1 == rotate(b0));
    const auto c0 = std::get<Configuration>(verify_configuration(b0, n));
    const auto c1 = std::get<Configuration>(verify_configuration(b1, n));
    const auto c7 = std::get<Configuration>(verify_configuration(fold(r, make_fold_params(r, m, base.v + 7)), n));
    CHECK(isomorphic(c0, c1));
    CHECK(isomorphic(c0, c7));
  }
}

TEST_CASE("replayed rows and regenerated rows give the same matrix") {
  const auto& e3 = period_of(3);
  const auto fp = make_fold_params(e3, 3, 123);
  const auto log_rows = generate_prefix(3, 123 + 48);
  const std::vector<SparseRow> tail(log_rows.begin() + 123, log_rows.end());
  CHECK(fold(e3, fp, tail) == fold(e3, fp));
  const std::vector<SparseRow> shifted(log_rows.begin() + 122, log_rows.end() - 1);
  CHECK_THROWS_AS(fold(e3, fp, shifted), PreconditionError);
  CHECK_THROWS_AS(fold(e3, fp, std::span<const SparseRow>(tail).first(10)), PreconditionError);
}

TEST_CASE("n = 3 wrapped once is a 16_4 configuration") {
  const auto& e3 = period_of(3);
  const auto hyp = FoldHypotheses::allow_short_period;
  for (Index v : {64, 65, 70}) {
    const auto b = fold(e3, make_fold_params(e3, 1, v, hyp), hyp);
    CHECK(oracle::check_folded(b, 3) == "");
    const auto c = std::get<Configuration>(verify_configuration(b, 3));
    CHECK(c.v == 16);
    CHECK_FALSE(is_projective_plane(c));
    CHECK(automorphism_count(c) == 2);
  }
}

TEST_CASE("an unjustified short fold that breaks the axioms is refused") {
  // Claim period 9 for A(2), whose true period is 7: the wrap cannot close up.
  PeriodResult fake = period_of(2);
  fake.p = 9;
  fake.b_breadth = 0;
  fake.l_max = 0;
  const auto hyp = FoldHypotheses::allow_short_period;
  CHECK_THROWS_AS(fold(fake, make_fold_params(fake, 1, 9, hyp), hyp), ConstraintViolation);
}

TEST_CASE("compact planes") {
  CHECK(compact_plane(period_of(1)) == BitMatrix::from_rows({"110", "101", "011"}));
  const auto fano = compact_plane(period_of(2));
  CHECK(fano.rows() == 7);
  CHECK(is_projective_plane(std::get<Configuration>(verify_configuration(fano, 2))));
  CHECK_THROWS_AS(compact_plane(period_of(3)), PreconditionError);
}

TEST_CASE("incidence invariant checker names the first failure") {
  CHECK_FALSE(check_incidence_invariants(BitMatrix::from_rows({"110", "101", "011"}), 1));
  CHECK(check_incidence_invariants(BitMatrix::from_rows({"11", "10", "01"}), 1));
  CHECK(check_incidence_invariants(BitMatrix::from_rows({"111", "101", "011"}), 1)->find("row 1") == 0);
  CHECK(check_incidence_invariants(BitMatrix::from_rows({"110", "110", "011"}), 1)->find("column") != std::string::npos);
  CHECK(check_incidence_invariants(BitMatrix::from_rows({"1100", "0110", "0011", "1001"}), 1)
            ->find("symmetric") != std::string::npos);
  CHECK(check_incidence_invariants(BitMatrix::from_rows({"1100", "1100", "0011", "0011"}), 1)
            ->find("share") != std::string::npos);
}
