#include "crnacr/signomial.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace crnacr;

TEST_CASE("term normalization") {
  const Signomial s = Signomial::from_terms(
      {{1.0, 2.0}, {3.0, 0.0}, {-1.0, 2.0}, {2.0, 1.0}, {-2.0, 1.0}});
  // Like exponents merged, zero coefficients dropped, ascending order.
  REQUIRE(s.size() == 1);
  CHECK(s.terms()[0] == SignomialTerm{3.0, 0.0});

  const Signomial empty = Signomial::from_terms({{1.0, 1.0}, {-1.0, 1.0}});
  CHECK(empty.empty());
}

TEST_CASE("Descartes sign-change counts") {
  const Signomial counterexample =
      Signomial::from_terms({{4, 0}, {-2, 1}, {-3, 2}, {1, 3}});
  const DescartesCount dc = descartes_positive_root_count(counterexample);
  CHECK(dc.sign_changes == 2);
  CHECK_FALSE(dc.exact);

  const Signomial one_change =
      Signomial::from_terms({{2, -0.5}, {1, 0.7}, {-3, 1.1}, {-1, 4.0}});
  CHECK(descartes_positive_root_count(one_change).sign_changes == 1);
  CHECK(descartes_positive_root_count(one_change).exact);

  const Signomial single = Signomial::from_terms({{5, 1}});
  CHECK(descartes_positive_root_count(single).sign_changes == 0);
  CHECK(descartes_positive_root_count(single).exact);
}

TEST_CASE("positive roots of the counterexample cubic") {
  const Signomial s = Signomial::from_terms({{4, 0}, {-2, 1}, {-3, 2}, {1, 3}});
  const auto roots = positive_roots(s, 1e-12);
  REQUIRE(roots.size() == 2);
  CHECK_THAT(roots[0], Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK_THAT(roots[1], Catch::Matchers::WithinAbs(1.0 + std::sqrt(5.0), 1e-9));
}

TEST_CASE("positive roots respect real exponents") {
  // A^0.5 = 1 at A = 1.
  const Signomial s = Signomial::from_terms({{-1, 0}, {1, 0.5}});
  const auto roots = positive_roots(s, 1e-12);
  REQUIRE(roots.size() == 1);
  CHECK_THAT(roots[0], Catch::Matchers::WithinAbs(1.0, 1e-9));

  // 2 A^-1.5 - 5 + A^0.25: signs +,-,+ allow up to two roots; check
  // against a plain sign scan.
  const Signomial wide =
      Signomial::from_terms({{2, -1.5}, {-5, 0}, {1, 0.25}});
  const auto found = positive_roots(wide, 1e-12);
  CHECK(static_cast<int>(found.size()) == oracles::sign_scan_roots(wide, 2000000));
  for (double r : found)
    CHECK(std::abs(wide.evaluate(r)) < 1e-6);

  const Signomial no_roots = Signomial::from_terms({{1, 1}, {1, 2.5}});
  CHECK(positive_roots(no_roots, 1e-9).empty());
}

TEST_CASE("tangential double root is found once") {
  // (A - 1)^2 touches zero at 1.
  const Signomial s = Signomial::from_terms({{1, 0}, {-2, 1}, {1, 2}});
  const auto roots = positive_roots(s, 1e-10);
  REQUIRE(roots.size() == 1);
  CHECK_THAT(roots[0], Catch::Matchers::WithinAbs(1.0, 1e-6));
}

TEST_CASE("rejects nonpositive tolerance") {
  const Signomial s = Signomial::from_terms({{1, 0}, {-1, 1}});
  CHECK_THROWS_AS(positive_roots(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(positive_roots(s, -1e-9), std::invalid_argument);
}

TEST_CASE("plus-plus-minus-minus patterns have exactly one root") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> rate(0.1, 10.0), gap(0.1, 2.0);
  std::uniform_int_distribution<int> integer_gap(1, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const bool integral = trial % 2 == 0;
    double p = integral ? integer_gap(rng) - 2.0 : -2.0 + gap(rng);
    std::vector<double> exponents;
    for (int i = 0; i < 4; ++i) {
      exponents.push_back(p);
      p += integral ? integer_gap(rng) : gap(rng);
    }
    const Signomial s = Signomial::from_terms({{rate(rng), exponents[0]},
                                               {rate(rng), exponents[1]},
                                               {-rate(rng), exponents[2]},
                                               {-rate(rng), exponents[3]}});
    REQUIRE(descartes_positive_root_count(s).sign_changes == 1);
    const auto roots = positive_roots(s, 1e-10);
    REQUIRE(roots.size() == 1);
    REQUIRE(oracles::sign_scan_roots(s, 1000000) == 1);
  }
}

TEST_CASE("Descartes majorization and exact counts against a Sturm oracle") {
  std::mt19937_64 rng(43);
  int tested = 0;
  while (tested < 1000) {
    const Signomial s = oracles::random_integer_signomial(rng);
    if (s.size() < 2) continue;
    const oracles::SturmResult sturm =
        oracles::sturm_positive_roots(oracles::to_poly(s));
    if (!sturm.squarefree) continue;  // multiplicities: parity claim shifts
    ++tested;
    const DescartesCount dc = descartes_positive_root_count(s);
    REQUIRE(dc.sign_changes >= sturm.distinct_positive_roots);
    REQUIRE((dc.sign_changes - sturm.distinct_positive_roots) % 2 == 0);

    const auto roots = positive_roots(s, 1e-10);
    REQUIRE(static_cast<int>(roots.size()) == sturm.distinct_positive_roots);
    if (dc.exact)
      REQUIRE(static_cast<int>(roots.size()) == dc.sign_changes);
    for (std::size_t i = 1; i < roots.size(); ++i)
      REQUIRE(roots[i - 1] < roots[i]);
  }
}
