#include "crnacr/acr.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace crnacr;
using testing_helpers::load_fixture;

namespace {

std::pair<Rational, Rational> arc(int a, int b) {
  return {Rational(a), Rational(b)};
}

}  // namespace

TEST_CASE("one-species embeddings") {
  const Network net = load_fixture("stable_acr.crn").network;
  const int a = *net.species_index("A");
  const int b = *net.species_index("B");

  // Keeping only B: {0 <- B -> 2B}.
  const OneSpeciesEmbedding keep_b = embed_one_species(net, b);
  CHECK(keep_b.levels == std::vector<Rational>{1});
  CHECK(keep_b.arcs == std::vector<std::pair<Rational, Rational>>{arc(1, 0),
                                                                  arc(1, 2)});

  // Keeping only A: {0 -> A, 2A -> A}.
  const OneSpeciesEmbedding keep_a = embed_one_species(net, a);
  CHECK(keep_a.levels == std::vector<Rational>{0, 2});
  CHECK(keep_a.arcs == std::vector<std::pair<Rational, Rational>>{arc(0, 1),
                                                                  arc(2, 1)});

  const Network counter = load_fixture("counterex.crn").network;
  const OneSpeciesEmbedding e = embed_one_species(counter, 0);
  CHECK(e.levels == std::vector<Rational>{0, 2, 3, 4});
  CHECK(e.arcs == std::vector<std::pair<Rational, Rational>>{
                      arc(0, 1), arc(2, 3), arc(3, 2), arc(4, 3)});
}

TEST_CASE("trivial arcs are dropped, duplicates collapsed") {
  NetworkBuilder b;
  b.reaction("R1", {{"A", 1}, {"B", 1}}, {{"A", 1}, {"B", 2}});
  b.reaction("R2", {{"A", 1}, {"B", 1}, {"C", 1}}, {{"A", 1}, {"B", 2}, {"C", 1}});
  const Network net = b.build();
  // A never changes: empty embedding, reported rather than thrown.
  const OneSpeciesEmbedding empty = embed_one_species(net, 0);
  CHECK(empty.empty());
  CHECK_THROWS_AS(arrow_diagram(empty), std::invalid_argument);
  // B gains one in both reactions: one deduplicated arc.
  const OneSpeciesEmbedding dedup = embed_one_species(net, 1);
  CHECK(dedup.arcs == std::vector<std::pair<Rational, Rational>>{arc(1, 2)});
}

TEST_CASE("arrow diagrams") {
  const Network witness = load_fixture("stable_acr.crn").network;
  const ArrowDiagram keep_b =
      arrow_diagram(embed_one_species(witness, 1));
  CHECK(keep_b.symbols == std::vector<ArrowSymbol>{ArrowSymbol::Both});

  const ArrowDiagram keep_a =
      arrow_diagram(embed_one_species(witness, 0));
  CHECK(keep_a.symbols ==
        std::vector<ArrowSymbol>{ArrowSymbol::Right, ArrowSymbol::Left});

  const Network counter = load_fixture("counterex.crn").network;
  const ArrowDiagram d = arrow_diagram(embed_one_species(counter, 0));
  CHECK(d.symbols ==
        std::vector<ArrowSymbol>{ArrowSymbol::Right, ArrowSymbol::Right,
                                 ArrowSymbol::Left, ArrowSymbol::Left});
  CHECK(to_string(d) == "(->,->,<-,<-)");
}

TEST_CASE("diagram symbols do not depend on reaction order") {
  NetworkBuilder forward, backward;
  forward.reaction("R1", {{"A", 1}}, {{"A", 2}});
  forward.reaction("R2", {{"A", 3}}, {{"A", 1}});
  backward.reaction("R2", {{"A", 3}}, {{"A", 1}});
  backward.reaction("R1", {{"A", 1}}, {{"A", 2}});
  const ArrowDiagram d1 = arrow_diagram(embed_one_species(forward.build(), 0));
  const ArrowDiagram d2 = arrow_diagram(embed_one_species(backward.build(), 0));
  CHECK(d1 == d2);
}

TEST_CASE("admissible diagram grammar") {
  using S = ArrowSymbol;
  auto admissible = [](std::vector<ArrowSymbol> symbols) {
    return is_admissible_diagram(ArrowDiagram{std::move(symbols)});
  };
  CHECK(admissible({S::Right, S::Right, S::Left, S::Left}));
  CHECK(admissible({S::Both}));
  CHECK(admissible({S::Both, S::Left, S::Left}));
  CHECK(admissible({S::Right, S::Both}));
  CHECK(admissible({S::Right, S::Both, S::Left}));
  CHECK(admissible({S::Right, S::Left}));

  CHECK_FALSE(admissible({S::Left, S::Right}));
  CHECK_FALSE(admissible({S::Right, S::Right}));
  CHECK_FALSE(admissible({S::Left, S::Left}));
  CHECK_FALSE(admissible({S::Both, S::Both}));
  CHECK_FALSE(admissible({S::Right, S::Both, S::Right}));
  CHECK_FALSE(admissible({S::Left, S::Both}));
  CHECK_FALSE(admissible({}));
}

TEST_CASE("admissibility is stable under duplicated reactions") {
  NetworkBuilder once, twice;
  once.reaction("R1", {{"B", 1}}, {{"A", 1}});
  once.reaction("R2", {{"A", 2}, {"B", 1}}, {{"A", 1}, {"B", 2}});
  twice.reaction("R1", {{"B", 1}}, {{"A", 1}});
  twice.reaction("R1b", {{"B", 1}}, {{"A", 1}}, 2.0);
  twice.reaction("R2", {{"A", 2}, {"B", 1}}, {{"A", 1}, {"B", 2}});
  const Network n1 = once.build(), n2 = twice.build();
  for (int x = 0; x < 2; ++x) {
    const ArrowDiagram d1 = arrow_diagram(embed_one_species(n1, x));
    const ArrowDiagram d2 = arrow_diagram(embed_one_species(n2, x));
    CHECK(d1 == d2);
    CHECK(is_admissible_diagram(d1) == is_admissible_diagram(d2));
  }
}

TEST_CASE("reactant complexes differing in one species") {
  const Network counter = load_fixture("counterex.crn").network;
  CHECK(reactants_differ_only_in(counter, 0));        // A
  CHECK_FALSE(reactants_differ_only_in(counter, 1));  // B

  NetworkBuilder b;
  b.reaction("R1", {{"A", 1}, {"B", 2}}, {{"A", 2}, {"B", 2}});
  const Network single = b.build();
  CHECK(reactants_differ_only_in(single, 0));
  CHECK(reactants_differ_only_in(single, 1));
}

TEST_CASE("stable ACR criterion on the mass action example") {
  const ParsedModel model = load_fixture("stable_acr.crn");
  const auto verdicts =
      stable_acr_criterion(model.network, model.kinetics_or_mak());
  REQUIRE(verdicts.size() == 2);
  const int a = *model.network.species_index("A");
  const int b = *model.network.species_index("B");
  CHECK(verdicts[a].status == AcrStatus::Acr);
  CHECK(verdicts[a].diagram_admissible);
  CHECK(verdicts[a].reactant_condition);
  CHECK(verdicts[b].status == AcrStatus::CriterionFailed);
  CHECK(verdicts[b].diagram_admissible);        // (<->) alone is admissible
  CHECK_FALSE(verdicts[b].reactant_condition);  // reactants differ in A
}

TEST_CASE("criterion is necessary-only under general power-law kinetics") {
  const ParsedModel model = load_fixture("counterex.crn");
  const auto verdicts = stable_acr_criterion(model.network, *model.kinetics);
  const int a = *model.network.species_index("A");
  CHECK(verdicts[a].status == AcrStatus::CriterionSatisfied);

  const AcrVerdict roots =
      acr_analysis(model.network, *model.kinetics, a, 1e-10);
  CHECK(roots.status == AcrStatus::NotAcr);
  REQUIRE(roots.roots.size() == 2);
  CHECK_THAT(roots.roots[0], Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK_THAT(roots.roots[1],
             Catch::Matchers::WithinAbs(1.0 + std::sqrt(5.0), 1e-9));
}

TEST_CASE("criterion requires rank one") {
  NetworkBuilder b;
  b.reaction("R1", {{"A", 1}}, {{"B", 1}});
  b.reaction("R2", {{"B", 1}}, {{"C", 1}});
  const Network net = b.build();
  CHECK_THROWS_AS(stable_acr_criterion(net), InapplicableError);
  CHECK_THROWS_AS(acr_candidate_species(net), InapplicableError);
}

TEST_CASE("signomial reduction of the counterexample") {
  const ParsedModel model = load_fixture("counterex.crn");
  const int a = *model.network.species_index("A");
  const SignomialReduction red =
      reduce_to_signomial(model.network, *model.kinetics, a);

  CHECK(red.direction == RatVec{1, -1});  // A - B
  REQUIRE(red.signomial.size() == 4);
  CHECK(red.signomial.terms()[0] == SignomialTerm{4, 0});
  CHECK(red.signomial.terms()[1] == SignomialTerm{-2, 1});
  CHECK(red.signomial.terms()[2] == SignomialTerm{-3, 2});
  CHECK(red.signomial.terms()[3] == SignomialTerm{1, 3});
}

TEST_CASE("reduction keeps symbolic signs of the rates") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> rate(0.25, 8.0);
  const std::string text = testing_helpers::read_fixture("counterex.crn");
  for (int trial = 0; trial < 20; ++trial) {
    ParsedModel model = parse_model(text);
    PowerLawKinetics k = *model.kinetics;
    for (double& v : k.rates) v = rate(rng);
    // Distinct exponents p = (0, 3, 1, 2) keep all four terms separate.
    const SignomialReduction red = reduce_to_signomial(model.network, k, 0);
    REQUIRE(red.signomial.size() == 4);
    // Ascending exponents 0,1,2,3 map to rates r1, r3, r4, r2.
    CHECK(red.signomial.terms()[0].coefficient == k.rates[0]);
    CHECK(red.signomial.terms()[1].coefficient == -k.rates[2]);
    CHECK(red.signomial.terms()[2].coefficient == -k.rates[3]);
    CHECK(red.signomial.terms()[3].coefficient == k.rates[1]);
  }
}

TEST_CASE("reduction of a single autocatalytic reaction") {
  NetworkBuilder b;
  b.reaction("R1", {{"A", 1}}, {{"A", 2}}, 5.0);
  const Network net = b.build();
  const SignomialReduction red =
      reduce_to_signomial(net, mak_kinetics(net, {5.0}), 0);
  REQUIRE(red.signomial.size() == 1);
  CHECK(red.signomial.terms()[0] == SignomialTerm{5, 1});

  const AcrVerdict v = acr_analysis(net, mak_kinetics(net, {5.0}), 0, 1e-9);
  CHECK(v.status == AcrStatus::Inconclusive);
  CHECK(v.roots.empty());
}

TEST_CASE("reduction preconditions") {
  // Rank two.
  NetworkBuilder b;
  b.reaction("R1", {{"A", 1}}, {{"B", 1}});
  b.reaction("R2", {{"B", 1}}, {{"C", 1}});
  const Network rank2 = b.build();
  CHECK_THROWS_AS(reduce_to_signomial(rank2, mak_unit_kinetics(rank2), 0),
                  InapplicableError);

  // Rank one but rows not SF-paired in A.
  const ParsedModel model = load_fixture("counterex.crn");
  PowerLawKinetics bad = *model.kinetics;
  bad.orders[1][1] = 7;  // rows now differ in B as well
  CHECK_THROWS_AS(reduce_to_signomial(model.network, bad, 0),
                  InapplicableError);
}

TEST_CASE("scalar reduction reproduces the rate function along v") {
  const ParsedModel model = load_fixture("counterex.crn");
  const Network& net = model.network;
  const PowerLawKinetics& k = *model.kinetics;
  const SignomialReduction red = reduce_to_signomial(net, k, 0);
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> log_range(-1.5, 1.5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> x = {std::exp(log_range(rng)),
                                   std::exp(log_range(rng))};
    // Common monomial over the non-reduced species (B only here).
    const double monomial = std::pow(x[1], k.orders[0][1]);
    const double h = monomial * red.signomial.evaluate(x[0]);
    const auto f = evaluate_sfrf(net, k, x);
    for (int j = 0; j < net.species_count(); ++j) {
      const double expected = to_double(red.direction[j]) * h;
      REQUIRE_THAT(f[j], Catch::Matchers::WithinRel(expected, 1e-10) ||
                             Catch::Matchers::WithinAbs(expected, 1e-12));
    }
  }
}

TEST_CASE("ACR analysis verdict by exponent pattern") {
  const std::string text = testing_helpers::read_fixture("counterex.crn");
  ParsedModel model = parse_model(text);
  PowerLawKinetics ascending = *model.kinetics;
  // p = (1,2,3,4): signs +,+,-,- in ascending exponent order.
  ascending.orders[0][0] = 1;
  ascending.orders[1][0] = 2;
  ascending.orders[2][0] = 3;
  ascending.orders[3][0] = 4;
  const AcrVerdict v = acr_analysis(model.network, ascending, 0, 1e-10);
  CHECK(v.status == AcrStatus::Acr);
  REQUIRE(v.roots.size() == 1);
}

TEST_CASE("ACR analysis is invariant under homogeneous quotients") {
  const ParsedModel model = load_fixture("stable_acr.crn");
  const Network& net = model.network;
  const PowerLawKinetics mak = mak_kinetics(net, {3, 7});
  const AcrVerdict base = acr_analysis(net, mak, 0, 1e-12);
  REQUIRE(base.status == AcrStatus::Acr);
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<int> dyadic(-128, 128);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<double> beta = {dyadic(rng) / 64.0, dyadic(rng) / 64.0};
    const PowerLawKinetics q = homogeneous_pl_quotient(net, mak, beta);
    const AcrVerdict quotient_verdict = acr_analysis(net, q, 0, 1e-12);
    REQUIRE(quotient_verdict.status == base.status);
    REQUIRE(quotient_verdict.roots.size() == base.roots.size());
    REQUIRE_THAT(quotient_verdict.roots[0],
                 Catch::Matchers::WithinAbs(base.roots[0], 1e-9));
    REQUIRE(pff_equivalent(mak, q));

    const auto criterion = stable_acr_criterion(net, q);
    REQUIRE(criterion[0].status == AcrStatus::Acr);
  }
}

TEST_CASE("candidate species and the support bound") {
  const Network alt1c = load_fixture("rank1_zero_d.crn").network;
  const auto candidates = acr_candidate_species(alt1c);
  REQUIRE(candidates.size() == 1);
  CHECK(alt1c.species_name(candidates[0]) == "D");
  CHECK(acr_upper_bound(alt1c) == 1);

  const Network alt2 = load_fixture("rank1_zero_z.crn").network;
  const auto z_candidates = acr_candidate_species(alt2);
  REQUIRE(z_candidates.size() == 1);
  CHECK(alt2.species_name(z_candidates[0]) == "Z");
  CHECK(acr_upper_bound(alt2) == 1);

  NetworkBuilder co;
  co.reaction("R1", {{"A", 1}}, {{"A", 2}, {"B", 1}, {"C", 1}});
  const Network growth = co.build();
  REQUIRE(is_co_conservative(growth));
  CHECK(acr_candidate_species(growth).empty());
  CHECK(acr_upper_bound(growth) == 0);
}

TEST_CASE("ACR species of a multistationary fixture satisfy the hyperplane condition") {
  const ParsedModel model = load_fixture("counterex.crn");
  const Network& net = model.network;
  REQUIRE(model.directives.multistationary);
  const RatVec v = stoich_basis(net).front();
  for (int x = 0; x < net.species_count(); ++x) {
    AcrVerdict verdict;
    try {
      verdict = acr_analysis(net, *model.kinetics, x, 1e-10);
    } catch (const InapplicableError&) {
      continue;
    }
    if (verdict.status == AcrStatus::Acr) REQUIRE(v[x] == 0);
  }
}

TEST_CASE("multistationarity probe on the counterexample") {
  const ParsedModel model = load_fixture("counterex.crn");
  const Network& net = model.network;
  const PowerLawKinetics& k = *model.kinetics;

  // Class A + B = 6 meets both roots.
  const ProbeResult six = multistationarity_probe(net, k, {3, 3});
  REQUIRE(six.count == 2);
  CHECK_THAT(six.equilibria[0][0], Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK_THAT(six.equilibria[0][1], Catch::Matchers::WithinAbs(5.0, 1e-9));
  CHECK_THAT(six.equilibria[1][0],
             Catch::Matchers::WithinAbs(1.0 + std::sqrt(5.0), 1e-9));
  CHECK_THAT(six.equilibria[1][1],
             Catch::Matchers::WithinAbs(5.0 - std::sqrt(5.0), 1e-9));

  // Class A + B = 2 only meets A = 1.
  const ProbeResult two = multistationarity_probe(net, k, {1, 1});
  REQUIRE(two.count == 1);
  CHECK_THAT(two.equilibria[0][0], Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK_THAT(two.equilibria[0][1], Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("probe finds nothing for a pure decay") {
  const ParsedModel model = load_fixture("ab.crn");
  const ProbeResult none =
      multistationarity_probe(model.network, model.kinetics_or_mak(), {1, 1});
  CHECK(none.count == 0);

  CHECK_THROWS_AS(multistationarity_probe(model.network,
                                          model.kinetics_or_mak(), {0.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("identically vanishing rate function") {
  // Opposite reactions with identical kinetic rows and equal rates cancel:
  // every positive point is an equilibrium, so no species is pinned.
  NetworkBuilder b;
  b.reaction("R1", {{"A", 1}}, {{"B", 1}}, 1.0);
  b.reaction("R2", {{"B", 1}}, {{"A", 1}}, 1.0);
  const Network net = b.build();
  PowerLawKinetics k;
  k.rates = {1, 1};
  k.orders = {{1, 1}, {1, 1}};
  const AcrVerdict v = acr_analysis(net, k, 0, 1e-9);
  CHECK(v.status == AcrStatus::NotAcr);
  CHECK(v.roots.empty());

  const ProbeResult probe = multistationarity_probe(net, k, {1, 1});
  CHECK(probe.rate_identically_zero);
  CHECK(probe.count == 0);
}

TEST_CASE("probe clamps unbounded class lines") {
  // v = (1): the positivity interval has no upper end.
  NetworkBuilder b;
  b.reaction("R1", {{"A", 1}}, {{"A", 2}});
  const Network net = b.build();
  const ProbeResult r =
      multistationarity_probe(net, mak_unit_kinetics(net), {1});
  CHECK(r.window_truncated);
  CHECK(r.count == 0);  // k A > 0 throughout

  // Production-decay pair: kA - k'A^2 has one positive root on the ray.
  NetworkBuilder b2;
  b2.reaction("R1", {{"A", 1}}, {{"A", 2}}, 3.0);
  b2.reaction("R2", {{"A", 2}}, {{"A", 1}}, 1.0);
  const Network logistic = b2.build();
  PowerLawKinetics k = mak_kinetics(logistic, {3.0, 1.0});
  const ProbeResult one = multistationarity_probe(logistic, k, {1});
  CHECK(one.window_truncated);
  REQUIRE(one.count == 1);
  CHECK_THAT(one.equilibria[0][0], Catch::Matchers::WithinAbs(3.0, 1e-9));
}
