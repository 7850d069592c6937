#include "doctest.h"

#include <cmath>

#include "autg/ball.hpp"

using namespace autg;

namespace {

GroupWord gw(const Transducer& t, const std::string& letters) {
  GroupWord w;
  for (char c : letters) {
    bool up = c >= 'A' && c <= 'Z';
    std::string name(1, up ? static_cast<char>(c - 'A' + 'a') : c);
    int q = t.state_index(name);
    REQUIRE(q > 0);
    w.push(SignedState{q, up ? -1 : 1});
  }
  return w;
}

}  // namespace

TEST_CASE("radius-1 basilica ball") {
  Transducer t = builtin("gamma");
  WordProblem wp(t);
  Ball ball(wp, 1.0, basilica_weights(t));
  // Only weight-1 elements: identity, a, a^-1.
  REQUIRE(ball.elements().size() == 3);
  CHECK(ball.elements()[0].rep.empty());
  CHECK(ball.elements()[1].rep == gw(t, "a"));
  CHECK(ball.elements()[2].rep == gw(t, "A"));
  CHECK(ball.elements()[1].length == doctest::Approx(1.0));
}

TEST_CASE("ball lengths are exact minimal weighted lengths") {
  Transducer t = builtin("gamma");
  WordProblem wp(t);
  Ball ball(wp, 2.5, basilica_weights(t));
  // ab and ba are distinct elements at length 1 + sqrt2
  int iab = ball.find(gw(t, "ab"));
  int iba = ball.find(gw(t, "ba"));
  REQUIRE(iab >= 0);
  REQUIRE(iba >= 0);
  CHECK(iab != iba);
  CHECK(ball.elements()[iab].length == doctest::Approx(1 + std::sqrt(2.0)));
  // lookup by a non-canonical longer word for the same element
  CHECK(ball.find(gw(t, "abaA")) == iab);
  CHECK(ball.minimal_length(gw(t, "abaA")).value() == doctest::Approx(1 + std::sqrt(2.0)));
  CHECK_FALSE(ball.minimal_length(gw(t, "ababab")).has_value());
}

TEST_CASE("ball monotonicity") {
  Transducer t = builtin("gamma");
  WordProblem wp(t);
  Ball small(wp, 3.0, basilica_weights(t));
  Ball large(wp, 4.5, basilica_weights(t));
  REQUIRE(small.elements().size() < large.elements().size());
  for (const auto& el : small.elements()) {
    int idx = large.find(el.rep);
    REQUIRE(idx >= 0);
    CHECK(large.elements()[idx].length == doctest::Approx(el.length));
  }
}

TEST_CASE("grigorchuk ball collapses involutions") {
  Transducer t = builtin("grigorchuk");
  WordProblem wp(t);
  Ball ball(wp, 2.0, WeightVector::unit(t));
  CHECK(ball.find(gw(t, "a")) == ball.find(gw(t, "A")));
  CHECK(ball.find(gw(t, "bc")) == ball.find(gw(t, "d")));
  CHECK(ball.find(gw(t, "bd")) == ball.find(gw(t, "c")));
  CHECK(ball.find(gw(t, "cd")) == ball.find(gw(t, "b")));
  for (const auto& el : ball.elements()) CHECK(el.length <= 2.0 + 1e-9);
}

TEST_CASE("basilica per-child contraction holds with additive constant sqrt2") {
  Transducer t = builtin("gamma");
  WordProblem wp(t);
  Ball ball(wp, 6.0, basilica_weights(t));
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ContractionReport rep = verify_contraction(wp, ball, inv_sqrt2, std::sqrt(2.0),
                                             ContractionMode::per_child);
  CHECK(rep.ok());
  CHECK(rep.violations == 0);
  CHECK(rep.checked > 0);
  // the family a^-1 b^k a attains the bound with equality
  CHECK(rep.max_slack == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("per-child bound with constant 1/sqrt2 fails at a^-1 b a") {
  // Pins the counterexample: the section of a^-1 b a at letter 2 is
  // b^-1 a b, of minimal weighted length 1 + 2 sqrt2, while the claimed
  // bound (|g|+1)/sqrt2 gives only (3 + sqrt2)/sqrt2.
  Transducer t = builtin("gamma");
  WordProblem wp(t);
  Ball ball(wp, 5.0, basilica_weights(t));
  GroupWord g = gw(t, "Aba");
  int idx = ball.find(g);
  REQUIRE(idx >= 0);
  double glen = ball.elements()[idx].length;
  CHECK(glen == doctest::Approx(2 + std::sqrt(2.0)));
  WreathDecomposition dec = decompose(t, g);
  CHECK(dec.children[0].empty());
  CHECK(dec.children[1] == gw(t, "Bab"));
  double clen = ball.minimal_length(dec.children[1]).value();
  CHECK(clen == doctest::Approx(1 + 2 * std::sqrt(2.0)));
  CHECK(clen > (glen + 1) / std::sqrt(2.0) + 1e-9);

  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ContractionReport rep = verify_contraction(wp, ball, inv_sqrt2, inv_sqrt2,
                                             ContractionMode::per_child);
  CHECK(rep.violations > 0);
  CHECK(rep.max_slack == doctest::Approx(inv_sqrt2));
}

TEST_CASE("per-child eta=1 C=0 never violated on monomial machines") {
  Transducer t = builtin("bsv");
  WordProblem wp(t);
  Ball ball(wp, 4.0, WeightVector::unit(t));
  ContractionReport rep = verify_contraction(wp, ball, 1.0, 0.0, ContractionMode::per_child);
  CHECK(rep.violations == 0);
}

TEST_CASE("growth exponent") {
  CHECK(growth_exponent(2, 0.5) == doctest::Approx(0.5));
  CHECK(growth_exponent(2, grigorchuk_eta()) == doctest::Approx(0.7674).epsilon(1e-3));
  CHECK(growth_exponent(2, 0.999999) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK_THROWS_AS(growth_exponent(2, 1.5), std::domain_error);
  CHECK_THROWS_AS(growth_exponent(1, 0.5), std::domain_error);
}

TEST_CASE("grigorchuk weights satisfy the defining equalities") {
  Transducer t = builtin("grigorchuk");
  WeightVector w = grigorchuk_weights(t);
  double eta = grigorchuk_eta();
  CHECK(eta == doctest::Approx(0.8105357138).epsilon(1e-9));
  double wa = w.weight[1], wb = w.weight[2], wc = w.weight[3], wd = w.weight[4];
  CHECK(eta * (wa + wb) == doctest::Approx(wa + wc));
  CHECK(eta * (wa + wc) == doctest::Approx(wa + wd));
  CHECK(eta * (wa + wd) == doctest::Approx(wb));
  CHECK(wb == doctest::Approx(1.139).epsilon(1e-3));
  CHECK(wc == doctest::Approx(0.734).epsilon(1e-3));
  CHECK(wd == doctest::Approx(0.405).epsilon(1e-3));
}

TEST_CASE("free monoid check") {
  Transducer t = builtin("gamma");
  WordProblem wp(t);
  CHECK(free_monoid_check(wp, 0));
  CHECK(free_monoid_check(wp, 1));
  CHECK(free_monoid_check(wp, 5));
  // Grigorchuk has a^2 = 1, so positive words collide quickly.
  Transducer g = builtin("grigorchuk");
  WordProblem wpg(g);
  CHECK_FALSE(free_monoid_check(wpg, 3));
}

TEST_CASE("torsion check") {
  Transducer t = builtin("gamma");
  WordProblem wp(t);
  Ball ball(wp, 4.0, basilica_weights(t));
  CHECK(torsion_check(wp, ball).empty());

  Transducer g = builtin("grigorchuk");
  WordProblem wpg(g);
  Ball bg(wpg, 1.0, WeightVector::unit(g));
  auto torsion = torsion_check(wpg, bg);
  CHECK(torsion.size() >= 4);  // a, b, c, d are involutions
}

TEST_CASE("relator family") {
  Transducer t = builtin("gamma");
  WordProblem wp(t);
  std::vector<std::string> family = {"[[a^p,b^p],b^p]", "[[b^p,a^(2p)],a^(2p)]"};
  CHECK(verify_relators(wp, family, 4));
  CHECK(verify_relators(wp, {}, 16));
  CHECK_FALSE(verify_relators(wp, {"[a,b]"}, 1));
}

TEST_CASE("branching witness") {
  Transducer t = builtin("gamma");
  WordProblem wp(t);
  int a = t.state_index("a"), b = t.state_index("b");

  BranchingWitness w1 = branching_witness(wp, b, a);
  CHECK(w1.ok);
  CHECK(w1.nontrivial_children == 1);

  BranchingWitness w2 = branching_witness(wp, a, b);
  CHECK(w2.ok);
  CHECK(w2.nontrivial_children == 1);

  // s=b, t=b: [a, a^2] collapses
  BranchingWitness w3 = branching_witness(wp, b, b);
  CHECK(w3.degenerate);
  CHECK(w3.ok);

  BranchingWitness w4 = branching_witness(wp, 0, 0);
  CHECK(w4.degenerate);

  Transducer bsv = builtin("bsv");
  WordProblem wpb(bsv);
  BranchingWitness w5 = branching_witness(wpb, bsv.state_index("l"), bsv.state_index("m"));
  CHECK(w5.ok);
  CHECK(w5.nontrivial_children == 1);

  Transducer grig = builtin("grigorchuk");
  WordProblem wpg(grig);
  CHECK_THROWS_AS(branching_witness(wpg, 1, 2), std::invalid_argument);
}
