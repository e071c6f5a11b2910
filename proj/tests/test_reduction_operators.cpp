#include <catch_amalgamated.hpp>

#include "koszulkit/koszulkit.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace koszulkit;

namespace {
const Alphabet ab({"x1", "x2"});
HomogPoly P(const std::string& e) { return support::poly(e, ab); }
}  // namespace

TEST_CASE("theta_inv of the Yang-Mills relation space", "[operators]") {
  const Presentation p = support::fixture("yang_mills");
  const ReductionOperator s = p.S();
  CHECK(s.kernel().dim() == 2);
  CHECK(s.image(Word{1, 0, 0}) == P("2*x1*x2*x1 - x1*x1*x2"));
  CHECK(s.image(Word{1, 1, 0}) == P("2*x2*x1*x2 - x1*x2*x2"));
  CHECK(s.image(Word{1, 0, 1}) == P("x2*x1*x2"));
  CHECK_FALSE(s.fixes(Word{1, 1, 0}));
  CHECK(s.fixes(Word{0, 1, 0}));
  const oracle::Basis b(2, 3);
  CHECK(oracle::operator_matrix(b, [&](const Word& w) { return s.image(w); }) ==
        oracle::projector_along(b, s.kernel().basis()));
}

TEST_CASE("identity and zero operators bound the lattice", "[operators]") {
  const ReductionOperator id = ReductionOperator::identity(2, 2), z = ReductionOperator::zero(2, 2);
  CHECK(id.is_identity());
  CHECK(z.kernel().dim() == 4);
  const ReductionOperator t = theta_inv(span({P("x2*x1 - x1*x2")}), 2);
  CHECK(leq(z, t));
  CHECK(leq(t, id));
  CHECK_FALSE(leq(id, t));
  CHECK(meet(t, id) == t);
  CHECK(join(t, z) == t);
  CHECK(meet_all({t, id, t}) == t);
  CHECK(join_all({t, z}) == t);
  CHECK_THROWS_AS(meet_all({}), PreconditionError);
  CHECK_THROWS_AS(meet(t, ReductionOperator::identity(2, 3)), PreconditionError);
}

TEST_CASE("alternating products have the right factor on the right", "[operators]") {
  const ReductionOperator a = theta_inv(span({P("x2*x2 - x2*x1")}), 2);
  const ReductionOperator b = theta_inv(span({P("x2*x1 - x1*x1")}), 2);
  // b(x2x2) = x2x2, a(x2x2) = x2x1, b(x2x1) = x1x1.
  CHECK(alternating_product(a, b, 1).image(Word{1, 1}) == P("x2*x2"));
  CHECK(alternating_product(a, b, 2).image(Word{1, 1}) == P("x2*x1"));
  CHECK(alternating_product(a, b, 3).image(Word{1, 1}) == P("x1*x1"));
  CHECK(alternating_product(b, a, 2).image(Word{1, 1}) == P("x1*x1"));
  CHECK_THROWS_AS(alternating_product(a, b, 0), PreconditionError);
  const ConfluenceWitness w = confluence(a, b, 64);
  CHECK(w.confluent);
  CHECK(w.k == 3);
  CHECK(w.limit == meet(a, b).to_map());
}

TEST_CASE("confluence witnesses on the fixtures", "[operators]") {
  SECTION("Yang-Mills side pairs meet at k = 3 and k = 5") {
    const Presentation p = support::fixture("yang_mills");
    auto [a4, b4] = side_pair(p, 1);
    auto [a5, b5] = side_pair(p, 2);
    const ConfluenceWitness w4 = confluence(a4, b4, 64), w5 = confluence(a5, b5, 64);
    CHECK(w4.confluent);
    CHECK(w4.k == 3);
    CHECK(w5.confluent);
    CHECK(w5.k == 5);
    // The two orders still differ at k = 2 on x2x2x2x1.
    const Word w{1, 1, 1, 0};
    CHECK(alternating_product(a4, b4, 2).image(w) == P("3*x2*x1*x2*x2 - 2*x1*x2*x2*x2"));
    CHECK(alternating_product(b4, a4, 2).image(w) == P("2*x2*x2*x1*x2 - x2*x1*x2*x2"));
    CHECK(alternating_product(a4, b4, 2).image(Word{1, 1, 0, 0}) ==
          P("2*x2*x1*x2*x1 - 2*x1*x2*x1*x2 + x1*x1*x2*x2"));
  }
  SECTION("symmetric algebra on three letters meets at k = 3") {
    const Presentation p = support::fixture("symmetric_d3");
    auto [a, b] = side_pair(p, 1);
    const ConfluenceWitness w = confluence(a, b, 64);
    CHECK(w.confluent);
    CHECK(w.k == 3);
  }
  SECTION("a pair with itself meets at k = 1") {
    const ReductionOperator t = support::fixture("yang_mills").S();
    const ConfluenceWitness w = confluence(t, t, 64);
    CHECK(w.confluent);
    CHECK(w.k == 1);
  }
  SECTION("xyx is side-confluent at k = 2") {
    const Presentation p = support::fixture("xyx");
    for (std::size_t m = 1; m <= 2; ++m) {
      auto [a, b] = side_pair(p, m);
      const ConfluenceWitness w = confluence(a, b, 64);
      CHECK(w.confluent);
      CHECK(w.k == 2);
    }
  }
}

TEST_CASE("non-confluent pairs are detected, caps are reported", "[operators]") {
  // ker a = span(x2 - x1), ker b = span(x2 + x1): meet is zero, but both
  // alternating sequences stabilise at different operators.
  const Alphabet one({"x1", "x2"});
  const ReductionOperator a = theta_inv(span({support::poly("x2 - x1", one)}), 2);
  const ReductionOperator b = theta_inv(span({support::poly("x2 + x1", one)}), 2);
  const ConfluenceWitness w = confluence(a, b, 64);
  CHECK_FALSE(w.confluent);
  CHECK_THROWS_AS(confluence(a, b, 1), UndeterminedError);
}

TEST_CASE("bounds of a confluent pair", "[operators]") {
  const Presentation p = support::fixture("yang_mills");
  auto [a, b] = side_pair(p, 1);
  const ConfluenceWitness w = confluence(a, b, 64);
  const PairRepresentation rep = represent(a, b, w);
  CHECK(rep.sigma == meet(a, b).to_map());
  CHECK(rep.sigma + rep.gamma1 + rep.gamma2 == join(a, b).to_map());
  CHECK(LinearMap::identity(2, 4) - rep.lambda == join(a, b).to_map());
  CHECK(compose(rep.gamma1, a.to_map()) == rep.gamma1);
  CHECK(compose(a.to_map(), rep.gamma1) == a.to_map() - rep.sigma);

  SECTION("gamma1 vanishes when T2 is the identity") {
    const ReductionOperator id = ReductionOperator::identity(2, 4);
    const ConfluenceWitness wi = confluence(a, id, 64);
    REQUIRE(wi.confluent);
    const PairRepresentation r = represent(a, id, wi);
    CHECK(r.gamma1 == LinearMap::zero(2, 4));
    CHECK(r.sigma == a.to_map());
  }
  SECTION("complemented product") {
    const LinearMap lambda = complemented_alternating(a, b, w.k);
    CHECK(lambda == LinearMap::identity(2, 4) - (rep.sigma + rep.gamma1 + rep.gamma2));
  }
  CHECK_THROWS_AS(represent(a, b, ConfluenceWitness{}), PreconditionError);
}
