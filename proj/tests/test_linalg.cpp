#include <catch_amalgamated.hpp>

#include "koszulkit/koszulkit.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace koszulkit;

namespace {
const Alphabet ab({"x1", "x2"});
HomogPoly P(const std::string& e) { return support::poly(e, ab); }
}  // namespace

TEST_CASE("span is the canonical reduced echelon basis", "[linalg]") {
  const Subspace s = span({P("x2*x1 - x1*x2"), P("2*x2*x1 + x1*x1"), P("x1*x2 + 1/2*x1*x1")});
  REQUIRE(s.dim() == 2);
  CHECK(s.basis()[0] == P("x2*x1 + 1/2*x1*x1"));
  CHECK(s.basis()[1] == P("x1*x2 + 1/2*x1*x1"));
  const oracle::Basis b(2, 2);
  CHECK(s.basis() == oracle::span(b, {P("x2*x1 - x1*x2"), P("2*x2*x1 + x1*x1"), P("x1*x2 + 1/2*x1*x1")}));
  CHECK(span({}, 3).is_zero());
  CHECK(Subspace::full(2, 2).dim() == 4);
}

TEST_CASE("reduce is the projector along the subspace", "[linalg]") {
  const Subspace s = span({P("x2*x2 - x1*x1"), P("x2*x1 - x1*x2")});
  CHECK(s.reduce(P("x2*x2")) == P("x1*x1"));
  CHECK(s.reduce(P("x2*x1 + x2*x2")) == P("x1*x2 + x1*x1"));
  CHECK(s.reduce_word(Word{0, 1}) == P("x1*x2"));
  CHECK(s.contains(P("x2*x2 + x2*x1 - x1*x2 - x1*x1")));
  CHECK_FALSE(s.contains(P("x1*x1")));
  const auto c = s.solve_in_basis(P("3*x2*x2 - 2*x2*x1 + 2*x1*x2 - 3*x1*x1"));
  CHECK(c == std::vector<Rational>{3, -2});
  CHECK_THROWS(s.solve_in_basis(P("x1*x1")));
}

TEST_CASE("sum and intersection match the dense oracle", "[linalg]") {
  const Subspace u = span({P("x2*x1 - x1*x2"), P("x2*x2")});
  const Subspace w = span({P("x2*x1 + x1*x2"), P("x2*x2 - x1*x1")});
  const oracle::Basis b(2, 2);
  CHECK(sum(u, w).basis() == oracle::sum(b, u.basis(), w.basis()));
  CHECK(intersect(u, w).basis() == oracle::intersect(b, u.basis(), w.basis()));
  CHECK(sum(u, w).dim() + intersect(u, w).dim() == u.dim() + w.dim());
  CHECK(u.includes(intersect(u, w)));
  CHECK(sum(u, w).includes(w));
  CHECK_THROWS_AS(sum(u, Subspace(3)), PreconditionError);
}

TEST_CASE("shifted relation spaces and their intersections", "[linalg]") {
  const Presentation p = support::fixture("yang_mills");
  const Subspace& r = p.relation_space();
  const Subspace left = tensor_with_words(r, 2, 1, 0);
  const Subspace right = tensor_with_words(r, 2, 0, 1);
  CHECK(left.basis() == oracle::span(oracle::Basis(2, 4), oracle::shifted(r.basis(), 2, 1, 0)));
  CHECK(right.basis() == oracle::span(oracle::Basis(2, 4), oracle::shifted(r.basis(), 2, 0, 1)));
  const Subspace cap = intersect(left, right);
  const HomogPoly f1 = r.basis()[1], f2 = r.basis()[0];  // lm(f2) = x2x2x1 > lm(f1)
  const HomogPoly v = tensor_expand(Word{1}, f1, Word{}) + tensor_expand(Word{0}, f2, Word{});
  CHECK(cap == span({v}));
  CHECK(cap.basis() == oracle::intersect(oracle::Basis(2, 4), left.basis(), right.basis()));

  const Subspace l5 = tensor_with_words(r, 2, 2, 0), m5 = tensor_with_words(r, 2, 1, 1), r5 = tensor_with_words(r, 2, 0, 2);
  CHECK(intersect(intersect(l5, m5), r5).basis() ==
        oracle::intersect(oracle::Basis(2, 5), oracle::intersect(oracle::Basis(2, 5), l5.basis(), m5.basis()), r5.basis()));
  CHECK(intersect(intersect(l5, m5), r5).is_zero());
}

TEST_CASE("linear maps compose and compare", "[linalg]") {
  const Subspace s = span({P("x2*x1 - x1*x2")});
  const ReductionOperator t = theta_inv(s, 2);
  const LinearMap m = t.to_map();
  CHECK(is_projector(m));
  CHECK(has_strict_descent(m));
  CHECK(compose(m, m) == m);
  const LinearMap id = LinearMap::identity(2, 2);
  CHECK((id - m) + m == id);
  CHECK(m.first_difference(id) == Word{1, 0});
  CHECK_FALSE(m.first_difference(m).has_value());
  LinearMap bad = LinearMap::identity(2, 2);
  bad.set_image(Word{0, 1}, P("x2*x1"));
  CHECK_FALSE(has_strict_descent(bad));
  CHECK_THROWS_AS(ReductionOperator::from_map(bad), InvariantViolation);
}

TEST_CASE("graded matrices compose and rank", "[linalg]") {
  GradedMap a("a", 0, 1, 0, 2, 3), b("b", 1, 2, 0, 3, 2);
  a.at(0, 0) = 1;
  a.at(1, 1) = 2;
  a.at(1, 2) = 2;
  b.at(0, 0) = 1;
  b.at(1, 1) = 1;
  b.at(2, 1) = -1;
  const GradedMap ab_ = compose(a, b);
  CHECK(ab_.rows == 2);
  CHECK(ab_.cols == 2);
  CHECK(ab_.is_zero() == false);
  CHECK(ab_.at(1, 1) == 0);
  CHECK(rank(a) == 2);
  CHECK(rank(ab_) == 1);
  CHECK_THROWS_AS(compose(a, a), PreconditionError);
}
