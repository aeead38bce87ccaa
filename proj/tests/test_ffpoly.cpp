#include <sstream>

#include "doctest.h"
#include "fblow/errors.hpp"
#include "fblow/parse.hpp"
#include "gen.hpp"

using namespace fblow;
using fblow::testing::Gen;

namespace {

RingPtr ring(uint32_t p, std::vector<std::string> vars, TermOrder ord = TermOrder::grevlex()) {
  return PolyRing::make(p, std::move(vars), ord);
}

Polynomial P(const RingPtr& r, const char* s) { return parse(s, r); }

}  // namespace

TEST_CASE("prime field arithmetic") {
  PrimeFieldElement a(4, 5), b(3, 5);
  CHECK((a + b).value() == 2);
  CHECK((a - b).value() == 1);
  CHECK((b - a).value() == 4);
  CHECK((a * b).value() == 2);
  CHECK((-a).value() == 1);
  CHECK((a * a.inverse()).value() == 1);
  CHECK(PrimeFieldElement(-7, 5).value() == 3);
  CHECK(a.pow(4).value() == 1);
  CHECK_THROWS_AS(PrimeFieldElement(0, 5).inverse(), std::domain_error);
  CHECK_THROWS(PrimeFieldElement(1, 6));
  CHECK_THROWS(a + PrimeFieldElement(1, 7));
  std::ostringstream os;
  os << a;
  CHECK(os.str().find('4') != std::string::npos);

  for (uint32_t p : {2u, 3u, 5u, 7u, 65521u}) {
    PrimeField F(p);
    for (uint32_t v = 1; v < std::min<uint32_t>(p, 500); ++v) CHECK(F.mul(v, F.inv(v)) == 1);
  }
  CHECK_THROWS(PrimeField(1));
  CHECK_THROWS(PrimeField(65537));
}

TEST_CASE("qsplit") {
  auto [q1, r1] = qsplit(Monomial{3, 1}, 2);
  CHECK(q1 == Monomial{1, 0});
  CHECK(r1 == Monomial{1, 1});
  auto [q2, r2] = qsplit(Monomial{5, 7, 2}, 4);
  CHECK(q2 == Monomial{1, 1, 0});
  CHECK(r2 == Monomial{1, 3, 2});
  auto [q3, r3] = qsplit(Monomial{5, 7, 2}, 1);
  CHECK(q3 == Monomial{5, 7, 2});
  CHECK(r3.is_one());
  CHECK_THROWS_AS(qsplit(Monomial{1}, 0), std::invalid_argument);

  Gen g(11);
  for (int it = 0; it < 500; ++it) {
    Monomial m = g.monomial(4, 40);
    uint32_t q = static_cast<uint32_t>(g.uniform(1, 9));
    auto [qt, rm] = qsplit(m, q);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(rm[i] < q);
      CHECK(qt[i] * q + rm[i] == m[i]);
    }
  }
}

TEST_CASE("monomial overflow is an error") {
  Monomial big{0xFFFFFFF0u};
  CHECK_THROWS_AS(big * big, std::overflow_error);
  CHECK_THROWS_AS(big.pow(2), std::overflow_error);
}

TEST_CASE("term orders") {
  auto lex = TermOrder::lex();
  auto grl = TermOrder::grevlex();
  auto blk = TermOrder::block_elimination(1);
  // x > y^5 in lex but not in grevlex
  CHECK(lex.compare(Monomial{1, 0, 0}, Monomial{0, 5, 0}) > 0);
  CHECK(grl.compare(Monomial{1, 0, 0}, Monomial{0, 5, 0}) < 0);
  CHECK(blk.compare(Monomial{1, 0, 0}, Monomial{0, 5, 0}) > 0);
  // grevlex: x*z < y^2
  CHECK(grl.compare(Monomial{1, 0, 1}, Monomial{0, 2, 0}) < 0);
  CHECK(blk.compare(Monomial{0, 1, 1}, Monomial{0, 0, 3}) < 0);

  Gen g(7);
  for (const auto& ord : {lex, grl, blk, TermOrder::block_elimination(2)}) {
    Monomial one(3);
    for (int it = 0; it < 300; ++it) {
      Monomial a = g.monomial(3, 6), b = g.monomial(3, 6), c = g.monomial(3, 6);
      int ab = ord.compare(a, b);
      CHECK(ab == -ord.compare(b, a));
      CHECK((ab == 0) == (a == b));
      CHECK(ord.compare(a * c, b * c) == ab);
      CHECK(ord.compare(a, one) >= 0);
      if (ab < 0 && ord.compare(b, c) < 0) CHECK(ord.compare(a, c) < 0);
    }
  }
}

TEST_CASE("parse examples") {
  auto r2 = ring(2, {"x", "y", "z"});
  Polynomial f = P(r2, "z^2+x^2*y+x*y^2+x*y*z");
  CHECK(f.num_terms() == 4);
  CHECK(f.leading_monomial() == Monomial{2, 1, 0});
  CHECK(P(r2, "0").is_zero());
  CHECK(P(r2, "0").str() == "0");

  auto r3 = ring(3, {"x", "y", "z"});
  try {
    P(r3, "x(x-z^2)(x-2z^2)-y^2");
    FAIL("juxtaposition accepted");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::Syntax);
    CHECK(e.position() == 1);
  }
  // x(x^2 - 3xz^2 + 2z^4) - y^2 with 3 = 0
  Polynomial e8 = P(r3, "x*(x-z^2)*(x-2*z^2)-y^2");
  CHECK(e8 == P(r3, "x^3+2*x*z^4+2*y^2"));
  CHECK(e8.num_terms() == 3);
}

TEST_CASE("parse errors") {
  auto r = ring(5, {"x", "y"});
  auto kind_of = [&](const char* s) {
    try {
      P(r, s);
    } catch (const ParseError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  CHECK(kind_of("2x") == static_cast<int>(ParseError::Kind::Syntax));
  CHECK(kind_of("x y") == static_cast<int>(ParseError::Kind::Syntax));
  CHECK(kind_of("x+") == static_cast<int>(ParseError::Kind::Syntax));
  CHECK(kind_of("(x") == static_cast<int>(ParseError::Kind::Syntax));
  CHECK(kind_of("x^y") == static_cast<int>(ParseError::Kind::Syntax));
  CHECK(kind_of("x^-1") == static_cast<int>(ParseError::Kind::Syntax));
  CHECK(kind_of("") == static_cast<int>(ParseError::Kind::Syntax));
  CHECK(kind_of("w+1") == static_cast<int>(ParseError::Kind::UnknownVariable));
  CHECK(kind_of("x^99999999999") == static_cast<int>(ParseError::Kind::ExponentOverflow));
  CHECK(kind_of("x^4000000000*x^4000000000") == static_cast<int>(ParseError::Kind::ExponentOverflow));
  CHECK(kind_of(" - x ^ 2 * ( y - 3 ) ") == -1);
  CHECK(P(r, "123456789123456789123456789") == Polynomial::constant(r, 4));  // ...789 = 4 mod 5
  CHECK(P(r, "--x") == P(r, "x"));
  CHECK(P(r, "-x^2") == -P(r, "x^2"));
  CHECK(P(r, "2^3") == Polynomial::constant(r, 3));
}

TEST_CASE("format") {
  auto r = ring(5, {"x", "y"});
  CHECK(P(r, "3*x^2*y + x + 4").str() == "3*x^2*y+x+4");
  CHECK(P(r, "1").str() == "1");
  CHECK(P(r, "-y").str() == "4*y");
}

TEST_CASE("arithmetic examples") {
  auto r2 = ring(2, {"x", "y"});
  CHECK(P(r2, "(x+y)^2") == P(r2, "x^2+y^2"));
  CHECK((P(r2, "x+y") * Polynomial(r2)).is_zero());
  auto r3 = ring(3, {"x", "y"});
  CHECK(P(r3, "x+2*y") * P(r3, "x+y") == P(r3, "x^2+2*y^2"));
  auto other = ring(3, {"x", "z"});
  CHECK_THROWS_AS(P(r3, "x") + P(other, "x"), RingError);
  CHECK_THROWS_AS(PolyRing::make(3, {"x", "x"}), RingError);
  CHECK_THROWS_AS(PolyRing::make(4, {"x"}), RingError);
}

TEST_CASE("derivative and substitution") {
  auto r = ring(2, {"x", "y", "z"});
  CHECK(P(r, "x^2").derivative(0).is_zero());
  CHECK(P(r, "z^2+x^3+y^2*z").derivative(0) == P(r, "x^2"));
  CHECK(P(r, "z^2+x^3+y^2*z").derivative(1).is_zero());
  CHECK(P(r, "z^2+x^3+y^2*z").derivative(2) == P(r, "y^2"));
  CHECK(P(r, "x*y+z").substitute(1, P(r, "x+1")) == P(r, "x^2+x+z"));
  auto r5 = ring(5, {"a", "b"});
  CHECK(P(r5, "a^7*b").derivative(0) == P(r5, "2*a^6*b"));
}

TEST_CASE("ring axioms on random polynomials") {
  Gen g(2024);
  for (uint32_t p : {2u, 3u, 5u, 7u}) {
    auto r = ring(p, {"x", "y", "z"});
    for (int it = 0; it < 60; ++it) {
      Polynomial f = g.poly(r, 5, 4), h = g.poly(r, 5, 4), k = g.poly(r, 5, 4);
      CHECK((f + h) + k == f + (h + k));
      CHECK(f + h == h + f);
      CHECK(f * h == h * f);
      CHECK((f * h) * k == f * (h * k));
      CHECK(f * (h + k) == f * h + f * k);
      CHECK(f - f == Polynomial(r));
      CHECK((f + h).pow(p) == f.pow(p) + h.pow(p));
    }
  }
}

TEST_CASE("parse and format round trip") {
  Gen g(99);
  for (uint32_t p : {2u, 3u, 5u, 101u}) {
    for (auto ord : {TermOrder::grevlex(), TermOrder::lex(), TermOrder::block_elimination(1)}) {
      auto r = ring(p, {"x", "y", "z", "t0"}, ord);
      for (int it = 0; it < 50; ++it) {
        Polynomial f = g.poly(r, 8, 7);
        CHECK(parse(format(f), r) == f);
      }
    }
  }
}

TEST_CASE("canonical form is maintained") {
  Gen g(5);
  auto r = ring(3, {"x", "y", "z"});
  for (int it = 0; it < 100; ++it) {
    Polynomial f = g.poly(r, 6, 5) * g.poly(r, 6, 5) - g.poly(r, 6, 5);
    const auto& t = f.terms();
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(t[i].coeff != 0);
      CHECK(t[i].coeff < 3);
      if (i > 0) CHECK(r->order().compare(t[i - 1].mono, t[i].mono) > 0);
    }
  }
}

TEST_CASE("matrices") {
  auto r = ring(3, {"x", "y"});
  PolyMatrix a(r, 2, 2);
  a.at(0, 0) = P(r, "x");
  a.at(0, 1) = P(r, "y");
  a.at(1, 1) = P(r, "1");
  PolyMatrix id = PolyMatrix::identity(r, 2);
  CHECK(a * id == a);
  CHECK(id * a == a);
  CHECK(a.transpose().transpose() == a);
  CHECK((a - a).is_zero());
  PolyMatrix h = hstack(a, id);
  CHECK(h.cols() == 4);
  CHECK(h.at(1, 3) == P(r, "1"));
  PolyMatrix v = vstack(a, id);
  CHECK(v.rows() == 4);
  CHECK(v.at(2, 0) == P(r, "1"));
  CHECK(a.select_columns({1}).at(0, 0) == P(r, "y"));
  CHECK_THROWS(a * PolyMatrix(r, 3, 1));
}
