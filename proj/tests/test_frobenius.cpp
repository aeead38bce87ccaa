#include <cmath>

#include "doctest.h"
#include "fblow/frobenius.hpp"
#include "fblow/kernels.hpp"
#include "fixtures.hpp"

using namespace fblow;
using namespace fblow::testing;

namespace {

Monomial mono(std::size_t n, const std::vector<uint64_t>& e) {
  Monomial m(n);
  for (std::size_t i = 0; i < e.size(); ++i) m.set(i, static_cast<uint32_t>(e[i]));
  return m;
}

// Column b of U(f, e) from the definition: expand f * x^b and split every
// exponent m as q * (m div q) + (m mod q).
std::vector<Polynomial> expanded_column(const Polynomial& f, const PushforwardBasis& basis, std::size_t b) {
  const auto& S = f.ring();
  const std::size_t n = S->nvars();
  std::vector<Polynomial> col(basis.size(), Polynomial(S));
  Polynomial prod = f * Polynomial::monomial(S, mono(n, basis.to_multiindex(b)));
  for (const auto& t : prod.terms()) {
    std::vector<uint64_t> low(n), high(n);
    for (std::size_t i = 0; i < n; ++i) {
      low[i] = t.mono[i] % basis.q();
      high[i] = t.mono[i] / basis.q();
    }
    col[basis.to_number(low)] += Polynomial::monomial(S, mono(n, high), t.coeff);
  }
  return col;
}

std::string sig(const PresentedModule& m) { return signature(m).hash_hex(); }

}  // namespace

TEST_CASE("basis numbering round trip") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (uint64_t q : {2, 3, 4}) {
      PushforwardBasis basis(n, q);
      CHECK(basis.size() == static_cast<std::size_t>(std::pow(q, n)));
      for (std::size_t k = 0; k < basis.size(); ++k) CHECK(basis.to_number(basis.to_multiindex(k)) == k);
    }
  }
  // the first variable is the most significant digit
  PushforwardBasis b(2, 2);
  CHECK(b.to_multiindex(1) == std::vector<uint64_t>{0, 1});
  CHECK(b.to_multiindex(2) == std::vector<uint64_t>{1, 0});
}

TEST_CASE("u_monomial examples") {
  auto S = PolyRing::make(2, {"x"});
  auto one = u_monomial(S, Monomial(1), 1);
  CHECK(one == PolyMatrix::identity(S, 2));

  auto u = u_monomial(S, mono(1, {1}), 1);
  CHECK(u.at(0, 0).is_zero());
  CHECK(u.at(0, 1).str() == "x");
  CHECK(u.at(1, 0).str() == "1");
  CHECK(u.at(1, 1).is_zero());

  auto S3 = PolyRing::make(3, {"x", "y", "z"});
  Gen g(3);
  for (int run = 0; run < 20; ++run) {
    Monomial a = g.monomial(3, 6);
    auto m = u_monomial(S3, a, 2);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      int nonzero = 0;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m.at(i, j).is_zero()) continue;
        ++nonzero;
        CHECK(m.at(i, j).num_terms() == 1);
      }
      CHECK(nonzero == 1);
    }
  }
}

TEST_CASE("u_poly and u_matrix examples") {
  auto S = PolyRing::make(2, {"x", "y"});
  CHECK(u_poly(Polynomial(S), 1).is_zero());
  CHECK(u_poly(Polynomial(S), 1).rows() == 4);

  PolyMatrix zero(S, 1, 1);
  auto u = u_matrix(zero, 1);
  CHECK(u.rows() == 4);
  CHECK(u.cols() == 4);
  CHECK(u.is_zero());

  // a row (f) presents S/(f); its pushforward is torsion over S
  PolyMatrix row(S, 1, 1);
  row.at(0, 0) = parse("y^2+x^3", S);
  auto ur = u_matrix(row, 1);
  CHECK(ur.rows() == 4);
  auto r0 = QuotientRing::make(S, {});
  CHECK(module_rank(PresentedModule(r0, ur)) == 0);
}

TEST_CASE("property: u_poly is additive and multiplicative") {
  Gen g(41);
  int pairs = 0;
  for (unsigned e : {1u, 2u}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      std::vector<std::string> vars{"x", "y", "z"};
      vars.resize(n);
      auto S = PolyRing::make(2, vars);
      for (int run = 0; run < 17; ++run, ++pairs) {
        Polynomial f = g.poly(S, 4, 4), h = g.poly(S, 4, 4);
        CHECK(u_poly(f + h, e) == u_poly(f, e) + u_poly(h, e));
        CHECK(u_poly(f * h, e) == u_poly(f, e) * u_poly(h, e));
      }
    }
  }
  auto S = PolyRing::make(3, {"x", "y"});
  for (int run = 0; run < 98; ++run, ++pairs) {
    Polynomial f = g.poly(S, 3, 4), h = g.poly(S, 3, 4);
    CHECK(u_poly(f * h, 1) == u_poly(f, 1) * u_poly(h, 1));
  }
  CHECK(pairs == 200);
}

TEST_CASE("property: u_poly columns expand f times the basis monomial") {
  Gen g(43);
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<std::string> vars{"x", "y", "z"};
    vars.resize(n);
    auto S = PolyRing::make(2, vars);
    PushforwardBasis basis(n, 2);
    for (int run = 0; run < 10; ++run) {
      Polynomial f = g.poly(S, 5, 5);
      auto u = u_poly(f, 1);
      for (std::size_t b = 0; b < basis.size(); ++b) CHECK(u.column(b) == expanded_column(f, basis, b));
    }
  }
}

TEST_CASE("property: serial and parallel u_matrix agree") {
  Gen g(47);
  auto S = PolyRing::make(3, {"x", "y", "z"});
  for (int run = 0; run < 10; ++run) {
    PolyMatrix a(S, g.uniform(1, 3), g.uniform(1, 3));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) = g.poly(S, 3, 4);
    }
    for (uint64_t q : {3u, 9u}) CHECK(kernels::u_matrix_serial(a, q) == kernels::u_matrix_parallel(a, q));
  }
}

TEST_CASE("pushforward of free modules") {
  auto plane = qring(2, {"x", "y"}, {});
  auto f = pushforward(PresentedModule::free(plane, 2), 1);
  CHECK(f.rows() == 8);
  CHECK(f.cols() == 0);

  for (const auto& entry : catalog()) {
    auto r = entry.ring.make();
    INFO(entry.ring.name);
    const std::size_t p = entry.ring.characteristic;
    CHECK(module_rank(pushforward(PresentedModule::free(r, 1), 1)) == p * p);
  }
  CHECK(module_rank(pushforward(PresentedModule::free(catalog_ring("E6_0"), 1), 2)) == 16);
  CHECK(module_rank(pushforward(PresentedModule::free(catalog_ring("D4_1"), 1), 2)) == 16);
}

TEST_CASE("pushforward lifts relations") {
  auto r = catalog_ring("D4_1");
  auto m = companion("D4_1", "B1");
  auto lifted = lift_presentation(m);
  // 2 columns of B1 and the relation times each of the 2 generators
  CHECK(lifted.rows() == 2);
  CHECK(lifted.cols() == 4);
  auto f = pushforward(m, 1);
  CHECK(module_rank(f) == 4);
}

TEST_CASE("iteration identity at signature level") {
  for (const char* name : {"E6_0", "D4_0", "D6_0"}) {
    auto r = catalog_ring(name);
    auto once = pushforward(PresentedModule::free(r, 1), 1);
    INFO(name);
    CHECK(sig(pushforward(once, 1)) == sig(pushforward(PresentedModule::free(r, 1), 2)));
  }
}
