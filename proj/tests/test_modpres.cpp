#include <algorithm>
#include <set>

#include "doctest.h"
#include "fblow/frobenius.hpp"
#include "fixtures.hpp"

using namespace fblow;
using namespace fblow::testing;

namespace {

QRingPtr plane() { return qring(2, {"x", "y"}, {}); }

// The ideal (gens) + I as a reduced GB.
ReducedGB with_ring(const IdealGens& gens, const QuotientRing& r) {
  IdealGens all = gens;
  for (const auto& f : r.relations().gens()) all.add(f);
  return buchberger(all);
}

ReducedGB ideal_of(const QRingPtr& r, std::initializer_list<const char*> gens) {
  IdealGens I(r->ambient());
  for (const char* g : gens) I.add(parse(g, r->ambient()));
  return with_ring(I, *r);
}

std::vector<std::string> row_strings(const PresentedModule& m, std::size_t i) {
  std::vector<std::string> out;
  for (const auto& f : m.matrix().matrix().row(i)) out.push_back(f.str());
  return out;
}

}  // namespace

TEST_CASE("module_rank examples") {
  auto r = plane();
  CHECK(module_rank(PresentedModule(RMatrix(r, 3, 2))) == 3);
  CHECK(module_rank(module(r, {{"x"}})) == 0);
  CHECK(module_rank(companion("D4_1", "B1")) == 1);
  CHECK(module_rank(companion("E6_0", "A1")) == 2);
}

TEST_CASE("fitting_ideal examples") {
  auto r = plane();
  auto diag = module(r, {{"x", "0"}, {"0", "y"}});
  CHECK(with_ring(fitting_ideal(2, diag), *r).is_unit());
  CHECK(with_ring(fitting_ideal(0, diag), *r) == ideal_of(r, {"x*y"}));
  CHECK(with_ring(fitting_ideal(1, diag), *r) == ideal_of(r, {"x", "y"}));

  auto d41 = catalog_ring("D4_1");
  auto b1 = companion("D4_1", "B1");
  CHECK(with_ring(fitting_ideal(1, b1), *d41) == ideal_of(d41, {"z", "x+y+z", "x*y"}));
  // det = z^2 + xy(x+y+z) lies in I
  CHECK(with_ring(fitting_ideal(0, b1), *d41) == ideal_of(d41, {}));
  CHECK_THROWS_AS(fitting_ideal(3, b1), std::out_of_range);
}

TEST_CASE("prune examples") {
  auto r = plane();
  auto unit = prune(module(r, {{"1"}}));
  CHECK(unit.rows() == 0);
  CHECK(unit.cols() == 0);

  auto zero = prune(module(r, {{"0"}}));
  CHECK(zero.rows() == 1);
  CHECK(zero.cols() == 1);
  CHECK(zero.matrix().at(0, 0).is_zero());

  auto dup = prune(module(r, {{"x", "x"}, {"y", "y"}}));
  REQUIRE(dup.cols() == 1);
  CHECK(row_strings(dup, 0) == std::vector<std::string>{"x"});
  CHECK(row_strings(dup, 1) == std::vector<std::string>{"y"});

  // a unit pivot removes a generator; the rest is untouched
  auto pivot = prune(module(r, {{"1", "x"}, {"y", "0"}}));
  CHECK(pivot.rows() == 1);
  CHECK(module_rank(pivot) == 0);
  CHECK(signature(pivot) == signature(module(r, {{"x*y"}})));
}

TEST_CASE("block_decompose examples") {
  auto b1 = companion("D4_1", "B1");
  auto b2 = companion("D4_1", "B2");
  auto blocks = block_decompose(direct_sum({b1, b2}));
  REQUIRE(blocks.size() == 2);
  std::multiset<std::string> got{signature(blocks[0]).hash_hex(), signature(blocks[1]).hash_hex()};
  std::multiset<std::string> want{signature(b1).hash_hex(), signature(b2).hash_hex()};
  CHECK(got == want);

  auto d41 = catalog_ring("D4_1");
  auto f = block_decompose(pushforward(PresentedModule::free(d41, 1), 1));
  REQUIRE(f.size() == 4);
  std::set<std::string> sigs;
  int free_blocks = 0;
  for (const auto& b : f) {
    CHECK(module_rank(b) == 1);
    if (b.cols() == 0) {
      ++free_blocks;
    } else {
      CHECK(b.rows() == 2);
      sigs.insert(signature(b).hash_hex());
    }
  }
  CHECK(free_blocks == 1);
  CHECK(sigs.size() == 3);

  auto e60 = catalog_ring("E6_0");
  auto g = block_decompose(pushforward(PresentedModule::free(e60, 1), 1));
  REQUIRE(g.size() == 2);
  for (const auto& b : g) {
    CHECK(b.rows() == 4);
    CHECK(module_rank(b) == 2);
  }
}

TEST_CASE("block_decompose without endomorphisms only uses components") {
  auto e60 = catalog_ring("E6_0");
  auto m = pushforward(PresentedModule::free(e60, 1), 1);
  DecomposeOptions opts;
  opts.use_endomorphisms = false;
  auto blocks = block_decompose(m, opts);
  std::size_t rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  CHECK(rows == m.rows());
  CHECK(signature(direct_sum(blocks)) == signature(m));
}

TEST_CASE("signature examples") {
  auto r = plane();
  CHECK(signature(PresentedModule::free(r, 1)) == signature(module(r, {{"0"}})));
  CHECK(signature(PresentedModule::free(r, 1)) == signature(module(r, {{"0", "0"}})));

  auto b1 = signature(companion("D4_1", "B1"));
  auto b2 = signature(companion("D4_1", "B2"));
  auto b3 = signature(companion("D4_1", "B3"));
  CHECK(b1 != b2);
  CHECK(b1 != b3);
  CHECK(b2 != b3);

  // A3 is the transpose of A2. A square matrix and its transpose have the
  // same minors, so every Fitting ideal agrees and the signature cannot
  // tell the two modules apart.
  auto a2 = signature(companion("E6_0", "A2"));
  auto a3 = signature(companion("E6_0", "A3"));
  CHECK(a2 == a3);
  CHECK(signature(companion("E6_0", "A1")) != a2);
}

TEST_CASE("signature hashes are stable") {
  CHECK(signature(companion("E6_0", "A1")).hash_hex() == "80ab14b83d148045");
  CHECK(signature(companion("E6_0", "A2")).hash_hex() == "ede6499811c55db0");
  CHECK(signature(companion("E6_0", "A3")).hash_hex() == "ede6499811c55db0");
}

TEST_CASE("module_normal_form examples") {
  auto r = plane();
  auto S = r->ambient();
  Column b{parse("x", S), parse("y", S)};
  CHECK(module_normal_form(b, {b}, *r) == Column{r->zero(), r->zero()});

  auto d41 = catalog_ring("D4_1");
  Column f{parse("z^2+x", d41->ambient())};
  CHECK(module_normal_form(f, {}, *d41)[0] == d41->reduce(f[0]));

  // Koszul syzygy of (x, y): (y, x) is in the span of itself but not of
  // (x, y)
  Column koszul{parse("y", S), parse("x", S)};
  CHECK(module_normal_form(koszul, {koszul}, *r) == Column{r->zero(), r->zero()});
  CHECK(module_normal_form(koszul, {b}, *r) != Column{r->zero(), r->zero()});
}

TEST_CASE("property: signature is invariant under elementary operations") {
  Gen g(11);
  for (const auto& fx : small_fixtures()) {
    const InvariantSignature want = signature(fx.module);
    for (int run = 0; run < 4; ++run) {
      auto m = scramble(g, fx.module, 6);
      INFO(fx.name << " run " << run);
      CHECK(signature(m) == want);
    }
  }
}

TEST_CASE("property: rank plus matrix rank is the number of rows") {
  Gen g(5);
  std::vector<PresentedModule> ms;
  for (const auto& fx : small_fixtures()) ms.push_back(fx.module);
  for (const char* name : {"D4_1", "E6_0", "E8_3", "D6_0"}) {
    ms.push_back(pushforward(PresentedModule::free(catalog_ring(name), 1), 1));
  }
  for (const auto& m : ms) {
    CHECK(module_rank(m) + matrix_rank(m.matrix()) == m.rows());
    CHECK(module_rank(m) == module_rank_by_minors(m, g.uniform(0, 1000)));
  }
}

TEST_CASE("property: rank agrees with the minors method on random matrices") {
  Gen g(19);
  auto r = qring(3, {"x", "y", "z"}, {"x*y-z^2"});
  for (int run = 0; run < 40; ++run) {
    const std::size_t t = g.uniform(1, 4), s = g.uniform(0, 4);
    std::vector<std::vector<Polynomial>> a(t);
    for (auto& row : a) {
      for (std::size_t j = 0; j < s; ++j) row.push_back(g.coin() ? r->reduce(g.poly(r->ambient(), 2, 2)) : r->zero());
    }
    auto m = from_entries(r, a, s);
    CHECK(module_rank(m) == module_rank_by_minors(m, run));
  }
}

TEST_CASE("property: blocks add up and reassemble to the same module") {
  for (const char* name : {"D4_1", "E6_0", "E8_3", "D4_0"}) {
    auto m = pushforward(PresentedModule::free(catalog_ring(name), 1), 1);
    auto blocks = block_decompose(m);
    std::size_t rows = 0, rank = 0;
    for (const auto& b : blocks) {
      rows += b.rows();
      rank += module_rank(b);
    }
    INFO(name);
    CHECK(rows == m.rows());
    CHECK(rank == module_rank(m));
    CHECK(signature(direct_sum(blocks)) == signature(m));
  }
  // the column count is preserved when only components are split
  auto m = pushforward(PresentedModule::free(catalog_ring("D4_1"), 1), 1);
  DecomposeOptions opts;
  opts.use_endomorphisms = false;
  std::size_t cols = 0;
  for (const auto& b : block_decompose(m, opts)) cols += b.cols();
  CHECK(cols == m.cols());
}

TEST_CASE("property: Fitting ideals increase") {
  Gen g(23);
  std::vector<PresentedModule> ms;
  for (const auto& fx : small_fixtures()) ms.push_back(fx.module);
  ms.push_back(pushforward(PresentedModule::free(catalog_ring("D4_1"), 1), 1));
  for (const auto& m : ms) {
    const QuotientRing& R = *m.ring();
    for (int run = 0; run < 3; ++run) {
      std::size_t k = g.uniform(0, m.rows() - 1);
      ReducedGB next = with_ring(fitting_ideal(k + 1, m), R);
      CHECK(ideal_contains(next, fitting_ideal(k, m)));
    }
  }
}

TEST_CASE("property: prune preserves the signature") {
  Gen g(29);
  for (const auto& fx : small_fixtures()) {
    auto m = scramble(g, fx.module, 4);
    // a unit pivot hides one more generator
    auto a = entries(m);
    for (auto& row : a) row.push_back(m.ring()->zero());
    std::vector<Polynomial> extra(m.cols() + 1, m.ring()->zero());
    extra.back() = m.ring()->one();
    a.push_back(extra);
    auto padded = from_entries(m.ring(), a, m.cols() + 1);
    INFO(fx.name);
    CHECK(signature(prune(padded)) == signature(m));
    CHECK(signature(prune(m)) == signature(m));
  }
}
