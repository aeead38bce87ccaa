#include <algorithm>
#include <set>

#include "doctest.h"
#include "fblow/blowup.hpp"
#include "fblow/budget.hpp"
#include "fblow/errors.hpp"
#include "fblow/frobenius.hpp"
#include "fixtures.hpp"

using namespace fblow;
using namespace fblow::testing;

namespace {

std::vector<std::string> sorted_strs(const std::vector<Polynomial>& v) {
  std::vector<std::string> out;
  for (const auto& f : v) out.push_back(f.str());
  std::sort(out.begin(), out.end());
  return out;
}

FractionalIdealRep ideal(const QRingPtr& r, std::initializer_list<const char*> gens) {
  FractionalIdealRep rep{r, {}};
  for (const char* g : gens) rep.generators.push_back(r->reduce(parse(g, r->ambient())));
  return rep;
}

// t_i -> f_i * T kills every element of J modulo I_R.
bool substitution_kills(const ReesPresentation& p) {
  const std::size_t n = p.base->ambient()->nvars();
  RingPtr big = p.ring->extended({"T_"});
  std::vector<std::size_t> same(p.ring->nvars());
  for (std::size_t i = 0; i < same.size(); ++i) same[i] = i;
  std::vector<std::size_t> s_map(n);
  for (std::size_t i = 0; i < n; ++i) s_map[i] = i;
  IdealGens rel(big);
  for (const auto& g : p.base->relations().gens()) rel.add(g.map_to(big, s_map));
  ReducedGB gb = buchberger(rel);
  const Polynomial T = Polynomial::variable(big, p.ring->nvars());
  for (const auto& g : p.J.basis()) {
    Polynomial h = g.map_to(big, same);
    for (std::size_t i = 0; i < p.generators.size(); ++i) h = h.substitute(n + i, p.generators[i].map_to(big, s_map) * T);
    if (!normal_form(h, gb).is_zero()) return false;
  }
  return true;
}

Chart chart_of(const QRingPtr& r) {
  Chart c(r->ambient());
  c.relations = r->relations();
  return c;
}

std::multiset<std::pair<bool, int>> smooth_profile(const std::vector<Chart>& cs) {
  std::multiset<std::pair<bool, int>> out;
  for (const auto& c : cs) {
    auto s = smooth_check(c);
    out.insert({s.smooth, s.singular_dim});
  }
  return out;
}

PresentedModule permute_columns(const PresentedModule& m, Gen& g) {
  auto a = entries(m);
  std::vector<std::size_t> perm(m.cols());
  for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = j;
  std::shuffle(perm.begin(), perm.end(), g.engine());
  auto b = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < perm.size(); ++j) b[i][j] = a[i][perm[j]];
  }
  return from_entries(m.ring(), b, m.cols());
}

}  // namespace

TEST_CASE("villamayor examples") {
  auto plane = qring(2, {"x", "y"}, {});
  auto free2 = PresentedModule(RMatrix(plane, 2, 1));
  CHECK(sorted_strs(villamayor_ideal(free2).generators) == std::vector<std::string>{"1"});
  CHECK(sorted_strs(villamayor_ideal(PresentedModule::free(plane, 3)).generators) == std::vector<std::string>{"1"});

  auto koszul = module(plane, {{"y"}, {"x"}});
  CHECK(sorted_strs(villamayor_ideal(koszul).generators) == std::vector<std::string>{"x", "y"});
}

TEST_CASE("villamayor ideal of F_*R cuts out the singular point") {
  for (const auto& entry : catalog()) {
    auto r = entry.ring.make();
    auto v = villamayor_ideal(pushforward(PresentedModule::free(r, 1), 1));
    INFO(entry.ring.name);
    CHECK(!v.generators.empty());
    CHECK(kunz_locus_agrees(*r, v));
  }
}

TEST_CASE("rees examples") {
  auto plane = qring(2, {"x", "y"}, {});
  auto p = rees(ideal(plane, {"x", "y"}));
  CHECK(p.t_vars == std::vector<std::string>{"t0", "t1"});
  CHECK(p.J == buchberger(IdealGens(p.ring, {parse("x*t1+y*t0", p.ring)})));
  CHECK(substitution_kills(p));

  auto principal = rees(ideal(plane, {"x*y+1"}));
  CHECK(principal.J.is_zero());
  CHECK(substitution_kills(principal));

  auto d41 = catalog_ring("D4_1");
  auto q = rees(ideal(d41, {"x", "y", "z"}));
  CHECK(substitution_kills(q));
  // J contains I_R
  CHECK(membership(parse("z^2+x^2*y+x*y^2+x*y*z", q.ring), q.J));

  CHECK_THROWS_AS(rees(FractionalIdealRep{plane, {}}), UnitIdealError);
}

TEST_CASE("charts examples") {
  auto plane = qring(2, {"x", "y"}, {});
  auto cs = charts(rees(ideal(plane, {"x", "y"})));
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].ring->var_names() == std::vector<std::string>{"x", "t1"});
  CHECK(cs[0].relations.empty());
  REQUIRE(cs[0].back_substitution.size() == 1);
  CHECK(cs[0].back_substitution[0].first == "y");
  CHECK(cs[0].back_substitution[0].second.str() == "x*t1");
  for (const auto& c : cs) {
    auto s = smooth_check(c);
    CHECK(s.smooth);
    CHECK(s.dim == 2);
    // the exceptional ideal is principal
    CHECK(buchberger(c.exceptional).basis().size() == 1);
  }

  // blowing up a principal ideal changes nothing
  auto d41 = catalog_ring("D4_1");
  auto pc = charts(rees(ideal(d41, {"x+y"})));
  REQUIRE(pc.size() == 1);
  CHECK(pc[0].ring->var_names() == d41->ambient()->var_names());
  CHECK(buchberger(pc[0].relations).basis() == d41->gb().basis());
}

TEST_CASE("smooth_check and r1_check examples") {
  auto plane = qring(2, {"x", "y"}, {});
  auto s = smooth_check(chart_of(plane));
  CHECK(s.smooth);
  CHECK(r1_check(s).r1);

  auto a1 = qring(3, {"x", "y", "z"}, {"z^2-x*y"});
  auto t = smooth_check(chart_of(a1));
  CHECK(!t.smooth);
  CHECK(t.dim == 2);
  CHECK(t.singular_dim == 0);
  CHECK(r1_check(t).r1);

  auto doubled = qring(2, {"x", "y", "z"}, {"x^2"});
  CHECK(!r1_check(chart_of(doubled)).r1);

  auto cusp = qring(2, {"x", "y"}, {"y^2+x^3"});
  auto c = smooth_check(chart_of(cusp));
  CHECK(!c.smooth);
  CHECK(c.singular_dim == 0);
  CHECK(!r1_check(c).r1);
}

TEST_CASE("fblowup of the plane is the identity") {
  auto plane = qring(2, {"x", "y"}, {});
  auto rep = fblowup(plane, 1);
  CHECK(rep.status == "complete");
  CHECK(rep.rank == 4);
  CHECK(rep.villamayor == std::vector<std::string>{"1"});
  REQUIRE(rep.charts.size() == 1);
  CHECK(rep.charts[0].smooth == true);
}

TEST_CASE("fblowup of D4^1") {
  auto rep = fblowup(catalog_ring("D4_1"), 1);
  REQUIRE(rep.status == "complete");
  CHECK(rep.rank == 4);
  CHECK(rep.blocks.size() == 4);
  CHECK(rep.kunz == true);
  CHECK(rep.charts.size() >= 3);
  bool singular = false;
  for (const auto& c : rep.charts) singular = singular || c.smooth == false;
  CHECK(singular);
  for (const auto& fc : fixture_checks(*find_entry("D4_1"), rep)) {
    INFO(fc.name);
    CHECK(fc.pass);
  }
}

TEST_CASE("fblowup of y^2z+yz^2+x^3 is smooth") {
  auto rep = fblowup(catalog_ring("E6t_nonfpure_p2"), 1);
  REQUIRE(rep.status == "complete");
  REQUIRE(!rep.charts.empty());
  for (const auto& c : rep.charts) CHECK(c.smooth == true);
}

TEST_CASE("property: Rees substitution identity on the catalog") {
  for (const char* name : {"D4_1", "E6_0", "E8_3", "D4_0"}) {
    auto r = catalog_ring(name);
    auto p = rees(villamayor_ideal(pushforward(PresentedModule::free(r, 1), 1)));
    INFO(name);
    CHECK(substitution_kills(p));
  }
}

TEST_CASE("property: Villamayor ideal does not depend on the column order") {
  Gen g(53);
  for (const char* name : {"D4_1", "E6_0", "D4_0"}) {
    auto r = catalog_ring(name);
    auto m = pushforward(PresentedModule::free(r, 1), 1);
    auto base = villamayor_ideal(m);
    auto base_rees = rees(base);
    for (int run = 0; run < 3; ++run) {
      auto v = villamayor_ideal(permute_columns(m, g));
      auto pr = rees(v);
      INFO(name << " run " << run);
      if (v.generators == base.generators) {
        CHECK(pr.J.basis() == base_rees.J.basis());
      } else {
        CHECK(smooth_profile(charts(pr)) == smooth_profile(charts(base_rees)));
      }
    }
  }
}

TEST_CASE("budget overrun gives a partial report") {
  Budget b;
  b.max_basis = 3;
  BudgetScope scope(b);
  auto rep = fblowup(catalog_ring("E8_3"), 1);
  CHECK(rep.status == "budget_exceeded");
  CHECK(!rep.incomplete_stage.empty());
}
