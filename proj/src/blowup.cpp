#include "fblow/blowup.hpp"

#include <algorithm>
#include <chrono>

#include "fblow/budget.hpp"
#include "fblow/errors.hpp"
#include "fblow/frobenius.hpp"
#include "fblow/kernels.hpp"

namespace fblow {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::string> strs(const std::vector<Polynomial>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& f : v) out.push_back(f.str());
  return out;
}

// Drops generators already in the ideal of I plus the ones kept so far,
// smallest degree first.
std::vector<Polynomial> drop_redundant(std::vector<Polynomial> gens, const IdealGens& base) {
  std::stable_sort(gens.begin(), gens.end(),
                   [](const Polynomial& a, const Polynomial& b) { return a.degree() < b.degree(); });
  std::vector<Polynomial> kept;
  IdealGens acc = base;
  ReducedGB gb = buchberger(acc);
  for (const auto& g : gens) {
    if (membership(g, gb)) continue;
    kept.push_back(g);
    acc.add(g);
    gb = buchberger(acc);
  }
  return kept;
}

// If the divisorial hull (a) : ((a) : I) of I is principal, gR, then I : g is
// an isomorphic ideal whose zero set has no codimension-one part.
std::vector<Polynomial> strip_divisor(const QuotientRing& R, std::vector<Polynomial> gens) {
  if (gens.size() < 2) return gens;
  const IdealGens& rel = R.relations();
  IdealGens with_rel = rel;
  for (const auto& g : gens) with_rel.add(g);
  auto smallest = std::min_element(gens.begin(), gens.end(), [](const Polynomial& a, const Polynomial& b) {
    return a.degree() < b.degree();
  });
  IdealGens a = rel;
  a.add(*smallest);
  IdealGens hull = ideal_quotient(a, ideal_quotient(a, with_rel));
  ReducedGB hull_gb = buchberger(hull);
  std::vector<Polynomial> cands;
  for (const auto& h : hull_gb.basis()) {
    Polynomial c = R.reduce(h);
    if (!c.is_zero()) cands.push_back(c.monic());
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Polynomial& x, const Polynomial& y) { return x.degree() < y.degree(); });
  for (const auto& g : cands) {
    if (g.is_unit()) return gens;
    IdealGens principal = rel;
    principal.add(g);
    if (!ideal_contains(buchberger(principal), hull)) continue;
    std::vector<Polynomial> out;
    const IdealGens quotient = ideal_quotient(with_rel, g);
    for (const auto& h : quotient.gens()) {
      Polynomial x = R.reduce(h);
      if (!x.is_zero()) out.push_back(x.monic());
    }
    return out;
  }
  return gens;
}

}  // namespace

FractionalIdealRep villamayor_ideal(const PresentedModule& m) {
  const QRingPtr& R = m.ring();
  const std::size_t t = m.rows();
  const std::size_t r = module_rank(m);
  const std::size_t need = t - r;
  FractionalIdealRep out{R, {}};
  if (need == 0) {
    out.generators.push_back(R->one());
    return out;
  }
  std::vector<std::size_t> selected;
  for (std::size_t j = 0; j < m.cols() && selected.size() < need; ++j) {
    active_budget().check_time();
    auto cand = selected;
    cand.push_back(j);
    RMatrix sub(R, m.matrix().matrix().select_columns(cand));
    if (matrix_rank(sub) == cand.size()) selected = std::move(cand);
  }
  if (selected.size() < need) throw InvariantViolation("column selection did not reach t - rank columns");
  PolyMatrix sub = m.matrix().matrix().select_columns(selected);
  auto reduce = [&R](const Polynomial& f) { return R->reduce(f); };
  std::vector<Polynomial> gens;
  for (auto& f : kernels::minors_parallel(sub, need, reduce)) {
    f = R->reduce(f);
    if (f.is_zero()) continue;
    f = f.monic();
    if (std::find(gens.begin(), gens.end(), f) == gens.end()) gens.push_back(std::move(f));
  }
  // strip a common polynomial factor; the result is an isomorphic ideal
  // without that divisor in its zero set
  Polynomial g(R->ambient());
  for (const auto& f : gens) {
    g = polynomial_gcd(g, f);
    if (g.is_unit()) break;
  }
  if (!g.is_zero() && !g.is_unit()) {
    std::vector<Polynomial> stripped;
    for (const auto& f : gens) {
      Polynomial h = R->reduce(*exact_quotient(f, g));
      if (h.is_zero()) continue;
      h = h.monic();
      if (std::find(stripped.begin(), stripped.end(), h) == stripped.end()) stripped.push_back(std::move(h));
    }
    gens = std::move(stripped);
  }
  gens = strip_divisor(*R, std::move(gens));
  out.generators = drop_redundant(std::move(gens), R->relations());
  return out;
}

ReesPresentation rees(const FractionalIdealRep& ideal) {
  const QRingPtr& R = ideal.ring;
  const RingPtr& S = R->ambient();
  const std::size_t n = S->nvars();
  const std::size_t m = ideal.generators.size();
  if (m == 0) throw UnitIdealError("Rees algebra of the zero ideal");
  std::vector<std::string> tv;
  RingPtr probe = S;
  for (std::size_t i = 0; i < m; ++i) {
    std::string name = "t" + std::to_string(i);
    if (probe->index_of(name)) name = probe->fresh_name(name);
    tv.push_back(name);
    probe = probe->extended({name});
  }
  const std::string T = probe->fresh_name("T");
  std::vector<std::string> extra{T};
  extra.insert(extra.end(), tv.begin(), tv.end());
  RingPtr big = S->extended(extra);
  std::vector<std::size_t> s_to_big(n);
  for (std::size_t i = 0; i < n; ++i) s_to_big[i] = i;

  IdealGens gens(big);
  for (const auto& g : R->relations().gens()) gens.add(g.map_to(big, s_to_big));
  const Polynomial Tv = Polynomial::variable(big, n);
  for (std::size_t i = 0; i < m; ++i) {
    gens.add(Polynomial::variable(big, n + 1 + i) - ideal.generators[i].map_to(big, s_to_big) * Tv);
  }
  IdealGens elim = eliminate(gens, {n});

  RingPtr St = S->extended(tv);
  std::vector<std::size_t> big_to_st(n + 1 + m, 0);
  for (std::size_t i = 0; i < n; ++i) big_to_st[i] = i;
  for (std::size_t i = 0; i < m; ++i) big_to_st[n + 1 + i] = n + i;
  IdealGens j(St);
  for (const auto& g : elim.gens()) j.add(g.map_to(St, big_to_st));
  for (const auto& g : R->relations().gens()) j.add(g.map_to(St, s_to_big));
  return ReesPresentation{R, St, tv, buchberger(j), ideal.generators};
}

std::vector<Chart> charts(const ReesPresentation& p) {
  const RingPtr& ring = p.ring;
  const std::size_t nv = ring->nvars();
  const std::size_t n = p.base->ambient()->nvars();
  const auto& F = ring->field();
  std::vector<std::size_t> s_map(n);
  for (std::size_t i = 0; i < n; ++i) s_map[i] = i;

  std::vector<Chart> out;
  for (std::size_t ci = 0; ci < p.t_vars.size(); ++ci) {
    const std::size_t tvar = n + ci;
    const Polynomial one = Polynomial::constant(ring, 1);
    std::vector<Polynomial> gens;
    for (const auto& g : p.J.basis()) {
      Polynomial h = g.substitute(tvar, one);
      if (!h.is_zero()) gens.push_back(std::move(h));
    }
    std::vector<Polynomial> exc;
    for (const auto& f : p.generators) exc.push_back(f.map_to(ring, s_map));
    std::vector<bool> alive(nv, true);
    alive[tvar] = false;
    std::vector<std::pair<std::size_t, Polynomial>> subs;

    for (bool found = true; found;) {
      found = false;
      for (std::size_t gi = 0; gi < gens.size() && !found; ++gi) {
        const Polynomial& g = gens[gi];
        for (std::size_t v = 0; v < nv && !found; ++v) {
          if (!alive[v]) continue;
          Monomial xv(nv);
          xv.set(v, 1);
          uint32_t c = 0;
          for (const auto& term : g.terms()) {
            if (term.mono == xv) c = term.coeff;
          }
          if (c == 0) continue;
          Polynomial h = g - Polynomial::monomial(ring, xv, c);
          if (h.contains_variable(v)) continue;
          Polynomial value = h.scaled(F.neg(F.inv(c)));
          for (auto& x : gens) x = x.substitute(v, value);
          for (auto& x : exc) x = x.substitute(v, value);
          for (auto& [w, x] : subs) x = x.substitute(v, value);
          subs.emplace_back(v, value);
          alive[v] = false;
          found = true;
        }
      }
      gens.erase(std::remove_if(gens.begin(), gens.end(), [](const Polynomial& x) { return x.is_zero(); }),
                 gens.end());
    }

    std::vector<std::string> names;
    std::vector<std::size_t> to_chart(nv, 0);
    for (std::size_t v = 0; v < nv; ++v) {
      if (!alive[v]) continue;
      to_chart[v] = names.size();
      names.push_back(ring->var_name(v));
    }
    RingPtr cring = PolyRing::make(ring->characteristic(), names);
    Chart chart(cring);
    chart.index = ci;
    IdealGens rel(cring);
    for (const auto& g : gens) rel.add(g.map_to(cring, to_chart));
    ReducedGB gb = buchberger(rel);
    chart.relations = gb.ideal();
    for (const auto& f : exc) {
      Polynomial x = normal_form(f.map_to(cring, to_chart), gb);
      if (!x.is_zero()) chart.exceptional.add(x);
    }
    for (const auto& [v, x] : subs) {
      chart.back_substitution.emplace_back(ring->var_name(v), normal_form(x.map_to(cring, to_chart), gb));
    }
    out.push_back(std::move(chart));
  }
  return out;
}

IdealGens singular_locus(const IdealGens& relations) {
  const RingPtr& ring = relations.ring();
  const std::size_t n = ring->nvars();
  IdealGens unit(ring, {Polynomial::constant(ring, 1)});
  if (relations.empty()) return unit;
  ReducedGB rgb = buchberger(relations);
  std::size_t c = n - static_cast<std::size_t>(dimension(rgb));
  if (c == 0) return unit;

  // entries mod I leave I + (minors) unchanged; constant pivots drop c by one
  std::vector<std::vector<Polynomial>> a;
  for (const auto& g : rgb.basis()) {
    std::vector<Polynomial> row;
    for (std::size_t v = 0; v < n; ++v) row.push_back(normal_form(g.derivative(v), rgb));
    a.push_back(std::move(row));
  }
  const auto& F = ring->field();
  while (c > 0) {
    std::size_t pr = a.size(), pc = 0;
    for (std::size_t i = 0; i < a.size() && pr == a.size(); ++i) {
      for (std::size_t j = 0; j < a[i].size(); ++j) {
        if (a[i][j].is_unit()) {
          pr = i;
          pc = j;
          break;
        }
      }
    }
    if (pr == a.size()) break;
    const uint32_t inv = F.inv(a[pr][pc].constant_term());
    std::vector<std::vector<Polynomial>> b;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == pr) continue;
      std::vector<Polynomial> row;
      for (std::size_t j = 0; j < a[i].size(); ++j) {
        if (j == pc) continue;
        row.push_back(normal_form(a[i][j] - (a[i][pc] * a[pr][j]).scaled(inv), rgb));
      }
      b.push_back(std::move(row));
    }
    a = std::move(b);
    --c;
  }
  if (c == 0) return unit;
  IdealGens out = rgb.ideal();
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  if (a.size() < c || cols < c) return out;
  PolyMatrix m(ring, a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = a[i][j];
  }
  auto reduce = [&rgb](const Polynomial& f) { return normal_form(f, rgb); };
  std::size_t pending = 0;
  for (const auto& rows : k_subsets(a.size(), c)) {
    for (const auto& f : kernels::minors_for_rows(m, rows, reduce)) {
      if (f.is_zero()) continue;
      out.add(f);
      ++pending;
    }
    if (pending >= 32) {
      pending = 0;
      ReducedGB gb = buchberger(out);
      if (gb.is_unit()) return unit;
      out = gb.ideal();
    }
  }
  return buchberger(out).ideal();
}

SmoothReport smooth_check(const Chart& c) {
  SmoothReport rep(c.ring);
  rep.dim = c.relations.empty() ? static_cast<int>(c.ring->nvars()) : dimension(c.relations);
  rep.singular = singular_locus(c.relations);
  ReducedGB gb = buchberger(rep.singular);
  rep.smooth = gb.is_unit();
  rep.singular_dim = rep.smooth ? -1 : dimension(gb);
  return rep;
}

R1Report r1_check(const SmoothReport& s) { return R1Report{s.smooth || s.singular_dim <= s.dim - 2}; }

R1Report r1_check(const Chart& c) { return r1_check(smooth_check(c)); }

bool kunz_locus_agrees(const QuotientRing& r, const FractionalIdealRep& villamayor) {
  IdealGens a = r.relations();
  for (const auto& g : villamayor.generators) a.add(g);
  IdealGens b = singular_locus(r.relations());
  for (const auto& g : a.gens()) {
    if (!radical_membership(g, b)) return false;
  }
  for (const auto& g : b.gens()) {
    if (!radical_membership(g, a)) return false;
  }
  return true;
}

BlockReport block_report(const PresentedModule& block) {
  BlockReport b;
  b.rows = block.rows();
  b.cols = block.cols();
  b.rank = module_rank(block);
  InvariantSignature sig = signature(block);
  b.signature = sig.hash_hex();
  for (const auto& f : sig.fitting) b.fitting.push_back(strs(f.basis()));
  for (std::size_t i = 0; i < block.rows(); ++i) b.matrix.push_back(strs(block.matrix().matrix().row(i)));
  return b;
}

FBlowupReport fblowup(const QRingPtr& ring, unsigned e, const FBlowupOptions& opts) {
  FBlowupReport rep;
  rep.e = e;
  rep.seed = opts.seed;
  std::string stage;
  auto timed = [&](const std::string& name, auto&& fn) {
    stage = name;
    auto start = Clock::now();
    fn();
    rep.timings.emplace_back(name, seconds_since(start));
  };
  try {
    std::optional<PresentedModule> m;
    timed("pushforward", [&] {
      m = pushforward(PresentedModule::free(ring, 1), e);
      rep.rank = module_rank(*m);
      rep.pruned_rows = m->rows();
      rep.pruned_cols = m->cols();
    });
    timed("decompose", [&] {
      DecomposeOptions dopts;
      dopts.seed = opts.seed;
      for (const auto& b : block_decompose(*m, dopts)) rep.blocks.push_back(block_report(b));
    });
    std::optional<FractionalIdealRep> v;
    timed("villamayor", [&] {
      v = villamayor_ideal(*m);
      rep.villamayor = strs(v->generators);
    });
    if (opts.check_kunz) timed("kunz", [&] { rep.kunz = kunz_locus_agrees(*ring, *v); });
    std::optional<ReesPresentation> p;
    timed("rees", [&] {
      p = rees(*v);
      rep.rees_vars = p->ring->var_names();
      rep.rees = strs(p->J.basis());
    });
    std::vector<Chart> cs;
    timed("charts", [&] { cs = charts(*p); });
    rep.charts.resize(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) {
      auto& cr = rep.charts[i];
      cr.index = cs[i].index;
      cr.vars = cs[i].ring->var_names();
      cr.relations = strs(cs[i].relations.gens());
      cr.exceptional = strs(cs[i].exceptional.gens());
      for (const auto& [name, val] : cs[i].back_substitution) cr.back_substitution.emplace_back(name, val.str());
    }
    if (opts.analyze_charts) {
      const Budget budget = active_budget();
      timed("chart_analysis", [&] {
        const long count = static_cast<long>(cs.size());
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < count; ++i) {
          BudgetScope scope(budget);
          auto& cr = rep.charts[static_cast<std::size_t>(i)];
          try {
            SmoothReport s = smooth_check(cs[static_cast<std::size_t>(i)]);
            cr.smooth = s.smooth;
            cr.r1 = r1_check(s).r1;
            cr.dim = s.dim;
            cr.singular_dim = s.singular_dim;
          } catch (const BudgetExceeded&) {
            cr.status = "budget_exceeded";
          } catch (const std::exception& ex) {
            cr.status = std::string("error: ") + ex.what();
          }
        }
      });
      for (const auto& cr : rep.charts) {
        if (cr.status == "budget_exceeded") {
          rep.status = "budget_exceeded";
          rep.incomplete_stage = "chart_analysis";
        }
      }
    }
  } catch (const BudgetExceeded&) {
    rep.status = "budget_exceeded";
    rep.incomplete_stage = stage;
  }
  return rep;
}

}  // namespace fblow
