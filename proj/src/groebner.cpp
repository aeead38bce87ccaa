#include "fblow/groebner.hpp"

#include <algorithm>
#include <stdexcept>

#include "engine.hpp"
#include "fblow/budget.hpp"
#include "fblow/errors.hpp"
#include "fblow/kernels.hpp"

namespace fblow {

IdealGens::IdealGens(RingPtr ring, std::vector<Polynomial> gens) : ring_(std::move(ring)) {
  for (auto& g : gens) add(g);
}

void IdealGens::add(const Polynomial& f) {
  require_same_ring(ring_, f.ring());
  if (!f.is_zero()) gens_.push_back(f);
}

ReducedGB::ReducedGB(RingPtr ring, std::vector<Polynomial> basis) : ring_(std::move(ring)), basis_(std::move(basis)) {
  std::vector<engine::SVec> vecs;
  vecs.reserve(basis_.size());
  for (const auto& g : basis_) {
    require_same_ring(ring_, g.ring());
    vecs.push_back(engine::from_poly(g));
  }
  reducer_ = std::make_shared<engine::Reducer>(*ring_, std::move(vecs));
}

ReducedGB buchberger(const IdealGens& gens) {
  std::vector<engine::SVec> vecs;
  vecs.reserve(gens.size());
  for (const auto& g : gens.gens()) vecs.push_back(engine::from_poly(g));
  auto basis = engine::groebner(*gens.ring(), std::move(vecs), active_budget());
  std::vector<Polynomial> polys;
  polys.reserve(basis.size());
  for (const auto& b : basis) polys.push_back(engine::to_poly(gens.ring(), b));
  return ReducedGB(gens.ring(), std::move(polys));
}

Polynomial normal_form(const Polynomial& f, const ReducedGB& gb) {
  require_same_ring(f.ring(), gb.ring());
  if (gb.is_zero() || f.is_zero()) return f;
  return engine::to_poly(gb.ring(), gb.reducer_->reduce(engine::from_poly(f)));
}

bool membership(const Polynomial& f, const ReducedGB& gb) { return normal_form(f, gb).is_zero(); }

bool ideal_contains(const ReducedGB& b, const IdealGens& a) {
  return std::all_of(a.gens().begin(), a.gens().end(), [&](const Polynomial& g) { return membership(g, b); });
}

bool radical_membership(const Polynomial& f, const IdealGens& gens) {
  require_same_ring(f.ring(), gens.ring());
  if (f.is_zero()) return true;
  const auto& ring = gens.ring();
  RingPtr ext = ring->extended({ring->fresh_name("y_rad")});
  std::vector<std::size_t> embed(ring->nvars());
  for (std::size_t i = 0; i < embed.size(); ++i) embed[i] = i;
  IdealGens big(ext);
  for (const auto& g : gens.gens()) big.add(g.map_to(ext, embed));
  Polynomial y = Polynomial::variable(ext, ring->nvars());
  big.add(Polynomial::constant(ext, 1) - y * f.map_to(ext, embed));
  return buchberger(big).is_unit();
}

IdealGens eliminate(const IdealGens& gens, const std::vector<std::size_t>& drop) {
  const auto& ring = gens.ring();
  std::vector<char> dropped(ring->nvars(), 0);
  for (auto v : drop) {
    if (v >= ring->nvars()) throw std::out_of_range("eliminate: variable index out of range");
    dropped[v] = 1;
  }
  const std::size_t k = static_cast<std::size_t>(std::count(dropped.begin(), dropped.end(), 1));
  if (k == 0) return buchberger(gens).ideal();
  // move the dropped variables to the front and use a block order
  std::vector<std::size_t> to_new(ring->nvars()), to_old;
  std::vector<std::string> names;
  for (std::size_t pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
      if ((dropped[i] != 0) == (pass == 0)) {
        to_new[i] = names.size();
        to_old.push_back(i);
        names.push_back(ring->var_name(i));
      }
    }
  }
  RingPtr elim = PolyRing::make(ring->characteristic(), names, TermOrder::block_elimination(k));
  IdealGens moved(elim);
  for (const auto& g : gens.gens()) moved.add(g.map_to(elim, to_new));
  ReducedGB gb = buchberger(moved);
  IdealGens out(ring);
  for (const auto& g : gb.basis()) {
    bool keep = true;
    for (std::size_t v = 0; v < k && keep; ++v) keep = !g.contains_variable(v);
    if (keep) out.add(g.map_to(ring, to_old));
  }
  return out;
}

std::optional<Polynomial> exact_quotient(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring(), b.ring());
  if (b.is_zero()) throw std::invalid_argument("exact_quotient: division by zero");
  const auto& F = a.ring()->field();
  const uint32_t inv = F.inv(b.leading_coeff());
  std::vector<Term> q;
  Polynomial r = a;
  while (!r.is_zero()) {
    if (!b.leading_monomial().divides(r.leading_monomial())) return std::nullopt;
    Term t{r.leading_monomial() / b.leading_monomial(), F.mul(r.leading_coeff(), inv)};
    r -= b.mul_term(t.mono, t.coeff);
    q.push_back(std::move(t));
  }
  return Polynomial::from_terms(a.ring(), std::move(q));
}

IdealGens ideal_intersection(const IdealGens& a, const IdealGens& b) {
  require_same_ring(a.ring(), b.ring());
  const auto& ring = a.ring();
  if (a.empty() || b.empty()) return IdealGens(ring);
  RingPtr ext = ring->extended({ring->fresh_name("u")});
  const std::size_t n = ring->nvars();
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  Polynomial u = Polynomial::variable(ext, n);
  Polynomial v = Polynomial::constant(ext, 1) - u;
  IdealGens both(ext);
  for (const auto& g : a.gens()) both.add(u * g.map_to(ext, id));
  for (const auto& g : b.gens()) both.add(v * g.map_to(ext, id));
  IdealGens meet = eliminate(both, {n});
  std::vector<std::size_t> back(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) back[i] = i;
  IdealGens out(ring);
  for (const auto& g : meet.gens()) out.add(g.map_to(ring, back));
  return out;
}

IdealGens ideal_quotient(const IdealGens& a, const Polynomial& f) {
  require_same_ring(a.ring(), f.ring());
  if (f.is_zero()) return IdealGens(a.ring(), {Polynomial::constant(a.ring(), 1)});
  IdealGens meet = ideal_intersection(a, IdealGens(a.ring(), {f}));
  IdealGens out(a.ring());
  for (const auto& g : meet.gens()) {
    auto q = exact_quotient(g, f);
    if (!q) throw InvariantViolation("element of (f) not divisible by f");
    out.add(*q);
  }
  return buchberger(out).ideal();
}

IdealGens ideal_quotient(const IdealGens& a, const IdealGens& b) {
  require_same_ring(a.ring(), b.ring());
  std::optional<IdealGens> acc;
  for (const auto& g : b.gens()) {
    IdealGens q = ideal_quotient(a, g);
    acc = acc ? buchberger(ideal_intersection(*acc, q)).ideal() : q;
  }
  if (!acc) return IdealGens(a.ring(), {Polynomial::constant(a.ring(), 1)});
  return *acc;
}

Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.is_zero()) return b.is_zero() ? b : b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_unit() || b.is_unit()) return Polynomial::constant(a.ring(), 1);
  if (auto q = exact_quotient(a, b)) return b.monic();
  if (auto q = exact_quotient(b, a)) return a.monic();
  const auto& ring = a.ring();
  RingPtr ext = ring->extended({ring->fresh_name("u")});
  const std::size_t n = ring->nvars();
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  Polynomial u = Polynomial::variable(ext, n);
  Polynomial one = Polynomial::constant(ext, 1);
  IdealGens both(ext, {u * a.map_to(ext, id), (one - u) * b.map_to(ext, id)});
  IdealGens meet = eliminate(both, {n});
  if (meet.size() != 1) throw InvariantViolation("intersection of principal ideals is not principal");
  std::vector<std::size_t> back(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) back[i] = i;
  auto g = exact_quotient(a * b, meet.gens()[0].map_to(ring, back));
  if (!g) throw InvariantViolation("lcm does not divide the product");
  return g->monic();
}

namespace {

int max_independent(std::size_t n, const std::vector<uint64_t>& leads) {
  int best = 0;
  // depth-first over subsets, pruned by the size bound
  auto dfs = [&](auto&& self, std::size_t i, uint64_t chosen, int size) -> void {
    if (size + static_cast<int>(n - i) <= best) return;
    if (i == n) {
      best = size;
      return;
    }
    uint64_t with = chosen | (uint64_t{1} << i);
    bool ok = std::none_of(leads.begin(), leads.end(), [&](uint64_t m) { return (m & ~with) == 0; });
    if (ok) self(self, i + 1, with, size + 1);
    self(self, i + 1, chosen, size);
  };
  dfs(dfs, 0, 0, 0);
  return best;
}

}  // namespace

int dimension(const ReducedGB& gb) {
  if (gb.is_unit()) throw UnitIdealError("dimension of the unit ideal (empty scheme)");
  const std::size_t n = gb.ring()->nvars();
  if (n > 64) throw std::length_error("dimension: more than 64 variables");
  std::vector<uint64_t> leads;
  for (const auto& g : gb.basis()) leads.push_back(g.leading_monomial().support_mask());
  return max_independent(n, leads);
}

int dimension(const IdealGens& gens) { return dimension(buchberger(gens)); }

PolyMatrix jacobian(const IdealGens& gens) {
  const auto& ring = gens.ring();
  PolyMatrix j(ring, gens.size(), ring->nvars());
  for (std::size_t r = 0; r < gens.size(); ++r) {
    for (std::size_t c = 0; c < ring->nvars(); ++c) j.at(r, c) = gens.gens()[r].derivative(c);
  }
  return j;
}

std::vector<Polynomial> minors(const PolyMatrix& m, std::size_t k) { return kernels::minors_parallel(m, k); }

ModuleGB::ModuleGB(RingPtr ring, std::size_t rank, const std::vector<Column>& gens, const ReducedGB* relations)
    : ring_(std::move(ring)), rank_(rank) {
  std::vector<engine::SVec> vecs;
  for (const auto& c : gens) {
    if (c.size() != rank_) throw std::invalid_argument("module generator has wrong length");
    for (const auto& e : c) require_same_ring(ring_, e.ring());
    auto v = engine::from_column(c);
    if (!v.empty()) vecs.push_back(std::move(v));
  }
  if (relations != nullptr) {
    require_same_ring(ring_, relations->ring());
    for (const auto& g : relations->basis()) {
      for (std::size_t i = 0; i < rank_; ++i) vecs.push_back(engine::from_poly(g, static_cast<uint32_t>(i)));
    }
  }
  auto basis = engine::groebner(*ring_, std::move(vecs), active_budget());
  reducer_ = std::make_shared<engine::Reducer>(*ring_, std::move(basis));
}

std::size_t ModuleGB::size() const { return reducer_->basis().size(); }

std::vector<Column> ModuleGB::basis() const {
  std::vector<Column> out;
  for (const auto& v : reducer_->basis()) out.push_back(engine::to_column(ring_, v, rank_));
  return out;
}

std::vector<std::pair<std::size_t, Monomial>> ModuleGB::leading_terms() const {
  std::vector<std::pair<std::size_t, Monomial>> out;
  for (const auto& v : reducer_->basis()) out.emplace_back(v.front().pos, v.front().mono);
  return out;
}

Column ModuleGB::normal_form(const Column& v) const {
  if (v.size() != rank_) throw std::invalid_argument("module_normal_form: wrong length");
  return engine::to_column(ring_, reducer_->reduce(engine::from_column(v)), rank_);
}

bool ModuleGB::contains(const Column& v) const {
  if (v.size() != rank_) throw std::invalid_argument("module membership: wrong length");
  return reducer_->reduces_to_zero(engine::from_column(v));
}

Column module_normal_form(const Column& v, const std::vector<Column>& basis, const ReducedGB* relations) {
  if (v.empty()) return v;
  return ModuleGB(v.front().ring(), v.size(), basis, relations).normal_form(v);
}

}  // namespace fblow
