#include "fblow/modpres.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "fblow/budget.hpp"
#include "fblow/errors.hpp"
#include "fblow/kernels.hpp"
#include "fblow/parse.hpp"

namespace fblow {

QuotientRing::QuotientRing(IdealGens relations, ReducedGB gb)
    : ambient_(relations.ring()), relations_(std::move(relations)), gb_(std::move(gb)) {}

QRingPtr QuotientRing::make(IdealGens relations) {
  ReducedGB gb = buchberger(relations);
  if (gb.is_unit()) throw UnitIdealError("quotient by the unit ideal");
  return QRingPtr(new QuotientRing(std::move(relations), std::move(gb)));
}

QRingPtr QuotientRing::make(const RingPtr& ambient, const std::vector<std::string>& relations) {
  IdealGens I(ambient);
  for (const auto& r : relations) I.add(parse(r, ambient));
  return make(std::move(I));
}

RMatrix::RMatrix(QRingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), m_(ring_->ambient(), rows, cols) {}

RMatrix::RMatrix(QRingPtr ring, const PolyMatrix& m) : ring_(std::move(ring)), m_(m) {
  require_same_ring(ring_->ambient(), m.ring());
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    for (std::size_t j = 0; j < m_.cols(); ++j) m_.at(i, j) = ring_->reduce(m_.at(i, j));
  }
}

PresentedModule PresentedModule::free(const QRingPtr& ring, std::size_t t) {
  return PresentedModule(RMatrix(ring, t, 0));
}

namespace {

// Greatest common monomial divisor of all terms of the given polynomials.
std::optional<Monomial> content(const std::vector<Polynomial>& polys) {
  std::optional<Monomial> g;
  for (const auto& p : polys) {
    for (const auto& t : p.terms()) {
      g = g ? gcd(*g, t.mono) : t.mono;
      if (g->is_one()) return g;
    }
  }
  return g;
}

Polynomial divide_by_monomial(const Polynomial& p, const Monomial& m) {
  std::vector<Term> terms;
  terms.reserve(p.num_terms());
  for (const auto& t : p.terms()) terms.push_back({t.mono / m, t.coeff});
  return Polynomial::from_sorted_terms(p.ring(), std::move(terms));
}

Polynomial divide_content(const Polynomial& p, const Monomial& c) {
  return c.is_one() ? p : divide_by_monomial(p, c);
}

}  // namespace

std::size_t matrix_rank(const RMatrix& m) {
  const QuotientRing& R = *m.ring();
  std::vector<std::vector<Polynomial>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.matrix().row(i);
    if (std::any_of(r.begin(), r.end(), [](const Polynomial& p) { return !p.is_zero(); })) rows.push_back(std::move(r));
  }
  std::vector<char> col_done(m.cols(), 0);
  std::size_t rank = 0;
  const Budget& budget = active_budget();
  // fraction-free elimination; R is a domain so scaling rows keeps the rank
  while (!rows.empty()) {
    budget.check_time();
    std::size_t bi = 0, bj = 0;
    bool found = false;
    std::pair<std::size_t, int64_t> best{0, 0};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const auto& a = rows[i][j];
        if (col_done[j] || a.is_zero()) continue;
        std::pair<std::size_t, int64_t> key{a.num_terms(), a.degree()};
        if (!found || key < best) {
          found = true;
          best = key;
          bi = i;
          bj = j;
        }
      }
    }
    if (!found) break;
    ++rank;
    col_done[bj] = 1;
    std::vector<Polynomial> prow = std::move(rows[bi]);
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(bi));
    const Polynomial& pv = prow[bj];
    auto pc = content({pv});
    for (auto& row : rows) {
      if (row[bj].is_zero()) continue;
      Monomial common = gcd(*pc, *content({row[bj]}));
      Polynomial a = divide_content(pv, common);
      Polynomial b = divide_content(row[bj], common);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (col_done[j] && j != bj) continue;
        if (j == bj) {
          row[j] = Polynomial(pv.ring());
          continue;
        }
        if (prow[j].is_zero() && row[j].is_zero()) continue;
        row[j] = R.reduce(a * row[j] - b * prow[j]);
      }
      if (auto c = content(row); c && !c->is_one()) {
        for (auto& e : row) e = divide_content(e, *c);
      }
    }
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const std::vector<Polynomial>& r) {
                                return std::all_of(r.begin(), r.end(), [](const Polynomial& p) { return p.is_zero(); });
                              }),
               rows.end());
  }
  return rank;
}

std::size_t module_rank(const PresentedModule& m) { return m.rows() - matrix_rank(m.matrix()); }

std::size_t module_rank_by_minors(const PresentedModule& m, uint64_t seed) {
  const QuotientRing& R = *m.ring();
  const PolyMatrix& a = m.matrix().matrix();
  EntryReducer red = [&R](const Polynomial& p) { return R.reduce(p); };
  std::mt19937_64 rng(seed);
  for (std::size_t k = std::min(a.rows(), a.cols()); k >= 1; --k) {
    auto sample = [&](std::size_t n) {
      std::vector<std::size_t> idx(n);
      for (std::size_t i = 0; i < n; ++i) idx[i] = i;
      std::shuffle(idx.begin(), idx.end(), rng);
      idx.resize(k);
      std::sort(idx.begin(), idx.end());
      return idx;
    };
    for (int s = 0; s < 50; ++s) {
      if (!kernels::determinant(a.submatrix(sample(a.rows()), sample(a.cols())), red).is_zero()) return a.rows() - k;
    }
    for (const auto& rows : k_subsets(a.rows(), k)) {
      for (const auto& p : kernels::minors_for_rows(a, rows, red)) {
        if (!p.is_zero()) return a.rows() - k;
      }
    }
  }
  return a.rows();
}

IdealGens fitting_ideal(std::size_t k, const PresentedModule& m) {
  const QuotientRing& R = *m.ring();
  IdealGens out(R.ambient());
  const std::size_t t = m.rows();
  if (k > t) throw std::out_of_range("fitting_ideal: k exceeds the number of generators");
  if (k == t) {
    out.add(R.one());
    return out;
  }
  const std::size_t size = t - k;
  if (size > m.cols()) return out;
  EntryReducer red = [&R](const Polynomial& p) { return R.reduce(p); };
  std::vector<std::string> seen;
  for (auto& p : kernels::minors_parallel(m.matrix().matrix(), size, red)) {
    if (p.is_zero()) continue;
    p = p.monic();
    std::string key = p.str();
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(std::move(key));
    out.add(p);
  }
  return out;
}

Column module_normal_form(const Column& v, const std::vector<Column>& basis, const QuotientRing& ring) {
  return ModuleGB(ring.ambient(), v.size(), basis, &ring.gb()).normal_form(v);
}

namespace {

struct Work {
  const QuotientRing& R;
  std::vector<std::vector<Polynomial>> a;  // a[i][j]
  std::size_t cols;

  PresentedModule to_module(const QRingPtr& ring) const {
    PolyMatrix m(ring->ambient(), a.size(), cols);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = a[i][j];
    }
    return PresentedModule(ring, m);
  }

  Column column(std::size_t j) const {
    Column c;
    c.reserve(a.size());
    for (const auto& row : a) c.push_back(row[j]);
    return c;
  }

  void erase_column(std::size_t j) {
    for (auto& row : a) row.erase(row.begin() + static_cast<std::ptrdiff_t>(j));
    --cols;
  }
};

bool find_unit(const Work& w, std::size_t& pi, std::size_t& pj) {
  // choose the constant whose column has the fewest nonzeros to limit fill-in
  std::size_t best = SIZE_MAX;
  for (std::size_t j = 0; j < w.cols; ++j) {
    std::size_t nz = 0;
    for (const auto& row : w.a) nz += row[j].is_zero() ? 0 : 1;
    for (std::size_t i = 0; i < w.a.size(); ++i) {
      const auto& e = w.a[i][j];
      if (!e.is_unit()) continue;
      std::size_t rnz = 0;
      for (const auto& x : w.a[i]) rnz += x.is_zero() ? 0 : 1;
      std::size_t cost = (nz - 1) * (rnz - 1);
      if (cost < best) {
        best = cost;
        pi = i;
        pj = j;
      }
    }
  }
  return best != SIZE_MAX;
}

void pivot_out(Work& w, std::size_t pi, std::size_t pj) {
  const auto& F = w.R.ambient()->field();
  const uint32_t inv = F.inv(w.a[pi][pj].constant_term());
  for (std::size_t k = 0; k < w.a.size(); ++k) {
    if (k == pi || w.a[k][pj].is_zero()) continue;
    Polynomial factor = w.a[k][pj].scaled(inv);
    for (std::size_t l = 0; l < w.cols; ++l) {
      if (w.a[pi][l].is_zero()) continue;
      w.a[k][l] = w.R.reduce(w.a[k][l] - factor * w.a[pi][l]);
    }
  }
  w.a.erase(w.a.begin() + static_cast<std::ptrdiff_t>(pi));
  w.erase_column(pj);
}

bool same_up_to_scalar(const Work& w, std::size_t j, std::size_t l) {
  const auto& F = w.R.ambient()->field();
  std::optional<uint32_t> ratio;
  for (const auto& row : w.a) {
    const auto& x = row[j];
    const auto& y = row[l];
    if (x.is_zero() != y.is_zero()) return false;
    if (x.is_zero()) continue;
    uint32_t r = F.mul(x.leading_coeff(), F.inv(y.leading_coeff()));
    if (ratio && *ratio != r) return false;
    ratio = r;
    if (x != y.scaled(r)) return false;
  }
  return true;
}

}  // namespace

PresentedModule prune(const PresentedModule& m) {
  Work w{*m.ring(), {}, m.cols()};
  for (std::size_t i = 0; i < m.rows(); ++i) w.a.push_back(m.matrix().matrix().row(i));
  std::size_t pi = 0, pj = 0;
  while (find_unit(w, pi, pj)) {
    active_budget().check_time();
    pivot_out(w, pi, pj);
  }
  if (w.a.empty()) w.cols = 0;
  // an all-zero matrix is already minimal and keeps its shape
  bool all_zero = std::all_of(w.a.begin(), w.a.end(), [](const auto& row) {
    return std::all_of(row.begin(), row.end(), [](const Polynomial& f) { return f.is_zero(); });
  });
  if (all_zero) return w.to_module(m.ring());
  // zero columns, then columns equal to an earlier one up to a unit
  for (std::size_t j = w.cols; j-- > 0;) {
    bool zero = std::all_of(w.a.begin(), w.a.end(), [&](const auto& row) { return row[j].is_zero(); });
    bool dup = false;
    for (std::size_t l = 0; l < j && !zero && !dup; ++l) dup = same_up_to_scalar(w, j, l);
    if (zero || dup) w.erase_column(j);
  }
  // columns in the span of the others
  {
    for (std::size_t j = w.cols; j-- > 0;) {
      std::vector<Column> others;
      for (std::size_t l = 0; l < w.cols; ++l) {
        if (l != j) others.push_back(w.column(l));
      }
      ModuleGB gb(w.R.ambient(), w.a.size(), others, &w.R.gb());
      if (gb.contains(w.column(j))) w.erase_column(j);
    }
  }
  return w.to_module(m.ring());
}

PresentedModule direct_sum(const std::vector<PresentedModule>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("direct_sum of no blocks");
  std::size_t t = 0, s = 0;
  for (const auto& b : blocks) {
    t += b.rows();
    s += b.cols();
  }
  const QRingPtr& ring = blocks.front().ring();
  PolyMatrix m(ring->ambient(), t, s);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) m.at(r0 + i, c0 + j) = b.matrix().at(i, j);
    }
    r0 += b.rows();
    c0 += b.cols();
  }
  return PresentedModule(ring, m);
}

bool InvariantSignature::operator==(const InvariantSignature& o) const {
  return rank == o.rank && fitting == o.fitting;
}

uint64_t InvariantSignature::hash() const {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  mix(std::to_string(rank));
  for (const auto& gb : fitting) {
    mix("[");
    for (const auto& g : gb.basis()) mix(g.str());
  }
  return h;
}

std::string InvariantSignature::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

namespace {

ReducedGB with_relations(const IdealGens& gens, const QuotientRing& R) {
  IdealGens all = gens;
  for (const auto& g : R.gb().basis()) all.add(g);
  return buchberger(all);
}

ReducedGB product(const ReducedGB& a, const ReducedGB& b, const QuotientRing& R) {
  if (a.is_unit()) return b;
  if (b.is_unit()) return a;
  IdealGens prod(R.ambient());
  for (const auto& x : a.basis()) {
    for (const auto& y : b.basis()) prod.add(R.reduce(x * y));
  }
  return with_relations(prod, R);
}

ReducedGB sum(const std::vector<const ReducedGB*>& parts, const QuotientRing& R) {
  IdealGens all(R.ambient());
  for (const auto* p : parts) {
    if (p->is_unit()) return *p;
    for (const auto& g : p->basis()) all.add(g);
  }
  return with_relations(all, R);
}

// Fitting ideals of a direct sum: Fitt_k = sum over a+b=k of Fitt_a * Fitt_b.
std::vector<ReducedGB> combine(const std::vector<ReducedGB>& f, const std::vector<ReducedGB>& g, const QuotientRing& R) {
  const std::size_t tf = f.size() - 1, tg = g.size() - 1;
  std::vector<ReducedGB> out;
  for (std::size_t k = 0; k <= tf + tg; ++k) {
    std::vector<ReducedGB> terms;
    for (std::size_t a = 0; a <= k; ++a) {
      std::size_t b = k - a;
      if (a > tf || b > tg) continue;
      if (f[a] == R.gb() || g[b] == R.gb()) continue;
      terms.push_back(product(f[a], g[b], R));
    }
    std::vector<const ReducedGB*> ptrs;
    for (const auto& t : terms) ptrs.push_back(&t);
    out.push_back(ptrs.empty() ? R.gb() : sum(ptrs, R));
  }
  return out;
}

// Fitt_k is the unit ideal from some k on; keeping only the first unit
// makes the list independent of the number of generators.
void trim_units(std::vector<ReducedGB>& fitting) {
  auto unit = std::find_if(fitting.begin(), fitting.end(), [](const ReducedGB& g) { return g.is_unit(); });
  if (unit != fitting.end()) fitting.erase(unit + 1, fitting.end());
}

}  // namespace

InvariantSignature signature_direct(const PresentedModule& m) {
  InvariantSignature sig;
  sig.rank = module_rank(m);
  for (std::size_t k = 0; k <= m.rows(); ++k) {
    sig.fitting.push_back(with_relations(fitting_ideal(k, m), *m.ring()));
    if (sig.fitting.back().is_unit()) break;
  }
  return sig;
}

InvariantSignature signature(const PresentedModule& m) {
  constexpr std::size_t kDirectRows = 8;
  if (m.rows() <= kDirectRows) return signature_direct(m);
  const QuotientRing& R = *m.ring();
  auto blocks = block_decompose(prune(m));
  InvariantSignature sig;
  sig.fitting.push_back(with_relations(IdealGens(R.ambient(), {R.one()}), R));
  for (const auto& b : blocks) {
    InvariantSignature part = signature_direct(b);
    sig.rank += part.rank;
    sig.fitting = combine(sig.fitting, part.fitting, R);
    trim_units(sig.fitting);
  }
  return sig;
}

}  // namespace fblow
