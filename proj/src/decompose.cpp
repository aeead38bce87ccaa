#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <unordered_map>

#include "fblow/budget.hpp"
#include "fblow/errors.hpp"
#include "fblow/modpres.hpp"

namespace fblow {

namespace {

using Mat = std::vector<std::vector<Polynomial>>;

Mat rows_of(const PresentedModule& m) {
  Mat a;
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(m.matrix().matrix().row(i));
  return a;
}

PresentedModule from_rows(const QRingPtr& ring, const Mat& a, std::size_t cols) {
  PolyMatrix m(ring->ambient(), a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = a[i][j];
  }
  return PresentedModule(ring, m);
}

std::size_t nnz(const std::vector<Polynomial>& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const Polynomial& p) { return !p.is_zero(); }));
}

// Row and column operations with constant coefficients, applied while they
// strictly reduce the number of nonzero entries.
void sparsify(Mat& a, std::size_t cols, uint32_t p) {
  const std::size_t t = a.size();
  auto col = [&](std::size_t j) {
    std::vector<Polynomial> c;
    for (const auto& row : a) c.push_back(row[j]);
    return c;
  };
  for (int pass = 0; pass < 32; ++pass) {
    bool changed = false;
    for (std::size_t k = 0; k < t; ++k) {
      for (std::size_t i = 0; i < t; ++i) {
        if (i == k) continue;
        for (uint32_t c = 1; c < p; ++c) {
          std::vector<Polynomial> cand(cols, Polynomial(a[k][0].ring()));
          for (std::size_t j = 0; j < cols; ++j) cand[j] = a[k][j] - a[i][j].scaled(c);
          if (nnz(cand) < nnz(a[k])) {
            a[k] = std::move(cand);
            changed = true;
          }
        }
      }
    }
    for (std::size_t l = 0; l < cols; ++l) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (j == l) continue;
        for (uint32_t c = 1; c < p; ++c) {
          auto cj = col(j), cl = col(l);
          std::vector<Polynomial> cand;
          for (std::size_t i = 0; i < t; ++i) cand.push_back(cl[i] - cj[i].scaled(c));
          if (nnz(cand) < nnz(cl)) {
            for (std::size_t i = 0; i < t; ++i) a[i][l] = cand[i];
            changed = true;
          }
        }
      }
    }
    if (!changed) break;
  }
}

struct Component {
  std::vector<std::size_t> rows, cols;
};

std::vector<Component> components(const Mat& a, std::size_t cols) {
  const std::size_t t = a.size();
  std::vector<std::size_t> parent(t + cols);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (!a[i][j].is_zero()) parent[find(i)] = find(t + j);
    }
  }
  std::map<std::size_t, Component> groups;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < t; ++i) {
    auto r = find(i);
    if (!groups.count(r)) order.push_back(r);
    groups[r].rows.push_back(i);
  }
  for (std::size_t j = 0; j < cols; ++j) {
    auto r = find(t + j);
    if (!groups.count(r)) order.push_back(r);
    groups[r].cols.push_back(j);
  }
  std::vector<Component> out;
  for (auto r : order) out.push_back(groups[r]);
  return out;
}

// ---------------------------------------------------------------------------
// Univariate polynomials over F_p, coefficient vectors low degree first.

using UPoly = std::vector<uint32_t>;

void trim(UPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

UPoly umod(UPoly a, const UPoly& b, const PrimeField& F) {
  trim(a);
  const uint32_t inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    uint32_t c = F.mul(a.back(), inv);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
    trim(a);
  }
  return a;
}

UPoly udiv(UPoly a, const UPoly& b, const PrimeField& F) {
  trim(a);
  UPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const uint32_t inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    uint32_t c = F.mul(a.back(), inv);
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
    trim(a);
  }
  return q;
}

UPoly umul(const UPoly& a, const UPoly& b, const PrimeField& F) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

UPoly usub(UPoly a, const UPoly& b, const PrimeField& F) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
  trim(a);
  return a;
}

UPoly umonic(UPoly a, const PrimeField& F) {
  trim(a);
  if (a.empty()) return a;
  uint32_t inv = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, inv);
  return a;
}

UPoly ugcd(UPoly a, UPoly b, const PrimeField& F) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = umod(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return umonic(a, F);
}

// Extended Euclid: returns (s, t) with s*a + t*b = 1 for coprime a, b.
std::pair<UPoly, UPoly> uxgcd(const UPoly& a, const UPoly& b, const PrimeField& F) {
  UPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    UPoly q = udiv(r0, r1, F);
    UPoly r2 = usub(r0, umul(q, r1, F), F);
    UPoly s2 = usub(s0, umul(q, s1, F), F);
    UPoly t2 = usub(t0, umul(q, t1, F), F);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 is a nonzero constant
  uint32_t inv = F.inv(r0[0]);
  for (auto& c : s0) c = F.mul(c, inv);
  for (auto& c : t0) c = F.mul(c, inv);
  return {s0, t0};
}

UPoly upowmod(UPoly base, uint64_t e, const UPoly& mod, const PrimeField& F) {
  UPoly r{1};
  base = umod(base, mod, F);
  while (e) {
    if (e & 1) r = umod(umul(r, base, F), mod, F);
    e >>= 1;
    if (e) base = umod(umul(base, base, F), mod, F);
  }
  return r;
}

// A factor g of mu, coprime to mu/g, with 0 < deg g < deg mu; empty if mu
// is a power of one irreducible as far as distinct-degree splitting can tell.
UPoly coprime_factor(const UPoly& mu, const PrimeField& F) {
  const std::size_t deg = mu.size() - 1;
  const UPoly x{0, 1};
  UPoly xp = x;
  for (std::size_t d = 1; d <= deg; ++d) {
    xp = upowmod(xp, F.modulus(), mu, F);
    UPoly g = ugcd(mu, usub(xp, x, F), F);
    if (g.size() <= 1) continue;
    // absorb the full multiplicity of these factors
    UPoly full = g;
    for (;;) {
      UPoly next = ugcd(mu, umul(full, g, F), F);
      if (next.size() == full.size()) break;
      full = std::move(next);
    }
    if (full.size() < mu.size()) return full;
    // all irreducible factors of degree d; try splitting the squarefree part
    // by the roots when d == 1
    if (d == 1) {
      for (uint32_t c = 0; c < F.modulus(); ++c) {
        UPoly lin{F.neg(c), 1};
        if (!umod(mu, lin, F).empty()) continue;
        UPoly part = lin;
        for (;;) {
          UPoly next = umul(part, lin, F);
          if (!umod(mu, next, F).empty()) break;
          part = std::move(next);
        }
        if (part.size() < mu.size()) return part;
      }
    }
    return {};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Endomorphisms of Coker(A) represented by t columns in module normal form.
// Maps between two presentations use the same representation: one column in
// the target per generator of the source.

using Endo = std::vector<Column>;

class EndoAlgebra {
 public:
  EndoAlgebra(const QuotientRing& R, const Mat& a, std::size_t cols)
      : R_(R), t_(a.size()), s_(cols), a_(a), gb_(R.ambient(), a.size(), columns(a, cols), &R.gb()) {
    leads_ = gb_.leading_terms();
  }

  std::size_t t() const { return t_; }
  std::size_t relations() const { return s_; }
  const Mat& matrix() const { return a_; }
  const QuotientRing& ring() const { return R_; }
  const PrimeField& field() const { return R_.ambient()->field(); }

  Column nf(const Column& v) const { return gb_.normal_form(v); }

  Endo zero() const { return Endo(t_, Column(t_, R_.zero())); }

  Endo identity() const {
    Endo e;
    for (std::size_t j = 0; j < t_; ++j) {
      Column c(t_, R_.zero());
      c[j] = R_.one();
      e.push_back(nf(c));
    }
    return e;
  }

  /// p o q, where p maps into this presentation.
  Endo compose(const Endo& p, const Endo& q) const {
    Endo out;
    out.reserve(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) {
      Column c(t_, R_.zero());
      for (std::size_t k = 0; k < q[j].size(); ++k) {
        const auto& qkj = q[j][k];
        if (qkj.is_zero()) continue;
        for (std::size_t i = 0; i < t_; ++i) {
          if (!p[k][i].is_zero()) c[i] += qkj * p[k][i];
        }
      }
      for (auto& x : c) x = R_.reduce(x);
      out.push_back(nf(c));
    }
    return out;
  }

  Endo combine(const Endo& p, uint32_t a, const Endo& q, uint32_t b) const {
    Endo out = p;
    for (std::size_t j = 0; j < p.size(); ++j) {
      for (std::size_t i = 0; i < p[j].size(); ++i) out[j][i] = p[j][i].scaled(a) + q[j][i].scaled(b);
    }
    return out;
  }

  static bool is_zero(const Endo& p) {
    for (const auto& c : p) {
      for (const auto& x : c) {
        if (!x.is_zero()) return false;
      }
    }
    return true;
  }

  bool is_idempotent(const Endo& p) const { return is_zero(combine(compose(p, p), 1, p, field().modulus() - 1)); }

  int64_t degree(const Endo& p) const {
    int64_t d = -1;
    for (const auto& c : p) {
      for (const auto& x : c) d = std::max(d, x.degree());
    }
    return d;
  }

  std::vector<uint32_t> constant_part(const Endo& p) const {
    std::vector<uint32_t> m(t_ * t_);
    for (std::size_t j = 0; j < t_; ++j) {
      for (std::size_t i = 0; i < t_; ++i) m[i * t_ + j] = p[j][i].constant_term();
    }
    return m;
  }

  /// Basis of the endomorphisms whose canonical columns have degree <= d.
  std::vector<Endo> bounded_endomorphisms(int d) const { return bounded_maps_from(*this, d); }

  /// Basis of the maps from `src` into this presentation whose canonical
  /// columns have degree <= d.
  std::vector<Endo> bounded_maps_from(const EndoAlgebra& src, int d) const;

  /// p(e) by Horner's rule.
  Endo evaluate(const UPoly& poly, const Endo& e) const {
    Endo acc(t_, Column(t_, R_.zero()));
    Endo id = identity();
    for (std::size_t k = poly.size(); k-- > 0;) {
      acc = compose(e, acc);
      acc = combine(acc, 1, id, poly[k]);
    }
    return acc;
  }

  /// Presentation of the image of p: Coker [A | 1 - p].
  PresentedModule summand(const QRingPtr& ring, const Endo& p) const {
    Mat b = a_;
    for (std::size_t i = 0; i < t_; ++i) {
      for (std::size_t j = 0; j < t_; ++j) {
        Polynomial v = (i == j ? R_.one() : R_.zero()) - p[j][i];
        b[i].push_back(v);
      }
    }
    return prune(from_rows(ring, b, s_ + t_));
  }

 private:
  static std::vector<Column> columns(const Mat& a, std::size_t cols) {
    std::vector<Column> out;
    for (std::size_t j = 0; j < cols; ++j) {
      Column c;
      for (const auto& row : a) c.push_back(row[j]);
      out.push_back(std::move(c));
    }
    return out;
  }

  const QuotientRing& R_;
  std::size_t t_, s_;
  Mat a_;
  ModuleGB gb_;
  std::vector<std::pair<std::size_t, Monomial>> leads_;
};

// Sparse F_p vectors keyed by integer ids, sorted by key.
using SVecFp = std::vector<std::pair<uint32_t, uint32_t>>;

SVecFp axpy(const SVecFp& a, uint32_t c, const SVecFp& b, const PrimeField& F) {
  // a - c * b
  SVecFp out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, F.neg(F.mul(c, b[j].second)));
      ++j;
    } else {
      uint32_t v = F.sub(a[i].second, F.mul(c, b[j].second));
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

SVecFp from_map(const std::map<uint32_t, uint32_t>& acc) {
  SVecFp v;
  for (auto [id, c] : acc) {
    if (c != 0) v.emplace_back(id, c);
  }
  return v;
}

// Incremental echelon form that remembers how each pivot row was built from
// the labelled input vectors.
class SpanSolver {
 public:
  explicit SpanSolver(const PrimeField& F) : F_(F) {}

  // Adds a vector; returns the dependency among the inputs when it is
  // already in the span.
  std::optional<SVecFp> add(SVecFp img, uint32_t label) {
    SVecFp comb{{label, 1}};
    while (!img.empty()) {
      auto it = pivots_.find(img.front().first);
      if (it == pivots_.end()) break;
      uint32_t c = img.front().second;
      img = axpy(img, c, it->second.img, F_);
      comb = axpy(comb, c, it->second.comb, F_);
    }
    if (img.empty()) return comb;
    uint32_t inv = F_.inv(img.front().second);
    for (auto& e : img) e.second = F_.mul(e.second, inv);
    for (auto& e : comb) e.second = F_.mul(e.second, inv);
    const uint32_t lead = img.front().first;
    pivots_.emplace(lead, Row{std::move(img), std::move(comb)});
    return std::nullopt;
  }

  // Coefficients x with sum x_label * input_label = target.
  std::optional<SVecFp> solve(SVecFp target) const {
    SVecFp x;
    while (!target.empty()) {
      auto it = pivots_.find(target.front().first);
      if (it == pivots_.end()) return std::nullopt;
      uint32_t c = target.front().second;
      target = axpy(target, c, it->second.img, F_);
      x = axpy(x, F_.neg(c), it->second.comb, F_);
    }
    return x;
  }

 private:
  struct Row {
    SVecFp img, comb;
  };
  const PrimeField& F_;
  std::map<uint32_t, Row> pivots_;
};

struct TermKey {
  uint32_t a, b;
  Monomial m;
  bool operator==(const TermKey&) const = default;
};

struct TermKeyHash {
  std::size_t operator()(const TermKey& k) const noexcept {
    return k.m.hash() * 1000003u ^ (static_cast<std::size_t>(k.a) << 20) ^ k.b;
  }
};

class KeyIndex {
 public:
  uint32_t id(std::size_t a, std::size_t b, const Monomial& m) {
    auto [it, inserted] =
        ids_.emplace(TermKey{static_cast<uint32_t>(a), static_cast<uint32_t>(b), m}, static_cast<uint32_t>(ids_.size()));
    return it->second;
  }

 private:
  std::unordered_map<TermKey, uint32_t, TermKeyHash> ids_;
};

std::vector<Endo> EndoAlgebra::bounded_maps_from(const EndoAlgebra& src, int d) const {
  const auto& F = field();
  const std::size_t n = R_.ambient()->nvars();
  // monomials of degree <= d
  std::vector<Monomial> monos{Monomial(n)};
  for (int deg = 1; deg <= d; ++deg) {
    std::vector<Monomial> next;
    for (const auto& m : monos) {
      if (static_cast<int>(m.degree()) != deg - 1) continue;
      std::size_t last = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (m[v] != 0) last = v;
      }
      for (std::size_t v = (m.is_one() ? 0 : last); v < n; ++v) {
        Monomial x = m;
        x.set(v, x[v] + 1);
        next.push_back(x);
      }
    }
    monos.insert(monos.end(), next.begin(), next.end());
  }
  // standard terms (position, monomial)
  std::vector<std::pair<std::size_t, Monomial>> std_terms;
  for (std::size_t i = 0; i < t_; ++i) {
    for (const auto& m : monos) {
      bool standard = std::none_of(leads_.begin(), leads_.end(),
                                   [&](const auto& l) { return l.first == i && l.second.divides(m); });
      if (standard) std_terms.emplace_back(i, m);
    }
  }
  // unknown u = (source generator j, standard term); its image is the list
  // of normal forms of m * A_jk * e_i over the source relation columns k
  KeyIndex keys;
  std::unordered_map<TermKey, Column, TermKeyHash> nf_cache;
  auto nf_term = [&](std::size_t pos, const Monomial& m) -> const Column& {
    TermKey key{0, static_cast<uint32_t>(pos), m};
    auto it = nf_cache.find(key);
    if (it != nf_cache.end()) return it->second;
    Column c(t_, R_.zero());
    c[pos] = Polynomial::monomial(R_.ambient(), m, 1);
    return nf_cache.emplace(key, nf(c)).first->second;
  };

  const std::size_t nunk = src.t_ * std_terms.size();
  SpanSolver solver(F);
  std::vector<SVecFp> kernel;
  const Budget& budget = active_budget();
  for (std::size_t u = 0; u < nunk; ++u) {
    budget.check_time();
    const std::size_t j = u / std_terms.size();
    const auto& [i, m] = std_terms[u % std_terms.size()];
    std::map<uint32_t, uint32_t> acc;
    for (std::size_t k = 0; k < src.s_; ++k) {
      const auto& ajk = src.a_[j][k];
      for (const auto& term : ajk.terms()) {
        const Column& r = nf_term(i, term.mono * m);
        for (std::size_t pos = 0; pos < t_; ++pos) {
          for (const auto& rt : r[pos].terms()) {
            uint32_t id = keys.id(k, pos, rt.mono);
            uint32_t& slot = acc[id];
            slot = F.add(slot, F.mul(term.coeff, rt.coeff));
          }
        }
      }
    }
    if (auto dep = solver.add(from_map(acc), static_cast<uint32_t>(u))) kernel.push_back(std::move(*dep));
  }
  std::vector<Endo> out;
  for (const auto& kv : kernel) {
    Endo e(src.t_, Column(t_, R_.zero()));
    for (auto [u, c] : kv) {
      const std::size_t j = u / std_terms.size();
      const auto& [i, m] = std_terms[u % std_terms.size()];
      e[j][i] += Polynomial::monomial(R_.ambient(), m, c);
    }
    out.push_back(std::move(e));
  }
  return out;
}

// Minimal polynomial of a t x t matrix over F_p.
UPoly min_poly(const std::vector<uint32_t>& m, std::size_t t, const PrimeField& F) {
  auto mul = [&](const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(t * t, 0);
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t k = 0; k < t; ++k) {
        if (a[i * t + k] == 0) continue;
        for (std::size_t j = 0; j < t; ++j) r[i * t + j] = F.add(r[i * t + j], F.mul(a[i * t + k], b[k * t + j]));
      }
    }
    return r;
  };
  std::vector<uint32_t> power(t * t, 0);
  for (std::size_t i = 0; i < t; ++i) power[i * t + i] = 1;
  // echelon rows of previous powers with their combinations
  struct Row {
    std::vector<uint32_t> v;
    UPoly comb;
    std::size_t lead;
  };
  std::vector<Row> rows;
  for (std::size_t k = 0;; ++k) {
    std::vector<uint32_t> v = power;
    UPoly comb(k + 1, 0);
    comb[k] = 1;
    for (const auto& r : rows) {
      uint32_t c = v[r.lead];
      if (c == 0) continue;
      for (std::size_t x = 0; x < v.size(); ++x) v[x] = F.sub(v[x], F.mul(c, r.v[x]));
      comb = usub(comb, umul(UPoly{c}, r.comb, F), F);
    }
    auto nz = std::find_if(v.begin(), v.end(), [](uint32_t x) { return x != 0; });
    if (nz == v.end()) return umonic(comb, F);
    std::size_t lead = static_cast<std::size_t>(nz - v.begin());
    uint32_t inv = F.inv(v[lead]);
    for (auto& x : v) x = F.mul(x, inv);
    for (auto& x : comb) x = F.mul(x, inv);
    rows.push_back({std::move(v), std::move(comb), lead});
    power = mul(power, m);
  }
}

bool in_max_ideal(const Polynomial& f) { return f.constant_term() == 0; }

std::vector<uint32_t> mat_mul(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b, std::size_t t,
                              const PrimeField& F) {
  std::vector<uint32_t> r(t * t, 0);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t k = 0; k < t; ++k) {
      if (a[i * t + k] == 0) continue;
      for (std::size_t j = 0; j < t; ++j) r[i * t + j] = F.add(r[i * t + j], F.mul(a[i * t + k], b[k * t + j]));
    }
  }
  return r;
}

std::vector<uint32_t> mat_eval(const UPoly& poly, const std::vector<uint32_t>& m, std::size_t t, const PrimeField& F) {
  std::vector<uint32_t> acc(t * t, 0);
  for (std::size_t k = poly.size(); k-- > 0;) {
    acc = mat_mul(acc, m, t, F);
    for (std::size_t i = 0; i < t; ++i) acc[i * t + i] = F.add(acc[i * t + i], poly[k]);
  }
  return acc;
}

SVecFp dense_to_sparse(const std::vector<uint32_t>& m) {
  SVecFp v;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] != 0) v.emplace_back(static_cast<uint32_t>(i), m[i]);
  }
  return v;
}

SVecFp endo_vec(const Endo& e, KeyIndex& keys) {
  std::map<uint32_t, uint32_t> acc;
  for (std::size_t j = 0; j < e.size(); ++j) {
    for (std::size_t i = 0; i < e[j].size(); ++i) {
      for (const auto& term : e[j][i].terms()) acc[keys.id(j, i, term.mono)] = term.coeff;
    }
  }
  return from_map(acc);
}

Endo linear_combination(const EndoAlgebra& alg, const std::vector<Endo>& basis, const SVecFp& x, Endo acc) {
  for (auto [u, c] : x) acc = alg.combine(acc, 1, basis[u], c);
  return acc;
}

bool is_trivial_idempotent(const std::vector<uint32_t>& m, std::size_t t) {
  bool zero = true, one = true;
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      uint32_t v = m[i * t + j];
      zero = zero && v == 0;
      one = one && v == (i == j ? 1u : 0u);
    }
  }
  return zero || one;
}

// Nontrivial idempotent matrices in the span of the given constant parts:
// all of them when the span is small, otherwise ones built from the minimal
// polynomials of random elements.
std::vector<std::vector<uint32_t>> idempotent_targets(const std::vector<std::vector<uint32_t>>& cparts, std::size_t t,
                                                      const PrimeField& F, std::mt19937_64& rng) {
  std::vector<std::vector<uint32_t>> span;
  {
    SpanSolver s(F);
    for (std::size_t u = 0; u < cparts.size(); ++u) {
      if (!s.add(dense_to_sparse(cparts[u]), static_cast<uint32_t>(u))) span.push_back(cparts[u]);
    }
  }
  std::vector<std::vector<uint32_t>> out;
  auto push = [&](std::vector<uint32_t> m) {
    if (is_trivial_idempotent(m, t) || std::find(out.begin(), out.end(), m) != out.end()) return;
    out.push_back(std::move(m));
  };
  double count = std::pow(static_cast<double>(F.modulus()), static_cast<double>(span.size()));
  if (count <= 4096) {
    std::vector<uint32_t> digits(span.size(), 0);
    for (;;) {
      std::vector<uint32_t> m(t * t, 0);
      for (std::size_t k = 0; k < span.size(); ++k) {
        for (std::size_t x = 0; x < m.size(); ++x) m[x] = F.add(m[x], F.mul(digits[k], span[k][x]));
      }
      if (mat_mul(m, m, t, F) == m) push(std::move(m));
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == F.modulus()) digits[k++] = 0;
      if (k == digits.size()) break;
    }
    return out;
  }
  for (int at = 0; at < 16; ++at) {
    std::vector<uint32_t> phi(t * t, 0);
    for (const auto& c : span) {
      uint32_t k = static_cast<uint32_t>(rng() % F.modulus());
      for (std::size_t x = 0; x < phi.size(); ++x) phi[x] = F.add(phi[x], F.mul(k, c[x]));
    }
    UPoly mu = min_poly(phi, t, F);
    UPoly g = coprime_factor(mu, F);
    if (g.empty()) continue;
    UPoly h = udiv(mu, g, F);
    auto [s, u] = uxgcd(g, h, F);
    // u*h is 1 mod g and 0 mod h
    push(mat_eval(umod(umul(u, h, F), mu, F), phi, t, F));
  }
  return out;
}

// An exact nontrivial idempotent endomorphism, if the search finds one.
// A constant idempotent is lifted inside the endomorphisms of bounded degree
// by Newton steps whose corrections are solved for in that space, so the
// degree never grows.
std::optional<Endo> find_idempotent(const EndoAlgebra& alg, int min_degree, int max_degree, std::mt19937_64& rng) {
  const auto& F = alg.field();
  const std::size_t t = alg.t();
  const Endo zero = alg.zero();
  for (int d = min_degree; d <= max_degree; ++d) {
    std::vector<Endo> basis = alg.bounded_endomorphisms(d);
    if (basis.size() <= 1) continue;
    // constant parts, and the elements with vanishing constant part
    SpanSolver constants(F);
    std::vector<std::vector<uint32_t>> cparts;
    std::vector<Endo> nilpart;
    for (std::size_t u = 0; u < basis.size(); ++u) {
      cparts.push_back(alg.constant_part(basis[u]));
      if (auto dep = constants.add(dense_to_sparse(cparts.back()), static_cast<uint32_t>(u))) {
        nilpart.push_back(linear_combination(alg, basis, *dep, zero));
      }
    }
    for (const auto& target : idempotent_targets(cparts, t, F, rng)) {
      active_budget().check_time();
      auto x = constants.solve(dense_to_sparse(target));
      if (!x) continue;
      Endo p = linear_combination(alg, basis, *x, zero);
      for (int step = 0; step < 2 * d + 4; ++step) {
        Endo defect = alg.combine(alg.compose(p, p), 1, p, F.modulus() - 1);
        if (EndoAlgebra::is_zero(defect)) return p;
        if (nilpart.empty()) break;
        // solve p*q + q*p - q = -defect for q in the nilpotent part
        KeyIndex keys;
        SpanSolver lin(F);
        for (std::size_t l = 0; l < nilpart.size(); ++l) {
          const Endo& q = nilpart[l];
          Endo img = alg.combine(alg.combine(alg.compose(p, q), 1, alg.compose(q, p), 1), 1, q, F.modulus() - 1);
          lin.add(endo_vec(img, keys), static_cast<uint32_t>(l));
        }
        SVecFp rhs = endo_vec(defect, keys);
        for (auto& e : rhs) e.second = F.neg(e.second);
        auto y = lin.solve(std::move(rhs));
        if (!y) break;
        p = linear_combination(alg, nilpart, *y, p);
      }
    }
  }
  return std::nullopt;
}

// Rows of the constant part of phi that are linearly independent, taken
// greedily in `order`, up to one per column of phi.
std::vector<std::size_t> pivot_rows(const Endo& phi, const std::vector<std::size_t>& order, const PrimeField& F) {
  std::vector<std::size_t> out;
  SpanSolver s(F);
  for (std::size_t i : order) {
    if (out.size() == phi.size()) break;
    SVecFp v;
    for (std::size_t j = 0; j < phi.size(); ++j) {
      uint32_t c = phi[j][i].constant_term();
      if (c != 0) v.emplace_back(static_cast<uint32_t>(j), c);
    }
    if (!v.empty() && !s.add(v, static_cast<uint32_t>(i))) out.push_back(i);
  }
  return out;
}

// The non-constant terms of phi on `rows`.
Endo nonconstant_rows(const Endo& phi, const std::vector<std::size_t>& rows, const Polynomial& zero) {
  Endo out(phi.size(), Column(phi.empty() ? 0 : phi[0].size(), zero));
  for (std::size_t j = 0; j < phi.size(); ++j) {
    for (auto i : rows) out[j][i] = phi[j][i] - Polynomial::constant(zero.ring(), phi[j][i].constant_term());
  }
  return out;
}

std::optional<std::vector<uint32_t>> mat_inverse(std::vector<uint32_t> m, std::size_t t, const PrimeField& F) {
  std::vector<uint32_t> inv(t * t, 0);
  for (std::size_t i = 0; i < t; ++i) inv[i * t + i] = 1;
  for (std::size_t c = 0; c < t; ++c) {
    std::size_t piv = c;
    while (piv < t && m[piv * t + c] == 0) ++piv;
    if (piv == t) return std::nullopt;
    for (std::size_t j = 0; j < t; ++j) {
      std::swap(m[c * t + j], m[piv * t + j]);
      std::swap(inv[c * t + j], inv[piv * t + j]);
    }
    uint32_t k = F.inv(m[c * t + c]);
    for (std::size_t j = 0; j < t; ++j) {
      m[c * t + j] = F.mul(m[c * t + j], k);
      inv[c * t + j] = F.mul(inv[c * t + j], k);
    }
    for (std::size_t r = 0; r < t; ++r) {
      uint32_t f = m[r * t + c];
      if (r == c || f == 0) continue;
      for (std::size_t j = 0; j < t; ++j) {
        m[r * t + j] = F.sub(m[r * t + j], F.mul(f, m[c * t + j]));
        inv[r * t + j] = F.sub(inv[r * t + j], F.mul(f, inv[c * t + j]));
      }
    }
  }
  return inv;
}

// Inverse of the transposed constant block of phi on `rows`.
std::optional<std::vector<uint32_t>> constant_block(const Endo& phi, const std::vector<std::size_t>& rows,
                                                    const PrimeField& F) {
  const std::size_t r = rows.size();
  if (r != phi.size()) return std::nullopt;
  std::vector<uint32_t> gt(r * r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t k = 0; k < r; ++k) gt[k * r + a] = phi[k][rows[a]].constant_term();
  }
  return mat_inverse(gt, r, F);
}

// A split embedding phi: N -> M. When phi is a constant invertible matrix on
// `rows`, those generators are solved for and the complement needs no pruning
// through local units.
struct Embedding {
  Endo phi;
  std::vector<std::size_t> rows;
};

// Splits off a copy of `n` when it is a direct summand of the module of
// `alg`. psi o phi = 1 is linear in psi. phi is drawn from the maps that are
// constant on some rows when possible.
std::optional<Embedding> split_known(const EndoAlgebra& alg, const EndoAlgebra& n, int max_degree, std::mt19937_64& rng) {
  constexpr int kAttempts = 8, kDraws = 4;
  const auto& F = alg.field();
  const Polynomial zero = alg.ring().zero();
  const Endo zero_into(n.t(), Column(alg.t(), zero));
  const Endo zero_back(alg.t(), Column(n.t(), n.ring().zero()));
  std::optional<Embedding> fallback;
  for (int d = 0; d <= max_degree; ++d) {
    std::vector<Endo> into = alg.bounded_maps_from(n, d);
    if (into.empty()) continue;
    std::vector<Endo> back = n.bounded_maps_from(alg, d);
    if (back.empty()) continue;
    auto random_phi = [&](const std::vector<Endo>& basis) {
      Endo acc = zero_into;
      for (const auto& h : basis) acc = alg.combine(acc, 1, h, static_cast<uint32_t>(rng() % F.modulus()));
      return acc;
    };
    auto splits = [&](const Endo& phi) {
      KeyIndex keys;
      SpanSolver lin(F);
      for (std::size_t b = 0; b < back.size(); ++b) lin.add(endo_vec(n.compose(back[b], phi), keys), static_cast<uint32_t>(b));
      auto x = lin.solve(endo_vec(n.identity(), keys));
      return x && alg.is_idempotent(alg.compose(phi, linear_combination(n, back, *x, zero_back)));
    };
    std::vector<std::size_t> order(alg.t());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      active_budget().check_time();
      Endo phi = random_phi(into);
      if (attempt > 0) std::shuffle(order.begin(), order.end(), rng);
      std::vector<std::size_t> rows = pivot_rows(phi, order, F);
      if (rows.size() < n.t()) continue;
      std::sort(rows.begin(), rows.end());
      // maps that are constant on the chosen rows
      KeyIndex pin_keys;
      SpanSolver pin(F);
      std::vector<Endo> kernel;
      for (std::size_t b = 0; b < into.size(); ++b) {
        if (auto dep = pin.add(endo_vec(nonconstant_rows(into[b], rows, zero), pin_keys), static_cast<uint32_t>(b))) {
          kernel.push_back(linear_combination(alg, into, *dep, zero_into));
        }
      }
      for (int draw = 0; draw < kDraws && !kernel.empty(); ++draw) {
        Endo pinned = random_phi(kernel);
        if (constant_block(pinned, rows, F) && splits(pinned)) return Embedding{std::move(pinned), rows};
      }
      if (!fallback && splits(phi)) fallback = Embedding{std::move(phi), {}};
    }
  }
  return fallback;
}

// Coker [A | phi] for a split embedding.
PresentedModule complement(const QRingPtr& ring, const EndoAlgebra& alg, const Embedding& emb) {
  const auto& F = alg.field();
  const auto& R = alg.ring();
  const Mat& a = alg.matrix();
  const std::size_t t = alg.t(), r = emb.rows.size();
  if (r == 0) {
    Mat b = a;
    for (std::size_t i = 0; i < t; ++i) {
      for (const auto& col : emb.phi) b[i].push_back(col[i]);
    }
    return prune(from_rows(ring, b, alg.relations() + emb.phi.size()));
  }
  // relation k reads sum_a G[a][k] e_{rows[a]} + sum_l phi[k][l] e_l = 0
  auto h = constant_block(emb.phi, emb.rows, F);
  if (!h) throw InvariantViolation("split embedding lost its constant block");
  std::vector<bool> pinned(t, false);
  for (auto i : emb.rows) pinned[i] = true;
  // e_{rows[a]} = sum_l c[a][l] e_l with c = -H phi
  std::vector<std::vector<Polynomial>> c(r, std::vector<Polynomial>(t, R.zero()));
  for (std::size_t a2 = 0; a2 < r; ++a2) {
    for (std::size_t l = 0; l < t; ++l) {
      if (pinned[l]) continue;
      Polynomial v = R.zero();
      for (std::size_t k = 0; k < r; ++k) {
        uint32_t hk = (*h)[a2 * r + k];
        if (hk != 0 && !emb.phi[k][l].is_zero()) v += emb.phi[k][l].scaled(F.neg(hk));
      }
      c[a2][l] = std::move(v);
    }
  }
  Mat b;
  for (std::size_t l = 0; l < t; ++l) {
    if (pinned[l]) continue;
    std::vector<Polynomial> row;
    for (std::size_t j = 0; j < alg.relations(); ++j) {
      Polynomial v = a[l][j];
      for (std::size_t a2 = 0; a2 < r; ++a2) {
        const Polynomial& x = a[emb.rows[a2]][j];
        if (!x.is_zero() && !c[a2][l].is_zero()) v += x * c[a2][l];
      }
      row.push_back(R.reduce(v));
    }
    b.push_back(std::move(row));
  }
  return prune(from_rows(ring, b, alg.relations()));
}

bool is_local(const PresentedModule& block) {
  for (const auto& g : block.ring()->gb().basis()) {
    if (!in_max_ideal(g)) return false;
  }
  for (std::size_t i = 0; i < block.rows(); ++i) {
    for (std::size_t j = 0; j < block.cols(); ++j) {
      if (!in_max_ideal(block.matrix().at(i, j))) return false;
    }
  }
  return true;
}

struct Hard {
  PresentedModule block;
  int depth;
};

// Blocks are split by cheap low-degree idempotents first. Blocks that resist
// are set aside until the small summands found elsewhere can be tried as
// candidates; the full-degree search is the last resort.
class Decomposer {
 public:
  Decomposer(const DecomposeOptions& opts) : opts_(opts), rng_(opts.seed) {}

  std::vector<PresentedModule> run(const PresentedModule& m) {
    split(m, 0);
    while (!hard_.empty()) {
      auto it = std::min_element(hard_.begin(), hard_.end(),
                                 [](const Hard& a, const Hard& b) { return a.block.rows() < b.block.rows(); });
      Hard h = std::move(*it);
      hard_.erase(it);
      resolve(h.block, h.depth);
    }
    return std::move(out_);
  }

 private:
  static constexpr int kCheapDegree = 1;
  static constexpr std::size_t kCandidateRows = 4;
  static constexpr int kMaxDepth = 16;
  // the degree-3 endomorphism space grows fast; past this the search is
  // slower than the signature of the unsplit block
  static constexpr std::size_t kFullSearchRows = 8;

  void split(const PresentedModule& m, int depth) {
    const QRingPtr& ring = m.ring();
    Mat a = rows_of(m);
    const std::size_t cols = m.cols();
    if (!a.empty() && cols > 0) sparsify(a, cols, ring->ambient()->characteristic());
    for (const auto& comp : components(a, cols)) {
      if (comp.rows.empty()) continue;  // a zero column
      if (comp.cols.empty()) {
        for (std::size_t r = 0; r < comp.rows.size(); ++r) out_.push_back(PresentedModule::free(ring, 1));
        continue;
      }
      Mat sub;
      for (auto r : comp.rows) {
        std::vector<Polynomial> row;
        for (auto c : comp.cols) row.push_back(a[r][c]);
        sub.push_back(std::move(row));
      }
      split_component(from_rows(ring, sub, comp.cols.size()), depth);
    }
  }

  void split_component(const PresentedModule& block, int depth) {
    if (block.rows() < 2 || !opts_.use_endomorphisms || depth >= kMaxDepth) {
      out_.push_back(block);
      return;
    }
    // Constant parts only carry information at the origin; a block with a
    // local unit such as 1+x can still lose known summands exactly.
    if (!is_local(block)) {
      hard_.push_back({block, depth});
      return;
    }
    EndoAlgebra alg(*block.ring(), rows_of(block), block.cols());
    if (auto e = find_idempotent(alg, 0, std::min(kCheapDegree, opts_.max_endo_degree), rng_)) {
      split_by(alg, block, *e, depth);
    } else if (opts_.max_endo_degree > kCheapDegree || block.rows() > 2) {
      hard_.push_back({block, depth});
    } else {
      out_.push_back(block);
    }
  }

  void split_by(const EndoAlgebra& alg, const PresentedModule& block, const Endo& e, int depth) {
    Endo comp = alg.combine(alg.identity(), 1, e, alg.field().modulus() - 1);
    split(alg.summand(block.ring(), e), depth + 1);
    split(alg.summand(block.ring(), comp), depth + 1);
  }

  void resolve(const PresentedModule& block, int depth) {
    EndoAlgebra alg(*block.ring(), rows_of(block), block.cols());
    for (const auto& n : candidates(block)) {
      EndoAlgebra nalg(*n.ring(), rows_of(n), n.cols());
      if (auto p = split_known(alg, nalg, opts_.max_endo_degree, rng_)) {
        out_.push_back(n);
        split(complement(block.ring(), alg, *p), depth + 1);
        return;
      }
    }
    if (opts_.max_endo_degree > kCheapDegree && block.rows() <= kFullSearchRows && is_local(block)) {
      if (auto e = find_idempotent(alg, kCheapDegree + 1, opts_.max_endo_degree, rng_)) {
        split_by(alg, block, *e, depth);
        return;
      }
    }
    out_.push_back(block);
  }

  // Small blocks found so far, one per signature, then the free module.
  std::vector<PresentedModule> candidates(const PresentedModule& block) {
    std::vector<PresentedModule> out;
    std::vector<InvariantSignature> seen;
    for (const auto& b : out_) {
      if (b.cols() == 0 || b.rows() >= block.rows() || b.rows() > kCandidateRows) continue;
      InvariantSignature sig = signature_direct(b);
      if (std::find(seen.begin(), seen.end(), sig) != seen.end()) continue;
      seen.push_back(std::move(sig));
      out.push_back(b);
    }
    out.push_back(PresentedModule::free(block.ring(), 1));
    return out;
  }

  const DecomposeOptions& opts_;
  std::mt19937_64 rng_;
  std::vector<PresentedModule> out_;
  std::vector<Hard> hard_;
};

}  // namespace

std::vector<PresentedModule> block_decompose(const PresentedModule& m, const DecomposeOptions& opts) {
  return Decomposer(opts).run(m);
}

}  // namespace fblow
