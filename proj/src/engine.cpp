#include "engine.hpp"

#include <algorithm>

#include "fblow/errors.hpp"

namespace fblow::engine {

void sort_vec(const PolyRing& ring, SVec& v) {
  const auto& ord = ring.order();
  const auto& F = ring.field();
  std::sort(v.begin(), v.end(), [&](const MTerm& a, const MTerm& b) { return compare_terms(ord, a, b) > 0; });
  SVec out;
  out.reserve(v.size());
  for (auto& t : v) {
    if (!out.empty() && out.back().pos == t.pos && out.back().mono == t.mono) {
      out.back().coeff = F.add(out.back().coeff, t.coeff);
      if (out.back().coeff == 0) out.pop_back();
    } else if (t.coeff != 0) {
      out.push_back(std::move(t));
    }
  }
  v = std::move(out);
}

SVec sub_mul(const PolyRing& ring, const SVec& f, std::size_t f_start, uint32_t c, const Monomial& m,
             const SVec& g) {
  const auto& F = ring.field();
  const auto& ord = ring.order();
  const uint32_t nc = F.neg(c);
  SVec out;
  out.reserve(f.size() - f_start + g.size());
  std::size_t i = f_start + 1, j = 1;
  // the leading terms cancel by construction
  MTerm cur;
  while (i < f.size() && j < g.size()) {
    cur.mono = g[j].mono * m;
    cur.pos = g[j].pos;
    int cmp = compare_terms(ord, f[i], cur);
    if (cmp > 0) {
      out.push_back(f[i++]);
    } else if (cmp < 0) {
      cur.coeff = F.mul(nc, g[j].coeff);
      out.push_back(std::move(cur));
      ++j;
    } else {
      uint32_t v = F.add(f[i].coeff, F.mul(nc, g[j].coeff));
      if (v != 0) out.push_back({f[i].mono, f[i].pos, v});
      ++i;
      ++j;
    }
  }
  for (; i < f.size(); ++i) out.push_back(f[i]);
  for (; j < g.size(); ++j) out.push_back({g[j].mono * m, g[j].pos, F.mul(nc, g[j].coeff)});
  return out;
}

void make_monic(const PolyRing& ring, SVec& v) {
  if (v.empty() || v.front().coeff == 1) return;
  const auto& F = ring.field();
  uint32_t inv = F.inv(v.front().coeff);
  for (auto& t : v) t.coeff = F.mul(t.coeff, inv);
}

namespace {

int find_divisor(const std::vector<SVec>& basis, const std::vector<uint64_t>& masks,
                 const std::vector<char>* active, const MTerm& t) {
  const uint64_t tm = t.mono.support_mask();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (active != nullptr && !(*active)[k]) continue;
    const MTerm& lead = basis[k].front();
    if (lead.pos != t.pos || (masks[k] & ~tm) != 0) continue;
    if (lead.mono.divides(t.mono)) return static_cast<int>(k);
  }
  return -1;
}

SVec full_reduce(const PolyRing& ring, SVec f, const std::vector<SVec>& basis,
                 const std::vector<uint64_t>& masks, const std::vector<char>* active) {
  const auto& F = ring.field();
  SVec out;
  std::size_t s = 0;
  while (s < f.size()) {
    int k = find_divisor(basis, masks, active, f[s]);
    if (k < 0) {
      out.push_back(std::move(f[s]));
      ++s;
      continue;
    }
    const SVec& g = basis[static_cast<std::size_t>(k)];
    uint32_t c = F.mul(f[s].coeff, F.inv(g.front().coeff));
    Monomial m = f[s].mono / g.front().mono;
    f = sub_mul(ring, f, s, c, m, g);
    s = 0;
  }
  return out;
}

bool is_pure(const SVec& v) {
  for (const auto& t : v) {
    if (t.pos != v.front().pos) return false;
  }
  return true;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  uint32_t pos;
};

class Buchberger {
 public:
  Buchberger(const PolyRing& ring, const Budget& budget) : ring_(ring), budget_(budget) {}

  std::vector<SVec> run(std::vector<SVec> gens) {
    for (auto& g : gens) make_monic(ring_, g);
    // smaller inputs first keeps intermediate growth down
    std::stable_sort(gens.begin(), gens.end(), [&](const SVec& a, const SVec& b) {
      if (a.empty() != b.empty()) return b.empty();
      if (a.empty()) return false;
      return compare_terms(ring_.order(), a.front(), b.front()) < 0;
    });
    for (auto& g : gens) {
      if (g.empty()) continue;
      SVec h = full_reduce(ring_, std::move(g), basis_, masks_, &active_);
      if (h.empty()) continue;
      if (insert(std::move(h))) return unit();
    }
    while (!pairs_.empty()) {
      budget_.check_time();
      Pair pr = std::move(pairs_.back());
      pairs_.pop_back();
      budget_.check_degree(pr.lcm.degree());
      SVec s = spoly(pr);
      SVec h = full_reduce(ring_, std::move(s), basis_, masks_, &active_);
      if (h.empty()) continue;
      if (insert(std::move(h))) return unit();
    }
    return finish();
  }

 private:
  std::vector<SVec> unit() const {
    SVec one{{Monomial(ring_.nvars()), 0, 1}};
    return {one};
  }

  // Sorted so that the pair to process next sits at the back.
  bool pair_less(const Pair& a, const Pair& b) const {
    if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
    MTerm ta{a.lcm, a.pos, 1}, tb{b.lcm, b.pos, 1};
    if (int c = compare_terms(ring_.order(), ta, tb); c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }

  SVec spoly(const Pair& pr) const {
    const SVec& f = basis_[pr.i];
    const SVec& g = basis_[pr.j];
    Monomial mf = pr.lcm / f.front().mono;
    Monomial mg = pr.lcm / g.front().mono;
    SVec h;
    h.reserve(f.size());
    for (const auto& t : f) h.push_back({t.mono * mf, t.pos, t.coeff});
    return sub_mul(ring_, h, 0, 1, mg, g);
  }

  // Gebauer-Moeller update.  Returns true if h is a unit of the ideal case.
  bool insert(SVec h) {
    make_monic(ring_, h);
    budget_.check_basis(basis_.size() + 1);
    if (ideal_case_ && h.front().mono.is_one()) return true;
    const std::size_t hi = basis_.size();
    const MTerm& lh = h.front();
    const bool hpure = is_pure(h);

    struct Cand {
      std::size_t j;
      Monomial lcm;
      bool coprime;
      bool keep = true;
    };
    std::vector<Cand> cands;
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      if (!active_[j] || basis_[j].front().pos != lh.pos) continue;
      const MTerm& lg = basis_[j].front();
      bool cop = hpure && pure_[j] && lh.mono.coprime(lg.mono);
      cands.push_back({j, lcm(lh.mono, lg.mono), cop});
    }
    // chain criterion among the new pairs, keeping coprime representatives
    for (std::size_t a = 0; a < cands.size(); ++a) {
      for (std::size_t b = 0; b < cands.size(); ++b) {
        if (a == b || !cands[b].keep) continue;
        if (!cands[b].lcm.divides(cands[a].lcm)) continue;
        bool equal = cands[a].lcm == cands[b].lcm;
        if (!equal) {
          cands[a].keep = false;
          break;
        }
        // equal lcms: keep one, preferring a coprime pair
        if (cands[a].coprime && !cands[b].coprime) continue;
        if (cands[b].coprime && !cands[a].coprime) {
          cands[a].keep = false;
          break;
        }
        if (b < a) {
          cands[a].keep = false;
          break;
        }
      }
    }
    // old pairs made redundant by h
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (auto& pr : pairs_) {
      if (pr.pos == lh.pos && lh.mono.divides(pr.lcm)) {
        Monomial li = lcm(basis_[pr.i].front().mono, lh.mono);
        Monomial lj = lcm(basis_[pr.j].front().mono, lh.mono);
        if (!(li == pr.lcm) && !(lj == pr.lcm)) continue;
      }
      kept.push_back(std::move(pr));
    }
    pairs_ = std::move(kept);
    std::vector<Pair> fresh;
    for (auto& c : cands) {
      if (c.keep && !c.coprime) fresh.push_back({c.j, hi, std::move(c.lcm), lh.pos});
    }
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      if (active_[j] && basis_[j].front().pos == lh.pos && lh.mono.divides(basis_[j].front().mono)) {
        active_[j] = 0;
      }
    }
    masks_.push_back(lh.mono.support_mask());
    pure_.push_back(hpure);
    active_.push_back(1);
    basis_.push_back(std::move(h));

    auto desc = [&](const Pair& a, const Pair& b) { return pair_less(b, a); };
    std::sort(fresh.begin(), fresh.end(), desc);
    std::size_t mid = pairs_.size();
    pairs_.insert(pairs_.end(), std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));
    std::inplace_merge(pairs_.begin(), pairs_.begin() + static_cast<std::ptrdiff_t>(mid), pairs_.end(), desc);
    return false;
  }

  std::vector<SVec> finish() {
    std::vector<SVec> minimal;
    std::vector<uint64_t> mmasks;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (active_[k]) {
        minimal.push_back(basis_[k]);
        mmasks.push_back(masks_[k]);
      }
    }
    // leading terms are now pairwise non-dividing; reduce tails
    std::vector<SVec> out;
    out.reserve(minimal.size());
    std::vector<char> act(minimal.size(), 1);
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      act[k] = 0;
      SVec tail(minimal[k].begin() + 1, minimal[k].end());
      SVec red = full_reduce(ring_, std::move(tail), minimal, mmasks, &act);
      act[k] = 1;
      SVec g;
      g.reserve(red.size() + 1);
      g.push_back(minimal[k].front());
      for (auto& t : red) g.push_back(std::move(t));
      out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(), [&](const SVec& a, const SVec& b) {
      return compare_terms(ring_.order(), a.front(), b.front()) < 0;
    });
    return out;
  }

 public:
  bool ideal_case_ = true;

 private:
  const PolyRing& ring_;
  const Budget& budget_;
  std::vector<SVec> basis_;
  std::vector<uint64_t> masks_;
  std::vector<char> pure_;
  std::vector<char> active_;
  std::vector<Pair> pairs_;
};

}  // namespace

Reducer::Reducer(const PolyRing& ring, std::vector<SVec> basis) : ring_(&ring), basis_(std::move(basis)) {
  masks_.reserve(basis_.size());
  for (const auto& g : basis_) masks_.push_back(g.front().mono.support_mask());
}

SVec Reducer::reduce(SVec f) const { return full_reduce(*ring_, std::move(f), basis_, masks_, nullptr); }

bool Reducer::reduces_to_zero(SVec f) const {
  const auto& F = ring_->field();
  while (!f.empty()) {
    int k = find_divisor(basis_, masks_, nullptr, f.front());
    if (k < 0) return false;
    const SVec& g = basis_[static_cast<std::size_t>(k)];
    uint32_t c = F.mul(f.front().coeff, F.inv(g.front().coeff));
    f = sub_mul(*ring_, f, 0, c, f.front().mono / g.front().mono, g);
  }
  return true;
}

std::vector<SVec> groebner(const PolyRing& ring, std::vector<SVec> gens, const Budget& budget) {
  Buchberger bb(ring, budget);
  for (const auto& g : gens) {
    for (const auto& t : g) {
      if (t.pos != 0) bb.ideal_case_ = false;
    }
  }
  return bb.run(std::move(gens));
}

SVec from_poly(const Polynomial& f, uint32_t pos) {
  SVec v;
  v.reserve(f.num_terms());
  for (const auto& t : f.terms()) v.push_back({t.mono, pos, t.coeff});
  return v;
}

Polynomial to_poly(const RingPtr& ring, const SVec& v) {
  std::vector<Term> terms;
  terms.reserve(v.size());
  for (const auto& t : v) {
    if (t.pos != 0) throw InvariantViolation("to_poly: vector has nonzero position");
    terms.push_back({t.mono, t.coeff});
  }
  return Polynomial::from_sorted_terms(ring, std::move(terms));
}

SVec from_column(const std::vector<Polynomial>& col) {
  if (col.empty()) return {};
  const PolyRing& ring = *col.front().ring();
  SVec v;
  for (std::size_t i = 0; i < col.size(); ++i) {
    for (const auto& t : col[i].terms()) v.push_back({t.mono, static_cast<uint32_t>(i), t.coeff});
  }
  sort_vec(ring, v);
  return v;
}

std::vector<Polynomial> to_column(const RingPtr& ring, const SVec& v, std::size_t rows) {
  std::vector<std::vector<Term>> parts(rows);
  for (const auto& t : v) {
    if (t.pos >= rows) throw InvariantViolation("to_column: position out of range");
    parts[t.pos].push_back({t.mono, t.coeff});
  }
  std::vector<Polynomial> col;
  col.reserve(rows);
  // TOP order keeps each position's terms in descending monomial order
  for (auto& p : parts) col.push_back(Polynomial::from_sorted_terms(ring, std::move(p)));
  return col;
}

}  // namespace fblow::engine
