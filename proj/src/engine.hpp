// Internal Buchberger engine shared by ideal and module Groebner bases.
// Vectors are sparse lists of (monomial, position, coefficient) sorted
// descending in a term-over-position order; ideals live in position 0.
#pragma once

#include <cstdint>
#include <vector>

#include "fblow/budget.hpp"
#include "fblow/polynomial.hpp"

namespace fblow::engine {

struct MTerm {
  Monomial mono;
  uint32_t pos;
  uint32_t coeff;
};
using SVec = std::vector<MTerm>;

/// Monomial first; at equal monomials the lower position is larger.
inline int compare_terms(const TermOrder& ord, const MTerm& a, const MTerm& b) {
  if (int c = ord.compare(a.mono, b.mono); c != 0) return c;
  if (a.pos != b.pos) return a.pos < b.pos ? 1 : -1;
  return 0;
}

void sort_vec(const PolyRing& ring, SVec& v);

/// f - c * m * g, assuming f and g are canonical.
SVec sub_mul(const PolyRing& ring, const SVec& f, std::size_t f_start, uint32_t c, const Monomial& m,
             const SVec& g);

void make_monic(const PolyRing& ring, SVec& v);

/// A fixed list of divisors with cached leading data for fast reduction.
class Reducer {
 public:
  Reducer(const PolyRing& ring, std::vector<SVec> basis);

  /// Full normal form.
  SVec reduce(SVec f) const;
  bool reduces_to_zero(SVec f) const;
  const std::vector<SVec>& basis() const { return basis_; }

 private:
  friend class Buchberger;
  const PolyRing* ring_;
  std::vector<SVec> basis_;
  std::vector<uint64_t> masks_;
};

/// Reduced Groebner basis of the submodule generated by gens, sorted
/// ascending by leading term.  An ideal containing a unit yields {1}.
std::vector<SVec> groebner(const PolyRing& ring, std::vector<SVec> gens, const Budget& budget);

SVec from_poly(const Polynomial& f, uint32_t pos = 0);
Polynomial to_poly(const RingPtr& ring, const SVec& v);
SVec from_column(const std::vector<Polynomial>& col);
std::vector<Polynomial> to_column(const RingPtr& ring, const SVec& v, std::size_t rows);

}  // namespace fblow::engine
