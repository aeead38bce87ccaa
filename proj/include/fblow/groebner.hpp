#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "fblow/polynomial.hpp"

namespace fblow {

/// Generators of an ideal in a common ring; zero generators are dropped, so an
/// empty list is the zero ideal.
class IdealGens {
 public:
  explicit IdealGens(RingPtr ring) : ring_(std::move(ring)) {}
  IdealGens(RingPtr ring, std::vector<Polynomial> gens);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& gens() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }
  void add(const Polynomial& f);

 private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
};

namespace engine {
class Reducer;
}

/// Reduced Groebner basis in the ring's term order: monic, interreduced,
/// sorted ascending by leading monomial.
class ReducedGB {
 public:
  ReducedGB(RingPtr ring, std::vector<Polynomial> basis);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& basis() const { return basis_; }
  bool is_unit() const { return basis_.size() == 1 && basis_[0].is_unit(); }
  bool is_zero() const { return basis_.empty(); }
  IdealGens ideal() const { return IdealGens(ring_, basis_); }

  bool operator==(const ReducedGB& o) const { return basis_ == o.basis_; }

 private:
  friend Polynomial normal_form(const Polynomial& f, const ReducedGB& gb);
  RingPtr ring_;
  std::vector<Polynomial> basis_;
  std::shared_ptr<const engine::Reducer> reducer_;
};

ReducedGB buchberger(const IdealGens& gens);
Polynomial normal_form(const Polynomial& f, const ReducedGB& gb);
bool membership(const Polynomial& f, const ReducedGB& gb);
/// f in the radical of (gens), via 1 in (gens, 1 - y f) with y fresh.
bool radical_membership(const Polynomial& f, const IdealGens& gens);
/// Every generator of a lies in b (ideal inclusion).
bool ideal_contains(const ReducedGB& b, const IdealGens& a);

/// Generators of the elimination ideal, as polynomials of the same ring that
/// do not involve any dropped variable.
IdealGens eliminate(const IdealGens& gens, const std::vector<std::size_t>& drop);

/// a / b when b divides a in the polynomial ring.
std::optional<Polynomial> exact_quotient(const Polynomial& a, const Polynomial& b);
/// Monic greatest common divisor in the polynomial ring, via the principal
/// ideal (a) cap (b).  gcd(0, b) = monic b.
Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b);

/// a cap b, by eliminating u from u*a + (1 - u)*b.
IdealGens ideal_intersection(const IdealGens& a, const IdealGens& b);
/// a : (f).
IdealGens ideal_quotient(const IdealGens& a, const Polynomial& f);
/// a : b, the intersection of a : (g) over the generators of b.
IdealGens ideal_quotient(const IdealGens& a, const IdealGens& b);

/// Krull dimension of ring/(gens).  Throws UnitIdealError for (1).
int dimension(const IdealGens& gens);
int dimension(const ReducedGB& gb);

/// Rows are generators, columns are variables.
PolyMatrix jacobian(const IdealGens& gens);
/// All k x k minors, rows-then-columns subsets in lexicographic order.
/// minors(m, 0) = {1}.  Throws std::out_of_range if k > min(rows, cols).
std::vector<Polynomial> minors(const PolyMatrix& m, std::size_t k);

using Column = std::vector<Polynomial>;

/// Groebner basis of a submodule of ring^rank under term-over-position order,
/// optionally with relations * e_i adjoined for every i.
class ModuleGB {
 public:
  ModuleGB(RingPtr ring, std::size_t rank, const std::vector<Column>& gens, const ReducedGB* relations = nullptr);

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  std::size_t size() const;
  std::vector<Column> basis() const;

  Column normal_form(const Column& v) const;
  bool contains(const Column& v) const;
  /// (position, monomial) of each basis element's leading term.
  std::vector<std::pair<std::size_t, Monomial>> leading_terms() const;

 private:
  RingPtr ring_;
  std::size_t rank_;
  std::shared_ptr<const engine::Reducer> reducer_;
};

Column module_normal_form(const Column& v, const std::vector<Column>& basis, const ReducedGB* relations = nullptr);

}  // namespace fblow
