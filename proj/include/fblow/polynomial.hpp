#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fblow/field.hpp"
#include "fblow/monomial.hpp"

namespace fblow {

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

/// F_p[x_1..x_n] with a fixed term order.  Immutable and shared.
class PolyRing {
 public:
  static RingPtr make(uint32_t p, std::vector<std::string> vars,
                      TermOrder order = TermOrder::grevlex());

  uint32_t characteristic() const { return field_.modulus(); }
  const PrimeField& field() const { return field_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& var_names() const { return vars_; }
  const std::string& var_name(std::size_t i) const { return vars_[i]; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  const TermOrder& order() const { return order_; }

  RingPtr with_order(TermOrder order) const;
  /// Same characteristic and order, with extra variables appended.
  RingPtr extended(const std::vector<std::string>& extra) const;

  /// Structural equality (characteristic, variables, order).
  bool same_as(const PolyRing& other) const;

  /// A fresh variable name not already used in this ring.
  std::string fresh_name(const std::string& stem) const;

 private:
  PolyRing(uint32_t p, std::vector<std::string> vars, TermOrder order);

  PrimeField field_;
  std::vector<std::string> vars_;
  TermOrder order_;
};

void require_same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  Monomial mono;
  uint32_t coeff;
};

/// Sparse polynomial: terms strictly descending in the ring's term order, no
/// zero coefficients.  Value semantics; every operation returns canonical form.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(const RingPtr& ring, int64_t c);
  static Polynomial variable(const RingPtr& ring, std::size_t i);
  static Polynomial monomial(const RingPtr& ring, const Monomial& m, uint32_t c = 1);
  /// Sorts, merges duplicates and drops zeros.
  static Polynomial from_terms(const RingPtr& ring, std::vector<Term> terms);
  /// Trusts the caller that terms are already canonical.
  static Polynomial from_sorted_terms(const RingPtr& ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  /// Nonzero element of F_p.
  bool is_unit() const { return terms_.size() == 1 && terms_[0].mono.is_one(); }
  uint32_t constant_term() const;

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  uint32_t leading_coeff() const { return terms_.front().coeff; }
  /// Total degree; -1 for the zero polynomial.
  int64_t degree() const;
  bool contains_variable(std::size_t var) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial scaled(uint32_t c) const;
  Polynomial mul_term(const Monomial& m, uint32_t c) const;
  Polynomial pow(uint64_t k) const;
  Polynomial monic() const;

  /// Formal partial derivative, coefficients reduced mod p.
  Polynomial derivative(std::size_t var) const;
  /// Replace x_var by value (a polynomial in the same ring).
  Polynomial substitute(std::size_t var, const Polynomial& value) const;
  /// Reinterpret in a ring with the same characteristic; var_map[i] is the
  /// index in the target ring of variable i of this ring.
  Polynomial map_to(const RingPtr& target, const std::vector<std::size_t>& var_map) const;
  /// Same variables, possibly a different term order.
  Polynomial reordered(const RingPtr& target) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  std::string str() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Dense matrix of polynomials over a common ring, row-major.
class PolyMatrix {
 public:
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);
  static PolyMatrix identity(const RingPtr& ring, std::size_t n);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Polynomial& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Polynomial& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  PolyMatrix transpose() const;
  PolyMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  PolyMatrix select_columns(const std::vector<std::size_t>& cols) const;
  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  bool is_zero() const;
  bool operator==(const PolyMatrix& o) const;

  std::vector<Polynomial> column(std::size_t j) const;
  std::vector<Polynomial> row(std::size_t i) const;

 private:
  RingPtr ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial> entries_;
};

PolyMatrix hstack(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix vstack(const PolyMatrix& a, const PolyMatrix& b);

}  // namespace fblow
