#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fblow/groebner.hpp"

namespace fblow {

class QuotientRing;
using QRingPtr = std::shared_ptr<const QuotientRing>;

/// R = S/I with the reduced Groebner basis of I computed once.
class QuotientRing {
 public:
  /// Throws UnitIdealError if 1 is in I.
  static QRingPtr make(IdealGens relations);
  static QRingPtr make(const RingPtr& ambient, const std::vector<std::string>& relations);

  const RingPtr& ambient() const { return ambient_; }
  const IdealGens& relations() const { return relations_; }
  const ReducedGB& gb() const { return gb_; }

  Polynomial reduce(const Polynomial& f) const { return normal_form(f, gb_); }
  bool is_zero(const Polynomial& f) const { return reduce(f).is_zero(); }
  Polynomial zero() const { return Polynomial(ambient_); }
  Polynomial one() const { return Polynomial::constant(ambient_, 1); }

 private:
  QuotientRing(IdealGens relations, ReducedGB gb);
  RingPtr ambient_;
  IdealGens relations_;
  ReducedGB gb_;
};

/// Matrix over R with every entry kept in normal form.
class RMatrix {
 public:
  RMatrix(QRingPtr ring, std::size_t rows, std::size_t cols);
  RMatrix(QRingPtr ring, const PolyMatrix& m);

  const QRingPtr& ring() const { return ring_; }
  std::size_t rows() const { return m_.rows(); }
  std::size_t cols() const { return m_.cols(); }
  const Polynomial& at(std::size_t i, std::size_t j) const { return m_.at(i, j); }
  void set(std::size_t i, std::size_t j, const Polynomial& v) { m_.at(i, j) = ring_->reduce(v); }
  const PolyMatrix& matrix() const { return m_; }
  Column column(std::size_t j) const { return m_.column(j); }

 private:
  QRingPtr ring_;
  PolyMatrix m_;
};

/// Coker of the matrix: rows are generators, columns are relations.
class PresentedModule {
 public:
  PresentedModule(QRingPtr ring, const PolyMatrix& m) : matrix_(std::move(ring), m) {}
  explicit PresentedModule(RMatrix m) : matrix_(std::move(m)) {}
  /// R^t.
  static PresentedModule free(const QRingPtr& ring, std::size_t t);

  const QRingPtr& ring() const { return matrix_.ring(); }
  const RMatrix& matrix() const { return matrix_; }
  std::size_t rows() const { return matrix_.rows(); }
  std::size_t cols() const { return matrix_.cols(); }

 private:
  RMatrix matrix_;
};

/// Rank of the matrix over the fraction field of R (R assumed a domain).
std::size_t matrix_rank(const RMatrix& m);
/// Rank of the cokernel: rows minus matrix rank.
std::size_t module_rank(const PresentedModule& m);
/// Reference rank by minor membership with random sampling.
std::size_t module_rank_by_minors(const PresentedModule& m, uint64_t seed = 0);

/// Ideal of the (t-k)-minors, entries in normal form.
IdealGens fitting_ideal(std::size_t k, const PresentedModule& m);

PresentedModule prune(const PresentedModule& m);

/// Normal form of v modulo the columns of `basis` and I * R^t.
Column module_normal_form(const Column& v, const std::vector<Column>& basis, const QuotientRing& ring);

/// Block-diagonal sum.
PresentedModule direct_sum(const std::vector<PresentedModule>& blocks);

struct InvariantSignature {
  std::size_t rank = 0;
  /// Fitt_0, Fitt_1, ... up to the first unit ideal, each as a reduced GB
  /// with I adjoined.
  std::vector<ReducedGB> fitting;

  bool operator==(const InvariantSignature& o) const;
  bool operator!=(const InvariantSignature& o) const { return !(*this == o); }
  /// Stable across runs and platforms.
  uint64_t hash() const;
  std::string hash_hex() const;
};

/// Direct from minors; practical for small presentations.
InvariantSignature signature_direct(const PresentedModule& m);
/// Isomorphism invariant signature.  Large presentations are split with
/// block_decompose first and Fitting ideals combined by the direct-sum rule.
InvariantSignature signature(const PresentedModule& m);

struct DecomposeOptions {
  uint64_t seed = 0;
  /// Maximum entry degree of endomorphisms searched for idempotents.
  int max_endo_degree = 3;
  /// Set false for the constant-elimination and connected-component steps only.
  bool use_endomorphisms = true;
};

/// Best-effort direct-sum splitting of a pruned presentation.  Zero rows come
/// back as 1 x 0 free blocks.
std::vector<PresentedModule> block_decompose(const PresentedModule& m, const DecomposeOptions& opts = {});

}  // namespace fblow
