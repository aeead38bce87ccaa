#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fblow/modpres.hpp"

namespace fblow {

/// The monomials x^b, b in {0..q-1}^n, numbered in base q with the first
/// variable most significant.
class PushforwardBasis {
 public:
  PushforwardBasis(std::size_t nvars, uint64_t q);

  uint64_t q() const { return q_; }
  std::size_t nvars() const { return n_; }
  std::size_t size() const { return size_; }

  std::size_t to_number(const std::vector<uint64_t>& b) const;
  std::vector<uint64_t> to_multiindex(std::size_t k) const;

 private:
  std::size_t n_;
  uint64_t q_;
  std::size_t size_;
};

/// q = p^e for the ring's characteristic.
uint64_t frobenius_q(const PolyRing& ring, unsigned e);

/// U(a, e): entry (i, j) is x^{(a+j) div q} when i = (a+j) mod q.
PolyMatrix u_monomial(const RingPtr& ring, const Monomial& a, unsigned e);
/// U(f, e) = sum of c_a U(a, e).
PolyMatrix u_poly(const Polynomial& f, unsigned e);
/// Blockwise U(A, e).  Presents F^e_* Coker(A) over S.
PolyMatrix u_matrix(const PolyMatrix& a, unsigned e);

/// S-presentation of M: lifted columns of M followed by f_j * e_i.
PolyMatrix lift_presentation(const PresentedModule& m);

/// Presentation of F^e_* M over R, before and after pruning.
PresentedModule pushforward_unpruned(const PresentedModule& m, unsigned e);
PresentedModule pushforward(const PresentedModule& m, unsigned e);

}  // namespace fblow
