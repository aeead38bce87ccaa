#include "fblow/frobenius.hpp"

#include <stdexcept>

#include "fblow/kernels.hpp"

namespace fblow {

PushforwardBasis::PushforwardBasis(std::size_t nvars, uint64_t q) : n_(nvars), q_(q), size_(1) {
  if (q == 0) throw std::invalid_argument("PushforwardBasis: q must be positive");
  for (std::size_t i = 0; i < n_; ++i) {
    if (size_ > (std::size_t{1} << 20) / q) throw std::length_error("PushforwardBasis: q^n too large");
    size_ *= q;
  }
}

std::size_t PushforwardBasis::to_number(const std::vector<uint64_t>& b) const {
  if (b.size() != n_) throw std::invalid_argument("to_number: wrong length");
  std::size_t k = 0;
  for (auto v : b) {
    if (v >= q_) throw std::out_of_range("to_number: entry not below q");
    k = k * q_ + v;
  }
  return k;
}

std::vector<uint64_t> PushforwardBasis::to_multiindex(std::size_t k) const {
  if (k >= size_) throw std::out_of_range("to_multiindex: index out of range");
  std::vector<uint64_t> b(n_);
  for (std::size_t j = n_; j-- > 0;) {
    b[j] = k % q_;
    k /= q_;
  }
  return b;
}

uint64_t frobenius_q(const PolyRing& ring, unsigned e) {
  uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (q > (uint64_t{1} << 20) / ring.characteristic()) throw std::length_error("p^e too large");
    q *= ring.characteristic();
  }
  return q;
}

PolyMatrix u_monomial(const RingPtr& ring, const Monomial& a, unsigned e) {
  return u_poly(Polynomial::monomial(ring, a, 1), e);
}

PolyMatrix u_poly(const Polynomial& f, unsigned e) {
  PolyMatrix one(f.ring(), 1, 1);
  one.at(0, 0) = f;
  return u_matrix(one, e);
}

PolyMatrix u_matrix(const PolyMatrix& a, unsigned e) {
  return kernels::u_matrix_parallel(a, frobenius_q(*a.ring(), e));
}

PolyMatrix lift_presentation(const PresentedModule& m) {
  const QuotientRing& R = *m.ring();
  const auto& rels = R.relations().gens();
  const std::size_t t = m.rows();
  PolyMatrix b(R.ambient(), t, m.cols() + rels.size() * t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) b.at(i, j) = m.matrix().at(i, j);
  }
  std::size_t col = m.cols();
  for (const auto& f : rels) {
    for (std::size_t i = 0; i < t; ++i) b.at(i, col++) = f;
  }
  return b;
}

PresentedModule pushforward_unpruned(const PresentedModule& m, unsigned e) {
  if (e == 0) throw std::invalid_argument("pushforward: e must be at least 1");
  return PresentedModule(m.ring(), u_matrix(lift_presentation(m), e));
}

PresentedModule pushforward(const PresentedModule& m, unsigned e) { return prune(pushforward_unpruned(m, e)); }

}  // namespace fblow
