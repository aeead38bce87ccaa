#include "fblow/monomial.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fblow {

namespace {

constexpr uint64_t kMaxExponent = std::numeric_limits<Monomial::Exponent>::max();

int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

int lex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  for (std::size_t i = lo; i < hi; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

Monomial::Monomial(std::initializer_list<Exponent> exps) : exps_(exps.begin(), exps.end()) {
  for (Exponent e : exps_) degree_ += e;
}

Monomial::Monomial(std::span<const Exponent> exps) : exps_(exps.begin(), exps.end()) {
  for (Exponent e : exps_) degree_ += e;
}

void Monomial::set(std::size_t i, Exponent v) {
  degree_ = degree_ - exps_[i] + v;
  exps_[i] = v;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  }
  return true;
}

uint64_t Monomial::support_mask() const {
  uint64_t mask = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0) mask |= uint64_t{1} << (i % 64);
  }
  return mask;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    uint64_t s = uint64_t{exps_[i]} + other.exps_[i];
    if (s > kMaxExponent) throw std::overflow_error("monomial exponent overflow");
    r.exps_[i] = static_cast<Exponent>(s);
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
  r.degree_ = degree_ - other.degree_;
  return r;
}

Monomial Monomial::pow(uint64_t k) const {
  Monomial r = *this;
  r.degree_ = 0;
  for (auto& e : r.exps_) {
    if (e != 0 && k > kMaxExponent / e) throw std::overflow_error("monomial exponent overflow");
    e = static_cast<Exponent>(e * k);
    r.degree_ += e;
  }
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  r.degree_ = 0;
  for (std::size_t i = 0; i < a.exps_.size(); ++i) {
    r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    r.degree_ += r.exps_[i];
  }
  return r;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  r.degree_ = 0;
  for (std::size_t i = 0; i < a.exps_.size(); ++i) {
    r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    r.degree_ += r.exps_[i];
  }
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (Exponent e : exps_) {
    h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::pair<Monomial, Monomial> qsplit(const Monomial& m, uint32_t q) {
  if (q == 0) throw std::invalid_argument("qsplit: q must be positive");
  Monomial quot(m.size()), rem(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    quot.set(i, m[i] / q);
    rem.set(i, m[i] % q);
  }
  return {quot, rem};
}

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = a.size();
  switch (kind_) {
    case Kind::Lex:
      return lex_range(a, b, 0, n);
    case Kind::GRevLex:
      return grevlex_range(a, b, 0, n);
    case Kind::BlockElimination: {
      const std::size_t k = std::min(block_, n);
      if (int c = lex_range(a, b, 0, k); c != 0) return c;
      return grevlex_range(a, b, k, n);
    }
  }
  return 0;
}

std::string TermOrder::name() const {
  switch (kind_) {
    case Kind::Lex:
      return "lex";
    case Kind::GRevLex:
      return "grevlex";
    case Kind::BlockElimination:
      return "block_elimination(" + std::to_string(block_) + ")";
  }
  return "?";
}

}  // namespace fblow
