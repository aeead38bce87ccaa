#include "fblow/field.hpp"

#include <ostream>
#include <string>

#include "fblow/errors.hpp"

namespace fblow {

bool PrimeField::is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(uint32_t p) : p_(p) {
  if (p >= kMaxModulus || !is_prime(p)) {
    throw RingError("characteristic must be a prime below 65536, got " + std::to_string(p));
  }
  inverse_.assign(p, 0);
  for (uint32_t a = 1; a < p; ++a) {
    if (inverse_[a] != 0) continue;
    uint32_t b = pow(a, p - 2);
    inverse_[a] = b;
    inverse_[b] = a;
  }
}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const {
  uint32_t result = 1 % p_;
  uint32_t base = a % p_;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

PrimeFieldElement::PrimeFieldElement(int64_t value, uint32_t modulus) : modulus_(modulus) {
  if (modulus >= PrimeField::kMaxModulus || !PrimeField::is_prime(modulus)) {
    throw RingError("modulus must be a prime below 65536");
  }
  int64_t r = value % static_cast<int64_t>(modulus);
  value_ = static_cast<uint32_t>(r < 0 ? r + modulus : r);
}

void PrimeFieldElement::check_same(const PrimeFieldElement& o) const {
  if (o.modulus_ != modulus_) throw RingError("mixed prime field moduli");
}

PrimeFieldElement PrimeFieldElement::operator+(const PrimeFieldElement& o) const {
  check_same(o);
  return {static_cast<int64_t>(value_) + o.value_, modulus_};
}

PrimeFieldElement PrimeFieldElement::operator-(const PrimeFieldElement& o) const {
  check_same(o);
  return {static_cast<int64_t>(value_) - o.value_, modulus_};
}

PrimeFieldElement PrimeFieldElement::operator*(const PrimeFieldElement& o) const {
  check_same(o);
  return {static_cast<int64_t>(value_) * o.value_, modulus_};
}

PrimeFieldElement PrimeFieldElement::operator-() const {
  return {-static_cast<int64_t>(value_), modulus_};
}

PrimeFieldElement PrimeFieldElement::pow(uint64_t e) const {
  PrimeFieldElement result(1, modulus_);
  PrimeFieldElement base = *this;
  while (e != 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

PrimeFieldElement PrimeFieldElement::inverse() const {
  if (value_ == 0) throw std::domain_error("inverse of zero in a prime field");
  return pow(modulus_ - 2);
}

std::ostream& operator<<(std::ostream& os, const PrimeFieldElement& a) {
  return os << a.value();
}

}  // namespace fblow
