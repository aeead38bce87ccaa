#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace fblow {

/// Arithmetic in the prime field Z/p for p < 2^16, so that products of two
/// reduced residues fit in 32 bits.
class PrimeField {
 public:
  static constexpr uint32_t kMaxModulus = 1u << 16;

  explicit PrimeField(uint32_t p);

  uint32_t modulus() const { return p_; }

  uint32_t reduce(int64_t v) const {
    int64_t r = v % static_cast<int64_t>(p_);
    return static_cast<uint32_t>(r < 0 ? r + p_ : r);
  }
  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  uint32_t mul(uint32_t a, uint32_t b) const { return (a * b) % p_; }
  /// Precondition: a != 0.
  uint32_t inv(uint32_t a) const { return inverse_[a]; }
  uint32_t pow(uint32_t a, uint64_t e) const;

  static bool is_prime(uint32_t n);

 private:
  uint32_t p_;
  std::vector<uint32_t> inverse_;
};

/// A standalone residue class carrying its modulus.
class PrimeFieldElement {
 public:
  PrimeFieldElement(int64_t value, uint32_t modulus);

  uint32_t value() const { return value_; }
  uint32_t modulus() const { return modulus_; }

  PrimeFieldElement operator+(const PrimeFieldElement& o) const;
  PrimeFieldElement operator-(const PrimeFieldElement& o) const;
  PrimeFieldElement operator*(const PrimeFieldElement& o) const;
  PrimeFieldElement operator-() const;
  PrimeFieldElement inverse() const;
  PrimeFieldElement pow(uint64_t e) const;

  bool operator==(const PrimeFieldElement& o) const = default;

 private:
  void check_same(const PrimeFieldElement& o) const;

  uint32_t value_;
  uint32_t modulus_;
};

std::ostream& operator<<(std::ostream& os, const PrimeFieldElement& a);

}  // namespace fblow
