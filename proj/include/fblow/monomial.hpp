#pragma once

#include <boost/container/small_vector.hpp>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>

namespace fblow {

/// Exponent vector x^a = x_1^{a_1} ... x_n^{a_n}.  Exponents are 32-bit; any
/// operation that would overflow throws std::overflow_error.
class Monomial {
 public:
  using Exponent = uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  Monomial(std::initializer_list<Exponent> exps);
  explicit Monomial(std::span<const Exponent> exps);

  std::size_t size() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, Exponent v);
  uint64_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  const Exponent* data() const { return exps_.data(); }

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  /// Bit i%64 set iff some variable with that residue has positive exponent.
  uint64_t support_mask() const;

  Monomial operator*(const Monomial& other) const;
  /// Precondition: other divides *this.
  Monomial operator/(const Monomial& other) const;
  Monomial pow(uint64_t k) const;

  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend Monomial gcd(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
  std::size_t hash() const;

 private:
  boost::container::small_vector<Exponent, 8> exps_;
  uint64_t degree_ = 0;
};

/// Componentwise quotient and remainder: m = q*(m div q) + (m mod q).
std::pair<Monomial, Monomial> qsplit(const Monomial& m, uint32_t q);

/// Monomial order.  Block elimination compares the first k variables
/// lexicographically and breaks ties by graded reverse lex on the rest.
class TermOrder {
 public:
  enum class Kind { Lex, GRevLex, BlockElimination };

  static TermOrder lex() { return TermOrder(Kind::Lex, 0); }
  static TermOrder grevlex() { return TermOrder(Kind::GRevLex, 0); }
  static TermOrder block_elimination(std::size_t k) { return TermOrder(Kind::BlockElimination, k); }

  Kind kind() const { return kind_; }
  std::size_t block() const { return block_; }

  /// Three-way comparison: negative, zero or positive as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;

  std::string name() const;

  bool operator==(const TermOrder&) const = default;

 private:
  TermOrder(Kind kind, std::size_t block) : kind_(kind), block_(block) {}

  Kind kind_;
  std::size_t block_;
};

}  // namespace fblow

template <>
struct std::hash<fblow::Monomial> {
  std::size_t operator()(const fblow::Monomial& m) const noexcept { return m.hash(); }
};
