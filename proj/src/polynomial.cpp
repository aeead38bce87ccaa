#include "fblow/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

#include "fblow/errors.hpp"

namespace fblow {

PolyRing::PolyRing(uint32_t p, std::vector<std::string> vars, TermOrder order)
    : field_(p), vars_(std::move(vars)), order_(order) {}

RingPtr PolyRing::make(uint32_t p, std::vector<std::string> vars, TermOrder order) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].empty()) throw RingError("empty variable name");
    for (std::size_t j = 0; j < i; ++j) {
      if (vars[i] == vars[j]) throw RingError("duplicate variable name '" + vars[i] + "'");
    }
  }
  return RingPtr(new PolyRing(p, std::move(vars), order));
}

std::optional<std::size_t> PolyRing::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return i;
  }
  return std::nullopt;
}

RingPtr PolyRing::with_order(TermOrder order) const { return make(characteristic(), vars_, order); }

RingPtr PolyRing::extended(const std::vector<std::string>& extra) const {
  auto vars = vars_;
  vars.insert(vars.end(), extra.begin(), extra.end());
  return make(characteristic(), std::move(vars), order_);
}

bool PolyRing::same_as(const PolyRing& other) const {
  return this == &other || (characteristic() == other.characteristic() && vars_ == other.vars_ &&
                            order_ == other.order_);
}

std::string PolyRing::fresh_name(const std::string& stem) const {
  if (!index_of(stem)) return stem;
  for (int k = 0;; ++k) {
    std::string candidate = stem + std::to_string(k);
    if (!index_of(candidate)) return candidate;
  }
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return;
  if (!a || !b || !a->same_as(*b)) throw RingError("polynomials from different rings");
}

namespace {

// Merge two canonical term lists; sign_b is applied to b's coefficients.
std::vector<Term> merge_terms(const PolyRing& ring, const std::vector<Term>& a,
                              const std::vector<Term>& b, bool subtract) {
  const auto& F = ring.field();
  const auto& ord = ring.order();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = ord.compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].mono, subtract ? F.neg(b[j].coeff) : b[j].coeff});
      ++j;
    } else {
      uint32_t v = subtract ? F.sub(a[i].coeff, b[j].coeff) : F.add(a[i].coeff, b[j].coeff);
      if (v != 0) out.push_back({a[i].mono, v});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({b[j].mono, subtract ? F.neg(b[j].coeff) : b[j].coeff});
  return out;
}

}  // namespace

Polynomial Polynomial::constant(const RingPtr& ring, int64_t c) {
  Polynomial r(ring);
  uint32_t v = ring->field().reduce(c);
  if (v != 0) r.terms_.push_back({Monomial(ring->nvars()), v});
  return r;
}

Polynomial Polynomial::variable(const RingPtr& ring, std::size_t i) {
  if (i >= ring->nvars()) throw std::out_of_range("variable index out of range");
  Monomial m(ring->nvars());
  m.set(i, 1);
  return monomial(ring, m, 1);
}

Polynomial Polynomial::monomial(const RingPtr& ring, const Monomial& m, uint32_t c) {
  if (m.size() != ring->nvars()) throw RingError("monomial length does not match ring");
  Polynomial r(ring);
  c %= ring->characteristic();
  if (c != 0) r.terms_.push_back({m, c});
  return r;
}

Polynomial Polynomial::from_terms(const RingPtr& ring, std::vector<Term> terms) {
  const auto& ord = ring->order();
  const auto& F = ring->field();
  for (const auto& t : terms) {
    if (t.mono.size() != ring->nvars()) throw RingError("monomial length does not match ring");
  }
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return ord.compare(a.mono, b.mono) > 0; });
  Polynomial r(ring);
  for (auto& t : terms) {
    uint32_t c = t.coeff % F.modulus();
    if (!r.terms_.empty() && r.terms_.back().mono == t.mono) {
      r.terms_.back().coeff = F.add(r.terms_.back().coeff, c);
      if (r.terms_.back().coeff == 0) r.terms_.pop_back();
    } else if (c != 0) {
      r.terms_.push_back({std::move(t.mono), c});
    }
  }
  return r;
}

Polynomial Polynomial::from_sorted_terms(const RingPtr& ring, std::vector<Term> terms) {
  Polynomial r(ring);
  r.terms_ = std::move(terms);
  return r;
}

uint32_t Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return 0;
}

int64_t Polynomial::degree() const {
  int64_t d = -1;
  for (const auto& t : terms_) d = std::max<int64_t>(d, static_cast<int64_t>(t.mono.degree()));
  return d;
}

bool Polynomial::contains_variable(std::size_t var) const {
  for (const auto& t : terms_) {
    if (t.mono[var] != 0) return true;
  }
  return false;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same_ring(ring_, o.ring_);
  return from_sorted_terms(ring_, merge_terms(*ring_, terms_, o.terms_, false));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  require_same_ring(ring_, o.ring_);
  return from_sorted_terms(ring_, merge_terms(*ring_, terms_, o.terms_, true));
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ring_);
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = ring_->field().neg(t.coeff);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_ring(ring_, o.ring_);
  if (is_zero() || o.is_zero()) return Polynomial(ring_);
  const auto& F = ring_->field();
  if (terms_.size() == 1) return o.mul_term(terms_[0].mono, terms_[0].coeff);
  if (o.terms_.size() == 1) return mul_term(o.terms_[0].mono, o.terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) prod.push_back({a.mono * b.mono, F.mul(a.coeff, b.coeff)});
  }
  return from_terms(ring_, std::move(prod));
}

Polynomial Polynomial::scaled(uint32_t c) const {
  const auto& F = ring_->field();
  c %= F.modulus();
  Polynomial r(ring_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = F.mul(t.coeff, c);
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, uint32_t c) const {
  const auto& F = ring_->field();
  c %= F.modulus();
  Polynomial r(ring_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  // multiplication by a monomial preserves the order of terms
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, F.mul(t.coeff, c)});
  return r;
}

Polynomial Polynomial::pow(uint64_t k) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (k != 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k != 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero() || leading_coeff() == 1) return *this;
  return scaled(ring_->field().inv(leading_coeff()));
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= ring_->nvars()) throw std::out_of_range("variable index out of range");
  const auto& F = ring_->field();
  std::vector<Term> out;
  for (const auto& t : terms_) {
    uint32_t e = t.mono[var];
    uint32_t c = F.mul(t.coeff, e % F.modulus());
    if (c == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    out.push_back({std::move(m), c});
  }
  return from_terms(ring_, std::move(out));
}

Polynomial Polynomial::substitute(std::size_t var, const Polynomial& value) const {
  require_same_ring(ring_, value.ring_);
  Polynomial result(ring_);
  // group by exponent of var to reuse powers
  std::vector<Polynomial> powers{constant(ring_, 1)};
  std::vector<Term> rest;
  for (const auto& t : terms_) {
    uint32_t e = t.mono[var];
    if (e == 0) {
      rest.push_back(t);
      continue;
    }
    while (powers.size() <= e) powers.push_back(powers.back() * value);
    Monomial m = t.mono;
    m.set(var, 0);
    result += powers[e].mul_term(m, t.coeff);
  }
  return result + from_terms(ring_, std::move(rest));
}

Polynomial Polynomial::map_to(const RingPtr& target, const std::vector<std::size_t>& var_map) const {
  if (target->characteristic() != ring_->characteristic()) throw RingError("characteristic mismatch");
  if (var_map.size() != ring_->nvars()) throw RingError("variable map has wrong length");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target->nvars());
    for (std::size_t i = 0; i < var_map.size(); ++i) {
      if (t.mono[i] != 0) m.set(var_map[i], m[var_map[i]] + t.mono[i]);
    }
    out.push_back({std::move(m), t.coeff});
  }
  return from_terms(target, std::move(out));
}

Polynomial Polynomial::reordered(const RingPtr& target) const {
  if (target->var_names() != ring_->var_names() ||
      target->characteristic() != ring_->characteristic()) {
    throw RingError("reordered: rings differ in more than the term order");
  }
  if (target->order() == ring_->order()) {
    Polynomial r(target);
    r.terms_ = terms_;
    return r;
  }
  return from_terms(target, terms_);
}

bool Polynomial::operator==(const Polynomial& o) const {
  require_same_ring(ring_, o.ring_);
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff != o.terms_[i].coeff || !(terms_[i].mono == o.terms_[i].mono)) return false;
  }
  return true;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    if (k > 0) out += '+';
    bool need_star = false;
    if (t.coeff != 1 || t.mono.is_one()) {
      out += std::to_string(t.coeff);
      need_star = true;
    }
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (need_star) out += '*';
      out += ring_->var_name(i);
      if (t.mono[i] != 1) out += '^' + std::to_string(t.mono[i]);
      need_star = true;
    }
  }
  return out;
}

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, Polynomial(ring_)) {}

PolyMatrix PolyMatrix::identity(const RingPtr& ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Polynomial::constant(ring, 1);
  return m;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  }
  return t;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& rows,
                                 const std::vector<std::size_t>& cols) const {
  PolyMatrix s(ring_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) s.at(i, j) = at(rows[i], cols[j]);
  }
  return s;
}

PolyMatrix PolyMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  std::vector<std::size_t> rows(rows_);
  for (std::size_t i = 0; i < rows_; ++i) rows[i] = i;
  return submatrix(rows, cols);
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  require_same_ring(ring_, o.ring_);
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  PolyMatrix r(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const auto& b = o.at(k, j);
        if (!b.is_zero()) r.at(i, j) += a * b;
      }
    }
  }
  return r;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: dimension mismatch");
  PolyMatrix r = *this;
  for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] += o.entries_[k];
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference: dimension mismatch");
  PolyMatrix r = *this;
  for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] -= o.entries_[k];
  return r;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

std::vector<Polynomial> PolyMatrix::column(std::size_t j) const {
  std::vector<Polynomial> c;
  c.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c.push_back(at(i, j));
  return c;
}

std::vector<Polynomial> PolyMatrix::row(std::size_t i) const {
  return {entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

PolyMatrix hstack(const PolyMatrix& a, const PolyMatrix& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row counts differ");
  PolyMatrix r(a.ring(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
  }
  return r;
}

PolyMatrix vstack(const PolyMatrix& a, const PolyMatrix& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column counts differ");
  PolyMatrix r(a.ring(), a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) r.at(a.rows() + i, j) = b.at(i, j);
  }
  return r;
}

}  // namespace fblow
