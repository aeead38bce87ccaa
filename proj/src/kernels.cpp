#include "fblow/kernels.hpp"

#include <omp.h>

#include <exception>
#include <stdexcept>
#include <unordered_map>

namespace fblow {

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

namespace kernels {

namespace {

Polynomial laplace_naive(const PolyMatrix& m, const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols) {
  const auto& ring = m.ring();
  if (rows.empty()) return Polynomial::constant(ring, 1);
  if (rows.size() == 1) return m.at(rows[0], cols[0]);
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  Polynomial det(ring);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto& a = m.at(rows[0], cols[j]);
    if (a.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    sub_cols.reserve(cols.size() - 1);
    for (std::size_t l = 0; l < cols.size(); ++l) {
      if (l != j) sub_cols.push_back(cols[l]);
    }
    Polynomial term = a * laplace_naive(m, sub_rows, sub_cols);
    if (j % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

// Minors over the trailing rows of a fixed row subset, memoized by column mask.
class RowMemo {
 public:
  RowMemo(const PolyMatrix& m, const std::vector<std::size_t>& rows, const EntryReducer& reduce)
      : m_(m), rows_(rows), reduce_(reduce), memo_(rows.size() + 1) {}

  // Determinant of the last `level` rows against the columns in `mask`.
  const Polynomial& det(std::size_t level, uint64_t mask) {
    auto& table = memo_[level];
    if (auto it = table.find(mask); it != table.end()) return it->second;
    Polynomial value = compute(level, mask);
    return table.emplace(mask, std::move(value)).first->second;
  }

 private:
  Polynomial compute(std::size_t level, uint64_t mask) {
    const auto& ring = m_.ring();
    if (level == 0) return Polynomial::constant(ring, 1);
    const std::size_t row = rows_[rows_.size() - level];
    Polynomial acc(ring);
    std::size_t idx = 0;
    for (uint64_t rest = mask; rest != 0; rest &= rest - 1, ++idx) {
      const auto col = static_cast<std::size_t>(__builtin_ctzll(rest));
      const auto& a = m_.at(row, col);
      if (a.is_zero()) continue;
      const Polynomial& sub = det(level - 1, mask & ~(uint64_t{1} << col));
      if (sub.is_zero()) continue;
      Polynomial term = a * sub;
      if (idx % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    if (reduce_) acc = reduce_(acc);
    return acc;
  }

  const PolyMatrix& m_;
  const std::vector<std::size_t>& rows_;
  const EntryReducer& reduce_;
  std::vector<std::unordered_map<uint64_t, Polynomial>> memo_;
};

uint64_t mask_of(const std::vector<std::size_t>& cols) {
  uint64_t mask = 0;
  for (auto c : cols) mask |= uint64_t{1} << c;
  return mask;
}

void check_k(const PolyMatrix& m, std::size_t k) {
  if (k > std::min(m.rows(), m.cols())) throw std::out_of_range("minor size exceeds matrix dimensions");
}

}  // namespace

std::vector<Polynomial> minors_serial(const PolyMatrix& m, std::size_t k) {
  check_k(m, k);
  auto row_sets = k_subsets(m.rows(), k);
  auto col_sets = k_subsets(m.cols(), k);
  std::vector<Polynomial> out;
  out.reserve(row_sets.size() * col_sets.size());
  for (const auto& r : row_sets) {
    for (const auto& c : col_sets) out.push_back(laplace_naive(m, r, c));
  }
  return out;
}

std::vector<Polynomial> minors_for_rows(const PolyMatrix& m, const std::vector<std::size_t>& rows,
                                        const EntryReducer& reduce) {
  if (m.cols() > 64) {
    // the memo is keyed by a 64-bit column mask; expand along columns instead
    PolyMatrix t = m.transpose();
    auto col_sets = k_subsets(t.rows(), rows.size());
    std::vector<Polynomial> out;
    out.reserve(col_sets.size());
    for (const auto& cs : col_sets) {
      PolyMatrix sub = t.submatrix(cs, rows);
      std::vector<std::size_t> all(rows.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      RowMemo memo(sub, all, reduce);
      out.push_back(memo.det(all.size(), (all.empty() ? 0 : ((uint64_t{1} << all.size()) - 1))));
    }
    return out;
  }
  RowMemo memo(m, rows, reduce);
  auto col_sets = k_subsets(m.cols(), rows.size());
  std::vector<Polynomial> out;
  out.reserve(col_sets.size());
  for (const auto& cs : col_sets) out.push_back(memo.det(rows.size(), mask_of(cs)));
  return out;
}

std::vector<Polynomial> minors_parallel(const PolyMatrix& m, std::size_t k, const EntryReducer& reduce) {
  check_k(m, k);
  if (m.cols() > 64 && m.rows() <= 64) {
    // minors of the transpose are the same set; reorder to rows-then-columns
    PolyMatrix t = m.transpose();
    auto tm = minors_parallel(t, k, reduce);
    const std::size_t nr = k_subsets(m.rows(), k).size();
    const std::size_t nc = k_subsets(m.cols(), k).size();
    std::vector<Polynomial> out(nr * nc, Polynomial(m.ring()));
    for (std::size_t a = 0; a < nc; ++a) {
      for (std::size_t b = 0; b < nr; ++b) out[b * nc + a] = tm[a * nr + b];
    }
    return out;
  }
  if (m.cols() > 64) throw std::length_error("minors: more than 64 rows and columns");
  auto row_sets = k_subsets(m.rows(), k);
  const std::size_t nc = k_subsets(m.cols(), k).size();
  std::vector<Polynomial> out(row_sets.size() * nc, Polynomial(m.ring()));
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t r = 0; r < row_sets.size(); ++r) {
    try {
      auto part = minors_for_rows(m, row_sets[r], reduce);
      for (std::size_t c = 0; c < nc; ++c) out[r * nc + c] = std::move(part[c]);
    } catch (...) {
#pragma omp critical(fblow_minors_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

Polynomial determinant(const PolyMatrix& m, const EntryReducer& reduce) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  std::vector<std::size_t> rows(m.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return minors_for_rows(m, rows, reduce).front();
}

namespace {

struct UShape {
  std::size_t n;
  uint64_t q;
  std::size_t size;  // q^n
};

UShape u_shape(const PolyMatrix& a, uint64_t q) {
  if (q == 0) throw std::invalid_argument("u_matrix: q must be positive");
  UShape s{a.ring()->nvars(), q, 1};
  for (std::size_t i = 0; i < s.n; ++i) {
    if (s.size > (std::size_t{1} << 20) / q) throw std::length_error("u_matrix: q^n too large");
    s.size *= q;
  }
  return s;
}

// Column `col` of U(f): one contribution per term of f.
void u_column(const Polynomial& f, const UShape& s, std::size_t col, std::vector<std::vector<Term>>& rows) {
  std::vector<uint64_t> b(s.n);
  std::size_t rest = col;
  for (std::size_t k = s.n; k-- > 0;) {
    b[k] = rest % s.q;
    rest /= s.q;
  }
  for (const auto& t : f.terms()) {
    Monomial quot(s.n);
    std::size_t row = 0;
    for (std::size_t k = 0; k < s.n; ++k) {
      uint64_t sum = t.mono[k] + b[k];
      quot.set(k, static_cast<Monomial::Exponent>(sum / s.q));
      row = row * s.q + sum % s.q;
    }
    rows[row].push_back({std::move(quot), t.coeff});
  }
}

void u_block(const PolyMatrix& a, const UShape& s, std::size_t i, std::size_t j, std::size_t col, PolyMatrix& out) {
  std::vector<std::vector<Term>> rows(s.size);
  u_column(a.at(i, j), s, col, rows);
  for (std::size_t r = 0; r < s.size; ++r) {
    if (!rows[r].empty()) out.at(i * s.size + r, j * s.size + col) = Polynomial::from_terms(a.ring(), std::move(rows[r]));
  }
}

}  // namespace

PolyMatrix u_matrix_serial(const PolyMatrix& a, uint64_t q) {
  UShape s = u_shape(a, q);
  PolyMatrix out(a.ring(), a.rows() * s.size, a.cols() * s.size);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t c = 0; c < s.size; ++c) u_block(a, s, i, j, c, out);
    }
  }
  return out;
}

PolyMatrix u_matrix_parallel(const PolyMatrix& a, uint64_t q) {
  UShape s = u_shape(a, q);
  PolyMatrix out(a.ring(), a.rows() * s.size, a.cols() * s.size);
  const std::size_t total = a.rows() * a.cols() * s.size;
  // each task writes one column of one block, so tasks never share an entry
#pragma omp parallel for schedule(static)
  for (std::size_t t = 0; t < total; ++t) {
    const std::size_t c = t % s.size;
    const std::size_t ij = t / s.size;
    u_block(a, s, ij / a.cols(), ij % a.cols(), c, out);
  }
  return out;
}

}  // namespace kernels
}  // namespace fblow
