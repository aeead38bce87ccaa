#pragma once

// Hot loops with an OpenMP implementation and a plain serial reference used
// by the tests and the benchmark.

#include <cstddef>
#include <functional>
#include <vector>

#include "fblow/polynomial.hpp"

namespace fblow {

using EntryReducer = std::function<Polynomial(const Polynomial&)>;

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k);

namespace kernels {

/// Naive cofactor expansion of every k x k minor.
std::vector<Polynomial> minors_serial(const PolyMatrix& m, std::size_t k);

/// Memoized Laplace expansion, parallel over row subsets.  If `reduce` is set
/// it is applied to every intermediate minor (e.g. a normal form modulo an
/// ideal), which keeps entries small.
std::vector<Polynomial> minors_parallel(const PolyMatrix& m, std::size_t k, const EntryReducer& reduce = {});

/// The k x k minors using a fixed set of k rows, column subsets in lex order.
std::vector<Polynomial> minors_for_rows(const PolyMatrix& m, const std::vector<std::size_t>& rows,
                                        const EntryReducer& reduce = {});

/// Determinant by memoized expansion.
Polynomial determinant(const PolyMatrix& m, const EntryReducer& reduce = {});

/// Blockwise Frobenius matrix U(A, e) with q = p^e.
PolyMatrix u_matrix_serial(const PolyMatrix& a, uint64_t q);
PolyMatrix u_matrix_parallel(const PolyMatrix& a, uint64_t q);

}  // namespace kernels
}  // namespace fblow
