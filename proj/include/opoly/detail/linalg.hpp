#ifndef OPOLY_DETAIL_LINALG_HPP
#define OPOLY_DETAIL_LINALG_HPP

#include <vector>

#include "opoly/real.hpp"

namespace opoly::detail {

// Dense square matrix in row-major order.
struct Matrix {
    int n = 0;
    std::vector<Real> a;

    explicit Matrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, Real(0)) {}
    Real& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const Real& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

// Determinant by fraction-free (Bareiss) elimination with row pivoting.
Real det_bareiss(Matrix m);

// Determinant by cofactor expansion along the first row; O(n!) and kept as an
// independent oracle for n <= 4-ish.
Real det_cofactor(const Matrix& m);

}  // namespace opoly::detail

#endif
