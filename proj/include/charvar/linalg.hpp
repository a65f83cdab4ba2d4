#pragma once

#include "charvar/field.hpp"

#include <vector>

namespace charvar {

/* Dense row-major matrix over F_p. Row/column counts stay small (truncation
   windows), so plain Gaussian elimination is enough. */
struct FpMat {
    int rows = 0, cols = 0;
    std::uint32_t p = 2;
    std::vector<fp_t> a;

    FpMat() = default;
    FpMat(int r, int c, std::uint32_t p_) : rows(r), cols(c), p(p_) {
        a.assign(size_t(r) * size_t(c), 0);
    }
    fp_t& at(int i, int j) { return a[size_t(i) * size_t(cols) + size_t(j)]; }
    fp_t at(int i, int j) const { return a[size_t(i) * size_t(cols) + size_t(j)]; }
};

/* in-place reduced row echelon form; returns the pivot column of each pivot row */
std::vector<int> rref(FpMat& m);

int mat_rank(FpMat m);

/* basis of the right kernel {x : m x = 0}, one vector per column */
std::vector<std::vector<fp_t>> kernel_basis(const FpMat& m);

/* some x with m x = b, empty when inconsistent */
bool solve(const FpMat& m, const std::vector<fp_t>& b, std::vector<fp_t>& x);

/* v in the row space of m */
bool in_row_space(const FpMat& m, const std::vector<fp_t>& v);

/* basis of rowspace(a) intersect rowspace(b) */
std::vector<std::vector<fp_t>> row_space_intersection(const FpMat& a, const FpMat& b);

} // namespace charvar
