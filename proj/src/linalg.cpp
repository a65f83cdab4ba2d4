#include "charvar/linalg.hpp"
#include "charvar/util.hpp"

namespace charvar {

std::vector<int> rref(FpMat& m) {
    const std::uint32_t p = m.p;
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int sel = -1;
        for (int i = row; i < m.rows; ++i)
            if (m.at(i, col) != 0) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != row)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
        fp_t inv = fp_inv(m.at(row, col), p);
        for (int j = col; j < m.cols; ++j) m.at(row, j) = fp_mul(m.at(row, j), inv, p);
        for (int i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            fp_t f = m.at(i, col);
            for (int j = col; j < m.cols; ++j)
                m.at(i, j) = fp_sub(m.at(i, j), fp_mul(f, m.at(row, j), p), p);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int mat_rank(FpMat m) {
    return int(rref(m).size());
}

std::vector<std::vector<fp_t>> kernel_basis(const FpMat& m) {
    FpMat r = m;
    std::vector<int> pivots = rref(r);
    std::vector<int> pivot_of_col(size_t(m.cols), -1);
    for (size_t i = 0; i < pivots.size(); ++i) pivot_of_col[size_t(pivots[i])] = int(i);

    std::vector<std::vector<fp_t>> out;
    for (int j = 0; j < m.cols; ++j) {
        if (pivot_of_col[size_t(j)] >= 0) continue;
        std::vector<fp_t> v(size_t(m.cols), 0);
        v[size_t(j)] = 1;
        for (int c = 0; c < m.cols; ++c) {
            int pr = pivot_of_col[size_t(c)];
            if (pr >= 0) v[size_t(c)] = fp_neg(r.at(pr, j), m.p);
        }
        out.push_back(std::move(v));
    }
    return out;
}

bool solve(const FpMat& m, const std::vector<fp_t>& b, std::vector<fp_t>& x) {
    if (int(b.size()) != m.rows) throw PreconditionError("solve: size mismatch");
    FpMat aug(m.rows, m.cols + 1, m.p);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[size_t(i)];
    }
    std::vector<int> pivots = rref(aug);
    for (int c : pivots)
        if (c == m.cols) return false; /* pivot in the constant column */
    x.assign(size_t(m.cols), 0);
    for (size_t i = 0; i < pivots.size(); ++i)
        x[size_t(pivots[i])] = aug.at(int(i), m.cols);
    return true;
}

bool in_row_space(const FpMat& m, const std::vector<fp_t>& v) {
    if (int(v.size()) != m.cols) throw PreconditionError("in_row_space: size mismatch");
    FpMat r = m;
    std::vector<int> pivots = rref(r);
    std::vector<fp_t> w = v;
    for (size_t i = 0; i < pivots.size(); ++i) {
        fp_t f = w[size_t(pivots[i])];
        if (f == 0) continue;
        for (int j = 0; j < m.cols; ++j)
            w[size_t(j)] = fp_sub(w[size_t(j)], fp_mul(f, r.at(int(i), j), m.p), m.p);
    }
    for (fp_t c : w)
        if (c != 0) return false;
    return true;
}

std::vector<std::vector<fp_t>> row_space_intersection(const FpMat& a, const FpMat& b) {
    if (a.cols != b.cols || a.p != b.p)
        throw PreconditionError("row_space_intersection: shape mismatch");
    /* kernel of [A^T | -B^T] pairs coefficient vectors producing equal rows */
    FpMat stk(a.cols, a.rows + b.rows, a.p);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) stk.at(j, i) = a.at(i, j);
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j)
            stk.at(j, a.rows + i) = fp_neg(b.at(i, j), b.p);
    auto ker = kernel_basis(stk);
    std::vector<std::vector<fp_t>> out;
    for (const auto& k : ker) {
        std::vector<fp_t> v(size_t(a.cols), 0);
        bool nonzero = false;
        for (int j = 0; j < a.cols; ++j) {
            fp_t s = 0;
            for (int i = 0; i < a.rows; ++i)
                s = fp_add(s, fp_mul(k[size_t(i)], a.at(i, j), a.p), a.p);
            v[size_t(j)] = s;
            nonzero = nonzero || s != 0;
        }
        if (nonzero) out.push_back(std::move(v));
    }
    return out;
}

} // namespace charvar
