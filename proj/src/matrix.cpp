#include "qha/matrix.hpp"

namespace qha {

RrefResult rref(const Matrix& m) {
    const Field& f = m.field();
    Matrix r = m;
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < r.cols() && lead < r.rows(); ++col) {
        std::size_t piv = lead;
        while (piv < r.rows() && f.is_zero(r.at(piv, col))) ++piv;
        if (piv == r.rows()) continue;
        if (piv != lead)
            for (std::size_t c = 0; c < r.cols(); ++c) std::swap(r.at(piv, c), r.at(lead, c));
        Scalar s = f.inv(r.at(lead, col));
        for (std::size_t c = col; c < r.cols(); ++c) r.at(lead, c) = f.mul(r.at(lead, c), s);
        for (std::size_t row = 0; row < r.rows(); ++row) {
            if (row == lead || f.is_zero(r.at(row, col))) continue;
            Scalar q = r.at(row, col);
            for (std::size_t c = col; c < r.cols(); ++c)
                r.at(row, c) = f.sub(r.at(row, c), f.mul(q, r.at(lead, c)));
        }
        pivots.push_back(col);
        ++lead;
    }
    return RrefResult{std::move(r), std::move(pivots), lead};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel_basis(const Matrix& m) {
    const Field& f = m.field();
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix out(f, free_cols.size(), m.cols());
    for (std::size_t i = 0; i < free_cols.size(); ++i) {
        std::size_t fc = free_cols[i];
        out.at(i, fc) = f.one();
        for (std::size_t pr = 0; pr < rr.pivots.size(); ++pr)
            out.at(i, rr.pivots[pr]) = f.neg(rr.reduced.at(pr, fc));
    }
    return out;
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs) {
    if (rhs.rows() != m.rows()) throw error("solve: rhs row count mismatch");
    const Field& f = m.field();
    RrefResult rr = rref(m.hstack(rhs));
    // any pivot inside the rhs block means inconsistency
    for (auto p : rr.pivots)
        if (p >= m.cols()) return std::nullopt;
    Matrix x(f, m.cols(), rhs.cols());
    for (std::size_t pr = 0; pr < rr.pivots.size(); ++pr)
        for (std::size_t c = 0; c < rhs.cols(); ++c)
            x.at(rr.pivots[pr], c) = rr.reduced.at(pr, m.cols() + c);
    return x;
}

Matrix left_kernel_basis(const Matrix& m) { return kernel_basis(m.transposed()); }

std::optional<Matrix> solve_left(const Matrix& m, const Matrix& rhs) {
    auto xt = solve(m.transposed(), rhs.transposed());
    if (!xt) return std::nullopt;
    return xt->transposed();
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve(m, Matrix::identity(m.field(), m.rows()));
    if (!x) return std::nullopt;
    if (!(m * *x == Matrix::identity(m.field(), m.rows()))) return std::nullopt;
    return x;
}

Matrix row_space_basis(const Matrix& m) {
    RrefResult rr = rref(m);
    return rr.reduced.submatrix(0, 0, rr.rank, m.cols());
}

bool row_space_contains(const Matrix& space, const Matrix& v) {
    if (v.is_zero()) return true;
    return rank(space) == rank(space.vstack(v));
}

std::optional<Matrix> coordinates_in_rows(const Matrix& basis, const Matrix& v) {
    // x basis = v
    return solve_left(basis, v);
}

}  // namespace qha
