/* Dense exact matrices with rref / kernel / solve, plus the echelon-span
 * helpers the module arithmetic is built on. All algorithms are
 * deterministic; entries stay in canonical form. */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qha/field.hpp"

namespace qha {

class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(Field f, std::size_t rows, std::size_t cols)
        : fld_(f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

    static Matrix identity(Field f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    const Field& field() const { return fld_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x.num != 0) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    Matrix transposed() const {
        Matrix t(fld_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw error("matrix product dimension mismatch");
        Matrix out(fld_, rows_, o.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Scalar& x = at(r, k);
                if (fld_.is_zero(x)) continue;
                for (std::size_t c = 0; c < o.cols_; ++c)
                    out.at(r, c) = fld_.add(out.at(r, c), fld_.mul(x, o.at(k, c)));
            }
        return out;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw error("matrix sum dimension mismatch");
        Matrix out = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = fld_.add(out.a_[i], o.a_[i]);
        return out;
    }

    Matrix operator-(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw error("matrix difference dimension mismatch");
        Matrix out = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = fld_.sub(out.a_[i], o.a_[i]);
        return out;
    }

    Matrix scaled(const Scalar& s) const {
        Matrix out = *this;
        for (auto& x : out.a_) x = fld_.mul(x, s);
        return out;
    }

    Matrix negated() const {
        Matrix out = *this;
        for (auto& x : out.a_) x = fld_.neg(x);
        return out;
    }

    Matrix row(std::size_t r) const {
        Matrix out(fld_, 1, cols_);
        for (std::size_t c = 0; c < cols_; ++c) out.at(0, c) = at(r, c);
        return out;
    }

    void set_row(std::size_t r, const Matrix& v) {
        for (std::size_t c = 0; c < cols_; ++c) at(r, c) = v.at(0, c);
    }

    /* Stacks o below this matrix. */
    Matrix vstack(const Matrix& o) const {
        if (rows_ == 0 && cols_ == 0) return o;
        if (o.rows_ == 0 && o.cols_ == 0) return *this;
        if (cols_ != o.cols_) throw error("vstack width mismatch");
        Matrix out(fld_, rows_ + o.rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
        for (std::size_t r = 0; r < o.rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out.at(rows_ + r, c) = o.at(r, c);
        return out;
    }

    Matrix hstack(const Matrix& o) const {
        if (rows_ != o.rows_) throw error("hstack height mismatch");
        Matrix out(fld_, rows_, cols_ + o.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
            for (std::size_t c = 0; c < o.cols_; ++c) out.at(r, cols_ + c) = o.at(r, c);
        }
        return out;
    }

    Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix out(fld_, nr, nc);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c) out.at(r, c) = at(r0 + r, c0 + c);
        return out;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                if (c) s += ' ';
                s += fld_.to_string(at(r, c));
            }
            s += '\n';
        }
        return s;
    }

private:
    Field fld_;
    std::size_t rows_, cols_;
    std::vector<Scalar> a_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

/* Unique reduced row echelon form. */
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/* Rows form a basis of the right null space {x : m x = 0}; row count is
 * cols - rank. */
Matrix kernel_basis(const Matrix& m);

/* Solves m x = rhs exactly (rhs given column-stacked); nullopt when
 * inconsistent. */
std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs);

/* Left-sided variants used by the row-vector module convention. */
Matrix left_kernel_basis(const Matrix& m);            // rows x with x m = 0
std::optional<Matrix> solve_left(const Matrix& m, const Matrix& rhs);  // x m = rhs

std::optional<Matrix> inverse(const Matrix& m);

/* Echelonized basis of the row span (pivoted, deduplicated). */
Matrix row_space_basis(const Matrix& m);

/* Does the row span of space contain v (a 1 x n row)? */
bool row_space_contains(const Matrix& space, const Matrix& v);

/* Coordinates of row v in the given (independent) row basis, if any. */
std::optional<Matrix> coordinates_in_rows(const Matrix& basis, const Matrix& v);

}  // namespace qha
