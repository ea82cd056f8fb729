#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ndg/field.hpp"

namespace ndg {

/// Dense matrix over a Field, row-major. Matrices act on column vectors;
/// mul(A, B) is "B then A" and needs A.cols == B.rows.
class Matrix {
public:
    Matrix() = default;
    Matrix(const Field& f, int rows, int cols)
        : rows_(rows), cols_(cols), f_(f),
          e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), f.zero()) {}

    static Matrix identity(const Field& f, int n) {
        Matrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return f_; }

    Scalar& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Scalar& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!f_.is_zero(x)) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (!f_.eq(e_[i], o.e_[i])) return false;
        return true;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const {
        Matrix t(f_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix col(int j) const {
        Matrix c(f_, rows_, 1);
        for (int i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, errc::shape_error, "add: shape mismatch");
        Matrix c = a;
        for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] = a.f_.add(c.e_[i], b.e_[i]);
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, errc::shape_error, "sub: shape mismatch");
        Matrix c = a;
        for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] = a.f_.sub(c.e_[i], b.e_[i]);
        return c;
    }

    Matrix scaled(const Scalar& s) const {
        Matrix c = *this;
        for (auto& x : c.e_) x = f_.mul(s, x);
        return c;
    }

    Matrix negated() const {
        Matrix c = *this;
        for (auto& x : c.e_) x = f_.neg(x);
        return c;
    }

private:
    int rows_ = 0, cols_ = 0;
    Field f_;
    std::vector<Scalar> e_;
};

inline Matrix mul(const Matrix& a, const Matrix& b) {
    require(a.field().same_as(b.field()), errc::field_mismatch, "mul: different fields");
    require(a.cols() == b.rows(), errc::shape_error, "mul: inner dimension mismatch");
    const Field& f = a.field();
    Matrix c(f, a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (f.is_zero(a.at(i, k))) continue;
            for (int j = 0; j < b.cols(); ++j)
                c.at(i, j) = f.add(c.at(i, j), f.mul(a.at(i, k), b.at(k, j)));
        }
    return c;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows(), errc::shape_error, "hstack: row mismatch");
    Matrix c(a.field(), a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
    }
    return c;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.cols(), errc::shape_error, "vstack: col mismatch");
    Matrix c(a.field(), a.rows() + b.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        for (int i = 0; i < a.rows(); ++i) c.at(i, j) = a.at(i, j);
        for (int i = 0; i < b.rows(); ++i) c.at(a.rows() + i, j) = b.at(i, j);
    }
    return c;
}

namespace detail {

/// In-place reduced row echelon form with first-nonzero pivoting; returns the
/// pivot columns in increasing order. Deterministic for reproducible bases.
inline std::vector<int> rref(Matrix& m) {
    const Field& f = m.field();
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pr = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!f.is_zero(m.at(i, col))) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(row, j));
        Scalar piv_inv = f.inv(m.at(row, col));
        for (int j = col; j < m.cols(); ++j) m.at(row, j) = f.mul(piv_inv, m.at(row, j));
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || f.is_zero(m.at(i, col))) continue;
            Scalar c = m.at(i, col);
            for (int j = col; j < m.cols(); ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(c, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace detail

inline int rank(const Matrix& a) {
    Matrix m = a;
    return static_cast<int>(detail::rref(m).size());
}

/// Basis of the kernel, one column per free variable (free variable set to 1,
/// others solved from the rref; column order follows the free columns).
inline Matrix kernel_basis(const Matrix& a) {
    Matrix m = a;
    auto pivots = detail::rref(m);
    const Field& f = a.field();
    std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    int nfree = a.cols() - static_cast<int>(pivots.size());
    Matrix k(f, a.cols(), nfree);
    int out = 0;
    for (int j = 0; j < a.cols(); ++j) {
        if (is_pivot[static_cast<std::size_t>(j)]) continue;
        k.at(j, out) = f.one();
        for (std::size_t r = 0; r < pivots.size(); ++r)
            k.at(pivots[r], out) = f.neg(m.at(static_cast<int>(r), j));
        ++out;
    }
    return k;
}

/// Columns of the original matrix at pivot positions: a basis of the image.
inline Matrix image_basis(const Matrix& a) {
    Matrix m = a;
    auto pivots = detail::rref(m);
    Matrix b(a.field(), a.rows(), static_cast<int>(pivots.size()));
    for (std::size_t c = 0; c < pivots.size(); ++c)
        for (int i = 0; i < a.rows(); ++i) b.at(i, static_cast<int>(c)) = a.at(i, pivots[c]);
    return b;
}

/// Solves A X = B exactly; returns std::nullopt when inconsistent.
/// Free variables are set to zero (pivot-minimal representative).
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows(), errc::shape_error, "solve: rhs row mismatch");
    require(a.field().same_as(b.field()), errc::field_mismatch, "solve: different fields");
    Matrix aug = hstack(a, b);
    auto pivots = detail::rref(aug);
    const Field& f = a.field();
    for (int p : pivots)
        if (p >= a.cols()) return std::nullopt;
    Matrix x(f, a.cols(), b.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (int j = 0; j < b.cols(); ++j)
            x.at(pivots[r], j) = aug.at(static_cast<int>(r), a.cols() + j);
    return x;
}

/// Inverse of a square matrix; throws on a singular input.
inline Matrix inverse(const Matrix& a) {
    require(a.rows() == a.cols(), errc::shape_error, "inverse: not square");
    Matrix aug = hstack(a, Matrix::identity(a.field(), a.rows()));
    auto pivots = detail::rref(aug);
    require(static_cast<int>(pivots.size()) == a.rows() &&
                (pivots.empty() || pivots.back() < a.cols()),
            errc::bad_arguments, "inverse: singular matrix");
    Matrix inv(a.field(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) inv.at(i, j) = aug.at(i, a.cols() + j);
    return inv;
}

/// dim span(Z) - dim span(B), after checking span(B) is contained in span(Z).
/// Both arguments are column collections in the same ambient space.
inline int subquotient_dim(const Matrix& z, const Matrix& b) {
    require(z.rows() == b.rows(), errc::shape_error, "subquotient: ambient mismatch");
    int rz = rank(z);
    int rb = rank(b);
    int rjoint = rank(hstack(z, b));
    require(rjoint == rz, errc::not_contained, "span(B) not contained in span(Z)");
    return rz - rb;
}

/// Columns of `ext` that extend span(base) to span(base|ext): a basis of the
/// quotient span(base ∪ ext) / span(base), deterministic.
inline Matrix quotient_basis(const Matrix& base, const Matrix& ext) {
    Matrix m = hstack(base, ext);
    auto pivots = detail::rref(m);
    std::vector<int> keep;
    for (int p : pivots)
        if (p >= base.cols()) keep.push_back(p - base.cols());
    Matrix out(base.field(), ext.rows(), static_cast<int>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c)
        for (int i = 0; i < ext.rows(); ++i) out.at(i, static_cast<int>(c)) = ext.at(i, keep[c]);
    return out;
}

} // namespace ndg
