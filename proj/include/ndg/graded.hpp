#pragma once

#include <map>
#include <vector>

#include "ndg/matrix.hpp"

namespace ndg {

/// Finitely supported degree -> dimension table. Degrees absent from the map
/// have dimension zero.
using GradedSpace = std::map<int, int>;

inline int dim_at(const GradedSpace& s, int i) {
    auto it = s.find(i);
    return it == s.end() ? 0 : it->second;
}

inline GradedSpace trim(GradedSpace s) {
    for (auto it = s.begin(); it != s.end();)
        it = (it->second == 0) ? s.erase(it) : std::next(it);
    return s;
}

inline int min_degree(const GradedSpace& s) { return s.empty() ? 0 : s.begin()->first; }
inline int max_degree(const GradedSpace& s) { return s.empty() ? 0 : s.rbegin()->first; }
inline int total_dim(const GradedSpace& s) {
    int t = 0;
    for (auto& [deg, dm] : s) t += dm;
    return t;
}

inline GradedSpace direct_sum(const GradedSpace& a, const GradedSpace& b) {
    GradedSpace s = a;
    for (auto& [deg, dm] : b) s[deg] += dm;
    return trim(s);
}

inline GradedSpace shifted(const GradedSpace& a, int n) {
    // degree m of the result is degree m+n of the input
    GradedSpace s;
    for (auto& [deg, dm] : a) s[deg - n] = dm;
    return s;
}

/// A homogeneous degree-r family of matrices between two graded spaces.
/// Component i maps src^i to dst^{i+r}; absent components are zero maps.
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(const Field& f, int degree, GradedSpace src, GradedSpace dst)
        : f_(f), degree_(degree), src_(trim(std::move(src))), dst_(trim(std::move(dst))) {}

    int degree() const { return degree_; }
    const GradedSpace& src() const { return src_; }
    const GradedSpace& dst() const { return dst_; }
    const Field& field() const { return f_; }
    const std::map<int, Matrix>& components() const { return comp_; }

    Matrix at(int i) const {
        auto it = comp_.find(i);
        if (it != comp_.end()) return it->second;
        return Matrix(f_, dim_at(dst_, i + degree_), dim_at(src_, i));
    }

    void set(int i, Matrix m) {
        require(m.rows() == dim_at(dst_, i + degree_) && m.cols() == dim_at(src_, i),
                errc::shape_error, "GradedMap::set: component shape mismatch at degree " +
                                       std::to_string(i));
        if (m.rows() == 0 || m.cols() == 0) return;
        comp_[i] = std::move(m);
    }

    bool is_zero() const {
        for (auto& [i, m] : comp_)
            if (!m.is_zero()) return false;
        return true;
    }

    friend bool operator==(const GradedMap& a, const GradedMap& b) {
        if (a.degree_ != b.degree_ || a.src_ != b.src_ || a.dst_ != b.dst_) return false;
        for (auto& [i, m] : a.comp_)
            if (m != b.at(i)) return false;
        for (auto& [i, m] : b.comp_)
            if (m != a.at(i)) return false;
        return true;
    }

    friend GradedMap operator+(const GradedMap& a, const GradedMap& b) {
        require(a.degree_ == b.degree_ && a.src_ == b.src_ && a.dst_ == b.dst_, errc::shape_error,
                "GradedMap add: incompatible maps");
        GradedMap c(a.f_, a.degree_, a.src_, a.dst_);
        for (auto& [i, dm] : a.src_) {
            (void)dm;
            c.set(i, a.at(i) + b.at(i));
        }
        return c;
    }

    GradedMap scaled(const Scalar& s) const {
        GradedMap c(f_, degree_, src_, dst_);
        for (auto& [i, m] : comp_) c.set(i, m.scaled(s));
        return c;
    }

    GradedMap negated() const {
        GradedMap c(f_, degree_, src_, dst_);
        for (auto& [i, m] : comp_) c.set(i, m.negated());
        return c;
    }

private:
    Field f_;
    int degree_ = 0;
    GradedSpace src_, dst_;
    std::map<int, Matrix> comp_;
};

/// Composite "g after f"; degrees add.
inline GradedMap compose(const GradedMap& g, const GradedMap& f) {
    require(g.src() == f.dst(), errc::shape_error, "compose: middle space mismatch");
    GradedMap c(f.field(), f.degree() + g.degree(), f.src(), g.dst());
    for (auto& [i, dm] : f.src()) {
        (void)dm;
        c.set(i, mul(g.at(i + f.degree()), f.at(i)));
    }
    return c;
}

inline GradedMap identity_map(const Field& f, const GradedSpace& s) {
    GradedMap id(f, 0, s, s);
    for (auto& [i, dm] : s) id.set(i, Matrix::identity(f, dm));
    return id;
}

inline GradedMap zero_map(const Field& f, const GradedSpace& src, const GradedSpace& dst,
                          int degree = 0) {
    return GradedMap(f, degree, src, dst);
}

/// Assembles a matrix from a grid of blocks; blocks[i][j] must have consistent
/// row heights along each block row and column widths along each block column.
inline Matrix block_matrix(const Field& f, const std::vector<std::vector<Matrix>>& blocks) {
    if (blocks.empty()) return Matrix(f, 0, 0);
    std::vector<int> rh(blocks.size(), 0), cw(blocks[0].size(), 0);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = 0; j < blocks[i].size(); ++j) {
            rh[i] = std::max(rh[i], blocks[i][j].rows());
            cw[j] = std::max(cw[j], blocks[i][j].cols());
        }
    int rows = 0, cols = 0;
    for (int h : rh) rows += h;
    for (int w : cw) cols += w;
    Matrix m(f, rows, cols);
    int roff = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        int coff = 0;
        for (std::size_t j = 0; j < blocks[i].size(); ++j) {
            const Matrix& b = blocks[i][j];
            require(b.rows() == rh[i] || b.rows() == 0, errc::shape_error, "block row mismatch");
            require(b.cols() == cw[j] || b.cols() == 0, errc::shape_error, "block col mismatch");
            for (int r = 0; r < b.rows(); ++r)
                for (int c = 0; c < b.cols(); ++c) m.at(roff + r, coff + c) = b.at(r, c);
            coff += cw[j];
        }
        roff += rh[i];
    }
    return m;
}

} // namespace ndg
