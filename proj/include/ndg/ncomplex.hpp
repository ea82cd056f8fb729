#pragma once

#include <map>
#include <string>
#include <vector>

#include "ndg/graded.hpp"

namespace ndg {

/// Bounded N-complex: a graded space with a degree-+1 differential whose
/// every N-fold composite vanishes. Immutable once built; construct through
/// validate_ncomplex so the d^N = 0 invariant always holds.
class NComplex {
public:
    NComplex() = default;

    const GradedSpace& space() const { return space_; }
    const Field& field() const { return f_; }
    int N() const { return f_.N(); }
    int dim(int i) const { return dim_at(space_, i); }
    int min_deg() const { return min_degree(space_); }
    int max_deg() const { return max_degree(space_); }
    const std::map<int, Matrix>& diffs() const { return d_; }

    /// d^i : X^i -> X^{i+1} (a zero matrix of the right shape when absent).
    Matrix d(int i) const {
        auto it = d_.find(i);
        if (it != d_.end()) return it->second;
        return Matrix(f_, dim(i + 1), dim(i));
    }

    /// The composite d^{i+t-1} ... d^i; t = 0 gives the identity on X^i.
    Matrix d_power(int i, int t) const {
        Matrix m = Matrix::identity(f_, dim(i));
        for (int s = 0; s < t; ++s) m = mul(d(i + s), m);
        return m;
    }

    GradedMap d_map() const {
        GradedMap m(f_, 1, space_, space_);
        for (auto& [i, mat] : d_) m.set(i, mat);
        return m;
    }

    friend bool operator==(const NComplex& a, const NComplex& b) {
        if (a.space_ != b.space_) return false;
        for (auto& [i, dm] : a.space_) {
            (void)dm;
            if (a.d(i) != b.d(i)) return false;
        }
        return true;
    }

    friend NComplex validate_ncomplex(const Field& f, GradedSpace space, std::map<int, Matrix> d,
                                      const std::string& name);

private:
    GradedSpace space_;
    std::map<int, Matrix> d_;
    Field f_;
};

inline NComplex validate_ncomplex(const Field& f, GradedSpace space, std::map<int, Matrix> d,
                                  const std::string& name = "") {
    NComplex x;
    x.f_ = f;
    x.space_ = trim(std::move(space));
    std::string tag = name.empty() ? std::string() : (name + ": ");
    for (auto it = d.begin(); it != d.end();) {
        int i = it->first;
        const Matrix& m = it->second;
        require(m.rows() == dim_at(x.space_, i + 1) && m.cols() == dim_at(x.space_, i),
                errc::shape_error,
                tag + "differential at degree " + std::to_string(i) + " has shape " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
        it = (m.rows() == 0 || m.cols() == 0) ? d.erase(it) : std::next(it);
    }
    x.d_ = std::move(d);
    if (!x.space_.empty()) {
        int lo = x.min_deg() - f.N();
        int hi = x.max_deg();
        for (int i = lo; i <= hi; ++i) {
            if (!x.d_power(i, f.N()).is_zero())
                fail(errc::not_n_differential,
                     tag + "d^N is nonzero starting at degree " + std::to_string(i));
        }
    }
    return x;
}

inline NComplex zero_complex(const Field& f) { return validate_ncomplex(f, {}, {}); }

/// The base field viewed as a complex concentrated in one degree.
inline NComplex unit_complex(const Field& f, int degree = 0, int dim = 1) {
    GradedSpace s;
    s[degree] = dim;
    return validate_ncomplex(f, s, {});
}

/// Direct sum, first summand's coordinates first in every degree.
inline NComplex direct_sum(const NComplex& a, const NComplex& b) {
    GradedSpace s = direct_sum(a.space(), b.space());
    std::map<int, Matrix> d;
    for (auto& [i, dm] : s) {
        (void)dm;
        Matrix m = block_matrix(a.field(), {{a.d(i), Matrix(a.field(), a.dim(i + 1), b.dim(i))},
                                            {Matrix(a.field(), b.dim(i + 1), a.dim(i)), b.d(i)}});
        d[i] = std::move(m);
    }
    return validate_ncomplex(a.field(), s, std::move(d));
}

/// Cycle, boundary and homology data at one (degree, amplitude) slot:
/// Z^i_(r) = ker d^{(r)} from degree i, B^i_(N-r) = im d^{(N-r)} into degree i,
/// H = Z/B.
struct HomologySlice {
    int i = 0;
    int r = 1;
    int z_dim = 0, b_dim = 0, h_dim = 0;
    Matrix z_basis;  // columns spanning Z^i_(r)
    Matrix b_basis;  // columns spanning B^i_(N-r)
    Matrix reps;     // columns of z_basis completing b_basis to Z (quotient reps)
};

inline HomologySlice homology(const NComplex& x, int i, int r) {
    require(r >= 1 && r <= x.N() - 1, errc::out_of_range, "homology amplitude out of 1..N-1");
    HomologySlice h;
    h.i = i;
    h.r = r;
    h.z_basis = kernel_basis(x.d_power(i, r));
    h.b_basis = image_basis(x.d_power(i - (x.N() - r), x.N() - r));
    h.z_dim = h.z_basis.cols();
    h.b_dim = h.b_basis.cols();
    h.h_dim = subquotient_dim(h.z_basis, h.b_basis);
    h.reps = quotient_basis(h.b_basis, h.z_basis);
    require(h.reps.cols() == h.h_dim, errc::internal, "homology: quotient rep count mismatch");
    return h;
}

/// Coordinates of a cycle v in the quotient basis of the slice.
inline Matrix homology_coords(const HomologySlice& h, const Matrix& v) {
    const Field& f = v.field();
    if (h.h_dim == 0) return Matrix(f, 0, v.cols());
    Matrix basis = hstack(h.b_basis, h.reps);
    auto sol = solve(basis, v);
    require(sol.has_value(), errc::internal, "homology_coords: vector not a cycle of the slice");
    Matrix out(f, h.h_dim, v.cols());
    for (int c = 0; c < v.cols(); ++c)
        for (int k = 0; k < h.h_dim; ++k) out.at(k, c) = sol->at(h.b_dim + k, c);
    return out;
}

/// True iff all amplitude homologies vanish. The r = 1 check suffices; with
/// all_r every amplitude is verified independently.
inline bool is_acyclic(const NComplex& x, bool all_r = false) {
    if (x.space().empty()) return true;
    int lo = x.min_deg(), hi = x.max_deg();
    int rmax = all_r ? x.N() - 1 : 1;
    for (int r = 1; r <= rmax; ++r)
        for (int i = lo; i <= hi; ++i)
            if (homology(x, i, r).h_dim != 0) return false;
    return true;
}

/// Membership of F in Z^0_(1) Hom(X, Y): d_Y F = F d_X degreewise.
inline bool is_chain_map(const GradedMap& f, const NComplex& x, const NComplex& y) {
    if (f.degree() != 0 || f.src() != x.space() || f.dst() != y.space()) return false;
    int lo = x.space().empty() ? 0 : x.min_deg();
    int hi = x.space().empty() ? -1 : x.max_deg();
    for (int i = lo; i <= hi; ++i)
        if (mul(y.d(i), f.at(i)) != mul(f.at(i + 1), x.d(i))) return false;
    return true;
}

/// The hom-complex differential on a degree-r family: d_Y f - q^r f d_X.
inline GradedMap hom_differential(const GradedMap& f, const NComplex& x, const NComplex& y) {
    const Field& fld = f.field();
    int r = f.degree();
    GradedMap out(fld, r + 1, x.space(), y.space());
    for (auto& [i, dm] : x.space()) {
        (void)dm;
        Matrix m = mul(y.d(i + r), f.at(i)) - mul(f.at(i + 1), x.d(i)).scaled(fld.q_pow(r));
        out.set(i, m);
    }
    return out;
}

/// Matrix of the map induced on homology by a chain map F, in the quotient
/// bases of the two slices (same i, r on both sides for degree-0 F).
inline Matrix induced_on_homology(const GradedMap& f, const HomologySlice& hx,
                                  const HomologySlice& hy) {
    Matrix img = mul(f.at(hx.i), hx.reps);
    return homology_coords(hy, img);
}

} // namespace ndg
