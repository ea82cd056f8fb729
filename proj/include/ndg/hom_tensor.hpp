#pragma once

#include <vector>

#include "ndg/ncomplex.hpp"

namespace ndg {

/// Basis layout of one degree of Hom^{.q}(U, V) or of (U (x) V). Basis
/// elements are ordered lexicographically by (source degree l, outer index,
/// inner index); for hom the outer index is the target index, for tensor the
/// outer index is the U factor index.
struct PairedLayout {
    struct Seg {
        int l;        // degree in U
        int outer;    // hom: dim V^{l+i};  tensor: dim U^l
        int inner;    // hom: dim U^l;      tensor: dim V^{i-l}
        int offset;
    };
    std::vector<Seg> segs;
    int total = 0;

    int offset_of(int l) const {
        for (const auto& s : segs)
            if (s.l == l) return s.offset;
        return -1;
    }
    const Seg* seg_of(int l) const {
        for (const auto& s : segs)
            if (s.l == l) return &s;
        return nullptr;
    }
};

inline PairedLayout hom_layout(const NComplex& u, const NComplex& v, int i) {
    PairedLayout lay;
    for (auto& [l, du] : u.space()) {
        int dv = v.dim(l + i);
        if (du == 0 || dv == 0) continue;
        lay.segs.push_back({l, dv, du, lay.total});
        lay.total += du * dv;
    }
    return lay;
}

inline PairedLayout tensor_layout(const NComplex& u, const NComplex& v, int i) {
    PairedLayout lay;
    for (auto& [l, du] : u.space()) {
        int dv = v.dim(i - l);
        if (du == 0 || dv == 0) continue;
        lay.segs.push_back({l, du, dv, lay.total});
        lay.total += du * dv;
    }
    return lay;
}

/// Hom^{.q}(U, V): degree i holds all degree-i families U^l -> V^{l+i}, with
/// differential f |-> d_V f - q^i f d_U.
inline NComplex hom_complex(const NComplex& u, const NComplex& v) {
    const Field& f = u.field();
    require(f.same_as(v.field()), errc::field_mismatch, "hom_complex: different fields");
    int lo = v.min_deg() - u.max_deg(), hi = v.max_deg() - u.min_deg();
    if (u.space().empty() || v.space().empty()) return zero_complex(f);
    GradedSpace space;
    std::map<int, PairedLayout> lays;
    for (int i = lo; i <= hi; ++i) {
        PairedLayout lay = hom_layout(u, v, i);
        if (lay.total > 0) space[i] = lay.total;
        lays[i] = std::move(lay);
    }
    lays[hi + 1] = hom_layout(u, v, hi + 1);
    std::map<int, Matrix> d;
    for (int i = lo; i <= hi; ++i) {
        const PairedLayout& src = lays[i];
        const PairedLayout& dst = lays[i + 1];
        if (src.total == 0 || dst.total == 0) continue;
        Matrix m(f, dst.total, src.total);
        Scalar qi = f.q_pow(i);
        for (const auto& seg : src.segs) {
            int l = seg.l;
            Matrix dv = v.d(l + i);   // V^{l+i} -> V^{l+i+1}
            Matrix du = u.d(l - 1);   // U^{l-1} -> U^l
            const PairedLayout::Seg* post = dst.seg_of(l);
            if (post) {
                // d_V compose f: (l,t,s) -> (l,t',s) with coeff dv[t',t]
                for (int t = 0; t < seg.outer; ++t)
                    for (int s = 0; s < seg.inner; ++s)
                        for (int t2 = 0; t2 < post->outer; ++t2) {
                            const Scalar& c = dv.at(t2, t);
                            if (f.is_zero(c)) continue;
                            m.at(post->offset + t2 * post->inner + s,
                                 seg.offset + t * seg.inner + s) = c;
                        }
            }
            const PairedLayout::Seg* pre = dst.seg_of(l - 1);
            if (pre) {
                // -q^i f compose d_U: (l,t,s) -> (l-1,t,s') with coeff du[s,s']
                for (int t = 0; t < seg.outer; ++t)
                    for (int s = 0; s < seg.inner; ++s)
                        for (int s2 = 0; s2 < pre->inner; ++s2) {
                            const Scalar& c = du.at(s, s2);
                            if (f.is_zero(c)) continue;
                            int row = pre->offset + t * pre->inner + s2;
                            int col = seg.offset + t * seg.inner + s;
                            m.at(row, col) = f.sub(m.at(row, col), f.mul(qi, c));
                        }
            }
        }
        d[i] = std::move(m);
    }
    return validate_ncomplex(f, std::move(space), std::move(d));
}

/// Coordinates of a concrete degree-r family in the hom_complex basis.
inline Matrix family_to_coords(const NComplex& u, const NComplex& v, const GradedMap& fam) {
    const Field& f = u.field();
    PairedLayout lay = hom_layout(u, v, fam.degree());
    Matrix col(f, lay.total, 1);
    for (const auto& seg : lay.segs) {
        Matrix m = fam.at(seg.l);
        for (int t = 0; t < seg.outer; ++t)
            for (int s = 0; s < seg.inner; ++s)
                col.at(seg.offset + t * seg.inner + s, 0) = m.at(t, s);
    }
    return col;
}

inline GradedMap coords_to_family(const NComplex& u, const NComplex& v, int degree,
                                  const Matrix& col) {
    const Field& f = u.field();
    PairedLayout lay = hom_layout(u, v, degree);
    require(col.rows() == lay.total && col.cols() == 1, errc::shape_error,
            "coords_to_family: wrong coordinate length");
    GradedMap fam(f, degree, u.space(), v.space());
    for (const auto& seg : lay.segs) {
        Matrix m(f, seg.outer, seg.inner);
        for (int t = 0; t < seg.outer; ++t)
            for (int s = 0; s < seg.inner; ++s)
                m.at(t, s) = col.at(seg.offset + t * seg.inner + s, 0);
        fam.set(seg.l, std::move(m));
    }
    return fam;
}

/// U (x)^{.q} V with d(u (x) v) = d(u) (x) v + q^{deg u} u (x) d(v).
/// With inverse_root the twist uses q^{-deg u} (the braiding target).
inline NComplex tensor_complex(const NComplex& u, const NComplex& v, bool inverse_root = false) {
    const Field& f = u.field();
    require(f.same_as(v.field()), errc::field_mismatch, "tensor_complex: different fields");
    if (u.space().empty() || v.space().empty()) return zero_complex(f);
    int lo = u.min_deg() + v.min_deg(), hi = u.max_deg() + v.max_deg();
    GradedSpace space;
    std::map<int, PairedLayout> lays;
    for (int i = lo; i <= hi + 1; ++i) {
        PairedLayout lay = tensor_layout(u, v, i);
        if (lay.total > 0 && i <= hi) space[i] = lay.total;
        lays[i] = std::move(lay);
    }
    std::map<int, Matrix> d;
    for (int i = lo; i <= hi; ++i) {
        const PairedLayout& src = lays[i];
        const PairedLayout& dst = lays[i + 1];
        if (src.total == 0 || dst.total == 0) continue;
        Matrix m(f, dst.total, src.total);
        for (const auto& seg : src.segs) {
            int l = seg.l;
            Matrix du = u.d(l);          // U^l -> U^{l+1}
            Matrix dv = v.d(i - l);      // V^{i-l} -> V^{i-l+1}
            Scalar twist = f.q_pow(inverse_root ? -static_cast<long long>(l) : l);
            const PairedLayout::Seg* up = dst.seg_of(l + 1);
            if (up) {
                // d_U(u) (x) v
                for (int s = 0; s < seg.outer; ++s)
                    for (int t = 0; t < seg.inner; ++t)
                        for (int s2 = 0; s2 < up->outer; ++s2) {
                            const Scalar& c = du.at(s2, s);
                            if (f.is_zero(c)) continue;
                            m.at(up->offset + s2 * up->inner + t, seg.offset + s * seg.inner + t) = c;
                        }
            }
            const PairedLayout::Seg* same = dst.seg_of(l);
            if (same) {
                // q^{+-l} u (x) d_V(v)
                for (int s = 0; s < seg.outer; ++s)
                    for (int t = 0; t < seg.inner; ++t)
                        for (int t2 = 0; t2 < same->inner; ++t2) {
                            const Scalar& c = dv.at(t2, t);
                            if (f.is_zero(c)) continue;
                            int row = same->offset + s * same->inner + t2;
                            int col = seg.offset + s * seg.inner + t;
                            m.at(row, col) = f.add(m.at(row, col), f.mul(twist, c));
                        }
            }
        }
        d[i] = std::move(m);
    }
    return validate_ncomplex(f, std::move(space), std::move(d));
}

/// Basis of the space of chain maps X -> Y (Z^0_(1) of the hom complex),
/// as coordinate columns in the hom_complex degree-0 basis.
inline Matrix chain_map_basis(const NComplex& x, const NComplex& y) {
    NComplex h = hom_complex(x, y);
    if (h.dim(0) == 0) return Matrix(x.field(), 0, 0);
    return kernel_basis(h.d(0));
}

struct BraidingIso {
    NComplex source;  // U (x)^{.q} V        (or with q^{-1} when inverse_root)
    NComplex target;  // V (x)^{.q^{-1}} U   (respectively with q)
    GradedMap map;    // degree 0, verified invertible chain iso
};

/// u (x) v |-> (q^{-1})^{rs} v (x) u on each U^r (x) V^s summand; the
/// coefficient uses the target's root, which is what makes the map commute
/// with the two twisted differentials. With inverse_root the source carries
/// the q^{-1} twist and the coefficient becomes q^{rs}, the exact inverse of
/// the plain braiding — so the two compose to the identity.
inline BraidingIso braiding_iso(const NComplex& u, const NComplex& v, bool inverse_root = false) {
    const Field& f = u.field();
    BraidingIso out;
    out.source = tensor_complex(u, v, inverse_root);
    out.target = tensor_complex(v, u, !inverse_root);
    GradedMap m(f, 0, out.source.space(), out.target.space());
    for (auto& [i, dm] : out.source.space()) {
        (void)dm;
        PairedLayout src = tensor_layout(u, v, i);
        PairedLayout dst = tensor_layout(v, u, i);
        Matrix mat(f, dst.total, src.total);
        for (const auto& seg : src.segs) {
            int r = seg.l, s = i - seg.l;
            const PairedLayout::Seg* tgt = dst.seg_of(s);
            require(tgt != nullptr, errc::internal, "braiding: missing target segment");
            Scalar c = f.q_pow(static_cast<long long>(r) * s * (inverse_root ? 1 : -1));
            for (int a = 0; a < seg.outer; ++a)
                for (int b = 0; b < seg.inner; ++b)
                    mat.at(tgt->offset + b * tgt->inner + a, seg.offset + a * seg.inner + b) = c;
        }
        m.set(i, std::move(mat));
    }
    for (auto& [i, dm] : out.source.space()) {
        (void)dm;
        require(rank(m.at(i)) == dm, errc::internal, "braiding: not invertible");
    }
    for (auto& [i, dm] : out.source.space()) {
        (void)dm;
        require(mul(out.target.d(i), m.at(i)) == mul(m.at(i + 1), out.source.d(i)), errc::internal,
                "braiding: does not commute with differentials");
    }
    out.map = std::move(m);
    return out;
}

} // namespace ndg
