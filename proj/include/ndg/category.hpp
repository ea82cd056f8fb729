#pragma once

#include <array>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "ndg/ncomplex.hpp"

namespace ndg {

/// Homogeneous element of some graded complex: a degree plus the coordinate
/// column in that degree's basis.
struct Elem {
    int degree = 0;
    Matrix coords;
};

/// Sparse bilinear structure-constant table. Key: (left degree, left index,
/// right degree, right index); value: coordinate column of the product in
/// degree ldeg + rdeg of the target complex. Missing entries are zero.
using Table = std::map<std::array<int, 4>, Matrix>;

inline Matrix bilinear_apply(const Field& f, const Table& t, int ldeg, const Matrix& lco, int rdeg,
                             const Matrix& rco, int target_dim) {
    Matrix out(f, target_dim, 1);
    for (int i = 0; i < lco.rows(); ++i) {
        if (f.is_zero(lco.at(i, 0))) continue;
        for (int j = 0; j < rco.rows(); ++j) {
            if (f.is_zero(rco.at(j, 0))) continue;
            auto it = t.find({ldeg, i, rdeg, j});
            if (it == t.end()) continue;
            Scalar c = f.mul(lco.at(i, 0), rco.at(j, 0));
            for (int k = 0; k < target_dim; ++k)
                out.at(k, 0) = f.add(out.at(k, 0), f.mul(c, it->second.at(k, 0)));
        }
    }
    return out;
}

/// A finite N_qDG category: finitely many objects, finite-dimensional hom
/// N-complexes, unit elements, and exhaustive composition tables satisfying
/// the q-Leibniz rule. Build raw data and pass through validate_category.
struct NdgCategory {
    Field field;
    std::vector<std::string> objects;
    std::map<std::pair<std::string, std::string>, NComplex> hom;  // (A,B) -> hom(A,B)
    std::map<std::string, Matrix> unit;                           // coords in hom(A,A)^0
    std::map<std::tuple<std::string, std::string, std::string>, Table> comp;  // (A,B,C)

    const NComplex& hom_at(const std::string& a, const std::string& b) const {
        auto it = hom.find({a, b});
        require(it != hom.end(), errc::unknown_object, "no hom complex for (" + a + ", " + b + ")");
        return it->second;
    }

    bool has_object(const std::string& a) const {
        for (const auto& o : objects)
            if (o == a) return true;
        return false;
    }

    const Table* comp_table(const std::string& a, const std::string& b,
                            const std::string& c) const {
        auto it = comp.find({a, b, c});
        return it == comp.end() ? nullptr : &it->second;
    }

    /// mu(f, g) = f o g for f in hom(B,C), g in hom(A,B).
    Elem compose(const std::string& a, const std::string& b, const std::string& c, const Elem& f,
                 const Elem& g) const {
        const NComplex& tgt = hom_at(a, c);
        int deg = f.degree + g.degree;
        Elem out{deg, Matrix(field, tgt.dim(deg), 1)};
        const Table* t = comp_table(a, b, c);
        if (t) out.coords = bilinear_apply(field, *t, f.degree, f.coords, g.degree, g.coords,
                                           tgt.dim(deg));
        return out;
    }

    Elem d_of(const std::string& a, const std::string& b, const Elem& e) const {
        const NComplex& h = hom_at(a, b);
        return Elem{e.degree + 1, mul(h.d(e.degree), e.coords)};
    }

    Elem unit_elem(const std::string& a) const {
        auto it = unit.find(a);
        require(it != unit.end(), errc::unknown_object, "no unit for object " + a);
        return Elem{0, it->second};
    }

    Elem basis_elem(const std::string& a, const std::string& b, int deg, int idx) const {
        const NComplex& h = hom_at(a, b);
        Elem e{deg, Matrix(field, h.dim(deg), 1)};
        e.coords.at(idx, 0) = field.one();
        return e;
    }
};

inline NdgCategory validate_category(NdgCategory c) {
    const Field& f = c.field;
    // every pair carries a hom complex (fill missing ones with zero)
    for (const auto& a : c.objects)
        for (const auto& b : c.objects)
            if (c.hom.find({a, b}) == c.hom.end()) c.hom.emplace(std::make_pair(a, b), zero_complex(f));
    for (auto& [key, h] : c.hom) {
        (void)h;
        require(c.has_object(key.first) && c.has_object(key.second), errc::unknown_object,
                "hom table mentions unknown object");
    }
    // units: present, degree 0, correct length
    for (const auto& a : c.objects) {
        auto it = c.unit.find(a);
        require(it != c.unit.end(), errc::unit_violation, "missing unit for " + a);
        require(it->second.rows() == c.hom_at(a, a).dim(0) && it->second.cols() == 1,
                errc::unit_violation, "unit of " + a + " has wrong shape");
    }
    // table shapes
    for (auto& [key, table] : c.comp) {
        auto& [a, b, cc] = key;
        require(c.has_object(a) && c.has_object(b) && c.has_object(cc), errc::unknown_object,
                "composition table mentions unknown object");
        for (auto& [k, col] : table) {
            require(col.cols() == 1 && col.rows() == c.hom_at(a, cc).dim(k[0] + k[2]),
                    errc::shape_error, "composition table entry has wrong shape");
        }
    }

    auto each_basis = [&](const std::string& a, const std::string& b, auto&& fn) {
        const NComplex& h = c.hom_at(a, b);
        for (auto& [deg, dm] : h.space())
            for (int i = 0; i < dm; ++i) fn(c.basis_elem(a, b, deg, i));
    };

    // unit laws
    for (const auto& a : c.objects)
        for (const auto& b : c.objects) {
            each_basis(a, b, [&](const Elem& x) {
                Elem xr = c.compose(a, a, b, x, c.unit_elem(a));
                require(xr.coords == x.coords, errc::unit_violation,
                        "x * 1 != x in hom(" + a + ", " + b + ")");
                Elem xl = c.compose(a, b, b, c.unit_elem(b), x);
                require(xl.coords == x.coords, errc::unit_violation,
                        "1 * x != x in hom(" + a + ", " + b + ")");
            });
        }

    // q-Leibniz: d(fg) = d(f) g + q^{deg f} f d(g)
    for (const auto& a : c.objects)
        for (const auto& b : c.objects)
            for (const auto& cc : c.objects) {
                each_basis(b, cc, [&](const Elem& fe) {
                    each_basis(a, b, [&](const Elem& ge) {
                        Elem lhs = c.d_of(a, cc, c.compose(a, b, cc, fe, ge));
                        Elem t1 = c.compose(a, b, cc, c.d_of(b, cc, fe), ge);
                        Elem t2 = c.compose(a, b, cc, fe, c.d_of(a, b, ge));
                        Matrix rhs = t1.coords + t2.coords.scaled(f.q_pow(fe.degree));
                        require(lhs.coords == rhs, errc::leibniz_violation,
                                "d(fg) != d(f)g + q^r f d(g) for f in hom(" + b + "," + cc +
                                    ")^" + std::to_string(fe.degree) + ", g in hom(" + a + "," +
                                    b + ")^" + std::to_string(ge.degree));
                    });
                });
            }

    // associativity on basis triples
    for (const auto& a : c.objects)
        for (const auto& b : c.objects)
            for (const auto& cc : c.objects)
                for (const auto& dd : c.objects) {
                    each_basis(cc, dd, [&](const Elem& fe) {
                        each_basis(b, cc, [&](const Elem& ge) {
                            each_basis(a, b, [&](const Elem& he) {
                                Elem l = c.compose(a, b, dd, c.compose(b, cc, dd, fe, ge), he);
                                Elem r = c.compose(a, cc, dd, fe, c.compose(a, b, cc, ge, he));
                                require(l.coords == r.coords, errc::assoc_violation,
                                        "(fg)h != f(gh) across " + a + "," + b + "," + cc + "," +
                                            dd);
                            });
                        });
                    });
                }
    return c;
}

/// The base field as a one-object category.
inline NdgCategory category_k(const Field& f, const std::string& obj = "*") {
    NdgCategory c;
    c.field = f;
    c.objects = {obj};
    c.hom[{obj, obj}] = unit_complex(f);
    Matrix u(f, 1, 1);
    u.at(0, 0) = f.one();
    c.unit[obj] = u;
    Table t;
    Matrix one(f, 1, 1);
    one.at(0, 0) = f.one();
    t[{0, 0, 0, 0}] = one;
    c.comp[{obj, obj, obj}] = t;
    return validate_category(std::move(c));
}

/// k[x]/(x^{top+1}) with deg x = 1 and d(x^m) = [m] x^{m+1}; top defaults to
/// N, which is the largest truncation for which d^N = 0 works out.
inline NdgCategory truncated_polynomial_category(const Field& f, int top = -1,
                                                 const std::string& obj = "*") {
    if (top < 0) top = f.N();
    require(top <= f.N(), errc::bad_arguments, "truncation above x^{N+1} breaks d^N = 0");
    NdgCategory c;
    c.field = f;
    c.objects = {obj};
    GradedSpace s;
    for (int m = 0; m <= top; ++m) s[m] = 1;
    std::map<int, Matrix> d;
    for (int m = 0; m < top; ++m) {
        Matrix dm(f, 1, 1);
        dm.at(0, 0) = f.q_int(std::min(m, f.N()));
        d[m] = dm;
    }
    c.hom[{obj, obj}] = validate_ncomplex(f, s, d);
    Matrix u(f, 1, 1);
    u.at(0, 0) = f.one();
    c.unit[obj] = u;
    Table t;
    for (int a = 0; a <= top; ++a)
        for (int b = 0; b <= top; ++b) {
            if (a + b > top) continue;
            Matrix col(f, 1, 1);
            col.at(0, 0) = f.one();
            t[{a, 0, b, 0}] = col;
        }
    c.comp[{obj, obj, obj}] = t;
    return validate_category(std::move(c));
}

/// Trivial extension k (+) V with V·V = 0; valid for any N-complex V.
/// Basis: degree 0 is (unit, V^0 basis...), other degrees are V's bases.
inline NdgCategory trivial_extension_category(const Field& f, const NComplex& v,
                                              const std::string& obj = "*") {
    NdgCategory c;
    c.field = f;
    c.objects = {obj};
    GradedSpace s = v.space();
    s[0] += 1;
    std::map<int, Matrix> d;
    int voff0 = 1;  // unit occupies index 0 in degree 0
    for (auto& [i, dm] : s) {
        (void)dm;
        int rows = dim_at(s, i + 1), cols = dim_at(s, i);
        if (rows == 0 || cols == 0) continue;
        Matrix m(f, rows, cols);
        Matrix dv = v.d(i);
        int roff = (i + 1 == 0) ? voff0 : 0;
        int coff = (i == 0) ? voff0 : 0;
        for (int r = 0; r < dv.rows(); ++r)
            for (int cc = 0; cc < dv.cols(); ++cc) m.at(roff + r, coff + cc) = dv.at(r, cc);
        d[i] = std::move(m);
    }
    c.hom[{obj, obj}] = validate_ncomplex(f, s, d);
    Matrix u(f, dim_at(s, 0), 1);
    u.at(0, 0) = f.one();
    c.unit[obj] = u;

    Table t;
    auto unit_like = [&](int deg, int idx) { return deg == 0 && idx == 0; };
    for (auto& [adeg, adm] : s)
        for (int ai = 0; ai < adm; ++ai)
            for (auto& [bdeg, bdm] : s)
                for (int bi = 0; bi < bdm; ++bi) {
                    bool aunit = unit_like(adeg, ai), bunit = unit_like(bdeg, bi);
                    if (!aunit && !bunit) continue;  // V.V = 0
                    int tdeg = adeg + bdeg;
                    Matrix col(f, dim_at(s, tdeg), 1);
                    // the unit preserves the other factor's index (unit included
                    // in the degree-0 indexing)
                    if (aunit && bunit)
                        col.at(0, 0) = f.one();
                    else if (aunit)
                        col.at(bi, 0) = f.one();
                    else
                        col.at(ai, 0) = f.one();
                    t[{adeg, ai, bdeg, bi}] = col;
                }
    c.comp[{obj, obj, obj}] = t;
    return validate_category(std::move(c));
}

/// Two objects P, R with hom(P,R) = V, hom(R,P) = 0 and scalar endomorphism
/// rings; all nontrivial composites vanish, so any V works.
inline NdgCategory two_object_category(const Field& f, const NComplex& v,
                                       const std::string& p = "P", const std::string& r = "R") {
    NdgCategory c;
    c.field = f;
    c.objects = {p, r};
    c.hom[{p, p}] = unit_complex(f);
    c.hom[{r, r}] = unit_complex(f);
    c.hom[{p, r}] = v;
    c.hom[{r, p}] = zero_complex(f);
    Matrix u(f, 1, 1);
    u.at(0, 0) = f.one();
    c.unit[p] = u;
    c.unit[r] = u;
    Table scal;
    Matrix one(f, 1, 1);
    one.at(0, 0) = f.one();
    scal[{0, 0, 0, 0}] = one;
    c.comp[{p, p, p}] = scal;
    c.comp[{r, r, r}] = scal;
    Table actl, actr;
    for (auto& [deg, dm] : v.space())
        for (int i = 0; i < dm; ++i) {
            Matrix col(f, dm, 1);
            col.at(i, 0) = f.one();
            actl[{0, 0, deg, i}] = col;  // 1_R o v
            actr[{deg, i, 0, 0}] = col;  // v o 1_P
        }
    c.comp[{p, r, r}] = actl;
    c.comp[{p, p, r}] = actr;
    return validate_category(std::move(c));
}

} // namespace ndg
