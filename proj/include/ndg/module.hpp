#pragma once

#include <memory>

#include "ndg/category.hpp"
#include "ndg/functors.hpp"
#include "ndg/hom_tensor.hpp"

namespace ndg {

enum class Side { right, left };

/// An NDG module over a finite N_qDG category: one N-complex per object plus
/// exhaustive action tables.
///   right: act[(A1,A2)] takes (x in value(A1), f in hom(A2,A1)) to xf in value(A2)
///   left:  act[(A1,A2)] takes (f in hom(A1,A2), x in value(A1)) to fx in value(A2)
struct NdgModule {
    Side side = Side::right;
    std::shared_ptr<const NdgCategory> base;
    std::map<std::string, NComplex> value;
    std::map<std::pair<std::string, std::string>, Table> act;

    const NComplex& value_at(const std::string& a) const {
        auto it = value.find(a);
        require(it != value.end(), errc::unknown_object, "module has no value at " + a);
        return it->second;
    }

    const Table* act_table(const std::string& a1, const std::string& a2) const {
        auto it = act.find({a1, a2});
        return it == act.end() ? nullptr : &it->second;
    }

    /// Right action x.f for x in value(a1)^{x.degree}, f in hom(a2,a1).
    Elem act_right(const std::string& a1, const std::string& a2, const Elem& x,
                   const Elem& f) const {
        require(side == Side::right, errc::bad_arguments, "act_right on a left module");
        int deg = x.degree + f.degree;
        const NComplex& tgt = value_at(a2);
        Elem out{deg, Matrix(base->field, tgt.dim(deg), 1)};
        const Table* t = act_table(a1, a2);
        if (t) out.coords = bilinear_apply(base->field, *t, x.degree, x.coords, f.degree, f.coords,
                                           tgt.dim(deg));
        return out;
    }

    /// Left action f.x for f in hom(a1,a2), x in value(a1)^{x.degree}.
    Elem act_left(const std::string& a1, const std::string& a2, const Elem& f,
                  const Elem& x) const {
        require(side == Side::left, errc::bad_arguments, "act_left on a right module");
        int deg = x.degree + f.degree;
        const NComplex& tgt = value_at(a2);
        Elem out{deg, Matrix(base->field, tgt.dim(deg), 1)};
        const Table* t = act_table(a1, a2);
        if (t) out.coords = bilinear_apply(base->field, *t, f.degree, f.coords, x.degree, x.coords,
                                           tgt.dim(deg));
        return out;
    }

    Elem basis_elem(const std::string& a, int deg, int idx) const {
        const NComplex& v = value_at(a);
        Elem e{deg, Matrix(base->field, v.dim(deg), 1)};
        e.coords.at(idx, 0) = base->field.one();
        return e;
    }

    Elem d_of(const std::string& a, const Elem& e) const {
        const NComplex& v = value_at(a);
        return Elem{e.degree + 1, mul(v.d(e.degree), e.coords)};
    }
};

/// The matrix of "act on the right by the hom element h in hom(a2,a1)" as a
/// degree-(deg h) graded map value(a1) -> value(a2).
inline GradedMap right_action_map(const NdgModule& m, const std::string& a1, const std::string& a2,
                                  const Elem& h) {
    const Field& f = m.base->field;
    const NComplex& src = m.value_at(a1);
    const NComplex& dst = m.value_at(a2);
    GradedMap out(f, h.degree, src.space(), dst.space());
    for (auto& [s, dm] : src.space()) {
        Matrix mat(f, dst.dim(s + h.degree), dm);
        for (int i = 0; i < dm; ++i) {
            Elem xi = m.basis_elem(a1, s, i);
            Elem r = m.act_right(a1, a2, xi, h);
            for (int k = 0; k < mat.rows(); ++k) mat.at(k, i) = r.coords.at(k, 0);
        }
        out.set(s, std::move(mat));
    }
    return out;
}

inline GradedMap left_action_map(const NdgModule& m, const std::string& a1, const std::string& a2,
                                 const Elem& h) {
    const Field& f = m.base->field;
    const NComplex& src = m.value_at(a1);
    const NComplex& dst = m.value_at(a2);
    GradedMap out(f, h.degree, src.space(), dst.space());
    for (auto& [s, dm] : src.space()) {
        Matrix mat(f, dst.dim(s + h.degree), dm);
        for (int i = 0; i < dm; ++i) {
            Elem xi = m.basis_elem(a1, s, i);
            Elem r = m.act_left(a1, a2, h, xi);
            for (int k = 0; k < mat.rows(); ++k) mat.at(k, i) = r.coords.at(k, 0);
        }
        out.set(s, std::move(mat));
    }
    return out;
}

/// Exhaustive axiom check: unit, associativity over basis triples, and the
/// q-Leibniz chain condition of the action.
inline NdgModule validate_module(NdgModule m) {
    const NdgCategory& cat = *m.base;
    const Field& f = cat.field;
    for (const auto& a : cat.objects)
        require(m.value.find(a) != m.value.end(), errc::validation_error,
                "module is missing value at " + a);

    auto each_val_basis = [&](const std::string& a, auto&& fn) {
        const NComplex& v = m.value_at(a);
        for (auto& [deg, dm] : v.space())
            for (int i = 0; i < dm; ++i) fn(m.basis_elem(a, deg, i));
    };
    auto each_hom_basis = [&](const std::string& a, const std::string& b, auto&& fn) {
        const NComplex& h = cat.hom_at(a, b);
        for (auto& [deg, dm] : h.space())
            for (int i = 0; i < dm; ++i) fn(cat.basis_elem(a, b, deg, i));
    };

    if (m.side == Side::right) {
        for (const auto& a : cat.objects)
            each_val_basis(a, [&](const Elem& x) {
                Elem xu = m.act_right(a, a, x, cat.unit_elem(a));
                require(xu.coords == x.coords, errc::unit_violation,
                        "x 1 != x in module value at " + a);
            });
        for (const auto& a1 : cat.objects)
            for (const auto& a2 : cat.objects)
                each_val_basis(a1, [&](const Elem& x) {
                    each_hom_basis(a2, a1, [&](const Elem& fe) {
                        Elem lhs = m.d_of(a2, m.act_right(a1, a2, x, fe));
                        Matrix rhs = m.act_right(a1, a2, m.d_of(a1, x), fe).coords +
                                     m.act_right(a1, a2, x, cat.d_of(a2, a1, fe))
                                         .coords.scaled(f.q_pow(x.degree));
                        require(lhs.coords == rhs, errc::leibniz_violation,
                                "d(xf) != d(x)f + q^s x d(f) at (" + a1 + ", " + a2 + ")");
                    });
                });
        for (const auto& a1 : cat.objects)
            for (const auto& a2 : cat.objects)
                for (const auto& a3 : cat.objects)
                    each_val_basis(a1, [&](const Elem& x) {
                        each_hom_basis(a2, a1, [&](const Elem& fe) {
                            each_hom_basis(a3, a2, [&](const Elem& ge) {
                                Elem l = m.act_right(a2, a3, m.act_right(a1, a2, x, fe), ge);
                                Elem r = m.act_right(a1, a3, x, cat.compose(a3, a2, a1, fe, ge));
                                require(l.coords == r.coords, errc::assoc_violation,
                                        "(xf)g != x(fg) at (" + a1 + "," + a2 + "," + a3 + ")");
                            });
                        });
                    });
    } else {
        for (const auto& a : cat.objects)
            each_val_basis(a, [&](const Elem& x) {
                Elem ux = m.act_left(a, a, cat.unit_elem(a), x);
                require(ux.coords == x.coords, errc::unit_violation,
                        "1 x != x in module value at " + a);
            });
        for (const auto& a1 : cat.objects)
            for (const auto& a2 : cat.objects)
                each_val_basis(a1, [&](const Elem& x) {
                    each_hom_basis(a1, a2, [&](const Elem& fe) {
                        Elem lhs = m.d_of(a2, m.act_left(a1, a2, fe, x));
                        Matrix rhs = m.act_left(a1, a2, cat.d_of(a1, a2, fe), x).coords +
                                     m.act_left(a1, a2, fe, m.d_of(a1, x))
                                         .coords.scaled(f.q_pow(fe.degree));
                        require(lhs.coords == rhs, errc::leibniz_violation,
                                "d(fx) != d(f)x + q^t f d(x) at (" + a1 + ", " + a2 + ")");
                    });
                });
        for (const auto& a1 : cat.objects)
            for (const auto& a2 : cat.objects)
                for (const auto& a3 : cat.objects)
                    each_val_basis(a1, [&](const Elem& x) {
                        each_hom_basis(a1, a2, [&](const Elem& ge) {
                            each_hom_basis(a2, a3, [&](const Elem& fe) {
                                Elem l = m.act_left(a2, a3, fe, m.act_left(a1, a2, ge, x));
                                Elem r = m.act_left(a1, a3, cat.compose(a1, a2, a3, fe, ge), x);
                                require(l.coords == r.coords, errc::assoc_violation,
                                        "f(gx) != (fg)x at (" + a1 + "," + a2 + "," + a3 + ")");
                            });
                        });
                    });
    }
    return m;
}

/// Representable modules: A^ = hom(-, A) (right) and ^A = hom(A, -) (left),
/// acting by composition.
inline NdgModule representable(std::shared_ptr<const NdgCategory> cat, const std::string& a,
                               Side side) {
    require(cat->has_object(a), errc::unknown_object, "representable: unknown object " + a);
    NdgModule m;
    m.side = side;
    m.base = cat;
    for (const auto& b : cat->objects) {
        m.value[b] = (side == Side::right) ? cat->hom_at(b, a) : cat->hom_at(a, b);
    }
    for (const auto& b1 : cat->objects)
        for (const auto& b2 : cat->objects) {
            Table t;
            if (side == Side::right) {
                // x in hom(b1,a), f in hom(b2,b1) -> x o f
                const NComplex& xs = cat->hom_at(b1, a);
                const NComplex& fs = cat->hom_at(b2, b1);
                for (auto& [xd, xdm] : xs.space())
                    for (int xi = 0; xi < xdm; ++xi)
                        for (auto& [fd, fdm] : fs.space())
                            for (int fi = 0; fi < fdm; ++fi) {
                                Elem r = cat->compose(b2, b1, a, cat->basis_elem(b1, a, xd, xi),
                                                      cat->basis_elem(b2, b1, fd, fi));
                                if (!r.coords.is_zero()) t[{xd, xi, fd, fi}] = r.coords;
                            }
            } else {
                // f in hom(b1,b2), x in hom(a,b1) -> f o x
                const NComplex& fs = cat->hom_at(b1, b2);
                const NComplex& xs = cat->hom_at(a, b1);
                for (auto& [fd, fdm] : fs.space())
                    for (int fi = 0; fi < fdm; ++fi)
                        for (auto& [xd, xdm] : xs.space())
                            for (int xi = 0; xi < xdm; ++xi) {
                                Elem r = cat->compose(a, b1, b2, cat->basis_elem(b1, b2, fd, fi),
                                                      cat->basis_elem(a, b1, xd, xi));
                                if (!r.coords.is_zero()) t[{fd, fi, xd, xi}] = r.coords;
                            }
            }
            if (!t.empty()) m.act[{b1, b2}] = std::move(t);
        }
    return validate_module(std::move(m));
}

/// Direct sum of two same-sided modules over the same base.
inline NdgModule module_direct_sum(const NdgModule& x, const NdgModule& y) {
    require(x.side == y.side, errc::bad_arguments, "direct sum of mixed-side modules");
    require(x.base == y.base || (x.base && y.base && x.base->objects == y.base->objects),
            errc::base_mismatch, "direct sum over different categories");
    const Field& f = x.base->field;
    NdgModule s;
    s.side = x.side;
    s.base = x.base;
    for (const auto& a : x.base->objects) s.value[a] = direct_sum(x.value_at(a), y.value_at(a));
    for (const auto& a1 : x.base->objects)
        for (const auto& a2 : x.base->objects) {
            Table t;
            const NComplex& xv1 = x.value_at(a1);
            const NComplex& xv2 = x.value_at(a2);
            const NComplex& sv2 = s.value_at(a2);
            const NComplex& hom =
                (s.side == Side::right) ? x.base->hom_at(a2, a1) : x.base->hom_at(a1, a2);
            for (auto& [hd, hdm] : hom.space())
                for (int hi = 0; hi < hdm; ++hi) {
                    Elem he{hd, Matrix(f, hdm, 1)};
                    he.coords.at(hi, 0) = f.one();
                    for (auto& [vd, vdm] : s.value_at(a1).space()) {
                        for (int vi = 0; vi < vdm; ++vi) {
                            bool from_x = vi < xv1.dim(vd);
                            Elem part;
                            if (from_x) {
                                Elem e = x.basis_elem(a1, vd, vi);
                                part = (s.side == Side::right) ? x.act_right(a1, a2, e, he)
                                                               : x.act_left(a1, a2, he, e);
                            } else {
                                Elem e = y.basis_elem(a1, vd, vi - xv1.dim(vd));
                                part = (s.side == Side::right) ? y.act_right(a1, a2, e, he)
                                                               : y.act_left(a1, a2, he, e);
                            }
                            int tdeg = vd + hd;
                            Matrix col(f, sv2.dim(tdeg), 1);
                            int off = from_x ? 0 : xv2.dim(tdeg);
                            for (int k = 0; k < part.coords.rows(); ++k)
                                col.at(off + k, 0) = part.coords.at(k, 0);
                            if (!col.is_zero()) {
                                if (s.side == Side::right)
                                    t[{vd, vi, hd, hi}] = col;
                                else
                                    t[{hd, hi, vd, vi}] = col;
                            }
                        }
                    }
                }
            if (!t.empty()) s.act[{a1, a2}] = std::move(t);
        }
    return validate_module(std::move(s));
}

/// k-linear dual of a left module, with E = the base field in degree 0:
/// value(A)^i = (X(A)^{-i})*, d(phi) = -q^i phi o d, (phi f)(x) = phi(f x).
inline NdgModule dual_module(const NdgModule& x) {
    require(x.side == Side::left, errc::bad_arguments, "dual_module expects a left module");
    const NdgCategory& cat = *x.base;
    const Field& f = cat.field;
    NdgModule d;
    d.side = Side::right;
    d.base = x.base;
    for (const auto& a : cat.objects) {
        const NComplex& v = x.value_at(a);
        GradedSpace s;
        for (auto& [i, dm] : v.space()) s[-i] = dm;
        std::map<int, Matrix> dd;
        for (auto& [i, dm] : s) {
            (void)dm;
            if (dim_at(s, i + 1) == 0) continue;
            // dual^i -> dual^{i+1} is -q^i (d_{X(A)}^{-i-1})^t
            Matrix m = v.d(-i - 1).transpose().scaled(f.neg(f.q_pow(i)));
            dd[i] = std::move(m);
        }
        d.value[a] = validate_ncomplex(f, std::move(s), std::move(dd));
    }
    for (const auto& a1 : cat.objects)
        for (const auto& a2 : cat.objects) {
            // (phi f)(x) = phi(f x): transpose of the left action of f
            Table t;
            const NComplex& hom = cat.hom_at(a2, a1);
            for (auto& [hd, hdm] : hom.space())
                for (int hi = 0; hi < hdm; ++hi) {
                    Elem he = cat.basis_elem(a2, a1, hd, hi);
                    GradedMap lact = left_action_map(x, a2, a1, he);  // X(A2) -> X(A1)
                    for (auto& [sdeg, sdm] : d.value_at(a1).space()) {
                        Matrix lmat = lact.at(-sdeg - hd);  // X(A2)^{-s-t} -> X(A1)^{-s}
                        for (int i = 0; i < sdm; ++i) {
                            Matrix col(f, lmat.cols(), 1);
                            for (int k = 0; k < lmat.cols(); ++k) col.at(k, 0) = lmat.at(i, k);
                            if (!col.is_zero()) t[{sdeg, i, hd, hi}] = col;
                        }
                    }
                }
            if (!t.empty()) d.act[{a1, a2}] = std::move(t);
        }
    return validate_module(std::move(d));
}

/// Entry (s, t) of the paper's action matrix (a^n_st)_size for a hom element
/// a: binom(t-1, s-1) q^{n(t-s)} d^{t-s}(a); zero below the diagonal.
inline Elem action_matrix_entry(const NdgCategory& cat, const std::string& a2,
                                const std::string& a1, const Elem& a, int n, int s, int t) {
    const Field& f = cat.field;
    const NComplex& h = cat.hom_at(a2, a1);
    int deg = a.degree + (t - s);
    Elem out{deg, Matrix(f, h.dim(deg), 1)};
    if (s > t) return out;
    Elem cur = a;
    for (int k = 0; k < t - s; ++k) cur = cat.d_of(a2, a1, cur);
    Scalar c = f.mul(f.q_binomial(t - 1, s - 1), f.q_pow(static_cast<long long>(n) * (t - s)));
    out.coords = cur.coords.scaled(c);
    return out;
}

enum class ModuleFunctor { theta, suspend, desuspend, q_shift };

/// Applies theta^n / Sigma / Sigma^{-1} / Q_r objectwise and installs the
/// action through the triangular action matrices; the result is re-validated,
/// which re-proves the action axioms on the instance.
inline NdgModule module_functor(const NdgModule& x, ModuleFunctor which, int param = 0) {
    require(x.side == Side::right, errc::bad_arguments, "module functors act on right modules");
    const NdgCategory& cat = *x.base;
    const Field& f = cat.field;
    int n = f.N();
    NdgModule out;
    out.side = Side::right;
    out.base = x.base;

    if (which == ModuleFunctor::theta) {
        for (const auto& a : cat.objects) out.value[a] = theta_shift(x.value_at(a), param);
        for (const auto& a1 : cat.objects)
            for (const auto& a2 : cat.objects) {
                const Table* t = x.act_table(a1, a2);
                if (!t) continue;
                Table nt;
                for (auto& [k, col] : *t) nt[{k[0] - param, k[1], k[2], k[3]}] = col;
                out.act[{a1, a2}] = std::move(nt);
            }
        return validate_module(std::move(out));
    }

    // block data per flavor: size, and the base degree of block i at module
    // degree m: q_shift r: m-N+i+r;  suspend: m+i;  desuspend: m-N+i
    int size = (which == ModuleFunctor::q_shift) ? n : n - 1;
    auto block_base = [&](int m, int i) {
        switch (which) {
            case ModuleFunctor::q_shift: return param + m - n + i;
            case ModuleFunctor::suspend: return m + i;
            default: return m - n + i;  // desuspend
        }
    };
    for (const auto& a : cat.objects) {
        const NComplex& v = x.value_at(a);
        switch (which) {
            case ModuleFunctor::q_shift: out.value[a] = q_functor(f, param, v.space()); break;
            case ModuleFunctor::suspend: out.value[a] = suspend(v); break;
            default: out.value[a] = desuspend(v); break;
        }
    }
    for (const auto& a1 : cat.objects)
        for (const auto& a2 : cat.objects) {
            Table t;
            const NComplex& hom = cat.hom_at(a2, a1);
            const NComplex& v1 = x.value_at(a1);
            const NComplex& v2 = x.value_at(a2);
            const NComplex& q1 = out.value_at(a1);
            const NComplex& q2 = out.value_at(a2);
            for (auto& [hd, hdm] : hom.space())
                for (int hi = 0; hi < hdm; ++hi) {
                    Elem he = cat.basis_elem(a2, a1, hd, hi);
                    for (auto& [m, mdm] : q1.space()) {
                        (void)mdm;
                        int tdeg = m + hd;
                        if (q2.dim(tdeg) == 0) continue;
                        // offsets of blocks in source and target degrees
                        std::vector<int> soff(static_cast<std::size_t>(size + 1), 0);
                        std::vector<int> toff(static_cast<std::size_t>(size + 1), 0);
                        for (int i = 1; i <= size; ++i) {
                            soff[static_cast<std::size_t>(i)] =
                                soff[static_cast<std::size_t>(i - 1)] +
                                ((i > 1) ? v1.dim(block_base(m, i - 1)) : 0);
                            toff[static_cast<std::size_t>(i)] =
                                toff[static_cast<std::size_t>(i - 1)] +
                                ((i > 1) ? v2.dim(block_base(m + hd, i - 1)) : 0);
                        }
                        for (int s = 1; s <= size; ++s) {
                            int sdim = v1.dim(block_base(m, s));
                            for (int si = 0; si < sdim; ++si) {
                                Matrix col(f, q2.dim(tdeg), 1);
                                Elem xs{block_base(m, s), Matrix(f, sdim, 1)};
                                xs.coords.at(si, 0) = f.one();
                                for (int tt = s; tt <= size; ++tt) {
                                    Elem entry = action_matrix_entry(cat, a2, a1, he, m, s, tt);
                                    if (entry.coords.is_zero()) continue;
                                    Elem r = x.act_right(a1, a2, xs, entry);
                                    for (int k = 0; k < r.coords.rows(); ++k)
                                        col.at(toff[static_cast<std::size_t>(tt)] + k, 0) =
                                            f.add(col.at(toff[static_cast<std::size_t>(tt)] + k, 0),
                                                  r.coords.at(k, 0));
                                }
                                if (!col.is_zero()) t[{m, soff[static_cast<std::size_t>(s)] + si,
                                                       hd, hi}] = col;
                            }
                        }
                    }
                }
            if (!t.empty()) out.act[{a1, a2}] = std::move(t);
        }
    return validate_module(std::move(out));
}

/// Hom over the category: the degree-i component is the space of natural
/// degree-i families {F_A}, computed as the kernel of the naturality system;
/// the differential is F |-> d_Y F - q^i F d_X expressed in those kernel
/// bases. `raw` bookkeeping allows converting between abstract coordinates
/// and concrete families.
struct ModuleHom {
    NComplex cx;
    struct RawSeg {
        std::string obj;
        PairedLayout lay;
        int offset = 0;
    };
    std::map<int, std::vector<RawSeg>> raw;
    std::map<int, int> raw_total;
    std::map<int, Matrix> basis;  // raw_total(i) x cx.dim(i)
};

inline std::map<std::string, GradedMap> module_family_from_raw(const NdgModule& x,
                                                               const NdgModule& y, int degree,
                                                               const ModuleHom& mh,
                                                               const Matrix& rawcol) {
    std::map<std::string, GradedMap> fam;
    auto it = mh.raw.find(degree);
    const Field& f = x.base->field;
    for (const auto& a : x.base->objects)
        fam.emplace(a, GradedMap(f, degree, x.value_at(a).space(), y.value_at(a).space()));
    if (it == mh.raw.end()) return fam;
    for (const auto& seg : it->second) {
        Matrix sub(f, seg.lay.total, 1);
        for (int k = 0; k < seg.lay.total; ++k) sub.at(k, 0) = rawcol.at(seg.offset + k, 0);
        fam[seg.obj] = coords_to_family(x.value_at(seg.obj), y.value_at(seg.obj), degree, sub);
    }
    return fam;
}

inline Matrix module_family_to_raw(const NdgModule& x, const NdgModule& y, int degree,
                                   const ModuleHom& mh,
                                   const std::map<std::string, GradedMap>& fam) {
    const Field& f = x.base->field;
    auto it = mh.raw.find(degree);
    int total = (it == mh.raw.end()) ? 0 : mh.raw_total.at(degree);
    Matrix raw(f, total, 1);
    if (it == mh.raw.end()) return raw;
    for (const auto& seg : it->second) {
        Matrix sub = family_to_coords(x.value_at(seg.obj), y.value_at(seg.obj), fam.at(seg.obj));
        for (int k = 0; k < seg.lay.total; ++k) raw.at(seg.offset + k, 0) = sub.at(k, 0);
    }
    return raw;
}

inline ModuleHom module_hom_complex(const NdgModule& x, const NdgModule& y) {
    require(x.side == Side::right && y.side == Side::right, errc::bad_arguments,
            "module_hom_complex expects right modules");
    require(x.base == y.base || x.base->objects == y.base->objects, errc::base_mismatch,
            "module_hom_complex: different base categories");
    const NdgCategory& cat = *x.base;
    const Field& f = cat.field;
    ModuleHom mh;

    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& a : cat.objects) {
        const NComplex& xa = x.value_at(a);
        const NComplex& ya = y.value_at(a);
        if (xa.space().empty() || ya.space().empty()) continue;
        int l = ya.min_deg() - xa.max_deg(), h = ya.max_deg() - xa.min_deg();
        lo = any ? std::min(lo, l) : l;
        hi = any ? std::max(hi, h) : h;
        any = true;
    }
    if (!any) {
        mh.cx = zero_complex(f);
        return mh;
    }

    // raw layouts and per-object hom complexes
    std::map<std::string, NComplex> hcx;
    for (const auto& a : cat.objects) hcx.emplace(a, hom_complex(x.value_at(a), y.value_at(a)));
    for (int i = lo; i <= hi + 1; ++i) {
        std::vector<ModuleHom::RawSeg> segs;
        int off = 0;
        for (const auto& a : cat.objects) {
            ModuleHom::RawSeg seg;
            seg.obj = a;
            seg.lay = hom_layout(x.value_at(a), y.value_at(a), i);
            seg.offset = off;
            off += seg.lay.total;
            segs.push_back(std::move(seg));
        }
        mh.raw[i] = std::move(segs);
        mh.raw_total[i] = off;
    }

    // naturality kernel per degree
    for (int i = lo; i <= hi; ++i) {
        int unknowns = mh.raw_total[i];
        if (unknowns == 0) {
            mh.basis[i] = Matrix(f, 0, 0);
            continue;
        }
        std::vector<Matrix> rows;
        auto seg_of = [&](const std::string& a) -> const ModuleHom::RawSeg& {
            for (const auto& s : mh.raw[i])
                if (s.obj == a) return s;
            fail(errc::internal, "missing raw segment");
        };
        for (const auto& a1 : cat.objects)
            for (const auto& a2 : cat.objects) {
                const NComplex& hom = cat.hom_at(a2, a1);
                const NComplex& x1 = x.value_at(a1);
                const NComplex& y2 = y.value_at(a2);
                const ModuleHom::RawSeg& seg1 = seg_of(a1);
                const ModuleHom::RawSeg& seg2 = seg_of(a2);
                for (auto& [hd, hdm] : hom.space())
                    for (int hi2 = 0; hi2 < hdm; ++hi2) {
                        Elem he = cat.basis_elem(a2, a1, hd, hi2);
                        GradedMap ract_x = right_action_map(x, a1, a2, he);
                        GradedMap ract_y = right_action_map(y, a1, a2, he);
                        for (auto& [s, sdm] : x1.space()) {
                            Matrix xf = ract_x.at(s);  // X(A1)^s -> X(A2)^{s+hd}
                            Matrix yf = ract_y.at(s + i);
                            int outdim = y2.dim(s + hd + i);
                            if (outdim == 0) continue;
                            const PairedLayout::Seg* u2 = seg2.lay.seg_of(s + hd);
                            const PairedLayout::Seg* u1 = seg1.lay.seg_of(s);
                            for (int xi = 0; xi < sdm; ++xi)
                                for (int k = 0; k < outdim; ++k) {
                                    Matrix row(f, 1, unknowns);
                                    if (u2) {
                                        // + F_{A2}(x f): coefficient xf[j, xi] on
                                        // unknown F_{A2}[k, j] at component s+hd
                                        for (int j = 0; j < u2->inner; ++j) {
                                            Scalar c = xf.at(j, xi);
                                            if (f.is_zero(c)) continue;
                                            int col = seg2.offset + u2->offset + k * u2->inner + j;
                                            row.at(0, col) = f.add(row.at(0, col), c);
                                        }
                                    }
                                    if (u1) {
                                        // - (F_{A1} x) f: coefficient yf[k, m] on
                                        // unknown F_{A1}[m, xi] at component s
                                        for (int mrow = 0; mrow < u1->outer; ++mrow) {
                                            Scalar c = yf.at(k, mrow);
                                            if (f.is_zero(c)) continue;
                                            int col =
                                                seg1.offset + u1->offset + mrow * u1->inner + xi;
                                            row.at(0, col) = f.sub(row.at(0, col), c);
                                        }
                                    }
                                    if (!row.is_zero()) rows.push_back(std::move(row));
                                }
                        }
                    }
            }
        Matrix sys(f, static_cast<int>(rows.size()), unknowns);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (int c = 0; c < unknowns; ++c) sys.at(static_cast<int>(r), c) = rows[r].at(0, c);
        mh.basis[i] = rows.empty() ? Matrix::identity(f, unknowns) : kernel_basis(sys);
    }

    // abstract complex: dims are kernel ranks, differential expressed in the
    // kernel bases (solvable because the hom differential preserves naturality)
    GradedSpace space;
    for (int i = lo; i <= hi; ++i)
        if (mh.basis.count(i) && mh.basis[i].cols() > 0) space[i] = mh.basis[i].cols();
    std::map<int, Matrix> d;
    for (int i = lo; i <= hi; ++i) {
        if (dim_at(space, i) == 0 || dim_at(space, i + 1) == 0) continue;
        // raw differential: blockwise d_Y F - q^i F d_X via per-object hom complexes
        Matrix draw(f, mh.raw_total[i + 1], mh.raw_total[i]);
        for (const auto& seg : mh.raw[i]) {
            const NComplex& h = hcx.at(seg.obj);
            Matrix dm = h.d(i);
            const ModuleHom::RawSeg* seg2 = nullptr;
            for (const auto& s2 : mh.raw[i + 1])
                if (s2.obj == seg.obj) seg2 = &s2;
            require(seg2 != nullptr, errc::internal, "module hom: missing target segment");
            for (int r = 0; r < dm.rows(); ++r)
                for (int c = 0; c < dm.cols(); ++c)
                    draw.at(seg2->offset + r, seg.offset + c) = dm.at(r, c);
        }
        auto sol = solve(mh.basis[i + 1], mul(draw, mh.basis[i]));
        require(sol.has_value(), errc::internal,
                "module hom differential does not preserve naturality");
        if (!sol->is_zero()) d[i] = *sol;
    }
    mh.cx = validate_ncomplex(f, std::move(space), std::move(d));
    return mh;
}

/// Coordinates of a concrete natural family in the kernel basis; throws if
/// the family is not natural (not in the kernel span).
inline Matrix module_family_coords(const NdgModule& x, const NdgModule& y, int degree,
                                   const ModuleHom& mh,
                                   const std::map<std::string, GradedMap>& fam) {
    Matrix raw = module_family_to_raw(x, y, degree, mh, fam);
    auto it = mh.basis.find(degree);
    if (it == mh.basis.end() || it->second.cols() == 0) {
        require(raw.is_zero(), errc::internal, "family is nonzero but hom space is zero");
        return Matrix(x.base->field, 0, 1);
    }
    auto sol = solve(it->second, raw);
    require(sol.has_value(), errc::internal, "family is not natural");
    return *sol;
}

} // namespace ndg
