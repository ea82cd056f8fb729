#pragma once

#include "ndg/bimodule.hpp"
#include "ndg/homotopy.hpp"

namespace ndg {

/// Layout of the coproduct (+)_b X(b) (x) M(a, b) in one degree.
struct Dom0Seg {
    std::string b;
    PairedLayout lay;
    int offset = 0;
};
using Dom0Layout = std::vector<Dom0Seg>;

/// X (x)^{.q}_B M as a right A-module, realized degreewise as the cokernel of
/// nu(x (x) b (x) m) = xb (x) m - x (x) bm with the induced differential and
/// action. Keeps the projection data so elements x (x) m can be mapped into
/// the cokernel coordinates afterwards.
struct CatTensor {
    NdgModule module;
    std::map<std::string, std::map<int, Dom0Layout>> layout;
    std::map<std::string, std::map<int, Matrix>> proj;  // Dom0 coords -> value coords
    std::map<std::string, NComplex> dom0;
};

inline CatTensor tensor_over_category(const NdgModule& x, const NdgBimodule& m) {
    require(x.side == Side::right, errc::bad_arguments, "tensor_over_category: X must be right");
    require(x.base == m.left_base || x.base->objects == m.left_base->objects, errc::base_mismatch,
            "tensor_over_category: X is not a module over the bimodule's left category");
    const NdgCategory& bcat = *m.left_base;
    const NdgCategory& acat = *m.right_base;
    const Field& f = acat.field;

    CatTensor ct;
    ct.module.side = Side::right;
    ct.module.base = m.right_base;

    std::map<std::string, std::map<int, Matrix>> sect;

    for (const auto& a : acat.objects) {
        // Dom0 = (+)_b X(b) (x) M(a,b)
        NComplex dom0 = zero_complex(f);
        for (const auto& b : bcat.objects)
            dom0 = direct_sum(dom0, tensor_complex(x.value_at(b), m.value_at(a, b)));
        ct.dom0[a] = dom0;
        auto layout_at = [&](int deg) {
            Dom0Layout lay;
            int off = 0;
            for (const auto& b : bcat.objects) {
                Dom0Seg seg;
                seg.b = b;
                seg.lay = tensor_layout(x.value_at(b), m.value_at(a, b), deg);
                seg.offset = off;
                off += seg.lay.total;
                lay.push_back(std::move(seg));
            }
            return lay;
        };
        std::map<int, std::vector<Matrix>> nu_cols;
        for (const auto& b2 : bcat.objects)
            for (const auto& b1 : bcat.objects) {
                const NComplex& xs = x.value_at(b2);
                const NComplex& hs = bcat.hom_at(b1, b2);
                const NComplex& ms = m.value_at(a, b1);
                NdgModule lview = left_module_view(m.left_base, m, a);
                for (auto& [sx, sxd] : xs.space())
                    for (int xi = 0; xi < sxd; ++xi)
                        for (auto& [sb, sbd] : hs.space())
                            for (int bi = 0; bi < sbd; ++bi)
                                for (auto& [sm, smd] : ms.space())
                                    for (int mi = 0; mi < smd; ++mi) {
                                        int deg = sx + sb + sm;
                                        if (dom0.dim(deg) == 0) continue;
                                        Dom0Layout lay = layout_at(deg);
                                        Matrix col(f, dom0.dim(deg), 1);
                                        Elem xe = x.basis_elem(b2, sx, xi);
                                        Elem be = bcat.basis_elem(b1, b2, sb, bi);
                                        Elem me{sm, Matrix(f, smd, 1)};
                                        me.coords.at(mi, 0) = f.one();
                                        // + (x b) (x) m in the b1 summand
                                        Elem xb = x.act_right(b2, b1, xe, be);
                                        for (const auto& seg : lay) {
                                            if (seg.b != b1) continue;
                                            const PairedLayout::Seg* ps =
                                                seg.lay.seg_of(sx + sb);
                                            if (!ps) continue;
                                            for (int j = 0; j < xb.coords.rows(); ++j)
                                                col.at(seg.offset + ps->offset + j * ps->inner +
                                                           mi,
                                                       0) = xb.coords.at(j, 0);
                                        }
                                        // - x (x) (b m) in the b2 summand
                                        Elem bm = lview.act_left(b1, b2, be, me);
                                        for (const auto& seg : lay) {
                                            if (seg.b != b2) continue;
                                            const PairedLayout::Seg* ps = seg.lay.seg_of(sx);
                                            if (!ps) continue;
                                            for (int j = 0; j < bm.coords.rows(); ++j) {
                                                int rowi =
                                                    seg.offset + ps->offset + xi * ps->inner + j;
                                                col.at(rowi, 0) =
                                                    f.sub(col.at(rowi, 0), bm.coords.at(j, 0));
                                            }
                                        }
                                        if (!col.is_zero()) nu_cols[deg].push_back(std::move(col));
                                    }
            }

        GradedSpace vspace;
        std::map<int, Matrix> vd;
        std::map<int, Matrix> aproj, asect;
        std::map<int, Matrix> img;
        for (auto& [deg, dm] : dom0.space()) {
            Matrix cols(f, dm, static_cast<int>(nu_cols[deg].size()));
            for (std::size_t c = 0; c < nu_cols[deg].size(); ++c)
                for (int i = 0; i < dm; ++i)
                    cols.at(i, static_cast<int>(c)) = nu_cols[deg][c].at(i, 0);
            Matrix ib = image_basis(cols);
            img[deg] = ib;
            Matrix cmpl = quotient_basis(ib, Matrix::identity(f, dm));
            Matrix basis = hstack(ib, cmpl);
            Matrix binv = inverse(basis);
            Matrix p(f, cmpl.cols(), dm);
            for (int i = 0; i < cmpl.cols(); ++i)
                for (int j = 0; j < dm; ++j) p.at(i, j) = binv.at(ib.cols() + i, j);
            if (cmpl.cols() > 0) vspace[deg] = cmpl.cols();
            aproj[deg] = std::move(p);
            asect[deg] = std::move(cmpl);
            ct.layout[a][deg] = layout_at(deg);
        }
        // the image of nu must be d-stable (nu is a chain map)
        for (auto& [deg, ib] : img) {
            if (ib.cols() == 0) continue;
            Matrix dimg = mul(dom0.d(deg), ib);
            auto it2 = img.find(deg + 1);
            Matrix next = (it2 != img.end()) ? it2->second : Matrix(f, dom0.dim(deg + 1), 0);
            require(rank(hstack(next, dimg)) == rank(next), errc::internal,
                    "tensor_over_category: nu image not d-stable");
        }
        auto proj_at = [&](int deg) {
            auto it2 = aproj.find(deg);
            return it2 != aproj.end() ? it2->second : Matrix(f, 0, dom0.dim(deg));
        };
        auto sect_at = [&](int deg) {
            auto it2 = asect.find(deg);
            return it2 != asect.end() ? it2->second : Matrix(f, dom0.dim(deg), 0);
        };
        for (auto& [deg, dmv] : vspace) {
            (void)dmv;
            if (dim_at(vspace, deg + 1) == 0) continue;
            Matrix d = mul(proj_at(deg + 1), mul(dom0.d(deg), sect_at(deg)));
            if (!d.is_zero()) vd[deg] = std::move(d);
        }
        ct.module.value[a] = validate_ncomplex(f, vspace, std::move(vd));
        ct.proj[a] = std::move(aproj);
        sect[a] = std::move(asect);
    }

    // right A-action: lift, act on the M factor, project
    for (const auto& a1 : acat.objects)
        for (const auto& a2 : acat.objects) {
            Table t;
            const NComplex& hom = acat.hom_at(a2, a1);
            const NComplex& v1 = ct.module.value_at(a1);
            const NComplex& v2 = ct.module.value_at(a2);
            for (auto& [hd, hdm] : hom.space())
                for (int hi = 0; hi < hdm; ++hi) {
                    Elem he = acat.basis_elem(a2, a1, hd, hi);
                    for (auto& [sd, sdm] : v1.space()) {
                        if (v2.dim(sd + hd) == 0) continue;
                        const Matrix& s1 = sect.at(a1).at(sd);
                        const Dom0Layout& lay1 = ct.layout.at(a1).at(sd);
                        Dom0Layout lay2;
                        {
                            int off = 0;
                            for (const auto& b : bcat.objects) {
                                Dom0Seg seg;
                                seg.b = b;
                                seg.lay = tensor_layout(x.value_at(b), m.value_at(a2, b), sd + hd);
                                seg.offset = off;
                                off += seg.lay.total;
                                lay2.push_back(std::move(seg));
                            }
                        }
                        int dom2dim = ct.dom0.at(a2).dim(sd + hd);
                        for (int zi = 0; zi < sdm; ++zi) {
                            Matrix lifted = s1.col(zi);
                            Matrix out(f, dom2dim, 1);
                            for (const auto& seg : lay1) {
                                NdgModule rview = right_module_view(m.right_base, m, seg.b);
                                const Dom0Seg* seg2 = nullptr;
                                for (const auto& s2 : lay2)
                                    if (s2.b == seg.b) seg2 = &s2;
                                require(seg2 != nullptr, errc::internal, "missing dom0 segment");
                                for (const auto& ps : seg.lay.segs) {
                                    GradedMap ract;
                                    bool have = false;
                                    const PairedLayout::Seg* pd = seg2->lay.seg_of(ps.l);
                                    if (!pd) continue;
                                    for (int ui = 0; ui < ps.outer; ++ui)
                                        for (int ri = 0; ri < ps.inner; ++ri) {
                                            Scalar c = lifted.at(
                                                seg.offset + ps.offset + ui * ps.inner + ri, 0);
                                            if (f.is_zero(c)) continue;
                                            if (!have) {
                                                ract = right_action_map(rview, a1, a2, he);
                                                have = true;
                                            }
                                            Matrix act = ract.at(sd - ps.l);
                                            for (int j = 0; j < act.rows(); ++j) {
                                                int rowi = seg2->offset + pd->offset +
                                                           ui * pd->inner + j;
                                                out.at(rowi, 0) =
                                                    f.add(out.at(rowi, 0),
                                                          f.mul(c, act.at(j, ri)));
                                            }
                                        }
                                }
                            }
                            Matrix col = mul(ct.proj.at(a2).at(sd + hd), out);
                            if (!col.is_zero()) t[{sd, zi, hd, hi}] = col;
                        }
                    }
                }
            if (!t.empty()) ct.module.act[{a1, a2}] = std::move(t);
        }
    ct.module = validate_module(std::move(ct.module));
    return ct;
}

/// Coordinates of the class [x (x) m] in (X (x)_B M)(a).
inline Matrix cat_tensor_elem(const CatTensor& ct, const NdgModule& x, const std::string& a,
                              const std::string& b, const Elem& xe, const Elem& me) {
    const Field& f = x.base->field;
    int deg = xe.degree + me.degree;
    auto lit = ct.layout.at(a).find(deg);
    const NComplex& v = ct.module.value_at(a);
    if (lit == ct.layout.at(a).end()) return Matrix(f, v.dim(deg), 1);
    Matrix dom(f, ct.dom0.at(a).dim(deg), 1);
    for (const auto& seg : lit->second) {
        if (seg.b != b) continue;
        const PairedLayout::Seg* ps = seg.lay.seg_of(xe.degree);
        if (!ps) continue;
        for (int ui = 0; ui < xe.coords.rows(); ++ui)
            for (int ri = 0; ri < me.coords.rows(); ++ri)
                dom.at(seg.offset + ps->offset + ui * ps->inner + ri, 0) =
                    f.mul(xe.coords.at(ui, 0), me.coords.at(ri, 0));
    }
    auto pit = ct.proj.at(a).find(deg);
    if (pit == ct.proj.at(a).end()) return Matrix(f, v.dim(deg), 1);
    return mul(pit->second, dom);
}

/// Hom_A(M, Y) as a right B-module: value(b) = module_hom_complex(M(-,b), Y),
/// with (F b)_A(m) = F_A(b m).
struct CatHom {
    NdgModule module;
    std::map<std::string, ModuleHom> hom_data;   // per object b
    std::map<std::string, NdgModule> views;      // M(-, b) as right A-modules
};

inline CatHom hom_over_category(const NdgBimodule& m, const NdgModule& y) {
    require(y.side == Side::right, errc::bad_arguments, "hom_over_category: Y must be right");
    require(y.base == m.right_base || y.base->objects == m.right_base->objects,
            errc::base_mismatch, "hom_over_category: Y is not over the bimodule's right category");
    const NdgCategory& bcat = *m.left_base;

    CatHom ch;
    ch.module.side = Side::right;
    ch.module.base = m.left_base;
    for (const auto& b : bcat.objects) {
        ch.views.emplace(b, right_module_view(m.right_base, m, b));
        ch.hom_data.emplace(b, module_hom_complex(ch.views.at(b), y));
        ch.module.value[b] = ch.hom_data.at(b).cx;
    }
    // action: (F b)_A(m) = F_A(b m)
    for (const auto& b1 : bcat.objects)
        for (const auto& b2 : bcat.objects) {
            Table t;
            const NComplex& hom = bcat.hom_at(b2, b1);
            const NComplex& v1 = ch.module.value_at(b1);
            for (auto& [hd, hdm] : hom.space())
                for (int hi = 0; hi < hdm; ++hi) {
                    Elem he = bcat.basis_elem(b2, b1, hd, hi);
                    for (auto& [fd, fdm] : v1.space()) {
                        for (int fi = 0; fi < fdm; ++fi) {
                            Matrix raw =
                                ch.hom_data.at(b1).basis.at(fd).col(fi);
                            auto fam = module_family_from_raw(ch.views.at(b1), y, fd,
                                                              ch.hom_data.at(b1), raw);
                            // new family over M(-, b2): m |-> F_A(b m)
                            std::map<std::string, GradedMap> nfam;
                            for (const auto& a : m.right_base->objects) {
                                NdgModule lv = left_module_view(m.left_base, m, a);
                                GradedMap bm = left_action_map(lv, b2, b1, he);
                                nfam.emplace(a, compose(fam.at(a), bm));
                            }
                            Matrix col = module_family_coords(ch.views.at(b2), y, fd + hd,
                                                              ch.hom_data.at(b2), nfam);
                            if (!col.is_zero()) t[{fd, fi, hd, hi}] = col;
                        }
                    }
                }
            if (!t.empty()) ch.module.act[{b1, b2}] = std::move(t);
        }
    ch.module = validate_module(std::move(ch.module));
    return ch;
}

/// Theorem-level check that alpha(F)_B(x)_A(m) = F_A([x (x) m]) is an
/// isomorphism of N-complexes Hom_A(X (x)_B M, Y) -> Hom_B(X, Hom_A(M, Y)),
/// and reports its restrictions to chain-map sets and homotopy classes.
struct AdjunctionReport {
    bool dims_match = true;
    bool invertible = true;
    bool chain_commutes = true;
    std::map<int, int> lhs_dims, rhs_dims;
    int lhs_z0 = 0, rhs_z0 = 0;  // chain-map space dims
    int lhs_h0 = 0, rhs_h0 = 0;  // homotopy-class dims
    bool ok() const { return dims_match && invertible && chain_commutes; }
};

inline AdjunctionReport adjunction_check(const NdgModule& x, const NdgBimodule& m,
                                         const NdgModule& y) {
    const Field& f = x.base->field;
    CatTensor xm = tensor_over_category(x, m);
    CatHom hmy = hom_over_category(m, y);
    ModuleHom lhs = module_hom_complex(xm.module, y);
    ModuleHom rhs = module_hom_complex(x, hmy.module);

    AdjunctionReport rep;
    for (auto& [i, dm] : lhs.cx.space()) rep.lhs_dims[i] = dm;
    for (auto& [i, dm] : rhs.cx.space()) rep.rhs_dims[i] = dm;
    rep.dims_match = lhs.cx.space() == rhs.cx.space();
    if (!rep.dims_match) return rep;

    std::map<int, Matrix> alpha;
    for (auto& [s, dm] : lhs.cx.space()) {
        Matrix a(f, dim_at(rhs.cx.space(), s), dm);
        for (int k = 0; k < dm; ++k) {
            Matrix raw = lhs.basis.at(s).col(k);
            auto fam = module_family_from_raw(xm.module, y, s, lhs, raw);
            // build alpha(F): for each b, a map X(b) -> Hom_A(M,Y)(b)
            std::map<std::string, GradedMap> g;
            for (const auto& b : x.base->objects) {
                const NComplex& xb = x.value_at(b);
                const NComplex& hb = hmy.module.value_at(b);
                GradedMap gb(f, s, xb.space(), hb.space());
                for (auto& [sx, sxd] : xb.space()) {
                    Matrix comp(f, hb.dim(sx + s), sxd);
                    for (int xi = 0; xi < sxd; ++xi) {
                        Elem xe = x.basis_elem(b, sx, xi);
                        // the family m |-> F_A([x (x) m]) over A
                        std::map<std::string, GradedMap> hfam;
                        for (const auto& a2 : m.right_base->objects) {
                            const NComplex& ma = m.value_at(a2, b);
                            const NComplex& ya = y.value_at(a2);
                            GradedMap ha(f, sx + s, ma.space(), ya.space());
                            for (auto& [sm, smd] : ma.space()) {
                                Matrix block(f, ya.dim(sm + sx + s), smd);
                                for (int mi = 0; mi < smd; ++mi) {
                                    Elem me{sm, Matrix(f, smd, 1)};
                                    me.coords.at(mi, 0) = f.one();
                                    Matrix cls = cat_tensor_elem(xm, x, a2, b, xe, me);
                                    Matrix img = mul(fam.at(a2).at(sx + sm), cls);
                                    for (int r = 0; r < img.rows(); ++r)
                                        block.at(r, mi) = img.at(r, 0);
                                }
                                ha.set(sm, std::move(block));
                            }
                            hfam.emplace(a2, std::move(ha));
                        }
                        Matrix hcol = module_family_coords(hmy.views.at(b), y, sx + s,
                                                           hmy.hom_data.at(b), hfam);
                        for (int r = 0; r < hcol.rows(); ++r) comp.at(r, xi) = hcol.at(r, 0);
                    }
                    gb.set(sx, std::move(comp));
                }
                g.emplace(b, std::move(gb));
            }
            Matrix col = module_family_coords(x, hmy.module, s, rhs, g);
            for (int r = 0; r < col.rows(); ++r) a.at(r, k) = col.at(r, 0);
        }
        rep.invertible = rep.invertible && (rank(a) == dm);
        alpha[s] = std::move(a);
    }
    auto alpha_at = [&](int s) {
        auto it = alpha.find(s);
        return it != alpha.end() ? it->second
                                 : Matrix(f, dim_at(rhs.cx.space(), s), dim_at(lhs.cx.space(), s));
    };
    for (auto& [s, dm] : lhs.cx.space()) {
        (void)dm;
        if (mul(rhs.cx.d(s), alpha_at(s)) != mul(alpha_at(s + 1), lhs.cx.d(s)))
            rep.chain_commutes = false;
    }
    rep.lhs_z0 = kernel_basis(lhs.cx.d(0)).cols();
    rep.rhs_z0 = kernel_basis(rhs.cx.d(0)).cols();
    if (!lhs.cx.space().empty()) rep.lhs_h0 = homology(lhs.cx, 0, 1).h_dim;
    if (!rhs.cx.space().empty()) rep.rhs_h0 = homology(rhs.cx, 0, 1).h_dim;
    return rep;
}

/// dim H^n of the module hom complex at amplitude 1 (susp0) or N-1 (susp1).
inline int khom_module(const NdgModule& x, const NdgModule& y, int n, KhomFlavor flavor) {
    ModuleHom mh = module_hom_complex(x, y);
    if (mh.cx.space().empty()) return 0;
    int r = (flavor == KhomFlavor::susp0) ? 1 : x.base->field.N() - 1;
    return homology(mh.cx, n, r).h_dim;
}

struct DualGeneratorVerdict {
    int lhs = 0;  // dim Hom_K(X, theta^n D(^A))
    int rhs = 0;  // dim H^{-n}_(N-1) X(A)
    bool ok() const { return lhs == rhs; }
};

/// Verifies that the dual representables co-represent amplitude homology:
/// dim Hom_K(X, theta^n D(^A)) = dim H^{-n}_(N-1) X(A). Dualizing against
/// E = k swaps the amplitude 1 <-> N-1 and negates the degree, which is
/// where the -n and N-1 on the right come from.
inline DualGeneratorVerdict khom_via_dual(const NdgModule& x, const std::string& a, int n) {
    DualGeneratorVerdict v;
    NdgModule co = representable(x.base, a, Side::left);
    NdgModule dual = dual_module(co);
    NdgModule target = module_functor(dual, ModuleFunctor::theta, n);
    v.lhs = khom_module(x, target, 0, KhomFlavor::susp0);
    const NComplex& xa = x.value_at(a);
    v.rhs = xa.space().empty() ? 0 : homology(xa, -n, x.base->field.N() - 1).h_dim;
    return v;
}

} // namespace ndg
