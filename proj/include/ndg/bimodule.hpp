#pragma once

#include "ndg/module.hpp"

namespace ndg {

/// An NDG B-A-bimodule: for each pair of objects a complex M(A,B), a left
/// B-action (key (b1, b2, a): f in B(b1,b2) acting M(a,b1) -> M(a,b2)) and a
/// right A-action (key (a1, a2, b): M(a1,b) x A(a2,a1) -> M(a2,b)), with
/// middle associativity f(mg) = (fm)g.
struct NdgBimodule {
    std::shared_ptr<const NdgCategory> left_base;   // B
    std::shared_ptr<const NdgCategory> right_base;  // A
    std::map<std::pair<std::string, std::string>, NComplex> value;  // (a, b) -> M(a,b)
    std::map<std::tuple<std::string, std::string, std::string>, Table> lact;  // (b1,b2,a)
    std::map<std::tuple<std::string, std::string, std::string>, Table> ract;  // (a1,a2,b)

    const NComplex& value_at(const std::string& a, const std::string& b) const {
        auto it = value.find({a, b});
        require(it != value.end(), errc::unknown_object,
                "bimodule has no value at (" + a + ", " + b + ")");
        return it->second;
    }
};

/// The right A-module M(-, b).
inline NdgModule right_module_view(std::shared_ptr<const NdgCategory> right_base,
                                   const NdgBimodule& m, const std::string& b) {
    NdgModule v;
    v.side = Side::right;
    v.base = right_base;
    for (const auto& a : right_base->objects) v.value[a] = m.value_at(a, b);
    for (const auto& a1 : right_base->objects)
        for (const auto& a2 : right_base->objects) {
            auto it = m.ract.find({a1, a2, b});
            if (it != m.ract.end()) v.act[{a1, a2}] = it->second;
        }
    return v;
}

/// The left B-module M(a, -).
inline NdgModule left_module_view(std::shared_ptr<const NdgCategory> left_base,
                                  const NdgBimodule& m, const std::string& a) {
    NdgModule v;
    v.side = Side::left;
    v.base = left_base;
    for (const auto& b : left_base->objects) v.value[b] = m.value_at(a, b);
    for (const auto& b1 : left_base->objects)
        for (const auto& b2 : left_base->objects) {
            auto it = m.lact.find({b1, b2, a});
            if (it != m.lact.end()) v.act[{b1, b2}] = it->second;
        }
    return v;
}

inline NdgBimodule validate_bimodule(NdgBimodule m, std::shared_ptr<const NdgCategory> bcat,
                                     std::shared_ptr<const NdgCategory> acat) {
    m.left_base = bcat;
    m.right_base = acat;
    for (const auto& a : acat->objects)
        for (const auto& b : bcat->objects)
            require(m.value.find({a, b}) != m.value.end(), errc::validation_error,
                    "bimodule missing value at (" + a + ", " + b + ")");
    // objectwise module axioms via the two views
    for (const auto& b : bcat->objects) validate_module(right_module_view(acat, m, b));
    for (const auto& a : acat->objects) validate_module(left_module_view(bcat, m, a));

    // middle associativity f(mg) = (fm)g on basis triples
    const Field& f = acat->field;
    for (const auto& b1 : bcat->objects)
        for (const auto& b2 : bcat->objects)
            for (const auto& a1 : acat->objects)
                for (const auto& a2 : acat->objects) {
                    const NComplex& homb = bcat->hom_at(b1, b2);
                    const NComplex& homa = acat->hom_at(a2, a1);
                    const NComplex& mid = m.value_at(a1, b1);
                    NdgModule lv1 = left_module_view(bcat, m, a1);
                    NdgModule lv2 = left_module_view(bcat, m, a2);
                    NdgModule rv1 = right_module_view(acat, m, b1);
                    NdgModule rv2 = right_module_view(acat, m, b2);
                    for (auto& [fd, fdm] : homb.space())
                        for (int fi = 0; fi < fdm; ++fi)
                            for (auto& [md, mdm] : mid.space())
                                for (int mi = 0; mi < mdm; ++mi)
                                    for (auto& [gd, gdm] : homa.space())
                                        for (int gi = 0; gi < gdm; ++gi) {
                                            Elem fe = bcat->basis_elem(b1, b2, fd, fi);
                                            Elem me{md, Matrix(f, mdm, 1)};
                                            me.coords.at(mi, 0) = f.one();
                                            Elem ge = acat->basis_elem(a2, a1, gd, gi);
                                            Elem mg = rv1.act_right(a1, a2, me, ge);
                                            Elem l = lv2.act_left(b1, b2, fe, mg);
                                            Elem fm = lv1.act_left(b1, b2, fe, me);
                                            Elem r = rv2.act_right(a1, a2, fm, ge);
                                            require(l.coords == r.coords, errc::assoc_violation,
                                                    "f(mg) != (fm)g at (" + b1 + "," + b2 + "," +
                                                        a1 + "," + a2 + ")");
                                        }
                }
    return m;
}

/// The regular A-A-bimodule: value(a, b) = hom(a, b), both actions are
/// composition.
inline NdgBimodule regular_bimodule(std::shared_ptr<const NdgCategory> cat) {
    NdgBimodule m;
    const Field& f = cat->field;
    for (const auto& a : cat->objects)
        for (const auto& b : cat->objects) m.value[{a, b}] = cat->hom_at(a, b);
    for (const auto& b1 : cat->objects)
        for (const auto& b2 : cat->objects)
            for (const auto& a : cat->objects) {
                Table t;
                const NComplex& fs = cat->hom_at(b1, b2);
                const NComplex& ms = cat->hom_at(a, b1);
                for (auto& [fd, fdm] : fs.space())
                    for (int fi = 0; fi < fdm; ++fi)
                        for (auto& [md, mdm] : ms.space())
                            for (int mi = 0; mi < mdm; ++mi) {
                                Elem r = cat->compose(a, b1, b2, cat->basis_elem(b1, b2, fd, fi),
                                                      cat->basis_elem(a, b1, md, mi));
                                if (!r.coords.is_zero()) t[{fd, fi, md, mi}] = r.coords;
                            }
                if (!t.empty()) m.lact[{b1, b2, a}] = std::move(t);
            }
    for (const auto& a1 : cat->objects)
        for (const auto& a2 : cat->objects)
            for (const auto& b : cat->objects) {
                Table t;
                const NComplex& ms = cat->hom_at(a1, b);
                const NComplex& gs = cat->hom_at(a2, a1);
                for (auto& [md, mdm] : ms.space())
                    for (int mi = 0; mi < mdm; ++mi)
                        for (auto& [gd, gdm] : gs.space())
                            for (int gi = 0; gi < gdm; ++gi) {
                                Elem r = cat->compose(a2, a1, b, cat->basis_elem(a1, b, md, mi),
                                                      cat->basis_elem(a2, a1, gd, gi));
                                if (!r.coords.is_zero()) t[{md, mi, gd, gi}] = r.coords;
                            }
                if (!t.empty()) m.ract[{a1, a2, b}] = std::move(t);
            }
    (void)f;
    return validate_bimodule(std::move(m), cat, cat);
}

/// Outer product of a left B-module and a right A-module:
/// M(a, b) = L(b) (x)^{.q} R(a), f.(u (x) m) = (f u) (x) m, (u (x) m).g = u (x) (m g).
inline NdgBimodule outer_bimodule(const NdgModule& l, const NdgModule& r) {
    require(l.side == Side::left && r.side == Side::right, errc::bad_arguments,
            "outer_bimodule takes (left, right)");
    const Field& f = l.base->field;
    NdgBimodule m;
    for (const auto& b : l.base->objects)
        for (const auto& a : r.base->objects)
            m.value[{a, b}] = tensor_complex(l.value_at(b), r.value_at(a));
    // left action on the L factor
    for (const auto& b1 : l.base->objects)
        for (const auto& b2 : l.base->objects)
            for (const auto& a : r.base->objects) {
                Table t;
                const NComplex& hom = l.base->hom_at(b1, b2);
                const NComplex& src = m.value_at(a, b1);
                const NComplex& dst = m.value_at(a, b2);
                for (auto& [hd, hdm] : hom.space())
                    for (int hi = 0; hi < hdm; ++hi) {
                        Elem he = l.base->basis_elem(b1, b2, hd, hi);
                        GradedMap lf = left_action_map(l, b1, b2, he);
                        for (auto& [sd, sdm] : src.space()) {
                            (void)sdm;
                            PairedLayout slay = tensor_layout(l.value_at(b1), r.value_at(a), sd);
                            PairedLayout dlay =
                                tensor_layout(l.value_at(b2), r.value_at(a), sd + hd);
                            for (const auto& seg : slay.segs) {
                                Matrix act = lf.at(seg.l);  // L(b1)^l -> L(b2)^{l+hd}
                                const PairedLayout::Seg* dseg = dlay.seg_of(seg.l + hd);
                                if (!dseg) continue;
                                for (int ui = 0; ui < seg.outer; ++ui)
                                    for (int ri = 0; ri < seg.inner; ++ri) {
                                        Matrix col(f, dst.dim(sd + hd), 1);
                                        for (int j = 0; j < act.rows(); ++j)
                                            col.at(dseg->offset + j * dseg->inner + ri, 0) =
                                                act.at(j, ui);
                                        if (!col.is_zero())
                                            t[{hd, hi, sd, seg.offset + ui * seg.inner + ri}] =
                                                col;
                                    }
                            }
                        }
                    }
                if (!t.empty()) m.lact[{b1, b2, a}] = std::move(t);
            }
    // right action on the R factor
    for (const auto& a1 : r.base->objects)
        for (const auto& a2 : r.base->objects)
            for (const auto& b : l.base->objects) {
                Table t;
                const NComplex& hom = r.base->hom_at(a2, a1);
                const NComplex& src = m.value_at(a1, b);
                const NComplex& dst = m.value_at(a2, b);
                for (auto& [hd, hdm] : hom.space())
                    for (int hi = 0; hi < hdm; ++hi) {
                        Elem he = r.base->basis_elem(a2, a1, hd, hi);
                        GradedMap rf = right_action_map(r, a1, a2, he);
                        for (auto& [sd, sdm] : src.space()) {
                            (void)sdm;
                            PairedLayout slay = tensor_layout(l.value_at(b), r.value_at(a1), sd);
                            PairedLayout dlay =
                                tensor_layout(l.value_at(b), r.value_at(a2), sd + hd);
                            for (const auto& seg : slay.segs) {
                                Matrix act = rf.at(sd - seg.l);  // R(a1)^{sd-l} -> R(a2)^{...}
                                const PairedLayout::Seg* dseg = dlay.seg_of(seg.l);
                                if (!dseg) continue;
                                for (int ui = 0; ui < seg.outer; ++ui)
                                    for (int ri = 0; ri < seg.inner; ++ri) {
                                        Matrix col(f, dst.dim(sd + hd), 1);
                                        for (int j = 0; j < act.rows(); ++j)
                                            col.at(dseg->offset + ui * dseg->inner + j, 0) =
                                                act.at(j, ri);
                                        if (!col.is_zero())
                                            t[{sd, seg.offset + ui * seg.inner + ri, hd, hi}] =
                                                col;
                                    }
                            }
                        }
                    }
                if (!t.empty()) m.ract[{a1, a2, b}] = std::move(t);
            }
    return validate_bimodule(std::move(m), l.base, r.base);
}

} // namespace ndg
