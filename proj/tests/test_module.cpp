#include <catch2/catch_amalgamated.hpp>

#include "ndg/cat_ops.hpp"
#include "ndg/generate.hpp"
#include "test_util.hpp"

using namespace ndg;
using namespace ndgtest;

namespace {

std::shared_ptr<const NdgCategory> make_shared_cat(NdgCategory c) {
    return std::make_shared<const NdgCategory>(std::move(c));
}

bool modules_equal(const NdgModule& a, const NdgModule& b) {
    if (a.side != b.side) return false;
    const NdgCategory& cat = *a.base;
    const Field& f = cat.field;
    for (const auto& o : cat.objects)
        if (!(a.value_at(o) == b.value_at(o))) return false;
    for (const auto& a1 : cat.objects)
        for (const auto& a2 : cat.objects) {
            const NComplex& hom =
                (a.side == Side::right) ? cat.hom_at(a2, a1) : cat.hom_at(a1, a2);
            const NComplex& v1 = a.value_at(a1);
            for (auto& [hd, hdm] : hom.space())
                for (int hi = 0; hi < hdm; ++hi)
                    for (auto& [vd, vdm] : v1.space())
                        for (int vi = 0; vi < vdm; ++vi) {
                            Elem he{hd, Matrix(f, hdm, 1)};
                            he.coords.at(hi, 0) = f.one();
                            Elem xe{vd, Matrix(f, vdm, 1)};
                            xe.coords.at(vi, 0) = f.one();
                            Elem ra = (a.side == Side::right) ? a.act_right(a1, a2, xe, he)
                                                              : a.act_left(a1, a2, he, xe);
                            Elem rb = (b.side == Side::right) ? b.act_right(a1, a2, xe, he)
                                                              : b.act_left(a1, a2, he, xe);
                            if (!(ra.coords == rb.coords)) return false;
                        }
        }
    return true;
}

} // namespace

TEST_CASE("representable over category k is k in degree 0") {
    Field f = prime_field(7, 3, 2);
    auto cat = make_shared_cat(category_k(f));
    NdgModule m = representable(cat, "*", Side::right);
    CHECK(m.value_at("*") == unit_complex(f));
}

TEST_CASE("representable over the truncated polynomial algebra has dims 1 in 0..N") {
    for (int N : {2, 3, 4}) {
        Field f = prime_field(good_prime(N), N);
        auto cat = make_shared_cat(truncated_polynomial_category(f));
        NdgModule m = representable(cat, "*", Side::right);
        for (int i = 0; i <= N; ++i) CHECK(m.value_at("*").dim(i) == 1);
        NdgModule l = representable(cat, "*", Side::left);
        for (int i = 0; i <= N; ++i) CHECK(l.value_at("*").dim(i) == 1);
    }
}

TEST_CASE("representables of random valid categories pass the axiom checker") {
    for (int N : {2, 3}) {
        Field f = prime_field(good_prime(N), N);
        Rng rng(150 + N);
        for (int t = 0; t < 4; ++t) {
            NComplex v = random_complex(f, rng, {2, 1, -1, 1});
            auto c1 = make_shared_cat(trivial_extension_category(f, v));
            auto c2 = make_shared_cat(two_object_category(f, v));
            for (auto& cat : {c1, c2})
                for (const auto& obj : cat->objects) {
                    CHECK_NOTHROW(representable(cat, obj, Side::right));
                    CHECK_NOTHROW(representable(cat, obj, Side::left));
                }
        }
    }
}

TEST_CASE("dual module basics") {
    Field f = prime_field(7, 3, 2);
    auto k = make_shared_cat(category_k(f));
    NdgModule x = representable(k, "*", Side::left);
    NdgModule d = dual_module(x);
    CHECK(d.side == Side::right);
    CHECK(d.value_at("*") == unit_complex(f));

    auto cat = make_shared_cat(truncated_polynomial_category(f));
    NdgModule co = representable(cat, "*", Side::left);
    NdgModule dd = dual_module(co);  // validates internally
    const NComplex& v = co.value_at("*");
    for (auto& [i, dm] : v.space()) CHECK(dd.value_at("*").dim(-i) == dm);
}

TEST_CASE("module_hom_complex over category k is the plain hom complex") {
    Field f = prime_field(7, 3, 2);
    auto k = make_shared_cat(category_k(f));
    Rng rng(7);
    for (int t = 0; t < 4; ++t) {
        NComplex xv = random_complex(f, rng, {2, 1, -1, 1});
        NComplex yv = random_complex(f, rng, {2, 1, -1, 1});
        NdgModule x;
        x.side = Side::right;
        x.base = k;
        x.value["*"] = xv;
        // action of 1 on each basis vector
        Table t1;
        for (auto& [deg, dm] : xv.space())
            for (int i = 0; i < dm; ++i) {
                Matrix col(f, dm, 1);
                col.at(i, 0) = f.one();
                t1[{deg, i, 0, 0}] = col;
            }
        x.act[{std::string("*"), std::string("*")}] = t1;
        x = validate_module(std::move(x));
        NdgModule y = x;
        y.value["*"] = yv;
        y.act.clear();
        Table t2;
        for (auto& [deg, dm] : yv.space())
            for (int i = 0; i < dm; ++i) {
                Matrix col(f, dm, 1);
                col.at(i, 0) = f.one();
                t2[{deg, i, 0, 0}] = col;
            }
        y.act[{std::string("*"), std::string("*")}] = t2;
        y = validate_module(std::move(y));

        ModuleHom mh = module_hom_complex(x, y);
        CHECK(mh.cx == hom_complex(xv, yv));
    }
}

TEST_CASE("Yoneda: module_hom_complex(A^, X) is isomorphic to X(A)") {
    for (int N : {2, 3}) {
        Field f = prime_field(good_prime(N), N);
        Rng rng(160 + N);
        std::vector<std::shared_ptr<const NdgCategory>> cats;
        cats.push_back(make_shared_cat(truncated_polynomial_category(f)));
        cats.push_back(make_shared_cat(two_object_category(f, random_complex(f, rng, {2, 1, -1, 0}))));
        for (auto& cat : cats) {
            for (const auto& aobj : cat->objects) {
                NdgModule rep = representable(cat, aobj, Side::right);
                // X: mix of shifted representables
                NdgModule x = module_functor(representable(cat, cat->objects.front(), Side::right),
                                             ModuleFunctor::theta, 1);
                x = module_direct_sum(x, rep);
                ModuleHom mh = module_hom_complex(rep, x);
                const NComplex& xa = x.value_at(aobj);
                REQUIRE(mh.cx.space() == xa.space());
                // explicit iso F |-> F_A(1_A), verified invertible + chain
                Elem unit = cat->unit_elem(aobj);
                std::map<int, Matrix> phi;
                for (auto& [i, dm] : mh.cx.space()) {
                    Matrix p(f, xa.dim(i), dm);
                    for (int k = 0; k < dm; ++k) {
                        Matrix raw = mh.basis.at(i).col(k);
                        auto fam = module_family_from_raw(rep, x, i, mh, raw);
                        Matrix val = mul(fam.at(aobj).at(0), unit.coords);
                        for (int r = 0; r < val.rows(); ++r) p.at(r, k) = val.at(r, 0);
                    }
                    phi[i] = std::move(p);
                }
                for (auto& [i, dm] : mh.cx.space()) {
                    CHECK(rank(phi[i]) == dm);
                    if (dim_at(mh.cx.space(), i + 1) > 0)
                        CHECK(mul(xa.d(i), phi[i]) == mul(phi[i + 1], mh.cx.d(i)));
                }
            }
        }
    }
}

TEST_CASE("endomorphisms of the truncated-algebra representable recover the algebra") {
    for (int N : {2, 3, 4}) {
        Field f = prime_field(good_prime(N), N);
        auto cat = make_shared_cat(truncated_polynomial_category(f));
        NdgModule rep = representable(cat, "*", Side::right);
        ModuleHom mh = module_hom_complex(rep, rep);
        CHECK(mh.cx.space() == cat->hom_at("*", "*").space());
        int total = 0;
        for (auto& [i, dm] : mh.cx.space()) total += dm;
        CHECK(total == N + 1);
    }
}

TEST_CASE("module functors over the category k coincide with the complex-level ops") {
    Field f = prime_field(7, 3, 2);
    auto k = make_shared_cat(category_k(f));
    Rng rng(14);
    NComplex xv = random_complex(f, rng, {2, 1, -1, 1});
    NdgModule x;
    x.side = Side::right;
    x.base = k;
    x.value["*"] = xv;
    Table t1;
    for (auto& [deg, dm] : xv.space())
        for (int i = 0; i < dm; ++i) {
            Matrix col(f, dm, 1);
            col.at(i, 0) = f.one();
            t1[{deg, i, 0, 0}] = col;
        }
    x.act[{std::string("*"), std::string("*")}] = t1;
    x = validate_module(std::move(x));

    CHECK(module_functor(x, ModuleFunctor::theta, 2).value_at("*") == theta_shift(xv, 2));
    CHECK(module_functor(x, ModuleFunctor::suspend).value_at("*") == suspend(xv));
    CHECK(module_functor(x, ModuleFunctor::desuspend).value_at("*") == desuspend(xv));
    CHECK(module_functor(x, ModuleFunctor::q_shift, 1).value_at("*") ==
          q_functor(f, 1, xv.space()));
}

TEST_CASE("module functors validate and Sigma = Sigma^{-1} theta^N on modules") {
    for (int N : {2, 3}) {
        Field f = prime_field(good_prime(N), N);
        Rng rng(170 + N);
        auto cat = make_shared_cat(truncated_polynomial_category(f));
        NdgModule x = representable(cat, "*", Side::right);
        x = module_direct_sum(x, module_functor(x, ModuleFunctor::theta, -1));

        NdgModule sx = module_functor(x, ModuleFunctor::suspend);
        NdgModule sth = module_functor(module_functor(x, ModuleFunctor::theta, N),
                                       ModuleFunctor::desuspend);
        CHECK(modules_equal(sx, sth));

        // q_shift images exist and are objectwise acyclic
        for (int r : {0, N - 1}) {
            NdgModule q = module_functor(x, ModuleFunctor::q_shift, r);
            for (const auto& obj : cat->objects) CHECK(is_acyclic(q.value_at(obj), true));
        }
        (void)rng;
    }
}

TEST_CASE("action matrix identities") {
    for (int N : {2, 3, 4}) {
        Field f = prime_field(good_prime(N), N);
        auto catv = truncated_polynomial_category(f);
        const NdgCategory& cat = catv;
        const std::string o = "*";
        const NComplex& h = cat.hom_at(o, o);
        for (auto& [ad, adm] : h.space())
            for (int ai = 0; ai < adm; ++ai) {
                Elem a = cat.basis_elem(o, o, ad, ai);
                for (int n = -1; n <= 1; ++n) {
                    // (a^n) J^t = J^t (a^{n+1}) + q^n (d(a)^n), sizes N
                    for (int i = 1; i <= N; ++i)
                        for (int j = 1; j <= N; ++j) {
                            Elem lhs = (j + 1 <= N)
                                           ? action_matrix_entry(cat, o, o, a, n, i, j + 1)
                                           : Elem{ad + (j + 1 - i),
                                                  Matrix(f, h.dim(ad + j + 1 - i), 1)};
                            Elem r1 = (i - 1 >= 1)
                                          ? action_matrix_entry(cat, o, o, a, n + 1, i - 1, j)
                                          : Elem{ad + (j - i + 1),
                                                 Matrix(f, h.dim(ad + j - i + 1), 1)};
                            Elem da = cat.d_of(o, o, a);
                            Elem r2 = action_matrix_entry(cat, o, o, da, n, i, j);
                            Matrix rhs = r1.coords + r2.coords.scaled(f.q_pow(n));
                            CHECK(lhs.coords == rhs);
                        }
                    // (a^n)(b^{n+m}) = ((ab)^n) with m = deg a
                    for (auto& [bd, bdm] : h.space())
                        for (int bi = 0; bi < bdm; ++bi) {
                            Elem b = cat.basis_elem(o, o, bd, bi);
                            Elem ab = cat.compose(o, o, o, a, b);
                            for (int i = 1; i <= N; ++i)
                                for (int j = i; j <= N; ++j) {
                                    Elem want = action_matrix_entry(cat, o, o, ab, n, i, j);
                                    Matrix acc(f, want.coords.rows(), 1);
                                    for (int l = i; l <= j; ++l) {
                                        Elem ae = action_matrix_entry(cat, o, o, a, n, i, l);
                                        Elem be =
                                            action_matrix_entry(cat, o, o, b, n + ad, l, j);
                                        Elem prod = cat.compose(o, o, o, ae, be);
                                        acc = acc + prod.coords;
                                    }
                                    CHECK(acc == want.coords);
                                }
                        }
                }
            }
    }
}

TEST_CASE("Q-module iterated-differential identities on elements") {
    // (1) d^i(xa) = sum_l d^{i-l}(x) a^n_{i-l+1, i+1}
    // (2) d^{N-i}(x) a = sum_l d^{N-i-l}(x a^{n-i}_{i, i+l})
    for (int N : {2, 3}) {
        Field f = prime_field(good_prime(N), N);
        auto cat = std::make_shared<const NdgCategory>(truncated_polynomial_category(f));
        const std::string o = "*";
        NdgModule base = representable(cat, o, Side::right);
        for (int r : {0, N - 1}) {
            NdgModule q = module_functor(base, ModuleFunctor::q_shift, r);
            const NComplex& qv = q.value_at(o);
            const NComplex& hom = cat->hom_at(o, o);
            auto dq = [&](Elem e, int times) {
                for (int k = 0; k < times; ++k) e = q.d_of(o, e);
                return e;
            };
            for (auto& [n, ndm] : qv.space())
                for (int xi = 0; xi < ndm; ++xi)
                    for (auto& [ad, adm] : hom.space())
                        for (int ai = 0; ai < adm; ++ai) {
                            Elem x = q.basis_elem(o, n, xi);
                            Elem a = cat->basis_elem(o, o, ad, ai);
                            for (int i = 0; i <= N - 1; ++i) {
                                Elem lhs = dq(q.act_right(o, o, x, a), i);
                                Matrix rhs(f, lhs.coords.rows(), 1);
                                for (int l = 0; l <= i; ++l) {
                                    Elem entry = action_matrix_entry(*cat, o, o, a, n,
                                                                     i - l + 1, i + 1);
                                    Elem term = q.act_right(o, o, dq(x, i - l), entry);
                                    rhs = rhs + term.coords;
                                }
                                CHECK(lhs.coords == rhs);
                            }
                            for (int i = 1; i <= N; ++i) {
                                Elem lhs = q.act_right(o, o, dq(x, N - i), a);
                                Matrix rhs(f, lhs.coords.rows(), 1);
                                for (int l = 0; l <= N - i; ++l) {
                                    Elem entry =
                                        action_matrix_entry(*cat, o, o, a, n - i, i, i + l);
                                    Elem term = dq(q.act_right(o, o, x, entry), N - i - l);
                                    rhs = rhs + term.coords;
                                }
                                CHECK(lhs.coords == rhs);
                            }
                        }
        }
    }
}

TEST_CASE("canonical sequences built objectwise are module morphisms") {
    for (int N : {2, 3}) {
        Field f = prime_field(good_prime(N), N);
        auto cat = std::make_shared<const NdgCategory>(truncated_polynomial_category(f));
        NdgModule x = representable(cat, "*", Side::right);
        x = module_direct_sum(x, module_functor(x, ModuleFunctor::theta, 1));
        NdgModule q0 = module_functor(x, ModuleFunctor::q_shift, 0);
        NdgModule qn1 = module_functor(x, ModuleFunctor::q_shift, N - 1);
        NdgModule sig = module_functor(x, ModuleFunctor::suspend);
        NdgModule sinv = module_functor(x, ModuleFunctor::desuspend);

        std::map<std::string, CanonicalMaps> cm;
        for (const auto& o : cat->objects) {
            cm.emplace(o, canonical_maps(x.value_at(o), /*verify=*/true));
            // module functor values coincide with the objectwise ncx functors
            CHECK(q0.value_at(o) == cm.at(o).q0);
            CHECK(qn1.value_at(o) == cm.at(o).qn1);
            CHECK(sig.value_at(o) == cm.at(o).sigma);
            CHECK(sinv.value_at(o) == cm.at(o).sigma_inv);
        }
        auto natural = [&](const NdgModule& src, const NdgModule& dst, auto&& matrix_at) {
            for (const auto& a1 : cat->objects)
                for (const auto& a2 : cat->objects) {
                    const NComplex& hom = cat->hom_at(a2, a1);
                    const NComplex& v1 = src.value_at(a1);
                    for (auto& [hd, hdm] : hom.space())
                        for (int hi = 0; hi < hdm; ++hi)
                            for (auto& [vd, vdm] : v1.space())
                                for (int vi = 0; vi < vdm; ++vi) {
                                    Elem a = cat->basis_elem(a2, a1, hd, hi);
                                    Elem e = src.basis_elem(a1, vd, vi);
                                    Elem xa = src.act_right(a1, a2, e, a);
                                    Matrix lhs = mul(matrix_at(a2, xa.degree), xa.coords);
                                    Matrix fe = mul(matrix_at(a1, vd), e.coords);
                                    Elem fel{vd, fe};
                                    Matrix rhs =
                                        dst.act_right(a1, a2, fel, a).coords;
                                    if (!(lhs == rhs)) return false;
                                }
                }
            return true;
        };
        CHECK(natural(x, qn1, [&](const std::string& o, int m) { return cm.at(o).eta.at(m); }));
        CHECK(natural(q0, x, [&](const std::string& o, int m) { return cm.at(o).pi.at(m); }));
        CHECK(natural(sinv, q0, [&](const std::string& o, int m) { return cm.at(o).eps.at(m); }));
        CHECK(natural(qn1, sig, [&](const std::string& o, int m) { return cm.at(o).delta.at(m); }));
    }
}

TEST_CASE("khom_module examples") {
    Field f = prime_field(7, 3, 2);
    auto k = make_shared_cat(category_k(f));
    NdgModule x = representable(k, "*", Side::right);
    CHECK(khom_module(x, x, 0, KhomFlavor::susp0) == 1);
    CHECK(khom_module(x, x, 1, KhomFlavor::susp0) == 0);

    // functor-image targets are projective-injective: all khoms vanish
    auto cat = make_shared_cat(truncated_polynomial_category(f));
    NdgModule rep = representable(cat, "*", Side::right);
    NdgModule q = module_functor(rep, ModuleFunctor::q_shift, 1);
    for (int n = -2; n <= 2; ++n) {
        CHECK(khom_module(rep, q, n, KhomFlavor::susp0) == 0);
        CHECK(khom_module(rep, q, n, KhomFlavor::susp1) == 0);
    }
}

TEST_CASE("dual-generator formula on representables") {
    for (int N : {2, 3}) {
        Field f = prime_field(good_prime(N), N);
        auto cat = make_shared_cat(truncated_polynomial_category(f));
        NdgModule rep = representable(cat, "*", Side::right);
        NdgModule x = module_direct_sum(rep, module_functor(rep, ModuleFunctor::theta, 1));
        for (int n = -1; n <= 1; ++n) {
            DualGeneratorVerdict v = khom_via_dual(x, "*", n);
            CHECK(v.ok());
        }
    }
}
