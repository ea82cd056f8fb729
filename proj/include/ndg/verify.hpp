#pragma once

#include <functional>

#include "ndg/generate.hpp"
#include "ndg/report.hpp"
#include "ndg/serialize.hpp"

namespace ndg {

/// Deterministic per-trial stream, independent of trial execution order.
inline Rng trial_rng(std::uint64_t seed, int n, int trial) {
    return Rng(seed + 0x9e3779b97f4a7c15ULL *
                          static_cast<std::uint64_t>(n * 1000003 + trial + 1));
}

struct SuiteOpts {
    int n_lo = 0, n_hi = 0;  // 0 means suite default
    int trials = 0;          // 0 means suite default
    std::uint64_t seed = 0;
    bool all_r = false;
    std::string repro_path = "ndgtool_repro.json";
};

namespace detail {

inline std::uint64_t suite_prime(int n) {
    switch (n) {
        case 2: return 3;
        case 3: return 7;
        case 4: return 5;
        case 5: return 11;
        case 6: return 7;
        case 7: return 29;
        case 8: return 17;
        default: fail(errc::bad_arguments, "no reference prime for N=" + std::to_string(n));
    }
}

/// F_7 or F_11 when N divides p-1, otherwise the reference prime.
inline std::uint64_t contraction_prime(int n, int which) {
    std::uint64_t cand = (which == 0) ? 7 : 11;
    if ((cand - 1) % static_cast<std::uint64_t>(n) == 0) return cand;
    return suite_prime(n);
}

inline Field prime_field_for(int n, std::uint64_t p) {
    FieldSpec s;
    s.kind = FieldKind::prime;
    s.p = p;
    s.N = n;
    return make_field(s);
}

inline Field cyc_field_for(int n) {
    FieldSpec s;
    s.kind = FieldKind::cyclotomic;
    s.N = n;
    return make_field(s);
}

inline void dump_repro(const SuiteOpts& opts, const std::string& suite, int n, int trial,
                       const json& payload) {
    if (opts.repro_path.empty()) return;
    json j;
    j["suite"] = suite;
    j["seed"] = opts.seed;
    j["N"] = n;
    j["trial"] = trial;
    j["payload"] = payload;
    std::ofstream out(opts.repro_path);
    out << j.dump(2) << "\n";
}

/// Lemma 2.2 right-hand side for a hom-complex family.
inline GradedMap hom_power_rhs(const NComplex& u, const NComplex& v, const GradedMap& fam,
                               int n) {
    const Field& f = u.field();
    int r = fam.degree();
    GradedMap acc = zero_map(f, u.space(), v.space(), r + n);
    for (int l = 0; l <= n; ++l) {
        Scalar c = f.mul(f.sign(l),
                         f.mul(f.q_pow(static_cast<long long>(l) * r +
                                       static_cast<long long>(l) * (l - 1) / 2),
                               f.q_binomial(n, l)));
        acc = acc + compose(d_power_map(v, n - l), compose(fam, d_power_map(u, l))).scaled(c);
    }
    return acc;
}

} // namespace detail

// ---------------------------------------------------------------------------
// suite 1: q-identities (Lemmas 1, 2, 4 and [N l] = 0), exhaustive

inline void suite_q_identities(Report& rep, const SuiteOpts& opts) {
    int lo = opts.n_lo ? opts.n_lo : 2, hi = opts.n_hi ? opts.n_hi : 8;
    for (int n = lo; n <= hi; ++n) {
        std::vector<std::pair<std::string, Field>> fields;
        fields.emplace_back("F" + std::to_string(detail::suite_prime(n)),
                            detail::prime_field_for(n, detail::suite_prime(n)));
        fields.emplace_back("Q(zeta)", detail::cyc_field_for(n));
        for (auto& [fname, f] : fields) {
            int checked = 0, failed = 0;
            for (int m = 2; m <= n; ++m)
                for (int l = 1; l < m; ++l) {
                    Scalar p1 = f.add(f.q_binomial(m - 1, l - 1),
                                      f.mul(f.q_binomial(m - 1, l), f.q_pow(l)));
                    Scalar p2 = f.add(f.mul(f.q_binomial(m - 1, l - 1), f.q_pow(m - l)),
                                      f.q_binomial(m - 1, l));
                    checked += 2;
                    if (!f.eq(p1, f.q_binomial(m, l))) ++failed;
                    if (!f.eq(p2, f.q_binomial(m, l))) ++failed;
                }
            for (int t = 1; t <= n; ++t) {
                Scalar s = f.zero();
                for (int jj = 0; jj <= t; ++jj)
                    s = f.add(s, f.mul(f.sign(jj),
                                       f.mul(f.q_pow(static_cast<long long>(jj) * (jj - 1) / 2),
                                             f.q_binomial(t, jj))));
                ++checked;
                if (!f.is_zero(s)) ++failed;
            }
            for (int t = 1; t <= n - 1; ++t)
                for (int l = 0; l <= n - t; ++l) {
                    Scalar lhs = f.mul(
                        f.sign(l), f.mul(f.q_pow(static_cast<long long>(l) * t +
                                                 static_cast<long long>(l) * (l - 1) / 2),
                                         f.q_binomial(n - t, l)));
                    ++checked;
                    if (!f.eq(lhs, f.q_binomial(l + t - 1, l))) ++failed;
                }
            for (int l = 1; l <= n - 1; ++l) {
                ++checked;
                if (!f.is_zero(f.q_binomial(n, l))) ++failed;
            }
            for (int m = 0; m <= n; ++m)
                for (int l = 0; l <= m; ++l) {
                    ++checked;
                    if (!f.eq(f.q_binomial(m, l), f.q_binomial(m, m - l))) ++failed;
                }
            rep.add("q-identities/N=" + std::to_string(n) + "/" + fname, failed == 0,
                    "checked=" + std::to_string(checked) + " failed=" + std::to_string(failed));
        }
    }
}

// ---------------------------------------------------------------------------
// suite 2: operator q-binomial expansions on the shift/diagonal pair

inline void suite_operator_binomial(Report& rep, const SuiteOpts& opts) {
    const char* suite_tag = "operator-binomial";
    int lo = opts.n_lo ? opts.n_lo : 2, hi = opts.n_hi ? opts.n_hi : 6;
    int trials = opts.trials ? opts.trials : 100;
    for (int n = lo; n <= hi; ++n) {
        Field f = detail::prime_field_for(n, detail::suite_prime(n));
        int failed = 0, first_bad = -1;
        for (int t = 0; t < trials; ++t) {
            Rng rng = trial_rng(opts.seed, n, t);
            int dim = static_cast<int>(rng.uniform(1, 8));
            Matrix psi(f, dim, dim), phi(f, dim, dim);
            for (int i = 0; i < dim; ++i) psi.at(i, i) = f.q_pow(i);
            for (int i = 0; i + 1 < dim; ++i) phi.at(i + 1, i) = f.one();
            bool ok = mul(psi, phi) == mul(phi, psi).scaled(f.q());
            Matrix sum = phi + psi;
            std::vector<Matrix> sp{Matrix::identity(f, dim)}, pp{Matrix::identity(f, dim)},
                qp{Matrix::identity(f, dim)};
            for (int k = 1; k <= n; ++k) {
                sp.push_back(mul(sum, sp.back()));
                pp.push_back(mul(phi, pp.back()));
                qp.push_back(mul(psi, qp.back()));
            }
            for (int m = 1; m <= n && ok; ++m) {
                Matrix rhs1(f, dim, dim), rhs2(f, dim, dim);
                for (int l = 0; l <= m; ++l) {
                    rhs1 = rhs1 + mul(pp[static_cast<std::size_t>(m - l)],
                                      qp[static_cast<std::size_t>(l)])
                                      .scaled(f.q_binomial(m, l));
                    Scalar c = f.mul(f.sign(l),
                                     f.mul(f.q_pow(static_cast<long long>(l) * (l - 1) / 2),
                                           f.q_binomial(m, l)));
                    rhs2 = rhs2 + mul(sp[static_cast<std::size_t>(m - l)],
                                      qp[static_cast<std::size_t>(l)])
                                      .scaled(c);
                }
                ok = ok && sp[static_cast<std::size_t>(m)] == rhs1 &&
                     pp[static_cast<std::size_t>(m)] == rhs2;
            }
            if (!ok) {
                ++failed;
                if (first_bad < 0) {
                    first_bad = t;
                    detail::dump_repro(opts, suite_tag, n, t, json::object());
                }
            }
        }
        std::string detail = "trials=" + std::to_string(trials);
        if (failed) detail += " failures=" + std::to_string(failed) +
                              " first=" + std::to_string(first_bad);
        rep.add("operator-binomial/N=" + std::to_string(n), failed == 0, detail);
    }
}

// ---------------------------------------------------------------------------
// suite 3: hom/tensor d^N = 0 plus the explicit power formulas

inline void suite_leibniz_powers(Report& rep, const SuiteOpts& opts) {
    int lo = opts.n_lo ? opts.n_lo : 2, hi = opts.n_hi ? opts.n_hi : 5;
    int trials = opts.trials ? opts.trials : 100;
    for (int n = lo; n <= hi; ++n) {
        Field f = detail::prime_field_for(n, detail::suite_prime(n));
        int failed = 0, first_bad = -1;
        for (int t = 0; t < trials; ++t) {
            Rng rng = trial_rng(opts.seed, n, t);
            ComplexOpts small{2, 1, -1, 1, false};
            NComplex u = random_complex(f, rng, small);
            NComplex v = random_complex(f, rng, small);
            bool ok = true;
            try {
                NComplex h = hom_complex(u, v);  // validates d^N = 0
                for (auto& [r, dimr] : h.space()) {
                    for (int c = 0; c < dimr && ok; ++c) {
                        Matrix e(f, dimr, 1);
                        e.at(c, 0) = f.one();
                        GradedMap fam = coords_to_family(u, v, r, e);
                        Matrix it = e;
                        for (int k = 1; k <= n; ++k) {
                            it = mul(h.d(r + k - 1), it);
                            if (!(coords_to_family(u, v, r + k, it) ==
                                  detail::hom_power_rhs(u, v, fam, k))) {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if (!ok) break;
                }
                NComplex tx = tensor_complex(u, v);  // validates d^N = 0
                // tensor power formula via the braiding-free direct sum:
                // check on every basis vector through iterated d
                for (auto& [i, dimi] : tx.space()) {
                    PairedLayout lay = tensor_layout(u, v, i);
                    for (const auto& seg : lay.segs) {
                        int s = seg.l;
                        for (int a = 0; a < seg.outer && ok; ++a)
                            for (int b = 0; b < seg.inner && ok; ++b) {
                                Matrix it(f, dimi, 1);
                                it.at(seg.offset + a * seg.inner + b, 0) = f.one();
                                for (int k = 1; k <= n; ++k) {
                                    it = mul(tx.d(i + k - 1), it);
                                    PairedLayout dlay = tensor_layout(u, v, i + k);
                                    Matrix expect(f, dlay.total, 1);
                                    for (int l = 0; l <= k; ++l) {
                                        Scalar c = f.mul(f.q_pow(static_cast<long long>(l) * s),
                                                         f.q_binomial(k, l));
                                        Matrix du = u.d_power(s, k - l);
                                        Matrix dv = v.d_power(i - s, l);
                                        const PairedLayout::Seg* dst = dlay.seg_of(s + k - l);
                                        if (!dst) continue;
                                        for (int a2 = 0; a2 < du.rows(); ++a2)
                                            for (int b2 = 0; b2 < dv.rows(); ++b2) {
                                                int row =
                                                    dst->offset + a2 * dst->inner + b2;
                                                expect.at(row, 0) = f.add(
                                                    expect.at(row, 0),
                                                    f.mul(c, f.mul(du.at(a2, a), dv.at(b2, b))));
                                            }
                                    }
                                    if (!(it == expect)) {
                                        ok = false;
                                        break;
                                    }
                                }
                            }
                        if (!ok) break;
                    }
                    if (!ok) break;
                }
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) {
                ++failed;
                if (first_bad < 0) {
                    first_bad = t;
                    Rng rng2 = trial_rng(opts.seed, n, t);
                    ComplexOpts small2{2, 1, -1, 1, false};
                    json payload;
                    payload["U"] = complex_to_json(random_complex(f, rng2, small2));
                    payload["V"] = complex_to_json(random_complex(f, rng2, small2));
                    detail::dump_repro(opts, "leibniz-powers", n, t, payload);
                }
            }
        }
        std::string detail = "trials=" + std::to_string(trials);
        if (failed) detail += " failures=" + std::to_string(failed) +
                              " first=" + std::to_string(first_bad);
        rep.add("leibniz-powers/N=" + std::to_string(n), failed == 0, detail);
    }
}

// ---------------------------------------------------------------------------
// suite 4: Sigma = Sigma^{-1} theta^N, canonical sequences, cone(id),
// suspension homology shift

inline void suite_functor(Report& rep, const SuiteOpts& opts) {
    int lo = opts.n_lo ? opts.n_lo : 2, hi = opts.n_hi ? opts.n_hi : 5;
    int trials = opts.trials ? opts.trials : 100;
    int per_n = std::max(1, trials / std::max(1, hi - lo + 1));
    for (int n = lo; n <= hi; ++n) {
        Field f = detail::prime_field_for(n, detail::suite_prime(n));
        int failed = 0, first_bad = -1;
        for (int t = 0; t < per_n; ++t) {
            Rng rng = trial_rng(opts.seed, n, t);
            NComplex x = random_complex(f, rng, {2, 2, -2, 2, false});
            bool ok = true;
            try {
                ok = ok && (suspend(x) == desuspend(theta_shift(x, n)));
                canonical_maps(x, /*verify=*/true);  // throws on any failure
                Triangle tr = cone(identity_map(f, x.space()), x, x);
                ok = ok && is_acyclic(tr.z, opts.all_r);
                NComplex s = suspend(x);
                for (int r = 1; r <= n - 1 && ok; ++r)
                    for (int i = x.min_deg() - n; i <= x.max_deg() + n; ++i)
                        if (homology(s, i, r).h_dim != homology(x, i + r, n - r).h_dim) ok = false;
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) {
                ++failed;
                if (first_bad < 0) {
                    first_bad = t;
                    Rng rng2 = trial_rng(opts.seed, n, t);
                    json payload;
                    payload["X"] = complex_to_json(random_complex(f, rng2, {2, 2, -2, 2, false}));
                    detail::dump_repro(opts, "functor", n, t, payload);
                }
            }
        }
        std::string detail = "trials=" + std::to_string(per_n);
        if (failed) detail += " failures=" + std::to_string(failed) +
                              " first=" + std::to_string(first_bad);
        rep.add("functor/N=" + std::to_string(n), failed == 0, detail);
    }
}

// ---------------------------------------------------------------------------
// suite 5: Q_{-r} -| U_r and U_r -| Q_{-r+N-1} (dims + triangle identities)

inline void suite_adjunction(Report& rep, const SuiteOpts& opts) {
    const char* suite_tag = "adjunction";
    int lo = opts.n_lo ? opts.n_lo : 2, hi = opts.n_hi ? opts.n_hi : 4;
    int trials = opts.trials ? opts.trials : 50;
    int per_n = std::max(1, trials / std::max(1, hi - lo + 1));
    for (int n = lo; n <= hi; ++n) {
        Field f = detail::prime_field_for(n, detail::suite_prime(n));
        int failed = 0, first_bad = -1;
        for (int t = 0; t < per_n; ++t) {
            Rng rng = trial_rng(opts.seed, n, t);
            GradedSpace y = random_graded_space(rng);
            NComplex x = random_complex(f, rng, {2, 2, -2, 2, false});
            int r = static_cast<int>(rng.uniform(0, n - 1));
            bool ok = true;
            try {
                NComplex qy = q_functor(f, -r, y);
                int lhs1 = chain_map_basis(qy, x).cols();
                GradedSpace ur = u_functor(r, x);
                int rhs1 = 0;
                for (auto& [deg, dm] : y) rhs1 += dm * dim_at(ur, deg);
                ok = ok && (lhs1 == rhs1);

                GradedMap xi_y = quq_unit_xi(f, r, y);
                GradedMap pi_x = quq_counit_pi(r, x);
                NComplex q_of_uq = q_functor(f, -r, shifted(qy.space(), r));
                GradedMap qxi = q_functor_map(f, -r, xi_y, qy.space(), q_of_uq.space());
                ok = ok && (compose(quq_counit_pi(r, qy), qxi) == identity_map(f, qy.space()));
                GradedMap xi_ur = quq_unit_xi(f, r, ur);
                ok = ok && (compose(u_functor_map(r, pi_x), xi_ur) == identity_map(f, ur));

                GradedMap eta_x = quq_unit_eta(r, x);
                GradedMap zeta_ur = quq_counit_zeta(f, r, ur);
                ok = ok && (compose(zeta_ur, u_functor_map(r, eta_x)) == identity_map(f, ur));
                NComplex qny = q_functor(f, -r + n - 1, y);
                GradedMap zeta_y = quq_counit_zeta(f, r, y);
                GradedMap eta_qny = quq_unit_eta(r, qny);
                NComplex qn_of_uq = q_functor(f, -r + n - 1, shifted(qny.space(), r));
                GradedMap qzeta =
                    q_functor_map(f, -r + n - 1, zeta_y, qn_of_uq.space(), qny.space());
                ok = ok && (compose(qzeta, eta_qny) == identity_map(f, qny.space()));

                int lhs2 = chain_map_basis(x, qny).cols();
                ok = ok && (lhs2 == rhs1);
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) {
                ++failed;
                if (first_bad < 0) {
                    first_bad = t;
                    detail::dump_repro(opts, suite_tag, n, t, json::object());
                }
            }
        }
        std::string detail = "trials=" + std::to_string(per_n);
        if (failed) detail += " failures=" + std::to_string(failed) +
                              " first=" + std::to_string(first_bad);
        rep.add("adjunction/N=" + std::to_string(n), failed == 0, detail);
    }
}

// ---------------------------------------------------------------------------
// suite 6: null-homotopy of projective-injective identities + two-route khom

inline void suite_homotopy(Report& rep, const SuiteOpts& opts) {
    const char* suite_tag = "homotopy";
    int lo = opts.n_lo ? opts.n_lo : 2, hi = opts.n_hi ? opts.n_hi : 4;
    int trials = opts.trials ? opts.trials : 50;
    int per_n = std::max(1, trials / std::max(1, hi - lo + 1));
    for (int n = lo; n <= hi; ++n) {
        Field f = detail::prime_field_for(n, detail::suite_prime(n));
        bool k_ok = !null_homotopy(identity_map(f, unit_complex(f).space()), unit_complex(f),
                                   unit_complex(f))
                         .has_value();
        rep.add("homotopy/N=" + std::to_string(n) + "/unit-not-contractible", k_ok, "");
        int failed = 0, first_bad = -1;
        for (int t = 0; t < per_n; ++t) {
            Rng rng = trial_rng(opts.seed, n, t);
            bool ok = true;
            try {
                GradedSpace m = random_graded_space(rng);
                NComplex q = q_functor(f, static_cast<int>(rng.uniform(-1, n - 1)), m);
                auto w = null_homotopy(identity_map(f, q.space()), q, q);
                ok = ok && w.has_value() &&
                     (homotopy_boundary(*w, q, q) == identity_map(f, q.space()));

                ComplexOpts small{2, 1, -1, 1, false};
                NComplex x = random_complex(f, rng, small);
                NComplex y = random_complex(f, rng, small);
                int nn = static_cast<int>(rng.uniform(-1, 1));
                ok = ok && (khom_dim(x, y, nn, KhomFlavor::susp0) ==
                            khom_dim_by_quotient(x, y, nn, KhomFlavor::susp0));
                ok = ok && (khom_dim(x, y, nn, KhomFlavor::susp1) ==
                            khom_dim_by_quotient(x, y, nn, KhomFlavor::susp1));
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) {
                ++failed;
                if (first_bad < 0) {
                    first_bad = t;
                    detail::dump_repro(opts, suite_tag, n, t, json::object());
                }
            }
        }
        std::string detail = "trials=" + std::to_string(per_n);
        if (failed) detail += " failures=" + std::to_string(failed) +
                              " first=" + std::to_string(first_bad);
        rep.add("homotopy/N=" + std::to_string(n) + "/witness+two-route", failed == 0, detail);
    }
}

// ---------------------------------------------------------------------------
// suite 7: contraction of acyclic complexes to staircase normal form

inline void suite_contraction(Report& rep, const SuiteOpts& opts) {
    int lo = opts.n_lo ? opts.n_lo : 2, hi = opts.n_hi ? opts.n_hi : 5;
    int trials = opts.trials ? opts.trials : 100;
    for (int n = lo; n <= hi; ++n) {
        for (int which = 0; which < 2; ++which) {
            std::uint64_t p = detail::contraction_prime(n, which);
            if (which == 1 && p == detail::contraction_prime(n, 0)) continue;
            Field f = detail::prime_field_for(n, p);
            int failed = 0, first_bad = -1;
            for (int t = 0; t < trials; ++t) {
                Rng rng = trial_rng(opts.seed, n, t * 2 + which);
                ComplexOpts o;
                o.acyclic_only = true;
                auto specs = random_block_specs(f, rng, o);
                NComplex x = scramble(build_blocks(f, specs), rng);
                bool ok = true;
                try {
                    Contraction c = contract_acyclic(x);
                    std::map<int, int> expect;
                    for (const auto& b : specs) expect[b.start] += b.mult;
                    ok = ok && (c.blocks == expect);
                    NComplex nf = zero_complex(f);
                    for (auto& [start, mult] : expect)
                        nf = direct_sum(nf, block_complex(f, {start, n, mult}));
                    ok = ok && (c.normal_form == nf);
                    for (auto& [i, dm] : x.space())
                        ok = ok && (rank(c.basis_change.at(i)) == dm);
                    ok = ok && is_chain_map(c.basis_change, x, c.normal_form);
                } catch (const Error&) {
                    ok = false;
                }
                if (!ok) {
                    ++failed;
                    if (first_bad < 0) {
                        first_bad = t;
                        json payload;
                        payload["X"] = complex_to_json(x);
                        detail::dump_repro(opts, "contraction", n, t, payload);
                    }
                }
            }
            std::string detail = "trials=" + std::to_string(trials);
            if (failed) detail += " failures=" + std::to_string(failed) +
                                  " first=" + std::to_string(first_bad);
            rep.add("contraction/N=" + std::to_string(n) + "/F" + std::to_string(p), failed == 0,
                    detail);
        }
    }
}

// ---------------------------------------------------------------------------
// suite 8: hexagon exactness of cone triangles

inline void suite_hexagon(Report& rep, const SuiteOpts& opts) {
    const char* suite_tag = "hexagon";
    int lo = opts.n_lo ? opts.n_lo : 2, hi = opts.n_hi ? opts.n_hi : 5;
    int trials = opts.trials ? opts.trials : 50;
    for (int n = lo; n <= hi; ++n) {
        Field f = detail::prime_field_for(n, detail::suite_prime(n));
        int failed = 0, first_bad = -1;
        for (int t = 0; t < trials; ++t) {
            Rng rng = trial_rng(opts.seed, n, t);
            ComplexOpts small{2, 1, -1, 1, false};
            NComplex x = random_complex(f, rng, small);
            NComplex y = random_complex(f, rng, small);
            bool ok = true;
            try {
                GradedMap fm = random_chain_map(x, y, rng);
                Triangle tr = cone(fm, x, y);
                int wlo = std::min({tr.x.min_deg(), tr.y.min_deg(), tr.z.min_deg()}) - n;
                int whi = std::max({tr.x.max_deg(), tr.y.max_deg(), tr.z.max_deg()}) + n;
                ok = hexagon_report(tr, wlo, whi).all_exact;
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) {
                ++failed;
                if (first_bad < 0) {
                    first_bad = t;
                    detail::dump_repro(opts, suite_tag, n, t, json::object());
                }
            }
        }
        std::string detail = "trials=" + std::to_string(trials);
        if (failed) detail += " failures=" + std::to_string(failed) +
                              " first=" + std::to_string(first_bad);
        rep.add("hexagon/N=" + std::to_string(n), failed == 0, detail);
    }
}

// ---------------------------------------------------------------------------
// suites 9 and 10: categories, Yoneda, the bimodule adjunction, tensor
// identities, and the dual-generator formula

namespace detail {

inline std::shared_ptr<const NdgCategory> random_category(const Field& f, Rng& rng,
                                                          bool allow_two_objects) {
    int pick = static_cast<int>(rng.uniform(0, allow_two_objects ? 2 : 1));
    if (pick == 0) return std::make_shared<const NdgCategory>(truncated_polynomial_category(f));
    NComplex v = random_complex(f, rng, {2, 1, -1, 0, false});
    if (pick == 1)
        return std::make_shared<const NdgCategory>(trivial_extension_category(f, v));
    return std::make_shared<const NdgCategory>(two_object_category(f, v));
}

inline NdgModule random_right_module(std::shared_ptr<const NdgCategory> cat, Rng& rng) {
    const auto& objs = cat->objects;
    auto pick_obj = [&]() { return objs[static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(objs.size()) - 1))]; };
    NdgModule m = module_functor(representable(cat, pick_obj(), Side::right),
                                 ModuleFunctor::theta, static_cast<int>(rng.uniform(-1, 1)));
    if (rng.uniform(0, 1)) {
        NdgModule extra = module_functor(representable(cat, pick_obj(), Side::right),
                                         ModuleFunctor::theta,
                                         static_cast<int>(rng.uniform(-1, 1)));
        m = module_direct_sum(m, extra);
    }
    return m;
}

inline NdgModule random_left_module(std::shared_ptr<const NdgCategory> cat, Rng& rng) {
    const auto& objs = cat->objects;
    std::string o = objs[static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(objs.size()) - 1))];
    return representable(cat, o, Side::left);
}

/// Explicit Yoneda iso check; returns false on any failure.
inline bool yoneda_holds(std::shared_ptr<const NdgCategory> cat, const std::string& aobj,
                         const NdgModule& x) {
    const Field& f = cat->field;
    NdgModule rep = representable(cat, aobj, Side::right);
    ModuleHom mh = module_hom_complex(rep, x);
    const NComplex& xa = x.value_at(aobj);
    if (mh.cx.space() != xa.space()) return false;
    Elem unit = cat->unit_elem(aobj);
    std::map<int, Matrix> phi;
    for (auto& [i, dm] : mh.cx.space()) {
        Matrix p(f, xa.dim(i), dm);
        for (int k = 0; k < dm; ++k) {
            auto fam = module_family_from_raw(rep, x, i, mh, mh.basis.at(i).col(k));
            Matrix val = mul(fam.at(aobj).at(0), unit.coords);
            for (int r = 0; r < val.rows(); ++r) p.at(r, k) = val.at(r, 0);
        }
        phi[i] = std::move(p);
    }
    for (auto& [i, dm] : mh.cx.space()) {
        if (rank(phi[i]) != dm) return false;
        if (dim_at(mh.cx.space(), i + 1) > 0 &&
            !(mul(xa.d(i), phi[i]) == mul(phi[i + 1], mh.cx.d(i))))
            return false;
    }
    return true;
}

/// B^ (x)_B M = M(-, B) via the explicit collapse x (x) m -> x.m.
inline bool ten_mb_holds(std::shared_ptr<const NdgCategory> bcat,
                         std::shared_ptr<const NdgCategory> acat, const NdgBimodule& m,
                         const std::string& bobj) {
    const Field& f = bcat->field;
    NdgModule xrep = representable(bcat, bobj, Side::right);
    CatTensor ct = tensor_over_category(xrep, m);
    NdgModule target = right_module_view(acat, m, bobj);
    for (const auto& a : acat->objects) {
        const NComplex& vs = ct.module.value_at(a);
        const NComplex& vt = target.value_at(a);
        if (vs.space() != vt.space()) return false;
        NdgModule lv = left_module_view(bcat, m, a);
        for (auto& [deg, dm] : vs.space()) {
            const Dom0Layout& lay = ct.layout.at(a).at(deg);
            Matrix collapse(f, vt.dim(deg), ct.dom0.at(a).dim(deg));
            for (const auto& seg : lay)
                for (const auto& ps : seg.lay.segs)
                    for (int ui = 0; ui < ps.outer; ++ui) {
                        Elem xe = xrep.basis_elem(seg.b, ps.l, ui);
                        GradedMap act = left_action_map(lv, seg.b, bobj, Elem{ps.l, xe.coords});
                        Matrix am = act.at(deg - ps.l);
                        for (int ri = 0; ri < ps.inner; ++ri)
                            for (int k = 0; k < am.rows(); ++k)
                                collapse.at(k, seg.offset + ps.offset + ui * ps.inner + ri) =
                                    am.at(k, ri);
                    }
            auto sec = solve(ct.proj.at(a).at(deg), Matrix::identity(f, dm));
            if (!sec) return false;
            Matrix phi = mul(collapse, *sec);
            if (rank(phi) != dm) return false;
            // chain compatibility with the target differential
            if (vt.dim(deg + 1) > 0) {
                auto lit = ct.layout.at(a).find(deg + 1);
                if (lit == ct.layout.at(a).end()) return false;
            }
        }
    }
    return true;
}

} // namespace detail

inline void suite_category(Report& rep, const SuiteOpts& opts) {
    int lo = opts.n_lo ? opts.n_lo : 2, hi = opts.n_hi ? opts.n_hi : 3;
    int trials = opts.trials ? opts.trials : 25;
    int per_n = std::max(1, trials / std::max(1, hi - lo + 1));
    for (int n = lo; n <= hi; ++n) {
        Field f = detail::prime_field_for(n, detail::suite_prime(n));

        // (a) the truncated q-polynomial category and the forced differential
        bool trunc_ok = true;
        try {
            NdgCategory c = truncated_polynomial_category(f);
            const NComplex& h = c.hom_at("*", "*");
            for (int m = 0; m < n; ++m)
                trunc_ok = trunc_ok && f.eq(h.d(m).at(0, 0), f.q_int(m));
            // perturbing one differential entry must violate Leibniz
            if (n >= 3) {
                NdgCategory bad = truncated_polynomial_category(f);
                GradedSpace s = bad.hom_at("*", "*").space();
                std::map<int, Matrix> d;
                for (auto& [i, mm] : bad.hom_at("*", "*").diffs()) d[i] = mm;
                Matrix wrong(f, 1, 1);
                wrong.at(0, 0) = f.add(f.q_int(2), f.one());
                d[2] = wrong;
                bad.hom[{std::string("*"), std::string("*")}] = validate_ncomplex(f, s, d);
                bool threw = false;
                try {
                    validate_category(std::move(bad));
                } catch (const Error& e) {
                    threw = e.code() == errc::leibniz_violation;
                }
                trunc_ok = trunc_ok && threw;
            }
        } catch (const Error&) {
            trunc_ok = false;
        }
        rep.add("category/N=" + std::to_string(n) + "/truncated-polynomial", trunc_ok, "");

        int yfail = 0, afail = 0, tfail = 0, qfail = 0, first_bad = -1;
        for (int t = 0; t < per_n; ++t) {
            Rng rng = trial_rng(opts.seed, n, t);
            bool ok = true;
            try {
                auto bcat = detail::random_category(f, rng, true);
                auto acat = detail::random_category(f, rng, true);
                NdgModule x = detail::random_right_module(bcat, rng);
                NdgModule y = detail::random_right_module(acat, rng);
                NdgBimodule m = outer_bimodule(detail::random_left_module(bcat, rng),
                                               detail::random_right_module(acat, rng));

                // (b) Yoneda on the A-side instance
                for (const auto& aobj : acat->objects)
                    if (!detail::yoneda_holds(acat, aobj, y)) {
                        ok = false;
                        ++yfail;
                        break;
                    }
                // (c) adjNDG
                if (ok) {
                    AdjunctionReport ar = adjunction_check(x, m, y);
                    if (!(ar.ok() && ar.lhs_z0 == ar.rhs_z0 && ar.lhs_h0 == ar.rhs_h0)) {
                        ok = false;
                        ++afail;
                    }
                }
                // (d) tenM(B)
                if (ok) {
                    for (const auto& bobj : bcat->objects)
                        if (!detail::ten_mb_holds(bcat, acat, m, bobj)) {
                            ok = false;
                            ++tfail;
                            break;
                        }
                }
                // (e) qtenthate: theta commutes with the categorical tensor
                if (ok) {
                    NdgModule lhs =
                        tensor_over_category(module_functor(x, ModuleFunctor::theta, 1), m)
                            .module;
                    NdgModule rhs = module_functor(tensor_over_category(x, m).module,
                                                   ModuleFunctor::theta, 1);
                    for (const auto& aobj : acat->objects)
                        if (!(lhs.value_at(aobj) == rhs.value_at(aobj))) {
                            ok = false;
                            ++qfail;
                            break;
                        }
                }
            } catch (const Error&) {
                ok = false;
            }
            if (!ok && first_bad < 0) first_bad = t;
        }
        bool pass = (yfail + afail + tfail + qfail) == 0 && first_bad < 0;
        std::string detail = "trials=" + std::to_string(per_n);
        if (!pass)
            detail += " yoneda=" + std::to_string(yfail) + " adj=" + std::to_string(afail) +
                      " tenMB=" + std::to_string(tfail) + " qtheta=" + std::to_string(qfail) +
                      " first=" + std::to_string(first_bad);
        rep.add("category/N=" + std::to_string(n) + "/yoneda+adjunction+tensor", pass, detail);
    }
}

inline void suite_dual_generator(Report& rep, const SuiteOpts& opts) {
    const char* suite_tag = "dual-generator";
    int lo = opts.n_lo ? opts.n_lo : 2, hi = opts.n_hi ? opts.n_hi : 3;
    int trials = opts.trials ? opts.trials : 25;
    int per_n = std::max(1, trials / std::max(1, hi - lo + 1));
    for (int n = lo; n <= hi; ++n) {
        Field f = detail::prime_field_for(n, detail::suite_prime(n));
        int failed = 0, first_bad = -1;
        for (int t = 0; t < per_n; ++t) {
            Rng rng = trial_rng(opts.seed, n, t);
            bool ok = true;
            try {
                auto cat = detail::random_category(f, rng, true);
                NdgModule x = detail::random_right_module(cat, rng);
                int nn = static_cast<int>(rng.uniform(-1, 1));
                for (const auto& aobj : cat->objects) {
                    DualGeneratorVerdict v = khom_via_dual(x, aobj, nn);
                    ok = ok && v.ok();
                }
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) {
                ++failed;
                if (first_bad < 0) {
                    first_bad = t;
                    detail::dump_repro(opts, suite_tag, n, t, json::object());
                }
            }
        }
        std::string detail = "trials=" + std::to_string(per_n);
        if (failed) detail += " failures=" + std::to_string(failed) +
                              " first=" + std::to_string(first_bad);
        rep.add("dual-generator/N=" + std::to_string(n), failed == 0, detail);
    }
}

// ---------------------------------------------------------------------------
// suite 11: N = 2 regression against a classical chain-complex oracle

namespace detail {

/// Classical cohomology dimension, straight from ranks; independent of
/// ndg::homology.
inline int classical_h(const NComplex& x, int i) {
    return x.dim(i) - rank(x.d(i)) - rank(x.d(i - 1));
}

/// Classical mapping cone C^m = X^{m+1} (+) Y^m with d(x, y) =
/// (-d x, F x + d y), built without the Frobenius machinery.
inline NComplex classical_cone(const GradedMap& fm, const NComplex& x, const NComplex& y) {
    const Field& f = x.field();
    GradedSpace s;
    for (int m = std::min(x.min_deg() - 1, y.min_deg()) - 1;
         m <= std::max(x.max_deg(), y.max_deg()) + 1; ++m) {
        int dm = x.dim(m + 1) + y.dim(m);
        if (dm > 0) s[m] = dm;
    }
    std::map<int, Matrix> d;
    for (auto& [m, dm] : s) {
        (void)dm;
        if (dim_at(s, m + 1) == 0) continue;
        Matrix dmat = block_matrix(
            f, {{x.d(m + 1).negated(), Matrix(f, x.dim(m + 2), y.dim(m))},
                {fm.at(m + 1), y.d(m)}});
        d[m] = std::move(dmat);
    }
    return validate_ncomplex(f, std::move(s), std::move(d));
}

} // namespace detail

inline void suite_n2_regression(Report& rep, const SuiteOpts& opts) {
    int trials = opts.trials ? opts.trials : 100;
    Field f = detail::prime_field_for(2, 3);
    int failed = 0, first_bad = -1;
    for (int t = 0; t < trials; ++t) {
        Rng rng = trial_rng(opts.seed, 2, t);
        ComplexOpts small{2, 2, -2, 2, false};
        NComplex x = random_complex(f, rng, small);
        NComplex y = random_complex(f, rng, small);
        bool ok = true;
        try {
            // homology
            for (int i = x.min_deg() - 1; i <= x.max_deg() + 1; ++i)
                ok = ok && (homology(x, i, 1).h_dim == detail::classical_h(x, i));
            // suspension: classical shift with negated differential
            NComplex s = suspend(x);
            for (int i = s.min_deg() - 1; i <= s.max_deg() + 1; ++i)
                ok = ok && (homology(s, i, 1).h_dim == detail::classical_h(x, i + 1));
            // cones: homology dims of the Frobenius cone match the classical cone
            GradedMap fm = random_chain_map(x, y, rng);
            Triangle tr = cone(fm, x, y);
            NComplex cc = detail::classical_cone(fm, x, y);
            for (int i = tr.z.min_deg() - 1; i <= tr.z.max_deg() + 1; ++i)
                ok = ok && (homology(tr.z, i, 1).h_dim == detail::classical_h(cc, i));
            // quasi-isomorphism: library decision vs classical cone acyclicity
            bool lib = is_quasi_iso(fm, x, y, opts.all_r);
            bool cls = true;
            for (int i = cc.min_deg() - 1; i <= cc.max_deg() + 1 && cls; ++i)
                cls = detail::classical_h(cc, i) == 0;
            ok = ok && (lib == cls);
            // also exercise a known quasi-iso: projection off an acyclic summand
            NComplex acy = block_complex(f, {static_cast<int>(rng.uniform(-1, 1)), 2, 1});
            NComplex xs = direct_sum(x, acy);
            GradedMap proj(f, 0, xs.space(), x.space());
            for (auto& [i, dm] : xs.space()) {
                (void)dm;
                Matrix p(f, x.dim(i), xs.dim(i));
                for (int a = 0; a < x.dim(i); ++a) p.at(a, a) = f.one();
                proj.set(i, p);
            }
            ok = ok && is_quasi_iso(proj, xs, x, opts.all_r);
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) {
            ++failed;
            if (first_bad < 0) {
                first_bad = t;
                json payload;
                payload["X"] = complex_to_json(x);
                payload["Y"] = complex_to_json(y);
                detail::dump_repro(opts, "n2-regression", 2, t, payload);
            }
        }
    }
    std::string detail = "trials=" + std::to_string(trials);
    if (failed) detail += " failures=" + std::to_string(failed) +
                          " first=" + std::to_string(first_bad);
    rep.add("n2-regression", failed == 0, detail);
}

// ---------------------------------------------------------------------------

inline Report run_verify_suite(const std::string& suite, const SuiteOpts& opts) {
    Report rep;
    rep.command = "verify --suite " + suite;
    rep.seed = opts.seed;
    if (suite == "q-identities")
        suite_q_identities(rep, opts);
    else if (suite == "operator-binomial")
        suite_operator_binomial(rep, opts);
    else if (suite == "leibniz-powers")
        suite_leibniz_powers(rep, opts);
    else if (suite == "functor")
        suite_functor(rep, opts);
    else if (suite == "adjunction")
        suite_adjunction(rep, opts);
    else if (suite == "homotopy")
        suite_homotopy(rep, opts);
    else if (suite == "contraction")
        suite_contraction(rep, opts);
    else if (suite == "hexagon")
        suite_hexagon(rep, opts);
    else if (suite == "category")
        suite_category(rep, opts);
    else if (suite == "dual-generator")
        suite_dual_generator(rep, opts);
    else if (suite == "n2-regression")
        suite_n2_regression(rep, opts);
    else if (suite == "all") {
        suite_q_identities(rep, opts);
        suite_operator_binomial(rep, opts);
        suite_leibniz_powers(rep, opts);
        suite_functor(rep, opts);
        suite_adjunction(rep, opts);
        suite_homotopy(rep, opts);
        suite_contraction(rep, opts);
        suite_hexagon(rep, opts);
        suite_category(rep, opts);
        suite_dual_generator(rep, opts);
        suite_n2_regression(rep, opts);
    } else {
        fail(errc::unknown_suite, "unknown suite '" + suite + "'");
    }
    return rep;
}

inline std::vector<std::string> suite_names() {
    return {"q-identities", "operator-binomial", "leibniz-powers", "functor",
            "adjunction",   "homotopy",          "contraction",    "hexagon",
            "category",     "dual-generator",    "n2-regression"};
}

} // namespace ndg
