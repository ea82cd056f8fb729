#include <catch2/catch_amalgamated.hpp>

#include "ndg/generate.hpp"
#include "ndg/homotopy.hpp"
#include "test_util.hpp"

using namespace ndg;
using namespace ndgtest;

namespace {

GradedMap random_cycle(const NComplex& x, const NComplex& y, int deg, Rng& rng) {
    NComplex h = hom_complex(x, y);
    Matrix k = kernel_basis(h.d(deg));
    Matrix col = mul(k, random_matrix(x.field(), rng, k.cols(), 1));
    if (k.cols() == 0) col = Matrix(x.field(), hom_layout(x, y, deg).total, 1);
    return coords_to_family(x, y, deg, col);
}

GradedMap iterated_hom_d(GradedMap fam, const NComplex& x, const NComplex& y, int times) {
    for (int t = 0; t < times; ++t) fam = hom_differential(fam, x, y);
    return fam;
}

} // namespace

TEST_CASE("null_homotopy basics") {
    Field f = prime_field(7, 3, 2);

    SECTION("zero map always has a witness") {
        Rng rng(1);
        NComplex x = random_complex(f, rng);
        NComplex y = random_complex(f, rng);
        auto s = null_homotopy(zero_map(f, x.space(), y.space()), x, y);
        REQUIRE(s.has_value());
        CHECK(homotopy_boundary(*s, x, y).is_zero());
    }

    SECTION("identity of the standard block is null-homotopic") {
        NComplex x = block_complex(f, {0, 3, 1});
        auto s = null_homotopy(identity_map(f, x.space()), x, x);
        REQUIRE(s.has_value());
        CHECK(homotopy_boundary(*s, x, x) == identity_map(f, x.space()));
    }

    SECTION("identity of k in degree 0 is not null-homotopic") {
        NComplex x = unit_complex(f);
        CHECK_FALSE(null_homotopy(identity_map(f, x.space()), x, x).has_value());
    }

    SECTION("non chain maps are rejected") {
        NComplex x = block_complex(f, {0, 3, 1});
        GradedMap bad(f, 0, x.space(), x.space());
        Matrix two(f, 1, 1);
        two.at(0, 0) = f.from_int(2);
        bad.set(0, two);
        CHECK_THROWS_AS(null_homotopy(bad, x, x), Error);
    }
}

TEST_CASE("identity maps of Q-blocks are null-homotopic with verified witnesses") {
    for (int N : {2, 3, 4, 5}) {
        Field f = prime_field(good_prime(N), N);
        Rng rng(70 + N);
        for (int t = 0; t < 5; ++t) {
            GradedSpace m = random_graded_space(rng);
            NComplex q = q_functor(f, static_cast<int>(rng.uniform(-1, N - 1)), m);
            auto s = null_homotopy(identity_map(f, q.space()), q, q);
            REQUIRE(s.has_value());
            CHECK(homotopy_boundary(*s, q, q) == identity_map(f, q.space()));
        }
    }
}

TEST_CASE("cone of the zero map out of the zero complex is the target") {
    Field f = prime_field(7, 3, 2);
    Rng rng(2);
    NComplex y = random_complex(f, rng);
    NComplex zero = zero_complex(f);
    Triangle t = cone(zero_map(f, zero.space(), y.space()), zero, y);
    CHECK(t.z == y);
}

TEST_CASE("cone dimensions: dim Z^m = dim Y^m + sum_{i=m+1}^{m+N-1} dim X^i") {
    for (int N : {2, 3, 4}) {
        Field f = prime_field(good_prime(N), N);
        Rng rng(80 + N);
        for (int t = 0; t < 5; ++t) {
            NComplex x = random_complex(f, rng);
            NComplex y = random_complex(f, rng);
            GradedMap fm = random_chain_map(x, y, rng);
            Triangle tr = cone(fm, x, y);
            for (int m = tr.z.min_deg() - 1; m <= tr.z.max_deg() + 1; ++m) {
                int expect = y.dim(m);
                for (int i = m + 1; i <= m + N - 1; ++i) expect += x.dim(i);
                CHECK(tr.z.dim(m) == expect);
            }
        }
    }
}

TEST_CASE("cone of the identity is acyclic") {
    for (int N : {2, 3, 4, 5}) {
        Field f = prime_field(good_prime(N), N);
        Rng rng(90 + N);
        for (int t = 0; t < 5; ++t) {
            NComplex x = random_complex(f, rng);
            Triangle tr = cone(identity_map(f, x.space()), x, x);
            CHECK(is_acyclic(tr.z, /*all_r=*/true));
        }
    }
}

TEST_CASE("cone of zero map: homology of Z splits as Y plus Sigma X") {
    Field f = prime_field(7, 3, 2);
    Rng rng(3);
    NComplex x = random_complex(f, rng);
    NComplex y = random_complex(f, rng);
    Triangle tr = cone(zero_map(f, x.space(), y.space()), x, y);
    NComplex expected = direct_sum(y, suspend(x));
    for (int i = tr.z.min_deg() - 1; i <= tr.z.max_deg() + 1; ++i)
        for (int r = 1; r <= f.N() - 1; ++r)
            CHECK(homology(tr.z, i, r).h_dim == homology(expected, i, r).h_dim);
}

TEST_CASE("quasi-isomorphism detection") {
    Field f = prime_field(7, 3, 2);
    Rng rng(4);
    NComplex x = random_complex(f, rng);
    CHECK(is_quasi_iso(identity_map(f, x.space()), x, x));
    CHECK(is_quasi_iso(identity_map(f, x.space()), x, x, /*all_r=*/true));

    // eta: k -> Q-block kills homology
    NComplex k = unit_complex(f);
    CanonicalMaps cm = canonical_maps(k);
    CHECK_FALSE(is_quasi_iso(cm.eta, k, cm.qn1));

    // projection X (+) acyclic -> X is a quasi-iso and its cone is acyclic
    NComplex acy = block_complex(f, {0, 3, 2});
    NComplex xs = direct_sum(x, acy);
    GradedMap proj(f, 0, xs.space(), x.space());
    for (auto& [i, dm] : xs.space()) {
        (void)dm;
        Matrix p(f, x.dim(i), xs.dim(i));
        for (int a = 0; a < x.dim(i); ++a) p.at(a, a) = f.one();
        proj.set(i, p);
    }
    REQUIRE(is_chain_map(proj, xs, x));
    CHECK(is_quasi_iso(proj, xs, x, /*all_r=*/true));
    Triangle tr = cone(proj, xs, x);
    CHECK(is_acyclic(tr.z, true));
}

TEST_CASE("khom_dim examples and two-route equality") {
    Field f = prime_field(7, 3, 2);
    NComplex k = unit_complex(f);
    CHECK(khom_dim(k, k, 0, KhomFlavor::susp0) == 1);

    Rng rng(5);
    for (int t = 0; t < 5; ++t) {
        GradedSpace m = random_graded_space(rng);
        NComplex q = q_functor(f, static_cast<int>(rng.uniform(0, 2)), m);
        NComplex x = random_complex(f, rng);
        for (int n = -2; n <= 2; ++n) {
            CHECK(khom_dim(x, q, n, KhomFlavor::susp0) == 0);
            CHECK(khom_dim(x, q, n, KhomFlavor::susp1) == 0);
        }
    }

    for (int N : {2, 3, 4}) {
        Field fn = prime_field(good_prime(N), N);
        Rng rng2(100 + N);
        for (int t = 0; t < 5; ++t) {
            NComplex x = random_complex(fn, rng2);
            NComplex y = random_complex(fn, rng2);
            for (int n = -1; n <= 1; ++n) {
                CHECK(khom_dim(x, y, n, KhomFlavor::susp0) ==
                      khom_dim_by_quotient(x, y, n, KhomFlavor::susp0));
                CHECK(khom_dim(x, y, n, KhomFlavor::susp1) ==
                      khom_dim_by_quotient(x, y, n, KhomFlavor::susp1));
            }
        }
    }
}

TEST_CASE("contract_acyclic on the standard block is the identity") {
    Field f = prime_field(7, 3, 2);
    NComplex x = block_complex(f, {0, 3, 1});
    Contraction c = contract_acyclic(x);
    CHECK(c.normal_form == x);
    CHECK(c.basis_change == identity_map(f, x.space()));
    CHECK(c.blocks == std::map<int, int>{{0, 1}});
}

TEST_CASE("contract_acyclic rejects non-acyclic input") {
    Field f = prime_field(7, 3, 2);
    CHECK_THROWS_AS(contract_acyclic(unit_complex(f)), Error);
}

TEST_CASE("contract_acyclic recovers scrambled block sums") {
    for (int N : {2, 3, 4, 5}) {
        for (std::uint64_t p : {std::uint64_t{7}, std::uint64_t{11}}) {
            if ((p - 1) % static_cast<std::uint64_t>(N) != 0) continue;
            Field f = prime_field(p, N);
            Rng rng(110 + N + static_cast<int>(p));
            for (int t = 0; t < 10; ++t) {
                ComplexOpts o;
                o.acyclic_only = true;
                auto specs = random_block_specs(f, rng, o);
                NComplex x = scramble(build_blocks(f, specs), rng);
                Contraction c = contract_acyclic(x);

                std::map<int, int> expect;
                for (const auto& b : specs) expect[b.start] += b.mult;
                CHECK(c.blocks == expect);

                // normal form is the ordered direct sum of the blocks
                NComplex nf = zero_complex(f);
                for (auto& [start, mult] : expect)
                    nf = direct_sum(nf, block_complex(f, {start, N, mult}));
                CHECK(c.normal_form == nf);

                // exact conjugation, invertible degreewise
                for (auto& [i, dm] : x.space())
                    CHECK(rank(c.basis_change.at(i)) == dm);
                CHECK(is_chain_map(c.basis_change, x, c.normal_form));
            }
        }
    }
}

TEST_CASE("composition closure of cycles and boundaries (explicit witnesses)") {
    for (int N : {2, 3, 4}) {
        Field f = prime_field(good_prime(N), N);
        Rng rng(120 + N);
        for (int t = 0; t < 4; ++t) {
            ComplexOpts small{2, 1, -1, 1};
            NComplex x = random_complex(f, rng, small);
            NComplex y = random_complex(f, rng, small);
            NComplex z = random_complex(f, rng, small);
            int m = static_cast<int>(rng.uniform(-1, 1));
            int n = static_cast<int>(rng.uniform(-1, 1));

            GradedMap fcyc = random_cycle(x, y, m, rng);
            GradedMap gcyc = random_cycle(y, z, n, rng);

            // cycles compose to cycles
            GradedMap gf = compose(gcyc, fcyc);
            CHECK(hom_differential(gf, x, z).is_zero());

            // boundary o cycle: GF = q^n d^{N-1}(G F') when F = d^{N-1}(F')
            GradedMap fprime = coords_to_family(
                x, y, m + 1 - N,
                random_matrix(f, rng, hom_layout(x, y, m + 1 - N).total, 1));
            GradedMap fbdry = iterated_hom_d(fprime, x, y, N - 1);
            GradedMap lhs = compose(gcyc, fbdry);
            GradedMap rhs =
                iterated_hom_d(compose(gcyc, fprime), x, z, N - 1).scaled(f.q_pow(n));
            CHECK(lhs == rhs);

            // cycle o boundary: F G = d^{N-1}(F' G) when F = d^{N-1}(F')
            GradedMap gprime = coords_to_family(
                y, z, n + 1 - N,
                random_matrix(f, rng, hom_layout(y, z, n + 1 - N).total, 1));
            GradedMap gbdry = iterated_hom_d(gprime, y, z, N - 1);
            GradedMap lhs2 = compose(gbdry, fcyc);
            GradedMap rhs2 = iterated_hom_d(compose(gprime, fcyc), x, z, N - 1);
            CHECK(lhs2 == rhs2);
        }
    }
}

TEST_CASE("hexagon exactness for cone triangles") {
    for (int N : {2, 3, 4}) {
        Field f = prime_field(good_prime(N), N);
        Rng rng(130 + N);
        for (int t = 0; t < 4; ++t) {
            NComplex x = random_complex(f, rng);
            NComplex y = random_complex(f, rng);
            GradedMap fm = random_chain_map(x, y, rng);
            Triangle tr = cone(fm, x, y);
            int lo = std::min({tr.x.min_deg(), tr.y.min_deg(), tr.z.min_deg()}) - N;
            int hi = std::max({tr.x.max_deg(), tr.y.max_deg(), tr.z.max_deg()}) + N;
            HexagonReport rep = hexagon_report(tr, lo, hi);
            CHECK(rep.all_exact);
        }
    }
}

TEST_CASE("hexagon for cone(id) and cone(0)") {
    Field f = prime_field(7, 3, 2);
    Rng rng(6);
    NComplex x = random_complex(f, rng);
    NComplex y = random_complex(f, rng);
    Triangle t1 = cone(identity_map(f, x.space()), x, x);
    Triangle t2 = cone(zero_map(f, x.space(), y.space()), x, y);
    for (const Triangle& t : {t1, t2}) {
        int lo = std::min({t.x.min_deg(), t.y.min_deg(), t.z.min_deg()}) - 3;
        int hi = std::max({t.x.max_deg(), t.y.max_deg(), t.z.max_deg()}) + 3;
        CHECK(hexagon_report(t, lo, hi).all_exact);
    }
}

TEST_CASE("the comparison X -> Sigma^{-1} Sigma X has an acyclic cone") {
    for (int N : {2, 3}) {
        Field f = prime_field(good_prime(N), N);
        Rng rng(300 + N);
        for (int t = 0; t < 3; ++t) {
            NComplex x = random_complex(f, rng, {2, 1, -1, 0});
            SigmaComparison sc = sigma_comparison(x);
            CHECK(is_chain_map(sc.map, x, sc.target));
            CHECK(is_quasi_iso(sc.map, x, sc.target, /*all_r=*/true));
            Triangle tr = cone(sc.map, x, sc.target);
            CHECK(is_acyclic(tr.z, /*all_r=*/true));
        }
    }
}

TEST_CASE("acyclic cone implies quasi-isomorphism on random maps") {
    for (int N : {2, 3, 4}) {
        Field f = prime_field(good_prime(N), N);
        Rng rng(310 + N);
        for (int t = 0; t < 6; ++t) {
            NComplex x = random_complex(f, rng, {2, 1, -1, 1});
            NComplex y = random_complex(f, rng, {2, 1, -1, 1});
            GradedMap fm = random_chain_map(x, y, rng);
            Triangle tr = cone(fm, x, y);
            bool acyclic = is_acyclic(tr.z, true);
            bool qiso = is_quasi_iso(fm, x, y, true);
            CHECK(acyclic == qiso);
        }
    }
}

TEST_CASE("hexagon_report rejects non-triangles") {
    Field f = prime_field(7, 3, 2);
    NComplex x = unit_complex(f);
    Triangle bogus;
    bogus.x = x;
    bogus.y = x;
    bogus.z = x;
    bogus.sigma_x = x;  // wrong: not suspend(x)
    bogus.f = identity_map(f, x.space());
    bogus.g = identity_map(f, x.space());
    bogus.h = identity_map(f, x.space());
    CHECK_THROWS_AS(hexagon_report(bogus, -1, 1), Error);
}
