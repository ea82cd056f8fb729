#pragma once

#include <vector>

#include "ndg/hom_tensor.hpp"
#include "ndg/rng.hpp"

namespace ndg {

inline Scalar random_scalar(const Field& f, Rng& rng) {
    if (f.kind() == FieldKind::prime)
        return f.from_int(rng.uniform(0, static_cast<long long>(f.p()) - 1));
    return f.from_int(rng.uniform(-3, 3));
}

inline Scalar random_nonzero_scalar(const Field& f, Rng& rng) {
    if (f.kind() == FieldKind::prime)
        return f.from_int(rng.uniform(1, static_cast<long long>(f.p()) - 1));
    Scalar s = f.from_int(rng.uniform(-3, 3));
    return f.is_zero(s) ? f.one() : s;
}

inline Matrix random_matrix(const Field& f, Rng& rng, int rows, int cols) {
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = random_scalar(f, rng);
    return m;
}

/// L * D * U with unit-triangular L, U and nonzero diagonal D; invertible by
/// construction, no rejection loop.
inline Matrix random_invertible(const Field& f, Rng& rng, int n) {
    Matrix l = Matrix::identity(f, n), u = Matrix::identity(f, n), d(f, n, n);
    for (int i = 0; i < n; ++i) {
        d.at(i, i) = random_nonzero_scalar(f, rng);
        for (int j = 0; j < i; ++j) l.at(i, j) = random_scalar(f, rng);
        for (int j = i + 1; j < n; ++j) u.at(i, j) = random_scalar(f, rng);
    }
    return mul(l, mul(d, u));
}

/// One staircase block: dims `mult` in degrees start .. start+len-1 with
/// identity differentials. len = N gives the standard contractible block.
struct BlockSpec {
    int start = 0;
    int len = 1;
    int mult = 1;
};

inline NComplex block_complex(const Field& f, const BlockSpec& b) {
    GradedSpace s;
    for (int i = 0; i < b.len; ++i) s[b.start + i] = b.mult;
    std::map<int, Matrix> d;
    for (int i = 0; i + 1 < b.len; ++i) d[b.start + i] = Matrix::identity(f, b.mult);
    return validate_ncomplex(f, std::move(s), std::move(d));
}

inline NComplex build_blocks(const Field& f, const std::vector<BlockSpec>& specs) {
    NComplex x = zero_complex(f);
    for (const auto& b : specs) x = direct_sum(x, block_complex(f, b));
    return x;
}

/// Conjugates the differential by a random degreewise basis change:
/// d' = g_{i+1} d g_i^{-1}. Homology is preserved.
inline NComplex scramble(const NComplex& x, Rng& rng) {
    const Field& f = x.field();
    std::map<int, Matrix> g, ginv;
    for (auto& [i, dm] : x.space()) {
        g[i] = random_invertible(f, rng, dm);
        ginv[i] = inverse(g[i]);
    }
    std::map<int, Matrix> d;
    for (auto& [i, dm] : x.space()) {
        (void)dm;
        if (x.dim(i + 1) == 0) continue;
        d[i] = mul(g[i + 1], mul(x.d(i), ginv[i]));
    }
    return validate_ncomplex(f, x.space(), std::move(d));
}

struct ComplexOpts {
    int max_blocks = 3;
    int max_mult = 2;
    int deg_lo = -2;
    int deg_hi = 2;
    bool acyclic_only = false;  // only full length-N blocks
};

inline std::vector<BlockSpec> random_block_specs(const Field& f, Rng& rng, const ComplexOpts& o) {
    int n = f.N();
    int nb = static_cast<int>(rng.uniform(1, o.max_blocks));
    std::vector<BlockSpec> specs;
    for (int b = 0; b < nb; ++b) {
        BlockSpec s;
        s.start = static_cast<int>(rng.uniform(o.deg_lo, o.deg_hi));
        s.len = o.acyclic_only ? n : static_cast<int>(rng.uniform(1, n));
        s.mult = static_cast<int>(rng.uniform(1, o.max_mult));
        specs.push_back(s);
    }
    return specs;
}

/// Random bounded N-complex with known block data: a scrambled direct sum of
/// staircase blocks (valid N-complex by construction).
inline NComplex random_complex(const Field& f, Rng& rng, const ComplexOpts& o = {}) {
    return scramble(build_blocks(f, random_block_specs(f, rng, o)), rng);
}

inline GradedSpace random_graded_space(Rng& rng, int deg_lo = -2, int deg_hi = 2, int max_dim = 2) {
    GradedSpace s;
    int k = static_cast<int>(rng.uniform(1, 3));
    for (int i = 0; i < k; ++i) {
        int deg = static_cast<int>(rng.uniform(deg_lo, deg_hi));
        s[deg] += static_cast<int>(rng.uniform(1, max_dim));
    }
    return s;
}

inline GradedMap random_chain_map(const NComplex& x, const NComplex& y, Rng& rng) {
    const Field& f = x.field();
    Matrix basis = chain_map_basis(x, y);
    Matrix coeff = random_matrix(f, rng, basis.cols(), 1);
    Matrix col = mul(basis, coeff);
    if (basis.cols() == 0) col = Matrix(f, hom_layout(x, y, 0).total, 1);
    return coords_to_family(x, y, 0, col);
}

} // namespace ndg
