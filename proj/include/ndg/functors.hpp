#pragma once

#include "ndg/ncomplex.hpp"

namespace ndg {

/// Degrees shifted by n, differential rescaled by q^{-n}: theta_q^n.
inline NComplex theta_shift(const NComplex& x, int n) {
    const Field& f = x.field();
    GradedSpace s = shifted(x.space(), n);
    std::map<int, Matrix> d;
    Scalar c = f.q_pow(-static_cast<long long>(n));
    for (auto& [i, m] : x.diffs()) d[i - n] = m.scaled(c);
    return validate_ncomplex(f, std::move(s), std::move(d));
}

/// Forgetful shift: (U_r X)^n = X^{n+r}.
inline GradedSpace u_functor(int r, const NComplex& x) { return shifted(x.space(), r); }

/// Q_r of a graded space: degree n is the N-fold coproduct of M^{r+n-N+i},
/// i = 1..N, with the upper-shift staircase differential.
inline NComplex q_functor(const Field& f, int r, const GradedSpace& m) {
    if (m.empty()) return zero_complex(f);
    GradedSpace s;
    for (int n = min_degree(m) - r; n <= max_degree(m) - r + f.N() - 1; ++n) {
        int t = 0;
        for (int i = 1; i <= f.N(); ++i) t += dim_at(m, r + n - f.N() + i);
        if (t > 0) s[n] = t;
    }
    std::map<int, Matrix> d;
    for (auto& [n, dm] : s) {
        (void)dm;
        if (dim_at(s, n + 1) == 0) continue;
        std::vector<std::vector<Matrix>> blocks(static_cast<std::size_t>(f.N()));
        for (int j = 1; j <= f.N(); ++j) {
            int rows = dim_at(m, r + n + 1 - f.N() + j);
            for (int i = 1; i <= f.N(); ++i) {
                int cols = dim_at(m, r + n - f.N() + i);
                Matrix b(f, rows, cols);
                if (i == j + 1 && rows == cols) b = Matrix::identity(f, rows);
                blocks[static_cast<std::size_t>(j - 1)].push_back(std::move(b));
            }
        }
        Matrix mat = block_matrix(f, blocks);
        if (mat.rows() > 0 && mat.cols() > 0) d[n] = std::move(mat);
    }
    return validate_ncomplex(f, std::move(s), std::move(d));
}

/// Q_r on a degree-0 graded morphism: the block-diagonal matrix of shifts.
inline GradedMap q_functor_map(const Field& f, int r, const GradedMap& fm, const GradedSpace& qsrc,
                               const GradedSpace& qdst) {
    GradedMap out(f, 0, qsrc, qdst);
    for (auto& [n, dm] : qsrc) {
        (void)dm;
        std::vector<std::vector<Matrix>> blocks(static_cast<std::size_t>(f.N()));
        for (int j = 1; j <= f.N(); ++j)
            for (int i = 1; i <= f.N(); ++i) {
                int rows = dim_at(fm.dst(), r + n - f.N() + j);
                int cols = dim_at(fm.src(), r + n - f.N() + i);
                blocks[static_cast<std::size_t>(j - 1)].push_back(
                    (i == j) ? fm.at(r + n - f.N() + i) : Matrix(f, rows, cols));
            }
        out.set(n, block_matrix(f, blocks));
    }
    return out;
}

/// U_r on a degree-0 map: reindex components.
inline GradedMap u_functor_map(int r, const GradedMap& fm) {
    GradedMap out(fm.field(), 0, shifted(fm.src(), r), shifted(fm.dst(), r));
    for (auto& [i, dm] : out.src()) {
        (void)dm;
        out.set(i, fm.at(i + r));
    }
    return out;
}

/// Suspension: (Sigma X)^m = X^{m+1} (+) ... (+) X^{m+N-1}, staircase
/// differential with last row (-d^{N-1} ... -d).
inline NComplex suspend(const NComplex& x) {
    const Field& f = x.field();
    int n = f.N();
    if (x.space().empty()) return zero_complex(f);
    GradedSpace s;
    for (int m = x.min_deg() - n + 1; m <= x.max_deg() - 1; ++m) {
        int t = 0;
        for (int i = 1; i <= n - 1; ++i) t += x.dim(m + i);
        if (t > 0) s[m] = t;
    }
    std::map<int, Matrix> d;
    for (auto& [m, dm] : s) {
        (void)dm;
        if (dim_at(s, m + 1) == 0) continue;
        std::vector<std::vector<Matrix>> blocks(static_cast<std::size_t>(n - 1));
        for (int j = 1; j <= n - 1; ++j) {
            for (int i = 1; i <= n - 1; ++i) {
                int rows = x.dim(m + 1 + j);
                int cols = x.dim(m + i);
                Matrix b(f, rows, cols);
                if (j < n - 1) {
                    if (i == j + 1 && rows == cols) b = Matrix::identity(f, rows);
                } else {
                    b = x.d_power(m + i, n - i).negated();
                }
                blocks[static_cast<std::size_t>(j - 1)].push_back(std::move(b));
            }
        }
        Matrix mat = block_matrix(f, blocks);
        if (mat.rows() > 0 && mat.cols() > 0) d[m] = std::move(mat);
    }
    return validate_ncomplex(f, std::move(s), std::move(d));
}

/// Desuspension: (Sigma^{-1} X)^m = X^{m-N+1} (+) ... (+) X^{m-1}, same block
/// shape as the suspension.
inline NComplex desuspend(const NComplex& x) {
    const Field& f = x.field();
    int n = f.N();
    if (x.space().empty()) return zero_complex(f);
    GradedSpace s;
    for (int m = x.min_deg() + 1; m <= x.max_deg() + n - 1; ++m) {
        int t = 0;
        for (int i = 1; i <= n - 1; ++i) t += x.dim(m - n + i);
        if (t > 0) s[m] = t;
    }
    std::map<int, Matrix> d;
    for (auto& [m, dm] : s) {
        (void)dm;
        if (dim_at(s, m + 1) == 0) continue;
        std::vector<std::vector<Matrix>> blocks(static_cast<std::size_t>(n - 1));
        for (int j = 1; j <= n - 1; ++j) {
            for (int i = 1; i <= n - 1; ++i) {
                int rows = x.dim(m + 1 - n + j);
                int cols = x.dim(m - n + i);
                Matrix b(f, rows, cols);
                if (j < n - 1) {
                    if (i == j + 1 && rows == cols) b = Matrix::identity(f, rows);
                } else {
                    b = x.d_power(m - n + i, n - i).negated();
                }
                blocks[static_cast<std::size_t>(j - 1)].push_back(std::move(b));
            }
        }
        Matrix mat = block_matrix(f, blocks);
        if (mat.rows() > 0 && mat.cols() > 0) d[m] = std::move(mat);
    }
    return validate_ncomplex(f, std::move(s), std::move(d));
}

/// The two canonical degreewise-split short exact sequences
///   0 -> Sigma^{-1}X -> Q_0 U_0 X -> X -> 0        (eps, pi)
///   0 -> X -> Q_{N-1} U_0 X -> Sigma X -> 0        (eta, delta)
/// All four maps are verified chain maps; exactness and splitness are
/// verified degreewise at construction.
struct CanonicalMaps {
    NComplex sigma_inv, q0, qn1, sigma;
    GradedMap eps;    // Sigma^{-1}X -> Q_0U_0X
    GradedMap pi;     // Q_0U_0X -> X
    GradedMap eta;    // X -> Q_{N-1}U_0X
    GradedMap delta;  // Q_{N-1}U_0X -> Sigma X
};

inline CanonicalMaps canonical_maps(const NComplex& x, bool verify = true) {
    const Field& f = x.field();
    int n = f.N();
    CanonicalMaps cm;
    cm.sigma_inv = desuspend(x);
    cm.sigma = suspend(x);
    cm.q0 = q_functor(f, 0, x.space());
    cm.qn1 = q_functor(f, n - 1, x.space());

    cm.pi = GradedMap(f, 0, cm.q0.space(), x.space());
    cm.eps = GradedMap(f, 0, cm.sigma_inv.space(), cm.q0.space());
    cm.eta = GradedMap(f, 0, x.space(), cm.qn1.space());
    cm.delta = GradedMap(f, 0, cm.qn1.space(), cm.sigma.space());

    GradedSpace all = direct_sum(cm.q0.space(), direct_sum(x.space(), cm.qn1.space()));
    for (auto& [m, dm] : all) {
        (void)dm;
        {  // pi^m = (d^{N-1} ... d 1)
            std::vector<std::vector<Matrix>> row(1);
            for (int i = 1; i <= n; ++i) row[0].push_back(x.d_power(m - n + i, n - i));
            if (dim_at(cm.q0.space(), m) > 0) cm.pi.set(m, block_matrix(f, row));
        }
        {  // eps^m = (I_{N-1} stacked over -d^{N-1} ... -d)
            std::vector<std::vector<Matrix>> blocks(static_cast<std::size_t>(n));
            for (int j = 1; j <= n; ++j)
                for (int i = 1; i <= n - 1; ++i) {
                    int rows = x.dim(m - n + j);
                    int cols = x.dim(m - n + i);
                    Matrix b(f, rows, cols);
                    if (j < n) {
                        if (i == j && rows == cols) b = Matrix::identity(f, rows);
                    } else {
                        b = x.d_power(m - n + i, n - i).negated();
                    }
                    blocks[static_cast<std::size_t>(j - 1)].push_back(std::move(b));
                }
            if (dim_at(cm.sigma_inv.space(), m) > 0) cm.eps.set(m, block_matrix(f, blocks));
        }
        {  // eta^m = (1 d ... d^{N-1})^t
            std::vector<std::vector<Matrix>> col(static_cast<std::size_t>(n));
            for (int i = 1; i <= n; ++i)
                col[static_cast<std::size_t>(i - 1)].push_back(x.d_power(m, i - 1));
            if (x.dim(m) > 0) cm.eta.set(m, block_matrix(f, col));
        }
        {  // delta^m: -d on the diagonal, 1 on the superdiagonal
            std::vector<std::vector<Matrix>> blocks(static_cast<std::size_t>(n - 1));
            for (int j = 1; j <= n - 1; ++j)
                for (int i = 1; i <= n; ++i) {
                    int rows = x.dim(m + j);
                    int cols = x.dim(m + i - 1);
                    Matrix b(f, rows, cols);
                    if (i == j && x.dim(m + j - 1) > 0 && rows > 0)
                        b = x.d(m + j - 1).negated();
                    else if (i == j + 1 && rows == cols && rows > 0)
                        b = Matrix::identity(f, rows);
                    blocks[static_cast<std::size_t>(j - 1)].push_back(std::move(b));
                }
            if (dim_at(cm.qn1.space(), m) > 0) cm.delta.set(m, block_matrix(f, blocks));
        }
    }

    if (verify) {
        require(is_chain_map(cm.pi, cm.q0, x), errc::internal, "pi is not a chain map");
        require(is_chain_map(cm.eps, cm.sigma_inv, cm.q0), errc::internal, "eps is not a chain map");
        require(is_chain_map(cm.eta, x, cm.qn1), errc::internal, "eta is not a chain map");
        require(is_chain_map(cm.delta, cm.qn1, cm.sigma), errc::internal, "delta is not a chain map");
        require(compose(cm.pi, cm.eps).is_zero(), errc::internal, "pi o eps != 0");
        require(compose(cm.delta, cm.eta).is_zero(), errc::internal, "delta o eta != 0");
        for (auto& [m, dm] : all) {
            (void)dm;
            // exact and degreewise split in both sequences
            int re = rank(cm.eps.at(m)), rp = rank(cm.pi.at(m));
            require(re == dim_at(cm.sigma_inv.space(), m), errc::internal, "eps not mono");
            require(rp == x.dim(m), errc::internal, "pi not epi");
            require(re + rp == dim_at(cm.q0.space(), m), errc::internal, "first sequence not exact");
            int rh = rank(cm.eta.at(m)), rd = rank(cm.delta.at(m));
            require(rh == x.dim(m), errc::internal, "eta not mono");
            require(rd == dim_at(cm.sigma.space(), m), errc::internal, "delta not epi");
            require(rh + rd == dim_at(cm.qn1.space(), m), errc::internal,
                    "second sequence not exact");
            // retraction of the mono / section of the epi exist degreewise
            require(solve(cm.eta.at(m).transpose(),
                          Matrix::identity(f, x.dim(m)).transpose())
                        .has_value(),
                    errc::internal, "eta has no degreewise retraction");
            require(solve(cm.pi.at(m), Matrix::identity(f, x.dim(m))).has_value(), errc::internal,
                    "pi has no degreewise section");
        }
    }
    return cm;
}

/// Unit of Q_{-r} -| U_r: Y -> U_r Q_{-r} Y, the inclusion into the last slot.
inline GradedMap quq_unit_xi(const Field& f, int r, const GradedSpace& y) {
    NComplex q = q_functor(f, -r, y);
    GradedSpace uq = shifted(q.space(), r);
    GradedMap xi(f, 0, y, uq);
    for (auto& [m, dm] : y) {
        (void)dm;
        std::vector<std::vector<Matrix>> col(static_cast<std::size_t>(f.N()));
        for (int i = 1; i <= f.N(); ++i) {
            int rows = dim_at(y, m - f.N() + i);
            Matrix b(f, rows, dim_at(y, m));
            if (i == f.N()) b = Matrix::identity(f, dim_at(y, m));
            col[static_cast<std::size_t>(i - 1)].push_back(std::move(b));
        }
        xi.set(m, block_matrix(f, col));
    }
    return xi;
}

/// Counit of Q_{-r} -| U_r: Q_{-r} U_r X -> X, the row (d^{N-1} ... d 1).
inline GradedMap quq_counit_pi(int r, const NComplex& x) {
    const Field& f = x.field();
    NComplex q = q_functor(f, -r, u_functor(r, x));
    GradedMap pi(f, 0, q.space(), x.space());
    for (auto& [m, dm] : q.space()) {
        (void)dm;
        std::vector<std::vector<Matrix>> row(1);
        for (int i = 1; i <= f.N(); ++i) row[0].push_back(x.d_power(m - f.N() + i, f.N() - i));
        pi.set(m, block_matrix(f, row));
    }
    return pi;
}

/// Counit of U_r -| Q_{-r+N-1}: U_r Q_{-r+N-1} Y -> Y, projection to slot 1.
inline GradedMap quq_counit_zeta(const Field& f, int r, const GradedSpace& y) {
    NComplex q = q_functor(f, -r + f.N() - 1, y);
    GradedSpace uq = shifted(q.space(), r);
    GradedMap zeta(f, 0, uq, y);
    for (auto& [m, dm] : uq) {
        (void)dm;
        std::vector<std::vector<Matrix>> row(1);
        for (int i = 1; i <= f.N(); ++i) {
            int cols = dim_at(y, m + i - 1);
            Matrix b(f, dim_at(y, m), cols);
            if (i == 1) b = Matrix::identity(f, dim_at(y, m));
            row[0].push_back(std::move(b));
        }
        zeta.set(m, block_matrix(f, row));
    }
    return zeta;
}

/// Unit of U_r -| Q_{-r+N-1}: X -> Q_{-r+N-1} U_r X, the column (1 d ... d^{N-1}).
inline GradedMap quq_unit_eta(int r, const NComplex& x) {
    const Field& f = x.field();
    NComplex q = q_functor(f, -r + f.N() - 1, u_functor(r, x));
    GradedMap eta(f, 0, x.space(), q.space());
    for (auto& [m, dm] : x.space()) {
        (void)dm;
        std::vector<std::vector<Matrix>> col(static_cast<std::size_t>(f.N()));
        for (int i = 1; i <= f.N(); ++i)
            col[static_cast<std::size_t>(i - 1)].push_back(x.d_power(m, i - 1));
        eta.set(m, block_matrix(f, col));
    }
    return eta;
}

} // namespace ndg
