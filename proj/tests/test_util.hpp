#pragma once

// Shared helpers for the test suites: field constructors, independent
// homology oracles for staircase blocks, and a classical (N=2) chain-complex
// oracle kept deliberately separate from the library implementation.

#include <map>
#include <vector>

#include "ndg/generate.hpp"
#include "ndg/ncomplex.hpp"

namespace ndgtest {

inline ndg::Field prime_field(std::uint64_t p, int N,
                              std::optional<std::uint64_t> q = std::nullopt) {
    ndg::FieldSpec s;
    s.kind = ndg::FieldKind::prime;
    s.p = p;
    s.N = N;
    s.q_value = q;
    return ndg::make_field(s);
}

inline ndg::Field cyc_field(int N) {
    ndg::FieldSpec s;
    s.kind = ndg::FieldKind::cyclotomic;
    s.N = N;
    return ndg::make_field(s);
}

inline std::uint64_t good_prime(int N) {
    switch (N) {
        case 2: return 3;
        case 3: return 7;
        case 4: return 5;
        case 5: return 11;
        case 6: return 7;
        case 7: return 29;
        case 8: return 17;
        default: return 0;
    }
}

/// Expected h_dim at (i, r) for one staircase block of length len starting at
/// `start` with multiplicity mult, worked out from kernel/image ranks of the
/// identity staircase directly.
inline int block_h_dim(int N, int start, int len, int mult, int i, int r) {
    if (i < start || i > start + len - 1) return 0;
    bool in_z = (i + r > start + len - 1);     // d^r from i runs off the block
    bool in_b = (i - (N - r) >= start);        // d^{N-r} lands on i from inside
    return (in_z && !in_b) ? mult : 0;
}

inline int blocks_h_dim(int N, const std::vector<ndg::BlockSpec>& specs, int i, int r) {
    int t = 0;
    for (const auto& b : specs) t += block_h_dim(N, b.start, b.len, b.mult, i, r);
    return t;
}

/// Classical cohomology of a 2-complex: dim ker d^i - dim im d^{i-1}.
/// Implemented straight from the definition, independent of ndg::homology.
inline int classical_h(const ndg::NComplex& x, int i) {
    using namespace ndg;
    Matrix di = x.d(i);
    Matrix dprev = x.d(i - 1);
    int kerdim = x.dim(i) - rank(di);
    return kerdim - rank(dprev);
}

} // namespace ndgtest
