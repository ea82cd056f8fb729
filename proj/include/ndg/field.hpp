#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "ndg/error.hpp"

namespace ndg {

/// A field element. Prime kind stores a canonical representative in [0, p);
/// cyclotomic kind stores the coefficient vector of the residue polynomial
/// mod Phi_N, length deg(Phi_N), lowest degree first.
using Scalar = std::variant<std::uint64_t, std::vector<mpq_class>>;

enum class FieldKind { cyclotomic, prime };

struct FieldSpec {
    FieldKind kind = FieldKind::cyclotomic;
    int N = 2;
    std::uint64_t p = 0;                     // prime kind only
    std::optional<std::uint64_t> q_value;    // prime kind only; derived when absent
};

namespace detail {

// Little-endian integer polynomials, used only to set up Phi_N.
using ipoly = std::vector<mpz_class>;

inline ipoly ipoly_trim(ipoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

// Exact division of integer polynomials; b must be monic.
inline ipoly ipoly_div_exact(ipoly a, const ipoly& b) {
    a = ipoly_trim(a);
    ipoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpz_class(0));
    while (a.size() >= b.size() && !a.empty()) {
        mpz_class c = a.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        a = ipoly_trim(a);
    }
    return q;
}

inline const ipoly& cyclotomic_poly(int n) {
    static std::map<int, ipoly> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // x^n - 1 divided by all lower-index cyclotomic factors.
    ipoly num(static_cast<std::size_t>(n) + 1, mpz_class(0));
    num[0] = -1;
    num[static_cast<std::size_t>(n)] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) num = ipoly_div_exact(num, cyclotomic_poly(d));
    return cache.emplace(n, ipoly_trim(num)).first->second;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

} // namespace detail

/// Handle to an exact coefficient field carrying a designated primitive
/// N-th root of unity. Cheap to copy; all data immutable after construction.
class Field {
public:
    Field() = default;

    FieldKind kind() const { return d_->kind; }
    int N() const { return d_->N; }
    std::uint64_t p() const { return d_->p; }
    int ext_degree() const { return d_->deg; }

    const Scalar& q() const { return d_->q_powers[1 % d_->N]; }

    /// q^k for any integer k; exponent reduced mod N (q^{-1} = q^{N-1}).
    const Scalar& q_pow(long long k) const {
        long long r = k % d_->N;
        if (r < 0) r += d_->N;
        return d_->q_powers[static_cast<std::size_t>(r)];
    }

    Scalar zero() const {
        if (d_->kind == FieldKind::prime) return Scalar(std::uint64_t{0});
        return Scalar(std::vector<mpq_class>(static_cast<std::size_t>(d_->deg), mpq_class(0)));
    }

    Scalar one() const { return from_int(1); }

    Scalar from_int(long long v) const {
        if (d_->kind == FieldKind::prime) {
            long long r = v % static_cast<long long>(d_->p);
            if (r < 0) r += static_cast<long long>(d_->p);
            return Scalar(static_cast<std::uint64_t>(r));
        }
        std::vector<mpq_class> c(static_cast<std::size_t>(d_->deg), mpq_class(0));
        if (d_->deg > 0) c[0] = mpq_class(static_cast<long>(v));
        return Scalar(c);
    }

    Scalar from_rational(const mpq_class& v) const {
        if (d_->kind == FieldKind::prime) {
            mpz_class num = v.get_num(), den = v.get_den();
            std::uint64_t n = mod_of(num), dnm = mod_of(den);
            require(dnm != 0, errc::bad_arguments, "rational with denominator divisible by p");
            return Scalar(detail::mulmod(n, detail::powmod(dnm, d_->p - 2, d_->p), d_->p));
        }
        std::vector<mpq_class> c(static_cast<std::size_t>(d_->deg), mpq_class(0));
        if (d_->deg > 0) c[0] = v;
        return Scalar(c);
    }

    bool is_zero(const Scalar& a) const {
        if (d_->kind == FieldKind::prime) return std::get<std::uint64_t>(a) == 0;
        for (const auto& c : std::get<std::vector<mpq_class>>(a))
            if (c != 0) return false;
        return true;
    }

    bool eq(const Scalar& a, const Scalar& b) const {
        if (d_->kind == FieldKind::prime)
            return std::get<std::uint64_t>(a) == std::get<std::uint64_t>(b);
        return std::get<std::vector<mpq_class>>(a) == std::get<std::vector<mpq_class>>(b);
    }

    Scalar add(const Scalar& a, const Scalar& b) const {
        if (d_->kind == FieldKind::prime) {
            std::uint64_t s = std::get<std::uint64_t>(a) + std::get<std::uint64_t>(b);
            if (s >= d_->p) s -= d_->p;
            return Scalar(s);
        }
        auto c = std::get<std::vector<mpq_class>>(a);
        const auto& cb = std::get<std::vector<mpq_class>>(b);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += cb[i];
        return Scalar(std::move(c));
    }

    Scalar neg(const Scalar& a) const {
        if (d_->kind == FieldKind::prime) {
            std::uint64_t v = std::get<std::uint64_t>(a);
            return Scalar(v == 0 ? 0 : d_->p - v);
        }
        auto c = std::get<std::vector<mpq_class>>(a);
        for (auto& x : c) x = -x;
        return Scalar(std::move(c));
    }

    Scalar sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

    Scalar mul(const Scalar& a, const Scalar& b) const {
        if (d_->kind == FieldKind::prime)
            return Scalar(detail::mulmod(std::get<std::uint64_t>(a), std::get<std::uint64_t>(b), d_->p));
        const auto& ca = std::get<std::vector<mpq_class>>(a);
        const auto& cb = std::get<std::vector<mpq_class>>(b);
        std::vector<mpq_class> prod(ca.size() + cb.size(), mpq_class(0));
        for (std::size_t i = 0; i < ca.size(); ++i) {
            if (ca[i] == 0) continue;
            for (std::size_t j = 0; j < cb.size(); ++j)
                if (cb[j] != 0) prod[i + j] += ca[i] * cb[j];
        }
        return Scalar(reduce_mod_phi(std::move(prod)));
    }

    Scalar inv(const Scalar& a) const {
        require(!is_zero(a), errc::bad_arguments, "inverse of zero");
        if (d_->kind == FieldKind::prime)
            return Scalar(detail::powmod(std::get<std::uint64_t>(a), d_->p - 2, d_->p));
        // extended Euclid in Q[x] against Phi_N
        using qpoly = std::vector<mpq_class>;
        qpoly r0(d_->phi.size());
        for (std::size_t i = 0; i < d_->phi.size(); ++i) r0[i] = mpq_class(d_->phi[i]);
        qpoly r1 = std::get<std::vector<mpq_class>>(a);
        trim(r1);
        qpoly s0{mpq_class(0)}, s1{mpq_class(1)};
        while (!r1.empty()) {
            auto [quo, rem] = qdivmod(r0, r1);
            qpoly s2 = qsub(s0, qmul(quo, s1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r0 is a nonzero constant gcd; s0 * a == r0 (mod Phi)
        mpq_class g = r0[0];
        for (auto& c : s0) c /= g;
        s0.resize(static_cast<std::size_t>(d_->deg), mpq_class(0));
        return Scalar(std::move(s0));
    }

    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    /// q-integer [m] = 1 + q + ... + q^{m-1}; defined for 0 <= m <= N.
    Scalar q_int(int m) const {
        require(m >= 0 && m <= d_->N, errc::out_of_range, "q_int: m out of 0..N");
        Scalar s = zero();
        for (int i = 0; i < m; ++i) s = add(s, q_pow(i));
        return s;
    }

    Scalar q_factorial(int m) const {
        require(m >= 0 && m <= d_->N, errc::out_of_range, "q_factorial: m out of 0..N");
        Scalar s = one();
        for (int i = 1; i <= m; ++i) s = mul(s, q_int(i));
        return s;
    }

    /// Gaussian binomial [m l] with the boundary conventions
    /// [N N] = [N 0] = 1 and [N l] = 0 for 0 < l < N.
    Scalar q_binomial(int m, int l) const {
        require(m >= 0 && m <= d_->N, errc::out_of_range, "q_binomial: m out of 0..N");
        require(l >= 0 && l <= m, errc::out_of_range, "q_binomial: l out of 0..m");
        if (m == d_->N) {
            if (l == 0 || l == d_->N) return one();
            return zero();
        }
        return div(q_factorial(m), mul(q_factorial(l), q_factorial(m - l)));
    }

    /// (-1)^l as a field element.
    Scalar sign(long long l) const { return (l % 2 == 0) ? one() : neg(one()); }

    std::string to_string(const Scalar& a) const {
        if (d_->kind == FieldKind::prime) return std::to_string(std::get<std::uint64_t>(a));
        const auto& c = std::get<std::vector<mpq_class>>(a);
        std::string s = "[";
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) s += ",";
            s += c[i].get_str();
        }
        return s + "]";
    }

    bool same_as(const Field& other) const { return d_ == other.d_ || spec_eq(other); }

    const FieldSpec& spec() const { return d_->spec; }

    friend Field make_field(const FieldSpec& spec);

private:
    struct Data {
        FieldSpec spec;
        FieldKind kind;
        int N = 2;
        std::uint64_t p = 0;
        int deg = 1;                       // deg Phi_N (cyclotomic kind)
        std::vector<mpz_class> phi;        // monic, length deg+1
        std::vector<Scalar> q_powers;      // q^0 .. q^{N-1}
    };

    std::shared_ptr<const Data> d_;

    bool spec_eq(const Field& o) const {
        return d_ && o.d_ && d_->kind == o.d_->kind && d_->N == o.d_->N && d_->p == o.d_->p &&
               eq(d_->q_powers[1 % d_->N], o.d_->q_powers[1 % o.d_->N]);
    }

    std::uint64_t mod_of(const mpz_class& z) const {
        mpz_class r = z % static_cast<unsigned long>(d_->p);
        if (r < 0) r += static_cast<unsigned long>(d_->p);
        return r.get_ui();
    }

    std::vector<mpq_class> reduce_mod_phi(std::vector<mpq_class> a) const {
        const auto& phi = d_->phi;
        std::size_t dg = phi.size() - 1;
        for (std::size_t i = a.size(); i-- > dg;) {
            mpq_class c = a[i];
            if (c == 0) continue;
            a[i] = 0;
            for (std::size_t j = 0; j < dg; ++j) a[i - dg + j] -= c * mpq_class(phi[j]);
        }
        a.resize(dg);
        return a;
    }

    using qpoly = std::vector<mpq_class>;
    static void trim(qpoly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    static qpoly qsub(qpoly a, const qpoly& b) {
        if (a.size() < b.size()) a.resize(b.size(), mpq_class(0));
        for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
        trim(a);
        return a;
    }
    static qpoly qmul(const qpoly& a, const qpoly& b) {
        if (a.empty() || b.empty()) return {};
        qpoly c(a.size() + b.size() - 1, mpq_class(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        trim(c);
        return c;
    }
    static std::pair<qpoly, qpoly> qdivmod(qpoly a, const qpoly& b) {
        trim(a);
        qpoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
        while (a.size() >= b.size()) {
            mpq_class c = a.back() / b.back();
            std::size_t shift = a.size() - b.size();
            q[shift] = c;
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
            trim(a);
        }
        return {q, a};
    }
};

/// Builds a field from its spec, validating that the designated q really is
/// a primitive N-th root of unity.
inline Field make_field(const FieldSpec& spec) {
    require(spec.N >= 2, errc::bad_arguments, "N must be >= 2");
    auto data = std::make_shared<Field::Data>();
    data->spec = spec;
    data->kind = spec.kind;
    data->N = spec.N;

    Field f;
    if (spec.kind == FieldKind::prime) {
        require(spec.p >= 2 && spec.p < (1ULL << 31), errc::not_a_field, "p out of supported range");
        require(detail::is_prime_u64(spec.p), errc::not_a_field,
                "p = " + std::to_string(spec.p) + " is composite");
        require((spec.p - 1) % static_cast<std::uint64_t>(spec.N) == 0, errc::no_primitive_root,
                "N does not divide p-1");
        data->p = spec.p;
        data->deg = 1;

        std::uint64_t qv;
        if (spec.q_value) {
            qv = *spec.q_value % spec.p;
        } else {
            // q = g^((p-1)/N) for a generator g of the multiplicative group
            auto fs = detail::prime_factors(spec.p - 1);
            std::uint64_t g = 0;
            for (std::uint64_t cand = 2; cand < spec.p; ++cand) {
                bool ok = true;
                for (auto fac : fs)
                    if (detail::powmod(cand, (spec.p - 1) / fac, spec.p) == 1) { ok = false; break; }
                if (ok) { g = cand; break; }
            }
            require(g != 0, errc::internal, "no generator found");
            qv = detail::powmod(g, (spec.p - 1) / static_cast<std::uint64_t>(spec.N), spec.p);
        }
        require(detail::powmod(qv, static_cast<std::uint64_t>(spec.N), spec.p) == 1, errc::bad_root,
                "q^N != 1");
        for (int l = 1; l < spec.N; ++l)
            require(detail::powmod(qv, static_cast<std::uint64_t>(l), spec.p) != 1, errc::bad_root,
                    "q^" + std::to_string(l) + " = 1, root not primitive");
        data->q_powers.reserve(static_cast<std::size_t>(spec.N));
        for (int i = 0; i < spec.N; ++i)
            data->q_powers.emplace_back(detail::powmod(qv, static_cast<std::uint64_t>(i), spec.p));
        f.d_ = std::move(data);
        return f;
    }

    const auto& phi = detail::cyclotomic_poly(spec.N);
    data->phi = phi;
    data->deg = static_cast<int>(phi.size()) - 1;
    f.d_ = data;  // temporarily share so member helpers work below

    // q is the residue class of x
    std::vector<mpq_class> qv(static_cast<std::size_t>(data->deg), mpq_class(0));
    if (data->deg >= 2) {
        qv[1] = 1;
    } else {
        // deg Phi_N = 1 only for N = 2 (Phi_2 = x + 1, so q = -1)
        qv[0] = -mpq_class(phi[0]);
    }
    std::vector<Scalar> pows;
    pows.emplace_back(std::vector<mpq_class>(static_cast<std::size_t>(data->deg), mpq_class(0)));
    std::get<std::vector<mpq_class>>(pows[0])[0] = 1;
    Scalar qs(qv);
    for (int i = 1; i < spec.N; ++i) pows.push_back(f.mul(pows.back(), qs));
    require(f.eq(f.mul(pows.back(), qs), pows[0]), errc::bad_root, "q^N != 1 in cyclotomic field");
    for (int l = 1; l < spec.N; ++l)
        require(!f.eq(pows[static_cast<std::size_t>(l)], pows[0]), errc::bad_root,
                "cyclotomic root not primitive");
    data->q_powers = std::move(pows);
    return f;
}

} // namespace ndg
