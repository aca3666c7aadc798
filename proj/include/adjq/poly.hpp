#pragma once

// Univariate polynomials, just enough to find the roots of characteristic
// polynomials lying in the ground field. Coefficients are low-to-high.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "adjq/matrix.hpp"

namespace adjq::poly {

// ---- over F_p, p < 2^32 ------------------------------------------------

using ModPoly = std::vector<std::uint64_t>;

inline void trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    std::uint64_t r = 1, e = p - 2;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

inline ModPoly mul(const ModPoly& a, const ModPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    ModPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j] % p) % p;
    trim(c);
    return c;
}

/// Remainder of a modulo a nonzero b.
inline ModPoly rem(ModPoly a, const ModPoly& b, std::uint64_t p) {
    trim(a);
    const std::uint64_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + (p - c) * b[i] % p) % p;
        trim(a);
    }
    return a;
}

inline ModPoly quot(ModPoly a, const ModPoly& b, std::uint64_t p) {
    trim(a);
    if (a.size() < b.size()) return {};
    ModPoly q(a.size() - b.size() + 1, 0);
    const std::uint64_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + (p - c) * b[i] % p) % p;
        trim(a);
    }
    return q;
}

inline ModPoly monic(ModPoly f, std::uint64_t p) {
    trim(f);
    if (f.empty()) return f;
    const std::uint64_t c = inv_mod(f.back(), p);
    for (auto& x : f) x = x * c % p;
    return f;
}

inline ModPoly gcd(ModPoly a, ModPoly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        ModPoly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

inline ModPoly derivative(const ModPoly& f, std::uint64_t p) {
    ModPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * (i % p) % p);
    trim(d);
    return d;
}

/// base^e mod f.
inline ModPoly pow_mod(ModPoly base, std::uint64_t e, const ModPoly& f, std::uint64_t p) {
    ModPoly r{1};
    base = rem(base, f, p);
    while (e) {
        if (e & 1) r = rem(mul(r, base, p), f, p);
        base = rem(mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t eval(const ModPoly& f, std::uint64_t x, std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    return acc;
}

namespace detail {

// Splits a monic product of distinct linear factors (odd p).
inline void split_linear(const ModPoly& f, std::uint64_t p, std::mt19937_64& rng, std::vector<std::uint64_t>& out) {
    if (f.size() <= 1) return;
    if (f.size() == 2) {
        out.push_back((p - f[0]) % p);
        return;
    }
    std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
    while (true) {
        ModPoly h = pow_mod(ModPoly{d(rng), 1}, (p - 1) / 2, f, p);
        if (h.empty()) continue;
        h[0] = (h[0] + p - 1) % p;
        trim(h);
        ModPoly g = gcd(f, h, p);
        if (g.size() > 1 && g.size() < f.size()) {
            split_linear(g, p, rng, out);
            split_linear(monic(quot(f, g, p), p), p, rng, out);
            return;
        }
    }
}

}  // namespace detail

/// Distinct roots in F_p, ascending.
inline std::vector<std::uint64_t> roots(ModPoly f, std::uint64_t p) {
    trim(f);
    std::vector<std::uint64_t> out;
    if (f.size() <= 1) return out;
    if (p <= 65537) {
        for (std::uint64_t x = 0; x < p; ++x)
            if (eval(f, x, p) == 0) out.push_back(x);
        return out;
    }
    f = monic(f, p);
    ModPoly xp = pow_mod(ModPoly{0, 1}, p, f, p);
    xp.resize(std::max<std::size_t>(xp.size(), 2), 0);
    xp[1] = (xp[1] + p - 1) % p;
    trim(xp);
    ModPoly g = xp.empty() ? f : gcd(f, xp, p);
    std::mt19937_64 rng(0x5eed);
    detail::split_linear(g, p, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

// ---- over Q -------------------------------------------------------------

using QPoly = std::vector<mpq_class>;

inline void trim(QPoly& f) {
    while (!f.empty() && sgn(f.back()) == 0) f.pop_back();
}

inline QPoly rem(QPoly a, const QPoly& b) {
    trim(a);
    while (a.size() >= b.size()) {
        const mpq_class c = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        a.back() = 0;
        trim(a);
    }
    return a;
}

inline QPoly quot(QPoly a, const QPoly& b) {
    trim(a);
    if (a.size() < b.size()) return {};
    QPoly q(a.size() - b.size() + 1);
    while (a.size() >= b.size()) {
        const mpq_class c = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        a.back() = 0;
        trim(a);
    }
    return q;
}

inline QPoly gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const mpq_class c = a.back();
        for (auto& x : a) x /= c;
    }
    return a;
}

inline QPoly derivative(const QPoly& f) {
    QPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
    trim(d);
    return d;
}

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline mpz_class eval(const std::vector<mpz_class>& f, const mpz_class& x, const mpz_class& m) {
    mpz_class acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) {
        acc = (acc * x + f[i]) % m;
    }
    if (acc < 0) acc += m;
    return acc;
}

/// a/b with a = r*b mod m and |a|, b <= sqrt(m/2), if one exists.
inline std::optional<mpq_class> reconstruct(const mpz_class& r, const mpz_class& m) {
    mpz_class bound = sqrt(mpz_class(m / 2));
    mpz_class r0 = m, r1 = r, t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (abs(t1) > bound || t1 == 0) return std::nullopt;
    mpq_class out(r1, t1);
    out.canonicalize();
    return out;
}

}  // namespace detail

/// Distinct rational roots, ascending. Works on the squarefree primitive
/// integer polynomial: roots mod a good prime, Newton lifting, rational
/// reconstruction, then exact verification.
inline std::vector<mpq_class> roots(QPoly f) {
    trim(f);
    std::vector<mpq_class> out;
    if (f.size() <= 1) return out;
    f = quot(f, gcd(f, derivative(f)));
    if (sgn(f[0]) == 0) {
        out.push_back(0);
        f.erase(f.begin());
    }
    if (f.size() >= 2) {
        mpz_class den = 1;
        for (const auto& c : f) den = lcm(den, mpz_class(c.get_den()));
        std::vector<mpz_class> g;
        for (const auto& c : f) g.push_back(mpz_class(c * den));
        mpz_class content = 0;
        for (const auto& c : g) content = gcd(content, c);
        for (auto& c : g) c /= content;
        const mpz_class lead = abs(g.back()), c0 = abs(g.front());
        const mpz_class big = lead > c0 ? lead : c0;
        const mpz_class need = 2 * big * big + 1;

        std::uint64_t p = 10007;
        ModPoly gp, dp;
        for (;; p += 2) {
            if (!detail::is_prime(p)) continue;
            if (mpz_class(lead % p) == 0) continue;
            gp.clear();
            for (const auto& c : g) {
                mpz_class m = c % p;
                if (m < 0) m += p;
                gp.push_back(m.get_ui());
            }
            trim(gp);
            dp = derivative(gp, p);
            if (gcd(gp, dp, p).size() == 1) break;
        }
        std::vector<mpz_class> dg;
        for (std::size_t i = 1; i < g.size(); ++i) dg.push_back(g[i] * static_cast<unsigned long>(i));
        for (std::uint64_t r : roots(gp, p)) {
            mpz_class m = p, x = r;
            while (m < need) {
                m = m * m;
                mpz_class fx = detail::eval(g, x, m), dx = detail::eval(dg, x, m), inv;
                mpz_invert(inv.get_mpz_t(), dx.get_mpz_t(), m.get_mpz_t());
                x = (x - fx * inv) % m;
                if (x < 0) x += m;
            }
            auto q = detail::reconstruct(x, m);
            if (!q) continue;
            mpq_class acc = 0;
            for (std::size_t i = f.size(); i-- > 0;) acc = acc * *q + f[i];
            if (sgn(acc) == 0) out.push_back(*q);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- dispatch --------------------------------------------------------

/// Characteristic polynomial det(xI - m) by reduction to Hessenberg form.
inline std::vector<Scalar> charpoly(Mat h) {
    const Field f = h.field();
    const std::size_t n = h.rows();
    if (h.cols() != n) throw ShapeError("charpoly of a non-square matrix");
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t piv = j + 1;
        while (piv < n && h(piv, j).is_zero()) ++piv;
        if (piv == n) continue;
        if (piv != j + 1) {
            for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
            for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
        }
        const Scalar inv = h(j + 1, j).inverse();
        for (std::size_t i = j + 2; i < n; ++i) {
            if (h(i, j).is_zero()) continue;
            const Scalar u = h(i, j) * inv;
            for (std::size_t c = 0; c < n; ++c) h(i, c) -= u * h(j + 1, c);
            for (std::size_t r = 0; r < n; ++r) h(r, j + 1) += u * h(r, i);
        }
    }
    // p_k = (x - h_kk) p_{k-1} - sum_i h_{k-i,k} prod(subdiag) p_{k-i-1}
    std::vector<std::vector<Scalar>> p(n + 1);
    p[0] = {Scalar::one(f)};
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<Scalar> next(k + 1, Scalar::zero(f));
        for (std::size_t i = 0; i < p[k - 1].size(); ++i) {
            next[i + 1] += p[k - 1][i];
            next[i] -= h(k - 1, k - 1) * p[k - 1][i];
        }
        Scalar prod = Scalar::one(f);
        for (std::size_t i = 1; i < k; ++i) {
            prod *= h(k - i, k - i - 1);
            if (prod.is_zero()) break;
            const Scalar c = h(k - i - 1, k - 1) * prod;
            for (std::size_t t = 0; t < p[k - i - 1].size(); ++t) next[t] -= c * p[k - i - 1][t];
        }
        p[k] = std::move(next);
    }
    return p[n];
}

/// Distinct roots of a polynomial with coefficients in one field.
inline std::vector<Scalar> roots(const std::vector<Scalar>& coeffs, Field f) {
    std::vector<Scalar> out;
    if (f.is_rational()) {
        QPoly q;
        for (const auto& c : coeffs) q.push_back(c.rational());
        for (const auto& r : roots(q)) out.emplace_back(f, r);
    } else {
        ModPoly m;
        for (const auto& c : coeffs) m.push_back(c.residue());
        for (auto r : roots(m, f.p)) out.emplace_back(f, static_cast<long>(r));
    }
    return out;
}

}  // namespace adjq::poly
