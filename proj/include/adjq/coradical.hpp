#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "adjq/coalgebra.hpp"
#include "adjq/poly.hpp"

namespace adjq {

/// C_0: the annihilator of the radical of the dual algebra.
inline Subspace coradical(const Coalgebra& c) {
    Subspace j = radical_space(dual_algebra(c));
    return kernel(j.basis());
}

namespace detail {

/// ker((C -> C/C_0 (x) C/C_prev) o Delta) = Delta^{-1}(C (x) C_prev + C_0 (x) C).
inline Subspace next_filtration_term(const Coalgebra& c, const Subspace& c0, const Subspace& prev) {
    const std::size_t n = c.dim();
    auto q0 = c0.quotient_columns();
    auto qp = prev.quotient_columns();
    const std::size_t dp = n - prev.dim();
    SparseMat m(c.field(), (n - c0.dim()) * dp, n);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [t, coef] : c.delta(i))
            for (const auto& [a, x] : q0[t / n])
                for (const auto& [b, y] : qp[t % n]) m.add(a * dp + b, i, coef * x * y);
    return kernel(m);
}

}  // namespace detail

/// C_0 in C_1 in ... up to C, detected by subspace equality.
inline const std::vector<Subspace>& coradical_filtration(const Coalgebra& c) {
    auto& cache = c.cache();
    std::call_once(cache.filtration_once, [&] {
        std::vector<Subspace> out{coradical(c)};
        const Subspace full = Subspace::full(c.field(), c.dim());
        while (!(out.back() == full)) {
            Subspace next = detail::next_filtration_term(c, out.front(), out.back());
            if (next == out.back()) break;
            out.push_back(std::move(next));
        }
        cache.filtration = std::move(out);
    });
    return cache.filtration;
}

/// Least n with C_n = C.
inline std::size_t filtration_length(const Coalgebra& c) { return coradical_filtration(c).size() - 1; }

inline bool is_grouplike(const Coalgebra& c, const Vec& g) {
    if (!c.counit_of(g).is_one()) return false;
    auto sg = to_sparse(g);
    SparseVec gg;
    for (const auto& [i, a] : sg)
        for (const auto& [j, b] : sg) gg.emplace(i * c.dim() + j, a * b);
    return c.comultiply(sg) == gg;
}

namespace detail {

inline bool vec_less(const Vec& a, const Vec& b) {
    auto lead = [](const Vec& v) {
        std::size_t i = 0;
        while (i < v.size() && v[i].is_zero()) ++i;
        return i;
    };
    const std::size_t la = lead(a), lb = lead(b);
    if (la != lb) return la < lb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        const Field f = a[i].field();
        if (f.is_rational()) return a[i].rational() < b[i].rational();
        return a[i].residue() < b[i].residue();
    }
    return false;
}

/// Group-likes of C_0: common eigenvectors of R_j = (u^j (x) id) Delta on
/// C_0, where u^j reads the j-th pivot coordinate of C_0's RREF basis.
inline std::vector<Vec> compute_grouplikes(const Coalgebra& c) {
    const Field f = c.field();
    const std::size_t n = c.dim();
    const Subspace c0 = coradical_filtration(c).front();
    const std::size_t m = c0.dim();
    const auto& piv = c0.pivots();

    // ops[j] as an m x m matrix in C_0 coordinates
    std::vector<Mat> ops(m, Mat(f, m, m));
    for (std::size_t col = 0; col < m; ++col) {
        std::vector<Vec> img(m, zero_vec(f, n));
        for (const auto& [t, coef] : c.comultiply(c0.basis_vector(col))) {
            const std::size_t x = t / n, y = t % n;
            for (std::size_t j = 0; j < m; ++j)
                if (x == piv[j]) img[j][y] += coef;
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (!c0.contains(img[j])) throw NotPointed("coradical is not a subcoalgebra under the computed splitting");
            ops[j].set_col(col, c0.coordinates(img[j]));
        }
    }

    std::vector<Mat> pieces{Mat::identity(f, m)};  // rows span each piece
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<Mat> next;
        for (const Mat& w : pieces) {
            if (w.rows() <= 1) {
                next.push_back(w);
                continue;
            }
            // restriction of ops[j] to the row space of w, in w-coordinates
            Subspace ws = Subspace::row_space(w);
            const std::size_t k = ws.dim();
            Mat r(f, k, k);
            for (std::size_t a = 0; a < k; ++a) {
                Vec img = ops[j].apply(ws.basis_vector(a));
                if (!ws.contains(img)) throw NotPointed("coradical operators do not commute");
                r.set_col(a, ws.coordinates(img));
            }
            auto lambdas = poly::roots(poly::charpoly(r), f);
            std::size_t total = 0;
            for (const auto& lam : lambdas) {
                Mat shifted = r;
                for (std::size_t a = 0; a < k; ++a) shifted(a, a) -= lam;
                Subspace e = kernel(shifted);
                total += e.dim();
                std::vector<Vec> rows;
                for (const auto& v : e.basis_vectors()) rows.push_back(ws.basis().transpose().apply(v));
                next.push_back(Mat::from_rows(f, rows, m));
            }
            if (total != k) throw NotPointed("coradical does not split into one-dimensional pieces over " + f.to_string());
        }
        pieces = std::move(next);
    }
    std::vector<Vec> out;
    for (const Mat& w : pieces) {
        if (w.rows() != 1) throw NotPointed("simple subcoalgebra of dimension " + std::to_string(w.rows()));
        Vec g = c0.combine(w.row(0));
        const Scalar e = c.counit_of(g);
        if (e.is_zero()) throw NotPointed("eigenvector with zero counit");
        g = scaled(e.inverse(), g);
        if (!is_grouplike(c, g)) throw NotPointed("eigenvector is not group-like");
        out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(), vec_less);
    return out;
}

}  // namespace detail

/// Gr(C), sorted deterministically. Throws NotPointed if C_0 is not kG.
inline const std::vector<Vec>& group_likes(const Coalgebra& c) {
    auto& cache = c.cache();
    std::call_once(cache.grouplikes_once, [&] { cache.grouplikes = detail::compute_grouplikes(c); });
    return cache.grouplikes;
}

inline bool is_pointed(const Coalgebra& c) {
    try {
        return group_likes(c).size() == coradical_filtration(c).front().dim();
    } catch (const NotPointed&) {
        return false;
    }
}

/// P_{g,h} = {p | Delta(p) = p (x) g + h (x) p}.
inline Subspace primitive_space(const Coalgebra& c, const Vec& g, const Vec& h) {
    if (!is_grouplike(c, g)) throw NotGroupLike("first argument is not group-like");
    if (!is_grouplike(c, h)) throw NotGroupLike("second argument is not group-like");
    const std::size_t n = c.dim();
    SparseMat m(c.field(), n * n, n);
    auto sg = to_sparse(g), sh = to_sparse(h);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [t, coef] : c.delta(i)) m.add(t, i, coef);
        for (const auto& [j, a] : sg) m.add(i * n + j, i, -a);
        for (const auto& [j, a] : sh) m.add(j * n + i, i, -a);
    }
    return kernel(m);
}

struct PrimitiveQuotient {
    Subspace primitives;  // P_{g,h}
    Subspace complement;  // P'_{g,h}
    Mat quotient;         // P_{g,h} -> P_{g,h}/<h-g>, on P-coordinates
};

/// P' = canonical complement of <h-g> in P_{g,h}.
inline PrimitiveQuotient primitive_quotient(const Coalgebra& c, const Vec& g, const Vec& h) {
    Subspace p = primitive_space(c, g, h);
    Subspace hg = Subspace::span(c.field(), c.dim(), {h - g});
    Subspace pp = complement_in(hg, p);
    // coordinates in P of each basis vector of P, then project along <h-g>
    Mat q(c.field(), pp.dim(), p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) {
        Vec v = hg.reduce(p.basis_vector(i));
        q.set_col(i, pp.coordinates(v));
    }
    return {p, pp, q};
}

}  // namespace adjq
