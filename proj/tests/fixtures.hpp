#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "adjq/pseudocompact.hpp"

namespace fx {

using namespace adjq;

inline const Field Q = Field::rationals();

/// a:1->3, b:1->2, c:2->3
inline KQuiver triangle() {
    return to_kquiver(Quiver({"1", "2", "3"}, {{"a", "1", "3"}, {"b", "1", "2"}, {"c", "2", "3"}}));
}

inline KQuiver loop() { return to_kquiver(Quiver({""}, {{"x", "", ""}})); }

inline KQuiver kronecker() {
    KQuiver k({"1", "2"});
    k.add_arrow(0, 1, "a");
    k.add_arrow(0, 1, "b");
    return k;
}

inline KQuiver point() { return KQuiver({"1"}); }

using Terms = std::initializer_list<std::pair<const char*, long>>;

/// Element of a labelled space from (label, coefficient) pairs.
inline Vec elem(Field f, const std::vector<std::string>& labels, Terms terms) {
    Vec v = zero_vec(f, labels.size());
    for (auto [l, c] : terms) {
        auto it = std::find(labels.begin(), labels.end(), l);
        if (it == labels.end()) throw ParseError(std::string("no basis vector ") + l);
        v[static_cast<std::size_t>(it - labels.begin())] += Scalar(f, c);
    }
    return v;
}

inline Vec elem(const Coalgebra& c, Terms t) { return elem(c.field(), c.labels(), t); }
inline Vec elem(const FiniteAlgebra& a, Terms t) { return elem(a.field(), a.labels(), t); }

inline Subspace span(const Coalgebra& c, std::initializer_list<Terms> vs) {
    std::vector<Vec> out;
    for (auto t : vs) out.push_back(elem(c, t));
    return Subspace::span(c.field(), c.dim(), out);
}

/// Identity with one column replaced.
inline CoalgebraMap with_column(const CoalgebraPtr& c, const char* label, Terms image) {
    Mat m = Mat::identity(c->field(), c->dim());
    m.set_col(c->index(label), elem(*c, image));
    return {c, c, m};
}

/// The triangle example automorphism a -> a + (e3 - e1).
inline CoalgebraMap triangle_example(const PathCoalgebra& pc) { return with_column(pc.coalgebra, "a", {{"a", 1}, {"e3", 1}, {"e1", -1}}); }

/// Graded automorphism scaling one arrow by k (and every path through it).
inline CoalgebraMap scale_arrow(const PathCoalgebra& pc, std::size_t arrow, long k) {
    Mat m = Mat::identity(pc.coalgebra->field(), pc.paths.size());
    for (std::size_t i = 0; i < pc.paths.size(); ++i)
        for (auto a : pc.paths[i].arrows)
            if (a == arrow) m(i, i) *= Scalar(pc.coalgebra->field(), k);
    return {pc.coalgebra, pc.coalgebra, m};
}

/// V_Q over Sigma = kQ_0 with mu(m) = h (x) m and nu(m) = m (x) g.
inline Bicomodule arrow_bicomodule(const KQuiver& q, Field f) {
    std::vector<std::string> vnames;
    for (const auto& v : q.vertices()) vnames.push_back("e" + v);
    CoalgebraPtr sigma = grouplike_coalgebra(f, vnames);
    const std::size_t m = q.arrow_count(), n = q.vertex_count();
    Bicomodule b{sigma, sigma, {}, SparseMat(f, n * m, m), SparseMat(f, m * n, m)};
    for (std::size_t i = 0; i < m; ++i) {
        b.labels.push_back(q.arrows()[i].name);
        b.mu.add(q.arrows()[i].tgt * m + i, i, Scalar::one(f));
        b.nu.add(i * n + q.arrows()[i].src, i, Scalar::one(f));
    }
    return b;
}

inline std::vector<std::string> path_names(const PathCoalgebra& pc) { return pc.coalgebra->labels(); }

/// Coalgebra dual to Q[x]/(x^2-2) (+) Q^2: one 2-dim simple block, two group-likes.
inline CoalgebraPtr sqrt2_coalgebra() {
    const Field f = Q;
    std::vector<std::string> labels{"u", "v", "g", "h"};
    const std::size_t n = 4;
    std::vector<SparseVec> delta(n);
    auto put = [&](std::size_t x, std::size_t l, std::size_t r, long c) { add_entry(delta[x], l * n + r, Scalar(f, c)); };
    put(0, 0, 0, 1);
    put(0, 1, 1, 2);
    put(1, 0, 1, 1);
    put(1, 1, 0, 1);
    put(2, 2, 2, 1);
    put(3, 3, 3, 1);
    Vec counit = zero_vec(f, n);
    counit[0] = counit[2] = counit[3] = Scalar::one(f);
    return std::make_shared<const Coalgebra>(f, labels, delta, counit);
}

}  // namespace fx
