#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "adjq/pseudocompact.hpp"

namespace adjq::fuzz {

/// Seeded source of small random choices. Draws use the raw engine output
/// so a seed gives the same sequence on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(eng_() % n); }
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
    bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

    Scalar scalar(Field f, bool nonzero = false) {
        for (;;) {
            Scalar s;
            if (f.is_rational()) {
                const long num = static_cast<long>(below(7)) - 3;
                const long den = chance(1, 4) ? static_cast<long>(between(2, 3)) : 1;
                s = Scalar(f, num) / Scalar(f, den);
            } else {
                s = Scalar(f, static_cast<long>(below(f.p)));
            }
            if (!nonzero || !s.is_zero()) return s;
        }
    }

private:
    std::mt19937_64 eng_;
};

/// Number of paths of length <= d, without enumerating them.
inline std::size_t path_count(const KQuiver& q, std::size_t d) {
    std::vector<std::size_t> ending(q.vertex_count(), 1);  // paths ending at v of the current length
    std::size_t total = q.vertex_count();
    for (std::size_t len = 1; len <= d; ++len) {
        std::vector<std::size_t> next(q.vertex_count(), 0);
        for (const auto& a : q.arrows()) next[a.tgt] += ending[a.src];
        for (auto x : next) total += x;
        ending = std::move(next);
        if (total > (1u << 20)) break;
    }
    return total;
}

/// Largest d' in [1, d] whose truncation stays within cap (1 if none does).
inline std::size_t fit_degree(const KQuiver& q, std::size_t d, std::size_t cap) {
    while (d > 1 && path_count(q, d) > cap) --d;
    return std::max<std::size_t>(d, 1);
}

inline KQuiver random_kquiver(Rng& rng, std::size_t max_vertices, std::size_t max_arrows, bool loops = true) {
    const std::size_t m = rng.between(1, max_vertices);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i) names.push_back(std::to_string(i + 1));
    KQuiver q(names);
    const std::size_t k = rng.below(max_arrows + 1);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t s = rng.below(m), t = rng.below(m);
        if (s == t && (!loops || rng.chance(1, 2))) t = (s + 1) % m;
        if (s == t && !loops) continue;
        q.add_arrow(s, t, std::string(1, static_cast<char>('a' + i)));
    }
    return q;
}

// ---- automorphisms of truncated path algebras ---------------------------

/// Completes gen (columns for stationary paths and arrows) multiplicatively.
inline Mat extend_multiplicatively(const TruncatedPathAlgebra& t, Mat gen) {
    for (std::size_t i = 0; i < t.paths.size(); ++i) {
        if (t.grading[i] < 2) continue;
        const auto& w = t.paths[i].arrows;
        std::vector<std::size_t> rest(w.begin() + 1, w.end());
        gen.set_col(i, t.algebra->multiply(gen.col(t.arrow_path(w.front())), gen.col(t.chain_index.at(rest))));
    }
    return gen;
}

inline Mat random_invertible(Rng& rng, Field f, std::size_t k) {
    for (;;) {
        Mat b(f, k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) b(i, j) = rng.scalar(f);
        if (rank(b) == k) return b;
    }
}

/// Invertible blocks on every arrow space, vertices fixed.
inline Mat graded_automorphism(Rng& rng, const TruncatedPathAlgebra& t) {
    const Field f = t.algebra->field();
    Mat gen = Mat::identity(f, t.paths.size());
    for (auto [g, h] : t.quiver.pairs()) {
        const auto& sp = t.quiver.space(g, h);
        Mat b = random_invertible(rng, f, sp.size());
        for (std::size_t c = 0; c < sp.size(); ++c) {
            Vec col = zero_vec(f, t.paths.size());
            for (std::size_t r = 0; r < sp.size(); ++r) col[t.arrow_path(sp[r])] = b(r, c);
            gen.set_col(t.arrow_path(sp[c]), col);
        }
    }
    return extend_multiplicatively(t, gen);
}

/// x -> x + (random element of e_h J^2 e_g) on each arrow x: g -> h.
inline Mat unipotent_substitution(Rng& rng, const TruncatedPathAlgebra& t) {
    const Field f = t.algebra->field();
    Mat gen = Mat::identity(f, t.paths.size());
    for (std::size_t x = 0; x < t.quiver.arrow_count(); ++x) {
        const auto& ar = t.quiver.arrows()[x];
        const std::size_t col = t.arrow_path(x);
        for (std::size_t i = 0; i < t.paths.size(); ++i)
            if (t.grading[i] >= 2 && t.paths[i].source == ar.src && t.paths[i].target == ar.tgt && rng.chance(1, 2))
                gen(i, col) = rng.scalar(f);
    }
    return extend_multiplicatively(t, gen);
}

/// Conjugation by 1 + j for a random j in J.
inline Mat inner_automorphism(Rng& rng, const TruncatedPathAlgebra& t) {
    const Field f = t.algebra->field();
    const std::size_t n = t.paths.size();
    Vec j = zero_vec(f, n);
    std::vector<std::size_t> positive;
    for (std::size_t i = 0; i < n; ++i)
        if (t.grading[i] >= 1) positive.push_back(i);
    if (positive.empty()) return Mat::identity(f, n);
    for (std::size_t k = rng.between(1, 3); k > 0; --k) j[positive[rng.below(positive.size())]] += rng.scalar(f);
    Vec u = t.algebra->unit() + j, uinv = t.algebra->unit(), term = t.algebra->unit();
    const Vec negj = scaled(Scalar(f, -1L), j);
    for (std::size_t k = 0; k < t.degree; ++k) {
        term = t.algebra->multiply(term, negj);
        uinv = uinv + term;
    }
    Mat out(f, n, n);
    for (std::size_t i = 0; i < n; ++i) out.set_col(i, t.algebra->multiply(t.algebra->multiply(u, unit_vec(f, n, i)), uinv));
    return out;
}

/// A random automorphism congruent to the identity.
inline Mat near_identity_automorphism(Rng& rng, const TruncatedPathAlgebra& t) {
    return unipotent_substitution(rng, t) * inner_automorphism(rng, t);
}

inline Mat random_automorphism(Rng& rng, const TruncatedPathAlgebra& t) {
    return graded_automorphism(rng, t) * near_identity_automorphism(rng, t);
}

// ---- coalgebras -----------------------------------------------------------

/// A coalgebra isomorphic to c through a sparse random change of basis;
/// to_original is the isomorphism onto c.
struct Scrambled {
    CoalgebraPtr coalgebra;
    CoalgebraMap to_original;
    CoalgebraMap from_original;
};

inline Scrambled scramble(Rng& rng, const CoalgebraPtr& c, std::size_t ops) {
    const Field f = c->field();
    const std::size_t n = c->dim();
    Mat m = Mat::identity(f, n), minv = m;
    for (std::size_t k = 0; k < ops && n > 1; ++k) {
        const std::size_t i = rng.below(n);
        std::size_t j = rng.below(n - 1);
        if (j >= i) ++j;
        const Scalar s = rng.scalar(f, true);
        // m <- m (I + s E_ij), minv <- (I - s E_ij) minv
        for (std::size_t r = 0; r < n; ++r) m(r, j) += s * m(r, i);
        for (std::size_t col = 0; col < n; ++col) minv(i, col) -= s * minv(j, col);
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i + 1));
    std::vector<SparseVec> delta(n);
    Vec counit(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec col = m.col(i);
        delta[i] = tensor_apply(minv, c->comultiply(col), n);
        counit[i] = c->counit_of(col);
    }
    auto sc = std::make_shared<const Coalgebra>(f, std::move(labels), std::move(delta), std::move(counit));
    return {sc, {sc, c, m}, {c, sc, minv}};
}

struct Subcoalgebra {
    CoalgebraPtr coalgebra;
    CoalgebraMap inclusion;
};

/// Span of the paths of length <= 1 plus every contiguous subword of a few
/// random longer paths: an admissible subcoalgebra of k[Q].
inline Subcoalgebra random_subcoalgebra(Rng& rng, const PathCoalgebra& pc) {
    const Field f = pc.coalgebra->field();
    const std::size_t n = pc.paths.size();
    std::set<std::size_t> keep;
    std::vector<std::size_t> longer;
    for (std::size_t i = 0; i < n; ++i) (pc.grading[i] <= 1 ? keep.insert(i), void() : longer.push_back(i));
    for (std::size_t k = rng.below(3); k > 0 && !longer.empty(); --k) {
        const auto& w = pc.paths[longer[rng.below(longer.size())]].arrows;
        for (std::size_t a = 0; a < w.size(); ++a)
            for (std::size_t b = a + 1; b <= w.size(); ++b) keep.insert(*pc.find({w.begin() + static_cast<long>(a), w.begin() + static_cast<long>(b)}));
    }
    std::vector<std::size_t> idx(keep.begin(), keep.end());
    std::map<std::size_t, std::size_t> slot;
    for (std::size_t i = 0; i < idx.size(); ++i) slot[idx[i]] = i;
    const std::size_t k = idx.size();
    std::vector<std::string> labels;
    std::vector<SparseVec> delta(k);
    Vec counit(k);
    Mat inc(f, n, k);
    for (std::size_t i = 0; i < k; ++i) {
        labels.push_back(pc.coalgebra->labels()[idx[i]]);
        for (const auto& [t, c] : pc.coalgebra->delta(idx[i])) delta[i].emplace(slot.at(t / n) * k + slot.at(t % n), c);
        counit[i] = pc.coalgebra->counit()[idx[i]];
        inc(idx[i], i) = Scalar::one(f);
    }
    auto sub = std::make_shared<const Coalgebra>(f, std::move(labels), std::move(delta), std::move(counit));
    return {sub, {sub, pc.coalgebra, inc}};
}

// ---- enumeration ------------------------------------------------------------

/// Every coalgebra automorphism of c, by exhausting all n x n matrices.
inline std::vector<CoalgebraMap> enumerate_automorphisms(const CoalgebraPtr& c) {
    const Field f = c->field();
    if (f.is_rational()) throw DimensionCap("exhaustive enumeration needs a finite field");
    const std::size_t n = c->dim();
    double total = 1;
    for (std::size_t i = 0; i < n * n; ++i) total *= static_cast<double>(f.p);
    if (total > double(1u << 22)) throw DimensionCap("too many matrices to enumerate");
    std::vector<CoalgebraMap> out;
    std::vector<std::uint64_t> digits(n * n, 0);
    for (std::uint64_t code = 0; code < static_cast<std::uint64_t>(total); ++code) {
        std::uint64_t x = code;
        Mat m(f, n, n);
        for (std::size_t i = 0; i < n * n; ++i) {
            m(i / n, i % n) = Scalar(f, static_cast<long>(x % f.p));
            x /= f.p;
        }
        CoalgebraMap cand{c, c, m};
        if (rank(m) == n && verify_coalgebra_map(cand).ok) out.push_back(std::move(cand));
    }
    return out;
}

/// Number of classes under coalg_congruent.
inline std::size_t count_congruence_classes(const std::vector<CoalgebraMap>& maps) {
    std::vector<const CoalgebraMap*> reps;
    for (const auto& m : maps) {
        bool found = false;
        for (const auto* r : reps)
            if (coalg_congruent(*r, m)) {
                found = true;
                break;
            }
        if (!found) reps.push_back(&m);
    }
    return reps.size();
}

// ---- property suites --------------------------------------------------------

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t passed = 0;
    std::string first_failure;
    double seconds = 0;

    bool ok() const { return cases > 0 && passed == cases; }
};

inline SuiteResult run_suite(const std::string& name, std::size_t count, const std::function<Report(std::size_t)>& one) {
    SuiteResult r;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < count; ++i) {
        Report rep;
        try {
            rep = one(i);
        } catch (const Error& e) {
            rep = Report::fail(e.what(), "exception");
        }
        ++r.cases;
        if (rep.ok) {
            ++r.passed;
        } else if (r.first_failure.empty()) {
            r.first_failure = "case " + std::to_string(i) + ": " + rep.failure + " (" + rep.witness + ")";
        }
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

inline constexpr std::size_t default_cap = 40;

inline Field alternate_field(std::size_t i) { return i % 2 == 0 ? Field::rationals() : Field::prime(3); }

/// Both triangle identities on random quivers and random pointed coalgebras
/// built from them (the path coalgebra, a subcoalgebra, or a change of basis).
inline SuiteResult triangle_suite(std::uint64_t seed, std::size_t count, std::size_t cap = default_cap) {
    return run_suite("triangle identities", count, [&](std::size_t i) {
        Rng rng(seed * 1000003 + i);
        const Field f = alternate_field(i);
        KQuiver q = random_kquiver(rng, 4, 5);
        const std::size_t d = fit_degree(q, rng.between(1, 4), cap);
        PathCoalgebra pc = path_coalgebra(q, d, f);
        CoalgebraPtr c = pc.coalgebra;
        if (rng.chance(1, 2)) c = random_subcoalgebra(rng, pc).coalgebra;
        if (rng.chance(1, 2)) c = scramble(rng, c, 2 * c->dim()).coalgebra;
        TriangleReport t = check_triangle_identities(c, q, d);
        if (!t.counit_unit.ok) return t.counit_unit;
        if (!t.unit_counit.ok) return t.unit_counit;
        if (!t.counit_iso) return Report::fail("counit is an isomorphism", "VQ");
        if (!t.unit_injective) return Report::fail("unit is injective", "C");
        if (!t.unit_admissible) return Report::fail("unit image is admissible", "C");
        return Report::pass();
    });
}

struct MapPair {
    CoalgebraMap rho;
    CoalgebraMap gamma;
};

/// Maps into a path coalgebra: gamma = A^T composed with an embedding of a
/// (possibly rebased) subcoalgebra, rho = U^T gamma with U congruent to id.
/// With perturb, U also carries a graded automorphism, which usually breaks ~.
inline MapPair congruent_pair(Rng& rng, Field f, std::size_t cap, bool perturb = false) {
    KQuiver q = random_kquiver(rng, 4, 5);
    const std::size_t d = fit_degree(q, rng.between(1, 4), cap);
    auto t = truncated_path_algebra(q, d, f);
    PathCoalgebra pc = path_coalgebra(q, d, f);
    CoalgebraPtr src = pc.coalgebra;
    Mat emb = Mat::identity(f, pc.paths.size());
    if (rng.chance(1, 2)) {
        auto sub = random_subcoalgebra(rng, pc);
        src = sub.coalgebra;
        emb = sub.inclusion.matrix;
    }
    if (rng.chance(1, 2)) {
        auto sc = scramble(rng, src, 2 * src->dim());
        emb = emb * sc.to_original.matrix;
        src = sc.coalgebra;
    }
    Mat g = random_automorphism(rng, t).transpose() * emb;
    Mat u = near_identity_automorphism(rng, t);
    if (perturb) u = graded_automorphism(rng, t) * u;
    Mat r = u.transpose() * g;
    return {{src, pc.coalgebra, r}, {src, pc.coalgebra, g}};
}

inline SuiteResult propagation_suite(std::uint64_t seed, std::size_t count, std::size_t cap = default_cap) {
    return run_suite("congruence propagation", count, [&](std::size_t i) {
        Rng rng(seed * 1000033 + i);
        MapPair p = congruent_pair(rng, alternate_field(i), cap);
        Report v = verify_coalgebra_map(p.rho);
        if (!v) return v;
        if (!coalg_congruent(p.rho, p.gamma)) return Report::fail("constructed pair is congruent", "rho, gamma");
        return congruence_propagation(p.rho, p.gamma);
    });
}

inline SuiteResult inversion_suite(std::uint64_t seed, std::size_t count, std::size_t cap = default_cap) {
    return run_suite("reflects isomorphisms", count, [&](std::size_t i) {
        Rng rng(seed * 1000037 + i);
        const Field f = alternate_field(i);
        KQuiver q = random_kquiver(rng, 4, 5);
        const std::size_t d = fit_degree(q, rng.between(1, 4), cap);
        auto t = truncated_path_algebra(q, d, f);
        PathCoalgebra pc = path_coalgebra(q, d, f);
        CoalgebraMap rho{pc.coalgebra, pc.coalgebra, near_identity_automorphism(rng, t).transpose()};
        if (rng.chance(1, 2)) {
            auto sc = scramble(rng, pc.coalgebra, 2 * pc.paths.size());
            rho = {sc.coalgebra, sc.coalgebra, sc.from_original.matrix * rho.matrix * sc.to_original.matrix};
        }
        Report v = verify_coalgebra_map(rho);
        if (!v) return v;
        CoalgebraMap inv = invert_mod_congruence(rho);
        const Mat id = Mat::identity(f, rho.source->dim());
        if (!(rho.matrix * inv.matrix == id) || !(inv.matrix * rho.matrix == id)) return Report::fail("two-sided inverse", "rho");
        return Report::pass();
    });
}

/// Path algebra vs dual path coalgebra, and coalg_congruent vs alg_congruent
/// on pairs that are congruent about half of the time.
inline SuiteResult duality_suite(std::uint64_t seed, std::size_t count, std::size_t cap = default_cap) {
    return run_suite("duality", count, [&](std::size_t i) {
        Rng rng(seed * 1000039 + i);
        const Field f = alternate_field(i);
        MapPair p = congruent_pair(rng, f, cap, rng.chance(1, 2));
        const bool coalg = coalg_congruent(p.rho, p.gamma);
        auto dstar = std::make_shared<const FiniteAlgebra>(dual_algebra(*p.rho.target));
        auto cstar = std::make_shared<const FiniteAlgebra>(dual_algebra(*p.rho.source));
        const bool alg = alg_congruent(dual_map(p.rho, dstar, cstar), dual_map(p.gamma, dstar, cstar));
        if (coalg != alg) return Report::fail("coalg_congruent = alg_congruent of the duals", coalg ? "coalgebra side only" : "algebra side only");
        return Report::pass();
    });
}

/// Homogeneous degree-n relation ideals keep their generator
/// degrees under automorphisms (graded ones exactly, mixed ones J-adically).
inline SuiteResult degree_suite(std::uint64_t seed, std::size_t count, std::size_t cap = default_cap) {
    return run_suite("generator degrees", count, [&](std::size_t i) {
        Rng rng(seed * 1000081 + i);
        const Field f = alternate_field(i);
        const std::size_t n = 2 + i % 2;
        KQuiver q;
        std::size_t N = 0;
        std::vector<std::size_t> deg_n;
        TruncatedPathAlgebra t;
        for (;;) {
            q = random_kquiver(rng, 4, 5);
            N = std::min<std::size_t>(fit_degree(q, rng.between(n, 5), cap), 5);
            if (N < n) continue;
            t = truncated_path_algebra(q, N, f);
            deg_n.clear();
            for (std::size_t k = 0; k < t.paths.size(); ++k)
                if (t.grading[k] == n) deg_n.push_back(k);
            if (!deg_n.empty()) break;
        }
        // generators: random combinations inside some e_h A_n e_g
        std::vector<Vec> gens;
        for (std::size_t g = rng.between(1, 2); g > 0; --g) {
            const Path& anchor = t.paths[deg_n[rng.below(deg_n.size())]];
            Vec v = zero_vec(f, t.paths.size());
            for (auto k : deg_n)
                if (t.paths[k].source == anchor.source && t.paths[k].target == anchor.target) v[k] = rng.scalar(f);
            v[t.chain_index.at(anchor.arrows)] = rng.scalar(f, true);
            gens.push_back(std::move(v));
        }
        TwoSidedIdeal ideal = ideal_closure(t.algebra, gens);
        const auto degrees = minimal_generator_degrees(ideal);
        if (degrees != std::set<std::size_t>{n}) return Report::fail("homogeneous ideal generated in its degree", "n=" + std::to_string(n));
        const bool mixed = rng.chance(1, 2);
        AlgebraMap phi{t.algebra, t.algebra, mixed ? random_automorphism(rng, t) : graded_automorphism(rng, t)};
        Report v = verify_algebra_map(phi);
        if (!v) return v;
        TwoSidedIdeal image = image_ideal(phi, ideal);
        if (!is_relation_ideal(image)) return Report::fail("image is a relation ideal", "phi(I)");
        if (!mixed) {
            if (minimal_generator_degrees(image) != degrees) return Report::fail("graded automorphism preserves generator degrees", "phi(I)");
            return Report::pass();
        }
        if (filtered_generator_degrees(image) != degrees) return Report::fail("automorphism preserves J-adic generator degrees", "phi(I)");
        // L cap J^{n+1} in LJ + JL
        const FiniteAlgebra& a = *t.algebra;
        const Subspace j = radical_space(a);
        const Subspace dec = sum(product_space(a, image.space, j), product_space(a, j, image.space));
        if (!dec.contains(intersect(image.space, t.length_at_least(n + 1)))) return Report::fail("L cap J^{n+1} in LJ + JL", "phi(I)");
        return Report::pass();
    });
}

}  // namespace adjq::fuzz
