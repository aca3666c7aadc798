#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "adjq/adjunction.hpp"

namespace adjq {

/// rho*: D* -> C*, the transpose.
inline AlgebraMap dual_map(const CoalgebraMap& rho, const AlgebraPtr& dstar, const AlgebraPtr& cstar) {
    if (dstar->dim() != rho.target->dim() || cstar->dim() != rho.source->dim()) throw ShapeError("dual_map: algebras do not match the map");
    return {dstar, cstar, rho.matrix.transpose()};
}

inline AlgebraMap dual_map(const CoalgebraMap& rho) {
    return dual_map(rho, std::make_shared<const FiniteAlgebra>(dual_algebra(*rho.target)),
                    std::make_shared<const FiniteAlgebra>(dual_algebra(*rho.source)));
}

/// k<<Q>>/J^{N+1}: paths of length <= N with truncated concatenation.
struct TruncatedPathAlgebra {
    AlgebraPtr algebra;  // carries the length grading
    KQuiver quiver;
    std::size_t degree = 0;
    std::vector<Path> paths;
    std::vector<std::size_t> grading;
    std::map<std::vector<std::size_t>, std::size_t> chain_index;
    AlgebraMap to_dual;  // onto dual_algebra(path_coalgebra(quiver, degree))

    std::size_t arrow_path(std::size_t arrow) const { return chain_index.at({arrow}); }

    /// Span of basis paths of length >= n.
    Subspace length_at_least(std::size_t n) const {
        const Field f = algebra->field();
        std::vector<Vec> vs;
        for (std::size_t i = 0; i < paths.size(); ++i)
            if (grading[i] >= n) vs.push_back(unit_vec(f, paths.size(), i));
        return Subspace::span(f, paths.size(), vs);
    }
};

inline TruncatedPathAlgebra truncated_path_algebra(const KQuiver& q, std::size_t N, Field f) {
    TruncatedPathAlgebra t;
    t.quiver = q;
    t.degree = N;
    t.paths = enumerate_paths(q, N);
    const std::size_t n = t.paths.size();
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(path_name(q, t.paths[i]));
        t.grading.push_back(t.paths[i].length());
        if (t.paths[i].length() > 0) t.chain_index[t.paths[i].arrows] = i;
    }
    const Scalar one = Scalar::one(f);
    std::vector<SparseVec> mult(n * n);
    Vec unit = zero_vec(f, n);
    for (std::size_t j = 0; j < n; ++j) {
        const Path& w = t.paths[j];
        if (w.length() == 0) unit[j] = one;
        for (std::size_t k = 0; k < n; ++k) {
            const Path& v = t.paths[k];
            if (w.source != v.target || w.length() + v.length() > N) continue;
            std::size_t idx;
            if (w.length() == 0) {
                idx = k;
            } else if (v.length() == 0) {
                idx = j;
            } else {
                std::vector<std::size_t> wv = w.arrows;
                wv.insert(wv.end(), v.arrows.begin(), v.arrows.end());
                idx = t.chain_index.at(wv);
            }
            mult[j * n + k].emplace(idx, one);
        }
    }
    auto alg = std::make_shared<FiniteAlgebra>(f, std::move(labels), std::move(mult), std::move(unit));
    alg->set_grading(t.grading);
    t.algebra = alg;

    auto dual = std::make_shared<const FiniteAlgebra>(dual_algebra(*path_coalgebra(q, N, f).coalgebra));
    t.to_dual = {t.algebra, dual, Mat::identity(f, n)};
    Report r = verify_algebra_map(t.to_dual);
    if (!r) throw NotAlgebraMap("path algebra does not match the dual of the path coalgebra: " + r.failure + " at " + r.witness);
    return t;
}

inline TruncatedPathAlgebra truncated_path_algebra(const Quiver& q, std::size_t N, Field f) { return truncated_path_algebra(to_kquiver(q), N, f); }

// ---- congruence of algebra maps -----------------------------------------

/// alpha ~ beta: (alpha-beta)(A) in J(B) and (alpha-beta)(J(A)) in J^2(B).
inline bool alg_congruent(const AlgebraMap& alpha, const AlgebraMap& beta) {
    if (alpha.matrix.rows() != beta.matrix.rows() || alpha.matrix.cols() != beta.matrix.cols())
        throw ShapeError("maps of shape " + alpha.matrix.shape() + " and " + beta.matrix.shape());
    const Mat diff = alpha.matrix - beta.matrix;
    const Subspace jb = radical_space(*alpha.target);
    const Subspace jb2 = product_space(*alpha.target, jb, jb);
    const Subspace ja = radical_space(*alpha.source);
    for (std::size_t i = 0; i < diff.cols(); ++i)
        if (!jb.contains(diff.col(i))) return false;
    for (const auto& v : ja.basis_vectors())
        if (!jb2.contains(diff.apply(v))) return false;
    return true;
}

// ---- relation ideals and generator degrees ------------------------------

/// I in J^2.
inline bool is_relation_ideal(const TwoSidedIdeal& i) {
    return radical_power_space(*i.algebra, 2).contains(i.space);
}

namespace detail {

inline Vec graded_part(const Vec& v, const std::vector<std::size_t>& grading, std::size_t n) {
    Vec out = v;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (grading[i] != n) out[i] = Scalar::zero(v[i].field());
    return out;
}

inline Subspace graded_component(const Subspace& s, const std::vector<std::size_t>& grading, std::size_t n) {
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < grading.size(); ++i)
        if (grading[i] == n) vs.push_back(unit_vec(s.field(), s.ambient(), i));
    return intersect(s, Subspace::span(s.field(), s.ambient(), vs));
}

inline std::size_t top_degree(const std::vector<std::size_t>& grading) {
    return grading.empty() ? 0 : *std::max_element(grading.begin(), grading.end());
}

}  // namespace detail

inline bool is_homogeneous(const TwoSidedIdeal& i) {
    const auto& g = i.algebra->grading();
    if (!g) throw NotHomogeneous("algebra carries no grading");
    for (const auto& v : i.space.basis_vectors())
        for (std::size_t n = 0; n <= detail::top_degree(*g); ++n)
            if (!i.space.contains(detail::graded_part(v, *g, n))) return false;
    return true;
}

/// Degrees n with (I / (IJ + JI))_n nonzero.
inline std::set<std::size_t> minimal_generator_degrees(const TwoSidedIdeal& i) {
    const FiniteAlgebra& a = *i.algebra;
    if (!is_homogeneous(i)) throw NotHomogeneous("ideal is not spanned by homogeneous elements");
    if (!is_relation_ideal(i)) throw NotRelationIdeal("ideal is not contained in J^2");
    const auto& g = *a.grading();
    const Subspace j = radical_space(a);
    const Subspace dec = sum(product_space(a, i.space, j), product_space(a, j, i.space));
    std::set<std::size_t> out;
    for (std::size_t n = 0; n <= detail::top_degree(g); ++n)
        if (detail::graded_component(i.space, g, n).dim() > detail::graded_component(dec, g, n).dim()) out.insert(n);
    return out;
}

/// J-adic version for ideals that need not be homogeneous: entry n is
/// dim of (L cap J^n) / ((LJ + JL) cap J^n + L cap J^{n+1}).
inline std::vector<std::size_t> filtered_generator_profile(const TwoSidedIdeal& l) {
    const FiniteAlgebra& a = *l.algebra;
    const Subspace j = radical_space(a);
    const Subspace dec = sum(product_space(a, l.space, j), product_space(a, j, l.space));
    std::vector<Subspace> powers{Subspace::full(a.field(), a.dim()), j};
    while (powers.back().dim() > 0) powers.push_back(product_space(a, powers.back(), j));
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n + 1 < powers.size(); ++n) {
        Subspace ln = intersect(l.space, powers[n]);
        Subspace below = sum(intersect(dec, powers[n]), intersect(l.space, powers[n + 1]));
        out.push_back(ln.dim() - below.dim());
    }
    return out;
}

inline std::set<std::size_t> filtered_generator_degrees(const TwoSidedIdeal& l) {
    std::set<std::size_t> out;
    auto prof = filtered_generator_profile(l);
    for (std::size_t n = 0; n < prof.size(); ++n)
        if (prof[n] > 0) out.insert(n);
    return out;
}

/// Image of an ideal under an algebra endomorphism, closed again.
inline TwoSidedIdeal image_ideal(const AlgebraMap& phi, const TwoSidedIdeal& i) {
    std::vector<Vec> gens;
    for (const auto& g : i.generators) gens.push_back(phi.matrix.apply(g));
    return ideal_closure(phi.target, gens);
}

// ---- pairs and tensor algebras ------------------------------------------

/// (A/J, J/J^2) with A/J = k^m.
struct AlgebraPair {
    AlgebraPtr base;
    std::vector<std::string> labels;  // basis of U
    std::vector<Mat> left;            // left[i]: u -> b_i u on U
    std::vector<Mat> right;           // right[i]: u -> u b_i

    std::size_t udim() const { return labels.size(); }
};

inline Report verify_pair(const AlgebraPair& p) {
    const FiniteAlgebra& a = *p.base;
    Report r = verify_algebra(a);
    if (!r) return r;
    const Field f = a.field();
    const std::size_t n = a.dim(), u = p.udim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Mat li(f, u, u), ri(f, u, u);
            for (const auto& [k, c] : a.mult(i, j)) {
                li = li + scaled_mat(c, p.left[k]);
                ri = ri + scaled_mat(c, p.right[k]);
            }
            if (!(p.left[i] * p.left[j] == li)) return Report::fail("left action is multiplicative", a.labels()[i] + "*" + a.labels()[j]);
            if (!(p.right[j] * p.right[i] == ri)) return Report::fail("right action is multiplicative", a.labels()[i] + "*" + a.labels()[j]);
            if (!(p.left[i] * p.right[j] == p.right[j] * p.left[i])) return Report::fail("actions commute", a.labels()[i] + "," + a.labels()[j]);
        }
    Mat lu(f, u, u), ru(f, u, u);
    for (std::size_t k = 0; k < n; ++k) {
        lu = lu + scaled_mat(a.unit()[k], p.left[k]);
        ru = ru + scaled_mat(a.unit()[k], p.right[k]);
    }
    if (!(lu == Mat::identity(f, u)) || !(ru == Mat::identity(f, u))) return Report::fail("unit acts as identity", "1");
    return Report::pass();
}

/// Characters of a pointed semisimple algebra, one row per character.
inline Mat characters(const FiniteAlgebra& a) {
    Coalgebra dual = dual_coalgebra(a);
    std::vector<Vec> gl;
    try {
        gl = group_likes(dual);
    } catch (const NotPointed& e) {
        throw NotPointed(std::string("semisimple quotient is not a product of copies of the field: ") + e.what());
    }
    if (gl.size() != a.dim()) throw NotPointed("semisimple quotient is not a product of copies of the field");
    return Mat::from_rows(a.field(), gl, a.dim());
}

inline AlgebraPair pair_of_algebra(const FiniteAlgebra& a) {
    const Field f = a.field();
    const std::size_t n = a.dim();
    const Subspace j = radical_space(a);
    const Subspace j2 = product_space(a, j, j);
    const auto free = j.free_columns();
    const Mat q = j.quotient_map();
    const std::size_t m = free.size();

    std::vector<std::string> qlabels;
    for (auto c : free) qlabels.push_back(a.labels()[c]);
    std::vector<SparseVec> qmult(m * m);
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) qmult[x * m + y] = to_sparse(q.apply(to_dense(f, a.mult(free[x], free[y]), n)));
    auto base = std::make_shared<const FiniteAlgebra>(f, qlabels, std::move(qmult), q.apply(a.unit()));
    characters(*base);

    AlgebraPair p;
    p.base = base;
    const Subspace u = complement_in(j2, j);
    const auto ub = u.basis_vectors();
    for (std::size_t k = 0; k < ub.size(); ++k) p.labels.push_back(detail::vector_label(a.labels(), ub[k], "u" + std::to_string(k + 1)));
    for (std::size_t x = 0; x < m; ++x) {
        Mat l(f, ub.size(), ub.size()), r(f, ub.size(), ub.size());
        SparseVec bx{{free[x], Scalar::one(f)}};
        for (std::size_t k = 0; k < ub.size(); ++k) {
            auto sk = to_sparse(ub[k]);
            l.set_col(k, u.coordinates(j2.reduce(to_dense(f, a.multiply(bx, sk), n))));
            r.set_col(k, u.coordinates(j2.reduce(to_dense(f, a.multiply(sk, bx), n))));
        }
        p.left.push_back(std::move(l));
        p.right.push_back(std::move(r));
    }
    return p;
}

struct TensorAlgebra {
    TruncatedPathAlgebra path;  // the same algebra presented over its Ext quiver
    AlgebraPtr algebra;         // relabelled by the pair's names
    std::vector<Vec> idempotents;
};

/// T(A, U) truncated at N, realised as the path algebra of the quiver whose
/// arrows g -> h are a basis of e_h U e_g.
inline TensorAlgebra tensor_algebra(const AlgebraPair& p, std::size_t N) {
    const FiniteAlgebra& a = *p.base;
    const Field f = a.field();
    const std::size_t m = a.dim(), u = p.udim();
    const Mat idem = *inverse(characters(a));
    std::vector<Vec> es;
    std::vector<std::string> vnames;
    for (std::size_t i = 0; i < m; ++i) {
        es.push_back(idem.col(i));
        vnames.push_back(detail::vector_label(a.labels(), es.back(), "e" + std::to_string(i + 1)));
    }
    auto act = [&](const std::vector<Mat>& side, const Vec& x) {
        Mat out(f, u, u);
        for (std::size_t i = 0; i < m; ++i)
            if (!x[i].is_zero()) out = out + scaled_mat(x[i], side[i]);
        return out;
    };
    KQuiver q(vnames);
    std::vector<std::string> arrow_labels;
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t h = 0; h < m; ++h) {
            Subspace piece = image(act(p.left, es[h]) * act(p.right, es[g]));
            for (std::size_t k = 0; k < piece.dim(); ++k) {
                std::string name = detail::vector_label(p.labels, piece.basis_vector(k), vnames[g] + ">" + vnames[h] + "#" + std::to_string(k + 1));
                q.add_arrow(g, h, name);
            }
        }
    TensorAlgebra t;
    t.path = truncated_path_algebra(q, N, f);
    t.idempotents = es;
    std::vector<std::string> labels = t.path.algebra->labels();
    for (std::size_t v = 0; v < m; ++v) labels[v] = vnames[v];
    auto relabelled = std::make_shared<FiniteAlgebra>(f, labels, t.path.algebra->structure(), t.path.algebra->unit());
    relabelled->set_grading(t.path.grading);
    t.algebra = relabelled;
    return t;
}

// ---- presentations --------------------------------------------------------

/// rho = k[Psi(delta) Psi(gamma)^{-1}] with rho gamma ~ delta.
inline CoalgebraMap transport_presentation(const CoalgebraMap& gamma, const CoalgebraMap& delta, const PathCoalgebra& pc) {
    if (!is_admissible(gamma, pc)) throw NotAdmissible("first embedding is not admissible");
    if (!is_admissible(delta, pc)) throw NotAdmissible("second embedding is not admissible");
    KQuiverMap pg = psi(gamma, pc), pd = psi(delta, pc);
    if (!is_iso(pg) || !is_iso(pd)) throw NotAdmissible("Psi of an admissible embedding is not an isomorphism");
    KQuiverMap phi = compose(pd, inverse(pg));
    CoalgebraMap rho = lift_kquiver_map(phi, pc, pc);
    CoalgebraMap rg{gamma.source, pc.coalgebra, rho.matrix * gamma.matrix};
    CoalgebraMap d{delta.source, pc.coalgebra, delta.matrix};
    if (!coalg_congruent(rg, d)) throw NotCongruentToIdentity("transported automorphism does not carry gamma to delta");
    return rho;
}

struct Alignment {
    AlgebraMap psi;
    AlgebraMap inverse;
};

/// psi' ~ id on k<<Q>>/J^{N+1} with gamma' psi' = delta' exactly.
inline Alignment align_presentations(const AlgebraMap& gamma, const AlgebraMap& delta, const TruncatedPathAlgebra& t) {
    const Field f = t.algebra->field();
    const std::size_t n = t.paths.size();
    if (gamma.matrix.cols() != n || delta.matrix.cols() != n || gamma.matrix.rows() != delta.matrix.rows())
        throw ShapeError("align: maps do not start at the path algebra");
    const std::size_t m = t.quiver.vertex_count();
    for (std::size_t v = 0; v < m; ++v)
        if (!(gamma.matrix.col(v) == delta.matrix.col(v))) throw NormalizationRequired("presentations differ on the idempotent e" + t.quiver.vertices()[v]);

    Mat psi(f, n, n);
    for (std::size_t v = 0; v < m; ++v) psi(v, v) = Scalar::one(f);
    for (std::size_t x = 0; x < t.quiver.arrow_count(); ++x) {
        const auto& ar = t.quiver.arrows()[x];
        std::vector<std::size_t> cand;
        for (std::size_t i = 0; i < n; ++i)
            if (t.grading[i] >= 2 && t.paths[i].source == ar.src && t.paths[i].target == ar.tgt) cand.push_back(i);
        const std::size_t col = t.arrow_path(x);
        Vec rhs = delta.matrix.col(col) - gamma.matrix.col(col);
        Mat sys(f, gamma.matrix.rows(), cand.size());
        for (std::size_t k = 0; k < cand.size(); ++k) sys.set_col(k, gamma.matrix.col(cand[k]));
        auto y = solve(sys, rhs);
        if (!y) throw NoLift("no correction in e_h J^2 e_g for arrow " + ar.name);
        psi(col, col) = Scalar::one(f);
        for (std::size_t k = 0; k < cand.size(); ++k) psi(cand[k], col) += (*y)[k];
    }
    // multiplicative extension along each path, shortest first
    for (std::size_t i = 0; i < n; ++i) {
        if (t.grading[i] < 2) continue;
        const auto& w = t.paths[i].arrows;
        std::vector<std::size_t> rest(w.begin() + 1, w.end());
        Vec img = t.algebra->multiply(psi.col(t.arrow_path(w.front())), psi.col(t.chain_index.at(rest)));
        psi.set_col(i, img);
    }
    AlgebraMap out{t.algebra, t.algebra, psi};
    Report r = verify_algebra_map(out);
    if (!r) throw NoLift("extension is not an algebra map: " + r.failure);
    if (!(gamma.matrix * psi == delta.matrix)) throw NoLift("gamma' psi' differs from delta'");

    // invertibility through the dual coalgebra map
    auto pc = path_coalgebra(t.quiver, t.degree, f);
    CoalgebraMap dual{pc.coalgebra, pc.coalgebra, psi.transpose()};
    CoalgebraMap inv = invert_mod_congruence(dual);
    return {out, {t.algebra, t.algebra, inv.matrix.transpose()}};
}

}  // namespace adjq
