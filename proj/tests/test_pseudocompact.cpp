#include <catch_amalgamated.hpp>

#include "adjq/fuzz.hpp"
#include "fixtures.hpp"

using namespace adjq;
using fx::Q;

namespace {

struct Quotient {
    AlgebraPtr algebra;
    AlgebraMap map;
};

/// A / I on the non-pivot basis of I.
Quotient quotient(const AlgebraPtr& a, const Subspace& i) {
    const Field f = a->field();
    const auto free = i.free_columns();
    const Mat q = i.quotient_map();
    const std::size_t m = free.size();
    std::vector<std::string> labels;
    for (auto c : free) labels.push_back(a->labels()[c]);
    std::vector<SparseVec> mult(m * m);
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) mult[x * m + y] = to_sparse(q.apply(to_dense(f, a->mult(free[x], free[y]), a->dim())));
    auto qa = std::make_shared<const FiniteAlgebra>(f, labels, mult, q.apply(a->unit()));
    return {qa, {a, qa, q}};
}

AlgebraMap from_columns(const TruncatedPathAlgebra& t, const Mat& m) { return {t.algebra, t.algebra, m}; }

/// x -> x + (image) on one arrow, extended multiplicatively.
AlgebraMap substitution(const TruncatedPathAlgebra& t, const char* arrow, fx::Terms extra) {
    Mat gen = Mat::identity(t.algebra->field(), t.paths.size());
    const std::size_t col = t.algebra->index(arrow);
    gen.set_col(col, gen.col(col) + fx::elem(*t.algebra, extra));
    return from_columns(t, fuzz::extend_multiplicatively(t, gen));
}

/// Relations f c (x) g - f (x) c g spanning the kernel of W* (x) M* -> W* (x)_{C*} M*.
std::size_t balanced_tensor_dim(const RightComodule& w, const LeftComodule& m) {
    const Field f = w.base->field();
    const std::size_t nc = w.base->dim(), dw = w.dim, dm = m.dim;
    // (phi . c*)(x) = sum phi(x_0) c*(x_1); (c* . psi)(y) = sum c*(y_-1) psi(y_0)
    std::vector<Vec> rel;
    for (std::size_t a = 0; a < dw; ++a)
        for (std::size_t c = 0; c < nc; ++c)
            for (std::size_t b = 0; b < dm; ++b) {
                Vec v = zero_vec(f, dw * dm);
                for (std::size_t x = 0; x < dw; ++x)
                    for (const auto& [t, coef] : w.nu.column(x))
                        if (t / nc == a && t % nc == c) v[x * dm + b] += coef;
                for (std::size_t y = 0; y < dm; ++y)
                    for (const auto& [t, coef] : m.mu.column(y))
                        if (t / dm == c && t % dm == b) v[a * dm + y] -= coef;
                if (!is_zero(v)) rel.push_back(v);
            }
    return dw * dm - Subspace::span(f, dw * dm, rel).dim();
}

}  // namespace

TEST_CASE("dual algebras and maps", "[pseudocompact]") {
    auto ks = grouplike_coalgebra(Q, {"s", "t", "u"});
    FiniteAlgebra kd = dual_algebra(*ks);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(kd.mult(i, j) == (i == j ? SparseVec{{i, Scalar::one(Q)}} : SparseVec{}));
    CHECK(kd.unit() == Vec(3, Scalar::one(Q)));

    PathCoalgebra t = path_coalgebra(fx::triangle(), 2, Q);
    FiniteAlgebra a = dual_algebra(*t.coalgebra);
    CHECK(a.dim() == 7);
    CHECK(verify_algebra(a).ok);
    const auto ix = [&](const char* l) { return a.index(l); };
    CHECK(a.mult(ix("c"), ix("b")) == SparseVec{{ix("cb"), Scalar::one(Q)}});
    for (const char* x : {"a", "b", "c"})
        for (const char* y : {"a", "b", "c"})
            if (std::string(x) + y != "cb") CHECK(a.mult(ix(x), ix(y)).empty());

    AlgebraMap d = dual_map(fx::triangle_example(t));
    CHECK(verify_algebra_map(d).ok);
    CHECK(alg_congruent(d, AlgebraMap{d.source, d.target, Mat::identity(Q, 7)}));
}

TEST_CASE("radicals", "[pseudocompact]") {
    auto semisimple = std::make_shared<const FiniteAlgebra>(dual_algebra(*grouplike_coalgebra(Q, {"s", "t"})));
    CHECK(radical(semisimple).space.dim() == 0);

    TruncatedPathAlgebra t = truncated_path_algebra(fx::triangle(), 2, Q);
    const FiniteAlgebra& a = *t.algebra;
    CHECK(radical_space(a) == Subspace::span(Q, 7, {fx::elem(a, {{"a", 1}}), fx::elem(a, {{"b", 1}}), fx::elem(a, {{"c", 1}}), fx::elem(a, {{"cb", 1}})}));
    CHECK(radical_power_space(a, 2) == Subspace::span(Q, 7, {fx::elem(a, {{"cb", 1}})}));
    CHECK(radical_power_space(a, 3).dim() == 0);

    TruncatedPathAlgebra l = truncated_path_algebra(fx::loop(), 2, Field::prime(3));
    CHECK(radical_space(*l.algebra) == l.length_at_least(1));
    CHECK(radical_power_space(*l.algebra, 2) == Subspace::span(Field::prime(3), 3, {fx::elem(*l.algebra, {{"xx", 1}})}));
}

TEST_CASE("truncated path algebras", "[pseudocompact]") {
    TruncatedPathAlgebra t = truncated_path_algebra(fx::triangle(), 2, Q);
    const FiniteAlgebra& a = *t.algebra;
    CHECK(a.dim() == 7);
    CHECK(a.multiply(fx::elem(a, {{"e3", 1}}), fx::elem(a, {{"c", 1}})) == fx::elem(a, {{"c", 1}}));
    CHECK(a.multiply(fx::elem(a, {{"c", 1}}), fx::elem(a, {{"e2", 1}})) == fx::elem(a, {{"c", 1}}));
    CHECK(a.multiply(fx::elem(a, {{"c", 1}}), fx::elem(a, {{"b", 1}})) == fx::elem(a, {{"cb", 1}}));
    CHECK(a.multiply(fx::elem(a, {{"b", 1}}), fx::elem(a, {{"c", 1}})) == zero_vec(Q, 7));
    CHECK(a.unit() == fx::elem(a, {{"e1", 1}, {"e2", 1}, {"e3", 1}}));

    TruncatedPathAlgebra p = truncated_path_algebra(KQuiver({"1", "2"}), 3, Q);
    CHECK(p.algebra->dim() == 2);
    CHECK(radical_space(*p.algebra).dim() == 0);

    // k[x]/(x^3)
    TruncatedPathAlgebra l = truncated_path_algebra(fx::loop(), 2, Q);
    const FiniteAlgebra& la = *l.algebra;
    CHECK(la.dim() == 3);
    CHECK(la.multiply(fx::elem(la, {{"x", 1}}), fx::elem(la, {{"x", 1}})) == fx::elem(la, {{"xx", 1}}));
    CHECK(is_zero(la.multiply(fx::elem(la, {{"x", 1}}), fx::elem(la, {{"xx", 1}}))));
}

TEST_CASE("congruence of algebra maps", "[pseudocompact]") {
    PathCoalgebra t = path_coalgebra(fx::triangle(), 2, Q);
    AlgebraMap d = dual_map(fx::triangle_example(t));
    CHECK(alg_congruent(d, d));
    AlgebraMap id{d.source, d.target, Mat::identity(Q, 7)};
    CHECK(alg_congruent(d, id));
    CHECK_FALSE(alg_congruent(dual_map(fx::scale_arrow(t, 0, 2)), id));
}

TEST_CASE("relation ideals", "[pseudocompact]") {
    TruncatedPathAlgebra t = truncated_path_algebra(fx::triangle(), 2, Q);
    const auto& a = t.algebra;
    auto cb = ideal_closure(a, {fx::elem(*a, {{"cb", 1}})});
    CHECK(cb.space == Subspace::span(Q, 7, {fx::elem(*a, {{"cb", 1}})}));
    CHECK(is_relation_ideal(cb));
    auto ar = ideal_closure(a, {fx::elem(*a, {{"a", 1}})});
    CHECK(ar.space.dim() == 1);
    CHECK_FALSE(is_relation_ideal(ar));
    auto zero = ideal_closure(a, {});
    CHECK(zero.space.dim() == 0);
    CHECK(is_relation_ideal(zero));
}

TEST_CASE("minimal generator degrees", "[pseudocompact]") {
    TruncatedPathAlgebra t = truncated_path_algebra(fx::triangle(), 2, Q);
    CHECK(minimal_generator_degrees(ideal_closure(t.algebra, {fx::elem(*t.algebra, {{"cb", 1}})})) == std::set<std::size_t>{2});
    CHECK(minimal_generator_degrees(ideal_closure(t.algebra, {})).empty());

    KQuiver line = to_kquiver(Quiver({"1", "2", "3", "4"}, {{"x", "1", "2"}, {"y", "2", "3"}, {"z", "3", "4"}}));
    TruncatedPathAlgebra l = truncated_path_algebra(line, 3, Q);
    const auto& a = *l.algebra;
    auto i = ideal_closure(l.algebra, {fx::elem(a, {{"yx", 1}}), fx::elem(a, {{"zyx", 1}})});
    CHECK(minimal_generator_degrees(i) == std::set<std::size_t>{2});
    CHECK(filtered_generator_degrees(i) == std::set<std::size_t>{2});

    CHECK_THROWS_AS(minimal_generator_degrees(ideal_closure(l.algebra, {fx::elem(a, {{"x", 1}})})), NotRelationIdeal);

    // zw and zyx are parallel of lengths 2 and 3
    KQuiver bypass = to_kquiver(Quiver({"1", "2", "3", "4"}, {{"x", "1", "2"}, {"y", "2", "3"}, {"z", "3", "4"}, {"w", "1", "3"}}));
    TruncatedPathAlgebra b = truncated_path_algebra(bypass, 3, Q);
    auto mixed = ideal_closure(b.algebra, {fx::elem(*b.algebra, {{"zw", 1}, {"zyx", 1}})});
    CHECK(mixed.space.dim() == 1);
    CHECK(is_relation_ideal(mixed));
    CHECK_FALSE(is_homogeneous(mixed));
    CHECK_THROWS_AS(minimal_generator_degrees(mixed), NotHomogeneous);
    CHECK(filtered_generator_degrees(mixed) == std::set<std::size_t>{2});
}

TEST_CASE("generator degrees on the commutative square", "[pseudocompact]") {
    KQuiver sq = to_kquiver(Quiver({"1", "2", "3", "4"}, {{"a", "1", "2"}, {"b", "2", "4"}, {"c", "1", "3"}, {"d", "3", "4"}}));
    for (std::size_t N : {2u, 3u}) {
        TruncatedPathAlgebra t = truncated_path_algebra(sq, N, Q);
        auto i = ideal_closure(t.algebra, {fx::elem(*t.algebra, {{"ba", 1}, {"dc", -1}})});
        REQUIRE(minimal_generator_degrees(i) == std::set<std::size_t>{2});
        fuzz::Rng rng(N);
        for (int k = 0; k < 20; ++k) {
            AlgebraMap phi{t.algebra, t.algebra, fuzz::random_automorphism(rng, t)};
            REQUIRE(verify_algebra_map(phi).ok);
            auto img = image_ideal(phi, i);
            CHECK(filtered_generator_degrees(img) == std::set<std::size_t>{2});
        }
    }
}

TEST_CASE("algebra pairs", "[pseudocompact]") {
    TruncatedPathAlgebra t = truncated_path_algebra(fx::triangle(), 2, Q);
    AlgebraPair p = pair_of_algebra(*t.algebra);
    CHECK(p.base->dim() == 3);
    CHECK(p.udim() == 3);
    CHECK(p.labels == std::vector<std::string>{"a", "b", "c"});
    CHECK(verify_pair(p).ok);

    auto ss = std::make_shared<const FiniteAlgebra>(dual_algebra(*grouplike_coalgebra(Q, {"s", "t"})));
    AlgebraPair ps = pair_of_algebra(*ss);
    CHECK(ps.base->dim() == 2);
    CHECK(ps.udim() == 0);

    AlgebraPair pl = pair_of_algebra(*truncated_path_algebra(fx::loop(), 2, Q).algebra);
    CHECK(pl.base->dim() == 1);
    CHECK(pl.udim() == 1);

    FiniteAlgebra nonsplit = dual_algebra(*fx::sqrt2_coalgebra());
    CHECK_THROWS_AS(pair_of_algebra(nonsplit), NotPointed);
}

TEST_CASE("tensor algebras of pairs", "[pseudocompact]") {
    TruncatedPathAlgebra t = truncated_path_algebra(fx::triangle(), 2, Q);
    TensorAlgebra ta = tensor_algebra(pair_of_algebra(*t.algebra), 2);
    CHECK(ta.algebra->labels() == t.algebra->labels());
    CHECK(ta.algebra->structure() == t.algebra->structure());

    auto ss = std::make_shared<const FiniteAlgebra>(dual_algebra(*grouplike_coalgebra(Q, {"s", "t"})));
    TensorAlgebra ts = tensor_algebra(pair_of_algebra(*ss), 3);
    CHECK(ts.algebra->dim() == 2);
    CHECK(ts.algebra->structure() == ss->structure());

    TruncatedPathAlgebra l = truncated_path_algebra(fx::loop(), 2, Q);
    TensorAlgebra tl = tensor_algebra(pair_of_algebra(*l.algebra), 2);
    CHECK(tl.algebra->dim() == 3);
    CHECK(tl.algebra->structure() == l.algebra->structure());
}

TEST_CASE("transport of presentations", "[pseudocompact]") {
    PathCoalgebra t = path_coalgebra(fx::triangle(), 2, Q);
    const auto id = identity_map(t.coalgebra);
    CHECK(coalg_congruent(transport_presentation(id, id, t), id));

    CoalgebraMap ex = fx::triangle_example(t);
    CoalgebraMap rho = transport_presentation(id, ex, t);
    CHECK(coalg_congruent(rho, ex));

    CoalgebraMap sc = fx::scale_arrow(t, 0, 2);
    CoalgebraMap rs = transport_presentation(id, sc, t);
    CHECK(coalg_congruent(rs, sc));
    CHECK_FALSE(coalg_congruent(rs, id));

    // two embeddings of the degree <= 1 part differing by a -> a + (e3 - e1)
    PathCoalgebra t1 = path_coalgebra(fx::triangle(), 1, Q);
    Mat inc(Q, 7, 6);
    for (std::size_t i = 0; i < 6; ++i) inc(i, i) = Scalar::one(Q);
    CoalgebraMap g{t1.coalgebra, t.coalgebra, inc};
    CoalgebraMap d{t1.coalgebra, t.coalgebra, ex.matrix * inc};
    CHECK(coalg_congruent(transport_presentation(g, d, t), id));

    CoalgebraMap thin{t1.coalgebra, t.coalgebra, Mat(Q, 7, 6)};
    for (std::size_t i = 0; i < 3; ++i) thin.matrix(i, i) = Scalar::one(Q);
    CHECK_THROWS(transport_presentation(thin, g, t));
}

TEST_CASE("alignment of presentations", "[pseudocompact]") {
    TruncatedPathAlgebra t = truncated_path_algebra(fx::triangle(), 2, Q);
    const AlgebraMap id = from_columns(t, Mat::identity(Q, 7));
    CHECK(align_presentations(id, id, t).psi.matrix == id.matrix);

    AlgebraMap sigma = substitution(t, "a", {{"cb", 1}});
    REQUIRE(verify_algebra_map(sigma).ok);
    Alignment al = align_presentations(id, sigma, t);
    CHECK(al.psi.matrix == sigma.matrix);
    CHECK(al.psi.matrix * al.inverse.matrix == id.matrix);

    // k<<x>>/J^4 onto k[x]/(x^3), delta' = gamma' o (x -> x + x^2)
    TruncatedPathAlgebra l = truncated_path_algebra(fx::loop(), 3, Q);
    Quotient qa = quotient(l.algebra, l.length_at_least(3));
    AlgebraMap sub = substitution(l, "x", {{"xx", 1}});
    AlgebraMap delta{l.algebra, qa.algebra, qa.map.matrix * sub.matrix};
    Alignment la = align_presentations(qa.map, delta, l);
    CHECK(qa.map.matrix * la.psi.matrix == delta.matrix);
    CHECK(alg_congruent(la.psi, from_columns(l, Mat::identity(Q, 4))));
    CHECK(la.psi.matrix.col(l.algebra->index("x")) == fx::elem(*l.algebra, {{"x", 1}, {"xx", 1}}));

    // degree-0 disagreement
    Mat swap = Mat::identity(Q, 7);
    swap.set_col(0, fx::elem(*t.algebra, {{"e1", 1}, {"a", 1}}));
    CHECK_THROWS_AS(align_presentations(id, from_columns(t, swap), t), NormalizationRequired);
}

TEST_CASE("property: graded radical closed form", "[pseudocompact][property]") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        fuzz::Rng rng(seed);
        const Field f = seed % 3 == 0 ? Q : Field::prime(seed % 3 == 1 ? 2 : 3);
        KQuiver q = fuzz::random_kquiver(rng, 4, 5);
        const std::size_t N = fuzz::fit_degree(q, rng.between(1, 4), 30);
        TruncatedPathAlgebra t = truncated_path_algebra(q, N, f);
        INFO("seed " << seed);
        for (std::size_t n = 0; n <= N + 1; ++n) CHECK(radical_power_space(*t.algebra, n) == t.length_at_least(n));
        if (!f.is_rational()) {
            auto fr = detail::radical_frobenius(*t.algebra);
            REQUIRE(fr);
            CHECK(*fr == t.length_at_least(1));
            double size = 1;
            for (std::size_t i = 0; i < t.paths.size(); ++i) size *= static_cast<double>(f.p);
            if (size <= 729) CHECK(detail::radical_bruteforce(*t.algebra) == t.length_at_least(1));
        }
    }
}

TEST_CASE("property: radical is transported by rebasing", "[pseudocompact][property]") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        fuzz::Rng rng(seed + 77);
        const Field f = Field::prime(seed % 2 ? 2 : 5);
        KQuiver q = fuzz::random_kquiver(rng, 3, 4);
        PathCoalgebra pc = path_coalgebra(q, fuzz::fit_degree(q, 3, 20), f);
        auto sc = fuzz::scramble(rng, pc.coalgebra, 2 * pc.paths.size());
        FiniteAlgebra a = dual_algebra(*sc.coalgebra);  // no grading
        // J(C*) = annihilator of C_0, moved through the rebasing
        const Subspace c0 = coradical_filtration(*sc.coalgebra).front();
        Subspace expect = kernel(c0.basis());
        CHECK(radical_space(a) == expect);
    }
}

TEST_CASE("property: duality of congruence and of cotensor", "[pseudocompact][property]") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        fuzz::Rng rng(seed + 9);
        const Field f = fuzz::alternate_field(seed);
        fuzz::MapPair p = fuzz::congruent_pair(rng, f, 20, rng.chance(1, 2));
        CHECK(coalg_congruent(p.rho, p.gamma) == alg_congruent(dual_map(p.rho), dual_map(p.gamma)));

        KQuiver q = fuzz::random_kquiver(rng, 3, 4);
        Bicomodule v = fx::arrow_bicomodule(q, f);
        CHECK(cotensor(v.as_right(), v.as_left()).space.dim() == balanced_tensor_dim(v.as_right(), v.as_left()));
        PathCoalgebra pc = path_coalgebra(q, 2, f);
        SparseMat dm(f, pc.paths.size() * pc.paths.size(), pc.paths.size());
        for (std::size_t i = 0; i < pc.paths.size(); ++i)
            for (const auto& [t, c] : pc.coalgebra->delta(i)) dm.add(t, i, c);
        RightComodule r{pc.coalgebra, pc.paths.size(), dm};
        LeftComodule l{pc.coalgebra, pc.paths.size(), dm};
        CHECK(cotensor(r, l).space.dim() == balanced_tensor_dim(r, l));
    }
}

TEST_CASE("property: tensor algebra of the pair reproduces a truncated path algebra", "[pseudocompact][property]") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        fuzz::Rng rng(seed + 31);
        const Field f = fuzz::alternate_field(seed);
        KQuiver q = fuzz::random_kquiver(rng, 3, 4);
        const std::size_t N = fuzz::fit_degree(q, rng.between(1, 3), 25);
        TruncatedPathAlgebra t = truncated_path_algebra(q, N, f);
        TensorAlgebra ta = tensor_algebra(pair_of_algebra(*t.algebra), N);
        INFO("seed " << seed);
        std::vector<std::size_t> a(N + 1, 0), b(N + 1, 0);
        for (auto g : t.grading) ++a[g];
        for (auto g : ta.path.grading) ++b[g];
        CHECK(a == b);
        CHECK(ta.algebra->structure() == t.algebra->structure());
    }
}

TEST_CASE("property: alignment postcondition", "[pseudocompact][property]") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        fuzz::Rng rng(seed + 3);
        const Field f = fuzz::alternate_field(seed);
        KQuiver q = fuzz::random_kquiver(rng, 3, 4);
        const std::size_t N = fuzz::fit_degree(q, rng.between(2, 4), 25);
        TruncatedPathAlgebra t = truncated_path_algebra(q, N, f);
        const AlgebraMap gamma = from_columns(t, Mat::identity(f, t.paths.size()));
        const AlgebraMap delta = from_columns(t, fuzz::unipotent_substitution(rng, t));
        REQUIRE(verify_algebra_map(delta).ok);
        Alignment al = align_presentations(gamma, delta, t);
        CHECK(gamma.matrix * al.psi.matrix == delta.matrix);
        CHECK(alg_congruent(al.psi, gamma));
        CHECK(al.psi.matrix * al.inverse.matrix == Mat::identity(f, t.paths.size()));
    }
}
