#include <catch_amalgamated.hpp>

#include "adjq/fuzz.hpp"
#include "fixtures.hpp"

using namespace adjq;
using fx::Q;

namespace {

std::vector<std::size_t> filtration_dims(const Coalgebra& c) {
    std::vector<std::size_t> out;
    for (const auto& s : coradical_filtration(c)) out.push_back(s.dim());
    return out;
}

SparseMat delta_matrix(const Coalgebra& c) {
    SparseMat m(c.field(), c.dim() * c.dim(), c.dim());
    for (std::size_t i = 0; i < c.dim(); ++i)
        for (const auto& [t, v] : c.delta(i)) m.add(t, i, v);
    return m;
}

/// C (x) A + B (x) C inside C (x) C.
Subspace tensor_sum(const Coalgebra& c, const Subspace& a, const Subspace& b) {
    const std::size_t n = c.dim();
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& v : a.basis_vectors()) {
            Vec t = zero_vec(c.field(), n * n);
            for (std::size_t j = 0; j < n; ++j) t[i * n + j] = v[j];
            gens.push_back(t);
        }
    for (const auto& u : b.basis_vectors())
        for (std::size_t j = 0; j < n; ++j) {
            Vec t = zero_vec(c.field(), n * n);
            for (std::size_t i = 0; i < n; ++i) t[i * n + j] = u[i];
            gens.push_back(t);
        }
    return Subspace::span(c.field(), n * n, gens);
}

/// A small pointed coalgebra: a path coalgebra, maybe cut down and rebased.
struct Sample {
    PathCoalgebra pc;
    CoalgebraPtr c;
    CoalgebraMap into_path;
};

Sample sample(std::uint64_t seed, std::size_t cap = 20) {
    fuzz::Rng rng(seed);
    const Field f = fuzz::alternate_field(seed);
    KQuiver q = fuzz::random_kquiver(rng, 3, 4);
    PathCoalgebra pc = path_coalgebra(q, fuzz::fit_degree(q, rng.between(1, 3), cap), f);
    CoalgebraPtr c = pc.coalgebra;
    Mat into = Mat::identity(f, c->dim());
    if (rng.chance(1, 2)) {
        auto sub = fuzz::random_subcoalgebra(rng, pc);
        c = sub.coalgebra;
        into = sub.inclusion.matrix;
    }
    if (rng.chance(1, 2)) {
        auto sc = fuzz::scramble(rng, c, 2 * c->dim());
        into = into * sc.to_original.matrix;
        c = sc.coalgebra;
    }
    return {pc, c, {c, pc.coalgebra, into}};
}

}  // namespace

TEST_CASE("coalgebra axioms", "[coalgebra]") {
    CHECK(verify_coalgebra(*grouplike_coalgebra(Q, {"s", "t", "u"})).ok);
    CHECK(verify_coalgebra(*path_coalgebra(fx::triangle(), 2, Q).coalgebra).ok);

    Coalgebra broken(Q, {"x"}, {SparseVec{{0, Scalar::one(Q)}}}, zero_vec(Q, 1));
    Report r = verify_coalgebra(broken);
    CHECK_FALSE(r.ok);
    CHECK(r.witness == "x");
    CHECK(r.failure.find("counit") != std::string::npos);

    // Delta(p) = p (x) p + g (x) p, eps(p) = 0: right counit fails
    std::vector<SparseVec> d(2);
    add_entry(d[0], 0, Scalar::one(Q));
    add_entry(d[1], 3, Scalar::one(Q));
    add_entry(d[1], 1, Scalar::one(Q));
    Coalgebra skew(Q, {"g", "p"}, d, fx::elem(Q, {"g", "p"}, {{"g", 1}}));
    CHECK_FALSE(verify_coalgebra(skew).ok);
}

TEST_CASE("group-likes", "[coalgebra]") {
    PathCoalgebra t = path_coalgebra(fx::triangle(), 2, Q);
    const auto& gl = group_likes(*t.coalgebra);
    REQUIRE(gl.size() == 3);
    CHECK(gl[0] == fx::elem(*t.coalgebra, {{"e1", 1}}));
    CHECK(gl[2] == fx::elem(*t.coalgebra, {{"e3", 1}}));

    auto ks = grouplike_coalgebra(Field::prime(5), {"s", "t", "u"});
    CHECK(group_likes(*ks).size() == 3);

    // e1+e2 is not group-like, nor is a
    CHECK_FALSE(is_grouplike(*t.coalgebra, fx::elem(*t.coalgebra, {{"e1", 1}, {"e2", 1}})));
    CHECK_FALSE(is_grouplike(*t.coalgebra, fx::elem(*t.coalgebra, {{"a", 1}})));
}

TEST_CASE("non-pointed coalgebra over Q", "[coalgebra]") {
    auto c = fx::sqrt2_coalgebra();
    REQUIRE(verify_coalgebra(*c).ok);
    CHECK_FALSE(is_pointed(*c));
    CHECK_THROWS_AS(group_likes(*c), NotPointed);
    CHECK(coradical_filtration(*c).front().dim() == 4);

    // the same coalgebra over F_7 splits: 3^2 = 2 mod 7
    std::vector<SparseVec> d(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (const auto& [t, v] : c->delta(i)) add_entry(d[i], t, Scalar(Field::prime(7), v.rational().get_num().get_si()));
    Vec e = zero_vec(Field::prime(7), 4);
    e[0] = e[2] = e[3] = Scalar::one(Field::prime(7));
    Coalgebra c7(Field::prime(7), c->labels(), d, e);
    CHECK(is_pointed(c7));
    CHECK(group_likes(c7).size() == 4);
}

TEST_CASE("coradical filtration", "[coalgebra]") {
    CHECK(filtration_dims(*path_coalgebra(fx::triangle(), 2, Q).coalgebra) == std::vector<std::size_t>{3, 6, 7});
    CHECK(filtration_dims(*path_coalgebra(fx::loop(), 3, Q).coalgebra) == std::vector<std::size_t>{1, 2, 3, 4});
    CHECK(filtration_dims(*grouplike_coalgebra(Q, {"s", "t"})) == std::vector<std::size_t>{2});
    CHECK(filtration_length(*path_coalgebra(fx::kronecker(), 3, Field::prime(2)).coalgebra) == 1);
}

TEST_CASE("pointedness", "[coalgebra]") {
    CHECK(is_pointed(*path_coalgebra(fx::triangle(), 2, Q).coalgebra));
    CHECK(is_pointed(*path_coalgebra(fx::loop(), 4, Field::prime(3)).coalgebra));
    CHECK(is_pointed(*grouplike_coalgebra(Q, {"s"})));
}

TEST_CASE("primitive spaces", "[coalgebra]") {
    PathCoalgebra t = path_coalgebra(fx::triangle(), 2, Q);
    const Coalgebra& c = *t.coalgebra;
    auto e = [&](const char* l) { return fx::elem(c, {{l, 1}}); };
    CHECK(primitive_space(c, e("e1"), e("e3")) == fx::span(c, {{{"a", 1}}, {{"e3", 1}, {"e1", -1}}}));
    CHECK(primitive_space(c, e("e1"), e("e2")) == fx::span(c, {{{"b", 1}}, {{"e2", 1}, {"e1", -1}}}));
    CHECK(primitive_space(c, e("e3"), e("e1")).dim() == 1);  // only e1 - e3
    CHECK(primitive_space(c, e("e1"), e("e1")).dim() == 0);
    CHECK_THROWS_AS(primitive_space(c, e("a"), e("e1")), NotGroupLike);

    auto one = grouplike_coalgebra(Q, {"g"});
    CHECK(primitive_space(*one, unit_vec(Q, 1, 0), unit_vec(Q, 1, 0)).dim() == 0);
}

TEST_CASE("primitive quotients", "[coalgebra]") {
    PathCoalgebra t = path_coalgebra(fx::triangle(), 2, Q);
    const Coalgebra& c = *t.coalgebra;
    auto e = [&](const char* l) { return fx::elem(c, {{l, 1}}); };
    auto pq = primitive_quotient(c, e("e1"), e("e3"));
    CHECK(pq.complement == fx::span(c, {{{"a", 1}}}));
    CHECK(pq.quotient.rows() == 1);

    auto same = primitive_quotient(c, e("e2"), e("e2"));
    CHECK(same.complement == same.primitives);

    PathCoalgebra k = path_coalgebra(fx::kronecker(), 2, Field::prime(2));
    const Coalgebra& kc = *k.coalgebra;
    CHECK(primitive_quotient(kc, fx::elem(kc, {{"e1", 1}}), fx::elem(kc, {{"e2", 1}})).complement.dim() == 2);
}

TEST_CASE("cotensor products", "[coalgebra]") {
    // C box_C M = M for the regular comodule
    PathCoalgebra t = path_coalgebra(fx::triangle(), 2, Q);
    const std::size_t n = t.paths.size();
    RightComodule reg{t.coalgebra, n, delta_matrix(*t.coalgebra)};
    LeftComodule left{t.coalgebra, n, delta_matrix(*t.coalgebra)};
    CHECK(cotensor(reg, left).space.dim() == n);

    // arrows of the triangle cotensored with themselves over kQ_0: span{c (x) b}
    Bicomodule v = fx::arrow_bicomodule(fx::triangle(), Q);
    auto cot = cotensor(v.as_right(), v.as_left());
    REQUIRE(cot.space.dim() == 1);
    Vec cb = zero_vec(Q, 9);
    cb[2 * 3 + 1] = Scalar::one(Q);  // c (x) b
    CHECK(cot.space == Subspace::span(Q, 9, {cb}));

    RightComodule zero{v.right, 0, SparseMat(Q, 0, 0)};
    CHECK(cotensor(zero, v.as_left()).space.dim() == 0);

    auto other = grouplike_coalgebra(Q, {"p", "q", "r"});
    RightComodule foreign{other, 0, SparseMat(Q, 0, 0)};
    CHECK_THROWS_AS(cotensor(foreign, v.as_left()), BaseMismatch);
}

TEST_CASE("bicomodule axioms", "[coalgebra]") {
    Bicomodule v = fx::arrow_bicomodule(fx::triangle(), Q);
    CHECK(verify_bicomodule(v).ok);
    Bicomodule z{v.left, v.right, {}, SparseMat(Q, 0, 0), SparseMat(Q, 0, 0)};
    CHECK(verify_bicomodule(z).ok);
    Bicomodule bad = v;
    bad.mu.add(2 * 3 + 0, 0, Scalar::one(Q));  // mu(a) = 2 e3 (x) a
    CHECK_FALSE(verify_bicomodule(bad).ok);
}

TEST_CASE("path coalgebras", "[coalgebra]") {
    PathCoalgebra t = path_coalgebra(fx::triangle(), 2, Q);
    const Coalgebra& c = *t.coalgebra;
    REQUIRE(c.dim() == 7);
    const std::size_t n = 7;
    SparseVec expect;
    add_entry(expect, c.index("e3") * n + c.index("cb"), Scalar::one(Q));
    add_entry(expect, c.index("c") * n + c.index("b"), Scalar::one(Q));
    add_entry(expect, c.index("cb") * n + c.index("e1"), Scalar::one(Q));
    CHECK(c.delta(c.index("cb")) == expect);

    for (std::size_t d : {0u, 1u, 4u}) {
        auto p = path_coalgebra(fx::point(), d, Q);
        CHECK(p.coalgebra->dim() == 1);
        CHECK(verify_coalgebra(*p.coalgebra).ok);
    }

    PathCoalgebra l = path_coalgebra(fx::loop(), 3, Q);
    const Coalgebra& lc = *l.coalgebra;
    REQUIRE(lc.dim() == 4);
    SparseVec xx;
    add_entry(xx, lc.index("e") * 4 + lc.index("xx"), Scalar::one(Q));
    add_entry(xx, lc.index("x") * 4 + lc.index("x"), Scalar::one(Q));
    add_entry(xx, lc.index("xx") * 4 + lc.index("e"), Scalar::one(Q));
    CHECK(lc.delta(lc.index("xx")) == xx);
}

TEST_CASE("cotensor coalgebras", "[coalgebra]") {
    Bicomodule v = fx::arrow_bicomodule(fx::triangle(), Q);
    auto cot = cotensor_coalgebra(v.left, v, 2);
    CHECK(cot.degree_dims == std::vector<std::size_t>{3, 3, 1});
    CHECK(cot.coalgebra->dim() == 7);
    CHECK(verify_coalgebra(*cot.coalgebra).ok);
    CHECK(verify_coalgebra_map(cot.to_path).ok);
    CHECK(rank(cot.to_path.matrix) == 7);

    const Field f2 = Field::prime(2);
    Bicomodule kv = fx::arrow_bicomodule(fx::kronecker(), f2);
    CHECK(cotensor_coalgebra(kv.left, kv, 3).degree_dims == std::vector<std::size_t>{2, 2, 0, 0});

    Bicomodule zero{v.left, v.right, {}, SparseMat(Q, 0, 0), SparseMat(Q, 0, 0)};
    auto c0 = cotensor_coalgebra(v.left, zero, 3);
    CHECK(c0.coalgebra->dim() == 3);

    CHECK_THROWS_AS(cotensor_coalgebra(path_coalgebra(fx::triangle(), 1, Q).coalgebra, v, 2), NotCosemisimple);
}

TEST_CASE("property: filtration and morphisms", "[coalgebra][property]") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Sample s = sample(seed);
        const Coalgebra& c = *s.c;
        const auto& filt = coradical_filtration(c);
        INFO("seed " << seed);

        // Delta(C_n) in C (x) C_{n-1} + C_0 (x) C
        for (std::size_t k = 1; k < filt.size(); ++k) {
            Subspace target = tensor_sum(c, filt[k - 1], filt[0]);
            for (const auto& v : filt[k].basis_vectors()) CHECK(target.contains(to_dense(c.field(), c.comultiply(v), c.dim() * c.dim())));
        }

        // group-likes are independent and span C_0
        const auto& gl = group_likes(c);
        CHECK(rank(Mat::from_cols(c.field(), gl, c.dim())) == gl.size());
        CHECK(Subspace::span(c.field(), c.dim(), gl) == filt[0]);

        // dim C_1 = dim C_0 + sum of dim P'_{g,h}
        std::size_t tw = filt[0].dim();
        for (const auto& g : gl)
            for (const auto& h : gl) tw += primitive_quotient(c, g, h).complement.dim();
        const std::size_t c1 = filt.size() > 1 ? filt[1].dim() : filt[0].dim();
        CHECK(c1 == tw);

        // rho(C_n) in D_n, and C/C_n -> D/D_n injective for the embedding
        const auto& dfilt = coradical_filtration(*s.pc.coalgebra);
        const Mat& m = s.into_path.matrix;
        REQUIRE(verify_coalgebra_map(s.into_path).ok);
        for (std::size_t k = 0; k < filt.size(); ++k) {
            const Subspace& dk = dfilt[std::min(k, dfilt.size() - 1)];
            CHECK(dk.contains(image(m, filt[k])));
            CHECK(preimage(m, dk) == filt[k]);
        }
    }
}

TEST_CASE("property: cotensor coalgebra of the arrow bicomodule is the path coalgebra", "[coalgebra][property]") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        fuzz::Rng rng(seed);
        const Field f = fuzz::alternate_field(seed);
        KQuiver q = fuzz::random_kquiver(rng, 3, 4);
        const std::size_t d = fuzz::fit_degree(q, rng.between(1, 3), 20);
        Bicomodule v = fx::arrow_bicomodule(q, f);
        auto cot = cotensor_coalgebra(v.left, v, d);
        PathCoalgebra pc = path_coalgebra(q, d, f);
        std::vector<std::size_t> per(d + 1, 0);
        for (auto g : pc.grading) ++per[g];
        CHECK(cot.degree_dims == per);
        CHECK(verify_coalgebra_map(cot.to_path).ok);
        CHECK(rank(cot.to_path.matrix) == pc.paths.size());
    }
}
