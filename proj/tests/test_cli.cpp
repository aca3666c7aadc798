#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "adjq/fuzz.hpp"
#include "adjq/io.hpp"
#include "fixtures.hpp"

using namespace adjq;
using fx::Q;
using io::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = "cd " ADJQ_DATA " && " + env + " " ADJQ_CLI " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    Run r;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

io::Document doc(const json& v) { return {v, "inline.json"}; }

/// Emit, serialize to text, parse back.
io::Document reparse(const json& v) { return doc(json::parse(v.dump())); }

bool same(const Coalgebra& a, const Coalgebra& b) {
    if (a.field() != b.field() || a.labels() != b.labels() || !(a.counit() == b.counit())) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a.delta(i) != b.delta(i)) return false;
    return true;
}

bool same(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return a.field() == b.field() && a.labels() == b.labels() && a.structure() == b.structure() && a.unit() == b.unit() && a.grading() == b.grading();
}

std::string temp_file(const std::string& name, const std::string& text) {
    const std::string path = std::string(ADJQ_TMP) + "/" + name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("round trip of single objects", "[cli]") {
    KQuiver t = fx::triangle();
    KQuiver t2 = io::parse_kquiver(reparse(io::to_json(t)));
    CHECK(t2.vertices() == t.vertices());
    CHECK(io::to_json(t2) == io::to_json(t));

    KQuiver k = io::parse_kquiver(reparse(io::to_json(fx::kronecker())));
    CHECK(k.dimension(0, 1) == 2);

    for (Field f : {Q, Field::prime(5)}) {
        PathCoalgebra pc = path_coalgebra(t, 2, f);
        CHECK(same(*io::parse_coalgebra(reparse(io::to_json(*pc.coalgebra))), *pc.coalgebra));
        TruncatedPathAlgebra a = truncated_path_algebra(t, 2, f);
        auto back = io::parse_algebra(reparse(io::to_json(*a.algebra)));
        CHECK(same(*back, *a.algebra));
        REQUIRE(back->grading());
    }
    CHECK(same(*io::parse_coalgebra(reparse(io::to_json(*fx::sqrt2_coalgebra()))), *fx::sqrt2_coalgebra()));
}

TEST_CASE("round trip of maps and ideals", "[cli]") {
    PathCoalgebra pc = path_coalgebra(fx::triangle(), 2, Q);
    CoalgebraMap m = fx::with_column(pc.coalgebra, "cb", {{"cb", 1}});
    m.matrix(pc.coalgebra->index("a"), pc.coalgebra->index("cb")) = Scalar::parse(Q, "-3/2");
    auto any = io::parse_map(reparse(io::to_json(m)));
    REQUIRE(std::holds_alternative<CoalgebraMap>(any));
    const auto& back = std::get<CoalgebraMap>(any);
    CHECK(back.matrix == m.matrix);
    CHECK(same(*back.source, *m.source));
    CHECK(verify_coalgebra_map(back).ok);

    TruncatedPathAlgebra t = truncated_path_algebra(fx::triangle(), 2, Field::prime(7));
    AlgebraMap am{t.algebra, t.algebra, Mat::identity(t.algebra->field(), 7)};
    auto anya = io::parse_map(reparse(io::to_json(am)));
    REQUIRE(std::holds_alternative<AlgebraMap>(anya));
    CHECK(std::get<AlgebraMap>(anya).matrix == am.matrix);

    auto ideal = ideal_closure(t.algebra, {fx::elem(*t.algebra, {{"cb", 3}})});
    TwoSidedIdeal ib = io::parse_ideal(reparse(io::to_json(ideal)));
    CHECK(ib.space == ideal.space);
    CHECK(ib.generators == ideal.generators);

    KQuiverMap km = KQuiverMap::identity(fx::kronecker(), Q);
    km.set_block(0, 1, Mat::from_rows(Q, {{Scalar(Q, 1L), Scalar::parse(Q, "2/3")}, {Scalar(Q, 0L), Scalar(Q, -1L)}}, 2));
    CHECK(io::parse_kquiver_map(reparse(io::to_json(km))) == km);
}

TEST_CASE("input errors carry their location", "[cli]") {
    auto message = [](auto&& f) -> std::string {
        try {
            f();
        } catch (const ParseError& e) {
            return std::string("parse: ") + e.what();
        } catch (const FieldMismatch& e) {
            return std::string("field: ") + e.what();
        }
        return "no error";
    };
    json good = io::to_json(*path_coalgebra(fx::triangle(), 1, Q).coalgebra);

    json bad = good;
    bad["delta"]["a"][0][0] = "zz";
    CHECK_THAT(message([&] { io::parse_coalgebra(doc(bad)); }), Catch::Matchers::ContainsSubstring("inline.json") && Catch::Matchers::ContainsSubstring("zz"));

    bad = good;
    bad["counit"]["e1"] = "1 mod 5";
    CHECK_THAT(message([&] { io::parse_coalgebra(doc(bad)); }), Catch::Matchers::StartsWith("field: "));

    bad = good;
    bad.erase("basis");
    CHECK_THAT(message([&] { io::parse_coalgebra(doc(bad)); }), Catch::Matchers::ContainsSubstring("basis"));

    bad = good;
    bad["field"] = json{{"kind", "Fp"}, {"p", 4}};
    CHECK_THAT(message([&] { io::parse_coalgebra(doc(bad)); }), Catch::Matchers::StartsWith("parse: "));

    json q = io::to_json(fx::triangle());
    q["arrows"][0]["tgt"] = "9";
    CHECK_THAT(message([&] { io::parse_kquiver(doc(q)); }), Catch::Matchers::ContainsSubstring("arrows[0]"));

    json m{{"source", good}, {"target", good}, {"matrix", json::array({json::array({"1"})})}};
    CHECK_THAT(message([&] { io::parse_map(doc(m)); }), Catch::Matchers::ContainsSubstring("matrix"));
}

TEST_CASE("dimension cap", "[cli]") {
    CHECK_THROWS_AS(io::check_dim(io::max_dim() + 1, "x"), DimensionCap);
    CHECK_NOTHROW(io::check_dim(io::max_dim(), "x"));
}

TEST_CASE("command line: reference outputs", "[cli]") {
    Run p = run("pathcoalg triangle.quiver --deg 2");
    CHECK(p.code == 0);
    CHECK_THAT(p.out, Catch::Matchers::ContainsSubstring("dim 7"));
    CHECK_THAT(p.out, Catch::Matchers::ContainsSubstring("basis: e1 e2 e3 a b c cb"));
    CHECK_THAT(p.out, Catch::Matchers::ContainsSubstring("Δ(cb) = e3⊗cb+c⊗b+cb⊗e1"));

    Run t = run("triangle triangle.quiver --deg 3");
    CHECK(t.code == 0);
    CHECK_THAT(t.out, Catch::Matchers::ContainsSubstring("triangle identities: PASS"));

    Run b = run("verify bad.coalg");
    CHECK(b.code == 1);
    CHECK_THAT(b.out, Catch::Matchers::ContainsSubstring("FAIL"));
    CHECK_THAT(b.out, Catch::Matchers::ContainsSubstring(" at p"));

    CHECK(run("congruent triangle_auto.map triangle_id.map").code == 0);
    CHECK(run("congruent triangle_scale.map triangle_id.map").code == 1);
    CHECK(run("verify skew.coalg").code == 0);
    CHECK(run("verify triangle_auto.map").code == 0);
    CHECK(run("ideal-degrees square_commute.ideal").code == 0);
    CHECK(run("fuzz --seed 3 --count 2 --suite triangle").code == 0);

    Run r = run("--json radical triangle2.alg --power 2");
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["verdict"] == "PASS");
}

TEST_CASE("command line: input errors exit 2", "[cli]") {
    CHECK(run("frobnicate triangle.quiver").code == 2);
    CHECK(run("verify no_such_file.coalg").code == 2);
    CHECK(run("pathcoalg triangle.quiver").code == 2);
    CHECK(run("--field F4 pathcoalg triangle.quiver --deg 1").code == 2);
    CHECK(run("--field F5 pathcoalg kronecker.quiver --deg 1").code == 2);
    CHECK(run("pathcoalg triangle.quiver --deg 2", "ADJQ_MAX_DIM=5").code == 2);
    CHECK(run("pathcoalg triangle.quiver --deg 2", "ADJQ_MAX_DIM=7").code == 0);

    Run bad = run("verify " + temp_file("broken.coalg", "{\"basis\": [\"g\"], \"delta\": "));
    CHECK(bad.code == 2);
    CHECK_THAT(bad.out, Catch::Matchers::ContainsSubstring("broken.coalg"));

    const std::string mixed = temp_file("mixed.map", R"({"source": {"field": {"kind": "Fp", "p": 3}, "basis": ["g"], "delta": {"g": [["g", "g", "1"]]}, "counit": {"g": "1"}},
        "target": {"basis": ["g"], "delta": {"g": [["g", "g", "1"]]}, "counit": {"g": "1"}}, "matrix": [["1"]]})");
    CHECK(run("verify " + mixed).code == 2);
}

TEST_CASE("command line: determinism", "[cli]") {
    for (const std::string args : {"--json fuzz --seed 11 --count 3", "--json gq triangle2.coalg", "--json unit skew.coalg --deg 2",
                                   "--json align triangle_id.amap triangle_sub.amap --quiver triangle.quiver --deg 2"}) {
        Run a = run(args), b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
    Run f = run("--json fuzz --seed 11 --count 3");
    CHECK(json::parse(f.out)["seed"] == 11);
    CHECK(run("fuzz --seed 11 --count 3").out.find("seed 11") != std::string::npos);
}

TEST_CASE("command line: emitted objects are re-ingested", "[cli]") {
    auto emit = [](const std::string& args, const char* key, const std::string& name) {
        Run r = run("--json " + args);
        REQUIRE(r.code == 0);
        return temp_file(name, json::parse(r.out)[key].dump(2));
    };
    const std::string c = emit("pathcoalg triangle.quiver --deg 2", "coalgebra", "emitted.coalg");
    CHECK(run("verify " + c).code == 0);
    CHECK(run("--json filtration " + c).out == [] {
        Run r = run("--json filtration triangle2.coalg");
        return r.out;
    }());

    const std::string a = emit("trunc-path-alg triangle.quiver --deg 2", "algebra", "emitted.alg");
    CHECK(run("verify " + a).code == 0);
    const std::string d = emit("dual triangle2.coalg", "dual", "emitted_dual.alg");
    CHECK(run("verify " + d).code == 0);
    const std::string k = emit("gq triangle2.coalg", "kquiver", "emitted.quiver");
    // vertices are named by group-likes, so stationary paths read "ee1"
    CHECK_THAT(run("pathcoalg " + k + " --deg 2").out, Catch::Matchers::ContainsSubstring("Δ(cb) = ee3⊗cb+c⊗b+cb⊗ee1"));
    const std::string e = emit("counit triangle.quiver --deg 2", "map", "emitted_counit.json");
    CHECK(run("verify " + e).code == 0);
    const std::string u = emit("unit skew.coalg --deg 2", "map", "emitted_unit.map");
    CHECK(run("verify " + u).code == 0);
    const std::string t = emit("transport triangle_id.map triangle_auto.map --quiver triangle.quiver --deg 2", "map", "emitted_rho.map");
    CHECK(run("verify " + t).code == 0);
    const std::string p = emit("align triangle_id.amap triangle_sub.amap --quiver triangle.quiver --deg 2", "map", "emitted_psi.map");
    CHECK(run("verify " + p).code == 0);
}

TEST_CASE("property: serialization round trip", "[cli][property]") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        fuzz::Rng rng(seed);
        const Field f = seed % 3 == 0 ? Q : Field::prime(seed % 3 == 1 ? 2 : 7);
        KQuiver q = fuzz::random_kquiver(rng, 4, 5);
        const std::size_t d = fuzz::fit_degree(q, rng.between(1, 3), 20);
        PathCoalgebra pc = path_coalgebra(q, d, f);
        auto sc = fuzz::scramble(rng, pc.coalgebra, 2 * pc.paths.size());
        INFO("seed " << seed);
        CHECK(same(*io::parse_coalgebra(reparse(io::to_json(*sc.coalgebra))), *sc.coalgebra));
        auto m = io::parse_map(reparse(io::to_json(sc.to_original)));
        CHECK(std::get<CoalgebraMap>(m).matrix == sc.to_original.matrix);

        TruncatedPathAlgebra t = truncated_path_algebra(q, d, f);
        CHECK(same(*io::parse_algebra(reparse(io::to_json(*t.algebra))), *t.algebra));
        AlgebraMap phi{t.algebra, t.algebra, fuzz::random_automorphism(rng, t)};
        CHECK(std::get<AlgebraMap>(io::parse_map(reparse(io::to_json(phi)))).matrix == phi.matrix);

        KQuiverMap g = KQuiverMap::identity(q, f);
        for (auto [a, b] : q.pairs()) g.set_block(a, b, fuzz::random_invertible(rng, f, q.dimension(a, b)));
        CHECK(io::parse_kquiver_map(reparse(io::to_json(g))) == g);
    }
}
