#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "adjq/fuzz.hpp"
#include "adjq/io.hpp"

using namespace adjq;
using io::json;

namespace {

enum Exit { pass = 0, math_failure = 1, input_error = 2 };

/// Collects a text transcript and a structured report side by side.
struct Out {
    bool structured = false;
    json report = json::object();
    std::vector<std::string> lines;

    void line(const std::string& s) { lines.push_back(s); }
    template <class T>
    void set(const std::string& key, T&& v) { report[key] = std::forward<T>(v); }

    int finish(bool ok) {
        report["verdict"] = ok ? "PASS" : "FAIL";
        if (structured) {
            std::cout << report.dump(2) << "\n";
        } else {
            for (const auto& l : lines) std::cout << l << "\n";
        }
        return ok ? pass : math_failure;
    }
};

Field parse_field_flag(const std::string& s) {
    if (s == "Q" || s == "q") return Field::rationals();
    std::string digits = s;
    for (const std::string prefix : {"Fp:", "F_", "GF", "F"})
        if (digits.rfind(prefix, 0) == 0) {
            digits = digits.substr(prefix.size());
            break;
        }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) throw ParseError("--field: expected Q or F_p, got '" + s + "'");
    try {
        return Field::prime(std::stoull(digits));
    } catch (const std::out_of_range&) {
        throw ParseError("--field: modulus out of range in '" + s + "'");
    }
}

/// Empty flag: the file's field, else Q. A flag contradicting the file is an input error.
Field quiver_field(const io::Document& d, const std::string& flag) {
    if (flag.empty()) return io::field_of(d);
    const Field f = parse_field_flag(flag);
    if (d.value.contains("field") && io::field_of(d) != f)
        throw FieldMismatch(d.where("--field " + f.to_string() + " but the file declares " + io::field_of(d).to_string()));
    return f;
}

bool same_coalgebra(const Coalgebra& a, const Coalgebra& b) {
    if (a.field() != b.field() || a.labels() != b.labels() || !(a.counit() == b.counit())) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a.delta(i) != b.delta(i)) return false;
    return true;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

std::string dims_string(const std::vector<std::size_t>& d) {
    std::vector<std::string> s;
    for (auto x : d) s.push_back(std::to_string(x));
    return "(" + join(s, ",") + ")";
}

std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

void describe_kquiver(Out& out, const KQuiver& q) {
    out.line("vertices: " + join(q.vertices()));
    for (auto [g, h] : q.pairs()) {
        std::vector<std::string> names;
        for (auto a : q.space(g, h)) names.push_back(q.arrows()[a].name);
        out.line("  " + q.vertices()[g] + " -> " + q.vertices()[h] + ": dim " + std::to_string(names.size()) + " {" + join(names, ", ") + "}");
    }
}

void describe_coalgebra(Out& out, const Coalgebra& c) {
    out.line("dim " + std::to_string(c.dim()) + " over " + c.field().to_string());
    out.line("basis: " + join(c.labels()));
    for (std::size_t i = 0; i < c.dim(); ++i) out.line("Δ(" + c.labels()[i] + ") = " + io::tensor_string(c.labels(), c.delta(i)));
}

void describe_kquiver_map(Out& out, const KQuiverMap& m, const std::string& name) {
    std::vector<std::string> vs;
    for (std::size_t v = 0; v < m.vertex_map().size(); ++v) vs.push_back(m.source().vertices()[v] + "->" + m.target().vertices()[m.vertex_map()[v]]);
    out.line(name + " on vertices: " + join(vs, ", "));
    for (std::size_t a = 0; a < m.source().arrow_count(); ++a) {
        Vec img = to_dense(m.field(), m.image_of_arrow(a), m.target().arrow_count());
        std::vector<std::string> tnames;
        for (const auto& t : m.target().arrows()) tnames.push_back(t.name);
        out.line(name + "(" + m.source().arrows()[a].name + ") = " + io::element_string(tnames, img));
    }
}

CoalgebraPtr coalgebra_or_path(const io::Document& d, std::size_t deg, const std::string& field) {
    if (io::kind_of(d) == io::Kind::quiver) {
        KQuiver q = io::parse_kquiver(d);
        io::check_dim(fuzz::path_count(q, deg), "path coalgebra");
        return path_coalgebra(q, deg, quiver_field(d, field)).coalgebra;
    }
    return io::parse_coalgebra(d);
}

AlgebraPtr algebra_of(const io::Document& d) {
    if (io::kind_of(d) == io::Kind::coalgebra) return std::make_shared<const FiniteAlgebra>(dual_algebra(*io::parse_coalgebra(d)));
    return io::parse_algebra(d);
}

PathCoalgebra path_from_flags(const std::string& quiver, std::size_t deg, const std::string& field) {
    if (quiver.empty()) throw ParseError("--quiver is required");
    io::Document qd = io::read_file(quiver);
    KQuiver q = io::parse_kquiver(qd);
    io::check_dim(fuzz::path_count(q, deg), "path coalgebra");
    return path_coalgebra(q, deg, quiver_field(qd, field));
}

// ---- subcommands --------------------------------------------------------------

int cmd_verify(Out& out, const std::string& file) {
    io::Document d = io::read_file(file);
    Report r;
    std::string what;
    switch (io::kind_of(d)) {
        case io::Kind::quiver: {
            KQuiver q = io::parse_kquiver(d);
            what = "k-quiver";
            out.set("vertices", q.vertex_count());
            out.set("arrows", q.arrow_count());
            r = Report::pass();
            break;
        }
        case io::Kind::coalgebra: {
            auto c = io::parse_coalgebra(d);
            what = "coalgebra";
            out.set("dim", c->dim());
            r = verify_coalgebra(*c);
            break;
        }
        case io::Kind::algebra: {
            auto a = io::parse_algebra(d);
            what = "algebra";
            out.set("dim", a->dim());
            r = verify_algebra(*a);
            break;
        }
        case io::Kind::map: {
            auto m = io::parse_map(d);
            if (auto* cm = std::get_if<CoalgebraMap>(&m)) {
                what = "coalgebra map";
                Report s = verify_coalgebra(*cm->source), t = verify_coalgebra(*cm->target);
                r = !s ? s : !t ? t : verify_coalgebra_map(*cm);
            } else {
                auto& am = std::get<AlgebraMap>(m);
                what = "algebra map";
                Report s = verify_algebra(*am.source), t = verify_algebra(*am.target);
                r = !s ? s : !t ? t : verify_algebra_map(am);
            }
            break;
        }
        case io::Kind::kquiver_map: {
            KQuiverMap m = io::parse_kquiver_map(d);
            what = "k-quiver map";
            const bool iso = is_iso(m);
            out.set("isomorphism", iso);
            out.line(std::string("isomorphism: ") + (iso ? "yes" : "no"));
            r = Report::pass();
            break;
        }
        case io::Kind::ideal: {
            TwoSidedIdeal i = io::parse_ideal(d);
            what = "ideal";
            r = verify_algebra(*i.algebra);
            out.set("dim", i.space.dim());
            break;
        }
    }
    out.set("object", what);
    out.set("ok", r.ok);
    if (!r.ok) {
        out.set("failure", r.failure);
        out.set("witness", r.witness);
        out.line(what + ": FAIL: " + r.failure + " at " + r.witness);
    } else {
        out.line(what + ": PASS");
    }
    return out.finish(r.ok);
}

int cmd_filtration(Out& out, const std::string& file, std::size_t deg, const std::string& field) {
    auto c = coalgebra_or_path(io::read_file(file), deg, field);
    const auto& filt = coradical_filtration(*c);
    std::vector<std::size_t> dims;
    for (const auto& s : filt) dims.push_back(s.dim());
    out.set("dim", c->dim());
    out.set("filtration_dims", dims);
    out.set("filtration_length", filt.size() - 1);
    out.line("dim " + std::to_string(c->dim()) + ", coradical filtration dims " + dims_string(dims) + ", length " + std::to_string(filt.size() - 1));
    const bool pointed = is_pointed(*c);
    out.set("pointed", pointed);
    if (pointed) {
        json gl = json::array();
        for (const auto& g : group_likes(*c)) {
            gl.push_back(io::element_string(c->labels(), g));
            out.line("group-like: " + gl.back().get<std::string>());
        }
        out.set("grouplikes", gl);
    } else {
        out.line("not pointed");
    }
    return out.finish(true);
}

int cmd_gq(Out& out, const std::string& file, std::size_t deg, const std::string& field) {
    auto c = coalgebra_or_path(io::read_file(file), deg, field);
    const auto& g = gabriel(*c);
    describe_kquiver(out, g.quiver);
    json arrows = json::object();
    for (std::size_t a = 0; a < g.arrow_vectors.size(); ++a) {
        arrows[g.quiver.arrows()[a].name] = io::element_string(c->labels(), g.arrow_vectors[a]);
        out.line("  " + g.quiver.arrows()[a].name + " = " + arrows[g.quiver.arrows()[a].name].get<std::string>());
    }
    out.set("kquiver", io::to_json(g.quiver));
    out.set("arrow_vectors", arrows);
    out.set("vertex_count", g.quiver.vertex_count());
    out.set("arrow_count", g.quiver.arrow_count());
    return out.finish(true);
}

int cmd_pathcoalg(Out& out, const std::string& file, std::size_t deg, const std::string& field) {
    io::Document d = io::read_file(file);
    KQuiver q = io::parse_kquiver(d);
    io::check_dim(fuzz::path_count(q, deg), "path coalgebra");
    PathCoalgebra pc = path_coalgebra(q, deg, quiver_field(d, field));
    describe_coalgebra(out, *pc.coalgebra);
    std::vector<std::size_t> per(deg + 1, 0);
    for (auto g : pc.grading) ++per[g];
    out.set("dim", pc.paths.size());
    out.set("degree", deg);
    out.set("degree_dims", per);
    Report r = verify_coalgebra(*pc.coalgebra);
    out.set("coalgebra", io::to_json(*pc.coalgebra));
    out.line("coalgebra axioms: " + verdict(r.ok));
    return out.finish(r.ok);
}

int cmd_unit(Out& out, const std::string& file, std::size_t deg, const std::string& field) {
    auto c = coalgebra_or_path(io::read_file(file), deg, field);
    const std::size_t d = std::max(deg, filtration_length(*c));
    io::check_dim(fuzz::path_count(gabriel_kquiver(*c), d), "k[GQ(C)]");
    UnitMap u = unit_map(c, d);
    const bool injective = rank(u.eta.matrix) == c->dim();
    const bool admissible = injective && is_admissible(u.eta, u.target);
    const bool iso = injective && c->dim() == u.target.paths.size();
    out.line("GQ(C):");
    describe_kquiver(out, u.target.quiver);
    out.line("eta_C: C -> k[GQ(C)] truncated at degree " + std::to_string(d));
    for (std::size_t i = 0; i < c->dim(); ++i) out.line("  eta(" + c->labels()[i] + ") = " + io::element_string(u.target.coalgebra->labels(), u.eta.matrix.col(i)));
    out.line("injective: " + verdict(injective) + ", admissible image: " + verdict(admissible) + ", isomorphism: " + std::string(iso ? "yes" : "no"));
    out.set("degree", d);
    out.set("source_dim", c->dim());
    out.set("target_dim", u.target.paths.size());
    out.set("injective", injective);
    out.set("admissible", admissible);
    out.set("isomorphism", iso);
    out.set("map", io::to_json(u.eta));
    return out.finish(injective && admissible);
}

int cmd_counit(Out& out, const std::string& file, std::size_t deg, const std::string& field) {
    io::Document d = io::read_file(file);
    KQuiver q = io::parse_kquiver(d);
    deg = std::max<std::size_t>(deg, 1);
    io::check_dim(fuzz::path_count(q, deg), "path coalgebra");
    PathCoalgebra pc = path_coalgebra(q, deg, quiver_field(d, field));
    KQuiverMap eps = counit_map(pc);
    describe_kquiver_map(out, eps, "eps");
    const bool iso = is_iso(eps);
    out.line("isomorphism: " + verdict(iso));
    out.set("isomorphism", iso);
    out.set("map", io::to_json(eps));
    return out.finish(iso);
}

int cmd_triangle(Out& out, const std::string& file, std::size_t deg, const std::string& field) {
    io::Document d = io::read_file(file);
    CoalgebraPtr c;
    KQuiver vq;
    if (io::kind_of(d) == io::Kind::quiver) {
        vq = io::parse_kquiver(d);
        io::check_dim(fuzz::path_count(vq, deg), "path coalgebra");
        c = path_coalgebra(vq, deg, quiver_field(d, field)).coalgebra;
    } else {
        c = io::parse_coalgebra(d);
        vq = gabriel_kquiver(*c);
        io::check_dim(fuzz::path_count(vq, deg), "path coalgebra");
    }
    TriangleReport t = check_triangle_identities(c, vq, deg);
    out.line("eps_GQ(C) o GQ(eta_C) = id: " + verdict(t.counit_unit.ok) + (t.counit_unit.ok ? "" : " (" + t.counit_unit.failure + ")"));
    out.line("k[eps_VQ] o eta_k[VQ] ~ id: " + verdict(t.unit_counit.ok) + (t.unit_counit.ok ? "" : " (" + t.unit_counit.failure + ")"));
    out.line("counit iso: " + verdict(t.counit_iso) + ", unit injective: " + verdict(t.unit_injective) + ", unit admissible: " + verdict(t.unit_admissible));
    out.line("triangle identities: " + verdict(t.ok()));
    out.set("counit_unit", t.counit_unit.ok);
    out.set("unit_counit", t.unit_counit.ok);
    out.set("counit_iso", t.counit_iso);
    out.set("unit_injective", t.unit_injective);
    out.set("unit_admissible", t.unit_admissible);
    out.set("dim", c->dim());
    return out.finish(t.ok());
}

int cmd_congruent(Out& out, const std::string& f1, const std::string& f2) {
    auto m1 = io::parse_map(io::read_file(f1));
    auto m2 = io::parse_map(io::read_file(f2));
    if (m1.index() != m2.index()) throw ParseError("congruent: one coalgebra map and one algebra map");
    bool cong;
    if (auto* a = std::get_if<CoalgebraMap>(&m1)) {
        const auto& b = std::get<CoalgebraMap>(m2);
        if (!same_coalgebra(*a->source, *b.source) || !same_coalgebra(*a->target, *b.target)) throw BaseMismatch("congruent: maps between different coalgebras");
        cong = coalg_congruent(*a, b);
        Report p = congruence_propagation(*a, b);
        out.set("propagation", p.ok);
        out.set("kind", "coalgebra");
    } else {
        cong = alg_congruent(std::get<AlgebraMap>(m1), std::get<AlgebraMap>(m2));
        out.set("kind", "algebra");
    }
    out.set("congruent", cong);
    out.line(std::string("congruent: ") + (cong ? "yes" : "no"));
    return out.finish(cong);
}

int cmd_dual(Out& out, const std::string& file) {
    io::Document d = io::read_file(file);
    json obj;
    switch (io::kind_of(d)) {
        case io::Kind::coalgebra:
            obj = io::to_json(dual_algebra(*io::parse_coalgebra(d)));
            break;
        case io::Kind::algebra:
            obj = io::to_json(dual_coalgebra(*io::parse_algebra(d)));
            break;
        case io::Kind::map: {
            auto m = io::parse_map(d);
            if (auto* cm = std::get_if<CoalgebraMap>(&m)) {
                obj = io::to_json(dual_map(*cm));
            } else {
                const auto& am = std::get<AlgebraMap>(m);
                auto src = std::make_shared<const Coalgebra>(dual_coalgebra(*am.target));
                auto tgt = std::make_shared<const Coalgebra>(dual_coalgebra(*am.source));
                obj = io::to_json(CoalgebraMap{src, tgt, am.matrix.transpose()});
            }
            break;
        }
        default:
            throw ParseError(file + ": nothing to dualize");
    }
    out.set("dual", obj);
    out.line(obj.dump(2));
    return out.finish(true);
}

int cmd_radical(Out& out, const std::string& file, std::size_t power) {
    AlgebraPtr a = algebra_of(io::read_file(file));
    std::vector<std::size_t> dims;
    for (std::size_t n = 0; n <= power; ++n) dims.push_back(radical_power_space(*a, n).dim());
    Subspace jn = radical_power_space(*a, power);
    out.line("dim A = " + std::to_string(a->dim()) + ", dims of J^0..J^" + std::to_string(power) + " = " + dims_string(dims));
    json basis = json::array();
    for (const auto& v : jn.basis_vectors()) {
        basis.push_back(io::element_string(a->labels(), v));
        out.line("  " + basis.back().get<std::string>());
    }
    const bool nilpotent = is_nilpotent(*a, radical_space(*a));
    out.line("J nilpotent: " + verdict(nilpotent));
    out.set("dim", a->dim());
    out.set("power", power);
    out.set("power_dims", dims);
    out.set("basis", basis);
    return out.finish(nilpotent);
}

int cmd_trunc(Out& out, const std::string& file, std::size_t deg, const std::string& field) {
    io::Document d = io::read_file(file);
    KQuiver q = io::parse_kquiver(d);
    io::check_dim(fuzz::path_count(q, deg), "path algebra");
    TruncatedPathAlgebra t = truncated_path_algebra(q, deg, quiver_field(d, field));
    const auto& a = *t.algebra;
    out.line("dim " + std::to_string(a.dim()) + " over " + a.field().to_string());
    out.line("basis: " + join(a.labels()));
    for (std::size_t j = 0; j < a.dim(); ++j)
        for (std::size_t k = 0; k < a.dim(); ++k) {
            if (t.grading[j] == 0 && t.grading[k] == 0) continue;
            Vec p = to_dense(a.field(), a.mult(j, k), a.dim());
            if (!is_zero(p)) out.line(a.labels()[j] + "·" + a.labels()[k] + " = " + io::element_string(a.labels(), p));
        }
    out.line("isomorphic to the dual of the path coalgebra: PASS");
    out.set("dim", a.dim());
    out.set("algebra", io::to_json(a));
    out.set("dual_isomorphism", true);
    return out.finish(true);
}

int cmd_ideal_degrees(Out& out, const std::string& file) {
    TwoSidedIdeal i = io::parse_ideal(io::read_file(file));
    const bool relation = is_relation_ideal(i);
    const bool graded = i.algebra->grading().has_value();
    const bool homogeneous = graded && is_homogeneous(i);
    out.set("dim", i.space.dim());
    out.set("relation_ideal", relation);
    out.set("homogeneous", homogeneous);
    out.line("ideal dim " + std::to_string(i.space.dim()) + ", relation ideal: " + (relation ? "yes" : "no") + ", homogeneous: " + (homogeneous ? "yes" : "no"));
    auto fmt = [](const std::set<std::size_t>& s) {
        std::vector<std::string> xs;
        for (auto x : s) xs.push_back(std::to_string(x));
        return "{" + join(xs, ",") + "}";
    };
    if (!relation) throw NotRelationIdeal("ideal is not contained in J^2");
    if (homogeneous) {
        auto degs = minimal_generator_degrees(i);
        out.set("degrees", std::vector<std::size_t>(degs.begin(), degs.end()));
        out.line("minimal generator degrees: " + fmt(degs));
    } else {
        auto degs = filtered_generator_degrees(i);
        out.set("filtered_degrees", std::vector<std::size_t>(degs.begin(), degs.end()));
        out.line("J-adic generator degrees: " + fmt(degs));
    }
    return out.finish(true);
}

int cmd_transport(Out& out, const std::string& f1, const std::string& f2, const std::string& quiver, std::size_t deg, const std::string& field) {
    auto m1 = io::parse_map(io::read_file(f1));
    auto m2 = io::parse_map(io::read_file(f2));
    auto* g = std::get_if<CoalgebraMap>(&m1);
    auto* d = std::get_if<CoalgebraMap>(&m2);
    if (!g || !d) throw ParseError("transport: expects two coalgebra maps");
    PathCoalgebra pc = path_from_flags(quiver, deg, field);
    if (!same_coalgebra(*g->target, *pc.coalgebra) || !same_coalgebra(*d->target, *pc.coalgebra))
        throw BaseMismatch("transport: maps must land in the path coalgebra of --quiver at --deg");
    CoalgebraMap gamma{g->source, pc.coalgebra, g->matrix}, delta{d->source, pc.coalgebra, d->matrix};
    CoalgebraMap rho = transport_presentation(gamma, delta, pc);
    out.line("rho: automorphism of k[VQ] with rho o gamma ~ delta");
    for (std::size_t i = 0; i < pc.paths.size(); ++i) out.line("  rho(" + pc.coalgebra->labels()[i] + ") = " + io::element_string(pc.coalgebra->labels(), rho.matrix.col(i)));
    const bool cong_id = coalg_congruent(rho, identity_map(pc.coalgebra));
    out.line(std::string("rho ~ id: ") + (cong_id ? "yes" : "no"));
    out.set("map", io::to_json(rho));
    out.set("congruent_to_identity", cong_id);
    return out.finish(true);
}

int cmd_align(Out& out, const std::string& f1, const std::string& f2, const std::string& quiver, std::size_t deg, const std::string& field) {
    auto m1 = io::parse_map(io::read_file(f1));
    auto m2 = io::parse_map(io::read_file(f2));
    auto* g = std::get_if<AlgebraMap>(&m1);
    auto* d = std::get_if<AlgebraMap>(&m2);
    if (!g || !d) throw ParseError("align: expects two algebra maps");
    if (quiver.empty()) throw ParseError("--quiver is required");
    io::Document qd = io::read_file(quiver);
    TruncatedPathAlgebra t = truncated_path_algebra(io::parse_kquiver(qd), deg, quiver_field(qd, field));
    if (g->source->labels() != t.algebra->labels() || g->source->structure() != t.algebra->structure())
        throw BaseMismatch("align: maps must start at the truncated path algebra of --quiver at --deg");
    Alignment al = align_presentations(*g, *d, t);
    const auto& labels = t.algebra->labels();
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (!(al.psi.matrix.col(i) == unit_vec(t.algebra->field(), labels.size(), i)))
            out.line("  psi(" + labels[i] + ") = " + io::element_string(labels, al.psi.matrix.col(i)));
    const bool cong = alg_congruent(al.psi, AlgebraMap{t.algebra, t.algebra, Mat::identity(t.algebra->field(), labels.size())});
    out.line("gamma' o psi' = delta': PASS");
    out.line(std::string("psi' ~ id: ") + (cong ? "PASS" : "FAIL"));
    out.set("map", io::to_json(al.psi));
    out.set("congruent_to_identity", cong);
    return out.finish(cong);
}

int cmd_fuzz(Out& out, std::uint64_t seed, std::size_t count, const std::string& suite) {
    out.set("seed", seed);
    out.line("seed " + std::to_string(seed));
    std::vector<std::pair<std::string, std::function<fuzz::SuiteResult()>>> suites{
        {"triangle", [&] { return fuzz::triangle_suite(seed, count); }},
        {"propagation", [&] { return fuzz::propagation_suite(seed, count); }},
        {"inversion", [&] { return fuzz::inversion_suite(seed, count); }},
        {"duality", [&] { return fuzz::duality_suite(seed, count); }},
        {"degree", [&] { return fuzz::degree_suite(seed, count); }},
    };
    bool ok = true, ran = false;
    json results = json::array();
    for (const auto& [name, run] : suites) {
        if (suite != "all" && suite != name) continue;
        ran = true;
        fuzz::SuiteResult r = run();
        ok = ok && r.ok();
        out.line(name + ": " + std::to_string(r.passed) + "/" + std::to_string(r.cases) + " " + verdict(r.ok()) + (r.first_failure.empty() ? "" : " first failure: " + r.first_failure));
        json jr{{"suite", name}, {"cases", r.cases}, {"passed", r.passed}};
        if (!r.first_failure.empty()) jr["first_failure"] = r.first_failure;
        results.push_back(jr);
    }
    if (!ran) throw ParseError("fuzz: unknown suite '" + suite + "'");
    out.set("suites", results);
    return out.finish(ok);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adjq: path coalgebras and Gabriel k-quivers over Q and F_p"};
    app.require_subcommand(1);
    Out out;
    app.add_flag("--json", out.structured, "emit a JSON report");
    std::string field;
    app.add_option("--field", field, "field for quiver inputs: Q or F_p (default: the file's, else Q)");

    std::string file, file2, quiver, suite = "all";
    std::size_t deg = 2, power = 1, count = 20;
    std::uint64_t seed = 1;

    auto* verify = app.add_subcommand("verify", "check coalgebra, algebra or map axioms");
    verify->add_option("file", file)->required();
    auto* filtration = app.add_subcommand("filtration", "coradical filtration and group-likes");
    filtration->add_option("file", file)->required();
    filtration->add_option("--deg", deg, "truncation when the input is a quiver");
    auto* gq = app.add_subcommand("gq", "Gabriel k-quiver of a pointed coalgebra");
    gq->add_option("file", file)->required();
    gq->add_option("--deg", deg, "truncation when the input is a quiver");
    auto* pathcoalg = app.add_subcommand("pathcoalg", "path coalgebra of a k-quiver");
    pathcoalg->add_option("file", file)->required();
    pathcoalg->add_option("--deg", deg, "truncation degree")->required();
    auto* unit = app.add_subcommand("unit", "unit eta_C: C -> k[GQ(C)]");
    unit->add_option("file", file)->required();
    unit->add_option("--deg", deg, "truncation degree")->required();
    auto* counit = app.add_subcommand("counit", "counit GQ(k[VQ]) -> VQ");
    counit->add_option("file", file)->required();
    counit->add_option("--deg", deg, "truncation degree");
    auto* triangle = app.add_subcommand("triangle", "check both triangle identities");
    triangle->add_option("file", file)->required();
    triangle->add_option("--deg", deg, "truncation degree")->required();
    auto* congruent = app.add_subcommand("congruent", "decide the congruence of two maps");
    congruent->add_option("first", file)->required();
    congruent->add_option("second", file2)->required();
    auto* dual = app.add_subcommand("dual", "dual algebra, coalgebra or map");
    dual->add_option("file", file)->required();
    auto* radical = app.add_subcommand("radical", "Jacobson radical and its powers");
    radical->add_option("file", file)->required();
    radical->add_option("--power", power, "power of the radical");
    auto* trunc = app.add_subcommand("trunc-path-alg", "truncated path algebra");
    trunc->add_option("file", file)->required();
    trunc->add_option("--deg", deg, "truncation N")->required();
    auto* ideal = app.add_subcommand("ideal-degrees", "minimal generator degrees of a relation ideal");
    ideal->add_option("file", file)->required();
    auto* transport = app.add_subcommand("transport", "automorphism carrying one admissible embedding to another");
    transport->add_option("gamma", file)->required();
    transport->add_option("delta", file2)->required();
    transport->add_option("--quiver", quiver, "k-quiver of the target path coalgebra")->required();
    transport->add_option("--deg", deg, "truncation degree")->required();
    auto* align = app.add_subcommand("align", "align two presentations of an algebra");
    align->add_option("gamma", file)->required();
    align->add_option("delta", file2)->required();
    align->add_option("--quiver", quiver, "quiver of the presenting path algebra")->required();
    align->add_option("--deg", deg, "truncation N")->required();
    auto* fz = app.add_subcommand("fuzz", "seeded property suites");
    fz->add_option("--seed", seed, "seed");
    fz->add_option("--count", count, "cases per suite");
    fz->add_option("--suite", suite, "triangle, propagation, inversion, duality, degree or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? pass : input_error;
    }

    auto* sub = app.get_subcommands().front();
    out.set("command", sub->get_name());
    try {
        if (sub == verify) return cmd_verify(out, file);
        if (sub == filtration) return cmd_filtration(out, file, deg, field);
        if (sub == gq) return cmd_gq(out, file, deg, field);
        if (sub == pathcoalg) return cmd_pathcoalg(out, file, deg, field);
        if (sub == unit) return cmd_unit(out, file, deg, field);
        if (sub == counit) return cmd_counit(out, file, counit->count("--deg") ? deg : 1, field);
        if (sub == triangle) return cmd_triangle(out, file, deg, field);
        if (sub == congruent) return cmd_congruent(out, file, file2);
        if (sub == dual) return cmd_dual(out, file);
        if (sub == radical) return cmd_radical(out, file, power);
        if (sub == trunc) return cmd_trunc(out, file, deg, field);
        if (sub == ideal) return cmd_ideal_degrees(out, file);
        if (sub == transport) return cmd_transport(out, file, file2, quiver, deg, field);
        if (sub == align) return cmd_align(out, file, file2, quiver, deg, field);
        if (sub == fz) return cmd_fuzz(out, seed, count, suite);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const FieldMismatch& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const ShapeError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const DimensionCap& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const BaseMismatch& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const Error& e) {
        out.set("error", e.what());
        out.line(std::string("FAIL: ") + e.what());
        return out.finish(false);
    }
    return input_error;
}
