#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "adjq/pseudocompact.hpp"

namespace adjq::io {

using json = nlohmann::ordered_json;

/// ADJQ_MAX_DIM, default 64.
inline std::size_t max_dim() {
    if (const char* env = std::getenv("ADJQ_MAX_DIM")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        throw ParseError(std::string("ADJQ_MAX_DIM must be a positive integer, got '") + env + "'");
    }
    return 64;
}

inline void check_dim(std::size_t n, const std::string& what) {
    if (n > max_dim())
        throw DimensionCap(what + " has dimension " + std::to_string(n) + ", above ADJQ_MAX_DIM=" + std::to_string(max_dim()));
}

/// A parsed file together with its location, for error messages and for
/// resolving relative references.
struct Document {
    json value;
    std::filesystem::path path;

    std::string where(const std::string& key) const { return path.string() + ": " + key; }
};

inline Document read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open");
    try {
        return {json::parse(in), path};
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

inline Document resolve(const Document& parent, const json& ref) {
    if (ref.is_string()) return read_file(parent.path.parent_path() / ref.get<std::string>());
    if (ref.is_object()) return {ref, parent.path};
    throw ParseError(parent.path.string() + ": expected a file name or an inline object");
}

namespace detail {

inline const json& require(const Document& d, const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(d.where(std::string("missing \"") + key + "\""));
    return obj.at(key);
}

inline std::string as_string(const Document& d, const json& v, const std::string& ctx) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw ParseError(d.where(ctx + ": expected a string"));
}

inline Scalar as_scalar(const Document& d, Field f, const json& v, const std::string& ctx) {
    try {
        return Scalar::parse(f, as_string(d, v, ctx));
    } catch (const ParseError& e) {
        throw ParseError(d.where(ctx + ": " + e.what()));
    }
}

inline std::vector<std::string> string_list(const Document& d, const json& v, const std::string& ctx) {
    if (!v.is_array()) throw ParseError(d.where(ctx + ": expected an array"));
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(as_string(d, x, ctx));
    return out;
}

inline std::size_t label_index(const Document& d, const std::vector<std::string>& labels, const std::string& l, const std::string& ctx) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == l) return i;
    throw ParseError(d.where(ctx + ": unknown basis label '" + l + "'"));
}

}  // namespace detail

// ---- fields and quivers ---------------------------------------------------

inline Field parse_field(const Document& d, const json& v) {
    const std::string kind = detail::as_string(d, detail::require(d, v, "kind"), "field.kind");
    if (kind == "Q") return Field::rationals();
    if (kind == "Fp") {
        const json& p = detail::require(d, v, "p");
        if (!p.is_number_unsigned()) throw ParseError(d.where("field.p: expected a positive integer"));
        try {
            return Field::prime(p.get<std::uint64_t>());
        } catch (const ParseError& e) {
            throw ParseError(d.where(std::string("field.p: ") + e.what()));
        }
    }
    throw ParseError(d.where("field.kind: expected \"Q\" or \"Fp\", got \"" + kind + "\""));
}

inline json field_json(Field f) {
    if (f.is_rational()) return json{{"kind", "Q"}};
    return json{{"kind", "Fp"}, {"p", f.p}};
}

inline Field field_of(const Document& d) {
    return d.value.contains("field") ? parse_field(d, d.value.at("field")) : Field::rationals();
}

/// Quiver or k-quiver file; "arrow_spaces" entries list basis names or give
/// an anonymous dimension.
inline KQuiver parse_kquiver(const Document& d) {
    const json& v = d.value;
    auto vertices = detail::string_list(d, detail::require(d, v, "vertices"), "vertices");
    KQuiver q;
    try {
        q = KQuiver(vertices);
    } catch (const ParseError& e) {
        throw ParseError(d.where(e.what()));
    }
    auto vertex = [&](const std::string& name, const std::string& ctx) {
        try {
            return q.vertex_index(name);
        } catch (const ParseError&) {
            throw ParseError(d.where(ctx + ": unknown vertex '" + name + "'"));
        }
    };
    if (v.contains("arrows")) {
        const json& arrows = v.at("arrows");
        if (!arrows.is_array()) throw ParseError(d.where("arrows: expected an array"));
        for (std::size_t i = 0; i < arrows.size(); ++i) {
            const std::string ctx = "arrows[" + std::to_string(i) + "]";
            const json& a = arrows[i];
            const std::string name = detail::as_string(d, detail::require(d, a, "name"), ctx + ".name");
            try {
                q.add_arrow(vertex(detail::as_string(d, detail::require(d, a, "src"), ctx), ctx),
                            vertex(detail::as_string(d, detail::require(d, a, "tgt"), ctx), ctx), name);
            } catch (const ParseError& e) {
                throw ParseError(d.where(ctx + ": " + e.what()));
            }
        }
    }
    if (v.contains("arrow_spaces")) {
        for (const auto& [key, val] : v.at("arrow_spaces").items()) {
            const std::string ctx = "arrow_spaces[\"" + key + "\"]";
            auto comma = key.find(',');
            if (comma == std::string::npos) throw ParseError(d.where(ctx + ": key must be \"src,tgt\""));
            const std::size_t s = vertex(key.substr(0, comma), ctx), t = vertex(key.substr(comma + 1), ctx);
            if (val.is_number_unsigned()) {
                q.add_space(s, t, val.get<std::size_t>());
            } else {
                for (const auto& name : detail::string_list(d, val, ctx)) {
                    bool present = false;
                    for (const auto& a : q.arrows())
                        if (a.name == name) {
                            if (a.src != s || a.tgt != t) throw ParseError(d.where(ctx + ": arrow '" + name + "' has other endpoints"));
                            present = true;
                        }
                    if (!present) q.add_arrow(s, t, name);
                }
            }
        }
    }
    return q;
}

inline json to_json(const KQuiver& q) {
    json arrows = json::array();
    for (const auto& a : q.arrows()) arrows.push_back({{"name", a.name}, {"src", q.vertices()[a.src]}, {"tgt", q.vertices()[a.tgt]}});
    return json{{"vertices", q.vertices()}, {"arrows", arrows}};
}

// ---- coalgebras and algebras ------------------------------------------------

namespace detail {

/// Shared reader for "delta"/"mult" tables keyed by basis label.
inline std::vector<SparseVec> read_table(const Document& d, Field f, const std::vector<std::string>& labels, const json& table,
                                         const std::string& key) {
    const std::size_t n = labels.size();
    std::vector<SparseVec> out(n);
    if (!table.is_object()) throw ParseError(d.where(key + ": expected an object keyed by basis label"));
    for (const auto& [label, terms] : table.items()) {
        const std::size_t i = label_index(d, labels, label, key);
        if (!terms.is_array()) throw ParseError(d.where(key + "." + label + ": expected a list of [left, right, coefficient]"));
        for (std::size_t k = 0; k < terms.size(); ++k) {
            const std::string ctx = key + "." + label + "[" + std::to_string(k) + "]";
            const json& t = terms[k];
            if (!t.is_array() || t.size() != 3) throw ParseError(d.where(ctx + ": expected [left, right, coefficient]"));
            const std::size_t a = label_index(d, labels, as_string(d, t[0], ctx), ctx);
            const std::size_t b = label_index(d, labels, as_string(d, t[1], ctx), ctx);
            add_entry(out[i], a * n + b, as_scalar(d, f, t[2], ctx));
        }
    }
    return out;
}

inline Vec read_functional(const Document& d, Field f, const std::vector<std::string>& labels, const json& v, const std::string& key) {
    Vec out = zero_vec(f, labels.size());
    if (!v.is_object()) throw ParseError(d.where(key + ": expected an object keyed by basis label"));
    for (const auto& [label, val] : v.items()) out[label_index(d, labels, label, key)] = as_scalar(d, f, val, key + "." + label);
    return out;
}

inline json functional_json(const std::vector<std::string>& labels, const Vec& v) {
    json out = json::object();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out[labels[i]] = v[i].to_string();
    return out;
}

}  // namespace detail

inline CoalgebraPtr parse_coalgebra(const Document& d) {
    const Field f = field_of(d);
    auto labels = detail::string_list(d, detail::require(d, d.value, "basis"), "basis");
    check_dim(labels.size(), d.path.string());
    auto delta = detail::read_table(d, f, labels, d.value.contains("delta") ? d.value.at("delta") : json::object(), "delta");
    Vec counit = d.value.contains("counit") ? detail::read_functional(d, f, labels, d.value.at("counit"), "counit") : zero_vec(f, labels.size());
    try {
        return std::make_shared<const Coalgebra>(f, labels, std::move(delta), std::move(counit));
    } catch (const ParseError& e) {
        throw ParseError(d.where(e.what()));
    }
}

inline json to_json(const Coalgebra& c) {
    const std::size_t n = c.dim();
    json delta = json::object();
    for (std::size_t i = 0; i < n; ++i) {
        json terms = json::array();
        for (const auto& [t, v] : c.delta(i)) terms.push_back({c.labels()[t / n], c.labels()[t % n], v.to_string()});
        delta[c.labels()[i]] = terms;
    }
    return json{{"field", field_json(c.field())}, {"basis", c.labels()}, {"delta", delta}, {"counit", detail::functional_json(c.labels(), c.counit())}};
}

/// "mult" is keyed by the output label: mult.x lists [a, b, c] with
/// coefficient c of x in a*b, the transpose of a "delta" table.
inline AlgebraPtr parse_algebra(const Document& d) {
    const Field f = field_of(d);
    auto labels = detail::string_list(d, detail::require(d, d.value, "basis"), "basis");
    check_dim(labels.size(), d.path.string());
    const std::size_t n = labels.size();
    auto table = detail::read_table(d, f, labels, d.value.contains("mult") ? d.value.at("mult") : json::object(), "mult");
    std::vector<SparseVec> mult(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [t, v] : table[i]) add_entry(mult[t], i, v);
    Vec unit = d.value.contains("unit") ? detail::read_functional(d, f, labels, d.value.at("unit"), "unit") : zero_vec(f, n);
    std::shared_ptr<FiniteAlgebra> a;
    try {
        a = std::make_shared<FiniteAlgebra>(f, labels, std::move(mult), std::move(unit));
    } catch (const ParseError& e) {
        throw ParseError(d.where(e.what()));
    }
    if (d.value.contains("grading")) {
        std::vector<std::size_t> g(n, 0);
        for (const auto& [label, val] : d.value.at("grading").items()) {
            if (!val.is_number_unsigned()) throw ParseError(d.where("grading." + label + ": expected a nonnegative integer"));
            g[detail::label_index(d, labels, label, "grading")] = val.get<std::size_t>();
        }
        a->set_grading(std::move(g));
    }
    return a;
}

inline json to_json(const FiniteAlgebra& a) {
    const std::size_t n = a.dim();
    std::vector<json> per(n, json::array());
    for (std::size_t t = 0; t < n * n; ++t)
        for (const auto& [i, v] : a.structure()[t]) per[i].push_back({a.labels()[t / n], a.labels()[t % n], v.to_string()});
    json mult = json::object();
    for (std::size_t i = 0; i < n; ++i) mult[a.labels()[i]] = per[i];
    json out{{"field", field_json(a.field())}, {"basis", a.labels()}, {"mult", mult}, {"unit", detail::functional_json(a.labels(), a.unit())}};
    if (a.grading()) {
        json g = json::object();
        for (std::size_t i = 0; i < n; ++i) g[a.labels()[i]] = (*a.grading())[i];
        out["grading"] = g;
    }
    return out;
}

// ---- maps and ideals ----------------------------------------------------------

inline Mat parse_matrix(const Document& d, Field f, const json& v, std::size_t rows, std::size_t cols) {
    if (!v.is_array() || v.size() != rows) throw ParseError(d.where("matrix: expected " + std::to_string(rows) + " rows"));
    Mat m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!v[i].is_array() || v[i].size() != cols)
            throw ParseError(d.where("matrix[" + std::to_string(i) + "]: expected " + std::to_string(cols) + " entries"));
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = detail::as_scalar(d, f, v[i][j], "matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return m;
}

inline json matrix_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).to_string());
        rows.push_back(r);
    }
    return rows;
}

enum class Kind { quiver, coalgebra, algebra, map, ideal, kquiver_map };

inline Kind kind_of(const Document& d) {
    const json& v = d.value;
    if (!v.is_object()) throw ParseError(d.path.string() + ": expected a JSON object");
    if (v.contains("vertex_map")) return Kind::kquiver_map;
    if (v.contains("matrix")) return Kind::map;
    if (v.contains("generators")) return Kind::ideal;
    if (v.contains("delta") || v.contains("counit")) return Kind::coalgebra;
    if (v.contains("mult") || v.contains("unit")) return Kind::algebra;
    if (v.contains("vertices")) return Kind::quiver;
    throw ParseError(d.path.string() + ": cannot tell what kind of object this is");
}

using AnyMap = std::variant<CoalgebraMap, AlgebraMap>;

/// A map file; its kind follows the kind of its source.
inline AnyMap parse_map(const Document& d) {
    Document src = resolve(d, detail::require(d, d.value, "source"));
    Document tgt = resolve(d, detail::require(d, d.value, "target"));
    const Kind ks = kind_of(src), kt = kind_of(tgt);
    if (ks != kt) throw ParseError(d.where("source and target are different kinds of object"));
    if (ks == Kind::coalgebra) {
        auto c = parse_coalgebra(src), e = parse_coalgebra(tgt);
        if (c->field() != e->field()) throw FieldMismatch(d.where("source and target are over different fields"));
        return CoalgebraMap{c, e, parse_matrix(d, c->field(), d.value.at("matrix"), e->dim(), c->dim())};
    }
    if (ks == Kind::algebra) {
        auto a = parse_algebra(src), b = parse_algebra(tgt);
        if (a->field() != b->field()) throw FieldMismatch(d.where("source and target are over different fields"));
        return AlgebraMap{a, b, parse_matrix(d, a->field(), d.value.at("matrix"), b->dim(), a->dim())};
    }
    throw ParseError(d.where("maps must go between coalgebras or between algebras"));
}

inline json to_json(const CoalgebraMap& m) { return json{{"source", to_json(*m.source)}, {"target", to_json(*m.target)}, {"matrix", matrix_json(m.matrix)}}; }
inline json to_json(const AlgebraMap& m) { return json{{"source", to_json(*m.source)}, {"target", to_json(*m.target)}, {"matrix", matrix_json(m.matrix)}}; }

/// Blocks keyed "g,h" by source vertex names; each is target dim x source dim.
inline json to_json(const KQuiverMap& m) {
    json blocks = json::object();
    for (const auto& [pair, b] : m.blocks()) blocks[m.source().vertices()[pair.first] + "," + m.source().vertices()[pair.second]] = matrix_json(b);
    json vm = json::object();
    for (std::size_t v = 0; v < m.vertex_map().size(); ++v) vm[m.source().vertices()[v]] = m.target().vertices()[m.vertex_map()[v]];
    return json{{"field", field_json(m.field())}, {"source", to_json(m.source())}, {"target", to_json(m.target())}, {"vertex_map", vm}, {"blocks", blocks}};
}

inline KQuiverMap parse_kquiver_map(const Document& d) {
    const Field f = field_of(d);
    KQuiver src = parse_kquiver(resolve(d, detail::require(d, d.value, "source")));
    KQuiver tgt = parse_kquiver(resolve(d, detail::require(d, d.value, "target")));
    const json& vm = detail::require(d, d.value, "vertex_map");
    if (!vm.is_object()) throw ParseError(d.where("vertex_map: expected an object"));
    std::vector<std::size_t> verts(src.vertex_count());
    for (std::size_t v = 0; v < src.vertex_count(); ++v) {
        const std::string ctx = "vertex_map[\"" + src.vertices()[v] + "\"]";
        if (!vm.contains(src.vertices()[v])) throw ParseError(d.where(ctx + ": missing"));
        try {
            verts[v] = tgt.vertex_index(detail::as_string(d, vm.at(src.vertices()[v]), ctx));
        } catch (const ParseError& e) {
            throw ParseError(d.where(ctx + ": " + e.what()));
        }
    }
    KQuiverMap m(src, tgt, verts, f);
    const json& blocks = d.value.contains("blocks") ? d.value.at("blocks") : json::object();
    if (!blocks.is_object()) throw ParseError(d.where("blocks: expected an object"));
    for (const auto& [key, val] : blocks.items()) {
        const std::string ctx = "blocks[\"" + key + "\"]";
        auto comma = key.find(',');
        if (comma == std::string::npos) throw ParseError(d.where(ctx + ": key must be \"src,tgt\""));
        std::size_t g, h;
        try {
            g = src.vertex_index(key.substr(0, comma));
            h = src.vertex_index(key.substr(comma + 1));
        } catch (const ParseError& e) {
            throw ParseError(d.where(ctx + ": " + e.what()));
        }
        if (src.dimension(g, h) == 0) throw ParseError(d.where(ctx + ": no arrows between these vertices"));
        const Mat& shape = m.block(g, h);
        m.set_block(g, h, parse_matrix(d, f, val, shape.rows(), shape.cols()));
    }
    return m;
}

inline TwoSidedIdeal parse_ideal(const Document& d) {
    Document ad = resolve(d, detail::require(d, d.value, "algebra"));
    AlgebraPtr a = parse_algebra(ad);
    const json& gens = detail::require(d, d.value, "generators");
    if (!gens.is_array()) throw ParseError(d.where("generators: expected an array of coefficient maps"));
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < gens.size(); ++i) vs.push_back(detail::read_functional(d, a->field(), a->labels(), gens[i], "generators[" + std::to_string(i) + "]"));
    return ideal_closure(a, vs);
}

inline json to_json(const TwoSidedIdeal& i) {
    json gens = json::array();
    for (const auto& g : i.generators) gens.push_back(detail::functional_json(i.algebra->labels(), g));
    return json{{"algebra", to_json(*i.algebra)}, {"generators", gens}};
}

/// Human-readable element: "2*a + 1/2*cb" or "0".
inline std::string element_string(const std::vector<std::string>& labels, const Vec& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += v[i].is_one() ? labels[i] : "(" + v[i].display() + ")*" + labels[i];
    }
    return out.empty() ? "0" : out;
}

inline std::string tensor_string(const std::vector<std::string>& labels, const SparseVec& t) {
    const std::size_t n = labels.size();
    std::string out;
    for (const auto& [idx, c] : t) {
        if (c.is_zero()) continue;
        if (!out.empty()) out += "+";
        if (!c.is_one()) out += "(" + c.display() + ")";
        out += labels[idx / n] + "⊗" + labels[idx % n];
    }
    return out.empty() ? "0" : out;
}

}  // namespace adjq::io
