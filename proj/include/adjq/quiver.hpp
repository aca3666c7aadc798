#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adjq/matrix.hpp"

namespace adjq {

struct Arrow {
    std::string name;
    std::string src;
    std::string tgt;
};

class Quiver {
public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
        : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
        std::set<std::string> seen;
        for (const auto& v : vertices_)
            if (!seen.insert(v).second) throw ParseError("duplicate vertex '" + v + "'");
        std::set<std::string> names;
        for (const auto& a : arrows_) {
            if (!names.insert(a.name).second) throw ParseError("duplicate arrow '" + a.name + "'");
            if (!seen.count(a.src) || !seen.count(a.tgt)) throw ParseError("arrow '" + a.name + "' has an undeclared endpoint");
        }
    }

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }

    std::size_t vertex_index(const std::string& v) const {
        auto it = std::find(vertices_.begin(), vertices_.end(), v);
        if (it == vertices_.end()) throw ParseError("unknown vertex '" + v + "'");
        return static_cast<std::size_t>(it - vertices_.begin());
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
};

using VertexPair = std::pair<std::size_t, std::size_t>;  // (source, target)

/// A vertex set with a based arrow space for each ordered pair; absent pairs
/// are zero. Basis vectors of the arrow spaces play the role of arrows.
class KQuiver {
public:
    KQuiver() = default;
    explicit KQuiver(std::vector<std::string> vertices) : vertices_(std::move(vertices)) {
        std::set<std::string> seen;
        for (const auto& v : vertices_)
            if (!seen.insert(v).second) throw ParseError("duplicate vertex '" + v + "'");
    }

    /// Appends a basis vector named `name` to the space of pair (src, tgt).
    void add_arrow(std::size_t src, std::size_t tgt, const std::string& name) {
        if (src >= vertices_.size() || tgt >= vertices_.size()) throw ShapeError("arrow endpoint out of range");
        for (const auto& a : arrows_)
            if (a.name == name) throw ParseError("duplicate arrow basis name '" + name + "'");
        arrows_.push_back({name, src, tgt});
        spaces_[{src, tgt}].push_back(arrows_.size() - 1);
    }

    /// Adds `dim` anonymous basis vectors for the pair.
    void add_space(std::size_t src, std::size_t tgt, std::size_t dim) {
        const std::size_t start = dimension(src, tgt);
        for (std::size_t i = 0; i < dim; ++i)
            add_arrow(src, tgt, vertices_.at(src) + ">" + vertices_.at(tgt) + "#" + std::to_string(start + i + 1));
    }

    struct FlatArrow {
        std::string name;
        std::size_t src;
        std::size_t tgt;
    };

    const std::vector<std::string>& vertices() const { return vertices_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    const std::vector<FlatArrow>& arrows() const { return arrows_; }
    std::size_t arrow_count() const { return arrows_.size(); }

    std::size_t dimension(std::size_t src, std::size_t tgt) const {
        auto it = spaces_.find({src, tgt});
        return it == spaces_.end() ? 0 : it->second.size();
    }

    /// Indices (into arrows()) of the basis of the space for (src, tgt).
    const std::vector<std::size_t>& space(std::size_t src, std::size_t tgt) const {
        static const std::vector<std::size_t> empty;
        auto it = spaces_.find({src, tgt});
        return it == spaces_.end() ? empty : it->second;
    }

    /// Pairs with a nonzero space, in (source, target) order.
    std::vector<VertexPair> pairs() const {
        std::vector<VertexPair> out;
        for (const auto& [k, v] : spaces_)
            if (!v.empty()) out.push_back(k);
        return out;
    }

    /// Position of arrow i inside the basis of its pair.
    std::size_t position_in_space(std::size_t i) const {
        const auto& sp = space(arrows_[i].src, arrows_[i].tgt);
        return static_cast<std::size_t>(std::find(sp.begin(), sp.end(), i) - sp.begin());
    }

    std::size_t vertex_index(const std::string& v) const {
        auto it = std::find(vertices_.begin(), vertices_.end(), v);
        if (it == vertices_.end()) throw ParseError("unknown vertex '" + v + "'");
        return static_cast<std::size_t>(it - vertices_.begin());
    }

    friend bool operator==(const KQuiver& a, const KQuiver& b) {
        if (a.vertices_ != b.vertices_ || a.arrows_.size() != b.arrows_.size()) return false;
        for (std::size_t i = 0; i < a.arrows_.size(); ++i) {
            const auto &x = a.arrows_[i], &y = b.arrows_[i];
            if (x.name != y.name || x.src != y.src || x.tgt != y.tgt) return false;
        }
        return true;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<FlatArrow> arrows_;
    std::map<VertexPair, std::vector<std::size_t>> spaces_;
};

/// V(-): arrows g -> h become the basis of the space for (g, h).
inline KQuiver to_kquiver(const Quiver& q) {
    KQuiver k(q.vertices());
    for (const auto& a : q.arrows()) k.add_arrow(q.vertex_index(a.src), q.vertex_index(a.tgt), a.name);
    return k;
}

/// A path a_l ... a_1, stored in written order: arrows.front() is the last
/// arrow traversed. Stationary paths have no arrows and carry their vertex.
struct Path {
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<std::size_t> arrows;

    std::size_t length() const { return arrows.size(); }
    friend bool operator==(const Path&, const Path&) = default;
};

inline std::string path_name(const KQuiver& q, const Path& p) {
    if (p.arrows.empty()) return "e" + q.vertices()[p.source];
    bool dotted = false;
    for (auto a : p.arrows) dotted = dotted || q.arrows()[a].name.size() > 1;
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        if (dotted && i > 0) s += ".";
        s += q.arrows()[p.arrows[i]].name;
    }
    return s;
}

/// All paths of length <= d ordered by (length, lexicographic on arrow
/// names); stationary paths come first in vertex order.
inline std::vector<Path> enumerate_paths(const KQuiver& q, std::size_t d) {
    std::vector<Path> out;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) out.push_back({v, v, {}});
    std::vector<std::size_t> by_name(q.arrow_count());
    for (std::size_t i = 0; i < by_name.size(); ++i) by_name[i] = i;
    std::sort(by_name.begin(), by_name.end(), [&](auto a, auto b) { return q.arrows()[a].name < q.arrows()[b].name; });

    std::vector<Path> layer;
    for (auto a : by_name) layer.push_back({q.arrows()[a].src, q.arrows()[a].tgt, {a}});
    for (std::size_t len = 1; len <= d && !layer.empty(); ++len) {
        // layer is already lex-sorted: extending each path on the right
        // (earlier arrows) in name order preserves the order.
        out.insert(out.end(), layer.begin(), layer.end());
        if (len == d) break;
        std::vector<Path> next;
        for (const auto& p : layer) {
            for (auto a : by_name) {
                if (q.arrows()[a].tgt != p.source) continue;
                Path e = p;
                e.arrows.push_back(a);
                e.source = q.arrows()[a].src;
                next.push_back(std::move(e));
            }
        }
        layer = std::move(next);
    }
    return out;
}

/// phi_0 on vertices and a matrix phi_{g,h}: VQ_{g,h} -> VR_{phi0 g, phi0 h}
/// for every nonzero source pair.
class KQuiverMap {
public:
    KQuiverMap() = default;
    KQuiverMap(KQuiver source, KQuiver target, std::vector<std::size_t> vertex_map, Field f)
        : source_(std::move(source)), target_(std::move(target)), vertex_map_(std::move(vertex_map)), field_(f) {
        if (vertex_map_.size() != source_.vertex_count()) throw ShapeError("vertex function is not total");
        for (auto v : vertex_map_)
            if (v >= target_.vertex_count()) throw ShapeError("vertex function leaves the target");
        for (auto [g, h] : source_.pairs()) blocks_[{g, h}] = Mat(f, target_.dimension(vertex_map_[g], vertex_map_[h]), source_.dimension(g, h));
    }

    static KQuiverMap identity(const KQuiver& q, Field f) {
        std::vector<std::size_t> v(q.vertex_count());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
        KQuiverMap m(q, q, v, f);
        for (auto& [k, b] : m.blocks_) b = Mat::identity(f, b.rows());
        return m;
    }

    const KQuiver& source() const { return source_; }
    const KQuiver& target() const { return target_; }
    const Field& field() const { return field_; }
    const std::vector<std::size_t>& vertex_map() const { return vertex_map_; }
    const std::map<VertexPair, Mat>& blocks() const { return blocks_; }

    const Mat& block(std::size_t g, std::size_t h) const {
        auto it = blocks_.find({g, h});
        if (it == blocks_.end()) throw ShapeError("no arrow space for this pair");
        return it->second;
    }

    void set_block(std::size_t g, std::size_t h, const Mat& m) {
        auto it = blocks_.find({g, h});
        if (it == blocks_.end()) {
            if (m.cols() == 0) return;
            throw ShapeError("no arrow space for this pair");
        }
        if (m.rows() != it->second.rows() || m.cols() != it->second.cols())
            throw ShapeError("block shape " + m.shape() + " but expected " + it->second.shape());
        it->second = m;
    }

    /// Image of source arrow i in the target, as coefficients over target arrows.
    SparseVec image_of_arrow(std::size_t i) const {
        const auto& a = source_.arrows()[i];
        const Mat& b = block(a.src, a.tgt);
        const std::size_t col = source_.position_in_space(i);
        const auto& tsp = target_.space(vertex_map_[a.src], vertex_map_[a.tgt]);
        SparseVec out;
        for (std::size_t r = 0; r < b.rows(); ++r)
            if (!b(r, col).is_zero()) out.emplace(tsp[r], b(r, col));
        return out;
    }

    friend bool operator==(const KQuiverMap& a, const KQuiverMap& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.vertex_map_ == b.vertex_map_ && a.blocks_ == b.blocks_;
    }

private:
    KQuiver source_;
    KQuiver target_;
    std::vector<std::size_t> vertex_map_;
    Field field_{};
    std::map<VertexPair, Mat> blocks_;
};

/// f o g.
inline KQuiverMap compose(const KQuiverMap& f, const KQuiverMap& g) {
    if (!(g.target() == f.source())) throw ShapeError("compose: target of the first map is not the source of the second");
    if (f.field() != g.field()) throw FieldMismatch("compose: maps over different fields");
    std::vector<std::size_t> v(g.source().vertex_count());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.vertex_map()[g.vertex_map()[i]];
    KQuiverMap out(g.source(), f.target(), v, f.field());
    for (const auto& [pair, gb] : g.blocks()) {
        const std::size_t mg = g.vertex_map()[pair.first], mh = g.vertex_map()[pair.second];
        if (gb.rows() == 0) continue;
        out.set_block(pair.first, pair.second, f.block(mg, mh) * gb);
    }
    return out;
}

inline bool is_iso(const KQuiverMap& f) {
    const auto& vm = f.vertex_map();
    if (vm.size() != f.target().vertex_count()) return false;
    std::set<std::size_t> img(vm.begin(), vm.end());
    if (img.size() != vm.size()) return false;
    for (auto [g, h] : f.target().pairs()) {
        // every target pair must be hit by some source pair of equal dimension
        std::size_t gs = 0, hs = 0;
        for (std::size_t i = 0; i < vm.size(); ++i) {
            if (vm[i] == g) gs = i;
            if (vm[i] == h) hs = i;
        }
        if (f.source().dimension(gs, hs) != f.target().dimension(g, h)) return false;
    }
    for (const auto& [pair, b] : f.blocks())
        if (b.rows() != b.cols() || !inverse(b)) return false;
    return true;
}

inline KQuiverMap inverse(const KQuiverMap& f) {
    if (!is_iso(f)) throw ShapeError("k-quiver map is not an isomorphism");
    std::vector<std::size_t> inv(f.vertex_map().size());
    for (std::size_t i = 0; i < inv.size(); ++i) inv[f.vertex_map()[i]] = i;
    KQuiverMap out(f.target(), f.source(), inv, f.field());
    for (const auto& [pair, b] : f.blocks()) out.set_block(f.vertex_map()[pair.first], f.vertex_map()[pair.second], *adjq::inverse(b));
    return out;
}

}  // namespace adjq
