#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adjq/coradical.hpp"
#include "adjq/quiver.hpp"

namespace adjq {

/// k[VQ] truncated at degree d, with its basis of paths. The first
/// vertex_count() basis elements are the stationary paths in vertex order.
struct PathCoalgebra {
    CoalgebraPtr coalgebra;
    KQuiver quiver;
    std::size_t degree = 0;
    std::vector<Path> paths;
    std::vector<std::size_t> grading;
    std::map<std::vector<std::size_t>, std::size_t> chain_index;  // length >= 1

    std::optional<std::size_t> find(const std::vector<std::size_t>& arrows) const {
        auto it = chain_index.find(arrows);
        if (it == chain_index.end()) return std::nullopt;
        return it->second;
    }

    std::size_t arrow_path(std::size_t arrow) const { return chain_index.at({arrow}); }

    /// Span of the paths of length <= n.
    Subspace degree_at_most(std::size_t n) const {
        const Field f = coalgebra->field();
        std::vector<Vec> vs;
        for (std::size_t i = 0; i < paths.size(); ++i)
            if (grading[i] <= n) vs.push_back(unit_vec(f, paths.size(), i));
        return Subspace::span(f, paths.size(), vs);
    }
};

/// Deconcatenation coalgebra on paths of length <= d.
inline PathCoalgebra path_coalgebra(const KQuiver& q, std::size_t d, Field f) {
    PathCoalgebra pc;
    pc.quiver = q;
    pc.degree = d;
    pc.paths = enumerate_paths(q, d);
    const std::size_t n = pc.paths.size();
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        const Path& p = pc.paths[i];
        labels.push_back(path_name(q, p));
        pc.grading.push_back(p.length());
        if (p.length() > 0) pc.chain_index[p.arrows] = i;
    }
    auto index_of = [&](const std::vector<std::size_t>& arrows, std::size_t vertex) {
        return arrows.empty() ? vertex : pc.chain_index.at(arrows);
    };
    const Scalar one = Scalar::one(f);
    std::vector<SparseVec> delta(n);
    Vec counit = zero_vec(f, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Path& p = pc.paths[i];
        if (p.length() == 0) counit[i] = one;
        // w = w2 w1 with w2 = arrows[0, k), w1 = arrows[k, l)
        for (std::size_t k = 0; k <= p.length(); ++k) {
            std::vector<std::size_t> w2(p.arrows.begin(), p.arrows.begin() + static_cast<long>(k));
            std::vector<std::size_t> w1(p.arrows.begin() + static_cast<long>(k), p.arrows.end());
            // the vertex between w2 and w1
            const std::size_t mid = k == 0 ? p.target : q.arrows()[p.arrows[k - 1]].src;
            add_entry(delta[i], index_of(w2, mid) * n + index_of(w1, mid), one);
        }
    }
    pc.coalgebra = std::make_shared<const Coalgebra>(f, std::move(labels), std::move(delta), std::move(counit));
    return pc;
}

namespace detail {

inline std::string vector_label(const std::vector<std::string>& labels, const Vec& v, const std::string& fallback) {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (hit || !v[i].is_one()) return fallback;
        hit = i;
    }
    return hit ? labels[*hit] : fallback;
}

inline std::string join_labels(const std::vector<std::string>& parts) {
    bool dotted = false;
    for (const auto& p : parts) dotted = dotted || p.size() > 1;
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (dotted && i > 0) s += ".";
        s += parts[i];
    }
    return s;
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace detail

struct CotensorCoalgebra {
    CoalgebraPtr coalgebra;
    std::vector<std::size_t> degree_dims;
    KQuiver quiver;         // vertices Gr(Sigma), arrow spaces the isotypic parts of V
    PathCoalgebra path;     // k[quiver] truncated at the same degree
    CoalgebraMap to_path;   // the shared-basis isomorphism Cot -> path
};

/// Cot_Sigma(V) truncated at degree d, built from iterated cotensor powers
/// V^{box n} inside V^{(x) n}.
inline CotensorCoalgebra cotensor_coalgebra(const CoalgebraPtr& sigma, const Bicomodule& v, std::size_t d) {
    const Coalgebra& s = *sigma;
    const Field f = s.field();
    if (filtration_length(s) != 0 || !is_pointed(s)) throw NotCosemisimple("base coalgebra must be pointed cosemisimple");
    if (v.left->labels() != s.labels() || v.right->labels() != s.labels()) throw BaseMismatch("bicomodule over another base");
    const std::size_t ns = s.dim(), dv = v.dim();
    const auto& gl = group_likes(s);
    const std::size_t m = gl.size();

    // coordinates in the group-like basis
    std::vector<Vec> gcols(gl.begin(), gl.end());
    Mat gmat = Mat::from_cols(f, gcols, ns);
    Mat ginv = *inverse(gmat);

    // W_n as subspaces of V^{(x) n}
    std::vector<Subspace> w(d + 1);
    if (d >= 1) w[1] = Subspace::full(f, dv);
    for (std::size_t n = 2; n <= d; ++n) {
        const Subspace& prev = w[n - 1];
        const std::size_t np = detail::ipow(dv, n - 1);
        SparseMat rel(f, np * ns * dv, prev.dim() * dv);
        for (std::size_t r = 0; r < prev.dim(); ++r) {
            Vec wr = prev.basis_vector(r);
            for (std::size_t x = 0; x < dv; ++x) {
                const std::size_t col = r * dv + x;
                for (std::size_t idx = 0; idx < np; ++idx) {
                    if (wr[idx].is_zero()) continue;
                    const std::size_t prefix = idx / dv, last = idx % dv;
                    for (const auto& [t, c] : v.nu.column(last)) {
                        const std::size_t l2 = t / ns, sg = t % ns;
                        rel.add(((prefix * dv + l2) * ns + sg) * dv + x, col, wr[idx] * c);
                    }
                    for (const auto& [t, c] : v.mu.column(x)) {
                        const std::size_t sg = t / dv, x2 = t % dv;
                        rel.add((idx * ns + sg) * dv + x2, col, -(wr[idx] * c));
                    }
                }
            }
        }
        Subspace ker = kernel(rel);
        std::vector<Vec> vs;
        for (const auto& y : ker.basis_vectors()) {
            Vec z = zero_vec(f, np * dv);
            for (std::size_t r = 0; r < prev.dim(); ++r) {
                Vec wr = prev.basis_vector(r);
                for (std::size_t x = 0; x < dv; ++x) {
                    const Scalar& c = y[r * dv + x];
                    if (c.is_zero()) continue;
                    for (std::size_t idx = 0; idx < np; ++idx)
                        if (!wr[idx].is_zero()) z[idx * dv + x] += c * wr[idx];
                }
            }
            vs.push_back(std::move(z));
        }
        w[n] = Subspace::span(f, np * dv, vs);
    }

    CotensorCoalgebra out;
    std::vector<std::size_t> offset(d + 2, 0);
    offset[1] = ns;
    out.degree_dims.push_back(ns);
    for (std::size_t n = 1; n <= d; ++n) {
        out.degree_dims.push_back(w[n].dim());
        offset[n + 1] = offset[n] + w[n].dim();
    }
    const std::size_t total = offset[d + 1];

    std::vector<std::string> labels = s.labels();
    for (std::size_t n = 1; n <= d; ++n) {
        for (std::size_t k = 0; k < w[n].dim(); ++k) {
            Vec b = w[n].basis_vector(k);
            std::optional<std::size_t> hit;
            bool pure = true;
            for (std::size_t i = 0; i < b.size() && pure; ++i) {
                if (b[i].is_zero()) continue;
                if (hit || !b[i].is_one()) pure = false;
                hit = i;
            }
            std::string name = "w" + std::to_string(n) + "_" + std::to_string(k + 1);
            if (pure && hit) {
                std::vector<std::string> parts;
                std::size_t idx = *hit;
                for (std::size_t j = 0; j < n; ++j) {
                    parts.insert(parts.begin(), v.labels[idx % dv]);
                    idx /= dv;
                }
                name = detail::join_labels(parts);
            }
            labels.push_back(name);
        }
    }

    // coordinates of a tensor in W_n (zero when n == 0 means Sigma)
    auto coords_in = [&](std::size_t n, const Vec& x) {
        Vec c;
        for (auto p : w[n].pivots()) c.push_back(x[p]);
        return c;
    };

    std::vector<SparseVec> delta(total);
    Vec counit = zero_vec(f, total);
    for (std::size_t i = 0; i < ns; ++i) {
        counit[i] = s.counit()[i];
        for (const auto& [t, c] : s.delta(i)) add_entry(delta[i], (t / ns) * total + t % ns, c);
    }
    for (std::size_t n = 1; n <= d; ++n) {
        const std::size_t len = detail::ipow(dv, n);
        for (std::size_t k = 0; k < w[n].dim(); ++k) {
            const std::size_t me = offset[n] + k;
            Vec x = w[n].basis_vector(k);
            // split 0: mu on the first factor
            const std::size_t rest = detail::ipow(dv, n - 1);
            std::vector<Vec> left(ns, zero_vec(f, len)), right(ns, zero_vec(f, len));
            for (std::size_t idx = 0; idx < len; ++idx) {
                if (x[idx].is_zero()) continue;
                const std::size_t first = idx / rest, tail = idx % rest;
                for (const auto& [t, c] : v.mu.column(first)) left[t / dv][(t % dv) * rest + tail] += c * x[idx];
                const std::size_t head = idx / dv, last = idx % dv;
                for (const auto& [t, c] : v.nu.column(last)) right[t % ns][head * dv + t / ns] += c * x[idx];
            }
            for (std::size_t sg = 0; sg < ns; ++sg) {
                Vec cl = coords_in(n, left[sg]), cr = coords_in(n, right[sg]);
                for (std::size_t r = 0; r < cl.size(); ++r)
                    if (!cl[r].is_zero()) add_entry(delta[me], sg * total + offset[n] + r, cl[r]);
                for (std::size_t r = 0; r < cr.size(); ++r)
                    if (!cr[r].is_zero()) add_entry(delta[me], (offset[n] + r) * total + sg, cr[r]);
            }
            // inner splits: W_a (x) W_{n-a}
            for (std::size_t a = 1; a < n; ++a) {
                const std::size_t lb = detail::ipow(dv, n - a);
                const auto& pa = w[a].pivots();
                const auto& pb = w[n - a].pivots();
                for (std::size_t r = 0; r < pa.size(); ++r)
                    for (std::size_t q = 0; q < pb.size(); ++q) {
                        const Scalar& c = x[pa[r] * lb + pb[q]];
                        if (!c.is_zero()) add_entry(delta[me], (offset[a] + r) * total + offset[n - a] + q, c);
                    }
            }
        }
    }
    out.coalgebra = std::make_shared<const Coalgebra>(f, labels, std::move(delta), std::move(counit));

    // isotypic parts V_{g,h} = {x | mu x = h (x) x, nu x = x (x) g}
    std::vector<std::string> vnames;
    for (std::size_t i = 0; i < m; ++i) vnames.push_back(detail::vector_label(s.labels(), gl[i], "g" + std::to_string(i + 1)));
    KQuiver kq(vnames);
    std::vector<Vec> arrow_vecs;
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t h = 0; h < m; ++h) {
            Mat proj(f, dv, dv);
            for (std::size_t x = 0; x < dv; ++x) {
                // R_g then L_h
                Vec rg = zero_vec(f, dv);
                for (const auto& [t, c] : v.nu.column(x)) rg[t / ns] += c * ginv(g, t % ns);
                Vec lh = zero_vec(f, dv);
                for (std::size_t y = 0; y < dv; ++y) {
                    if (rg[y].is_zero()) continue;
                    for (const auto& [t, c] : v.mu.column(y)) lh[t % dv] += rg[y] * c * ginv(h, t / dv);
                }
                proj.set_col(x, lh);
            }
            Subspace iso = image(proj);
            for (std::size_t k = 0; k < iso.dim(); ++k) {
                Vec b = iso.basis_vector(k);
                kq.add_arrow(g, h, detail::vector_label(v.labels, b, vnames[g] + ">" + vnames[h] + "#" + std::to_string(k + 1)));
                arrow_vecs.push_back(b);
            }
        }
    out.quiver = kq;
    out.path = path_coalgebra(kq, d, f);

    // path -> Cot, then invert
    const auto& pc = out.path;
    if (pc.paths.size() != total) throw NotCosemisimple("cotensor powers do not match the path count");
    Mat to_cot(f, total, total);
    for (std::size_t i = 0; i < pc.paths.size(); ++i) {
        const Path& p = pc.paths[i];
        if (p.length() == 0) {
            for (std::size_t r = 0; r < ns; ++r) to_cot(r, i) = gl[p.source][r];
            continue;
        }
        Vec t{Scalar::one(f)};
        for (auto a : p.arrows) {
            Vec next = zero_vec(f, t.size() * dv);
            for (std::size_t u = 0; u < t.size(); ++u)
                for (std::size_t y = 0; y < dv; ++y) next[u * dv + y] = t[u] * arrow_vecs[a][y];
            t = std::move(next);
        }
        Vec c = coords_in(p.length(), t);
        for (std::size_t r = 0; r < c.size(); ++r) to_cot(offset[p.length()] + r, i) = c[r];
    }
    auto inv = inverse(to_cot);
    if (!inv) throw NotCosemisimple("path basis does not map onto the cotensor coalgebra");
    out.to_path = {out.coalgebra, pc.coalgebra, *inv};
    return out;
}

}  // namespace adjq
