#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "adjq/algebra.hpp"

namespace adjq {

struct GabrielQuiver;

/// Finite-dimensional coalgebra by structure constants. delta(i) holds
/// Delta(b_i) over the tensor basis b_j (x) b_k at index j*n + k.
class Coalgebra {
public:
    struct Cache {
        std::once_flag filtration_once;
        std::vector<Subspace> filtration;
        std::once_flag grouplikes_once;
        std::vector<Vec> grouplikes;
        std::once_flag gabriel_once;
        std::shared_ptr<const GabrielQuiver> gabriel;
    };

    Coalgebra() = default;
    Coalgebra(Field f, std::vector<std::string> labels, std::vector<SparseVec> delta, Vec counit)
        : field_(f), labels_(std::move(labels)), delta_(std::move(delta)), counit_(std::move(counit)) {
        const std::size_t n = labels_.size();
        if (n == 0) throw ParseError("a counital coalgebra is nonzero");
        std::set<std::string> seen;
        for (const auto& l : labels_)
            if (!seen.insert(l).second) throw ParseError("duplicate basis label '" + l + "'");
        if (delta_.size() != n) throw ShapeError("comultiplication needs one column per basis element");
        if (counit_.size() != n) throw ShapeError("counit has the wrong length");
        for (const auto& col : delta_)
            for (const auto& [i, v] : col) {
                if (i >= n * n) throw ShapeError("tensor index out of range");
                if (v.field() != f) throw FieldMismatch("structure constant over another field");
            }
        for (const auto& v : counit_)
            if (v.field() != f) throw FieldMismatch("counit entry over another field");
    }

    const Field& field() const { return field_; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const SparseVec& delta(std::size_t i) const { return delta_.at(i); }
    const Vec& counit() const { return counit_; }

    std::size_t index(const std::string& label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        throw ParseError("unknown basis label '" + label + "'");
    }

    SparseVec comultiply(const SparseVec& x) const {
        SparseVec out;
        for (const auto& [i, c] : x) axpy(out, c, delta_[i]);
        return out;
    }

    SparseVec comultiply(const Vec& x) const { return comultiply(to_sparse(x)); }

    Scalar counit_of(const Vec& x) const {
        Scalar s = Scalar::zero(field_);
        for (std::size_t i = 0; i < x.size(); ++i) s += counit_[i] * x[i];
        return s;
    }

    Cache& cache() const { return *cache_; }

private:
    Field field_{};
    std::vector<std::string> labels_;
    std::vector<SparseVec> delta_;
    Vec counit_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

using CoalgebraPtr = std::shared_ptr<const Coalgebra>;

inline Report verify_coalgebra(const Coalgebra& c) {
    const std::size_t n = c.dim();
    const Field f = c.field();
    for (std::size_t b = 0; b < n; ++b) {
        SparseVec lhs, rhs, left_counit, right_counit;
        for (const auto& [t, coef] : c.delta(b)) {
            const std::size_t x = t / n, y = t % n;
            for (const auto& [u, c2] : c.delta(x)) add_entry(lhs, u * n + y, coef * c2);
            for (const auto& [u, c2] : c.delta(y)) add_entry(rhs, x * n * n + u, coef * c2);
            add_entry(left_counit, y, coef * c.counit()[x]);
            add_entry(right_counit, x, coef * c.counit()[y]);
        }
        if (lhs != rhs) return Report::fail("coassociativity (Delta(x)id)Delta = (id(x)Delta)Delta", c.labels()[b]);
        SparseVec e{{b, Scalar::one(f)}};
        if (left_counit != e) return Report::fail("counit (eps(x)id)Delta = id", c.labels()[b]);
        if (right_counit != e) return Report::fail("counit (id(x)eps)Delta = id", c.labels()[b]);
    }
    return Report::pass();
}

struct CoalgebraMap {
    CoalgebraPtr source;
    CoalgebraPtr target;
    Mat matrix;  // target.dim x source.dim
};

inline CoalgebraMap identity_map(const CoalgebraPtr& c) { return {c, c, Mat::identity(c->field(), c->dim())}; }

inline CoalgebraMap compose(const CoalgebraMap& f, const CoalgebraMap& g) {
    if (g.target->dim() != f.source->dim()) throw ShapeError("compose: coalgebra maps do not chain");
    return {g.source, f.target, f.matrix * g.matrix};
}

/// (rho (x) rho) applied to a sparse tensor over the source.
inline SparseVec tensor_apply(const Mat& rho, const SparseVec& t, std::size_t n_src) {
    const std::size_t m = rho.rows();
    std::vector<SparseVec> cols(n_src);
    for (std::size_t j = 0; j < n_src; ++j)
        for (std::size_t i = 0; i < m; ++i)
            if (!rho(i, j).is_zero()) cols[j].emplace(i, rho(i, j));
    SparseVec out;
    for (const auto& [idx, c] : t) {
        const std::size_t x = idx / n_src, y = idx % n_src;
        for (const auto& [u, a] : cols[x])
            for (const auto& [v, b] : cols[y]) add_entry(out, u * m + v, c * a * b);
    }
    return out;
}

inline Report verify_coalgebra_map(const CoalgebraMap& m) {
    const auto& c = *m.source;
    const auto& d = *m.target;
    if (m.matrix.rows() != d.dim() || m.matrix.cols() != c.dim()) return Report::fail("shape", m.matrix.shape());
    if (m.matrix.field() != c.field() || c.field() != d.field()) return Report::fail("field", "maps between different fields");
    for (std::size_t i = 0; i < c.dim(); ++i) {
        Vec img = m.matrix.col(i);
        if (d.comultiply(img) != tensor_apply(m.matrix, c.delta(i), c.dim()))
            return Report::fail("Delta_D rho = (rho(x)rho) Delta_C", c.labels()[i]);
        if (!(d.counit_of(img) == c.counit()[i])) return Report::fail("eps_D rho = eps_C", c.labels()[i]);
    }
    return Report::pass();
}

// ---- comodules ----------------------------------------------------------

/// Right C-comodule: nu(w) over W (x) C at index w*dimC + c.
struct RightComodule {
    CoalgebraPtr base;
    std::size_t dim = 0;
    SparseMat nu;
};

/// Left C-comodule: mu(m) over C (x) M at index c*dimM + m.
struct LeftComodule {
    CoalgebraPtr base;
    std::size_t dim = 0;
    SparseMat mu;
};

/// C-D-bicomodule with mu: M -> C (x) M and nu: M -> M (x) D.
struct Bicomodule {
    CoalgebraPtr left;
    CoalgebraPtr right;
    std::vector<std::string> labels;
    SparseMat mu;
    SparseMat nu;

    std::size_t dim() const { return labels.size(); }
    LeftComodule as_left() const { return {left, dim(), mu}; }
    RightComodule as_right() const { return {right, dim(), nu}; }
};

inline Report verify_bicomodule(const Bicomodule& b) {
    const std::size_t m = b.dim();
    const auto& c = *b.left;
    const auto& d = *b.right;
    const std::size_t nc = c.dim(), nd = d.dim();
    const Field f = c.field();
    if (b.mu.rows() != nc * m || b.mu.cols() != m) return Report::fail("shape of left coaction", b.mu.to_dense().shape());
    if (b.nu.rows() != m * nd || b.nu.cols() != m) return Report::fail("shape of right coaction", b.nu.to_dense().shape());
    for (std::size_t i = 0; i < m; ++i) {
        const std::string& w = b.labels[i];
        SparseVec e{{i, Scalar::one(f)}};
        // left: (Delta(x)id)mu = (id(x)mu)mu in C(x)C(x)M
        SparseVec l1, l2, lc;
        for (const auto& [t, coef] : b.mu.column(i)) {
            const std::size_t x = t / m, y = t % m;
            for (const auto& [u, c2] : c.delta(x)) add_entry(l1, u * m + y, coef * c2);
            for (const auto& [u, c2] : b.mu.column(y)) add_entry(l2, x * nc * m + u, coef * c2);
            add_entry(lc, y, coef * c.counit()[x]);
        }
        if (l1 != l2) return Report::fail("left coaction coassociativity", w);
        if (lc != e) return Report::fail("left coaction counit", w);
        // right: (id(x)Delta)nu = (nu(x)id)nu in M(x)D(x)D
        SparseVec r1, r2, rc;
        for (const auto& [t, coef] : b.nu.column(i)) {
            const std::size_t x = t / nd, y = t % nd;
            for (const auto& [u, c2] : d.delta(y)) add_entry(r1, x * nd * nd + u, coef * c2);
            for (const auto& [u, c2] : b.nu.column(x)) add_entry(r2, u * nd + y, coef * c2);
            add_entry(rc, x, coef * d.counit()[y]);
        }
        if (r1 != r2) return Report::fail("right coaction coassociativity", w);
        if (rc != e) return Report::fail("right coaction counit", w);
        // (mu(x)id)nu = (id(x)nu)mu in C(x)M(x)D
        SparseVec s1, s2;
        for (const auto& [t, coef] : b.nu.column(i)) {
            const std::size_t x = t / nd, y = t % nd;
            for (const auto& [u, c2] : b.mu.column(x)) add_entry(s1, u * nd + y, coef * c2);
        }
        for (const auto& [t, coef] : b.mu.column(i)) {
            const std::size_t x = t / m, y = t % m;
            for (const auto& [u, c2] : b.nu.column(y)) add_entry(s2, x * m * nd + u, coef * c2);
        }
        if (s1 != s2) return Report::fail("left and right coactions commute", w);
    }
    return Report::pass();
}

struct Cotensor {
    Subspace space;  // inside W (x) M, index w*dimM + m
    Mat inclusion;   // (dimW*dimM) x dim, columns are the basis
};

/// W box_C M = ker(nu_W (x) id - id (x) mu_M).
inline Cotensor cotensor(const RightComodule& w, const LeftComodule& m) {
    if (w.base != m.base && !(w.base->labels() == m.base->labels() && w.base->field() == m.base->field()))
        throw BaseMismatch("cotensor over different base coalgebras");
    const Field f = w.base->field();
    const std::size_t nc = w.base->dim(), dw = w.dim, dm = m.dim;
    SparseMat rel(f, dw * nc * dm, dw * dm);
    for (std::size_t a = 0; a < dw; ++a)
        for (std::size_t b = 0; b < dm; ++b) {
            const std::size_t col = a * dm + b;
            for (const auto& [t, coef] : w.nu.column(a)) rel.add(t * dm + b, col, coef);
            for (const auto& [t, coef] : m.mu.column(b)) rel.add((a * nc + t / dm) * dm + t % dm, col, -coef);
        }
    Subspace s = kernel(rel);
    return {s, s.basis().transpose()};
}

// ---- duality ------------------------------------------------------------

/// C*: product is the transpose of Delta in the dual basis, unit is eps.
inline FiniteAlgebra dual_algebra(const Coalgebra& c) {
    const std::size_t n = c.dim();
    std::vector<SparseVec> mult(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [t, coef] : c.delta(i)) add_entry(mult[t], i, coef);
    return FiniteAlgebra(c.field(), c.labels(), std::move(mult), c.counit());
}

/// A* for a finite algebra: Delta is the transpose of the product.
inline Coalgebra dual_coalgebra(const FiniteAlgebra& a) {
    const std::size_t n = a.dim();
    std::vector<SparseVec> delta(n);
    for (std::size_t t = 0; t < n * n; ++t)
        for (const auto& [i, coef] : a.structure()[t]) add_entry(delta[i], t, coef);
    return Coalgebra(a.field(), a.labels(), std::move(delta), a.unit());
}

}  // namespace adjq
