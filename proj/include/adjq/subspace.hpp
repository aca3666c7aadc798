#pragma once

#include <cstddef>
#include <vector>

#include "adjq/matrix.hpp"

namespace adjq {

/// A linear subspace of k^n held as its canonical RREF basis, so two
/// subspaces are equal exactly when their basis matrices are equal.
class Subspace {
public:
    Subspace() = default;
    Subspace(Field f, std::size_t ambient) : field_(f), ambient_(ambient), basis_(f, 0, ambient) {}

    static Subspace zero(Field f, std::size_t n) { return Subspace(f, n); }

    static Subspace full(Field f, std::size_t n) {
        Subspace s(f, n);
        s.basis_ = Mat::identity(f, n);
        s.pivots_.resize(n);
        for (std::size_t i = 0; i < n; ++i) s.pivots_[i] = i;
        return s;
    }

    static Subspace from_echelon(const EchelonForm& e) {
        Subspace s(e.field(), e.ambient());
        s.basis_ = e.to_mat();
        s.pivots_ = e.sorted_pivots();
        return s;
    }

    static Subspace span(Field f, std::size_t n, const std::vector<Vec>& vectors) {
        EchelonForm e(f, n);
        for (const auto& v : vectors) e.insert(v);
        return from_echelon(e);
    }

    /// Row space of m.
    static Subspace row_space(const Mat& m) {
        EchelonForm e(m.field(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i) e.insert(m.row(i));
        return from_echelon(e);
    }

    /// Column space of m.
    static Subspace column_space(const Mat& m) { return row_space(m.transpose()); }

    const Field& field() const { return field_; }
    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Mat& basis() const { return basis_; }
    Vec basis_vector(std::size_t i) const { return basis_.row(i); }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    std::vector<Vec> basis_vectors() const {
        std::vector<Vec> out;
        for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
        return out;
    }

    /// Remainder of v modulo the subspace; zero at every pivot column.
    Vec reduce(Vec v) const {
        if (v.size() != ambient_) throw ShapeError("vector of length " + std::to_string(v.size()) + " in ambient " + std::to_string(ambient_));
        for (std::size_t r = 0; r < pivots_.size(); ++r) {
            const Scalar c = v[pivots_[r]];
            if (!c.is_zero()) axpy(v, -c, basis_.row(r));
        }
        return v;
    }

    bool contains(const Vec& v) const { return is_zero(reduce(v)); }

    bool contains(const Subspace& other) const {
        same_ambient(other);
        for (std::size_t i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_.row(i))) return false;
        return true;
    }

    /// Coefficients of v in the RREF basis (read off at pivot columns).
    Vec coordinates(const Vec& v) const {
        if (!contains(v)) throw NotContained("vector is not in the subspace");
        Vec c;
        c.reserve(dim());
        for (auto p : pivots_) c.push_back(v[p]);
        return c;
    }

    Vec combine(const Vec& coords) const {
        if (coords.size() != dim()) throw ShapeError("combine: coordinate length mismatch");
        Vec v = zero_vec(field_, ambient_);
        for (std::size_t r = 0; r < coords.size(); ++r) axpy(v, coords[r], basis_.row(r));
        return v;
    }

    /// Non-pivot columns; they index a basis of the quotient k^n / S.
    std::vector<std::size_t> free_columns() const {
        std::vector<std::size_t> out;
        std::size_t k = 0;
        for (std::size_t c = 0; c < ambient_; ++c) {
            if (k < pivots_.size() && pivots_[k] == c) {
                ++k;
            } else {
                out.push_back(c);
            }
        }
        return out;
    }

    /// Matrix of the projection k^n -> k^n / S in the free-column coordinates.
    Mat quotient_map() const {
        auto free = free_columns();
        std::vector<long> slot(ambient_, -1);
        for (std::size_t i = 0; i < free.size(); ++i) slot[free[i]] = static_cast<long>(i);
        Mat q(field_, free.size(), ambient_);
        for (std::size_t i = 0; i < free.size(); ++i) q(i, free[i]) = Scalar::one(field_);
        for (std::size_t r = 0; r < pivots_.size(); ++r) {
            for (std::size_t c = 0; c < ambient_; ++c) {
                if (slot[c] >= 0 && !basis_(r, c).is_zero()) q(static_cast<std::size_t>(slot[c]), pivots_[r]) = -basis_(r, c);
            }
        }
        return q;
    }

    /// Sparse image of basis vector e_j under the quotient projection.
    std::vector<SparseVec> quotient_columns() const {
        Mat q = quotient_map();
        std::vector<SparseVec> out(ambient_);
        for (std::size_t j = 0; j < ambient_; ++j)
            for (std::size_t i = 0; i < q.rows(); ++i)
                if (!q(i, j).is_zero()) out[j].emplace(i, q(i, j));
        return out;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.field_ == b.field_ && a.basis_ == b.basis_;
    }

    void same_ambient(const Subspace& other) const {
        if (ambient_ != other.ambient_) throw ShapeError("subspaces of k^" + std::to_string(ambient_) + " and k^" + std::to_string(other.ambient_));
        if (field_ != other.field_) throw FieldMismatch("subspaces over different fields");
    }

private:
    Field field_{};
    std::size_t ambient_ = 0;
    Mat basis_;
    std::vector<std::size_t> pivots_;
};

/// Null space of m, built from its nonzero rows only.
inline Subspace kernel(const Mat& m) {
    EchelonForm e(m.field(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) e.insert(m.row(i));
    Mat r = e.to_mat();
    auto piv = e.sorted_pivots();
    Subspace rowsp = Subspace::from_echelon(e);
    std::vector<Vec> null;
    for (auto f : rowsp.free_columns()) {
        Vec x = unit_vec(m.field(), m.cols(), f);
        for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = -r(k, f);
        null.push_back(std::move(x));
    }
    return Subspace::span(m.field(), m.cols(), null);
}

inline Subspace kernel(const SparseMat& m) {
    EchelonForm e(m.field(), m.cols());
    for (const auto& [i, row] : m.rows_by_index()) {
        if (e.rank() == m.cols()) break;
        e.insert(row);
    }
    Mat r = e.to_mat();
    auto piv = e.sorted_pivots();
    Subspace rowsp = Subspace::from_echelon(e);
    std::vector<Vec> null;
    for (auto f : rowsp.free_columns()) {
        Vec x = unit_vec(m.field(), m.cols(), f);
        for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = -r(k, f);
        null.push_back(std::move(x));
    }
    return Subspace::span(m.field(), m.cols(), null);
}

inline Subspace image(const Mat& m, const Subspace& s) {
    if (s.ambient() != m.cols()) throw ShapeError("image: subspace not in the domain");
    EchelonForm e(m.field(), m.rows());
    for (std::size_t i = 0; i < s.dim(); ++i) e.insert(m.apply(s.basis_vector(i)));
    return Subspace::from_echelon(e);
}

inline Subspace image(const Mat& m) { return Subspace::column_space(m); }

/// {x | m x in s}, computed as the kernel of (k^n -> k^n/s) composed with m.
inline Subspace preimage(const Mat& m, const Subspace& s) {
    if (s.ambient() != m.rows()) {
        throw ShapeError("preimage: subspace of k^" + std::to_string(s.ambient()) + " but map lands in k^" + std::to_string(m.rows()));
    }
    if (s.field() != m.field()) throw FieldMismatch("preimage over different fields");
    return kernel(s.quotient_map() * m);
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
    a.same_ambient(b);
    EchelonForm e(a.field(), a.ambient());
    for (std::size_t i = 0; i < a.dim(); ++i) e.insert(a.basis_vector(i));
    for (std::size_t i = 0; i < b.dim(); ++i) e.insert(b.basis_vector(i));
    return Subspace::from_echelon(e);
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
    a.same_ambient(b);
    // combinations c of a's basis with c^T A in b
    Mat coeffs = kernel(b.quotient_map() * a.basis().transpose()).basis();
    return Subspace::row_space(coeffs * a.basis());
}

inline bool contains(const Subspace& big, const Subspace& small) { return big.contains(small); }

/// Canonical complement of a inside b: b's basis reduced modulo a, so the
/// result is supported on the non-pivot coordinates of a.
inline Subspace complement_in(const Subspace& a, const Subspace& b) {
    a.same_ambient(b);
    if (!b.contains(a)) throw NotContained("complement_in: first subspace is not inside the second");
    EchelonForm e(a.field(), a.ambient());
    for (std::size_t i = 0; i < b.dim(); ++i) e.insert(a.reduce(b.basis_vector(i)));
    return Subspace::from_echelon(e);
}

}  // namespace adjq
