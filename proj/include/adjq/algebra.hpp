#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adjq/subspace.hpp"

namespace adjq {

/// Finite-dimensional associative unital algebra by structure constants:
/// mult(j, k) holds the coordinates of b_j * b_k.
class FiniteAlgebra {
public:
    FiniteAlgebra() = default;
    FiniteAlgebra(Field f, std::vector<std::string> labels, std::vector<SparseVec> mult, Vec unit)
        : field_(f), labels_(std::move(labels)), mult_(std::move(mult)), unit_(std::move(unit)) {
        const std::size_t n = labels_.size();
        if (n == 0) throw ParseError("an algebra needs a nonzero basis");
        std::set<std::string> seen;
        for (const auto& l : labels_)
            if (!seen.insert(l).second) throw ParseError("duplicate basis label '" + l + "'");
        if (mult_.size() != n * n) throw ShapeError("structure constants must have n^2 entries");
        if (unit_.size() != n) throw ShapeError("unit vector has the wrong length");
        for (const auto& col : mult_)
            for (const auto& [i, v] : col) {
                if (i >= n) throw ShapeError("structure constant index out of range");
                if (v.field() != f) throw FieldMismatch("structure constant over another field");
            }
    }

    const Field& field() const { return field_; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const Vec& unit() const { return unit_; }
    const SparseVec& mult(std::size_t j, std::size_t k) const { return mult_[j * dim() + k]; }
    const std::vector<SparseVec>& structure() const { return mult_; }

    const std::optional<std::vector<std::size_t>>& grading() const { return grading_; }
    void set_grading(std::vector<std::size_t> g) {
        if (g.size() != dim()) throw ShapeError("grading has the wrong length");
        grading_ = std::move(g);
    }

    std::size_t index(const std::string& label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        throw ParseError("unknown basis label '" + label + "'");
    }

    SparseVec multiply(const SparseVec& x, const SparseVec& y) const {
        SparseVec out;
        for (const auto& [j, a] : x)
            for (const auto& [k, b] : y) axpy(out, a * b, mult(j, k));
        return out;
    }

    Vec multiply(const Vec& x, const Vec& y) const { return to_dense(field_, multiply(to_sparse(x), to_sparse(y)), dim()); }

    /// Matrix of z -> x z.
    Mat left_mult(const Vec& x) const {
        Mat m(field_, dim(), dim());
        auto sx = to_sparse(x);
        for (std::size_t k = 0; k < dim(); ++k) {
            SparseVec e{{k, Scalar::one(field_)}};
            for (const auto& [i, v] : multiply(sx, e)) m(i, k) = v;
        }
        return m;
    }

    Mat right_mult(const Vec& x) const {
        Mat m(field_, dim(), dim());
        auto sx = to_sparse(x);
        for (std::size_t k = 0; k < dim(); ++k) {
            SparseVec e{{k, Scalar::one(field_)}};
            for (const auto& [i, v] : multiply(e, sx)) m(i, k) = v;
        }
        return m;
    }

private:
    Field field_{};
    std::vector<std::string> labels_;
    std::vector<SparseVec> mult_;
    Vec unit_;
    std::optional<std::vector<std::size_t>> grading_;
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

inline Report verify_algebra(const FiniteAlgebra& a) {
    const std::size_t n = a.dim();
    const Field f = a.field();
    auto u = to_sparse(a.unit());
    for (std::size_t i = 0; i < n; ++i) {
        SparseVec e{{i, Scalar::one(f)}};
        if (a.multiply(u, e) != e) return Report::fail("left unit law", a.labels()[i]);
        if (a.multiply(e, u) != e) return Report::fail("right unit law", a.labels()[i]);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const SparseVec& ij = a.mult(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                SparseVec ek{{k, Scalar::one(f)}};
                SparseVec lhs = a.multiply(ij, ek);
                SparseVec rhs = a.multiply(SparseVec{{i, Scalar::one(f)}}, a.mult(j, k));
                if (lhs != rhs) return Report::fail("associativity", a.labels()[i] + "," + a.labels()[j] + "," + a.labels()[k]);
            }
        }
    return Report::pass();
}

struct AlgebraMap {
    AlgebraPtr source;
    AlgebraPtr target;
    Mat matrix;  // target.dim x source.dim
};

inline Report verify_algebra_map(const AlgebraMap& m) {
    const auto& a = *m.source;
    const auto& b = *m.target;
    if (m.matrix.rows() != b.dim() || m.matrix.cols() != a.dim()) return Report::fail("shape", m.matrix.shape());
    if (m.matrix.apply(a.unit()) != b.unit()) return Report::fail("unit preservation", "1");
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            Vec lhs = m.matrix.apply(to_dense(a.field(), a.mult(i, j), a.dim()));
            Vec rhs = b.multiply(m.matrix.col(i), m.matrix.col(j));
            if (lhs != rhs) return Report::fail("multiplicativity", a.labels()[i] + "*" + a.labels()[j]);
        }
    return Report::pass();
}

inline AlgebraMap compose(const AlgebraMap& f, const AlgebraMap& g) {
    if (g.target->dim() != f.source->dim()) throw ShapeError("compose: algebra maps do not chain");
    return {g.source, f.target, f.matrix * g.matrix};
}

struct TwoSidedIdeal {
    AlgebraPtr algebra;
    Subspace space;
    std::vector<Vec> generators;
};

/// Smallest subspace containing gens and closed under two-sided
/// multiplication by basis elements.
inline Subspace ideal_closure_space(const FiniteAlgebra& a, const std::vector<Vec>& gens) {
    const Field f = a.field();
    EchelonForm e(f, a.dim());
    std::deque<SparseVec> queue;
    for (const auto& g : gens)
        if (e.insert(g)) queue.push_back(to_sparse(g));
    while (!queue.empty()) {
        SparseVec v = std::move(queue.front());
        queue.pop_front();
        if (e.rank() == a.dim()) break;
        for (std::size_t i = 0; i < a.dim(); ++i) {
            SparseVec b{{i, Scalar::one(f)}};
            for (SparseVec w : {a.multiply(b, v), a.multiply(v, b)})
                if (!is_zero(w) && e.insert(w)) queue.push_back(std::move(w));
        }
    }
    return Subspace::from_echelon(e);
}

inline TwoSidedIdeal ideal_closure(const AlgebraPtr& a, const std::vector<Vec>& gens) {
    return {a, ideal_closure_space(*a, gens), gens};
}

/// span{x y | x in X, y in Y}.
inline Subspace product_space(const FiniteAlgebra& a, const Subspace& x, const Subspace& y) {
    EchelonForm e(a.field(), a.dim());
    std::vector<SparseVec> ys;
    for (std::size_t j = 0; j < y.dim(); ++j) ys.push_back(to_sparse(y.basis_vector(j)));
    for (std::size_t i = 0; i < x.dim(); ++i) {
        auto xv = to_sparse(x.basis_vector(i));
        for (const auto& yv : ys) {
            if (e.rank() == a.dim()) break;
            auto p = a.multiply(xv, yv);
            if (!is_zero(p)) e.insert(p);
        }
    }
    return Subspace::from_echelon(e);
}

inline bool is_nilpotent(const FiniteAlgebra& a, const Subspace& s) {
    Subspace power = s;
    for (std::size_t k = 0; k <= a.dim() + 1; ++k) {
        if (power.dim() == 0) return true;
        Subspace next = product_space(a, power, s);
        if (next == power) return false;
        power = std::move(next);
    }
    return power.dim() == 0;
}

namespace detail {

inline Subspace radical_rational(const FiniteAlgebra& a) {
    const std::size_t n = a.dim();
    const Field f = a.field();
    // t_i = Tr(L_{b_i}); form(j, k) = Tr(L_{b_j b_k})
    Vec t = zero_vec(f, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            auto it = a.mult(i, k).find(k);
            if (it != a.mult(i, k).end()) t[i] += it->second;
        }
    Mat form(f, n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            for (const auto& [i, c] : a.mult(j, k)) form(j, k) += c * t[i];
    return kernel(form.transpose());
}

inline SparseVec power(const FiniteAlgebra& a, SparseVec x, std::uint64_t e, const Subspace& modulo) {
    auto red = [&](const SparseVec& v) { return to_sparse(modulo.reduce(to_dense(a.field(), v, a.dim()))); };
    SparseVec r = red(to_sparse(a.unit()));
    x = red(x);
    while (e) {
        if (e & 1) r = red(a.multiply(r, x));
        e >>= 1;
        if (e) x = red(a.multiply(x, x));
    }
    return r;
}

/// Commutator ideal K, then the nilradical of the commutative quotient
/// A/K as the kernel of a power of Frobenius. The candidate always
/// contains J(A); it equals J(A) exactly when it is nilpotent.
inline std::optional<Subspace> radical_frobenius(const FiniteAlgebra& a) {
    const std::size_t n = a.dim();
    const Field f = a.field();
    std::vector<Vec> comm;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            SparseVec c = a.mult(j, k);
            axpy(c, Scalar(f, -1L), a.mult(k, j));
            if (!is_zero(c)) comm.push_back(to_dense(f, c, n));
        }
    Subspace k = ideal_closure_space(a, comm);
    auto free = k.free_columns();
    const std::size_t q = free.size();
    Mat frob(f, q, q);
    for (std::size_t c = 0; c < q; ++c) {
        SparseVec img = power(a, SparseVec{{free[c], Scalar::one(f)}}, f.p, k);
        for (std::size_t r = 0; r < q; ++r) {
            auto it = img.find(free[r]);
            if (it != img.end()) frob(r, c) = it->second;
        }
    }
    Mat fm = Mat::identity(f, q);
    for (std::uint64_t reach = 1; reach < q; reach *= f.p) fm = fm * frob;
    if (q > 0) fm = fm * frob;
    Subspace nil = kernel(fm);
    std::vector<Vec> gens = k.basis_vectors();
    for (const auto& v : nil.basis_vectors()) {
        Vec lifted = zero_vec(f, n);
        for (std::size_t r = 0; r < q; ++r) lifted[free[r]] = v[r];
        gens.push_back(lifted);
    }
    Subspace cand = Subspace::span(f, n, gens);
    if (!is_nilpotent(a, cand)) return std::nullopt;
    return cand;
}

/// Exhaustive: J(A) is the set of x whose two-sided ideal is nilpotent.
inline Subspace radical_bruteforce(const FiniteAlgebra& a) {
    const std::size_t n = a.dim();
    const Field f = a.field();
    EchelonForm e(f, n);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= f.p;
    for (std::uint64_t code = 1; code < total; ++code) {
        Vec x = zero_vec(f, n);
        std::uint64_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = Scalar(f, static_cast<long>(c % f.p));
            c /= f.p;
        }
        if (e.contains(x)) continue;
        if (is_nilpotent(a, ideal_closure_space(a, {x}))) e.insert(x);
    }
    return Subspace::from_echelon(e);
}

}  // namespace detail

/// Jacobson radical. Over Q: kernel of the trace form. Over F_p: the
/// commutator/Frobenius candidate certified nilpotent, else exhaustive
/// search on tiny algebras, else RadicalUndecided.
inline Subspace radical_space(const FiniteAlgebra& a) {
    if (a.field().is_rational()) return detail::radical_rational(a);
    if (auto r = detail::radical_frobenius(a)) return *r;
    double size = 1;
    for (std::size_t i = 0; i < a.dim(); ++i) size *= static_cast<double>(a.field().p);
    if (size <= 4096) return detail::radical_bruteforce(a);
    throw RadicalUndecided("radical over " + a.field().to_string() + " not decided for this " + std::to_string(a.dim()) +
                           "-dimensional algebra (semisimple quotient is not commutative)");
}

inline Subspace radical_power_space(const FiniteAlgebra& a, std::size_t n) {
    if (n == 0) return Subspace::full(a.field(), a.dim());
    Subspace j = radical_space(a);
    Subspace out = j;
    for (std::size_t k = 1; k < n && out.dim() > 0; ++k) out = product_space(a, out, j);
    return out;
}

inline TwoSidedIdeal radical(const AlgebraPtr& a) {
    auto s = radical_space(*a);
    return {a, s, s.basis_vectors()};
}

inline TwoSidedIdeal radical_power(const AlgebraPtr& a, std::size_t n) {
    auto s = radical_power_space(*a, n);
    return {a, s, s.basis_vectors()};
}

}  // namespace adjq
