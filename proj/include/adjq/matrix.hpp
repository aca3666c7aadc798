#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adjq/scalar.hpp"

namespace adjq {

using Vec = std::vector<Scalar>;
using SparseVec = std::map<std::size_t, Scalar>;

inline Vec zero_vec(Field f, std::size_t n) { return Vec(n, Scalar::zero(f)); }

inline Vec unit_vec(Field f, std::size_t n, std::size_t i) {
    Vec v = zero_vec(f, n);
    v.at(i) = Scalar::one(f);
    return v;
}

inline bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

inline bool is_zero(const SparseVec& v) {
    return std::all_of(v.begin(), v.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

inline void axpy(Vec& y, const Scalar& a, const Vec& x) {
    if (y.size() != x.size()) throw ShapeError("axpy: length mismatch");
    if (a.is_zero()) return;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x[i].is_zero()) y[i] += a * x[i];
    }
}

/// y += a*x, dropping entries that cancel.
inline void axpy(SparseVec& y, const Scalar& a, const SparseVec& x) {
    if (a.is_zero()) return;
    for (const auto& [i, v] : x) {
        auto [it, inserted] = y.try_emplace(i, a * v);
        if (!inserted) {
            it->second += a * v;
            if (it->second.is_zero()) y.erase(it);
        } else if (it->second.is_zero()) {
            y.erase(it);
        }
    }
}

inline void add_entry(SparseVec& y, std::size_t i, const Scalar& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = y.try_emplace(i, v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) y.erase(it);
    }
}

inline Vec operator+(Vec a, const Vec& b) {
    axpy(a, Scalar::one(b.empty() ? Field{} : b.front().field()), b);
    return a;
}

inline Vec operator-(Vec a, const Vec& b) {
    if (!b.empty()) axpy(a, -Scalar::one(b.front().field()), b);
    return a;
}

inline Vec scaled(const Scalar& a, Vec v) {
    for (auto& x : v) x *= a;
    return v;
}

inline SparseVec to_sparse(const Vec& v) {
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_zero()) s.emplace(i, v[i]);
    }
    return s;
}

inline Vec to_dense(Field f, const SparseVec& s, std::size_t n) {
    Vec v = zero_vec(f, n);
    for (const auto& [i, x] : s) {
        if (i >= n) throw ShapeError("sparse index out of range");
        v[i] = x;
    }
    return v;
}

/// Dense row-major matrix over a single field. Column j is the image of
/// the j-th source basis vector when the matrix represents a linear map.
class Mat {
public:
    Mat() = default;
    Mat(Field f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

    static Mat identity(Field f, std::size_t n) {
        Mat m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
        return m;
    }

    static Mat from_rows(Field f, const std::vector<Vec>& rows, std::size_t cols) {
        Mat m(f, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
        return m;
    }

    static Mat from_cols(Field f, const std::vector<Vec>& cols, std::size_t rows) {
        Mat m(f, rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
        return m;
    }

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec row(std::size_t i) const {
        if (i >= rows_) throw ShapeError("row index out of range");
        return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    Vec col(std::size_t j) const {
        if (j >= cols_) throw ShapeError("column index out of range");
        Vec v;
        v.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
        return v;
    }

    void set_row(std::size_t i, const Vec& v) {
        if (v.size() != cols_ || i >= rows_) throw ShapeError("set_row: shape mismatch");
        for (std::size_t j = 0; j < cols_; ++j) {
            check_field(v[j]);
            (*this)(i, j) = v[j];
        }
    }

    void set_col(std::size_t j, const Vec& v) {
        if (v.size() != rows_ || j >= cols_) throw ShapeError("set_col: shape mismatch");
        for (std::size_t i = 0; i < rows_; ++i) {
            check_field(v[i]);
            (*this)(i, j) = v[i];
        }
    }

    Mat transpose() const {
        Mat t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Vec apply(const Vec& x) const {
        if (x.size() != cols_) throw ShapeError("apply: expected length " + std::to_string(cols_));
        Vec y = zero_vec(field_, rows_);
        for (std::size_t j = 0; j < cols_; ++j) {
            if (x[j].is_zero()) continue;
            for (std::size_t i = 0; i < rows_; ++i) {
                const Scalar& a = (*this)(i, j);
                if (!a.is_zero()) y[i] += a * x[j];
            }
        }
        return y;
    }

    SparseVec apply(const SparseVec& x) const {
        SparseVec y;
        for (const auto& [j, v] : x) {
            if (j >= cols_) throw ShapeError("apply: sparse index out of range");
            for (std::size_t i = 0; i < rows_; ++i) {
                const Scalar& a = (*this)(i, j);
                if (!a.is_zero()) add_entry(y, i, a * v);
            }
        }
        return y;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) {
            throw ShapeError("product of " + a.shape() + " and " + b.shape());
        }
        if (a.field_ != b.field_) throw FieldMismatch("matrix product over different fields");
        Mat c(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Scalar& y = b(k, j);
                    if (!y.is_zero()) c(i, j) += x * y;
                }
            }
        }
        return c;
    }

    friend Mat operator+(Mat a, const Mat& b) {
        a.same_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend Mat operator-(Mat a, const Mat& b) {
        a.same_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    void check_field(const Scalar& s) const {
        if (s.field() != field_) throw FieldMismatch("entry over " + s.field().to_string() + " in matrix over " + field_.to_string());
    }
    void same_shape(const Mat& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw ShapeError("shape " + shape() + " vs " + b.shape());
        if (field_ != b.field_) throw FieldMismatch("matrices over different fields");
    }

    Field field_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

inline Mat scaled_mat(const Scalar& a, Mat m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= a;
    return m;
}

/// Column-sparse matrix: columns[j] holds the image of source basis vector j.
/// Used for comultiplications and coactions, whose dense forms are n x n^2.
class SparseMat {
public:
    SparseMat() = default;
    SparseMat(Field f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), columns_(cols) {}

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }

    const SparseVec& column(std::size_t j) const { return columns_.at(j); }
    SparseVec& column(std::size_t j) { return columns_.at(j); }

    void add(std::size_t i, std::size_t j, const Scalar& v) {
        if (i >= rows_ || j >= columns_.size()) throw ShapeError("sparse entry out of range");
        if (v.field() != field_) throw FieldMismatch("sparse entry over a different field");
        add_entry(columns_[j], i, v);
    }

    SparseVec apply(const SparseVec& x) const {
        SparseVec y;
        for (const auto& [j, v] : x) {
            if (j >= columns_.size()) throw ShapeError("sparse apply: index out of range");
            axpy(y, v, columns_[j]);
        }
        return y;
    }

    SparseVec apply(const Vec& x) const {
        if (x.size() != columns_.size()) throw ShapeError("sparse apply: length mismatch");
        SparseVec y;
        for (std::size_t j = 0; j < x.size(); ++j) axpy(y, x[j], columns_[j]);
        return y;
    }

    Mat to_dense() const {
        Mat m(field_, rows_, columns_.size());
        for (std::size_t j = 0; j < columns_.size(); ++j)
            for (const auto& [i, v] : columns_[j]) m(i, j) = v;
        return m;
    }

    /// Nonzero rows, keyed by row index, as sparse vectors over the columns.
    std::map<std::size_t, SparseVec> rows_by_index() const {
        std::map<std::size_t, SparseVec> out;
        for (std::size_t j = 0; j < columns_.size(); ++j)
            for (const auto& [i, v] : columns_[j]) out[i].emplace(j, v);
        return out;
    }

private:
    Field field_{};
    std::size_t rows_ = 0;
    std::vector<SparseVec> columns_;
};

/// Incrementally maintained reduced row-echelon basis of a row space.
/// Rows are kept fully reduced, so reduction of a vector is a single pass.
class EchelonForm {
public:
    EchelonForm(Field f, std::size_t n) : field_(f), n_(n) {}

    std::size_t ambient() const { return n_; }
    std::size_t rank() const { return rows_.size(); }
    const Field& field() const { return field_; }

    Vec reduce(Vec v) const {
        if (v.size() != n_) throw ShapeError("reduce: expected length " + std::to_string(n_));
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Scalar c = v[pivots_[r]];
            if (!c.is_zero()) axpy(v, -c, rows_[r]);
        }
        return v;
    }

    bool contains(const Vec& v) const { return is_zero(reduce(v)); }

    /// Returns true when v was independent of the current rows.
    bool insert(const Vec& v) {
        for (const auto& x : v) {
            if (x.field() != field_) throw FieldMismatch("vector over " + x.field().to_string());
        }
        Vec w = reduce(v);
        std::size_t c = 0;
        while (c < n_ && w[c].is_zero()) ++c;
        if (c == n_) return false;
        const Scalar inv = w[c].inverse();
        for (auto& x : w) x *= inv;
        for (auto& row : rows_) {
            const Scalar a = row[c];
            if (!a.is_zero()) axpy(row, -a, w);
        }
        rows_.push_back(std::move(w));
        pivots_.push_back(c);
        return true;
    }

    bool insert(const SparseVec& v) { return insert(to_dense(field_, v, n_)); }

    /// Rows sorted by pivot column: the canonical RREF.
    Mat to_mat() const {
        std::vector<std::size_t> order(rows_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
        Mat m(field_, rows_.size(), n_);
        for (std::size_t i = 0; i < order.size(); ++i) m.set_row(i, rows_[order[i]]);
        return m;
    }

    std::vector<std::size_t> sorted_pivots() const {
        auto p = pivots_;
        std::sort(p.begin(), p.end());
        return p;
    }

private:
    Field field_;
    std::size_t n_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

/// Reduced row-echelon form with zero rows dropped.
inline Mat rref(const Mat& m) {
    EchelonForm e(m.field(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) e.insert(m.row(i));
    return e.to_mat();
}

inline std::size_t rank(const Mat& m) {
    EchelonForm e(m.field(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) e.insert(m.row(i));
    return e.rank();
}

/// Kronecker product on the lex tensor basis, left factor major.
inline Mat tensor_map(const Mat& f, const Mat& g) {
    if (f.field() != g.field()) throw FieldMismatch("tensor_map over different fields");
    Mat out(f.field(), f.rows() * g.rows(), f.cols() * g.cols());
    for (std::size_t i1 = 0; i1 < f.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < f.cols(); ++j1) {
            const Scalar& a = f(i1, j1);
            if (a.is_zero()) continue;
            for (std::size_t i2 = 0; i2 < g.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < g.cols(); ++j2) {
                    const Scalar& b = g(i2, j2);
                    if (!b.is_zero()) out(i1 * g.rows() + i2, j1 * g.cols() + j2) = a * b;
                }
        }
    return out;
}

/// Solves a*x = b. Among all solutions returns the one whose free
/// coordinates are zero; nullopt when inconsistent.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
    if (b.size() != a.rows()) throw ShapeError("solve: right-hand side length mismatch");
    const std::size_t n = a.cols();
    EchelonForm e(a.field(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Vec r = a.row(i);
        r.push_back(b[i]);
        e.insert(r);
    }
    Mat r = e.to_mat();
    auto piv = e.sorted_pivots();
    Vec x = zero_vec(a.field(), n);
    for (std::size_t k = 0; k < piv.size(); ++k) {
        if (piv[k] == n) return std::nullopt;
        x[piv[k]] = r(k, n);
    }
    return x;
}

/// Sparse linear system assembled one equation at a time; same solution
/// convention as solve().
class LinearSystem {
public:
    LinearSystem(Field f, std::size_t unknowns) : field_(f), n_(unknowns), echelon_(f, unknowns + 1) {}

    std::size_t unknowns() const { return n_; }

    void add(const SparseVec& lhs, const Scalar& rhs) {
        if (is_zero(lhs) && rhs.is_zero()) return;
        Vec r = to_dense(field_, lhs, n_ + 1);
        r[n_] = rhs;
        echelon_.insert(r);
    }

    std::optional<Vec> solve() const {
        Mat r = echelon_.to_mat();
        auto piv = echelon_.sorted_pivots();
        Vec x = zero_vec(field_, n_);
        for (std::size_t k = 0; k < piv.size(); ++k) {
            if (piv[k] == n_) return std::nullopt;
            x[piv[k]] = r(k, n_);
        }
        return x;
    }

private:
    Field field_;
    std::size_t n_;
    EchelonForm echelon_;
};

inline std::optional<Mat> inverse(const Mat& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    EchelonForm e(m.field(), 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec r = m.row(i);
        for (std::size_t j = 0; j < n; ++j) r.push_back(i == j ? Scalar::one(m.field()) : Scalar::zero(m.field()));
        e.insert(r);
    }
    auto piv = e.sorted_pivots();
    if (piv.size() != n || (n > 0 && piv.back() != n - 1)) return std::nullopt;
    Mat r = e.to_mat();
    Mat inv(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
    return inv;
}

}  // namespace adjq
