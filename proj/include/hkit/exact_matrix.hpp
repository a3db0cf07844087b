#pragma once

#include "hkit/error.hpp"
#include "hkit/gauss_rat.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace hkit {

/// Dense square matrix over the Gaussian rationals, row-major.
class ExactMatrix {
public:
    ExactMatrix() = default;

    explicit ExactMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    ExactMatrix(std::initializer_list<std::initializer_list<GaussRat>> rows) : ExactMatrix(rows.size()) {
        std::size_t r = 0;
        for (const auto& row : rows) {
            if (row.size() != dim_) throw DimensionMismatch("ExactMatrix: rows must form a square");
            std::size_t c = 0;
            for (const auto& v : row) (*this)(r, c++) = v;
            ++r;
        }
    }

    static ExactMatrix zero(std::size_t dim) { return ExactMatrix(dim); }

    static ExactMatrix identity(std::size_t dim) { return scalar(dim, 1); }

    static ExactMatrix scalar(std::size_t dim, const GaussRat& s) {
        ExactMatrix m(dim);
        for (std::size_t k = 0; k < dim; ++k) m(k, k) = s;
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }

    GaussRat& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
    const GaussRat& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }

    bool is_identity() const { return *this == identity(dim_); }

    GaussRat trace() const {
        GaussRat t;
        for (std::size_t k = 0; k < dim_; ++k) t += (*this)(k, k);
        return t;
    }

    ExactMatrix& operator+=(const ExactMatrix& o) {
        require_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    ExactMatrix& operator-=(const ExactMatrix& o) {
        require_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    ExactMatrix& operator*=(const GaussRat& s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
    friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
    friend ExactMatrix operator*(const GaussRat& s, ExactMatrix a) { return a *= s; }
    ExactMatrix operator-() const { return GaussRat(-1) * *this; }

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        a.require_same(b);
        const std::size_t n = a.dim_;
        ExactMatrix r(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const GaussRat& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (b(k, j).is_zero()) continue;
                    r(i, j) += aik * b(k, j);
                }
            }
        }
        return r;
    }

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) { return a.dim_ == b.dim_ && a.a_ == b.a_; }

    ExactMatrix pow(unsigned e) const {
        ExactMatrix acc = identity(dim_), base = *this;
        while (e) {
            if (e & 1u) acc = acc * base;
            e >>= 1u;
            if (e) base = base * base;
        }
        return acc;
    }

    /// Frobenius norm in floating point; used only for residual reports.
    double frobenius() const {
        long double s = 0;
        for (const auto& v : a_) s += std::norm(v.to_complex());
        return static_cast<double>(std::sqrt(s));
    }

    /// Gauss-Jordan inverse; nullopt when singular.
    std::optional<ExactMatrix> inverse() const {
        const std::size_t n = dim_;
        ExactMatrix work = *this, inv = identity(n);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pivot = col;
            while (pivot < n && work(pivot, col).is_zero()) ++pivot;
            if (pivot == n) return std::nullopt;
            if (pivot != col) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(work(pivot, j), work(col, j));
                    std::swap(inv(pivot, j), inv(col, j));
                }
            }
            GaussRat scale = work(col, col).inverse();
            for (std::size_t j = 0; j < n; ++j) {
                work(col, j) *= scale;
                inv(col, j) *= scale;
            }
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col || work(r, col).is_zero()) continue;
                GaussRat f = work(r, col);
                for (std::size_t j = 0; j < n; ++j) {
                    work(r, j) -= f * work(col, j);
                    inv(r, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }

    bool is_invertible() const { return inverse().has_value(); }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t r = 0; r < dim_; ++r) {
            s += r ? ",[" : "[";
            for (std::size_t c = 0; c < dim_; ++c) s += (c ? "," : "") + (*this)(r, c).to_string();
            s += "]";
        }
        return s + "]";
    }

private:
    void require_same(const ExactMatrix& o) const {
        if (o.dim_ != dim_)
            throw DimensionMismatch("matrix dimensions differ: " + std::to_string(dim_) + " vs " +
                                    std::to_string(o.dim_));
    }

    std::size_t dim_ = 0;
    std::vector<GaussRat> a_;
};

/// Kronecker product; block (r, c) of the result is A(r, c) * B.
inline ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
    const std::size_t n = a.dim(), m = b.dim();
    ExactMatrix out(n * m);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            if (a(r, c).is_zero()) continue;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) out(r * m + i, c * m + j) = a(r, c) * b(i, j);
        }
    return out;
}

/// A (x) I + I (x) B.
inline ExactMatrix tensor_sum(const ExactMatrix& a, const ExactMatrix& b) {
    return kron(a, ExactMatrix::identity(b.dim())) + kron(ExactMatrix::identity(a.dim()), b);
}

/// Conjugate transpose.
inline ExactMatrix adjoint(const ExactMatrix& a) {
    ExactMatrix out(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) out(c, r) = a(r, c).conj();
    return out;
}

/// Least m <= dim with A^m = 0. The zero matrix has index 1; a matrix that
/// is not nilpotent yields nullopt (Cayley-Hamilton bounds the search).
inline std::optional<unsigned> nilpotency_index(const ExactMatrix& a) {
    ExactMatrix p = a;
    for (unsigned m = 1; m <= std::max<std::size_t>(a.dim(), 1); ++m) {
        if (p.is_zero()) return m;
        p = p * a;
    }
    return std::nullopt;
}

} // namespace hkit
