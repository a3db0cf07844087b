#pragma once

#include <gmpxx.h>

#include <complex>
#include <concepts>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hkit {

/// Exact complex number re + im*i with arbitrary precision rational parts.
///
/// mpq_class keeps both parts canonical (positive denominator, lowest terms),
/// so structural equality is numerical equality.
class GaussRat {
public:
    GaussRat() = default;

    template <std::integral I>
    GaussRat(I v) : re_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

    GaussRat(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {  // NOLINT
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussRat i() { return GaussRat(mpq_class(0), mpq_class(1)); }

    /// p/q as an exact real value.
    static GaussRat ratio(long p, long q) { return GaussRat(mpq_class(p, q)); }

    const mpq_class& re() const noexcept { return re_; }
    const mpq_class& im() const noexcept { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussRat conj() const { return GaussRat(re_, -im_); }

    /// |z|^2, exact.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussRat inverse() const {
        if (is_zero()) throw std::domain_error("GaussRat: inverse of zero");
        mpq_class n = norm();
        return GaussRat(re_ / n, -im_ / n);
    }

    GaussRat pow(unsigned e) const {
        GaussRat base = *this, acc = 1;
        while (e) {
            if (e & 1u) acc *= base;
            e >>= 1u;
            if (e) base *= base;
        }
        return acc;
    }

    std::complex<long double> to_complex() const {
        return {static_cast<long double>(re_.get_d()), static_cast<long double>(im_.get_d())};
    }

    GaussRat operator-() const { return GaussRat(-re_, -im_); }

    GaussRat& operator+=(const GaussRat& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussRat& operator-=(const GaussRat& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussRat& operator*=(const GaussRat& o) {
        if (o.is_real()) {
            re_ *= o.re_;
            im_ *= o.re_;
            return *this;
        }
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    GaussRat& operator/=(const GaussRat& o) { return *this *= o.inverse(); }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Lexicographic (re, im); only used for deterministic ordering.
    friend bool lex_less(const GaussRat& a, const GaussRat& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    /// Scalar grammar: "a/b", "c/d*i", "a/b+c/d*i", "a/b-c/d*i"; unit
    /// imaginary parts print as "i" / "-i".
    std::string to_string() const {
        if (is_real()) return re_.get_str();
        std::string imag;
        mpq_class mag = abs(im_);
        imag = mag == 1 ? "i" : mag.get_str() + "*i";
        if (sgn(re_) == 0) return sgn(im_) < 0 ? "-" + imag : imag;
        return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + imag;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussRat& z) { return os << z.to_string(); }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

/// Exact square root of a non-negative rational, if it is rational.
inline std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (sgn(q) < 0) return std::nullopt;
    mpz_class num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return mpq_class(rn, rd);
}

/// Square root in Q(i), if one exists. The returned root has non-negative
/// real part (and non-negative imaginary part when the real part is zero).
inline std::optional<GaussRat> gauss_sqrt(const GaussRat& z) {
    if (z.is_zero()) return GaussRat(0);
    auto modulus = rational_sqrt(z.norm());
    if (!modulus) return std::nullopt;
    auto a = rational_sqrt((*modulus + z.re()) / 2);
    auto b = rational_sqrt((*modulus - z.re()) / 2);
    if (!a || !b) return std::nullopt;
    mpq_class im = sgn(z.im()) < 0 ? mpq_class(-*b) : *b;
    GaussRat root(*a, im);
    if (!(root * root == z)) return std::nullopt;
    return root;
}

} // namespace hkit
