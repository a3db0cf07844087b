#pragma once

#include "hkit/gauss_rat.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hkit {

using Complex = std::complex<long double>;

/// Dense univariate polynomial over Q(i); coefficient k multiplies t^k.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<GaussRat> coeffs) : c_(std::move(coeffs)) { trim(); }

    /// (t - r).
    static UPoly linear_root(const GaussRat& r) { return UPoly({-r, GaussRat(1)}); }

    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<GaussRat>& coeffs() const noexcept { return c_; }
    const GaussRat& lead() const { return c_.back(); }

    GaussRat operator()(const GaussRat& t) const {
        GaussRat acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    Complex operator()(Complex t) const {
        Complex acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + it->to_complex();
        return acc;
    }

    UPoly derivative() const {
        std::vector<GaussRat> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(GaussRat(static_cast<long>(k)) * c_[k]);
        return UPoly(std::move(d));
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        GaussRat inv = lead().inverse();
        std::vector<GaussRat> d = c_;
        for (auto& v : d) v *= inv;
        return UPoly(std::move(d));
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<GaussRat> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
        return UPoly(std::move(r));
    }

    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<GaussRat> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(r));
    }

    /// Quotient and remainder of Euclidean division; b must be nonzero.
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        std::vector<GaussRat> rem = a.c_;
        if (b.is_zero()) throw std::domain_error("UPoly: division by zero polynomial");
        if (a.degree() < b.degree()) return {UPoly(), a};
        std::vector<GaussRat> q(a.c_.size() - b.c_.size() + 1);
        GaussRat inv = b.lead().inverse();
        for (int k = a.degree() - b.degree(); k >= 0; --k) {
            GaussRat f = rem[static_cast<std::size_t>(k) + b.c_.size() - 1] * inv;
            q[static_cast<std::size_t>(k)] = f;
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) rem[static_cast<std::size_t>(k) + j] -= f * b.c_[j];
        }
        return {UPoly(std::move(q)), UPoly(std::move(rem))};
    }

    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (int k = degree(); k >= 0; --k) {
            const auto& v = c_[static_cast<std::size_t>(k)];
            if (v.is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + v.to_string() + ")";
            if (k > 0) s += "*t^" + std::to_string(k);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<GaussRat> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
inline UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        auto r = UPoly::divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

/// Product of the distinct monic irreducible factors: p / gcd(p, p').
inline UPoly squarefree_part(const UPoly& p) {
    if (p.degree() < 1) return p.monic();
    UPoly g = gcd(p, p.derivative());
    return UPoly::divmod(p, g).first.monic();
}

/// A root known only in floating point, with its scaled residual.
struct NumericScalar {
    std::complex<double> value;
    double residual = 0;
};

/// Roots of one polynomial: exact ones in Q(i), the rest numerically isolated.
struct RootSet {
    std::vector<GaussRat> exact;
    std::vector<NumericScalar> numeric;
};

namespace detail {

/// |p(t)| / sum |c_k||t|^k.
inline long double scaled_residual(const UPoly& p, Complex t) {
    long double scale = 0, at = std::abs(t), pw = 1;
    for (const auto& c : p.coeffs()) {
        scale += std::abs(c.to_complex()) * pw;
        pw *= at;
    }
    return std::abs(p(t)) / std::max(scale, 1e-300L);
}

/// Aberth-Ehrlich simultaneous iteration followed by Newton polishing.
inline std::vector<Complex> numeric_roots(const UPoly& p) {
    const int n = p.degree();
    std::vector<Complex> z;
    if (n < 1) return z;
    std::vector<Complex> c;
    for (const auto& v : p.coeffs()) c.push_back(v.to_complex());
    for (auto& v : c) v /= c.back();
    long double radius = 0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[static_cast<std::size_t>(k)]));
    radius = 1 + radius;
    auto eval = [&](Complex t, Complex& d) {
        Complex v = 0;
        d = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            d = d * t + v;
            v = v * t + *it;
        }
        return v;
    };
    for (int k = 0; k < n; ++k) {
        long double ang = 2 * M_PIl * k / n + 0.4L;
        z.push_back(std::polar(radius * 0.5L, ang));
    }
    for (int iter = 0; iter < 800; ++iter) {
        long double max_step = 0;
        for (int k = 0; k < n; ++k) {
            Complex d;
            Complex v = eval(z[static_cast<std::size_t>(k)], d);
            if (v == Complex(0)) continue;
            Complex ratio = v / d;
            Complex sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) sum += 1.0L / (z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)]);
            Complex step = ratio / (1.0L - ratio * sum);
            z[static_cast<std::size_t>(k)] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(1.0L, std::abs(z[static_cast<std::size_t>(k)])));
        }
        if (max_step < 1e-18L) break;
    }
    for (auto& r : z) {
        for (int it = 0; it < 4; ++it) {
            Complex d;
            Complex v = eval(r, d);
            if (d == Complex(0)) break;
            r -= v / d;
        }
    }
    return z;
}

/// Continued-fraction convergents of x with denominators up to max_den.
inline std::vector<mpq_class> convergents(long double x, long max_den) {
    std::vector<mpq_class> out;
    mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    long double r = x;
    for (int it = 0; it < 40; ++it) {
        long double fl = std::floor(r);
        mpz_class a(static_cast<double>(fl));
        mpz_class h = a * h0 + h1, k = a * k0 + k1;
        if (k > max_den) break;
        out.emplace_back(h, k);
        out.back().canonicalize();
        h1 = h0;
        h0 = h;
        k1 = k0;
        k0 = k;
        long double frac = r - fl;
        if (frac < 1e-18L) break;
        r = 1 / frac;
    }
    return out;
}

/// Nearest Gaussian rational with bounded denominators, if it is a root.
inline std::optional<GaussRat> rationalize_root(const UPoly& p, Complex approx, long max_den) {
    auto pick = [&](long double v) -> mpq_class {
        auto cs = convergents(v, max_den);
        for (const auto& q : cs)
            if (std::abs(static_cast<long double>(q.get_d()) - v) <= 1e-9L * (1 + std::abs(v))) return q;
        return cs.empty() ? mpq_class(0) : cs.back();
    };
    GaussRat cand(pick(approx.real()), pick(approx.imag()));
    if (p(cand).is_zero()) return cand;
    return std::nullopt;
}

} // namespace detail

/// Denominator bound for the Gaussian-rational candidate search.
inline constexpr long kRootDenominatorBound = 1'000'000;

/// Roots of p (without multiplicity). Degrees 1 and 2 are solved in closed
/// form when possible; otherwise numeric approximations are rationalized and
/// exactly tested, exact roots are deflated out, and what remains is
/// reported numerically.
inline RootSet find_roots(const UPoly& p) {
    RootSet out;
    if (p.degree() < 1) return out;
    UPoly rest = squarefree_part(p);
    while (rest.degree() >= 1) {
        if (rest.degree() == 1) {
            out.exact.push_back(-rest.coeffs()[0] / rest.coeffs()[1]);
            break;
        }
        if (rest.degree() == 2) {
            const auto& c = rest.coeffs();
            GaussRat disc = c[1] * c[1] - GaussRat(4) * c[2] * c[0];
            if (auto sq = gauss_sqrt(disc)) {
                GaussRat den = GaussRat(2) * c[2];
                out.exact.push_back((-c[1] + *sq) / den);
                out.exact.push_back((-c[1] - *sq) / den);
                break;
            }
        }
        std::vector<GaussRat> found;
        auto approx = detail::numeric_roots(rest);
        for (const auto& a : approx) {
            auto r = detail::rationalize_root(rest, a, kRootDenominatorBound);
            if (r && std::find(found.begin(), found.end(), *r) == found.end()) found.push_back(*r);
        }
        if (found.empty()) {
            for (const auto& a : approx)
                out.numeric.push_back({std::complex<double>(static_cast<double>(a.real()), static_cast<double>(a.imag())),
                                       static_cast<double>(detail::scaled_residual(rest, a))});
            break;
        }
        for (const auto& r : found) {
            out.exact.push_back(r);
            rest = UPoly::divmod(rest, UPoly::linear_root(r)).first;
        }
    }
    std::sort(out.exact.begin(), out.exact.end(), [](const GaussRat& a, const GaussRat& b) { return lex_less(a, b); });
    std::sort(out.numeric.begin(), out.numeric.end(), [](const NumericScalar& a, const NumericScalar& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

} // namespace hkit
