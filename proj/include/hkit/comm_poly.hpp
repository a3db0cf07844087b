#pragma once

#include "hkit/gauss_rat.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hkit {

/// Largest exponent any stored monomial may carry.
inline constexpr std::uint32_t kMaxExponent = 1u << 16;

/// Graded-lex order, highest first: larger total degree first, ties broken
/// lexicographically with the first variable most significant.
template <std::size_t N>
struct GradedLexDesc {
    bool operator()(const std::array<std::uint32_t, N>& a, const std::array<std::uint32_t, N>& b) const {
        std::uint64_t da = 0, db = 0;
        for (std::size_t k = 0; k < N; ++k) {
            da += a[k];
            db += b[k];
        }
        if (da != db) return da > db;
        return a > b;
    }
};

/// Sparse commutative polynomial in N variables over the Gaussian rationals.
///
/// Zero coefficients are never stored, so two polynomials are equal iff
/// their term maps are equal.
template <std::size_t N>
class SparsePoly {
public:
    using Exponents = std::array<std::uint32_t, N>;
    using TermMap = std::map<Exponents, GaussRat, GradedLexDesc<N>>;

    SparsePoly() = default;
    SparsePoly(const GaussRat& c) { add_term(Exponents{}, c); }  // NOLINT(google-explicit-constructor)
    template <std::integral I>
    SparsePoly(I c) : SparsePoly(GaussRat(c)) {}  // NOLINT(google-explicit-constructor)

    static SparsePoly monomial(const Exponents& e, const GaussRat& c = 1) {
        SparsePoly p;
        p.add_term(e, c);
        return p;
    }

    /// The k-th variable.
    static SparsePoly var(std::size_t k) {
        Exponents e{};
        e.at(k) = 1;
        return monomial(e);
    }

    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    GaussRat coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? GaussRat(0) : it->second;
    }

    /// Adds c * monomial(e) in place.
    void add_term(const Exponents& e, const GaussRat& c) {
        for (auto v : e)
            if (v > kMaxExponent) throw std::overflow_error("polynomial exponent exceeds 2^16");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::uint32_t degree_in(std::size_t k) const {
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e.at(k));
        return d;
    }

    std::uint32_t total_degree() const {
        // the first term has the largest total degree under GradedLexDesc
        if (terms_.empty()) return 0;
        const auto& e = terms_.begin()->first;
        return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
    }

    SparsePoly operator-() const {
        SparsePoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    SparsePoly& operator-=(const SparsePoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e;
                for (std::size_t k = 0; k < N; ++k) e[k] = ea[k] + eb[k];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

    friend SparsePoly operator*(const GaussRat& s, SparsePoly p) {
        if (s.is_zero()) return {};
        for (auto& [e, c] : p.terms_) c *= s;
        return p;
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

private:
    TermMap terms_;
};

using CommPoly = SparsePoly<2>;
using CommPoly4 = SparsePoly<4>;

/// p^n by repeated squaring; p^0 = 1.
template <std::size_t N>
SparsePoly<N> poly_pow(const SparsePoly<N>& p, unsigned n) {
    SparsePoly<N> acc(1), base = p;
    while (n) {
        if (n & 1u) acc *= base;
        n >>= 1u;
        if (n) base *= base;
    }
    return acc;
}

/// Evaluates p at a tuple of polynomials in M variables (ring substitution).
template <std::size_t N, std::size_t M>
SparsePoly<M> substitute(const SparsePoly<N>& p, const std::array<SparsePoly<M>, N>& images) {
    std::array<std::vector<SparsePoly<M>>, N> powers;
    for (std::size_t k = 0; k < N; ++k) {
        powers[k].push_back(SparsePoly<M>(1));
        for (std::uint32_t d = 1; d <= p.degree_in(k); ++d) powers[k].push_back(powers[k].back() * images[k]);
    }
    SparsePoly<M> out;
    for (const auto& [e, c] : p.terms()) {
        SparsePoly<M> t(c);
        for (std::size_t k = 0; k < N; ++k)
            if (e[k]) t *= powers[k][e[k]];
        out += t;
    }
    return out;
}

/// p(lambda*x, mu*y): coefficient of x^i y^j multiplied by lambda^i mu^j.
inline CommPoly scale_vars(const CommPoly& p, const GaussRat& lambda, const GaussRat& mu) {
    CommPoly out;
    for (const auto& [e, c] : p.terms()) out.add_term(e, c * lambda.pow(e[0]) * mu.pow(e[1]));
    return out;
}

/// p(x + lambda, y), binomially expanded.
inline CommPoly shift_x(const CommPoly& p, const GaussRat& lambda) {
    if (lambda.is_zero()) return p;
    return substitute<2, 2>(p, {CommPoly::var(0) + CommPoly(lambda), CommPoly::var(1)});
}

/// The three ring homomorphisms R -> R (x) R used for tensor constructions.
enum class DeltaKind {
    TensorProduct,  // x -> x(x)x, y -> y(x)y
    PerturbX,       // x -> x(x)1 + 1(x)x, y -> y(x)1
    TensorSum,      // x -> x(x)1 + 1(x)x, y -> y(x)1 + 1(x)y
};

inline const char* to_string(DeltaKind k) {
    switch (k) {
    case DeltaKind::TensorProduct: return "tensor-product";
    case DeltaKind::PerturbX: return "perturb";
    case DeltaKind::TensorSum: return "tensor-sum";
    }
    return "?";
}

/// Variables of CommPoly4 are ordered (x1, y1, x2, y2).
namespace var4 {
inline CommPoly4 x1() { return CommPoly4::var(0); }
inline CommPoly4 y1() { return CommPoly4::var(1); }
inline CommPoly4 x2() { return CommPoly4::var(2); }
inline CommPoly4 y2() { return CommPoly4::var(3); }
} // namespace var4

/// Image of p under the chosen delta, written in S = C[x1,y1,x2,y2].
inline CommPoly4 hat(const CommPoly& p, DeltaKind kind) {
    using namespace var4;
    switch (kind) {
    case DeltaKind::TensorProduct: return substitute<2, 4>(p, {x1() * x2(), y1() * y2()});
    case DeltaKind::PerturbX: return substitute<2, 4>(p, {x1() + x2(), y1()});
    case DeltaKind::TensorSum: return substitute<2, 4>(p, {x1() + x2(), y1() + y2()});
    }
    throw std::logic_error("hat: bad DeltaKind");
}

/// (x, y) -> (x1, y1).
inline CommPoly4 embed_first(const CommPoly& q) { return substitute<2, 4>(q, {var4::x1(), var4::y1()}); }

/// (x, y) -> (x2, y2).
inline CommPoly4 embed_second(const CommPoly& q) { return substitute<2, 4>(q, {var4::x2(), var4::y2()}); }

} // namespace hkit
