#pragma once

#include "hkit/comm_poly.hpp"
#include "hkit/error.hpp"
#include "hkit/text.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hkit {

/// A * (x^alpha y^beta - B).
struct ProductForm {
    GaussRat a;
    GaussRat b;
    unsigned alpha = 1;
    unsigned beta = 1;
    friend bool operator==(const ProductForm&, const ProductForm&) = default;
};

/// A * (B x^alpha - y^beta).
struct DifferenceForm {
    GaussRat a;
    GaussRat b;
    unsigned alpha = 1;
    unsigned beta = 1;
    friend bool operator==(const DifferenceForm&, const DifferenceForm&) = default;
};

using CanonicalForm = std::variant<ProductForm, DifferenceForm>;

inline CommPoly expand(const ProductForm& f) {
    return f.a * (CommPoly::monomial({f.alpha, f.beta}) - CommPoly(f.b));
}

inline CommPoly expand(const DifferenceForm& f) {
    return f.a * (CommPoly::monomial({f.alpha, 0}, f.b) - CommPoly::monomial({0, f.beta}));
}

inline CommPoly expand(const CanonicalForm& f) {
    return std::visit([](const auto& v) { return expand(v); }, f);
}

/// Weights (w1, w2), coprime with the first nonzero entry positive, and the
/// quasi-degree d: every support exponent (i, j) satisfies w1*i + w2*j = d.
struct QhClass {
    long w1 = 0;
    long w2 = 0;
    long degree = 0;
    std::optional<CanonicalForm> canonical_form;
};

namespace detail {

inline CommPoly x_minus_y() { return CommPoly::var(0) - CommPoly::var(1); }

inline std::pair<long, long> primitive_normal(long a, long b) {
    long g = std::gcd(std::labs(a), std::labs(b));
    a /= g;
    b /= g;
    if (a < 0 || (a == 0 && b < 0)) {
        a = -a;
        b = -b;
    }
    return {a, b};
}

inline std::optional<CanonicalForm> match_canonical(const CommPoly& p) {
    if (p.size() != 2) return std::nullopt;
    auto hi = p.terms().begin();
    auto lo = std::next(hi);
    const auto& [e1, c1] = *hi;
    const auto& [e2, c2] = *lo;
    auto coprime = [](unsigned a, unsigned b) { return std::gcd(a, b) == 1u; };
    // A(x^a y^b - B): support {(a,b), (0,0)}
    if (e2 == CommPoly::Exponents{0, 0} && e1[0] >= 1 && e1[1] >= 1 && coprime(e1[0], e1[1])) {
        return ProductForm{c1, -c2 / c1, e1[0], e1[1]};
    }
    // A(B x^a - y^b): support {(a,0), (0,b)}
    const CommPoly::Exponents* ex = nullptr;
    const CommPoly::Exponents* ey = nullptr;
    const GaussRat* cx = nullptr;
    const GaussRat* cy = nullptr;
    for (const auto& [e, c] : p.terms()) {
        if (e[0] >= 1 && e[1] == 0) {
            ex = &e;
            cx = &c;
        } else if (e[0] == 0 && e[1] >= 1) {
            ey = &e;
            cy = &c;
        }
    }
    if (ex && ey && coprime((*ex)[0], (*ey)[1])) {
        GaussRat a = -*cy;
        return DifferenceForm{a, *cx / a, (*ex)[0], (*ey)[1]};
    }
    return std::nullopt;
}

} // namespace detail

/// Classifies p as quasi-homogeneous (support on one line) or not.
inline std::optional<QhClass> classify_qh(const CommPoly& p) {
    if (p.is_zero()) throw PreconditionViolated("classify_qh: zero polynomial");
    std::vector<std::pair<long, long>> pts;
    for (const auto& [e, c] : p.terms()) pts.emplace_back(e[0], e[1]);
    QhClass out;
    if (pts.size() == 1) {
        auto [i, j] = pts.front();
        if (j == 0) {
            out.w1 = 1;
            out.w2 = 0;
            out.degree = i;
        } else {
            std::tie(out.w1, out.w2) = detail::primitive_normal(j, -i);
            out.degree = 0;
        }
        return out;
    }
    long di = pts[1].first - pts[0].first, dj = pts[1].second - pts[0].second;
    std::tie(out.w1, out.w2) = detail::primitive_normal(dj, -di);
    out.degree = out.w1 * pts[0].first + out.w2 * pts[0].second;
    for (const auto& [i, j] : pts)
        if (out.w1 * i + out.w2 * j != out.degree) return std::nullopt;
    out.canonical_form = detail::match_canonical(p);
    return out;
}

/// Explicit membership of hat(p) in <q1(x1,y1), q2(x2,y2)>:
/// hat(p, kind) = f * q1(x1,y1) + g * q2(x2,y2).
struct Certificate {
    CommPoly q1;
    CommPoly q2;
    CommPoly4 f;
    CommPoly4 g;
    DeltaKind kind = DeltaKind::TensorProduct;
};

inline bool verify_certificate(const CommPoly& p, const Certificate& cert) {
    CommPoly4 residual = hat(p, cert.kind) - cert.f * embed_first(cert.q1) - cert.g * embed_second(cert.q2);
    return residual.is_zero();
}

/// True when p = alpha(y) x + beta(y).
inline bool is_linear_in_x(const CommPoly& p) { return p.degree_in(0) <= 1; }

namespace detail {

inline Certificate product_certificate(const ProductForm& pf, const GaussRat& lambda) {
    // u1 u2 - B = (u1 - lambda) u2 + lambda (u2 - B/lambda),  u = x^alpha y^beta
    CommPoly u = CommPoly::monomial({pf.alpha, pf.beta});
    Certificate c;
    c.kind = DeltaKind::TensorProduct;
    c.q1 = u - CommPoly(lambda);
    c.q2 = u - CommPoly(pf.b / lambda);
    c.f = pf.a * embed_second(u);
    c.g = CommPoly4(pf.a * lambda);
    return c;
}

inline Certificate difference_certificate(const DifferenceForm& df, const GaussRat& lambda) {
    // B x1^a x2^a - y1^b y2^b = (B x1^a - lambda y1^b) x2^a + lambda y1^b (x2^a - y2^b / lambda)
    CommPoly xa = CommPoly::monomial({df.alpha, 0});
    CommPoly yb = CommPoly::monomial({0, df.beta});
    Certificate c;
    c.kind = DeltaKind::TensorProduct;
    c.q1 = df.b * xa - lambda * yb;
    c.q2 = xa - lambda.inverse() * yb;
    c.f = df.a * embed_second(xa);
    c.g = (df.a * lambda) * embed_first(yb);
    return c;
}

} // namespace detail

/// Builds the lambda-parametrized decomposition certificate for p.
///
/// TensorProduct needs a canonical form and lambda != 0; PerturbX needs p
/// linear in x; TensorSum needs p = c(x - y).
inline Certificate make_certificate(const CommPoly& p, DeltaKind kind, const GaussRat& lambda) {
    switch (kind) {
    case DeltaKind::TensorProduct: {
        if (lambda.is_zero()) throw PreconditionViolated("make_certificate: lambda must be nonzero");
        if (p.is_zero()) throw PreconditionViolated("make_certificate: zero polynomial");
        auto cls = classify_qh(p);
        if (!cls || !cls->canonical_form)
            throw PreconditionViolated("make_certificate: polynomial has no canonical quasi-homogeneous form");
        const auto& form = *cls->canonical_form;
        if (const auto* pf = std::get_if<ProductForm>(&form)) return detail::product_certificate(*pf, lambda);
        return detail::difference_certificate(std::get<DifferenceForm>(form), lambda);
    }
    case DeltaKind::PerturbX: {
        if (!is_linear_in_x(p)) throw PreconditionViolated("make_certificate: polynomial is not linear in x");
        // p(x1+x2, y1) = p(x1+lambda, y1) + (x2 - lambda) alpha(y1)
        CommPoly alpha;
        for (const auto& [e, c] : p.terms())
            if (e[0] == 1) alpha.add_term({0, e[1]}, c);
        Certificate c;
        c.kind = kind;
        c.q1 = shift_x(p, lambda);
        c.q2 = CommPoly::var(0) - CommPoly(lambda);
        c.f = CommPoly4(1);
        c.g = embed_first(alpha);
        return c;
    }
    case DeltaKind::TensorSum: {
        GaussRat scale = p.coeff({1, 0});
        if (scale.is_zero() || !(p == scale * detail::x_minus_y()))
            throw PreconditionViolated("make_certificate: tensor-sum certificates need p = c(x - y)");
        Certificate c;
        c.kind = kind;
        c.q1 = detail::x_minus_y() + CommPoly(lambda);
        c.q2 = detail::x_minus_y() - CommPoly(lambda);
        c.f = CommPoly4(scale);
        c.g = CommPoly4(scale);
        return c;
    }
    }
    throw std::logic_error("make_certificate: bad DeltaKind");
}

} // namespace hkit
