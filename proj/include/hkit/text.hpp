#pragma once

#include "hkit/comm_poly.hpp"
#include "hkit/error.hpp"

#include <array>
#include <cctype>
#include <string>
#include <string_view>

namespace hkit {

/// Variable spellings for the polynomial text grammar.
template <std::size_t N>
struct VarNames;

template <>
struct VarNames<0> {
    static constexpr std::array<std::string_view, 0> names{};
};
template <>
struct VarNames<2> {
    static constexpr std::array<std::string_view, 2> names{"x", "y"};
};
template <>
struct VarNames<4> {
    static constexpr std::array<std::string_view, 4> names{"x1", "y1", "x2", "y2"};
};

namespace detail {

// Recursive descent over
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := '-' factor | primary ['^' int]
//   primary := int ['/' int] | 'i' | var | '(' expr ')'
template <std::size_t N>
class PolyParser {
public:
    using Poly = SparsePoly<N>;

    explicit PolyParser(std::string_view text) : s_(text) {}

    Poly parse() {
        skip_ws();
        if (pos_ >= s_.size()) fail("empty polynomial");
        Poly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr() {
        Poly acc;
        skip_ws();
        bool negate = false;
        if (eat('-')) negate = true;
        else eat('+');
        Poly t = term();
        acc = negate ? -t : t;
        for (;;) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else break;
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        while (eat('*')) acc *= factor();
        return acc;
    }

    Poly factor() {
        if (eat('-')) return -factor();
        Poly base = primary();
        if (eat('^')) {
            skip_ws();
            mpz_class e = integer();
            if (e > kMaxExponent) fail("exponent exceeds 2^16");
            base = poly_pow(base, static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    mpz_class integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }

    Poly primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class num = integer();
            mpz_class den = 1;
            if (eat('/')) {
                den = integer();
                if (den == 0) fail("zero denominator");
            }
            return Poly(GaussRat(mpq_class(num, den)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string_view ident = s_.substr(start, pos_ - start);
            if (ident == "i") return Poly(GaussRat::i());
            for (std::size_t k = 0; k < N; ++k)
                if (VarNames<N>::names[k] == ident) return Poly::var(k);
            pos_ = start;
            fail("unknown identifier '" + std::string(ident) + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

inline std::string coeff_factor(const GaussRat& c) {
    if (c.is_real()) return c.re().get_str();
    if (sgn(c.re()) == 0) return c.to_string();
    return "(" + c.to_string() + ")";
}

} // namespace detail

template <std::size_t N>
SparsePoly<N> parse_poly_n(std::string_view text) {
    return detail::PolyParser<N>(text).parse();
}

/// Parses the bivariate grammar in x, y.
inline CommPoly parse_poly(std::string_view text) { return parse_poly_n<2>(text); }

/// Parses a polynomial in x1, y1, x2, y2.
inline CommPoly4 parse_poly4(std::string_view text) { return parse_poly_n<4>(text); }

/// Parses a scalar such as "3", "-1/2", "i", "1/2-3/4*i".
inline GaussRat parse_scalar(std::string_view text) {
    auto p = parse_poly_n<0>(text);
    return p.coeff({});
}

/// Canonical printer: graded-lex order, highest first.
template <std::size_t N>
std::string to_string(const SparsePoly<N>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        std::string mono;
        for (std::size_t k = 0; k < N; ++k) {
            if (e[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += VarNames<N>::names[k];
            if (e[k] > 1) mono += "^" + std::to_string(e[k]);
        }
        // A negative real or negative pure-imaginary coefficient is written
        // with a leading minus; compound coefficients keep their own sign.
        bool negative = false;
        GaussRat mag = c;
        if ((c.is_real() && sgn(c.re()) < 0) || (sgn(c.re()) == 0 && sgn(c.im()) < 0)) {
            negative = true;
            mag = -c;
        }
        std::string body;
        if (mono.empty()) body = detail::coeff_factor(mag);
        else if (mag.is_one()) body = mono;
        else body = detail::coeff_factor(mag) + "*" + mono;

        if (first) out += negative ? "-" + body : body;
        else out += (negative ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

} // namespace hkit
