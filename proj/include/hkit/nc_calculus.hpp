#pragma once

#include "hkit/comm_poly.hpp"
#include "hkit/error.hpp"
#include "hkit/exact_matrix.hpp"
#include "hkit/text.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hkit {

/// Normal-ordered noncommutative polynomial sum k_ij X^i Y^j.
///
/// Only words with every X to the left of every Y are representable; this is
/// exactly the image of the normal-ordering map, which is all the
/// evaluations below ever need.
class NcPoly {
public:
    using Key = std::array<std::uint32_t, 2>;

    NcPoly() = default;

    const std::map<Key, GaussRat>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const Key& k, const GaussRat& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    GaussRat coeff(std::uint32_t i, std::uint32_t j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? GaussRat(0) : it->second;
    }

    /// X^a * this * Y^b, still normal ordered.
    NcPoly sandwich(std::uint32_t a, std::uint32_t b) const {
        NcPoly out;
        for (const auto& [k, c] : terms_) out.add_term({k[0] + a, k[1] + b}, c);
        return out;
    }

    friend bool operator==(const NcPoly& a, const NcPoly& b) { return a.terms_ == b.terms_; }

private:
    std::map<Key, GaussRat> terms_;
};

/// Normal ordering: x^i y^j -> X^i Y^j, extended linearly.
inline NcPoly phi(const CommPoly& p) {
    NcPoly out;
    for (const auto& [e, c] : p.terms()) out.add_term({e[0], e[1]}, c);
    return out;
}

/// Reads the coefficients of a normal-ordered polynomial back into R.
inline CommPoly phi_inverse(const NcPoly& w) {
    CommPoly out;
    for (const auto& [k, c] : w.terms()) out.add_term({k[0], k[1]}, c);
    return out;
}

inline void require_same_dim(const ExactMatrix& s, const ExactMatrix& t) {
    if (s.dim() != t.dim())
        throw DimensionMismatch("operator pair dimensions differ: " + std::to_string(s.dim()) + " vs " +
                                std::to_string(t.dim()));
}

/// Powers A^0..A^max of one matrix.
inline std::vector<ExactMatrix> power_table(const ExactMatrix& a, std::uint32_t max) {
    std::vector<ExactMatrix> pw{ExactMatrix::identity(a.dim())};
    for (std::uint32_t k = 1; k <= max; ++k) pw.push_back(pw.back() * a);
    return pw;
}

/// w(S, T) = sum k_ij S^i T^j.
inline ExactMatrix nc_eval(const NcPoly& w, const ExactMatrix& s, const ExactMatrix& t) {
    require_same_dim(s, t);
    std::uint32_t max_i = 0, max_j = 0;
    for (const auto& [k, c] : w.terms()) {
        max_i = std::max(max_i, k[0]);
        max_j = std::max(max_j, k[1]);
    }
    auto sp = power_table(s, max_i);
    auto tp = power_table(t, max_j);
    // group by i so each S^i is multiplied once: sum_i S^i (sum_j k_ij T^j)
    ExactMatrix out = ExactMatrix::zero(s.dim());
    auto it = w.terms().begin();
    while (it != w.terms().end()) {
        std::uint32_t i = it->first[0];
        ExactMatrix inner = ExactMatrix::zero(s.dim());
        for (; it != w.terms().end() && it->first[0] == i; ++it) inner += it->second * tp[it->first[1]];
        out += sp[i] * inner;
    }
    return out;
}

/// xy - 1.
inline CommPoly ninverse_poly() { return parse_poly("x*y - 1"); }

/// x - y.
inline CommPoly helton_poly() { return parse_poly("x - y"); }

inline std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (unsigned j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

/// beta_n(S,T) = sum_k (-1)^(n-k) C(n,k) S^k T^k.
///
/// Computed twice, once as the normal-ordered evaluation of (xy-1)^n and
/// once through beta_n = S beta_{n-1} T - beta_{n-1}; the two must agree.
inline ExactMatrix beta_n(const ExactMatrix& s, const ExactMatrix& t, unsigned n) {
    require_same_dim(s, t);
    ExactMatrix direct = nc_eval(phi(poly_pow(ninverse_poly(), n)), s, t);
    ExactMatrix rec = ExactMatrix::identity(s.dim());
    for (unsigned k = 1; k <= n; ++k) rec = s * rec * t - rec;
    if (!(rec == direct))
        throw InternalContradiction(Contradiction::CrossCheck, "beta_n direct sum and recursion disagree");
    return direct;
}

/// gamma_n(S,T) = sum_k (-1)^(n-k) C(n,k) S^k T^(n-k).
inline ExactMatrix gamma_n(const ExactMatrix& s, const ExactMatrix& t, unsigned n) {
    require_same_dim(s, t);
    auto sp = power_table(s, n);
    auto tp = power_table(t, n);
    ExactMatrix out = ExactMatrix::zero(s.dim());
    for (unsigned k = 0; k <= n; ++k) {
        GaussRat c(static_cast<long>(binomial(n, k)));
        if ((n - k) % 2) c = -c;
        out += c * (sp[k] * tp[n - k]);
    }
    return out;
}

/// The relation polynomial p whose normal-ordered powers are tested.
class RelationKind {
public:
    enum class Tag { NInverse, Helton, General };

    static RelationKind ninverse() { return RelationKind(Tag::NInverse, ninverse_poly()); }
    static RelationKind helton() { return RelationKind(Tag::Helton, helton_poly()); }
    static RelationKind general(CommPoly p) {
        if (p.is_zero()) throw PreconditionViolated("general relation polynomial must be nonzero");
        return RelationKind(Tag::General, std::move(p));
    }

    Tag tag() const noexcept { return tag_; }
    const CommPoly& poly() const noexcept { return poly_; }

    std::string name() const {
        switch (tag_) {
        case Tag::NInverse: return "n-inverse";
        case Tag::Helton: return "helton";
        case Tag::General: return "general:" + to_string(poly_);
        }
        return "?";
    }

private:
    RelationKind(Tag t, CommPoly p) : tag_(t), poly_(std::move(p)) {}
    Tag tag_;
    CommPoly poly_;
};

/// Incremental evaluation of Phi(p^l)(S,T) for l = 1, 2, ...
///
/// The two named relations use the recursions X*w*Y - w and X*w - w*Y, so
/// each step costs two matrix products; general p keeps a running power.
class RelationPowers {
public:
    RelationPowers(const RelationKind& kind, const ExactMatrix& s, const ExactMatrix& t)
        : kind_(kind), s_(s), t_(t), current_(ExactMatrix::identity(s.dim())), power_(1) {
        require_same_dim(s, t);
    }

    /// Advances to the next order and returns Phi(p^order)(S,T).
    const ExactMatrix& next() {
        ++order_;
        switch (kind_.tag()) {
        case RelationKind::Tag::NInverse: current_ = s_ * current_ * t_ - current_; break;
        case RelationKind::Tag::Helton: current_ = s_ * current_ - current_ * t_; break;
        case RelationKind::Tag::General:
            power_ *= kind_.poly();
            current_ = nc_eval(phi(power_), s_, t_);
            break;
        }
        return current_;
    }

    unsigned order() const noexcept { return order_; }

private:
    RelationKind kind_;
    ExactMatrix s_;
    ExactMatrix t_;
    ExactMatrix current_;
    CommPoly power_;
    unsigned order_ = 0;
};

/// Phi(p^n)(S,T).
inline ExactMatrix eval_relation(const RelationKind& kind, const ExactMatrix& s, const ExactMatrix& t, unsigned n) {
    require_same_dim(s, t);
    return nc_eval(phi(poly_pow(kind.poly(), n)), s, t);
}

/// Least l <= cap with Phi(p^l)(S,T) = 0. Because the preimage of the kernel
/// is an ideal, every lower order is nonzero once the first zero is hit.
inline std::optional<unsigned> min_order(const RelationKind& kind, const ExactMatrix& s, const ExactMatrix& t,
                                         unsigned cap) {
    if (cap < 1) throw PreconditionViolated("min_order: cap must be >= 1");
    RelationPowers pw(kind, s, t);
    for (unsigned l = 1; l <= cap; ++l)
        if (pw.next().is_zero()) return l;
    return std::nullopt;
}

/// The pair acted on by the combined relation for the given delta.
struct CombinedPair {
    ExactMatrix s;
    ExactMatrix t;
};

/// TensorProduct: (S1(x)S2, T1(x)T2); PerturbX: (S1(x)I + I(x)S2, T1(x)I) with
/// T2 ignored; TensorSum: (S1(x)I + I(x)S2, T1(x)I + I(x)T2).
inline CombinedPair combine(DeltaKind dkind, const ExactMatrix& s1, const ExactMatrix& t1, const ExactMatrix& s2,
                            const ExactMatrix& t2) {
    require_same_dim(s1, t1);
    switch (dkind) {
    case DeltaKind::TensorProduct: require_same_dim(s2, t2); return {kron(s1, s2), kron(t1, t2)};
    case DeltaKind::PerturbX:
        return {tensor_sum(s1, s2), kron(t1, ExactMatrix::identity(s2.dim()))};
    case DeltaKind::TensorSum: require_same_dim(s2, t2); return {tensor_sum(s1, s2), tensor_sum(t1, t2)};
    }
    throw std::logic_error("combine: bad DeltaKind");
}

/// Phi(p^n) evaluated at the combined pair.
inline ExactMatrix eval_combined(const RelationKind& kind, DeltaKind dkind, const ExactMatrix& s1,
                                 const ExactMatrix& t1, const ExactMatrix& s2, const ExactMatrix& t2, unsigned n) {
    if (n < 1) throw PreconditionViolated("eval_combined: n must be >= 1");
    auto pair = combine(dkind, s1, t1, s2, t2);
    return eval_relation(kind, pair.s, pair.t, n);
}

} // namespace hkit
