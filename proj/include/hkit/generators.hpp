#pragma once

#include "hkit/error.hpp"
#include "hkit/exact_matrix.hpp"
#include "hkit/nc_calculus.hpp"
#include "hkit/splitting.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>

namespace hkit {

/// Seeded source of small exact scalars and matrices. Only raw engine output
/// is used, so streams are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform integer in [lo, hi].
    long range(long lo, long hi) { return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

    bool coin() { return eng_() & 1u; }

    /// Rational in [-bound, bound] with denominator 1 or 2.
    mpq_class small_rational(long bound) {
        mpq_class q(range(-bound, bound), coin() ? 1 : 2);
        q.canonicalize();
        return q;
    }

    GaussRat small_gauss(long bound, bool complex = true) {
        return GaussRat(small_rational(bound), complex ? small_rational(bound) : mpq_class(0));
    }

    GaussRat nonzero_gauss(long bound, bool complex = true) {
        for (;;) {
            GaussRat g = small_gauss(bound, complex);
            if (!g.is_zero()) return g;
        }
    }

    /// Unit-modulus Gaussian rational (a + bi)^2 / (a^2 + b^2).
    GaussRat unit_gauss() {
        long a = range(-4, 4), b = range(-4, 4);
        if (a == 0 && b == 0) a = 1;
        GaussRat z(a, b);
        return z * z / GaussRat(a * a + b * b);
    }

    ExactMatrix matrix(std::size_t dim, long bound, bool complex = true) {
        ExactMatrix m(dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) m(r, c) = small_gauss(bound, complex);
        return m;
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

/// Random nilpotent of index exactly q in dimension dim: strictly upper
/// triangular on the leading q x q block with nonzero superdiagonal.
inline ExactMatrix random_nilpotent(std::size_t q, std::size_t dim, Rng& rng) {
    if (q < 1 || q > dim) throw PreconditionViolated("random_nilpotent: need 1 <= q <= dim");
    ExactMatrix n(dim);
    for (std::size_t r = 0; r + 1 < q; ++r) {
        n(r, r + 1) = rng.nonzero_gauss(2);
        for (std::size_t c = r + 2; c < q; ++c) n(r, c) = rng.small_gauss(2);
    }
    return n;
}

/// Random invertible P = L U with unit-diagonal triangular factors, and P^-1.
inline std::pair<ExactMatrix, ExactMatrix> random_similarity(std::size_t dim, Rng& rng) {
    ExactMatrix lo = ExactMatrix::identity(dim), up = ExactMatrix::identity(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = r + 1; c < dim; ++c) {
            up(r, c) = rng.small_gauss(1);
            lo(c, r) = rng.small_gauss(1);
        }
    ExactMatrix p = lo * up;
    return {p, *p.inverse()};
}

/// Random hermitian matrix.
inline ExactMatrix random_hermitian(std::size_t dim, Rng& rng) {
    ExactMatrix h(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        h(r, r) = rng.small_gauss(3, false);
        for (std::size_t c = r + 1; c < dim; ++c) {
            h(r, c) = rng.small_gauss(2);
            h(c, r) = h(r, c).conj();
        }
    }
    return h;
}

namespace detail {

inline void assert_generated_order(const RelationKind& kind, const ExactMatrix& s, const ExactMatrix& t, unsigned k,
                                   const char* what) {
    auto got = min_order(kind, s, t, k + 2);
    if (!got || *got != k)
        throw InternalContradiction(Contradiction::CrossCheck,
                                    std::string(what) + ": expected strict order " + std::to_string(k));
}

} // namespace detail

/// (S, T) = (c^-1 (I + N), c I) with N of index exactly l, jointly
/// conjugated by a random similarity; beta_l(S,T) = N^l = 0 strictly.
inline std::pair<ExactMatrix, ExactMatrix> gen_strict_inverse_pair(unsigned l, std::size_t dim, const GaussRat& c,
                                                                   std::uint64_t seed) {
    if (l < 1 || l > dim) throw PreconditionViolated("gen_strict_inverse_pair: need 1 <= l <= dim");
    if (c.is_zero()) throw PreconditionViolated("gen_strict_inverse_pair: c must be nonzero");
    Rng rng(seed);
    const auto id = ExactMatrix::identity(dim);
    ExactMatrix s = c.inverse() * (id + random_nilpotent(l, dim, rng));
    ExactMatrix t = c * id;
    auto [p, pinv] = random_similarity(dim, rng);
    s = p * s * pinv;
    t = p * t * pinv;
    detail::assert_generated_order(RelationKind::ninverse(), s, t, l, "gen_strict_inverse_pair");
    return {s, t};
}

/// A strict symmetry of the given odd order: hermitian for order 1, a
/// nilpotent of index q for order 2q - 1.
inline ExactMatrix gen_nsymmetry(unsigned order, std::size_t dim, std::uint64_t seed) {
    if (order % 2 == 0) throw PreconditionViolated("gen_nsymmetry: only odd orders exist in finite dimensions");
    Rng rng(seed);
    ExactMatrix t;
    if (order == 1) {
        if (dim < 1) throw PreconditionViolated("gen_nsymmetry: dim must be >= 1");
        t = random_hermitian(dim, rng);
    } else {
        t = random_nilpotent((order + 1) / 2, dim, rng);
    }
    detail::assert_generated_order(RelationKind::helton(), adjoint(t), t, order, "gen_nsymmetry");
    return t;
}

/// Parameters of a generated combined instance. `adjoint` selects the
/// n-symmetry variants (T* in place of S) of the Helton relation; there
/// `lambda` must have modulus one (tensor product) or be pure imaginary
/// (tensor sum). A zero entry in `dims` asks for the smallest workable size.
struct InstanceSpec {
    RelationKind relation = RelationKind::ninverse();
    DeltaKind delta = DeltaKind::TensorProduct;
    unsigned l = 1;
    unsigned m = 1;
    GaussRat lambda = 1;
    std::pair<std::size_t, std::size_t> dims{0, 0};
    std::uint64_t seed = 0;
    bool adjoint = false;
};

/// Operands keyed by manifest name, the order n = l + m - 1, and the witness
/// the construction used.
struct Instance {
    InstanceSpec spec;
    std::map<std::string, ExactMatrix> operands;
    unsigned n = 1;
    SplitWitness expected;

    const ExactMatrix& at(const std::string& name) const { return operands.at(name); }
};

namespace detail {

/// Smallest dimension carrying a strict order-k pair of the given family.
inline std::size_t min_pair_dim(unsigned k, bool adjoint) {
    if (k % 2 == 1) return (k + 1) / 2;
    if (adjoint) throw PreconditionViolated("no strict even-order n-symmetries in finite dimensions");
    return k;
}

inline std::size_t pick_dim(std::size_t requested, std::size_t minimal) {
    if (requested == 0) return minimal;
    if (requested < minimal) throw PreconditionViolated("requested dimension too small for the order");
    return requested;
}

/// Strict order-k pair for the n-inverse or Helton relation, with all
/// entries invertible.
inline std::pair<ExactMatrix, ExactMatrix> strict_pair(const RelationKind& kind, unsigned k, std::size_t dim, Rng& rng) {
    const auto id = ExactMatrix::identity(dim);
    ExactMatrix s, t;
    if (k % 2 == 1 && dim >= (k + 1) / 2 && (dim < k || rng.coin())) {
        // odd orders from a nilpotent N of index q: (T*, T) with T = I + N
        // (n-inverse) or (aI + N*, aI + N) (Helton) has strict order 2q - 1
        const std::size_t q = (k + 1) / 2;
        ExactMatrix n = random_nilpotent(q, dim, rng);
        GaussRat a = kind.tag() == RelationKind::Tag::NInverse ? GaussRat(1) : rng.nonzero_gauss(3, false);
        t = a * id + n;
        s = adjoint(t);
    } else if (kind.tag() == RelationKind::Tag::NInverse) {
        GaussRat c = rng.nonzero_gauss(2);
        s = c.inverse() * (id + random_nilpotent(k, dim, rng));
        t = c * id;
    } else {
        // gamma_j(aI, aI + N) = (-N)^j
        GaussRat a = rng.nonzero_gauss(3);
        s = a * id;
        t = a * id + random_nilpotent(k, dim, rng);
    }
    auto [p, pinv] = random_similarity(dim, rng);
    s = p * s * pinv;
    t = p * t * pinv;
    assert_generated_order(kind, s, t, k, "strict_pair");
    return {s, t};
}

/// Strict order-k symmetry X (gamma_k(X*, X) = 0), invertible when asked.
inline ExactMatrix strict_symmetry(unsigned k, std::size_t dim, bool invertible, Rng& rng) {
    if (k % 2 == 0) throw PreconditionViolated("no strict even-order n-symmetries in finite dimensions");
    const auto id = ExactMatrix::identity(dim);
    ExactMatrix x;
    for (;;) {
        if (k == 1) {
            x = random_hermitian(dim, rng);
        } else {
            x = random_nilpotent((k + 1) / 2, dim, rng);
            if (invertible || rng.coin()) x = x + rng.nonzero_gauss(3, false) * id;
        }
        if (x.is_zero() || (invertible && !x.is_invertible())) continue;
        break;
    }
    assert_generated_order(RelationKind::helton(), adjoint(x), x, k, "strict_symmetry");
    return x;
}

} // namespace detail

/// Builds operands whose combined relation vanishes at n = l + m - 1,
/// strictly, from strict factor data with the witness lambda.
///
/// Operand names follow the manifest layout: S1,T1,S2,T2 for tensor
/// products and sums, S,T,Q for the perturbation, T1,T2 for the adjoint
/// variants.
inline Instance gen_combined_instance(const InstanceSpec& spec) {
    if (spec.l < 1 || spec.m < 1) throw PreconditionViolated("gen_combined_instance: l, m must be >= 1");
    Rng rng(spec.seed);
    Instance inst;
    inst.spec = spec;
    inst.n = spec.l + spec.m - 1;
    const auto& kind = spec.relation;
    const bool named = kind.tag() != RelationKind::Tag::General;
    if (!named) throw PreconditionViolated("gen_combined_instance: only the n-inverse and Helton relations");
    if (spec.adjoint && kind.tag() != RelationKind::Tag::Helton)
        throw PreconditionViolated("gen_combined_instance: adjoint variants use the Helton relation");

    SplitWitness& w = inst.expected;
    w.lambda = spec.lambda;
    w.l = spec.l;
    w.m = spec.m;
    w.n = inst.n;
    w.strict_order = inst.n;
    w.delta = spec.delta;
    w.relation = kind.name();

    const std::size_t d1 = detail::pick_dim(spec.dims.first, detail::min_pair_dim(spec.l, spec.adjoint));
    std::size_t d2 = 0;
    switch (spec.delta) {
    case DeltaKind::TensorProduct: {
        if (spec.lambda.is_zero()) throw PreconditionViolated("gen_combined_instance: lambda must be nonzero");
        d2 = detail::pick_dim(spec.dims.second, detail::min_pair_dim(spec.m, spec.adjoint));
        if (spec.adjoint) {
            // T1 = c X1, T2 = r conj(c) X2 with conj(c)/c = lambda
            if (!(spec.lambda * spec.lambda.conj()).is_one())
                throw PreconditionViolated("gen_combined_instance: n-symmetry lambda must have modulus one");
            GaussRat c = spec.lambda == GaussRat(-1) ? GaussRat::i() : GaussRat(1) + spec.lambda.conj();
            GaussRat r = rng.nonzero_gauss(2, false);
            inst.operands["T1"] = c * detail::strict_symmetry(spec.l, d1, true, rng);
            inst.operands["T2"] = (r * c.conj()) * detail::strict_symmetry(spec.m, d2, true, rng);
            w.relation = "nsym";
        } else {
            auto [a1, b1] = detail::strict_pair(kind, spec.l, d1, rng);
            auto [a2, b2] = detail::strict_pair(kind, spec.m, d2, rng);
            inst.operands["S1"] = a1;
            inst.operands["T1"] = spec.lambda.inverse() * b1;
            inst.operands["S2"] = a2;
            inst.operands["T2"] = spec.lambda * b2;
            w.mu = spec.lambda.inverse();
        }
        break;
    }
    case DeltaKind::PerturbX: {
        if (spec.adjoint) throw PreconditionViolated("gen_combined_instance: no adjoint perturbation variant");
        d2 = detail::pick_dim(spec.dims.second, spec.m);
        if (spec.m == 1 && spec.lambda.is_zero())
            throw PreconditionViolated("gen_combined_instance: Q = lambda I + N' would be zero");
        auto [a, b] = detail::strict_pair(kind, spec.l, d1, rng);
        auto [p, pinv] = random_similarity(d2, rng);
        inst.operands["S"] = a - ExactMatrix::scalar(d1, spec.lambda);
        inst.operands["T"] = b;
        inst.operands["Q"] = p * (ExactMatrix::scalar(d2, spec.lambda) + random_nilpotent(spec.m, d2, rng)) * pinv;
        break;
    }
    case DeltaKind::TensorSum: {
        if (kind.tag() != RelationKind::Tag::Helton)
            throw PreconditionViolated("gen_combined_instance: tensor sums use the Helton relation");
        d2 = detail::pick_dim(spec.dims.second, detail::min_pair_dim(spec.m, spec.adjoint));
        if (spec.adjoint) {
            // T1 = X1 - lambda, T2 = X2 + lambda, lambda pure imaginary
            if (!(spec.lambda + spec.lambda.conj()).is_zero())
                throw PreconditionViolated("gen_combined_instance: tensor-sum n-symmetry lambda must be imaginary");
            inst.operands["T1"] = detail::strict_symmetry(spec.l, d1, false, rng) - ExactMatrix::scalar(d1, spec.lambda);
            inst.operands["T2"] = detail::strict_symmetry(spec.m, d2, false, rng) + ExactMatrix::scalar(d2, spec.lambda);
            if (inst.operands["T1"].is_zero() || inst.operands["T2"].is_zero())
                throw PreconditionViolated("gen_combined_instance: degenerate zero factor");
            w.relation = "nsym2";
            w.shift = GaussRat(-2) * spec.lambda;
        } else {
            // gamma_l(S1 + lambda, T1) = 0 and gamma_m(S2 - lambda, T2) = 0
            for (;;) {
                auto [a1, b1] = detail::strict_pair(kind, spec.l, d1, rng);
                auto [a2, b2] = detail::strict_pair(kind, spec.m, d2, rng);
                ExactMatrix s1 = a1 - ExactMatrix::scalar(d1, spec.lambda);
                ExactMatrix s2 = a2 + ExactMatrix::scalar(d2, spec.lambda);
                if (s1.is_zero() || s2.is_zero()) continue;
                inst.operands["S1"] = s1;
                inst.operands["T1"] = b1;
                inst.operands["S2"] = s2;
                inst.operands["T2"] = b2;
                break;
            }
        }
        break;
    }
    }

    // forward direction: the combined relation vanishes strictly at n
    CombinedPair pair;
    if (spec.adjoint) {
        const auto& t1 = inst.at("T1");
        const auto& t2 = inst.at("T2");
        pair = combine(spec.delta, adjoint(t1), t1, adjoint(t2), t2);
    } else if (spec.delta == DeltaKind::PerturbX) {
        pair = combine(spec.delta, inst.at("S"), inst.at("T"), inst.at("Q"), inst.at("Q"));
    } else {
        pair = combine(spec.delta, inst.at("S1"), inst.at("T1"), inst.at("S2"), inst.at("T2"));
    }
    detail::assert_generated_order(kind, pair.s, pair.t, inst.n, "gen_combined_instance");
    return inst;
}

} // namespace hkit
