#pragma once

#include "hkit/comm_poly.hpp"
#include "hkit/error.hpp"
#include "hkit/exact_matrix.hpp"
#include "hkit/nc_calculus.hpp"
#include "hkit/quasihom.hpp"
#include "hkit/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hkit {

inline constexpr unsigned kMaxOrder = 16;
inline constexpr unsigned kDefaultMaxDim = 8;
inline constexpr int kMaxPencilDegree = 64;
inline constexpr double kNumericTolerance = 1e-9;

struct SplitOptions {
    bool numeric_fallback = true;
    unsigned max_dim = kDefaultMaxDim;

    /// Defaults, with HKIT_MAX_DIM overriding the dimension cap.
    static SplitOptions from_env() {
        SplitOptions o;
        if (const char* v = std::getenv("HKIT_MAX_DIM")) {
            char* end = nullptr;
            unsigned long d = std::strtoul(v, &end, 10);
            if (end && *end == '\0' && d > 0) o.max_dim = static_cast<unsigned>(d);
        }
        return o;
    }
};

// ---------------------------------------------------------------------------
// Pencils

enum class PencilMode {
    Scale,  // p(x, lambda*y)
    Shift,  // p(x + lambda, y)
};

/// Matrix-valued polynomial sum_k lambda^k C_k.
class PencilPoly {
public:
    PencilPoly(std::size_t dim, std::vector<ExactMatrix> coeffs) : dim_(dim), c_(std::move(coeffs)) {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<ExactMatrix>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }

    ExactMatrix operator()(const GaussRat& lambda) const {
        ExactMatrix acc = ExactMatrix::zero(dim_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = lambda * acc + *it;
        return acc;
    }

    /// Frobenius norm of P(lambda) divided by sum |lambda|^k ||C_k||.
    double scaled_residual(Complex lambda) const {
        std::vector<Complex> acc(dim_ * dim_);
        long double scale = 0, pw = 1, mag = std::abs(lambda);
        Complex lp = 1;
        for (const auto& ck : c_) {
            long double norm = 0;
            for (std::size_t r = 0; r < dim_; ++r)
                for (std::size_t c = 0; c < dim_; ++c) {
                    Complex v = ck(r, c).to_complex();
                    acc[r * dim_ + c] += lp * v;
                    norm += std::norm(v);
                }
            scale += std::sqrt(norm) * pw;
            pw *= mag;
            lp *= lambda;
        }
        long double res = 0;
        for (const auto& v : acc) res += std::norm(v);
        if (scale == 0) return 0;
        return static_cast<double>(std::sqrt(res) / scale);
    }

    UPoly entry(std::size_t r, std::size_t c) const {
        std::vector<GaussRat> cs;
        for (const auto& ck : c_) cs.push_back(ck(r, c));
        return UPoly(std::move(cs));
    }

private:
    std::size_t dim_;
    std::vector<ExactMatrix> c_;
};

/// P(lambda) = Phi(p_lambda^l)(S,T) in Scale mode, Phi(p(x+lambda,y)^l)(S,T)
/// in Shift mode.
inline PencilPoly lambda_pencil(const RelationKind& kind, PencilMode mode, unsigned l, const ExactMatrix& s,
                                const ExactMatrix& t) {
    require_same_dim(s, t);
    const CommPoly pl = poly_pow(kind.poly(), l);
    const std::size_t n = s.dim();
    auto sp = power_table(s, pl.degree_in(0));
    auto tp = power_table(t, pl.degree_in(1));
    std::vector<ExactMatrix> coeffs;
    auto slot = [&](std::size_t k) -> ExactMatrix& {
        while (coeffs.size() <= k) coeffs.push_back(ExactMatrix::zero(n));
        return coeffs[k];
    };
    for (const auto& [e, c] : pl.terms()) {
        const auto i = e[0], j = e[1];
        if (mode == PencilMode::Scale) {
            slot(j) += c * (sp[i] * tp[j]);
        } else {
            // (x + lambda)^i = sum_k C(i,k) lambda^k x^(i-k)
            for (unsigned k = 0; k <= i; ++k)
                slot(k) += (c * GaussRat(static_cast<long>(binomial(i, k)))) * (sp[i - k] * tp[j]);
        }
    }
    PencilPoly out(n, std::move(coeffs));
    if (out.degree() > kMaxPencilDegree) throw PreconditionViolated("pencil degree exceeds 64");
    return out;
}

/// Scalars annihilating every entry of a pencil. `all_lambda` marks the
/// identically zero pencil.
struct CommonRoots {
    bool all_lambda = false;
    std::vector<GaussRat> exact;
    std::vector<NumericScalar> numeric;
};

inline CommonRoots common_roots(const PencilPoly& pencil) {
    CommonRoots out;
    if (pencil.is_zero()) {
        out.all_lambda = true;
        return out;
    }
    UPoly g;
    for (std::size_t r = 0; r < pencil.dim(); ++r)
        for (std::size_t c = 0; c < pencil.dim(); ++c) {
            g = gcd(g, pencil.entry(r, c));
            if (g.degree() == 0) return out;
        }
    auto roots = find_roots(g);
    out.exact = std::move(roots.exact);
    for (auto& nr : roots.numeric) {
        nr.residual = pencil.scaled_residual(Complex(nr.value.real(), nr.value.imag()));
        if (nr.residual < kNumericTolerance) out.numeric.push_back(nr);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Witnesses

using WitnessScalar = std::variant<GaussRat, NumericScalar>;

enum class Verification { Exact, Numeric };

struct SplitWitness {
    WitnessScalar lambda;
    unsigned l = 0;
    unsigned m = 0;
    unsigned n = 0;             // order of the query
    unsigned strict_order = 0;  // least order at which the combined relation vanishes
    std::string relation;
    DeltaKind delta = DeltaKind::TensorProduct;
    Verification verified = Verification::Exact;
    double residual = 0;
    std::optional<WitnessScalar> mu;                          // second-factor scale (tensor products)
    std::optional<GaussRat> rotation;                         // nu with nu^2 = lambda (n-symmetries)
    std::optional<GaussRat> shift;                            // raw Helton shift (tensor-sum n-symmetries)
    std::optional<std::pair<GaussRat, GaussRat>> alpha_beta;  // lambda = alpha + beta
};

inline bool is_exact(const WitnessScalar& s) { return std::holds_alternative<GaussRat>(s); }

inline Complex approx(const WitnessScalar& s) {
    if (const auto* g = std::get_if<GaussRat>(&s)) return g->to_complex();
    const auto& v = std::get<NumericScalar>(s).value;
    return {v.real(), v.imag()};
}

namespace detail {

/// Candidate scalar: exact when known, always with an approximation.
struct Value {
    std::optional<GaussRat> exact;
    Complex approx;

    static Value of(const GaussRat& g) { return {g, g.to_complex()}; }
    static Value of(const NumericScalar& s) { return {std::nullopt, Complex(s.value.real(), s.value.imag())}; }

    WitnessScalar scalar(double residual) const {
        if (exact) return *exact;
        return NumericScalar{std::complex<double>(static_cast<double>(approx.real()), static_cast<double>(approx.imag())),
                             residual};
    }
};

inline bool near(Complex a, Complex b) { return std::abs(a - b) <= 1e-7L * (1 + std::abs(a) + std::abs(b)); }

/// Residual of the pencil at v; exact zero test when v is exact.
inline std::optional<double> vanishes(const PencilPoly& p, const Value& v, bool allow_numeric) {
    if (v.exact) {
        if (p(*v.exact).is_zero()) return 0.0;
        return std::nullopt;
    }
    if (!allow_numeric) return std::nullopt;
    double r = p.scaled_residual(v.approx);
    if (r < kNumericTolerance) return r;
    return std::nullopt;
}

inline void check_caps(unsigned n, std::size_t combined_dim, const SplitOptions& opt) {
    if (n < 1) throw PreconditionViolated("order n must be >= 1");
    if (n > kMaxOrder) throw PreconditionViolated("order n exceeds cap 16");
    if (combined_dim > opt.max_dim)
        throw PreconditionViolated("combined dimension " + std::to_string(combined_dim) + " exceeds cap " +
                                   std::to_string(opt.max_dim));
}

/// Least order <= cap of Phi(p^k) at the combined pair.
inline std::optional<unsigned> combined_order(const RelationKind& kind, const CombinedPair& pair, unsigned cap) {
    return min_order(kind, pair.s, pair.t, cap);
}

/// Candidates of a root set: roots of this level that were not roots of the
/// previous level, so the level is minimal for each of them.
inline std::vector<Value> new_candidates(const CommonRoots& now, const CommonRoots* prev, bool numeric) {
    std::vector<Value> out;
    for (const auto& r : now.exact) {
        if (prev && std::find(prev->exact.begin(), prev->exact.end(), r) != prev->exact.end()) continue;
        out.push_back(Value::of(r));
    }
    if (numeric) {
        for (const auto& r : now.numeric) {
            Value v = Value::of(r);
            bool seen = false;
            if (prev)
                for (const auto& q : prev->numeric) seen = seen || near(v.approx, Complex(q.value.real(), q.value.imag()));
            if (!seen) out.push_back(v);
        }
    }
    return out;
}

/// Scale pairing: the two factors use p_lambda and p_mu with (lambda mu)^beta = B.
struct ScalePairing {
    unsigned beta = 1;
    GaussRat b = 1;
};

inline ScalePairing pairing_for(const RelationKind& kind) {
    if (kind.tag() != RelationKind::Tag::General) return {};
    auto cls = classify_qh(kind.poly());
    if (!cls || !cls->canonical_form)
        throw PreconditionViolated("tensor-product splitting needs a canonical quasi-homogeneous relation");
    return std::visit([](const auto& f) { return ScalePairing{f.beta, f.b}; }, *cls->canonical_form);
}

inline bool pairing_holds(const ScalePairing& pr, const Value& lambda, const Value& mu) {
    if (lambda.exact && mu.exact) return (*lambda.exact * *mu.exact).pow(pr.beta) == pr.b;
    Complex lhs = std::pow(lambda.approx * mu.approx, static_cast<long double>(pr.beta));
    return near(lhs, pr.b.to_complex());
}

/// Exact scale evaluation Phi(p(x, c y)^k)(S,T), computed from the
/// substituted polynomial rather than from a pencil.
inline ExactMatrix scaled_relation(const CommPoly& p, const GaussRat& c, const ExactMatrix& s, const ExactMatrix& t,
                                   unsigned k) {
    return nc_eval(phi(poly_pow(scale_vars(p, 1, c), k)), s, t);
}

inline ExactMatrix shifted_relation(const CommPoly& p, const GaussRat& c, const ExactMatrix& s, const ExactMatrix& t,
                                    unsigned k) {
    return nc_eval(phi(poly_pow(shift_x(p, c), k)), s, t);
}

/// Asserts that order k is the least order at which `eval(k)` vanishes.
template <class Eval>
void assert_strict(Eval&& eval, unsigned k, const char* what) {
    if (!eval(k).is_zero())
        throw InternalContradiction(Contradiction::NoSplit, std::string(what) + " does not vanish at reported order");
    if (k > 1 && eval(k - 1).is_zero())
        throw InternalContradiction(Contradiction::NoSplit, std::string(what) + " reported order is not minimal");
}

inline bool sum_is_exact(const RelationKind& kind) { return kind.tag() != RelationKind::Tag::General; }

/// Strict order of the combined relation must equal l + m - 1.
inline void assert_sum(const SplitWitness& w, bool enforce) {
    if (enforce && w.l + w.m != w.strict_order + 1)
        throw InternalContradiction(Contradiction::NoSplit,
                                    "l + m = " + std::to_string(w.l + w.m) + " but combined strict order is " +
                                        std::to_string(w.strict_order));
    if (w.l + w.m > w.n + 1)
        throw InternalContradiction(Contradiction::NoSplit, "l + m exceeds n + 1");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Tensor products

/// Recovers (lambda, l, m) from Phi(p^n)(S1(x)S2, T1(x)T2) = 0 so that
/// Phi(p_lambda^l)(S1,T1) = 0 and Phi(p_mu^m)(S2,T2) = 0 with
/// (lambda mu)^beta = B (mu = 1/lambda for n-inverse and Helton relations).
inline SplitWitness split_tensor_product(const ExactMatrix& s1, const ExactMatrix& t1, const ExactMatrix& s2,
                                         const ExactMatrix& t2, unsigned n, const RelationKind& kind,
                                         const SplitOptions& opt = {}) {
    require_same_dim(s1, t1);
    require_same_dim(s2, t2);
    detail::check_caps(n, s1.dim() * s2.dim(), opt);
    const auto pairing = detail::pairing_for(kind);
    if (kind.tag() != RelationKind::Tag::NInverse) {
        for (const auto* m : {&s1, &t1, &s2, &t2})
            if (!m->is_invertible())
                throw PreconditionViolated("tensor-product splitting needs invertible S_i and T_i");
    }
    const auto pair = combine(DeltaKind::TensorProduct, s1, t1, s2, t2);
    auto n0 = detail::combined_order(kind, pair, n);
    if (!n0) throw NotSatisfied("combined relation does not vanish at n = " + std::to_string(n));

    std::vector<PencilPoly> side2;
    std::vector<CommonRoots> side2_roots;
    auto pencil2 = [&](unsigned m) -> const PencilPoly& {
        while (side2.size() < m) side2.push_back(lambda_pencil(kind, PencilMode::Scale, side2.size() + 1, s2, t2));
        return side2[m - 1];
    };
    auto roots2 = [&](unsigned m) -> const CommonRoots& {
        while (side2_roots.size() < m) side2_roots.push_back(common_roots(pencil2(side2_roots.size() + 1)));
        return side2_roots[m - 1];
    };

    // eta candidates with eta^beta = B, used when a side-2 pencil vanishes identically
    auto eta_candidates = [&]() {
        std::vector<GaussRat> cs(pairing.beta + 1);
        cs[0] = -pairing.b;
        cs[pairing.beta] = 1;
        return find_roots(UPoly(cs));
    };

    auto search = [&](bool numeric) -> std::optional<SplitWitness> {
        std::optional<CommonRoots> prev;
        for (unsigned l = 1; l <= n; ++l) {
            PencilPoly p1 = lambda_pencil(kind, PencilMode::Scale, l, s1, t1);
            CommonRoots r1 = common_roots(p1);
            std::vector<detail::Value> lambdas;
            if (r1.all_lambda) {
                if (!(prev && prev->all_lambda)) lambdas.push_back(detail::Value::of(GaussRat(1)));
            } else {
                lambdas = detail::new_candidates(r1, prev ? &*prev : nullptr, numeric);
            }
            for (const auto& lam : lambdas) {
                if (lam.exact ? lam.exact->is_zero() : std::abs(lam.approx) < 1e-12L) continue;
                auto res1 = detail::vanishes(p1, lam, numeric);
                if (!r1.all_lambda && !res1) continue;
                for (unsigned m = 1; m + l <= n + 1; ++m) {
                    std::vector<detail::Value> mus;
                    if (pairing.beta == 1) {
                        if (lam.exact) mus.push_back(detail::Value::of(pairing.b / *lam.exact));
                        else mus.push_back({std::nullopt, pairing.b.to_complex() / lam.approx});
                    } else {
                        const auto& r2 = roots2(m);
                        if (r2.all_lambda) {
                            auto etas = eta_candidates();
                            for (const auto& e : etas.exact)
                                mus.push_back(lam.exact ? detail::Value::of(e / *lam.exact)
                                                        : detail::Value{std::nullopt, e.to_complex() / lam.approx});
                            if (numeric)
                                for (const auto& e : etas.numeric)
                                    mus.push_back({std::nullopt, Complex(e.value.real(), e.value.imag()) / lam.approx});
                        } else {
                            for (const auto& r : r2.exact) mus.push_back(detail::Value::of(r));
                            if (numeric)
                                for (const auto& r : r2.numeric) mus.push_back(detail::Value::of(r));
                        }
                    }
                    for (const auto& mu : mus) {
                        if (!numeric && !mu.exact) continue;
                        if (!detail::pairing_holds(pairing, lam, mu)) continue;
                        auto res2 = detail::vanishes(pencil2(m), mu, numeric);
                        if (!res2) continue;
                        bool exact = lam.exact && mu.exact;
                        if (numeric && exact) continue;  // found by the exact pass already
                        double residual = std::max(res1.value_or(0.0), *res2);
                        SplitWitness w;
                        w.lambda = lam.scalar(res1.value_or(0.0));
                        w.mu = mu.scalar(*res2);
                        w.l = l;
                        w.m = m;
                        w.n = n;
                        w.strict_order = *n0;
                        w.relation = kind.name();
                        w.delta = DeltaKind::TensorProduct;
                        w.verified = exact ? Verification::Exact : Verification::Numeric;
                        w.residual = exact ? 0.0 : residual;
                        return w;
                    }
                }
            }
            prev = std::move(r1);
        }
        return std::nullopt;
    };

    auto found = search(false);
    if (!found && opt.numeric_fallback) found = search(true);
    if (!found) throw InternalContradiction(Contradiction::NoSplit, "no splitting witness found");

    SplitWitness& w = *found;
    if (w.verified == Verification::Exact) {
        const GaussRat lam = std::get<GaussRat>(w.lambda);
        const GaussRat mu = std::get<GaussRat>(*w.mu);
        detail::assert_strict([&](unsigned k) { return detail::scaled_relation(kind.poly(), lam, s1, t1, k); }, w.l,
                              "first factor relation");
        detail::assert_strict([&](unsigned k) { return detail::scaled_relation(kind.poly(), mu, s2, t2, k); }, w.m,
                              "second factor relation");
    }
    detail::assert_sum(w, detail::sum_is_exact(kind));
    return w;
}

/// T1 (x) T2 an n-symmetry: returns lambda with |lambda| = 1,
/// gamma_l(T1*, lambda T1) = 0 and gamma_m(T2*, conj(lambda) T2) = 0. When
/// lambda has a square root nu in Q(i), nu T1 is an l-symmetry and
/// conj(nu) T2 an m-symmetry; nu is reported as `rotation`.
inline SplitWitness split_nsym(const ExactMatrix& t1, const ExactMatrix& t2, unsigned n, const SplitOptions& opt = {}) {
    if (!t1.is_invertible() || !t2.is_invertible())
        throw PreconditionViolated("n-symmetry splitting needs left-invertible T1 and T2");
    const ExactMatrix t1s = adjoint(t1), t2s = adjoint(t2);
    SplitWitness w = split_tensor_product(t1s, t1, t2s, t2, n, RelationKind::helton(), opt);
    w.relation = "nsym";
    if (const auto* lam = std::get_if<GaussRat>(&w.lambda)) {
        if (!(*lam * lam->conj()).is_one())
            throw InternalContradiction(Contradiction::ModulusViolation, "|lambda| != 1 for lambda = " + lam->to_string());
        if (auto nu = gauss_sqrt(*lam)) {
            const ExactMatrix a = *nu * t1, b = nu->conj() * t2;
            if (!gamma_n(adjoint(a), a, w.l).is_zero() || !gamma_n(adjoint(b), b, w.m).is_zero())
                throw InternalContradiction(Contradiction::ModulusViolation, "rotated factors are not symmetries");
            w.rotation = *nu;
        }
    } else {
        if (std::abs(std::abs(approx(w.lambda)) - 1.0L) > kNumericTolerance)
            throw InternalContradiction(Contradiction::ModulusViolation, "|lambda| != 1 (numeric)");
    }
    return w;
}

// ---------------------------------------------------------------------------
// Nilpotent perturbation

/// Phi(p^n)(S(x)I + I(x)Q, T(x)I) = 0 with p linear in x: returns the unique
/// eigenvalue lambda of Q, m = index of Q - lambda, and the least l with
/// Phi(p^l)(S + lambda, T) = 0.
inline SplitWitness split_perturbation(const ExactMatrix& s, const ExactMatrix& t, const ExactMatrix& q, unsigned n,
                                       const RelationKind& kind, const SplitOptions& opt = {}) {
    require_same_dim(s, t);
    detail::check_caps(n, s.dim() * q.dim(), opt);
    if (!is_linear_in_x(kind.poly())) throw PreconditionViolated("perturbation splitting needs p linear in x");
    if (q.is_zero()) throw PreconditionViolated("perturbation splitting needs Q nonzero");
    if (s.is_zero() && t.is_zero()) throw PreconditionViolated("perturbation splitting needs S, T not both zero");
    const auto pair = combine(DeltaKind::PerturbX, s, t, q, q);
    auto n0 = detail::combined_order(kind, pair, n);
    if (!n0) throw NotSatisfied("perturbed relation does not vanish at n = " + std::to_string(n));

    const GaussRat lambda = q.trace() / GaussRat(static_cast<long>(q.dim()));
    const ExactMatrix qs = q - ExactMatrix::scalar(q.dim(), lambda);
    auto m = nilpotency_index(qs);
    if (!m) throw InternalContradiction(Contradiction::QNotShiftedNilpotent, "Q - trace(Q)/dim is not nilpotent");
    const ExactMatrix shifted = s + ExactMatrix::scalar(s.dim(), lambda);
    auto l = min_order(kind, shifted, t, n);
    if (!l) throw InternalContradiction(Contradiction::NoSplit, "shifted relation never vanishes up to n");

    SplitWitness w;
    w.lambda = lambda;
    w.l = *l;
    w.m = *m;
    w.n = n;
    w.strict_order = *n0;
    w.relation = kind.name();
    w.delta = DeltaKind::PerturbX;
    detail::assert_strict([&](unsigned k) { return detail::shifted_relation(kind.poly(), lambda, s, t, k); }, w.l,
                          "shifted relation");
    detail::assert_strict([&](unsigned k) { return qs.pow(k); }, w.m, "nilpotent part");
    detail::assert_sum(w, detail::sum_is_exact(kind));
    return w;
}

// ---------------------------------------------------------------------------
// Tensor sums (Helton relation)

/// gamma_n(S1(x)I + I(x)S2, T1(x)I + I(x)T2) = 0: returns lambda with
/// gamma_l(S1 + lambda, T1) = 0 and gamma_m(S2 - lambda, T2) = 0.
inline SplitWitness split_tensor_sum_helton(const ExactMatrix& s1, const ExactMatrix& t1, const ExactMatrix& s2,
                                            const ExactMatrix& t2, unsigned n, const SplitOptions& opt = {}) {
    require_same_dim(s1, t1);
    require_same_dim(s2, t2);
    detail::check_caps(n, s1.dim() * s2.dim(), opt);
    for (const auto* m : {&s1, &t1, &s2, &t2})
        if (m->is_zero()) throw PreconditionViolated("tensor-sum splitting needs nonzero S_i and T_i");
    const RelationKind kind = RelationKind::helton();
    const auto pair = combine(DeltaKind::TensorSum, s1, t1, s2, t2);
    auto n0 = detail::combined_order(kind, pair, n);
    if (!n0) throw NotSatisfied("tensor-sum relation does not vanish at n = " + std::to_string(n));

    std::vector<PencilPoly> side2;
    auto pencil2 = [&](unsigned m) -> const PencilPoly& {
        while (side2.size() < m) side2.push_back(lambda_pencil(kind, PencilMode::Shift, side2.size() + 1, s2, t2));
        return side2[m - 1];
    };

    auto search = [&](bool numeric) -> std::optional<SplitWitness> {
        std::optional<CommonRoots> prev;
        for (unsigned l = 1; l <= n; ++l) {
            PencilPoly p1 = lambda_pencil(kind, PencilMode::Shift, l, s1, t1);
            CommonRoots r1 = common_roots(p1);
            for (const auto& lam : detail::new_candidates(r1, prev ? &*prev : nullptr, numeric)) {
                if (numeric && lam.exact) continue;
                detail::Value neg = lam.exact ? detail::Value::of(-*lam.exact) : detail::Value{std::nullopt, -lam.approx};
                auto res1 = detail::vanishes(p1, lam, numeric);
                if (!res1) continue;
                for (unsigned m = 1; m + l <= n + 1; ++m) {
                    auto res2 = detail::vanishes(pencil2(m), neg, numeric);
                    if (!res2) continue;
                    SplitWitness w;
                    w.lambda = lam.scalar(std::max(*res1, *res2));
                    w.l = l;
                    w.m = m;
                    w.n = n;
                    w.strict_order = *n0;
                    w.relation = kind.name();
                    w.delta = DeltaKind::TensorSum;
                    w.verified = lam.exact ? Verification::Exact : Verification::Numeric;
                    w.residual = lam.exact ? 0.0 : std::max(*res1, *res2);
                    if (lam.exact) {
                        GaussRat half = *lam.exact / GaussRat(2);
                        w.alpha_beta = std::make_pair(half, half);
                    }
                    return w;
                }
            }
            prev = std::move(r1);
        }
        return std::nullopt;
    };

    auto found = search(false);
    if (!found && opt.numeric_fallback) found = search(true);
    if (!found) throw InternalContradiction(Contradiction::NoSplit, "no tensor-sum witness found");

    SplitWitness& w = *found;
    if (w.verified == Verification::Exact) {
        const GaussRat lam = std::get<GaussRat>(w.lambda);
        detail::assert_strict([&](unsigned k) { return gamma_n(s1 + ExactMatrix::scalar(s1.dim(), lam), t1, k); }, w.l,
                              "first factor relation");
        detail::assert_strict([&](unsigned k) { return gamma_n(s2 - ExactMatrix::scalar(s2.dim(), lam), t2, k); }, w.m,
                              "second factor relation");
        if (w.alpha_beta) {
            const auto& [a, b] = *w.alpha_beta;
            const auto id1 = ExactMatrix::identity(s1.dim()), id2 = ExactMatrix::identity(s2.dim());
            if (!gamma_n(s1 + a * id1, t1 - b * id1, w.l).is_zero() || !gamma_n(s2 - a * id2, t2 + b * id2, w.m).is_zero())
                throw InternalContradiction(Contradiction::CrossCheck, "alpha + beta reparametrization failed");
        }
    }
    detail::assert_sum(w, true);
    return w;
}

/// T1(x)I + I(x)T2 an n-symmetry: returns pure imaginary lambda with
/// T1 + lambda an l-symmetry and T2 - lambda an m-symmetry. `shift` holds the
/// underlying Helton shift s with gamma_l(T1* + s, T1) = 0 (s = -2 lambda).
inline SplitWitness split_nsym2(const ExactMatrix& t1, const ExactMatrix& t2, unsigned n, const SplitOptions& opt = {}) {
    SplitWitness w = split_tensor_sum_helton(adjoint(t1), t1, adjoint(t2), t2, n, opt);
    w.relation = "nsym2";
    if (const auto* s = std::get_if<GaussRat>(&w.lambda)) {
        if (!(*s + s->conj()).is_zero())
            throw InternalContradiction(Contradiction::ImaginaryViolation, "shift is not pure imaginary: " + s->to_string());
        const GaussRat nu = -*s / GaussRat(2);
        w.shift = *s;
        w.lambda = nu;
        const ExactMatrix a = t1 + ExactMatrix::scalar(t1.dim(), nu);
        const ExactMatrix b = t2 - ExactMatrix::scalar(t2.dim(), nu);
        if (!gamma_n(adjoint(a), a, w.l).is_zero() || !gamma_n(adjoint(b), b, w.m).is_zero())
            throw InternalContradiction(Contradiction::ImaginaryViolation, "shifted factors are not symmetries");
    } else {
        if (std::abs(approx(w.lambda).real()) > kNumericTolerance)
            throw InternalContradiction(Contradiction::ImaginaryViolation, "shift is not pure imaginary (numeric)");
        auto ns = std::get<NumericScalar>(w.lambda);
        ns.value = -ns.value / 2.0;
        w.lambda = ns;
    }
    return w;
}

} // namespace hkit
