#include "support.hpp"

#include <gtest/gtest.h>

using namespace hkit;
using testsupport::from_oracle;
using testsupport::to_oracle;

namespace {

ExactMatrix golden_matrix(const Json& j) { return matrix_from_json(j); }

} // namespace

TEST(NcCalculus, PhiIsLinearAndInvertible) {
    Rng rng(41);
    for (int k = 0; k < 50; ++k) {
        CommPoly p = testsupport::random_poly(rng, 3), q = testsupport::random_poly(rng, 3);
        EXPECT_EQ(phi_inverse(phi(p)), p);
        ExactMatrix s = rng.matrix(2, 2), t = rng.matrix(2, 2);
        CommPoly sum = p + q;
        EXPECT_EQ(nc_eval(phi(sum), s, t), nc_eval(phi(p), s, t) + nc_eval(phi(q), s, t));
    }
}

TEST(NcCalculus, NormalOrderingPlacesSLeft) {
    ExactMatrix s{{0, 1}, {0, 0}}, t{{0, 0}, {1, 0}};
    // Phi(xy) = S T, not T S
    EXPECT_EQ(nc_eval(phi(parse_poly("x*y")), s, t), s * t);
    EXPECT_NE(s * t, t * s);
}

TEST(NcCalculus, BetaGammaMatchBruteForce) {
    Rng rng(42);
    for (int k = 0; k < 60; ++k) {
        const std::size_t d = 1 + k % 3;
        ExactMatrix s = rng.matrix(d, 2), t = rng.matrix(d, 2);
        const unsigned n = 1 + static_cast<unsigned>(k % 5);
        EXPECT_EQ(beta_n(s, t, n), from_oracle(oracle::beta(to_oracle(s), to_oracle(t), n)));
        EXPECT_EQ(gamma_n(s, t, n), from_oracle(oracle::gamma(to_oracle(s), to_oracle(t), n)));
        EXPECT_EQ(eval_relation(RelationKind::helton(), s, t, n), gamma_n(s, t, n));
    }
}

TEST(NcCalculus, RelationPowersAgreeWithDirectEvaluation) {
    Rng rng(43);
    for (auto kind : {RelationKind::ninverse(), RelationKind::helton(), RelationKind::general(parse_poly("x^2*y - 3*y + i"))}) {
        ExactMatrix s = rng.matrix(2, 2), t = rng.matrix(2, 2);
        RelationPowers pw(kind, s, t);
        for (unsigned n = 1; n <= 5; ++n) EXPECT_EQ(pw.next(), eval_relation(kind, s, t, n)) << kind.name() << " " << n;
    }
}

TEST(NcCalculus, NamedOraclesMatchGolden) {
    Json g = testsupport::golden();
    ExactMatrix t = golden_matrix(g["isometry"]["T"]);
    for (unsigned k = 1; k <= 3; ++k) {
        ExactMatrix expect = golden_matrix(g["isometry"]["beta"][std::to_string(k)]);
        EXPECT_EQ(beta_n(adjoint(t), t, k), expect);
        EXPECT_EQ(from_oracle(oracle::beta(oracle::adj(to_oracle(t)), to_oracle(t), k)), expect);
    }
    EXPECT_EQ(min_order(RelationKind::ninverse(), adjoint(t), t, 10), 3u);
    EXPECT_EQ(golden_matrix(g["isometry"]["beta"]["2"]), (ExactMatrix{{0, 0}, {0, 2}}));

    ExactMatrix n = golden_matrix(g["symmetry"]["T"]);
    for (unsigned k = 1; k <= 3; ++k) {
        ExactMatrix expect = golden_matrix(g["symmetry"]["gamma"][std::to_string(k)]);
        EXPECT_EQ(gamma_n(adjoint(n), n, k), expect);
        EXPECT_EQ(from_oracle(oracle::gamma(oracle::adj(to_oracle(n)), to_oracle(n), k)), expect);
    }
    EXPECT_EQ(min_order(RelationKind::helton(), adjoint(n), n, 10), 3u);
    EXPECT_EQ(golden_matrix(g["symmetry"]["gamma"]["2"]), (ExactMatrix{{0, 0}, {0, -2}}));
}

TEST(NcCalculus, CombinedEvaluationMatchesGolden) {
    Json g = testsupport::golden();
    const auto& tp = g["tensor_product"];
    for (unsigned k = 1; k <= 2; ++k)
        EXPECT_EQ(eval_combined(RelationKind::ninverse(), DeltaKind::TensorProduct, golden_matrix(tp["S1"]),
                                golden_matrix(tp["T1"]), golden_matrix(tp["S2"]), golden_matrix(tp["T2"]), k),
                  golden_matrix(tp["combined_beta"][std::to_string(k)]));
    const auto& pt = g["perturbation"];
    for (unsigned k = 1; k <= 3; ++k)
        EXPECT_EQ(eval_combined(RelationKind::ninverse(), DeltaKind::PerturbX, golden_matrix(pt["S"]),
                                golden_matrix(pt["T"]), golden_matrix(pt["Q"]), golden_matrix(pt["Q"]), k),
                  golden_matrix(pt["combined_beta"][std::to_string(k)]));
}

TEST(NcCalculus, DiagramCommutesForTensorProducts) {
    Rng rng(44);
    for (int k = 0; k < 40; ++k) {
        CommPoly p = testsupport::random_poly(rng, 3);
        ExactMatrix s1 = rng.matrix(2, 2), t1 = rng.matrix(2, 2), s2 = rng.matrix(2, 2), t2 = rng.matrix(2, 2);
        ExactMatrix expect = ExactMatrix::zero(4);
        for (const auto& [e, c] : p.terms())
            expect += c * kron(s1.pow(e[0]) * t1.pow(e[1]), s2.pow(e[0]) * t2.pow(e[1]));
        EXPECT_EQ(nc_eval(phi(p), kron(s1, s2), kron(t1, t2)), expect);
    }
}

TEST(NcCalculus, MinOrderAndErrors) {
    ExactMatrix s{{1}}, t{{1}};
    EXPECT_EQ(min_order(RelationKind::ninverse(), s, t, 4), 1u);
    EXPECT_FALSE(min_order(RelationKind::ninverse(), ExactMatrix{{2}}, t, 4).has_value());
    EXPECT_THROW(min_order(RelationKind::ninverse(), s, t, 0), PreconditionViolated);
    EXPECT_THROW(beta_n(s, ExactMatrix::identity(2), 1), DimensionMismatch);
    EXPECT_THROW(eval_combined(RelationKind::helton(), DeltaKind::TensorSum, s, t, s, t, 0), PreconditionViolated);
    EXPECT_THROW(RelationKind::general(CommPoly()), PreconditionViolated);
    EXPECT_EQ(RelationKind::general(parse_poly("x*y^2 - 2")).name(), "general:x*y^2 - 2");
}

TEST(NcCalculus, BetaDefinitionMatchesRecursionOnRandomPairs) {
    Rng rng(45);
    for (int k = 0; k < 80; ++k) {
        const std::size_t d = 1 + k % 3;
        ExactMatrix s = rng.matrix(d, 2), t = rng.matrix(d, 2);
        ExactMatrix b = ExactMatrix::identity(d), g = ExactMatrix::identity(d);
        for (unsigned n = 1; n <= 6; ++n) {
            b = s * b * t - b;
            g = s * g - g * t;
            EXPECT_EQ(beta_n(s, t, n), b);
            EXPECT_EQ(gamma_n(s, t, n), g);
        }
    }
}
