#include "support.hpp"

#include <gtest/gtest.h>

using namespace hkit;

TEST(Generators, StrictInversePairs) {
    auto [s, t] = gen_strict_inverse_pair(1, 1, 1, 0);
    EXPECT_TRUE((s * t).is_identity());
    for (unsigned l = 1; l <= 4; ++l)
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            GaussRat c = GaussRat(1 + seed, seed % 2);
            auto [a, b] = gen_strict_inverse_pair(l, 4, c, seed);
            EXPECT_EQ(min_order(RelationKind::ninverse(), a, b, l + 2), l);
            EXPECT_EQ(a, testsupport::from_oracle(testsupport::to_oracle(a)));
            EXPECT_TRUE(oracle::is_zero(oracle::beta(testsupport::to_oracle(a), testsupport::to_oracle(b), l)));
        }
    EXPECT_THROW(gen_strict_inverse_pair(3, 2, 1, 0), PreconditionViolated);
    EXPECT_THROW(gen_strict_inverse_pair(1, 2, 0, 0), PreconditionViolated);
}

TEST(Generators, NSymmetriesAreStrictAndOddOnly) {
    for (unsigned order : {1u, 3u, 5u}) {
        ExactMatrix t = gen_nsymmetry(order, 3, order);
        EXPECT_EQ(min_order(RelationKind::helton(), adjoint(t), t, order + 2), order);
    }
    EXPECT_EQ(gen_nsymmetry(1, 2, 9), adjoint(gen_nsymmetry(1, 2, 9)));
    EXPECT_THROW(gen_nsymmetry(2, 3, 0), PreconditionViolated);
    EXPECT_THROW(gen_nsymmetry(7, 3, 0), PreconditionViolated);
}

TEST(Generators, SeedDeterminism) {
    InstanceSpec spec;
    spec.l = 2;
    spec.m = 3;
    spec.lambda = GaussRat(2, 1);
    spec.seed = 77;
    auto a = gen_combined_instance(spec);
    auto b = gen_combined_instance(spec);
    EXPECT_EQ(a.operands, b.operands);
    spec.seed = 78;
    EXPECT_NE(gen_combined_instance(spec).operands, a.operands);
}

TEST(Generators, NamedExamples) {
    InstanceSpec spec;
    spec.delta = DeltaKind::PerturbX;
    spec.l = 2;
    spec.m = 2;
    spec.lambda = 0;
    auto inst = gen_combined_instance(spec);
    EXPECT_EQ(inst.n, 3u);
    auto w = split_perturbation(inst.at("S"), inst.at("T"), inst.at("Q"), inst.n, spec.relation);
    EXPECT_EQ(std::get<GaussRat>(w.lambda), GaussRat(0));
    EXPECT_EQ(w.l, 2u);
    EXPECT_EQ(w.m, 2u);

    InstanceSpec ts;
    ts.relation = RelationKind::helton();
    ts.delta = DeltaKind::TensorSum;
    ts.adjoint = true;
    ts.l = 1;
    ts.m = 3;
    ts.lambda = GaussRat::i();
    auto nsym2 = gen_combined_instance(ts);
    auto v = split_nsym2(nsym2.at("T1"), nsym2.at("T2"), nsym2.n);
    EXPECT_EQ(v.l + v.m, 4u);
    EXPECT_TRUE((std::get<GaussRat>(v.lambda) + std::get<GaussRat>(v.lambda).conj()).is_zero());
}

TEST(Generators, InconsistentSpecsRejected) {
    InstanceSpec spec;
    spec.lambda = 0;
    EXPECT_THROW(gen_combined_instance(spec), PreconditionViolated);
    spec.lambda = 1;
    spec.relation = RelationKind::ninverse();
    spec.adjoint = true;
    EXPECT_THROW(gen_combined_instance(spec), PreconditionViolated);
    InstanceSpec even;
    even.relation = RelationKind::helton();
    even.adjoint = true;
    even.l = 2;
    EXPECT_THROW(gen_combined_instance(even), PreconditionViolated);
    InstanceSpec ts;
    ts.relation = RelationKind::ninverse();
    ts.delta = DeltaKind::TensorSum;
    EXPECT_THROW(gen_combined_instance(ts), PreconditionViolated);
}

TEST(Generators, RoundTripsThroughSolvers) {
    Rng pick(91);
    for (unsigned l = 1; l <= 3; ++l)
        for (unsigned m = 1; m + l <= 4; ++m)
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                InstanceSpec spec;
                spec.l = l;
                spec.m = m;
                spec.seed = seed;
                spec.lambda = pick.nonzero_gauss(3);
                spec.relation = seed % 2 ? RelationKind::helton() : RelationKind::ninverse();
                auto inst = gen_combined_instance(spec);
                auto w = split_tensor_product(inst.at("S1"), inst.at("T1"), inst.at("S2"), inst.at("T2"), inst.n,
                                              spec.relation);
                EXPECT_EQ(w.verified, Verification::Exact);
                EXPECT_EQ(w.l + w.m, inst.n + 1);
            }
}
