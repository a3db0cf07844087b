#include "support.hpp"

#include <gtest/gtest.h>

using namespace hkit;

TEST(ExactMatrix, BasicsAndProducts) {
    ExactMatrix a{{1, 2}, {3, 4}};
    ExactMatrix b{{0, 1}, {1, 0}};
    EXPECT_EQ(a * b, (ExactMatrix{{2, 1}, {4, 3}}));
    EXPECT_EQ(a.trace(), GaussRat(5));
    EXPECT_TRUE(ExactMatrix::identity(3).is_identity());
    EXPECT_EQ(a.pow(3), a * a * a);
    EXPECT_THROW(a * ExactMatrix::identity(3), DimensionMismatch);
    EXPECT_THROW((ExactMatrix{{1, 2}, {3}}), DimensionMismatch);
}

TEST(ExactMatrix, InverseAgainstProduct) {
    Rng rng(31);
    int invertible = 0;
    for (int k = 0; k < 100; ++k) {
        ExactMatrix a = rng.matrix(1 + k % 4, 3);
        auto inv = a.inverse();
        if (!inv) continue;
        ++invertible;
        EXPECT_TRUE((a * *inv).is_identity());
        EXPECT_TRUE((*inv * a).is_identity());
    }
    EXPECT_GT(invertible, 50);
    EXPECT_FALSE((ExactMatrix{{1, 2}, {2, 4}}).is_invertible());
}

TEST(ExactMatrix, KroneckerMixedProduct) {
    Rng rng(32);
    for (int k = 0; k < 30; ++k) {
        ExactMatrix a = rng.matrix(2, 2), b = rng.matrix(3, 2), c = rng.matrix(2, 2), d = rng.matrix(3, 2);
        EXPECT_EQ(kron(a, b) * kron(c, d), kron(a * c, b * d));
        EXPECT_EQ(adjoint(kron(a, b)), kron(adjoint(a), adjoint(b)));
    }
    ExactMatrix a{{1, 2}, {3, 4}};
    ExactMatrix k = kron(a, ExactMatrix{{0, 1}, {1, 0}});
    EXPECT_EQ(k(0, 1), GaussRat(1));
    EXPECT_EQ(k(2, 3), GaussRat(4));
    EXPECT_EQ(k(3, 0), GaussRat(3));
    EXPECT_EQ(k(1, 2), GaussRat(2));
}

TEST(ExactMatrix, TensorSumAgainstOracle) {
    Rng rng(33);
    ExactMatrix a = rng.matrix(2, 3), b = rng.matrix(3, 3);
    auto ia = oracle::ident(2), ib = oracle::ident(3);
    auto expect = oracle::add(oracle::kron(testsupport::to_oracle(a), ib), oracle::kron(ia, testsupport::to_oracle(b)));
    EXPECT_EQ(tensor_sum(a, b), testsupport::from_oracle(expect));
}

TEST(ExactMatrix, NilpotencyIndex) {
    EXPECT_EQ(nilpotency_index(ExactMatrix::zero(3)), 1u);
    EXPECT_EQ(nilpotency_index(ExactMatrix{{0, 1}, {0, 0}}), 2u);
    EXPECT_EQ(nilpotency_index(ExactMatrix{{0, 1, 5}, {0, 0, 1}, {0, 0, 0}}), 3u);
    EXPECT_FALSE(nilpotency_index(ExactMatrix::identity(2)).has_value());
    // similar to a nilpotent, not triangular
    ExactMatrix p{{1, 1}, {1, 2}};
    ExactMatrix n = p * ExactMatrix{{0, 1}, {0, 0}} * *p.inverse();
    EXPECT_EQ(nilpotency_index(n), 2u);
}

TEST(ExactMatrix, AdjointConjugates) {
    ExactMatrix a{{GaussRat(1, 2), 3}, {GaussRat(0, -1), 4}};
    ExactMatrix s = adjoint(a);
    EXPECT_EQ(s(0, 1), GaussRat(0, 1));
    EXPECT_EQ(s(1, 0), GaussRat(3));
    EXPECT_EQ(s(0, 0), GaussRat(1, -2));
    EXPECT_EQ(adjoint(s), a);
}

TEST(ExactMatrix, JsonRoundTrip) {
    Rng rng(34);
    ExactMatrix a = rng.matrix(3, 4);
    EXPECT_EQ(matrix_from_json(matrix_to_json(a)), a);
    auto j = Json::parse(R"({"dim":2,"entries":[["1/2+i",0],[1,"-3"]]})");
    EXPECT_EQ(matrix_from_json(j), (ExactMatrix{{GaussRat(mpq_class(1, 2), mpq_class(1)), 0}, {1, -3}}));
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"dim":2,"entries":[[1,2]]})")), SchemaError);
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"dim":1,"entries":[[1]],"x":1})")), SchemaError);
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"dim":1,"entries":[[1.5]]})")), SchemaError);
    EXPECT_THROW(matrix_from_json(Json::parse(R"({"dim":1,"entries":[["1/"]]})")), ParseError);
}
