#pragma once

#include "hkit/hkit.hpp"
#include "oracle/brute_force.hpp"

#include <fstream>
#include <string>

namespace testsupport {

inline oracle::Mat to_oracle(const hkit::ExactMatrix& m) {
    oracle::Mat r = oracle::zero(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) r[i][j] = m(i, j);
    return r;
}

inline hkit::ExactMatrix from_oracle(const oracle::Mat& m) {
    hkit::ExactMatrix r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) r(i, j) = m[i][j];
    return r;
}

/// Random polynomial in x, y of total degree <= deg.
inline hkit::CommPoly random_poly(hkit::Rng& rng, unsigned deg, long bound = 3) {
    hkit::CommPoly p;
    for (unsigned i = 0; i <= deg; ++i)
        for (unsigned j = 0; i + j <= deg; ++j)
            if (rng.coin()) p.add_term({i, j}, rng.small_gauss(bound));
    return p;
}

inline hkit::Json golden() {
    std::ifstream in(std::string(HKIT_TEST_DATA) + "/named_oracles.json");
    return hkit::Json::parse(in);
}

} // namespace testsupport
