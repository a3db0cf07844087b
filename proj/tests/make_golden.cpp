// Regenerates tests/data/named_oracles.json from the brute-force evaluator.
// Run by hand; the checked-in file is what the tests compare against.

#include "oracle/brute_force.hpp"

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

using oracle::GaussRat;
using oracle::Mat;
using Json = nlohmann::ordered_json;

namespace {

Json to_json(const Mat& m) {
    Json rows = Json::array();
    for (const auto& r : m) {
        Json row = Json::array();
        for (const auto& v : r) row.push_back(v.to_string());
        rows.push_back(row);
    }
    return Json{{"dim", m.size()}, {"entries", rows}};
}

void require(bool ok, const char* what) {
    if (!ok) {
        std::cerr << "oracle check failed: " << what << "\n";
        std::exit(1);
    }
}

} // namespace

int main(int argc, char** argv) {
    const Mat i2 = oracle::ident(2);
    const Mat i1 = oracle::ident(1);
    const Mat n{{0, 1}, {0, 0}};
    const Mat t = oracle::add(i2, n);
    Json out;

    {
        Json beta;
        for (unsigned k = 1; k <= 3; ++k) beta[std::to_string(k)] = to_json(oracle::beta(oracle::adj(t), t, k));
        out["isometry"] = Json{{"T", to_json(t)}, {"beta", beta}, {"strict_order", 3}};
    }
    {
        Json gamma;
        for (unsigned k = 1; k <= 3; ++k) gamma[std::to_string(k)] = to_json(oracle::gamma(oracle::adj(n), n, k));
        out["symmetry"] = Json{{"T", to_json(n)}, {"gamma", gamma}, {"strict_order", 3}};
    }
    {
        // (S1, T1, S2, T2) = (I + N, I/2, 1, 2), witness lambda = 2
        const Mat s1 = t, t1 = oracle::scale(GaussRat::ratio(1, 2), i2), s2 = i1, t2 = oracle::scale(2, i1);
        const Mat cs = oracle::kron(s1, s2), ct = oracle::kron(t1, t2);
        Json beta;
        for (unsigned k = 1; k <= 2; ++k) beta[std::to_string(k)] = to_json(oracle::beta(cs, ct, k));
        const GaussRat lambda = 2;
        require(!oracle::is_zero(oracle::beta(s1, oracle::scale(lambda, t1), 1)), "first factor strict");
        require(oracle::is_zero(oracle::beta(s1, oracle::scale(lambda, t1), 2)), "first factor order 2");
        require(oracle::is_zero(oracle::beta(s2, oracle::scale(lambda.inverse(), t2), 1)), "second factor order 1");
        out["tensor_product"] = Json{{"S1", to_json(s1)}, {"T1", to_json(t1)}, {"S2", to_json(s2)}, {"T2", to_json(t2)},
                                     {"combined_beta", beta},
                                     {"witness", {{"lambda", "2"}, {"l", 2}, {"m", 1}, {"n", 2}}}};
    }
    {
        // (S, T, Q) = (I + N, I, N'), witness lambda = 0
        const Mat s = t, tt = i2, q = n;
        const Mat cs = oracle::add(oracle::kron(s, i2), oracle::kron(i2, q));
        const Mat ct = oracle::kron(tt, i2);
        Json beta;
        for (unsigned k = 1; k <= 3; ++k) beta[std::to_string(k)] = to_json(oracle::beta(cs, ct, k));
        require(!oracle::is_zero(oracle::beta(s, tt, 1)) && oracle::is_zero(oracle::beta(s, tt, 2)), "shifted order 2");
        require(!oracle::is_zero(q) && oracle::is_zero(oracle::mul(q, q)), "Q index 2");
        out["perturbation"] = Json{{"S", to_json(s)}, {"T", to_json(tt)}, {"Q", to_json(q)}, {"combined_beta", beta},
                                   {"witness", {{"lambda", "0"}, {"l", 2}, {"m", 2}, {"n", 3}}}};
    }

    const std::string path = argc > 1 ? argv[1] : "named_oracles.json";
    std::ofstream(path) << out.dump(2) << "\n";
    std::cout << "wrote " << path << "\n";
}
