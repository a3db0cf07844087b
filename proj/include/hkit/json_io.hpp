#pragma once

#include "hkit/error.hpp"
#include "hkit/exact_matrix.hpp"
#include "hkit/quasihom.hpp"
#include "hkit/splitting.hpp"
#include "hkit/text.hpp"

#include "json.hpp"

#include <string>

namespace hkit {

using Json = nlohmann::ordered_json;

/// Valid JSON that does not match the expected shape.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// {"dim": n, "entries": [["1", "1/2+i", ...], ...]}
inline Json matrix_to_json(const ExactMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(m(r, c).to_string());
        rows.push_back(std::move(row));
    }
    return Json{{"dim", m.dim()}, {"entries", std::move(rows)}};
}

/// Entries may be scalar strings or JSON integers.
inline ExactMatrix matrix_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("matrix must be an object");
    for (const auto& [k, v] : j.items())
        if (k != "dim" && k != "entries") throw SchemaError("matrix: unknown field '" + k + "'");
    if (!j.contains("dim") || !j["dim"].is_number_unsigned()) throw SchemaError("matrix: 'dim' must be a positive integer");
    if (!j.contains("entries") || !j["entries"].is_array()) throw SchemaError("matrix: 'entries' must be an array");
    const auto dim = j["dim"].get<std::size_t>();
    const auto& rows = j["entries"];
    if (dim == 0) throw SchemaError("matrix: 'dim' must be positive");
    if (rows.size() != dim) throw SchemaError("matrix: expected " + std::to_string(dim) + " rows");
    ExactMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        if (!rows[r].is_array() || rows[r].size() != dim)
            throw SchemaError("matrix: row " + std::to_string(r) + " must have " + std::to_string(dim) + " entries");
        for (std::size_t c = 0; c < dim; ++c) {
            const auto& e = rows[r][c];
            if (e.is_string()) m(r, c) = parse_scalar(e.get<std::string>());
            else if (e.is_number_integer()) m(r, c) = GaussRat(e.get<long>());
            else throw SchemaError("matrix: entry must be a string or an integer");
        }
    }
    return m;
}

inline Json scalar_to_json(const WitnessScalar& s) {
    if (const auto* g = std::get_if<GaussRat>(&s)) return g->to_string();
    const auto& n = std::get<NumericScalar>(s);
    return Json{{"approx", {n.value.real(), n.value.imag()}}, {"residual", n.residual}};
}

inline Json witness_to_json(const SplitWitness& w) {
    Json j;
    j["lambda"] = scalar_to_json(w.lambda);
    j["l"] = w.l;
    j["m"] = w.m;
    j["n"] = w.n;
    j["strict_order"] = w.strict_order;
    j["verified"] = w.verified == Verification::Exact ? "exact" : "numeric";
    j["relation"] = w.relation;
    j["delta"] = to_string(w.delta);
    if (w.mu) j["mu"] = scalar_to_json(*w.mu);
    if (w.rotation) j["rotation"] = w.rotation->to_string();
    if (w.shift) j["shift"] = w.shift->to_string();
    if (w.alpha_beta) {
        j["alpha"] = w.alpha_beta->first.to_string();
        j["beta"] = w.alpha_beta->second.to_string();
    }
    if (w.verified == Verification::Numeric) j["residual"] = w.residual;
    return j;
}

inline Json certificate_to_json(const Certificate& c) {
    return Json{{"kind", to_string(c.kind)},
                {"q1", to_string(c.q1)},
                {"q2", to_string(c.q2)},
                {"f", to_string(c.f)},
                {"g", to_string(c.g)}};
}

inline Json qhclass_to_json(const std::optional<QhClass>& q) {
    if (!q) return Json{{"quasi_homogeneous", false}};
    Json j{{"quasi_homogeneous", true}, {"weights", {q->w1, q->w2}}, {"degree", q->degree}};
    if (q->canonical_form) {
        std::visit(
            [&](const auto& f) {
                using F = std::decay_t<decltype(f)>;
                j["canonical_form"] = Json{{"type", std::is_same_v<F, ProductForm> ? "ProductForm" : "DifferenceForm"},
                                           {"A", f.a.to_string()},
                                           {"B", f.b.to_string()},
                                           {"alpha", f.alpha},
                                           {"beta", f.beta}};
            },
            *q->canonical_form);
    }
    return j;
}

} // namespace hkit
