#pragma once

#include "hkit/hkit.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace hkit::cli {

namespace fs = std::filesystem;

enum Exit : int {
    kOk = 0,
    kFails = 1,
    kInput = 2,
    kNumeric = 3,
    kContradiction = 4,
};

/// --relation value: a relation polynomial, or one of the adjoint variants.
struct RelationChoice {
    enum class Variant { Plain, NSym, NSym2 };
    Variant variant = Variant::Plain;
    RelationKind kind = RelationKind::ninverse();
};

inline RelationChoice parse_relation(const std::string& s) {
    RelationChoice rc;
    if (s == "n-inverse") rc.kind = RelationKind::ninverse();
    else if (s == "helton") rc.kind = RelationKind::helton();
    else if (s == "nsym" || s == "nsym2") {
        rc.kind = RelationKind::helton();
        rc.variant = s == "nsym" ? RelationChoice::Variant::NSym : RelationChoice::Variant::NSym2;
    } else if (s.rfind("general:", 0) == 0) rc.kind = RelationKind::general(parse_poly(s.substr(8)));
    else throw SchemaError("unknown relation '" + s + "'");
    return rc;
}

inline DeltaKind parse_delta(const std::string& s) {
    for (auto d : {DeltaKind::TensorProduct, DeltaKind::PerturbX, DeltaKind::TensorSum})
        if (s == to_string(d)) return d;
    throw SchemaError("unknown delta '" + s + "'");
}

struct Manifest {
    std::string relation_text;
    RelationChoice relation;
    std::optional<DeltaKind> delta;
    unsigned n = 1;
    std::map<std::string, ExactMatrix> operands;
    std::optional<unsigned> cap;
    std::optional<bool> numeric_fallback;
};

/// Operand names required by a relation/delta combination.
inline std::vector<std::string> operand_names(const RelationChoice& rc, const std::optional<DeltaKind>& delta) {
    if (rc.variant != RelationChoice::Variant::Plain) return {"T1", "T2"};
    if (!delta) return {"S", "T"};
    if (*delta == DeltaKind::PerturbX) return {"S", "T", "Q"};
    return {"S1", "T1", "S2", "T2"};
}

inline Json read_json_file(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw SchemaError("cannot read " + p.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(p.string() + ": " + e.what(), e.byte);
    }
}

inline unsigned positive(const Json& v, const char* what) {
    if (!v.is_number_unsigned() || v.get<unsigned long>() == 0)
        throw SchemaError(std::string(what) + " must be a positive integer");
    return v.get<unsigned>();
}

/// Validates the manifest completely before anything is computed.
inline Manifest parse_manifest(const Json& j, const fs::path& base) {
    if (!j.is_object()) throw SchemaError("manifest must be an object");
    static const std::set<std::string> known{"relation", "delta", "n", "operands", "options"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw SchemaError("manifest: unknown field '" + k + "'");
    Manifest m;
    if (!j.contains("relation") || !j["relation"].is_string()) throw SchemaError("manifest: 'relation' must be a string");
    m.relation_text = j["relation"].get<std::string>();
    m.relation = parse_relation(m.relation_text);
    if (j.contains("delta")) {
        if (!j["delta"].is_string()) throw SchemaError("manifest: 'delta' must be a string");
        m.delta = parse_delta(j["delta"].get<std::string>());
    }
    using V = RelationChoice::Variant;
    if (m.relation.variant != V::Plain) {
        DeltaKind implied = m.relation.variant == V::NSym ? DeltaKind::TensorProduct : DeltaKind::TensorSum;
        if (m.delta && *m.delta != implied) throw SchemaError("manifest: delta conflicts with " + m.relation_text);
        m.delta = implied;
    }
    if (!j.contains("n")) throw SchemaError("manifest: 'n' is required");
    m.n = positive(j["n"], "manifest: 'n'");
    if (j.contains("options")) {
        const auto& o = j["options"];
        if (!o.is_object()) throw SchemaError("manifest: 'options' must be an object");
        for (const auto& [k, v] : o.items()) {
            if (k == "cap") m.cap = positive(v, "options: 'cap'");
            else if (k == "numeric_fallback") {
                if (v.is_boolean()) m.numeric_fallback = v.get<bool>();
                else if (v == "on" || v == "off") m.numeric_fallback = v == "on";
                else throw SchemaError("options: 'numeric_fallback' must be a boolean or on/off");
            } else throw SchemaError("options: unknown field '" + k + "'");
        }
    }
    if (!j.contains("operands") || !j["operands"].is_object()) throw SchemaError("manifest: 'operands' must be an object");
    const auto names = operand_names(m.relation, m.delta);
    for (const auto& [k, v] : j["operands"].items())
        if (std::find(names.begin(), names.end(), k) == names.end())
            throw SchemaError("manifest: unexpected operand '" + k + "'");
    for (const auto& name : names) {
        if (!j["operands"].contains(name)) throw SchemaError("manifest: missing operand '" + name + "'");
        const auto& v = j["operands"][name];
        if (v.is_string()) m.operands.emplace(name, matrix_from_json(read_json_file(base / v.get<std::string>())));
        else m.operands.emplace(name, matrix_from_json(v));
    }
    return m;
}

/// The pair the manifest's relation is evaluated at.
inline CombinedPair manifest_pair(const Manifest& m) {
    const auto& op = m.operands;
    if (m.relation.variant != RelationChoice::Variant::Plain) {
        const auto& t1 = op.at("T1");
        const auto& t2 = op.at("T2");
        return combine(*m.delta, adjoint(t1), t1, adjoint(t2), t2);
    }
    if (!m.delta) {
        require_same_dim(op.at("S"), op.at("T"));
        return {op.at("S"), op.at("T")};
    }
    if (*m.delta == DeltaKind::PerturbX) return combine(*m.delta, op.at("S"), op.at("T"), op.at("Q"), op.at("Q"));
    return combine(*m.delta, op.at("S1"), op.at("T1"), op.at("S2"), op.at("T2"));
}

struct Overrides {
    std::optional<unsigned> n;
    std::optional<unsigned> cap;
    std::string numeric_fallback;
    std::string relation;
    std::string delta;
};

inline Manifest load_manifest(const std::string& path, const Overrides& ov) {
    const fs::path p(path);
    Json j = read_json_file(p);
    if (!ov.relation.empty()) j["relation"] = ov.relation;
    if (!ov.delta.empty()) j["delta"] = ov.delta;
    if (ov.n) j["n"] = *ov.n;
    Manifest m = parse_manifest(j, p.parent_path());
    if (ov.cap) m.cap = ov.cap;
    if (!ov.numeric_fallback.empty()) m.numeric_fallback = ov.numeric_fallback == "on";
    return m;
}

inline SplitOptions options_for(const Manifest& m) {
    SplitOptions o = SplitOptions::from_env();
    if (m.numeric_fallback) o.numeric_fallback = *m.numeric_fallback;
    return o;
}

inline int cmd_check(const Manifest& m, std::ostream& out) {
    const SplitOptions opt = options_for(m);
    if (m.n > kMaxOrder) throw PreconditionViolated("order n exceeds cap 16");
    const CombinedPair pair = manifest_pair(m);
    if (pair.s.dim() > opt.max_dim) throw PreconditionViolated("dimension exceeds cap " + std::to_string(opt.max_dim));
    const ExactMatrix residual = eval_relation(m.relation.kind, pair.s, pair.t, m.n);
    const unsigned cap = std::min(m.cap.value_or(kMaxOrder), kMaxOrder);
    auto strict = min_order(m.relation.kind, pair.s, pair.t, cap);
    Json j;
    j["holds"] = residual.is_zero();
    j["n"] = m.n;
    j["strict_order"] = strict ? Json(*strict) : Json(nullptr);
    j["residual"] = matrix_to_json(residual);
    j["residual_frobenius"] = residual.frobenius();
    out << j.dump(2) << "\n";
    return residual.is_zero() ? kOk : kFails;
}

inline int cmd_split(const Manifest& m, std::ostream& out) {
    if (!m.delta) throw PreconditionViolated("split needs a delta (tensor-product, perturb or tensor-sum)");
    const SplitOptions opt = options_for(m);
    const auto& op = m.operands;
    SplitWitness w;
    switch (m.relation.variant) {
    case RelationChoice::Variant::NSym: w = split_nsym(op.at("T1"), op.at("T2"), m.n, opt); break;
    case RelationChoice::Variant::NSym2: w = split_nsym2(op.at("T1"), op.at("T2"), m.n, opt); break;
    case RelationChoice::Variant::Plain:
        switch (*m.delta) {
        case DeltaKind::TensorProduct:
            w = split_tensor_product(op.at("S1"), op.at("T1"), op.at("S2"), op.at("T2"), m.n, m.relation.kind, opt);
            break;
        case DeltaKind::PerturbX:
            w = split_perturbation(op.at("S"), op.at("T"), op.at("Q"), m.n, m.relation.kind, opt);
            break;
        case DeltaKind::TensorSum:
            if (m.relation.kind.tag() != RelationKind::Tag::Helton)
                throw PreconditionViolated("tensor-sum splitting is available for the Helton relation only");
            w = split_tensor_sum_helton(op.at("S1"), op.at("T1"), op.at("S2"), op.at("T2"), m.n, opt);
            break;
        }
        break;
    }
    out << witness_to_json(w).dump(2) << "\n";
    return w.verified == Verification::Exact ? kOk : kNumeric;
}

inline int cmd_classify(const std::string& text, std::ostream& out) {
    out << qhclass_to_json(classify_qh(parse_poly(text))).dump(2) << "\n";
    return kOk;
}

inline int cmd_certify(const std::string& text, const std::string& delta, const std::string& lambda, std::ostream& out) {
    const CommPoly p = parse_poly(text);
    const Certificate c = make_certificate(p, parse_delta(delta), parse_scalar(lambda));
    Json j = certificate_to_json(c);
    const bool ok = verify_certificate(p, c);
    j["verified"] = ok;
    out << j.dump(2) << "\n";
    return ok ? kOk : kFails;
}

struct GenerateArgs {
    std::string relation = "n-inverse";
    std::string delta = "tensor-product";
    unsigned l = 1;
    unsigned m = 1;
    std::string lambda = "1";
    std::uint64_t seed = 0;
    std::string out_dir;
};

inline InstanceSpec spec_from(const GenerateArgs& g) {
    InstanceSpec s;
    const RelationChoice rc = parse_relation(g.relation);
    s.relation = rc.kind;
    s.delta = parse_delta(g.delta);
    s.adjoint = rc.variant != RelationChoice::Variant::Plain;
    if (rc.variant == RelationChoice::Variant::NSym) s.delta = DeltaKind::TensorProduct;
    if (rc.variant == RelationChoice::Variant::NSym2) s.delta = DeltaKind::TensorSum;
    s.l = g.l;
    s.m = g.m;
    s.lambda = parse_scalar(g.lambda);
    s.seed = g.seed;
    return s;
}

/// Writes manifest.json, one file per operand and expected.json into
/// out_dir, or prints a manifest with inline operands when out_dir is empty.
inline int cmd_generate(const GenerateArgs& g, std::ostream& out) {
    const InstanceSpec spec = spec_from(g);
    const Instance inst = gen_combined_instance(spec);
    Json manifest;
    manifest["relation"] = g.relation;
    if (!spec.adjoint) manifest["delta"] = to_string(spec.delta);
    manifest["n"] = inst.n;
    Json ops = Json::object();
    if (g.out_dir.empty()) {
        for (const auto& [name, mat] : inst.operands) ops[name] = matrix_to_json(mat);
        manifest["operands"] = ops;
        out << manifest.dump(2) << "\n";
        return kOk;
    }
    const fs::path dir(g.out_dir);
    fs::create_directories(dir);
    auto write = [&](const fs::path& p, const Json& j) {
        std::ofstream f(p);
        if (!f) throw SchemaError("cannot write " + p.string());
        f << j.dump(2) << "\n";
    };
    for (const auto& [name, mat] : inst.operands) {
        write(dir / (name + ".json"), matrix_to_json(mat));
        ops[name] = name + ".json";
    }
    manifest["operands"] = ops;
    write(dir / "manifest.json", manifest);
    write(dir / "expected.json", witness_to_json(inst.expected));
    out << (dir / "manifest.json").string() << "\n";
    return kOk;
}

inline Json error_json(const std::string& kind, const std::string& what) { return Json{{"error", kind}, {"detail", what}}; }

/// Runs the command line; output is buffered so error paths print nothing
/// to `out`.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app("Exact splitting of hereditary operator relations over tensor constructions", "hkit");
    app.require_subcommand(1);

    std::string manifest_path, poly_text, lambda_text = "1";
    Overrides ov;
    std::string delta_text = "tensor-product";
    GenerateArgs gen;
    unsigned n_value = 0, cap_value = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("manifest", manifest_path, "manifest JSON file")->required();
        sub->add_option("--relation", ov.relation, "n-inverse | helton | nsym | nsym2 | general:<poly>");
        sub->add_option("--delta", ov.delta, "tensor-product | perturb | tensor-sum");
        sub->add_option("--n", n_value, "order n");
        sub->add_option("--cap", cap_value, "largest order searched for the strict order");
        sub->add_option("--numeric-fallback", ov.numeric_fallback, "on | off")->check(CLI::IsMember({"on", "off"}));
    };
    auto* check = app.add_subcommand("check", "evaluate a relation at order n");
    add_common(check);
    auto* split = app.add_subcommand("split", "recover a splitting witness");
    add_common(split);
    auto* classify = app.add_subcommand("classify", "quasi-homogeneity of a polynomial in x, y");
    classify->add_option("poly", poly_text)->required();
    auto* certify = app.add_subcommand("certify", "decomposition certificate for a polynomial");
    certify->add_option("poly", poly_text)->required();
    certify->add_option("--delta", delta_text, "tensor-product | perturb | tensor-sum");
    certify->add_option("--lambda", lambda_text, "scalar lambda");
    auto* generate = app.add_subcommand("generate", "instance with a known witness");
    generate->add_option("--relation", gen.relation, "n-inverse | helton | nsym | nsym2");
    generate->add_option("--delta", gen.delta, "tensor-product | perturb | tensor-sum");
    generate->add_option("--l", gen.l)->check(CLI::PositiveNumber);
    generate->add_option("--m", gen.m)->check(CLI::PositiveNumber);
    generate->add_option("--lambda", gen.lambda);
    generate->add_option("--seed", gen.seed);
    generate->add_option("--out", gen.out_dir, "bundle directory");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInput;
    }
    if (n_value) ov.n = n_value;
    if (cap_value) ov.cap = cap_value;

    std::ostringstream buf;
    int code = kOk;
    try {
        if (*check) code = cmd_check(load_manifest(manifest_path, ov), buf);
        else if (*split) code = cmd_split(load_manifest(manifest_path, ov), buf);
        else if (*classify) code = cmd_classify(poly_text, buf);
        else if (*certify) code = cmd_certify(poly_text, delta_text, lambda_text, buf);
        else if (*generate) code = cmd_generate(gen, buf);
    } catch (const NotSatisfied& e) {
        err << error_json("not-satisfied", e.what()).dump() << "\n";
        return kFails;
    } catch (const InternalContradiction& e) {
        err << error_json(to_string(e.kind()), e.what()).dump() << "\n";
        return kContradiction;
    } catch (const ParseError& e) {
        err << error_json("parse", e.what()).dump() << "\n";
        return kInput;
    } catch (const Error& e) {
        err << error_json("input", e.what()).dump() << "\n";
        return kInput;
    } catch (const Json::exception& e) {
        err << error_json("schema", e.what()).dump() << "\n";
        return kInput;
    } catch (const std::filesystem::filesystem_error& e) {
        err << error_json("io", e.what()).dump() << "\n";
        return kInput;
    } catch (const std::overflow_error& e) {
        err << error_json("input", e.what()).dump() << "\n";
        return kInput;
    }
    out << buf.str();
    return code;
}

} // namespace hkit::cli
