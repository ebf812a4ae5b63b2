// buildings: classify Tits diagrams, generate and fold tree instances.
//
// Exit codes: 0 success, 1 validation failure, 2 axiom or property violation,
// 3 input or I/O error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "buildings/buildings.hpp"
#include "buildings/io.hpp"

namespace {

using namespace buildings;
using nlohmann::json;

enum Exit { kOk = 0, kValidation = 1, kViolation = 2, kInput = 3 };

struct Fail {
    int code;
    json body;
};

bool is_validation_code(ErrorCode c) {
    switch (c) {
    case ErrorCode::EquilateralViolation:
    case ErrorCode::CombingMismatch:
    case ErrorCode::ImpossibleConfiguration:
    case ErrorCode::FoldMismatch:
    case ErrorCode::NoTemplateMatch: return true;
    default: return false;
    }
}

std::size_t orbit_cap() {
    const char* env = std::getenv("BUILDINGS_ORBIT_CAP");
    if (!env || !*env) return kDefaultOrbitCap;
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(env, &pos);
        if (pos != std::string(env).size() || v == 0) throw std::invalid_argument(env);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw Fail{kInput, {{"error", "ParseError"}, {"message", std::string("bad BUILDINGS_ORBIT_CAP '") + env + "'"}}};
    }
}

json cosine_json(const ExactCosine& c) {
    json j{{"sign", c.sign()}, {"cos_squared", c.cos_squared().str()}, {"degrees_approx", c.radians() * 180.0 / 3.14159265358979323846}};
    if (auto n = named_angle(c)) j["named"] = std::string(to_string(*n));
    return j;
}

void emit(const json& report, const std::string& out) {
    std::string text = report.dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        io::write_file_atomic(out, text);
}

json classify_report(const TitsDiagram& d, std::size_t cap) {
    AngleReport r = minimal_angle(d, cap);
    json j{{"diagram", io::diagram_to_json(d)},
           {"realization", r.realization},
           {"relative_rank", r.relative_rank},
           {"min_angle", cosine_json(r.min_cos)},
           {"witness", json::array({io::vector_to_json(r.witness_first), io::vector_to_json(r.witness_second)})},
           {"orbit_union_size", r.orbit_union_size},
           {"verdict", std::string(to_string(applicability_from(r)))}};
    if (d.encircled.size() == 1) j["long_root_vertex"] = long_root_vertex_check(d);
    if (r.caveat) j["caveat"] = *r.caveat;
    return j;
}

std::map<std::string, std::string> parse_params(const std::string& text) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "parameter '" + item + "' is not key=value");
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

treefold::Instance generate(const std::string& tmpl, const std::map<std::string, std::string>& params, std::uint64_t seed) {
    std::map<std::string, std::string> left = params;
    auto take = [&](const std::string& key) {
        auto it = left.find(key);
        if (it == left.end()) throw Error(ErrorCode::BadTemplateParams, "template " + tmpl + " needs parameter " + key);
        Rational r = Rational::parse(it->second);
        left.erase(it);
        return r;
    };
    std::optional<treefold::Instance> inst;
    if (tmpl == "tripod") {
        inst = treefold::gen_tripod(take("l"));
    } else if (tmpl == "line") {
        inst = treefold::gen_line();
    } else if (tmpl == "config1") {
        Rational a1 = take("a1"), ls = take("ls"), a2 = take("a2"), lr = take("lr");
        inst = treefold::gen_config1(a1, ls, a2, lr);
    } else if (tmpl == "config2") {
        Rational u = take("u"), L = take("lbig");
        inst = treefold::gen_config2(u, L);
    } else if (tmpl == "config3") {
        Rational L = take("lbig"), ls = take("ls"), a = take("a");
        inst = treefold::gen_config3(L, ls, a);
    } else if (tmpl == "random") {
        Rational n = take("n");
        if (!n.is_integer() || n < 2 || n > 26) throw Error(ErrorCode::BadTemplateParams, "n must be an integer in 2..26");
        inst = treefold::gen_random(seed, static_cast<int>(n.num()));
    } else {
        throw Error(ErrorCode::BadTemplateParams, "unknown template '" + tmpl + "'");
    }
    if (!left.empty()) throw Error(ErrorCode::BadTemplateParams, "unused parameter '" + left.begin()->first + "'");
    return *inst;
}

treefold::Instance load_instance(const std::string& path) {
    return io::instance_from_json(io::parse_text(io::read_file(path)));
}

/// Runs validate and turns a failure into exit code 1.
void require_valid(const treefold::Instance& inst, json& report) {
    auto rep = treefold::validate(inst);
    if (!rep.valid) {
        report["valid"] = false;
        report["error"] = std::string(to_string(*rep.error));
        report["message"] = rep.message;
        throw Fail{kValidation, report};
    }
    report["valid"] = true;
    json classes = json::array();
    for (const auto& c : rep.classes) {
        json params = json::object();
        for (const auto& [k, v] : c.params) params[k] = v.str();
        classes.push_back({{"config", "C" + std::to_string(c.config)}, {"roles", c.roles}, {"params", params}});
    }
    report["four_end_classes"] = classes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tits diagrams and tree folding for rank-one buildings"};
    app.require_subcommand(1);
    std::string out;
    bool timings = false;

    auto* classify = app.add_subcommand("classify", "minimal angle and applicability of a Tits diagram");
    std::string diagram_file, catalog_id;
    int rank = 0;
    auto* opt_diagram = classify->add_option("--diagram", diagram_file, "diagram JSON file");
    auto* opt_catalog = classify->add_option("--catalog-id", catalog_id, "catalog entry id");
    opt_diagram->excludes(opt_catalog);
    classify->add_option("--rank", rank, "rank for classical catalog entries");
    classify->add_option("--out", out, "report file (default stdout)");

    auto* catalog_cmd = app.add_subcommand("catalog", "list the diagram catalog with verdicts");
    catalog_cmd->add_option("--out", out, "report file (default stdout)");

    auto* gen = app.add_subcommand("gen", "generate an instance from a template");
    std::string tmpl, params_text;
    std::uint64_t seed = 0;
    gen->add_option("--template", tmpl, "tripod | line | config1 | config2 | config3 | random")->required();
    gen->add_option("--params", params_text, "comma separated key=value list, rationals as p/q");
    gen->add_option("--seed", seed, "PRNG seed for the random template");
    gen->add_option("--out", out, "instance file (default stdout)");

    auto* fold = app.add_subcommand("fold", "fold an instance into its quotient tree");
    std::string instance_file, dot_file, tree_file;
    fold->add_option("--instance", instance_file, "instance JSON file")->required();
    fold->add_option("--out", out, "tree file (default stdout)");
    fold->add_option("--dot", dot_file, "also write a DOT rendering");

    auto* verify = app.add_subcommand("verify", "validate, fold and check the tree axioms");
    verify->add_option("--instance", instance_file, "instance JSON file")->required();
    verify->add_option("--tree", tree_file, "check this tree instead of folding");
    verify->add_option("--out", out, "report file (default stdout)");

    for (auto* sub : {classify, catalog_cmd, gen, fold, verify})
        sub->add_flag("--timings", timings, "add wall-clock timings to the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }

    const auto start = std::chrono::steady_clock::now();
    auto stamp = [&](json& report) {
        if (timings)
            report["timings_ms_approx"] =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };

    try {
        if (*classify) {
            json report{{"command", "classify"}};
            TitsDiagram d;
            if (!diagram_file.empty()) {
                d = io::diagram_from_json(io::parse_text(io::read_file(diagram_file)));
                report["inputs"] = {{"diagram", diagram_file}};
            } else if (!catalog_id.empty()) {
                const auto& entry = catalog_entry(catalog_id);
                d = entry.at_rank(rank == 0 ? entry.diagram.spec.rank : rank);
                report["inputs"] = {{"catalog_id", catalog_id}, {"rank", d.spec.rank}};
            } else {
                throw Error(ErrorCode::ParseError, "classify needs --diagram or --catalog-id");
            }
            report.update(classify_report(d, orbit_cap()));
            stamp(report);
            emit(report, out);
            return kOk;
        }
        if (*catalog_cmd) {
            json entries = json::array();
            std::size_t cap = orbit_cap();
            for (const auto& e : catalog()) {
                json j = classify_report(e.diagram, cap);
                j["id"] = e.id;
                j["group"] = std::string(to_string(e.group));
                j["description"] = e.description;
                if (e.classical()) j["ranks"] = {e.min_rank, e.max_rank};
                entries.push_back(j);
            }
            json report{{"command", "catalog"}, {"entries", entries}};
            stamp(report);
            emit(report, out);
            return kOk;
        }
        if (*gen) {
            auto params = parse_params(params_text);
            auto inst = generate(tmpl, params, seed);
            json report{{"command", "gen"}, {"inputs", {{"template", tmpl}, {"params", params}, {"seed", seed}}}};
            require_valid(inst, report);
            json doc = io::instance_to_json(inst);
            doc["generator"] = report["inputs"];
            emit(doc, out);
            return kOk;
        }
        if (*fold) {
            auto inst = load_instance(instance_file);
            json report{{"command", "fold"}, {"inputs", {{"instance", instance_file}}}};
            require_valid(inst, report);
            auto tree = treefold::fold_quotient(inst);
            if (!dot_file.empty()) io::write_file_atomic(dot_file, io::tree_to_dot(tree));
            emit(io::tree_to_json(tree), out);
            return kOk;
        }
        if (*verify) {
            auto inst = load_instance(instance_file);
            json report{{"command", "verify"}, {"inputs", {{"instance", instance_file}}}};
            require_valid(inst, report);
            QuotientTree tree;
            if (tree_file.empty()) {
                tree = treefold::fold_quotient(inst);
            } else {
                tree = io::tree_from_json(io::parse_text(io::read_file(tree_file)));
                report["inputs"]["tree"] = tree_file;
            }
            auto axioms = treefold::verify_tree_axioms(inst, tree);
            auto retr = treefold::retraction_invariance_check(inst);
            json checks = json::array();
            for (const auto& c : axioms.checks) {
                json j{{"name", c.name}, {"passed", c.passed}};
                if (!c.passed) j["witness"] = c.witness;
                checks.push_back(j);
            }
            json rc{{"name", "RETRACTION_INVARIANCE"}, {"passed", retr.ok}, {"pairs_checked", retr.checked}};
            if (!retr.ok) rc["witness"] = retr.failures.front();
            checks.push_back(rc);
            report["checks"] = checks;
            report["quotient"] = {{"nodes", tree.node_count}, {"edges", tree.edges.size()}};
            const bool ok = axioms.ok() && retr.ok;
            report["verdict"] = ok ? "pass" : "violation";
            stamp(report);
            emit(report, out);
            return ok ? kOk : kViolation;
        }
    } catch (const Fail& f) {
        std::cerr << f.body.dump(2) << "\n";
        return f.code;
    } catch (const Error& e) {
        json body{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
        std::cerr << body.dump(2) << "\n";
        return is_validation_code(e.code()) ? kValidation : kInput;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "IOError"}, {"message", e.what()}}.dump(2) << "\n";
        return kInput;
    }
    return kInput;
}
