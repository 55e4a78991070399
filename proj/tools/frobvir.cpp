#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "frobvir/errors.hpp"
#include "frobvir/euler_span.hpp"
#include "frobvir/genus1.hpp"
#include "frobvir/model_file.hpp"
#include "frobvir/models.hpp"
#include "frobvir/suite.hpp"

using namespace frobvir;
using nlohmann::ordered_json;

namespace {

/// Bad flags, unknown models, unreadable or invalid model files.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string model;
    std::optional<int> order;
    std::optional<int> genus;
    std::string format = "text";
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("model,--model", c.model, "builtin name or model file")->required();
    sub->add_option("--order", c.order, "truncation order")->check(CLI::Range(3, 200));
    sub->add_option("--g", c.genus, "curve genus for curve-even")->check(CLI::NonNegativeNumber);
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
}

ModelSpec resolve(const Common& c) {
    try {
        if (std::filesystem::is_regular_file(c.model)) {
            if (c.genus) throw InputError("--g applies to the curve-even builtin only");
            ModelSpec spec = load_model(c.model);
            if (c.order) {
                if (*c.order > spec.order)
                    throw InputError("--order " + std::to_string(*c.order) + " exceeds the file's order " +
                                     std::to_string(spec.order));
                spec.order = *c.order;
                spec.f0 = spec.f0.truncated(*c.order);
                if (spec.f1) spec.f1 = spec.f1->truncated(*c.order);
            }
            return spec;
        }
        if (c.genus && c.model != "curve-even") throw InputError("--g applies to the curve-even builtin only");
        return builtin(c.model, c.order, c.genus.value_or(2));
    } catch (const ParseError& e) {
        throw InputError(c.model + ": " + e.what());
    } catch (const ValidationError& e) {
        throw InputError(c.model + ": " + e.what());
    }
}

ordered_json witness_json(const CheckReport& r) {
    if (!r.witness) return nullptr;
    return {{"location", r.witness->location},
            {"monomial", r.witness->monomial},
            {"coefficient", to_string(r.witness->coefficient)}};
}

ordered_json terms_json(const TruncatedSeries& s) {
    ordered_json out = ordered_json::array();
    std::vector<const Term*> order;
    for (const auto& t : s.terms()) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const Term* x, const Term* y) {
        if (x->degree != y->degree) return x->degree < y->degree;
        return x->monomial > y->monomial;
    });
    for (const Term* t : order)
        out.push_back({{"monomial", format_monomial(t->monomial, s.table())}, {"coefficient", to_string(t->coeff)}});
    return out;
}

void print_json(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_list(const Common& c) {
    if (c.format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& m : builtin_models())
            arr.push_back({{"name", m.name}, {"summary", m.summary}, {"default_order", default_order(m.name)}});
        print_json({{"models", arr}});
    } else {
        for (const auto& m : builtin_models())
            std::cout << m.name << std::string(m.name.size() < 12 ? 12 - m.name.size() : 1, ' ') << "order "
                      << default_order(m.name) << "  " << m.summary << "\n";
    }
    return 0;
}

int cmd_check(const Common& c, const std::string& suite_name) {
    auto suite = parse_suite(suite_name);
    if (!suite) throw InputError("unknown suite '" + suite_name + "'");
    ModelSpec spec = resolve(c);
    SuiteResult res = run_suite(spec, *suite);
    const Status all[] = {Status::Pass, Status::Fail, Status::ExpectedFail, Status::Skipped, Status::Undetermined};
    if (c.format == "json") {
        ordered_json checks = ordered_json::array();
        for (const auto& r : res.checks)
            checks.push_back({{"name", r.name},
                              {"anchor", r.anchor},
                              {"order", r.order},
                              {"status", to_string(r.status)},
                              {"witness", witness_json(r)},
                              {"note", r.note},
                              {"unexpected", r.unexpected}});
        ordered_json summary;
        for (Status s : all) summary[to_string(s)] = res.count(s);
        summary["unexpected"] = res.unexpected();
        print_json({{"model", res.model}, {"order", spec.order}, {"suite", suite_name}, {"checks", checks},
                    {"summary", summary}});
    } else {
        std::cout << "model " << res.model << " (order " << spec.order << "), suite " << suite_name << "\n";
        for (const auto& r : res.checks) {
            std::string status = to_string(r.status);
            std::cout << status << std::string(15 - status.size(), ' ') << r.name << "  [order " << r.order << "]";
            if (r.witness)
                std::cout << "  witness " << r.witness->location << ": " << to_string(r.witness->coefficient) << " * "
                          << r.witness->monomial;
            if (!r.note.empty()) std::cout << "  (" << r.note << ")";
            if (r.unexpected) std::cout << "  UNEXPECTED";
            std::cout << "\n";
        }
        std::cout << "summary:";
        for (Status s : all) std::cout << " " << res.count(s) << " " << to_string(s) << ",";
        std::cout << " " << res.unexpected() << " unexpected\n";
    }
    std::cerr << "elapsed " << res.seconds << " s\n";
    return res.unexpected() == 0 ? 0 : 1;
}

int cmd_classify(const Common& c, std::optional<int> mmax) {
    ModelSpec spec = resolve(c);
    Frobenius fr(spec);
    Classification cl = classify(fr, mmax);
    const bool agrees = cl.resultant_agrees.value_or(true);
    if (c.format == "json") {
        print_json({{"model", spec.name},
                    {"order", spec.order},
                    {"verdict", to_string(cl.verdict)},
                    {"non_degenerate", cl.verdict == Verdict::NonDegenerate || cl.verdict == Verdict::SemisimpleType},
                    {"semisimple", cl.semisimple},
                    {"n", cl.n},
                    {"witness", cl.witness},
                    {"resultant_equals_det_a", cl.resultant_agrees ? ordered_json(*cl.resultant_agrees) : nullptr}});
    } else {
        std::cout << "model " << spec.name << " (order " << spec.order << ")\n";
        std::cout << "verdict: " << to_string(cl.verdict);
        if (cl.semisimple) std::cout << " (non-degenerate)";
        std::cout << "\nwitness: " << cl.witness << "\n";
        std::cout << "euler span: E^0..E^" << cl.n << "\n";
        if (cl.resultant_agrees) std::cout << "resultant = det A: " << (agrees ? "yes" : "NO") << "\n";
    }
    return cl.verdict != Verdict::Undetermined && agrees ? 0 : 1;
}

int cmd_phi(const Common& c, int k) {
    ModelSpec spec = resolve(c);
    Frobenius fr(spec);
    Genus1 g(fr);
    TruncatedSeries phi = g.phi(k);
    if (c.format == "json")
        print_json({{"model", spec.name}, {"k", k}, {"order", phi.valid_order()}, {"phi", phi.to_string()},
                    {"terms", terms_json(phi)}});
    else
        std::cout << phi.to_string() << "\n";
    return 0;
}

int cmd_predict(const Common& c, const std::optional<std::string>& out_path) {
    ModelSpec spec = resolve(c);
    spec.f1.reset();
    Frobenius fr(spec);
    Genus1 g(fr);
    GenusOnePrediction p;
    try {
        p = predict_genus1(g);
    } catch (const InconsistentSystemError& e) {
        std::cerr << "inconsistent: " << e.what() << "\n";
        return 1;
    } catch (const SingularLeadingMatrixError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    if (out_path && p.f1) {
        ModelSpec installed = spec;
        installed.f1 = *p.f1;
        std::ofstream out(*out_path);
        if (!out) throw InputError("cannot write '" + *out_path + "'");
        out << serialize_model(installed);
    }
    const bool ok = p.report.status == Status::Pass;
    if (c.format == "json") {
        ordered_json j{{"model", spec.name},
                       {"order", spec.order},
                       {"determined", p.unique},
                       {"tower_rank", p.tower_rank},
                       {"dimension", fr.size()},
                       {"status", to_string(p.report.status)},
                       {"check_order", p.report.order},
                       {"witness", witness_json(p.report)}};
        if (p.f1) {
            j["f1_order"] = p.f1->valid_order();
            j["f1"] = terms_json(uncenter(*p.f1, spec.base_point));
        } else {
            ordered_json cons = ordered_json::array();
            for (std::size_t k = 0; k < p.constrained.size(); ++k)
                cons.push_back({{"k", k}, {"phi", p.constrained[k].to_string()}});
            j["constrained"] = cons;
        }
        if (out_path && p.f1) j["written"] = *out_path;
        print_json(j);
    } else {
        std::cout << "model " << spec.name << " (order " << spec.order << ")\n";
        std::cout << "euler tower rank " << p.tower_rank << " of " << fr.size() << "\n";
        if (p.unique) {
            std::cout << "gradient: unique\n";
            std::cout << "integrability: " << to_string(p.report.status) << " [order " << p.report.order << "]\n";
            std::cout << "f1 [order " << p.f1->valid_order() << "]:\n" << serialize_terms(uncenter(*p.f1, spec.base_point));
            if (out_path) std::cout << "written " << *out_path << "\n";
        } else {
            std::cout << "gradient: underdetermined\n";
            for (std::size_t k = 0; k < p.constrained.size(); ++k)
                std::cout << "  <<E^" << k << ">>_1 = " << p.constrained[k].to_string() << "\n";
            std::cout << "consistency of the remaining equations: " << to_string(p.report.status) << " [order "
                      << p.report.order << "]\n";
        }
        if (p.report.witness)
            std::cout << "witness " << p.report.witness->location << ": " << to_string(p.report.witness->coefficient)
                      << " * " << p.report.witness->monomial << "\n";
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks of genus-0 and genus-1 Virasoro-type identities on Frobenius models"};
    app.require_subcommand(1);

    Common list_opts, check_opts, classify_opts, phi_opts, predict_opts;
    auto* list = app.add_subcommand("list-models", "list builtin models");
    list->add_option("--format", list_opts.format)->check(CLI::IsMember({"text", "json"}));

    auto* check = app.add_subcommand("check", "run a check suite");
    add_common(check, check_opts);
    std::string suite = "all";
    check->add_option("--suite", suite, "foundations, genus1, span or all")
        ->check(CLI::IsMember({"foundations", "genus1", "span", "all"}));

    auto* cls = app.add_subcommand("classify", "non-degeneracy and semisimplicity");
    add_common(cls, classify_opts);
    std::optional<int> mmax;
    cls->add_option("--mmax", mmax, "largest Euler power searched")->check(CLI::Range(1, 64));

    auto* phi = app.add_subcommand("phi", "print phi_k");
    add_common(phi, phi_opts);
    int k = 2;
    phi->add_option("--k", k, "index k")->required()->check(CLI::Range(0, 12));

    auto* predict = app.add_subcommand("predict-genus1", "solve for the genus-1 potential");
    add_common(predict, predict_opts);
    std::optional<std::string> out;
    predict->add_option("--out", out, "write the model with the predicted f1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*list) return cmd_list(list_opts);
        if (*check) return cmd_check(check_opts, suite);
        if (*cls) return cmd_classify(classify_opts, mmax);
        if (*phi) return cmd_phi(phi_opts, k);
        if (*predict) return cmd_predict(predict_opts, out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
