// Command-line front end: file parsing, subcommand dispatch, and
// machine-readable reports.
//
// Exit codes: 0 completed decision (the verdict lives in the output),
// 2 usage error, 3 invalid input, 4 method not applicable.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tight/decide.hpp"
#include "tight/generators.hpp"
#include "tight/homology.hpp"
#include "tight/io.hpp"
#include "tight/oracle.hpp"
#include "tight/sigma_fpt.hpp"
#include "tight/treewidth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInvalidInput = 3;
constexpr int kExitNotApplicable = 4;

tight::FieldChoice parse_field(const std::string& s) {
    if (s == "any") return std::nullopt;
    if (s == "q" || s == "Q" || s == "0") return tight::FieldSpec::rationals();
    try {
        long p = std::stol(s);
        return tight::FieldSpec::prime(p);
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--field", "expected q, any, or a prime");
    }
}

tight::Strategy parse_strategy(const std::string& s) {
    if (s == "min_degree") return tight::Strategy::MinDegree;
    if (s == "min_fill") return tight::Strategy::MinFill;
    if (s == "exact_small") return tight::Strategy::ExactSmall;
    throw CLI::ValidationError("--strategy", "expected min_degree, min_fill or exact_small");
}

struct StageTimer {
    std::map<std::string, double> ms;
    std::chrono::steady_clock::time_point mark = std::chrono::steady_clock::now();
    void lap(const std::string& stage) {
        auto now = std::chrono::steady_clock::now();
        ms[stage] = std::chrono::duration<double, std::milli>(now - mark).count();
        mark = now;
    }
};

int run_cli(int argc, char** argv) {
    CLI::App app{"tightness of simplicial complexes: exact invariants and decision procedures"};
    app.require_subcommand(1);

    // ---- info ----
    auto* info = app.add_subcommand("info", "f-vector, dimension and basic structure");
    std::string info_path;
    info->add_option("file", info_path, "complex file")->required();

    // ---- homology ----
    auto* hom = app.add_subcommand("homology", "Betti numbers and integral homology");
    std::string hom_path, hom_field = "q";
    bool hom_integral = false;
    hom->add_option("file", hom_path)->required();
    hom->add_option("--field", hom_field, "q | 2 | <p>");
    hom->add_flag("--integral", hom_integral, "also print H_k(.; Z) via Smith normal form");

    // ---- sigma ----
    auto* sig = app.add_subcommand("sigma", "sigma-vector (brute force) or sigma_0 (treewidth DP)");
    std::string sig_path, sig_field = "q", sig_method = "brute";
    sig->add_option("file", sig_path)->required();
    sig->add_option("--field", sig_field, "q | 2 | <p>");
    sig->add_option("--method", sig_method, "brute | fpt");

    // ---- mu ----
    auto* mu = app.add_subcommand("mu", "mu-vector from link sigma-vectors");
    std::string mu_path, mu_field = "q";
    mu->add_option("file", mu_path)->required();
    mu->add_option("--field", mu_field, "q | 2 | <p>");

    // ---- treewidth ----
    auto* tw = app.add_subcommand("treewidth", "tree decompositions of the skeleton or dual graph");
    std::string tw_path, tw_graph = "skeleton", tw_strategy = "min_fill";
    tw->add_option("file", tw_path)->required();
    tw->add_option("--graph", tw_graph, "skeleton | dual");
    tw->add_option("--strategy", tw_strategy, "min_degree | min_fill | exact_small");

    // ---- tight ----
    auto* tgt = app.add_subcommand("tight", "decide tightness");
    std::string tgt_path, tgt_field = "2", tgt_method = "auto";
    bool tgt_cert = false, tgt_json = false, tgt_timings = false;
    tgt->add_option("file", tgt_path)->required();
    tgt->add_option("--field", tgt_field, "q | 2 | <p> | any");
    tgt->add_option("--method", tgt_method, "auto | brute | poly3 | fpt4 | fptd");
    tgt->add_flag("--certificate", tgt_cert, "include the witness or obstruction");
    tgt->add_flag("--json", tgt_json, "machine-readable report");
    tgt->add_flag("--timings", tgt_timings, "include wall-clock stage timings in the report");

    // ---- gen ----
    auto* gen_cmd = app.add_subcommand("gen", "write a generated fixture complex");
    std::string gen_name, gen_out;
    std::vector<long> gen_params;
    gen_cmd->add_option("name", gen_name,
                        "boundary_simplex | cross_polytope | icosahedron | moebius_torus7 | "
                        "rp2_6 | connected_sum")
        ->required();
    gen_cmd->add_option("params", gen_params, "generator parameters");
    gen_cmd->add_option("-o,--output", gen_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*info) {
            auto c = tight::parse_complex(info_path);
            std::cout << "vertices:        " << c.vertex_count() << "\n";
            std::cout << "dimension:       " << c.dim() << "\n";
            std::cout << "f-vector:        (";
            auto fv = c.f_vector();
            for (size_t i = 0; i < fv.size(); ++i)
                std::cout << (i ? "," : "") << fv[i];
            std::cout << ")\n";
            std::cout << "euler char:      " << c.euler_characteristic() << "\n";
            std::cout << "pure:            " << (c.pure() ? "yes" : "no") << "\n";
            std::cout << "connected:       " << (c.connected() ? "yes" : "no") << "\n";
            std::cout << "weak pseudomfld: " << (c.weak_pseudomanifold() ? "yes" : "no") << "\n";
            std::cout << "closed:          " << (c.closed_pseudomanifold() ? "yes" : "no") << "\n";
            int k = 1;
            while (c.is_k_neighbourly(k + 1)) ++k;
            std::cout << "neighbourly:     " << k << "\n";
            return kExitOk;
        }

        if (*hom) {
            auto c = tight::parse_complex(hom_path);
            auto field = parse_field(hom_field);
            if (!field) throw CLI::ValidationError("--field", "homology needs a concrete field");
            for (int k = 0; k <= c.dim(); ++k)
                std::cout << "beta_" << k << "(" << field->str()
                          << ") = " << tight::betti(c, k, *field) << "\n";
            if (hom_integral) {
                for (int k = 0; k <= c.dim(); ++k) {
                    auto h = tight::integral_homology(c, k);
                    std::cout << "H_" << k << "(Z) = Z^" << h.rank;
                    for (const auto& d : h.torsion) std::cout << " + Z/" << d.get_str();
                    std::cout << "\n";
                }
            }
            return kExitOk;
        }

        if (*sig) {
            auto c = tight::parse_complex(sig_path);
            if (sig_method == "fpt") {
                tight::Graph g = c.one_skeleton();
                auto nt = tight::make_nice(tight::decompose(g), g);
                std::cout << "sigma_0 = " << tight::sigma0_treewidth(g, nt).str() << "\n";
            } else if (sig_method == "brute") {
                auto field = parse_field(sig_field);
                if (!field) throw CLI::ValidationError("--field", "sigma needs a concrete field");
                auto sv = tight::sigma_vector_bruteforce(c, *field);
                for (size_t i = 0; i < sv.size(); ++i)
                    std::cout << "sigma_" << i << " = " << sv[i].str() << "\n";
            } else {
                throw CLI::ValidationError("--method", "expected brute or fpt");
            }
            return kExitOk;
        }

        if (*mu) {
            auto c = tight::parse_complex(mu_path);
            auto field = parse_field(mu_field);
            if (!field) throw CLI::ValidationError("--field", "mu needs a concrete field");
            auto mv = tight::mu_vector(c, *field);
            for (size_t i = 0; i < mv.size(); ++i)
                std::cout << "mu_" << i << " = " << mv[i].str() << "\n";
            return kExitOk;
        }

        if (*tw) {
            auto c = tight::parse_complex(tw_path);
            tight::Graph g = tw_graph == "dual" ? c.dual_graph() : c.one_skeleton();
            if (tw_graph != "dual" && tw_graph != "skeleton")
                throw CLI::ValidationError("--graph", "expected skeleton or dual");
            auto t = tight::decompose(g, parse_strategy(tw_strategy));
            auto v = tight::validate(t, g);
            auto nice = tight::make_nice(t, g);
            std::cout << "graph:      " << tw_graph << " (" << g.n << " vertices, "
                      << g.edge_count() << " edges)\n";
            std::cout << "width:      " << tight::width(t) << "\n";
            std::cout << "bags:       " << t.bags.size() << "\n";
            std::cout << "nice bags:  " << nice.bags.size() << "\n";
            std::cout << "valid:      " << (v.ok ? "yes" : "no") << "\n";
            return kExitOk;
        }

        if (*tgt) {
            auto c = tight::parse_complex(tgt_path);
            auto field = parse_field(tgt_field);
            tight::Method method;
            if (tgt_method == "auto")
                method = tight::Method::Auto;
            else if (tgt_method == "brute")
                method = tight::Method::Brute;
            else if (tgt_method == "poly3")
                method = tight::Method::Poly3;
            else if (tgt_method == "fpt4")
                method = tight::Method::Fpt4;
            else if (tgt_method == "fptd")
                method = tight::Method::Fptd;
            else
                throw CLI::ValidationError("--method", "expected auto|brute|poly3|fpt4|fptd");

            StageTimer timer;
            auto rep = tight::decide_auto(c, field, method);
            timer.lap("decide");

            if (tgt_json) {
                nlohmann::json j = tight::report_json(c, rep, tgt_cert);
                if (tgt_timings) j["timings_ms"] = timer.ms;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "verdict:   " << tight::verdict_str(rep.verdict) << "\n";
                std::cout << "algorithm: " << rep.algorithm << "\n";
                std::cout << "field:     " << rep.field << "\n";
                if (rep.reason != tight::Reason::None)
                    std::cout << "reason:    " << tight::reason_str(rep.reason) << "\n";
                if (rep.mu1) std::cout << "mu_1:      " << rep.mu1->str() << "\n";
                if (rep.beta1) std::cout << "beta_1:    " << *rep.beta1 << "\n";
                if (!rep.note.empty()) std::cout << "note:      " << rep.note << "\n";
                if (rep.witness) {
                    std::cout << "witness:   W = {";
                    for (size_t i = 0; i < rep.witness->W.size(); ++i)
                        std::cout << (i ? "," : "") << rep.witness->W[i];
                    std::cout << "}, k = " << rep.witness->k << "\n";
                }
                if (rep.obstruction)
                    std::cout << "obstruction: j = " << rep.obstruction->j << " at bag "
                              << rep.obstruction->bag << " (" << rep.obstruction->kind << ")\n";
            }
            return rep.verdict == tight::Verdict::NotApplicable ? kExitNotApplicable : kExitOk;
        }

        if (*gen_cmd) {
            auto c = tight::gen(gen_name, gen_params);
            std::string text = tight::render_complex(c);
            if (gen_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(gen_out);
                if (!out) throw tight::ParseError("cannot write " + gen_out);
                out << text;
            }
            return kExitOk;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const tight::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
