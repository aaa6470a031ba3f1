#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ipps/bounds.hpp"
#include "ipps/codes.hpp"
#include "ipps/construct.hpp"
#include "ipps/core.hpp"
#include "ipps/equations.hpp"
#include "ipps/experiment.hpp"
#include "ipps/verify.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 20260809;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ipps::input_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ipps::input_error("cannot write " + path);
    out << content;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file(out_path, content);
}

std::string sidecar_path(const std::string& out_path) {
    std::string base = out_path;
    if (base.size() > 5 && base.substr(base.size() - 5) == ".json")
        base.resize(base.size() - 5);
    return base + ".params.json";
}

std::string params_json(const ipps::ConstructionParams& params,
                        const std::vector<ipps::LinearEquation>& eqs) {
    nlohmann::ordered_json j;
    j["m"] = params.m;
    j["q"] = params.q;
    j["n"] = params.n;
    auto arr = nlohmann::json::array();
    for (const auto& eq : eqs) {
        auto je = nlohmann::json::array();
        for (auto c : eq.coeffs) je.push_back(c);
        je.push_back(eq.triviality == ipps::Triviality::CoefficientMatched ? "CM" : "AE");
        arr.push_back(std::move(je));
    }
    j["equations"] = std::move(arr);
    return j.dump(2) + "\n";
}

int default_threads() {
    if (const char* env = std::getenv("IPPS_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parent-identifying set systems: construction and verification"};
    app.require_subcommand(1);
    app.fallthrough();  // --seed/--threads may follow the subcommand

    std::uint64_t seed = kDefaultSeed;
    int threads = default_threads();
    app.add_option("--seed", seed, "seed for randomized operations");
    app.add_option("--threads", threads, "worker parallelism (env IPPS_THREADS)")
        ->check(CLI::PositiveNumber);

    // construct
    auto* c_construct = app.add_subcommand("construct", "build a 2-IPPS(n,4) for a given m");
    std::int64_t m = 0;
    std::string set_file, out_file, params_out;
    c_construct->add_option("--m", m, "range parameter m >= 2")->required();
    c_construct->add_option("--set", set_file, "solution-free set JSON (default: greedy)");
    c_construct->add_option("--out", out_file, "output file for the set-system JSON");
    c_construct->add_option("--params-out", params_out, "output file for the params sidecar");

    // verify
    auto* c_verify = app.add_subcommand("verify", "check parent-identifying properties");
    std::string in_file, mode = "fast";
    int t = 2;
    c_verify->add_option("--in", in_file, "set-system JSON file")->required();
    c_verify->add_option("--mode", mode, "fast | exhaustive | bruteforce")
        ->check(CLI::IsMember({"fast", "exhaustive", "bruteforce"}));
    c_verify->add_option("--t", t, "coalition bound for bruteforce mode");

    // verify-code
    auto* c_vcode = app.add_subcommand("verify-code", "check the parent-identifying code property");
    std::string code_file;
    int code_t = 2;
    c_vcode->add_option("--in", code_file, "code JSON file")->required();
    c_vcode->add_option("--t", code_t, "coalition bound");

    // ks
    auto* c_ks = app.add_subcommand("ks", "Kautz-Singleton: code -> set system");
    std::string ks_in, ks_out;
    c_ks->add_option("--in", ks_in, "code JSON file")->required();
    c_ks->add_option("--out", ks_out, "output file for the set-system JSON");

    // trace
    auto* c_trace = app.add_subcommand("trace", "identify blocks present in every parent set");
    std::string tr_in, tr_pirate;
    int tr_t = 2;
    c_trace->add_option("--in", tr_in, "set-system JSON file")->required();
    c_trace->add_option("--pirate", tr_pirate, "pirate point-set JSON file")->required();
    c_trace->add_option("--t", tr_t, "coalition bound");

    // derive-eqs
    auto* c_derive = app.add_subcommand("derive-eqs", "equation set the construction must avoid");
    std::int64_t d_m = 0;
    std::string d_out;
    c_derive->add_option("--m", d_m, "range parameter m >= 2")->required();
    c_derive->add_option("--out", d_out, "output file (equation list text)");

    // greedy-set
    auto* c_greedy = app.add_subcommand("greedy-set", "first-fit solution-free subset of [1, m]");
    std::int64_t g_m = 0;
    std::string g_eqs, g_out;
    c_greedy->add_option("--m", g_m, "range bound m >= 1")->required();
    c_greedy->add_option("--equations", g_eqs,
                         "equation list file (default: derived set for this m)");
    c_greedy->add_option("--out", g_out, "output file (solution-free set JSON)");

    // bounds
    auto* c_bounds = app.add_subcommand("bounds", "known size bounds for t-IPPS(n,k)");
    std::int64_t b_n = 0, b_k = 0, b_t = 0;
    std::int64_t b_achieved = -1;
    c_bounds->add_option("--n", b_n, "ground set size")->required();
    c_bounds->add_option("--k", b_k, "block size")->required();
    c_bounds->add_option("--t", b_t, "coalition bound")->required();
    c_bounds->add_option("--achieved", b_achieved, "block count achieved by a construction");

    // experiment
    auto* c_exp = app.add_subcommand("experiment", "construction sweep, CSV per m");
    std::vector<std::int64_t> m_list;
    std::string e_out;
    c_exp->add_option("--m-list", m_list, "comma-separated m values")
        ->required()
        ->delimiter(',');
    c_exp->add_option("--out", e_out, "output CSV file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (*c_construct) {
            std::optional<ipps::SolutionFreeSet> provided;
            if (!set_file.empty())
                provided = ipps::solution_free_set_from_json(read_file(set_file));
            auto res = ipps::end_to_end(m, provided, threads);
            emit(out_file, ipps::serialize_set_system(res.system));
            auto eqs = ipps::derive_required_equations(res.params);
            std::string sidecar = params_json(res.params, eqs);
            if (!params_out.empty())
                write_file(params_out, sidecar);
            else if (!out_file.empty())
                write_file(sidecar_path(out_file), sidecar);
            return 0;
        }
        if (*c_verify) {
            auto sys = ipps::parse_set_system(read_file(in_file));
            ipps::VerificationReport rep;
            if (mode == "bruteforce")
                rep = ipps::verify_ipps_bruteforce(sys, t);
            else
                rep = ipps::verify_ipps2(sys,
                                         mode == "fast" ? ipps::VerifyMode::Fast
                                                        : ipps::VerifyMode::Exhaustive,
                                         threads);
            std::cout << ipps::report_to_json(rep, &sys);
            return rep.pass ? 0 : 1;
        }
        if (*c_vcode) {
            auto code = ipps::parse_code(read_file(code_file));
            auto rep = ipps::verify_ippc_bruteforce(code, code_t);
            std::cout << ipps::report_to_json(rep);
            return rep.pass ? 0 : 1;
        }
        if (*c_ks) {
            auto code = ipps::parse_code(read_file(ks_in));
            emit(ks_out, ipps::serialize_set_system(ipps::kautz_singleton(code)));
            return 0;
        }
        if (*c_trace) {
            auto sys = ipps::parse_set_system(read_file(tr_in));
            auto T = ipps::parse_point_set(read_file(tr_pirate), sys);
            auto res = ipps::trace(sys, T, tr_t);
            nlohmann::ordered_json j;
            j["status"] = res.status == ipps::TraceStatus::Identified ? "identified"
                          : res.status == ipps::TraceStatus::NoParents ? "no-parents"
                                                                       : "unidentifiable";
            auto arr = nlohmann::json::array();
            for (int b : res.blocks) arr.push_back(b + 1);
            j["blocks"] = std::move(arr);
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*c_derive) {
            auto params = ipps::make_params(d_m);
            auto eqs = ipps::derive_required_equations(params);
            std::ostringstream os;
            os << "# m=" << params.m << " q=" << params.q << " n=" << params.n << "\n";
            os << ipps::serialize_equation_list(eqs);
            emit(d_out, os.str());
            return 0;
        }
        if (*c_greedy) {
            std::vector<ipps::LinearEquation> eqs;
            if (!g_eqs.empty())
                eqs = ipps::parse_equation_list(read_file(g_eqs));
            else
                eqs = ipps::derive_required_equations(ipps::make_params(g_m));
            auto sfs = ipps::greedy_solution_free(g_m, eqs);
            emit(g_out, ipps::solution_free_set_to_json(sfs));
            return 0;
        }
        if (*c_bounds) {
            std::optional<std::int64_t> achieved;
            if (b_achieved >= 0) achieved = b_achieved;
            std::cout << ipps::bounds_to_json(ipps::bounds_report(b_n, b_k, b_t, achieved));
            return 0;
        }
        if (*c_exp) {
            emit(e_out, ipps::run_experiment(m_list, seed, threads));
            return 0;
        }
    } catch (const ipps::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
