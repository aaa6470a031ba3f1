#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ipps/bounds.hpp"
#include "ipps/codes.hpp"
#include "ipps/construct.hpp"
#include "ipps/core.hpp"
#include "ipps/equations.hpp"
#include "ipps/experiment.hpp"
#include "ipps/verify.hpp"

namespace py = pybind11;
using namespace ipps;

namespace {

LinearEquation eq_from_tuple(const std::tuple<std::int64_t, std::int64_t, std::int64_t,
                                              std::int64_t, std::string>& t) {
    LinearEquation eq;
    eq.coeffs = {std::get<0>(t), std::get<1>(t), std::get<2>(t), std::get<3>(t)};
    eq.triviality = std::get<4>(t) == "CM" ? Triviality::CoefficientMatched
                                           : Triviality::AllEqual;
    check_equation(eq);
    return eq;
}

std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::string> eq_to_tuple(
    const LinearEquation& eq) {
    return {eq.coeffs[0], eq.coeffs[1], eq.coeffs[2], eq.coeffs[3],
            eq.triviality == Triviality::CoefficientMatched ? "CM" : "AE"};
}

VerifyMode mode_of(const std::string& mode) {
    if (mode == "fast") return VerifyMode::Fast;
    if (mode == "exhaustive") return VerifyMode::Exhaustive;
    throw input_error("mode must be \"fast\" or \"exhaustive\"");
}

}  // namespace

PYBIND11_MODULE(ipps, m) {
    m.doc() = "2-parent-identifying set systems: construction and verification";

    py::register_exception<input_error>(m, "InputError");

    m.def("q_of_m", &q_of_m, py::arg("m"));

    m.def(
        "derive_required_equations",
        [](std::int64_t mm) {
            auto eqs = derive_required_equations(make_params(mm));
            std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t,
                                   std::string>>
                out;
            for (const auto& eq : eqs) out.push_back(eq_to_tuple(eq));
            return out;
        },
        py::arg("m"));

    m.def(
        "greedy_solution_free",
        [](std::int64_t mm,
           const std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t,
                                        std::int64_t, std::string>>& eqs) {
            std::vector<LinearEquation> parsed;
            for (const auto& t : eqs) parsed.push_back(eq_from_tuple(t));
            return greedy_solution_free(mm, parsed).elements;
        },
        py::arg("m"), py::arg("equations"));

    m.def(
        "canonicalize",
        [](std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t a4) {
            return eq_to_tuple(canonicalize(LinearEquation{{a1, a2, a3, a4}}));
        },
        py::arg("a1"), py::arg("a2"), py::arg("a3"), py::arg("a4"));

    m.def("shift_intersect", &shift_intersect, py::arg("s0"), py::arg("s1"), py::arg("u"),
          py::arg("m"));

    m.def(
        "random_shift_search",
        [](const std::vector<std::int64_t>& s0, const std::vector<std::int64_t>& s1,
           std::int64_t mm, std::uint64_t seed, std::int64_t trials) {
            auto res = random_shift_search(s0, s1, mm, seed, trials);
            return py::make_tuple(res.u, res.set);
        },
        py::arg("s0"), py::arg("s1"), py::arg("m"), py::arg("seed"), py::arg("trials"));

    m.def(
        "construct",
        [](std::int64_t mm, int threads) {
            auto res = end_to_end(mm, std::nullopt, threads);
            py::dict out;
            out["m"] = res.params.m;
            out["q"] = res.params.q;
            out["n"] = res.params.n;
            out["set"] = res.set.elements;
            out["blocks"] = res.system.blocks.size();
            out["system_json"] = serialize_set_system(res.system);
            out["pass"] = res.report.pass;
            return out;
        },
        py::arg("m"), py::arg("threads") = 1);

    m.def(
        "verify_set_system",
        [](const std::string& system_json, const std::string& mode, int t, int threads) {
            auto sys = parse_set_system(system_json);
            VerificationReport rep;
            if (mode == "bruteforce")
                rep = verify_ipps_bruteforce(sys, t);
            else
                rep = verify_ipps2(sys, mode_of(mode), threads);
            return report_to_json(rep, &sys);
        },
        py::arg("system_json"), py::arg("mode") = "fast", py::arg("t") = 2,
        py::arg("threads") = 1);

    m.def(
        "trace",
        [](const std::string& system_json, const std::vector<std::int64_t>& points, int t) {
            auto sys = parse_set_system(system_json);
            auto res = trace(sys, points, t);
            py::dict out;
            out["status"] = res.status == TraceStatus::Identified      ? "identified"
                            : res.status == TraceStatus::NoParents     ? "no-parents"
                                                                        : "unidentifiable";
            std::vector<int> blocks;
            for (int b : res.blocks) blocks.push_back(b + 1);
            out["blocks"] = blocks;
            return out;
        },
        py::arg("system_json"), py::arg("points"), py::arg("t") = 2);

    m.def("hamming_ternary", [] {
        std::vector<std::string> out;
        for (const auto& w : hamming_ternary().words) {
            std::string s;
            for (int sym : w) s.push_back(static_cast<char>('0' + sym));
            out.push_back(s);
        }
        return out;
    });

    m.def(
        "kautz_singleton",
        [](const std::string& code_json) {
            return serialize_set_system(kautz_singleton(parse_code(code_json)));
        },
        py::arg("code_json"));

    m.def(
        "verify_code",
        [](const std::string& code_json, int t) {
            return report_to_json(verify_ippc_bruteforce(parse_code(code_json), t));
        },
        py::arg("code_json"), py::arg("t") = 2);

    m.def(
        "bounds",
        [](std::int64_t n, std::int64_t k, std::int64_t t,
           std::optional<std::int64_t> achieved) {
            return bounds_to_json(bounds_report(n, k, t, achieved));
        },
        py::arg("n"), py::arg("k"), py::arg("t"), py::arg("achieved") = py::none());

    m.def("run_experiment", &run_experiment, py::arg("m_list"), py::arg("seed"),
          py::arg("threads") = 1);
}
