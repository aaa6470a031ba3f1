#include "ipps/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ipps/construct.hpp"
#include "ipps/verify.hpp"

namespace ipps {

namespace {

std::uint64_t choose4(std::uint64_t n) {
    if (n < 4) return 0;
    return n * (n - 1) / 2 * (n - 2) / 3 * (n - 3) / 4;
}

std::string fixed6(long double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6Lf", v);
    return buf;
}

}  // namespace

std::string run_experiment(const std::vector<std::int64_t>& m_list, std::uint64_t seed,
                           int threads) {
    std::ostringstream csv;
    csv << "m,q,n,set_size,blocks,verdict_fast,verdict_exhaustive,examined_fast,"
           "pruned_fast,examined_exhaustive,ratio_s_sqrt_m,ratio_logb_logn,seed\n";

    for (auto m : m_list) {
        auto res = end_to_end(m, std::nullopt, threads);
        const auto& sys = res.system;

        auto fast = verify_ipps2(sys, VerifyMode::Fast, threads);
        std::string verdict_exh = "skip";
        std::uint64_t examined_exh = 0;
        if (3 * choose4(sys.blocks.size()) <= kExhaustiveBudget) {
            auto exh = verify_ipps2(sys, VerifyMode::Exhaustive, threads);
            verdict_exh = exh.pass ? "pass" : "fail";
            examined_exh = exh.stats.examined;
        }

        long double s_sqrt_m = static_cast<long double>(res.set.elements.size()) /
                               std::sqrt(static_cast<long double>(m));
        long double logb_logn =
            std::log(static_cast<long double>(sys.blocks.size())) /
            std::log(static_cast<long double>(sys.n));

        csv << m << ',' << res.params.q << ',' << sys.n << ',' << res.set.elements.size()
            << ',' << sys.blocks.size() << ',' << (fast.pass ? "pass" : "fail") << ','
            << verdict_exh << ',' << fast.stats.examined << ',' << fast.stats.pruned << ','
            << examined_exh << ',' << fixed6(s_sqrt_m) << ',' << fixed6(logb_logn) << ','
            << seed << '\n';
    }
    return csv.str();
}

}  // namespace ipps
