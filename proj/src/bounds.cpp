#include "ipps/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include <gmpxx.h>
#include <json.hpp>

#include "ipps/core.hpp"

namespace ipps {

using nlohmann::json;
using nlohmann::ordered_json;

BoundsReport bounds_report(std::int64_t n, std::int64_t k, std::int64_t t,
                           std::optional<std::int64_t> achieved) {
    if (!(n >= k && k >= 2 && t >= 2))
        throw input_error("bounds_report: need n >= k >= 2 and t >= 2");

    BoundsReport rep;
    rep.n = n;
    rep.k = k;
    rep.t = t;

    std::int64_t denom = (t * t) / 4 + t;
    std::int64_t r = (k + denom - 1) / denom;  // ceil(k / denom)
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(r));
    rep.upper_binomial = binom.get_str();

    rep.mu = ((t + 2) * (t + 2)) / 4;  // floor((t/2 + 1)^2)
    std::int64_t num = k, den = rep.mu - 1;
    std::int64_t g = std::gcd(num, den);
    rep.lower_exponent = Rational{num / g, den / g};

    if (k == 4 && t == 2) {
        rep.special_k4 = {"max size is o(n^2)", "probabilistic lower bound Omega(n^{4/3+o(1)})",
                          "solution-free-set construction reaches Omega(n^{3/2-o(1)})"};
    }

    if (achieved) {
        rep.achieved = achieved;
        if (k == 4 && t == 2) {
            long double ratio =
                static_cast<long double>(*achieved) / std::pow(static_cast<long double>(n), 1.5L);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6Lf", ratio);
            rep.achieved_ratio = buf;
        }
    }
    return rep;
}

std::string bounds_to_json(const BoundsReport& rep) {
    ordered_json j;
    j["n"] = rep.n;
    j["k"] = rep.k;
    j["t"] = rep.t;
    // exact value; emitted as a number only when it fits 64 bits
    mpz_class binom(rep.upper_binomial);
    if (binom.fits_slong_p())
        j["upper_binomial"] = static_cast<std::int64_t>(binom.get_si());
    else
        j["upper_binomial"] = rep.upper_binomial;
    j["mu"] = rep.mu;
    j["lower_exponent"] =
        std::to_string(rep.lower_exponent.num) + "/" + std::to_string(rep.lower_exponent.den);
    if (!rep.special_k4.empty()) j["special_k4"] = rep.special_k4;
    if (rep.achieved) {
        j["achieved"] = *rep.achieved;
        if (rep.achieved_ratio) j["achieved_over_n32"] = *rep.achieved_ratio;
    }
    return j.dump(2) + "\n";
}

}  // namespace ipps
