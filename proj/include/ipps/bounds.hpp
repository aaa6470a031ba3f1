#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ipps {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool operator==(const Rational&) const = default;
};

// Size bounds for t-IPPS(n, k) families.
//   upper_binomial  C(n, ceil(k / (floor(t^2/4) + t))), exact
//   mu              floor((t/2 + 1)^2)
//   lower_exponent  k / (mu - 1): a known construction reaches c * n^that
//   special_k4      extra regimes known for k = 4, t = 2
struct BoundsReport {
    std::int64_t n = 0, k = 0, t = 0;
    std::string upper_binomial;  // decimal string (can exceed 64 bits)
    std::int64_t mu = 0;
    Rational lower_exponent;
    std::vector<std::string> special_k4;
    std::optional<std::int64_t> achieved;
    std::optional<std::string> achieved_ratio;  // achieved / n^(3/2), 6 places
};

BoundsReport bounds_report(std::int64_t n, std::int64_t k, std::int64_t t,
                           std::optional<std::int64_t> achieved = std::nullopt);

std::string bounds_to_json(const BoundsReport& rep);

}  // namespace ipps
