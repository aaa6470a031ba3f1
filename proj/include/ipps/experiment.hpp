#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ipps {

// One construction + verification run per m; CSV with a header row, ratios
// to six decimal places. The exhaustive IPPSb scan is skipped (column says
// "skip") once 3*C(|B|,4) would exceed kExhaustiveBudget.
inline constexpr std::uint64_t kExhaustiveBudget = 300000000ULL;

std::string run_experiment(const std::vector<std::int64_t>& m_list,
                           std::uint64_t seed, int threads = 1);

}  // namespace ipps
