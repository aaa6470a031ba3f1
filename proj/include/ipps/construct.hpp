#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ipps/core.hpp"
#include "ipps/equations.hpp"

namespace ipps {

// Parameters of the block family over [4] x [(q+6)m]: block(p, s) carries
// value p + slopes[i]*s at coordinate i+1, slopes = (0, 2, 5, q+5).
struct ConstructionParams {
    std::int64_t m = 0;
    std::int64_t q = 0;
    std::int64_t n = 0;  // 4*(q+6)*m
    std::array<std::int64_t, 4> slopes{};
};

inline constexpr std::int64_t kMaxM = 1 << 20;

// q = ceil(2^sqrt(log2 m)), certified by directed-rounding interval
// evaluation (MPFR), with powers 2^(j^2) resolved exactly.
std::int64_t q_of_m(std::int64_t m);

ConstructionParams make_params(std::int64_t m);
std::int64_t ground_size(const ConstructionParams& params);
bool check_pairwise_noncollinear(const ConstructionParams& params);

Block make_block(std::int64_t p, std::int64_t s, const ConstructionParams& params);

// Mechanized case analysis: enumerates coordinate choices for the four
// pirate points, their assignment to the two B-parents, eliminates the
// offsets exactly, discards matchings that force two parent blocks to
// coincide, and canonicalizes the surviving slope equations.
//
// A coefficient-matched triviality class is accepted only if its equalities
// force a block coincidence; otherwise, when the class is realizable within
// [1, m] (offset span check), the equation is kept with AllEqual triviality.
std::vector<LinearEquation> derive_required_equations(const ConstructionParams& params);

// |blocks| = m * |S| exactly; requires S solution-free for the derived
// equation set.
SetSystem build_ipps(const ConstructionParams& params, const SolutionFreeSet& S);

struct EndToEndResult {
    ConstructionParams params;
    SolutionFreeSet set;
    SetSystem system;
    VerificationReport report;
};

// Greedy set unless one is provided. Throws logic_error if the built system
// fails verification (that would be an implementation bug, not data).
EndToEndResult end_to_end(std::int64_t m,
                          std::optional<SolutionFreeSet> provided = std::nullopt,
                          int threads = 1);

}  // namespace ipps
