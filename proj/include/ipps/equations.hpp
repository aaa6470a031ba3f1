#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ipps/core.hpp"
#include "ipps/report.hpp"

namespace ipps {

// Homogeneous linear equation a1*x + a2*y + a3*z + a4*w = 0.
//
// Triviality picks which solutions do not count as violations:
//   AllEqual           x = y = z = w
//   CoefficientMatched for the shape a*x + b*y - a*z - b*w: (x=z and y=w),
//                      plus (x=w and y=z) when a = b.  This is the usual
//                      B2 convention; without it every 2-element set would
//                      "solve" x + y = z + w via x=w, y=z.
enum class Triviality { AllEqual, CoefficientMatched };

struct LinearEquation {
    std::array<std::int64_t, 4> coeffs{};
    Triviality triviality = Triviality::AllEqual;

    bool operator==(const LinearEquation&) const = default;
    auto operator<=>(const LinearEquation&) const = default;
};

using Assignment = std::array<std::int64_t, 4>;

struct SolutionFreeSet {
    std::int64_t m = 0;
    std::vector<std::int64_t> elements;  // strictly increasing, within [1, m]
    std::vector<LinearEquation> avoided;
};

bool is_homogeneous(const LinearEquation& eq);
bool is_cm_shape(const std::array<std::int64_t, 4>& coeffs);

// Throws input_error when coefficients are all zero, the sum is nonzero, or
// a CoefficientMatched tag sits on a non-matching shape.
void check_equation(const LinearEquation& eq);

bool is_trivial_solution(const LinearEquation& eq, const Assignment& asg);

// Lexicographically smallest non-trivial solution over S^4, or nullopt.
// Prunes by solving for the fourth variable (and by pair-sum lookup for the
// coefficient-matched shape); agreement with the plain S^4 scan is part of
// the test suite.
std::optional<Assignment> find_nontrivial_solution(const std::vector<std::int64_t>& S,
                                                   const LinearEquation& eq,
                                                   VerifyStats* stats = nullptr);

VerificationReport verify_solution_free(const std::vector<std::int64_t>& S,
                                        const std::vector<LinearEquation>& eqs);

// Ascending first-fit scan of [1, m].
SolutionFreeSet greedy_solution_free(std::int64_t m, const std::vector<LinearEquation>& eqs);

std::vector<std::int64_t> shift_intersect(const std::vector<std::int64_t>& s0,
                                          const std::vector<std::int64_t>& s1,
                                          std::int64_t u, std::int64_t m);

struct ShiftSearchResult {
    std::int64_t u = 0;
    std::vector<std::int64_t> set;
};

// Samples u uniformly from [-m, m] `trials` times (mt19937_64, rejection
// sampling); keeps the largest intersection, ties broken by smallest u.
ShiftSearchResult random_shift_search(const std::vector<std::int64_t>& s0,
                                      const std::vector<std::int64_t>& s1,
                                      std::int64_t m, std::uint64_t seed,
                                      std::int64_t trials);

// Orbit representative under variable permutation and global sign flip,
// after gcd division.  The scalar order is 0, then positives ascending,
// then negatives by magnitude; this lands Ruzsa-shape orbits exactly on
// (a, b, -a, -b), which the CoefficientMatched tag requires.
LinearEquation canonicalize(const LinearEquation& eq);

// Text format: one equation per line, "a1 a2 a3 a4 [CM]", '#' comments.
std::vector<LinearEquation> parse_equation_list(const std::string& text);
std::string serialize_equation_list(const std::vector<LinearEquation>& eqs);

std::string solution_free_set_to_json(const SolutionFreeSet& s);
SolutionFreeSet solution_free_set_from_json(const std::string& text);

// Direct re-check used by report consumers: exact evaluation, no pruning.
bool recheck_solution_free_witness(const std::vector<std::int64_t>& S,
                                   const LinearEquation& eq, const Assignment& asg);

}  // namespace ipps
