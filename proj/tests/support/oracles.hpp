#pragma once

// Test-side oracles, deliberately independent of the library's pruned paths:
// plain quadruple scans and std::set algebra only.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "ipps/core.hpp"
#include "ipps/equations.hpp"

namespace oracles {

// exhaustive S^4 scan, lexicographically smallest non-trivial solution
inline std::optional<ipps::Assignment> exhaustive_nontrivial(
    const std::vector<std::int64_t>& S, const ipps::LinearEquation& eq) {
    std::vector<std::int64_t> sorted = S;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (auto x : sorted)
        for (auto y : sorted)
            for (auto z : sorted)
                for (auto w : sorted) {
                    if (eq.coeffs[0] * x + eq.coeffs[1] * y + eq.coeffs[2] * z +
                            eq.coeffs[3] * w !=
                        0)
                        continue;
                    ipps::Assignment v{x, y, z, w};
                    if (!ipps::is_trivial_solution(eq, v)) return v;
                }
    return std::nullopt;
}

inline std::set<std::int64_t> to_set(const std::vector<std::int64_t>& v) {
    return {v.begin(), v.end()};
}

inline std::set<std::int64_t> set_union(const std::set<std::int64_t>& a,
                                        const std::set<std::int64_t>& b) {
    std::set<std::int64_t> out = a;
    out.insert(b.begin(), b.end());
    return out;
}

inline std::set<std::int64_t> set_inter(const std::set<std::int64_t>& a,
                                        const std::set<std::int64_t>& b) {
    std::set<std::int64_t> out;
    for (auto x : a)
        if (b.count(x)) out.insert(x);
    return out;
}

// (A u B) n (A u C) n (B u C), straight from the definition
inline std::set<std::int64_t> triple_union_intersection(const std::set<std::int64_t>& A,
                                                        const std::set<std::int64_t>& B,
                                                        const std::set<std::int64_t>& C) {
    return set_inter(set_inter(set_union(A, B), set_union(A, C)), set_union(B, C));
}

// seeded random set system: k=4 blocks over [1, n]
inline ipps::SetSystem random_system(std::mt19937_64& rng, int n, int max_blocks,
                                     int min_blocks = 2) {
    std::uniform_int_distribution<int> nblocks(min_blocks, max_blocks);
    int want = nblocks(rng);
    std::set<std::vector<std::int64_t>> blocks;
    std::vector<std::int64_t> universe(n);
    for (int i = 0; i < n; ++i) universe[i] = i + 1;
    int guard = 0;
    while (static_cast<int>(blocks.size()) < want && ++guard < 1000) {
        std::vector<std::int64_t> pool = universe;
        for (int i = 0; i < 4; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
            std::swap(pool[i], pool[pick(rng)]);
        }
        std::vector<std::int64_t> b(pool.begin(), pool.begin() + 4);
        std::sort(b.begin(), b.end());
        blocks.insert(b);
    }
    std::vector<std::vector<std::int64_t>> raw(blocks.begin(), blocks.end());
    return ipps::validate_set_system(n, 4, std::nullopt, raw);
}

}  // namespace oracles
