#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ipps {

struct VerifyStats {
    std::uint64_t examined = 0;  // tuples / candidates actually checked
    std::uint64_t pruned = 0;    // tuples skipped by a pruning argument
    std::uint64_t work = 0;      // deterministic inner-step counter
};

// Structured counterexample. Only the fields relevant to the reported
// property are populated; indices are 0-based here and 1-based in JSON.
struct Witness {
    std::vector<int> blocks;                  // IPPSa triple
    std::vector<std::vector<int>> parents;    // IPPSb pairing / parent family
    std::vector<std::int64_t> points;         // pirate set T or offending set
    std::vector<int> word;                    // IPPC descendant
    std::array<std::int64_t, 4> equation{};   // solution-free: coefficients
    bool equation_cm = false;
    std::array<std::int64_t, 4> assignment{};
    bool has_equation = false;
};

struct VerificationReport {
    std::string property;  // IPPSa | IPPSb | IPPS-2 | IPPS-def | IPPC-def | solution-free
    bool pass = true;
    std::optional<Witness> witness;
    VerifyStats stats;
};

}  // namespace ipps
