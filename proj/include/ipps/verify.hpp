#pragma once

#include <cstdint>
#include <vector>

#include "ipps/core.hpp"
#include "ipps/report.hpp"

namespace ipps {

enum class VerifyMode { Fast, Exhaustive };

// IPPSa: for all distinct A, B, C: |(A u B) n (A u C) n (B u C)| < k,
// computed through the identity with (A n B) u (A n C) u (B n C).
VerificationReport verify_ippsa(const SetSystem& sys, int threads = 1);

// IPPSb: for every 4-subset and each of its three pairings {A1,A2 | B1,B2}:
// |(A1 u A2) n (B1 u B2)| < k.  Witness: first violation by (quad, pairing)
// where pairings of a sorted quad (a,b,c,d) are tried as (ac|bd), (ad|bc),
// (ab|cd); T is the k smallest points of the offending intersection.
VerificationReport verify_ippsb(const SetSystem& sys, int threads = 1);

// Conjunction of IPPSa and IPPSb.  Fast mode prunes the IPPSb scan through a
// point->blocks inverted index (valid when max pairwise intersection <= 1
// and k = 4: a violating pairing needs all four cross intersections
// nonempty); it falls back to the exhaustive scan otherwise.
VerificationReport verify_ipps2(const SetSystem& sys, VerifyMode mode, int threads = 1);

struct ParentSetFamily {
    std::vector<std::int64_t> pirate;       // T, sorted flat points
    std::vector<std::vector<int>> parents;  // every subset of <= t blocks covering T
};

ParentSetFamily parent_sets(const SetSystem& sys, const std::vector<std::int64_t>& T, int t);

// Definition-direct oracle. Candidate pirates are the k-subsets of unions of
// <= t blocks (any T with nonempty parent family is such a subset). Guarded:
// n <= 64, |B| <= 12, t <= 3, k <= 6.
VerificationReport verify_ipps_bruteforce(const SetSystem& sys, int t);

enum class TraceStatus { Identified, NoParents, Unidentifiable };

struct TraceResult {
    TraceStatus status = TraceStatus::NoParents;
    std::vector<int> blocks;  // 0-based indices common to every parent set
};

TraceResult trace(const SetSystem& sys, const std::vector<std::int64_t>& T, int t);

std::int64_t max_pairwise_intersection(const SetSystem& sys);

// Independent re-validation of a fail witness by plain set algebra.
bool recheck_witness(const SetSystem& sys, const VerificationReport& rep);

}  // namespace ipps
