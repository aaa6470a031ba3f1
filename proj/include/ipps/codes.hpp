#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ipps/core.hpp"
#include "ipps/report.hpp"

namespace ipps {

// q-ary code of fixed length: distinct words over symbols [1, q].
struct Code {
    std::int64_t q = 0;
    std::int64_t length = 0;
    std::vector<std::vector<int>> words;

    bool operator==(const Code&) const = default;
};

Code validate_code(std::int64_t q, std::int64_t length,
                   const std::vector<std::vector<int>>& words);
Code parse_code(const std::string& text);
std::string serialize_code(const Code& code);

// Coordinate-wise descendant set of the given coalition, sorted.
std::vector<std::vector<int>> desc(const Code& code, const std::vector<int>& coalition);

// Definition-direct check; descendants d are enumerated over the union of
// desc(S) for |S| <= t instead of [q]^length. Guard: |C| <= 16, t <= 3.
VerificationReport verify_ippc_bruteforce(const Code& code, int t);

// Word w of length L -> block {(i, w_i)} over [L] x [q]; block order is word
// order, n = L*q, k = L.
SetSystem kautz_singleton(const Code& code);

// The ternary length-4 Hamming code on 9 words.
Code hamming_ternary();

bool recheck_code_witness(const Code& code, const VerificationReport& rep);

}  // namespace ipps
