#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ipps/bitset.hpp"
#include "ipps/report.hpp"

namespace ipps {

// Raised for malformed or invariant-violating input; maps to CLI exit code 2.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Ground sets are flat integer ranges [1, n]. A product universe [L] x [V]
// is encoded canonically as (coordinate-1)*V + value, so every verifier
// works on flat point ids; the product shape is kept for serialization.
struct ProductShape {
    std::int64_t L = 0;
    std::int64_t V = 0;
    bool operator==(const ProductShape&) const = default;
};

struct Point {
    std::int64_t coordinate = 0;
    std::int64_t value = 0;
    bool operator==(const Point&) const = default;
};

inline std::int64_t flat_point(const ProductShape& p, std::int64_t coord, std::int64_t value) {
    return (coord - 1) * p.V + value;
}
inline Point product_point(const ProductShape& p, std::int64_t flat) {
    return Point{(flat - 1) / p.V + 1, (flat - 1) % p.V + 1};
}

struct Block {
    std::vector<std::int64_t> points;  // sorted flat ids, exactly k of them
    Bitset mask;                       // width n, same content

    bool operator==(const Block& o) const { return points == o.points; }
};

struct SetSystem {
    std::int64_t n = 0;
    std::int64_t k = 0;
    std::optional<ProductShape> product;
    std::vector<Block> blocks;  // file order preserved

    bool operator==(const SetSystem& o) const {
        return n == o.n && k == o.k && product == o.product && blocks == o.blocks;
    }
};

// Validates and normalizes a raw system; throws input_error naming the
// offending block/point on duplicate block, size mismatch, out-of-range
// point or k > n.
SetSystem validate_set_system(std::int64_t n, std::int64_t k,
                              std::optional<ProductShape> product,
                              const std::vector<std::vector<std::int64_t>>& raw_blocks);

SetSystem parse_set_system(const std::string& text);
std::string serialize_set_system(const SetSystem& sys);

// Pirate-set file: {"points": [...]} with the same point conventions as
// block entries.
std::vector<std::int64_t> parse_point_set(const std::string& text, const SetSystem& sys);

// Report rendering; points are written as [coordinate, value] pairs when the
// system carries a product shape. Block indices are 1-based in JSON.
std::string report_to_json(const VerificationReport& rep, const SetSystem* sys);
std::string report_to_json(const VerificationReport& rep);

}  // namespace ipps
