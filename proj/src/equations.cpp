#include "ipps/equations.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace ipps {

using nlohmann::json;
using nlohmann::ordered_json;

bool is_homogeneous(const LinearEquation& eq) {
    return eq.coeffs[0] + eq.coeffs[1] + eq.coeffs[2] + eq.coeffs[3] == 0;
}

bool is_cm_shape(const std::array<std::int64_t, 4>& c) {
    return c[0] > 0 && c[1] > 0 && c[2] == -c[0] && c[3] == -c[1];
}

void check_equation(const LinearEquation& eq) {
    const auto& c = eq.coeffs;
    if (c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0)
        throw input_error("equation: all coefficients zero");
    if (!is_homogeneous(eq))
        throw input_error("equation: coefficients must sum to zero");
    for (auto x : c)
        if (std::abs(x) > (1 << 13))
            throw input_error("equation: coefficient magnitude exceeds the 2^13 guard");
    if (eq.triviality == Triviality::CoefficientMatched && !is_cm_shape(c))
        throw input_error("equation: CM tag requires the shape (a, b, -a, -b), a,b > 0");
}

bool is_trivial_solution(const LinearEquation& eq, const Assignment& v) {
    if (eq.triviality == Triviality::CoefficientMatched) {
        std::int64_t a = eq.coeffs[0], b = eq.coeffs[1];
        if (v[0] == v[2] && v[1] == v[3]) return true;
        return a == b && v[0] == v[3] && v[1] == v[2];
    }
    return v[0] == v[1] && v[1] == v[2] && v[2] == v[3];
}

namespace {

// scalar order: 0 < positives ascending < negatives by magnitude
std::pair<int, std::int64_t> scalar_key(std::int64_t c) {
    if (c == 0) return {0, 0};
    if (c > 0) return {1, c};
    return {2, -c};
}

bool tuple_less(const std::array<std::int64_t, 4>& a, const std::array<std::int64_t, 4>& b) {
    for (int i = 0; i < 4; ++i) {
        auto ka = scalar_key(a[i]), kb = scalar_key(b[i]);
        if (ka != kb) return ka < kb;
    }
    return false;
}

constexpr int kPerms[24][4] = {
    {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {0, 3, 2, 1},
    {1, 0, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 2, 3, 0}, {1, 3, 0, 2}, {1, 3, 2, 0},
    {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 1, 0, 3}, {2, 1, 3, 0}, {2, 3, 0, 1}, {2, 3, 1, 0},
    {3, 0, 1, 2}, {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 0, 1}, {3, 2, 1, 0}};

}  // namespace

LinearEquation canonicalize(const LinearEquation& eq) {
    const auto& c = eq.coeffs;
    if (c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0)
        throw input_error("canonicalize: all coefficients zero");
    std::int64_t g = 0;
    for (auto x : c) g = std::gcd(g, std::abs(x));
    std::array<std::int64_t, 4> base{c[0] / g, c[1] / g, c[2] / g, c[3] / g};

    std::array<std::int64_t, 4> best{};
    bool first = true;
    for (const auto& perm : kPerms) {
        for (int sign : {1, -1}) {
            std::array<std::int64_t, 4> cand{sign * base[perm[0]], sign * base[perm[1]],
                                             sign * base[perm[2]], sign * base[perm[3]]};
            if (first || tuple_less(cand, best)) {
                best = cand;
                first = false;
            }
        }
    }
    LinearEquation out;
    out.coeffs = best;
    out.triviality =
        is_cm_shape(best) ? Triviality::CoefficientMatched : Triviality::AllEqual;
    return out;
}

namespace {

// membership structure over positive values
class ValueSet {
public:
    explicit ValueSet(const std::vector<std::int64_t>& sorted) {
        if (!sorted.empty() && sorted.back() <= (1 << 22)) {
            bitmap_.assign(static_cast<std::size_t>(sorted.back()) + 1, 0);
            for (auto v : sorted) bitmap_[static_cast<std::size_t>(v)] = 1;
        } else {
            hash_.insert(sorted.begin(), sorted.end());
        }
    }
    bool contains(std::int64_t v) const {
        if (!bitmap_.empty())
            return v >= 0 && v < static_cast<std::int64_t>(bitmap_.size()) &&
                   bitmap_[static_cast<std::size_t>(v)];
        return hash_.count(v) > 0;
    }

private:
    std::vector<char> bitmap_;
    std::unordered_set<std::int64_t> hash_;
};

std::vector<std::int64_t> sorted_unique(std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Coefficient-matched shape: a*x + b*y = a*z + b*w. Index pair sums and
// probe them in (x, y) order so the first hit is the lexicographic minimum.
std::optional<Assignment> find_cm(const std::vector<std::int64_t>& S,
                                  const LinearEquation& eq, VerifyStats* stats) {
    std::int64_t a = eq.coeffs[0], b = eq.coeffs[1];
    std::unordered_map<std::int64_t, std::vector<std::pair<std::int64_t, std::int64_t>>> sums;
    sums.reserve(S.size() * S.size());
    for (auto z : S)
        for (auto w : S) sums[a * z + b * w].push_back({z, w});
    // (z, w) lists come out in lexicographic order because S is sorted
    for (auto x : S) {
        for (auto y : S) {
            if (stats) ++stats->examined;
            auto it = sums.find(a * x + b * y);
            if (it == sums.end()) continue;
            for (const auto& [z, w] : it->second) {
                if (stats) ++stats->work;
                Assignment v{x, y, z, w};
                if (!is_trivial_solution(eq, v)) return v;
            }
        }
    }
    return std::nullopt;
}

std::optional<Assignment> find_generic(const std::vector<std::int64_t>& S,
                                       const LinearEquation& eq, VerifyStats* stats) {
    const auto& c = eq.coeffs;
    ValueSet member(S);
    if (c[3] != 0) {
        for (auto x : S)
            for (auto y : S)
                for (auto z : S) {
                    if (stats) ++stats->examined;
                    std::int64_t num = -(c[0] * x + c[1] * y + c[2] * z);
                    if (num % c[3] != 0) continue;
                    std::int64_t w = num / c[3];
                    if (!member.contains(w)) continue;
                    Assignment v{x, y, z, w};
                    if (!is_trivial_solution(eq, v)) return v;
                }
        return std::nullopt;
    }
    // free fourth variable: the equation constrains (x, y, z) only
    for (auto x : S)
        for (auto y : S)
            for (auto z : S) {
                if (stats) ++stats->examined;
                if (c[0] * x + c[1] * y + c[2] * z != 0) continue;
                for (auto w : S) {
                    Assignment v{x, y, z, w};
                    if (!is_trivial_solution(eq, v)) return v;
                }
            }
    return std::nullopt;
}

}  // namespace

std::optional<Assignment> find_nontrivial_solution(const std::vector<std::int64_t>& S,
                                                   const LinearEquation& eq,
                                                   VerifyStats* stats) {
    check_equation(eq);
    auto sorted = sorted_unique(S);
    if (!sorted.empty() && (sorted.front() < 1 || sorted.back() > (1 << 20)))
        throw input_error("find_nontrivial_solution: elements must lie in [1, 2^20]");
    if (sorted.empty()) return std::nullopt;
    if (is_cm_shape(eq.coeffs)) return find_cm(sorted, eq, stats);
    return find_generic(sorted, eq, stats);
}

VerificationReport verify_solution_free(const std::vector<std::int64_t>& S,
                                        const std::vector<LinearEquation>& eqs) {
    VerificationReport rep;
    rep.property = "solution-free";
    auto ordered = eqs;
    std::sort(ordered.begin(), ordered.end());
    ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());
    for (const auto& eq : ordered) {
        auto hit = find_nontrivial_solution(S, eq, &rep.stats);
        if (hit) {
            rep.pass = false;
            Witness w;
            w.has_equation = true;
            w.equation = eq.coeffs;
            w.equation_cm = eq.triviality == Triviality::CoefficientMatched;
            w.assignment = *hit;
            rep.witness = w;
            return rep;
        }
    }
    return rep;
}

SolutionFreeSet greedy_solution_free(std::int64_t m, const std::vector<LinearEquation>& eqs) {
    if (m < 1) throw input_error("greedy_solution_free: m must be >= 1");
    if (m > (1 << 20)) throw input_error("greedy_solution_free: m exceeds the 2^20 guard");
    for (const auto& eq : eqs) check_equation(eq);

    SolutionFreeSet out;
    out.m = m;
    out.avoided = eqs;
    std::sort(out.avoided.begin(), out.avoided.end());
    out.avoided.erase(std::unique(out.avoided.begin(), out.avoided.end()), out.avoided.end());

    for (std::int64_t s = 1; s <= m; ++s) {
        out.elements.push_back(s);
        bool ok = true;
        for (const auto& eq : out.avoided) {
            if (find_nontrivial_solution(out.elements, eq)) {
                ok = false;
                break;
            }
        }
        if (!ok) out.elements.pop_back();
    }
    return out;
}

std::vector<std::int64_t> shift_intersect(const std::vector<std::int64_t>& s0,
                                          const std::vector<std::int64_t>& s1,
                                          std::int64_t u, std::int64_t m) {
    std::unordered_set<std::int64_t> shifted;
    shifted.reserve(s0.size());
    for (auto x : s0) shifted.insert(x + u);
    std::vector<std::int64_t> out;
    for (auto y : sorted_unique(s1))
        if (y >= 1 && y <= m && shifted.count(y)) out.push_back(y);
    return out;
}

ShiftSearchResult random_shift_search(const std::vector<std::int64_t>& s0,
                                      const std::vector<std::int64_t>& s1,
                                      std::int64_t m, std::uint64_t seed,
                                      std::int64_t trials) {
    if (trials < 1) throw input_error("random_shift_search: trials must be >= 1");
    if (m < 1) throw input_error("random_shift_search: m must be >= 1");
    std::mt19937_64 rng(seed);
    const std::uint64_t range = static_cast<std::uint64_t>(2 * m + 1);
    const std::uint64_t limit =
        range * (std::numeric_limits<std::uint64_t>::max() / range);

    ShiftSearchResult best;
    bool have = false;
    for (std::int64_t t = 0; t < trials; ++t) {
        std::uint64_t r;
        do {
            r = rng();
        } while (r >= limit);
        std::int64_t u = static_cast<std::int64_t>(r % range) - m;
        auto inter = shift_intersect(s0, s1, u, m);
        if (!have || inter.size() > best.set.size() ||
            (inter.size() == best.set.size() && u < best.u)) {
            best.u = u;
            best.set = std::move(inter);
            have = true;
        }
    }
    return best;
}

std::vector<LinearEquation> parse_equation_list(const std::string& text) {
    std::vector<LinearEquation> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        LinearEquation eq;
        if (!(ls >> eq.coeffs[0])) continue;  // blank or comment-only line
        if (!(ls >> eq.coeffs[1] >> eq.coeffs[2] >> eq.coeffs[3]))
            throw input_error("equations line " + std::to_string(lineno) +
                              ": expected four integers");
        std::string tag;
        if (ls >> tag) {
            if (tag == "CM")
                eq.triviality = Triviality::CoefficientMatched;
            else
                throw input_error("equations line " + std::to_string(lineno) +
                                  ": unknown tag \"" + tag + "\"");
        }
        try {
            check_equation(eq);
        } catch (const input_error& e) {
            throw input_error("equations line " + std::to_string(lineno) + ": " + e.what());
        }
        out.push_back(eq);
    }
    return out;
}

std::string serialize_equation_list(const std::vector<LinearEquation>& eqs) {
    std::ostringstream os;
    for (const auto& eq : eqs) {
        os << eq.coeffs[0] << ' ' << eq.coeffs[1] << ' ' << eq.coeffs[2] << ' '
           << eq.coeffs[3];
        if (eq.triviality == Triviality::CoefficientMatched) os << " CM";
        os << '\n';
    }
    return os.str();
}

std::string solution_free_set_to_json(const SolutionFreeSet& s) {
    ordered_json j;
    j["m"] = s.m;
    j["elements"] = s.elements;
    auto eqs = json::array();
    for (const auto& eq : s.avoided) {
        auto je = json::array();
        for (auto c : eq.coeffs) je.push_back(c);
        je.push_back(eq.triviality == Triviality::CoefficientMatched ? "CM" : "AE");
        eqs.push_back(std::move(je));
    }
    j["equations"] = std::move(eqs);
    return j.dump(2) + "\n";
}

SolutionFreeSet solution_free_set_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("m") || !j.contains("elements"))
        throw input_error("expected {\"m\": int, \"elements\": [...], \"equations\": [...]}");
    SolutionFreeSet out;
    out.m = j["m"].get<std::int64_t>();
    for (const auto& e : j["elements"]) out.elements.push_back(e.get<std::int64_t>());
    if (!std::is_sorted(out.elements.begin(), out.elements.end()) ||
        std::adjacent_find(out.elements.begin(), out.elements.end()) != out.elements.end())
        throw input_error("elements: must be strictly increasing");
    for (auto e : out.elements)
        if (e < 1 || e > out.m) throw input_error("elements: outside [1, m]");
    if (j.contains("equations")) {
        for (const auto& je : j["equations"]) {
            if (!je.is_array() || je.size() < 4)
                throw input_error("equations: expected [a1, a2, a3, a4, tag]");
            LinearEquation eq;
            for (int i = 0; i < 4; ++i) eq.coeffs[i] = je[i].get<std::int64_t>();
            if (je.size() > 4 && je[4].get<std::string>() == "CM")
                eq.triviality = Triviality::CoefficientMatched;
            check_equation(eq);
            out.avoided.push_back(eq);
        }
    }
    return out;
}

bool recheck_solution_free_witness(const std::vector<std::int64_t>& S,
                                   const LinearEquation& eq, const Assignment& v) {
    std::int64_t sum = 0;
    for (int i = 0; i < 4; ++i) {
        bool found = std::find(S.begin(), S.end(), v[i]) != S.end();
        if (!found) return false;
        sum += eq.coeffs[i] * v[i];
    }
    return sum == 0 && !is_trivial_solution(eq, v);
}

}  // namespace ipps
