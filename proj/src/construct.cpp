#include "ipps/construct.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include <mpfr.h>

#include "ipps/verify.hpp"

namespace ipps {

std::int64_t q_of_m(std::int64_t m) {
    if (m < 2) throw input_error("q_of_m: m must be >= 2");
    if (m > kMaxM) throw input_error("q_of_m: m exceeds the 2^20 guard");

    // exact value when m = 2^(j^2): q = 2^j
    if ((m & (m - 1)) == 0) {
        int e = std::countr_zero(static_cast<std::uint64_t>(m));
        int j = static_cast<int>(std::round(std::sqrt(double(e))));
        if (j * j == e) return std::int64_t(1) << j;
    }

    // certified ceiling by directed rounding: tighten until both interval
    // ends share a ceiling
    for (mpfr_prec_t prec = 128; prec <= 1024; prec *= 2) {
        mpfr_t lo, hi;
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
        mpfr_set_si(lo, m, MPFR_RNDD);
        mpfr_set_si(hi, m, MPFR_RNDU);
        mpfr_log2(lo, lo, MPFR_RNDD);
        mpfr_log2(hi, hi, MPFR_RNDU);
        mpfr_sqrt(lo, lo, MPFR_RNDD);
        mpfr_sqrt(hi, hi, MPFR_RNDU);
        mpfr_exp2(lo, lo, MPFR_RNDD);
        mpfr_exp2(hi, hi, MPFR_RNDU);
        mpfr_ceil(lo, lo);
        mpfr_ceil(hi, hi);
        long cl = mpfr_get_si(lo, MPFR_RNDN);
        long ch = mpfr_get_si(hi, MPFR_RNDN);
        mpfr_clear(lo);
        mpfr_clear(hi);
        if (cl == ch) return cl;
    }
    throw std::logic_error("q_of_m: interval certification failed");
}

ConstructionParams make_params(std::int64_t m) {
    ConstructionParams p;
    p.m = m;
    p.q = q_of_m(m);
    p.slopes = {0, 2, 5, p.q + 5};
    p.n = 4 * (p.q + 6) * m;
    if (!check_pairwise_noncollinear(p))
        throw input_error("make_params: degenerate slope template");
    return p;
}

std::int64_t ground_size(const ConstructionParams& params) {
    return 4 * (params.q + 6) * params.m;
}

bool check_pairwise_noncollinear(const ConstructionParams& params) {
    const auto& c = params.slopes;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (c[i] == c[j]) return false;
    return true;
}

Block make_block(std::int64_t p, std::int64_t s, const ConstructionParams& params) {
    if (p < 1 || p > params.m) throw input_error("make_block: p outside [1, m]");
    if (s < 1 || s > params.m) throw input_error("make_block: s outside [1, m]");
    ProductShape shape{4, (params.q + 6) * params.m};
    Block b;
    b.mask = Bitset(static_cast<std::size_t>(params.n));
    for (int i = 0; i < 4; ++i) {
        std::int64_t value = p + params.slopes[i] * s;
        b.points.push_back(flat_point(shape, i + 1, value));
    }
    std::sort(b.points.begin(), b.points.end());
    for (auto pt : b.points) b.mask.set(static_cast<std::size_t>(pt - 1));
    return b;
}

namespace {

// exact rationals; magnitudes stay tiny (coefficients are slope differences)
struct Rat {
    std::int64_t n = 0, d = 1;

    static Rat of(std::int64_t v) { return Rat{v, 1}; }
    void reduce() {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        std::int64_t g = std::gcd(std::abs(n), d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n == 0) d = 1;
    }
    bool zero() const { return n == 0; }
};

Rat operator*(Rat a, Rat b) {
    __int128 n = static_cast<__int128>(a.n) * b.n;
    __int128 d = static_cast<__int128>(a.d) * b.d;
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
        throw std::logic_error("rational overflow");
    Rat r{static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)};
    r.reduce();
    return r;
}
Rat operator-(Rat a, Rat b) {
    __int128 n = static_cast<__int128>(a.n) * b.d - static_cast<__int128>(b.n) * a.d;
    __int128 d = static_cast<__int128>(a.d) * b.d;
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
        throw std::logic_error("rational overflow");
    Rat r{static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)};
    r.reduce();
    return r;
}
Rat operator/(Rat a, Rat b) {
    if (b.n == 0) throw std::logic_error("rational division by zero");
    return a * Rat{b.d, b.n};
}

using Row = std::array<Rat, 8>;  // columns: p1 p2 p3 p4 x y z w

int rank_of(std::vector<Row> rows) {
    int r = 0;
    for (int c = 0; c < 8 && r < static_cast<int>(rows.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (!rows[i][c].zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][c].zero()) continue;
            Rat f = rows[i][c] / rows[r][c];
            for (int cc = 0; cc < 8; ++cc) rows[i][cc] = rows[i][cc] - f * rows[r][cc];
        }
        ++r;
    }
    return r;
}

bool implies(const std::vector<Row>& rows, int base_rank, const Row& f) {
    auto ext = rows;
    ext.push_back(f);
    return rank_of(std::move(ext)) == base_rank;
}

Row slope_equality(int u, int v) {
    Row f{};
    f[4 + u] = Rat::of(1);
    f[4 + v] = Rat::of(-1);
    return f;
}

// block column layout: A1 -> (p=0, slope=4), A2 -> (1, 5), B1 -> (2, 6), B2 -> (3, 7)
constexpr int kBlockCols[4][2] = {{0, 4}, {1, 5}, {2, 6}, {3, 7}};

bool forces_coincidence(const std::vector<Row>& rows) {
    int base = rank_of(rows);
    for (int u = 0; u < 4; ++u) {
        for (int v = u + 1; v < 4; ++v) {
            Row fp{};
            fp[kBlockCols[u][0]] = Rat::of(1);
            fp[kBlockCols[v][0]] = Rat::of(-1);
            Row fs{};
            fs[kBlockCols[u][1]] = Rat::of(1);
            fs[kBlockCols[v][1]] = Rat::of(-1);
            if (implies(rows, base, fp) && implies(rows, base, fs)) return true;
        }
    }
    return false;
}

// variable pairings (positive coeff, matching negative coeff); 0, 1 or 2
std::vector<std::array<std::pair<int, int>, 2>> cm_classes(
    const std::array<std::int64_t, 4>& c) {
    std::vector<int> pos, neg;
    for (int i = 0; i < 4; ++i) (c[i] > 0 ? pos : neg).push_back(i);
    std::vector<std::array<std::pair<int, int>, 2>> out;
    if (pos.size() != 2 || neg.size() != 2) return out;
    for (int flip = 0; flip < 2; ++flip) {
        int n0 = neg[flip], n1 = neg[1 - flip];
        if (c[pos[0]] == -c[n0] && c[pos[1]] == -c[n1]) {
            std::array<std::pair<int, int>, 2> cls{{{pos[0], n0}, {pos[1], n1}}};
            bool dup = false;
            for (const auto& prev : out) dup |= prev == cls;
            if (!dup) out.push_back(cls);
        }
    }
    return out;
}

// Offsets p_i are affine in the class parameters: with slope value 1 on one
// part and 0 on the other, the p spread gives the smallest m at which the
// pattern is realizable (differences scale with s - t).
std::int64_t class_threshold(const std::vector<Row>& rows,
                             const std::array<std::pair<int, int>, 2>& cls) {
    bool in_first[4] = {};
    in_first[cls[0].first] = in_first[cls[0].second] = true;

    // solve the 4 rows for p2, p3, p4 with p1 = 0 and slopes substituted
    std::vector<std::array<Rat, 4>> m4;  // columns p2 p3 p4 | rhs
    for (const auto& row : rows) {
        std::array<Rat, 4> r{};
        for (int pc = 1; pc < 4; ++pc) r[pc - 1] = row[pc];
        Rat rhs = Rat::of(0);
        for (int vc = 0; vc < 4; ++vc)
            if (in_first[vc]) rhs = rhs - row[4 + vc];
        r[3] = rhs;
        m4.push_back(r);
    }
    int rr = 0;
    for (int c = 0; c < 3 && rr < static_cast<int>(m4.size()); ++c) {
        int piv = -1;
        for (int i = rr; i < static_cast<int>(m4.size()); ++i)
            if (!m4[i][c].zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m4[rr], m4[piv]);
        for (int i = 0; i < static_cast<int>(m4.size()); ++i) {
            if (i == rr || m4[i][c].zero()) continue;
            Rat f = m4[i][c] / m4[rr][c];
            for (int cc = 0; cc < 4; ++cc) m4[i][cc] = m4[i][cc] - f * m4[rr][cc];
        }
        ++rr;
    }
    std::array<Rat, 3> sol{};
    for (int i = 0; i < rr; ++i) {
        int lead = -1;
        for (int c = 0; c < 3; ++c)
            if (!m4[i][c].zero()) {
                lead = c;
                break;
            }
        if (lead < 0) {
            if (!m4[i][3].zero())
                throw std::logic_error("class_threshold: inconsistent system");
            continue;
        }
        sol[lead] = m4[i][3] / m4[i][lead];
    }
    std::int64_t lo = 0, hi = 0;
    for (const auto& s : sol) {
        if (s.d != 1) throw std::logic_error("class_threshold: non-integer offset");
        lo = std::min(lo, s.n);
        hi = std::max(hi, s.n);
    }
    return hi - lo + 1;
}

}  // namespace

std::vector<LinearEquation> derive_required_equations(const ConstructionParams& params) {
    const auto& c = params.slopes;
    constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

    std::map<std::array<std::int64_t, 4>, Triviality> dedup;

    for (const auto& pa : kPairs) {
        for (const auto& pb : kPairs) {
            // the four pirate points: coordinate and owning A-parent
            int coord[4] = {pa[0], pa[1], pb[0], pb[1]};
            int parent[4] = {0, 0, 1, 1};
            for (int bmask = 0; bmask < 16; ++bmask) {
                if (std::popcount(static_cast<unsigned>(bmask)) != 2) continue;
                int side[4];
                int b1[2], b2[2], i1 = 0, i2 = 0;
                for (int pt = 0; pt < 4; ++pt) {
                    side[pt] = (bmask >> pt) & 1;
                    if (side[pt] == 0)
                        b1[i1++] = pt;
                    else
                        b2[i2++] = pt;
                }
                // a parent holds one point per coordinate
                if (coord[b1[0]] == coord[b1[1]] || coord[b2[0]] == coord[b2[1]]) continue;

                std::vector<Row> rows;
                for (int pt = 0; pt < 4; ++pt) {
                    Row r{};
                    r[parent[pt]] = Rat::of(1);
                    r[4 + parent[pt]] = Rat::of(c[coord[pt]]);
                    r[2 + side[pt]] = Rat::of(-1);
                    r[6 + side[pt]] = Rat::of(-c[coord[pt]]);
                    rows.push_back(r);
                }

                if (forces_coincidence(rows)) continue;

                // eliminate offsets, keep the slope-only relation
                auto mat = rows;
                int rr = 0;
                for (int col = 0; col < 4 && rr < static_cast<int>(mat.size()); ++col) {
                    int piv = -1;
                    for (int i = rr; i < static_cast<int>(mat.size()); ++i)
                        if (!mat[i][col].zero()) {
                            piv = i;
                            break;
                        }
                    if (piv < 0) continue;
                    std::swap(mat[rr], mat[piv]);
                    for (int i = 0; i < static_cast<int>(mat.size()); ++i) {
                        if (i == rr || mat[i][col].zero()) continue;
                        Rat f = mat[i][col] / mat[rr][col];
                        for (int cc = 0; cc < 8; ++cc) mat[i][cc] = mat[i][cc] - f * mat[rr][cc];
                    }
                    ++rr;
                }

                std::vector<std::array<std::int64_t, 4>> slope_eqs;
                for (const auto& row : mat) {
                    bool p_zero = row[0].zero() && row[1].zero() && row[2].zero() && row[3].zero();
                    bool s_zero = row[4].zero() && row[5].zero() && row[6].zero() && row[7].zero();
                    if (!p_zero || s_zero) continue;
                    std::int64_t den = 1;
                    for (int i = 0; i < 4; ++i) den = std::lcm(den, row[4 + i].d);
                    std::array<std::int64_t, 4> ints{};
                    for (int i = 0; i < 4; ++i) ints[i] = row[4 + i].n * (den / row[4 + i].d);
                    std::int64_t g = 0;
                    for (auto x : ints) g = std::gcd(g, std::abs(x));
                    for (auto& x : ints) x /= g;
                    slope_eqs.push_back(ints);
                }
                if (slope_eqs.size() != 1)
                    throw std::logic_error(
                        "derive_required_equations: matching did not reduce to one equation");
                const auto orig = slope_eqs[0];
                if (orig[0] + orig[1] + orig[2] + orig[3] != 0)
                    throw std::logic_error("derive_required_equations: non-homogeneous relation");

                // all-equal solutions must always collapse two blocks
                {
                    auto ext = rows;
                    ext.push_back(slope_equality(0, 1));
                    ext.push_back(slope_equality(1, 2));
                    ext.push_back(slope_equality(2, 3));
                    if (!forces_coincidence(ext))
                        throw std::logic_error(
                            "derive_required_equations: all-equal class does not force "
                            "a block coincidence");
                }

                // coefficient-matched classes must collapse blocks too, else the
                // equation keeps the strict convention (when the pattern fits in [1, m])
                auto classes = cm_classes(orig);
                Triviality tag =
                    classes.empty() ? Triviality::AllEqual : Triviality::CoefficientMatched;
                for (const auto& cls : classes) {
                    auto ext = rows;
                    ext.push_back(slope_equality(cls[0].first, cls[0].second));
                    ext.push_back(slope_equality(cls[1].first, cls[1].second));
                    if (forces_coincidence(ext)) continue;
                    if (params.m >= class_threshold(rows, cls)) tag = Triviality::AllEqual;
                }

                LinearEquation canon = canonicalize(LinearEquation{orig, Triviality::AllEqual});
                auto [it, inserted] = dedup.try_emplace(canon.coeffs, tag);
                if (!inserted && tag == Triviality::AllEqual)
                    it->second = Triviality::AllEqual;
            }
        }
    }

    std::vector<LinearEquation> out;
    for (const auto& [coeffs, tag] : dedup) out.push_back(LinearEquation{coeffs, tag});
    std::sort(out.begin(), out.end());
    return out;
}

SetSystem build_ipps(const ConstructionParams& params, const SolutionFreeSet& S) {
    if (S.m != params.m) throw input_error("build_ipps: set was built for a different m");
    if (S.elements.empty()) throw input_error("build_ipps: empty solution-free set");
    for (auto e : S.elements)
        if (e < 1 || e > params.m) throw input_error("build_ipps: set element outside [1, m]");

    auto required = derive_required_equations(params);
    auto check = verify_solution_free(S.elements, required);
    if (!check.pass)
        throw input_error("build_ipps: set has a non-trivial solution to a required equation");

    SetSystem sys;
    sys.n = params.n;
    sys.k = 4;
    sys.product = ProductShape{4, (params.q + 6) * params.m};
    for (std::int64_t p = 1; p <= params.m; ++p)
        for (auto s : S.elements) sys.blocks.push_back(make_block(p, s, params));
    return sys;
}

EndToEndResult end_to_end(std::int64_t m, std::optional<SolutionFreeSet> provided,
                          int threads) {
    EndToEndResult res;
    res.params = make_params(m);
    auto required = derive_required_equations(res.params);
    if (provided) {
        res.set = std::move(*provided);
    } else {
        res.set = greedy_solution_free(m, required);
        res.set.avoided = required;
    }
    res.system = build_ipps(res.params, res.set);
    res.report = verify_ipps2(res.system, VerifyMode::Fast, threads);
    if (!res.report.pass)
        throw std::logic_error("end_to_end: constructed system failed verification");
    return res;
}

}  // namespace ipps
