#include "ipps/verify.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <thread>

namespace ipps {

namespace {

std::uint64_t choose(std::uint64_t n, int r) {
    if (r < 0 || static_cast<std::uint64_t>(r) > n) return 0;
    std::uint64_t out = 1;
    for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

int effective_threads(int threads, std::size_t work_items) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    threads = std::clamp(threads, 1, hw);
    if (work_items < 64) threads = 1;
    return threads;
}

struct ScanState {
    VerifyStats stats;
    bool found = false;
    std::array<int, 5> key{};  // triple or (quad, pairing rank)
    Witness witness;

    void offer(const std::array<int, 5>& k, const Witness& w) {
        if (!found || k < key) {
            found = true;
            key = k;
            witness = w;
        }
    }
    void merge(const ScanState& o) {
        stats.examined += o.stats.examined;
        stats.pruned += o.stats.pruned;
        stats.work += o.stats.work;
        if (o.found) offer(o.key, o.witness);
    }
};

// intersection popcount with a deterministic word-work counter
std::size_t inter_count(const std::uint64_t* a, const std::uint64_t* b, std::size_t words,
                        std::size_t stop_at, std::uint64_t& work) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words; ++i) {
        c += std::popcount(a[i] & b[i]);
        ++work;
        if (c >= stop_at) return c;
    }
    return c;
}

std::vector<std::int64_t> first_k_intersection(const Bitset& u1, const Bitset& u2,
                                               std::int64_t k) {
    Bitset inter = u1 & u2;
    auto bits = inter.bits();
    std::vector<std::int64_t> out;
    for (auto b : bits) {
        out.push_back(b + 1);
        if (static_cast<std::int64_t>(out.size()) == k) break;
    }
    return out;
}

template <typename Body>
void run_partitioned(int nb, int threads, std::vector<ScanState>& states, Body body) {
    if (threads <= 1) {
        for (int a = 0; a < nb; ++a) body(states[0], a);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            for (int a = w; a < nb; a += threads) body(states[w], a);
        });
    }
    for (auto& t : pool) t.join();
}

// pairing ranks of a sorted quad (a, b, c, d): 0 -> (ac|bd), 1 -> (ad|bc), 2 -> (ab|cd)
constexpr int kPairingOf[3][4] = {{0, 2, 1, 3}, {0, 3, 1, 2}, {0, 1, 2, 3}};

}  // namespace

VerificationReport verify_ippsa(const SetSystem& sys, int threads) {
    VerificationReport rep;
    rep.property = "IPPSa";
    const int nb = static_cast<int>(sys.blocks.size());
    if (nb < 3) return rep;

    const std::size_t words = sys.blocks[0].mask.word_count();
    threads = effective_threads(threads, choose(nb, 3));
    std::vector<ScanState> states(threads);

    run_partitioned(nb, threads, states, [&](ScanState& st, int a) {
        for (int b = a + 1; b < nb; ++b) {
            Bitset ab = sys.blocks[a].mask & sys.blocks[b].mask;
            for (int c = b + 1; c < nb; ++c) {
                ++st.stats.examined;
                // (A u B) n (A u C) n (B u C) = (A n B) u (A n C) u (B n C)
                Bitset tri = ab;
                tri |= sys.blocks[a].mask & sys.blocks[c].mask;
                tri |= sys.blocks[b].mask & sys.blocks[c].mask;
                st.stats.work += 4 * words;
                if (static_cast<std::int64_t>(tri.count()) >= sys.k) {
                    Witness w;
                    w.blocks = {a, b, c};
                    for (auto p : tri.bits()) w.points.push_back(p + 1);
                    st.offer({a, b, c, 0, 0}, w);
                }
            }
        }
    });

    ScanState total;
    for (const auto& st : states) total.merge(st);
    rep.stats = total.stats;
    if (total.found) {
        rep.pass = false;
        rep.witness = total.witness;
    }
    return rep;
}

namespace {

VerificationReport ippsb_exhaustive(const SetSystem& sys, int threads) {
    VerificationReport rep;
    rep.property = "IPPSb";
    const int nb = static_cast<int>(sys.blocks.size());
    if (nb < 4) return rep;

    const std::size_t words = sys.blocks[0].mask.word_count();
    const std::size_t k = static_cast<std::size_t>(sys.k);

    // all pair unions, when that fits comfortably in memory
    const std::uint64_t npairs = choose(nb, 2);
    const bool cache_pairs = npairs * words * 8 <= (256ULL << 20);
    std::vector<Bitset> pair_union;
    auto pair_id = [nb](int a, int b) {
        return static_cast<std::size_t>(a) * nb - static_cast<std::size_t>(a) * (a + 1) / 2 +
               (b - a - 1);
    };
    if (cache_pairs) {
        pair_union.resize(npairs);
        for (int a = 0; a < nb; ++a)
            for (int b = a + 1; b < nb; ++b)
                pair_union[pair_id(a, b)] = sys.blocks[a].mask | sys.blocks[b].mask;
    }
    threads = effective_threads(threads, choose(nb, 4));
    std::vector<ScanState> states(threads);

    run_partitioned(nb, threads, states, [&](ScanState& st, int a) {
        Bitset scratch1, scratch2;
        auto union_of = [&](int x, int y, Bitset& scratch) -> const Bitset& {
            if (cache_pairs) return pair_union[pair_id(x, y)];
            scratch = sys.blocks[x].mask | sys.blocks[y].mask;
            st.stats.work += words;
            return scratch;
        };
        for (int b = a + 1; b < nb; ++b)
            for (int c = b + 1; c < nb; ++c)
                for (int d = c + 1; d < nb; ++d) {
                    const int quad[4] = {a, b, c, d};
                    for (int rank = 0; rank < 3; ++rank) {
                        ++st.stats.examined;
                        int a1 = quad[kPairingOf[rank][0]], a2 = quad[kPairingOf[rank][1]];
                        int b1 = quad[kPairingOf[rank][2]], b2 = quad[kPairingOf[rank][3]];
                        const Bitset& u1 = union_of(a1, a2, scratch1);
                        const Bitset& u2 = union_of(b1, b2, scratch2);
                        std::size_t cnt =
                            inter_count(u1.data(), u2.data(), words, k, st.stats.work);
                        if (cnt >= k) {
                            Witness w;
                            w.parents = {{a1, a2}, {b1, b2}};
                            w.points = first_k_intersection(u1, u2, sys.k);
                            st.offer({a, b, c, d, rank}, w);
                        }
                    }
                }
    });

    ScanState total;
    for (const auto& st : states) total.merge(st);
    rep.stats = total.stats;
    if (total.found) {
        rep.pass = false;
        rep.witness = total.witness;
    }
    return rep;
}

// Pruned candidate scan, sound when max pairwise intersection <= 1 and
// k = 4: a violating pairing needs all four cross intersections nonempty,
// i.e. a 4-cycle in the block intersection graph.
VerificationReport ippsb_fast(const SetSystem& sys, int threads) {
    VerificationReport rep;
    rep.property = "IPPSb";
    const int nb = static_cast<int>(sys.blocks.size());
    const std::uint64_t all_pairings = 3 * choose(nb, 4);
    if (nb < 4) return rep;

    const std::size_t words = sys.blocks[0].mask.word_count();
    const std::size_t k = static_cast<std::size_t>(sys.k);

    // point -> blocks inverted index, then per-block neighbour sets
    std::vector<std::vector<int>> at_point(static_cast<std::size_t>(sys.n));
    for (int b = 0; b < nb; ++b)
        for (auto p : sys.blocks[b].points) at_point[static_cast<std::size_t>(p - 1)].push_back(b);
    std::vector<Bitset> nbr(nb, Bitset(static_cast<std::size_t>(nb)));
    for (const auto& blocks_here : at_point)
        for (std::size_t i = 0; i < blocks_here.size(); ++i)
            for (std::size_t j = i + 1; j < blocks_here.size(); ++j) {
                nbr[blocks_here[i]].set(blocks_here[j]);
                nbr[blocks_here[j]].set(blocks_here[i]);
            }

    threads = effective_threads(threads, nb);
    std::vector<ScanState> states(threads);

    // {q1, q2} is one side of the pairing; the two sides themselves need not
    // intersect, only the four cross pairs must
    run_partitioned(nb, threads, states, [&](ScanState& st, int q1) {
        for (int q2 = q1 + 1; q2 < nb; ++q2) {
            Bitset common = nbr[q1] & nbr[q2];
            auto cands = common.bits();
            Bitset u1 = sys.blocks[q1].mask | sys.blocks[q2].mask;
            for (std::size_t i = 0; i < cands.size(); ++i) {
                int p1 = static_cast<int>(cands[i]);
                if (p1 <= q1) continue;  // the quad minimum names this pairing once
                for (std::size_t j = i + 1; j < cands.size(); ++j) {
                    int p2 = static_cast<int>(cands[j]);
                    ++st.stats.examined;
                    Bitset u2 = sys.blocks[p1].mask | sys.blocks[p2].mask;
                    st.stats.work += 2 * words;
                    std::size_t cnt = inter_count(u1.data(), u2.data(), words, k, st.stats.work);
                    if (cnt < k) continue;
                    int quad[4] = {q1, q2, p1, p2};
                    std::sort(quad, quad + 4);
                    int partner = q2;  // the element paired with quad[0] == q1
                    int rank = partner == quad[2] ? 0 : (partner == quad[3] ? 1 : 2);
                    Witness w;
                    w.parents = {{q1, q2}, {p1, p2}};
                    w.points = first_k_intersection(u1, u2, sys.k);
                    st.offer({quad[0], quad[1], quad[2], quad[3], rank}, w);
                }
            }
        }
    });

    ScanState total;
    for (const auto& st : states) total.merge(st);
    rep.stats = total.stats;
    rep.stats.pruned = all_pairings - rep.stats.examined;
    if (total.found) {
        rep.pass = false;
        rep.witness = total.witness;
    }
    return rep;
}

}  // namespace

VerificationReport verify_ippsb(const SetSystem& sys, int threads) {
    return ippsb_exhaustive(sys, threads);
}

VerificationReport verify_ipps2(const SetSystem& sys, VerifyMode mode, int threads) {
    const int nb = static_cast<int>(sys.blocks.size());
    VerifyStats combined;

    if (mode == VerifyMode::Fast && nb >= 2) {
        std::int64_t maxpair = max_pairwise_intersection(sys);
        combined.work += static_cast<std::uint64_t>(nb) * (nb - 1) / 2;
        if (maxpair <= 1 && sys.k >= 4) {
            // IPPSa is vacuous: a triple union-intersection has at most 3 points
            combined.pruned += choose(nb, 3);
            VerificationReport rep;
            if (sys.k > 4) {
                // so is IPPSb: the cross intersections supply at most 4 points
                combined.pruned += 3 * choose(nb, 4);
                rep.property = "IPPS-2";
                rep.stats = combined;
                return rep;
            }
            rep = ippsb_fast(sys, threads);
            rep.stats.examined += combined.examined;
            rep.stats.pruned += combined.pruned;
            rep.stats.work += combined.work;
            if (rep.pass) rep.property = "IPPS-2";
            return rep;
        }
        // falls through to the exhaustive pair of scans
    }

    VerificationReport a = verify_ippsa(sys, threads);
    if (!a.pass) {
        a.stats.work += combined.work;
        return a;
    }
    VerificationReport b = ippsb_exhaustive(sys, threads);
    b.stats.examined += a.stats.examined;
    b.stats.pruned += a.stats.pruned;
    b.stats.work += a.stats.work + combined.work;
    if (b.pass) b.property = "IPPS-2";
    return b;
}

ParentSetFamily parent_sets(const SetSystem& sys, const std::vector<std::int64_t>& T, int t) {
    if (static_cast<std::int64_t>(T.size()) != sys.k)
        throw input_error("parent_sets: |T| must equal k");
    if (t < 1) throw input_error("parent_sets: t must be >= 1");
    for (auto p : T)
        if (p < 1 || p > sys.n) throw input_error("parent_sets: point outside ground set");

    ParentSetFamily fam;
    fam.pirate = T;
    std::sort(fam.pirate.begin(), fam.pirate.end());

    const int nb = static_cast<int>(sys.blocks.size());
    Bitset tmask(static_cast<std::size_t>(sys.n));
    for (auto p : fam.pirate) tmask.set(static_cast<std::size_t>(p - 1));

    std::vector<int> combo;
    auto covers = [&](const Bitset& u) {
        for (std::size_t i = 0; i < u.word_count(); ++i)
            if ((tmask.data()[i] & u.data()[i]) != tmask.data()[i]) return false;
        return true;
    };
    // enumerate subsets of size 1..t in lexicographic order
    for (int size = 1; size <= t; ++size) {
        combo.assign(size, 0);
        for (int i = 0; i < size; ++i) combo[i] = i;
        if (size > nb) break;
        while (true) {
            Bitset u(static_cast<std::size_t>(sys.n));
            for (int b : combo) u |= sys.blocks[b].mask;
            if (covers(u)) fam.parents.push_back(combo);
            int i = size - 1;
            while (i >= 0 && combo[i] == nb - size + i) --i;
            if (i < 0) break;
            ++combo[i];
            for (int j = i + 1; j < size; ++j) combo[j] = combo[j - 1] + 1;
        }
    }
    return fam;
}

namespace {

// canonical ranking of a parent family: members sorted, indices read off
// round-robin (smallest of each member first), then the pirate set
std::vector<int> family_key(std::vector<std::vector<int>> members) {
    for (auto& m : members) std::sort(m.begin(), m.end());
    std::sort(members.begin(), members.end());
    std::vector<int> key;
    std::size_t pos = 0;
    bool more = true;
    while (more) {
        more = false;
        for (const auto& m : members)
            if (pos < m.size()) {
                key.push_back(m[pos]);
                more = true;
            }
        ++pos;
    }
    return key;
}

}  // namespace

VerificationReport verify_ipps_bruteforce(const SetSystem& sys, int t) {
    const int nb = static_cast<int>(sys.blocks.size());
    if (sys.n > 64 || nb > 12 || t > 3 || sys.k > 6)
        throw input_error(
            "verify_ipps_bruteforce: instance outside the guard (n <= 64, |B| <= 12, "
            "t <= 3, k <= 6)");
    if (t < 1) throw input_error("verify_ipps_bruteforce: t must be >= 1");

    VerificationReport rep;
    rep.property = "IPPS-def";

    // candidate pirates: k-subsets of unions of <= t blocks
    std::set<std::vector<std::int64_t>> candidates;
    std::vector<int> combo;
    for (int size = 1; size <= std::min(t, nb); ++size) {
        combo.clear();
        for (int i = 0; i < size; ++i) combo.push_back(i);
        while (true) {
            Bitset u(static_cast<std::size_t>(sys.n));
            for (int b : combo) u |= sys.blocks[b].mask;
            auto pts = u.bits();
            const int np = static_cast<int>(pts.size());
            if (np >= sys.k) {
                std::vector<int> sel(static_cast<std::size_t>(sys.k));
                for (int i = 0; i < sys.k; ++i) sel[i] = i;
                while (true) {
                    std::vector<std::int64_t> T;
                    for (int i : sel) T.push_back(pts[i] + 1);
                    candidates.insert(std::move(T));
                    int i = sys.k - 1;
                    while (i >= 0 && sel[i] == np - sys.k + i) --i;
                    if (i < 0) break;
                    ++sel[i];
                    for (int j = i + 1; j < sys.k; ++j) sel[j] = sel[j - 1] + 1;
                }
            }
            int i = size - 1;
            while (i >= 0 && combo[i] == nb - size + i) --i;
            if (i < 0) break;
            ++combo[i];
            for (int j = i + 1; j < size; ++j) combo[j] = combo[j - 1] + 1;
        }
    }

    bool found = false;
    std::pair<std::vector<int>, std::vector<std::int64_t>> best_key;
    Witness best;

    for (const auto& T : candidates) {
        ++rep.stats.examined;
        auto fam = parent_sets(sys, T, t);
        rep.stats.work += fam.parents.size();
        if (fam.parents.empty()) continue;
        std::set<int> inter(fam.parents[0].begin(), fam.parents[0].end());
        for (std::size_t i = 1; i < fam.parents.size() && !inter.empty(); ++i) {
            std::set<int> next;
            for (int b : fam.parents[i])
                if (inter.count(b)) next.insert(b);
            inter = std::move(next);
        }
        if (!inter.empty()) continue;

        std::pair<std::vector<int>, std::vector<std::int64_t>> key{family_key(fam.parents), T};
        if (!found || key < best_key) {
            found = true;
            best_key = key;
            best.points = T;
            best.parents = fam.parents;
        }
    }

    if (found) {
        rep.pass = false;
        rep.witness = best;
    }
    return rep;
}

TraceResult trace(const SetSystem& sys, const std::vector<std::int64_t>& T, int t) {
    auto fam = parent_sets(sys, T, t);
    TraceResult res;
    if (fam.parents.empty()) {
        res.status = TraceStatus::NoParents;
        return res;
    }
    std::set<int> inter(fam.parents[0].begin(), fam.parents[0].end());
    for (std::size_t i = 1; i < fam.parents.size() && !inter.empty(); ++i) {
        std::set<int> next;
        for (int b : fam.parents[i])
            if (inter.count(b)) next.insert(b);
        inter = std::move(next);
    }
    res.blocks.assign(inter.begin(), inter.end());
    res.status = res.blocks.empty() ? TraceStatus::Unidentifiable : TraceStatus::Identified;
    return res;
}

std::int64_t max_pairwise_intersection(const SetSystem& sys) {
    const int nb = static_cast<int>(sys.blocks.size());
    if (nb < 2) throw input_error("max_pairwise_intersection: needs at least 2 blocks");
    std::size_t best = 0;
    for (int a = 0; a < nb; ++a)
        for (int b = a + 1; b < nb; ++b)
            best = std::max(best, sys.blocks[a].mask.intersection_count(sys.blocks[b].mask));
    return static_cast<std::int64_t>(best);
}

namespace {

std::set<std::int64_t> block_set(const SetSystem& sys, int idx) {
    return {sys.blocks[idx].points.begin(), sys.blocks[idx].points.end()};
}

std::set<std::int64_t> set_union(const std::set<std::int64_t>& a,
                                 const std::set<std::int64_t>& b) {
    std::set<std::int64_t> out = a;
    out.insert(b.begin(), b.end());
    return out;
}

std::set<std::int64_t> set_inter(const std::set<std::int64_t>& a,
                                 const std::set<std::int64_t>& b) {
    std::set<std::int64_t> out;
    for (auto x : a)
        if (b.count(x)) out.insert(x);
    return out;
}

bool valid_index(const SetSystem& sys, int b) {
    return b >= 0 && b < static_cast<int>(sys.blocks.size());
}

}  // namespace

bool recheck_witness(const SetSystem& sys, const VerificationReport& rep) {
    if (rep.pass || !rep.witness) return false;
    const Witness& w = *rep.witness;

    if (rep.property == "IPPSa") {
        if (w.blocks.size() != 3) return false;
        for (int b : w.blocks)
            if (!valid_index(sys, b)) return false;
        if (w.blocks[0] == w.blocks[1] || w.blocks[1] == w.blocks[2] ||
            w.blocks[0] == w.blocks[2])
            return false;
        auto A = block_set(sys, w.blocks[0]);
        auto B = block_set(sys, w.blocks[1]);
        auto C = block_set(sys, w.blocks[2]);
        auto tri = set_inter(set_inter(set_union(A, B), set_union(A, C)), set_union(B, C));
        if (static_cast<std::int64_t>(tri.size()) < sys.k) return false;
        std::set<std::int64_t> pts(w.points.begin(), w.points.end());
        return pts == tri;
    }

    if (rep.property == "IPPSb") {
        if (w.parents.size() != 2 || w.parents[0].size() != 2 || w.parents[1].size() != 2)
            return false;
        std::set<int> distinct;
        for (const auto& side : w.parents)
            for (int b : side) {
                if (!valid_index(sys, b)) return false;
                distinct.insert(b);
            }
        if (distinct.size() != 4) return false;
        auto u1 = set_union(block_set(sys, w.parents[0][0]), block_set(sys, w.parents[0][1]));
        auto u2 = set_union(block_set(sys, w.parents[1][0]), block_set(sys, w.parents[1][1]));
        auto inter = set_inter(u1, u2);
        if (static_cast<std::int64_t>(inter.size()) < sys.k) return false;
        if (static_cast<std::int64_t>(w.points.size()) != sys.k) return false;
        for (auto p : w.points)
            if (!inter.count(p)) return false;
        return true;
    }

    if (rep.property == "IPPS-def") {
        if (w.parents.empty()) return false;
        std::set<std::int64_t> T(w.points.begin(), w.points.end());
        if (static_cast<std::int64_t>(T.size()) != sys.k) return false;
        std::set<int> inter;
        bool first = true;
        for (const auto& pset : w.parents) {
            std::set<std::int64_t> u;
            std::set<int> members;
            for (int b : pset) {
                if (!valid_index(sys, b)) return false;
                members.insert(b);
                auto bs = block_set(sys, b);
                u.insert(bs.begin(), bs.end());
            }
            for (auto p : T)
                if (!u.count(p)) return false;  // listed parent fails to cover
            if (first) {
                inter = members;
                first = false;
            } else {
                inter = [&] {
                    std::set<int> next;
                    for (int b : inter)
                        if (members.count(b)) next.insert(b);
                    return next;
                }();
            }
        }
        return inter.empty();
    }

    return false;
}

}  // namespace ipps
