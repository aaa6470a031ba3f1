#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ipps/codes.hpp"
#include "ipps/construct.hpp"
#include "ipps/verify.hpp"
#include "support/oracles.hpp"

using namespace ipps;

namespace {

SetSystem hamming_image() { return kautz_singleton(hamming_ternary()); }

SetSystem flat(std::int64_t n, std::vector<std::vector<std::int64_t>> blocks) {
    return validate_set_system(n, 4, std::nullopt, blocks);
}

}  // namespace

TEST_CASE("triple union-intersection identity") {
    std::mt19937_64 rng(0xF00D);
    for (int trial = 0; trial < 100; ++trial) {
        auto sys = oracles::random_system(rng, 10, 4, 3);
        REQUIRE(sys.blocks.size() >= 3);
        auto A = oracles::to_set(sys.blocks[0].points);
        auto B = oracles::to_set(sys.blocks[1].points);
        auto C = oracles::to_set(sys.blocks[2].points);
        auto lhs = oracles::triple_union_intersection(A, B, C);
        auto rhs = oracles::set_union(oracles::set_union(oracles::set_inter(A, B),
                                                         oracles::set_inter(A, C)),
                                      oracles::set_inter(B, C));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("verify_ippsa") {
    auto bad = flat(6, {{1, 2, 3, 4}, {1, 2, 5, 6}, {3, 4, 5, 6}});
    auto rep = verify_ippsa(bad);
    REQUIRE(!rep.pass);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->blocks == std::vector<int>{0, 1, 2});
    CHECK(rep.witness->points.size() == 6);
    CHECK(recheck_witness(bad, rep));

    CHECK(verify_ippsa(flat(8, {{1, 2, 3, 4}, {5, 6, 7, 8}})).pass);
    CHECK(verify_ippsa(flat(4, {{1, 2, 3, 4}})).pass);

    // pairwise intersections of size <= 1 cap the triple intersection at 3
    auto res = end_to_end(8);
    CHECK(verify_ippsa(res.system).pass);
}

TEST_CASE("verify_ippsb on the Kautz-Singleton image of the ternary Hamming code") {
    auto sys = hamming_image();
    auto rep = verify_ippsb(sys);
    REQUIRE(!rep.pass);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->parents ==
          std::vector<std::vector<int>>{{0, 3}, {1, 4}});  // (B1, B4 | B2, B5)
    CHECK(rep.witness->points == std::vector<std::int64_t>{1, 2, 8, 10});
    CHECK(recheck_witness(sys, rep));

    CHECK(verify_ippsb(flat(8, {{1, 2, 3, 4}, {5, 6, 7, 8}})).pass);
    CHECK(verify_ippsb(flat(12, {{1, 2, 3, 4}, {5, 6, 7, 8}, {9, 10, 11, 12}})).pass);
}

TEST_CASE("verify_ipps2 modes agree and the fast path prunes") {
    auto sys = hamming_image();
    auto fast = verify_ipps2(sys, VerifyMode::Fast);
    auto exhaustive = verify_ipps2(sys, VerifyMode::Exhaustive);
    REQUIRE(!fast.pass);
    REQUIRE(!exhaustive.pass);
    CHECK(fast.witness->parents == exhaustive.witness->parents);
    CHECK(fast.witness->points == exhaustive.witness->points);

    auto res = end_to_end(16);
    auto f = verify_ipps2(res.system, VerifyMode::Fast);
    auto e = verify_ipps2(res.system, VerifyMode::Exhaustive);
    CHECK(f.pass);
    CHECK(e.pass);
    CHECK(f.stats.examined < e.stats.examined);

    // a pair with a 2-point overlap disables the pruning argument; both
    // modes must still agree
    auto overlap = flat(10, {{1, 2, 3, 4}, {1, 2, 5, 6}, {3, 4, 5, 6}, {7, 8, 9, 10}});
    auto fo = verify_ipps2(overlap, VerifyMode::Fast);
    auto eo = verify_ipps2(overlap, VerifyMode::Exhaustive);
    CHECK(fo.pass == eo.pass);
    REQUIRE(fo.witness.has_value());
    CHECK(fo.witness->blocks == eo.witness->blocks);
}

TEST_CASE("parent_sets") {
    auto sys = flat(9, {{1, 2, 3, 4}, {5, 6, 7, 8}});
    auto fam = parent_sets(sys, {1, 2, 5, 6}, 2);
    CHECK(fam.parents == std::vector<std::vector<int>>{{0, 1}});

    auto fam2 = parent_sets(sys, {1, 2, 3, 4}, 2);
    CHECK(fam2.parents == std::vector<std::vector<int>>{{0}, {0, 1}});

    auto fam3 = parent_sets(sys, {1, 2, 5, 9}, 2);
    CHECK(fam3.parents.empty());

    CHECK_THROWS_AS(parent_sets(sys, {1, 2, 3}, 2), input_error);
}

TEST_CASE("verify_ipps_bruteforce") {
    auto sys = hamming_image();
    auto rep = verify_ipps_bruteforce(sys, 2);
    REQUIRE(!rep.pass);
    CHECK(rep.witness->points == std::vector<std::int64_t>{1, 2, 8, 10});
    CHECK(rep.witness->parents == std::vector<std::vector<int>>{{0, 3}, {1, 4}});
    CHECK(recheck_witness(sys, rep));

    CHECK(verify_ipps_bruteforce(flat(8, {{1, 2, 3, 4}, {5, 6, 7, 8}}), 2).pass);

    auto big = end_to_end(8).system;  // 24 blocks: outside the guard
    CHECK_THROWS_AS(verify_ipps_bruteforce(big, 2), input_error);
    CHECK_THROWS_AS(verify_ipps_bruteforce(sys, 4), input_error);
}

TEST_CASE("oracle equivalence on seeded random systems") {
    std::mt19937_64 rng(0x0DDC0DE);
    int fails = 0, passes = 0;
    for (int trial = 0; trial < 220; ++trial) {
        std::uniform_int_distribution<int> npts(8, 12);
        auto sys = oracles::random_system(rng, npts(rng), 6);
        auto fast = verify_ipps2(sys, VerifyMode::Fast);
        auto exhaustive = verify_ipps2(sys, VerifyMode::Exhaustive);
        auto brute = verify_ipps_bruteforce(sys, 2);
        CAPTURE(trial);
        CHECK(fast.pass == brute.pass);
        CHECK(exhaustive.pass == brute.pass);
        if (!fast.pass) CHECK(recheck_witness(sys, fast));
        if (!exhaustive.pass) CHECK(recheck_witness(sys, exhaustive));
        if (!brute.pass) {
            CHECK(recheck_witness(sys, brute));
            ++fails;
        } else {
            ++passes;
        }
    }
    // the sample must exercise both verdicts
    CHECK(fails > 10);
    CHECK(passes > 10);
}

TEST_CASE("trace") {
    auto sys = flat(9, {{1, 2, 3, 4}, {5, 6, 7, 8}});
    auto r1 = trace(sys, {1, 2, 5, 6}, 2);
    CHECK(r1.status == TraceStatus::Identified);
    CHECK(r1.blocks == std::vector<int>{0, 1});

    auto r2 = trace(sys, {1, 2, 3, 4}, 2);
    CHECK(r2.status == TraceStatus::Identified);
    CHECK(r2.blocks == std::vector<int>{0});

    auto r3 = trace(sys, {1, 2, 5, 9}, 2);
    CHECK(r3.status == TraceStatus::NoParents);

    // traced blocks sit inside every parent set
    std::mt19937_64 rng(0x7ACE);
    auto passing = end_to_end(4).system;
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<std::size_t> pick(0, passing.blocks.size() - 1);
        auto a = passing.blocks[pick(rng)].points;
        auto b = passing.blocks[pick(rng)].points;
        std::vector<std::int64_t> T{a[0], a[1], b[2], b[3]};
        std::sort(T.begin(), T.end());
        T.erase(std::unique(T.begin(), T.end()), T.end());
        if (T.size() != 4) continue;
        auto res = trace(passing, T, 2);
        auto fam = parent_sets(passing, T, 2);
        if (fam.parents.empty()) {
            CHECK(res.status == TraceStatus::NoParents);
            continue;
        }
        // a verified 2-IPPS always identifies someone
        CHECK(res.status == TraceStatus::Identified);
        for (const auto& pset : fam.parents)
            for (int blk : res.blocks)
                CHECK(std::find(pset.begin(), pset.end(), blk) != pset.end());
    }
}

TEST_CASE("max_pairwise_intersection") {
    CHECK(max_pairwise_intersection(hamming_image()) == 1);
    CHECK(max_pairwise_intersection(flat(8, {{1, 2, 3, 4}, {5, 6, 7, 8}})) == 0);
    CHECK(max_pairwise_intersection(end_to_end(8).system) == 1);
    CHECK_THROWS_AS(max_pairwise_intersection(flat(4, {{1, 2, 3, 4}})), input_error);
}

TEST_CASE("deleting a block keeps a passing system passing") {
    auto res = end_to_end(6);
    for (std::size_t drop = 0; drop < res.system.blocks.size(); ++drop) {
        std::vector<std::vector<std::int64_t>> raw;
        for (std::size_t i = 0; i < res.system.blocks.size(); ++i)
            if (i != drop) raw.push_back(res.system.blocks[i].points);
        auto sub = validate_set_system(res.system.n, res.system.k, res.system.product, raw);
        CHECK(verify_ipps2(sub, VerifyMode::Exhaustive).pass);
    }
}

TEST_CASE("reports are schedule independent") {
    auto sys = hamming_image();
    for (auto mode : {VerifyMode::Fast, VerifyMode::Exhaustive}) {
        auto one = verify_ipps2(sys, mode, 1);
        auto four = verify_ipps2(sys, mode, 4);
        CHECK(one.pass == four.pass);
        CHECK(one.stats.examined == four.stats.examined);
        CHECK(one.stats.pruned == four.stats.pruned);
        CHECK(one.stats.work == four.stats.work);
        REQUIRE(one.witness.has_value());
        CHECK(one.witness->parents == four.witness->parents);
        CHECK(one.witness->points == four.witness->points);
    }
    auto res = end_to_end(10);
    auto a = verify_ipps2(res.system, VerifyMode::Exhaustive, 1);
    auto b = verify_ipps2(res.system, VerifyMode::Exhaustive, 3);
    CHECK(a.stats.examined == b.stats.examined);
    CHECK(a.stats.work == b.stats.work);
}
