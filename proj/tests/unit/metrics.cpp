#include "doctest.h"
#include "llev/bounds.hpp"
#include "llev/builder.hpp"
#include "llev/corpus.hpp"
#include "llev/metrics.hpp"

using namespace llev;

TEST_CASE("worked example box metrics") {
    Net n = runningEx();
    auto p = runningExParts(n);
    auto m = boxMetrics(n);
    CHECK(m.arity[p.B] == 2);
    CHECK(m.arity[p.C] == 2);
    CHECK(m.arity[p.D] == 1);
    CHECK(m.ctrFact[p.B] == 4);
    CHECK(m.mult[p.B] == 8);
    CHECK(m.mult[p.C] == 4);
    CHECK(m.mult[p.B0] == 2);
    CHECK(potSize(n, 0) == 77);
    CHECK(n.size() == 34);
}

TEST_CASE("box not cut has arity 1") {
    Net n = pLProm(pAx(atom("X")), 1).finish();
    auto m = boxMetrics(n);
    REQUIRE(m.arity.size() == 1);
    CHECK(m.arity.begin()->second == 1);
    CHECK(m.mult.begin()->second == 1);
    CHECK(relDepth(n) == 0);
    // normal net: potential size is the size
    CHECK(potSize(n, 0) == n.size());
}

TEST_CASE("relative depth of nested boxes") {
    // the inner box sits one index above the outer one
    Net nested = pLProm(pLProm(pAx(atom("X")), 1), 1).finish();
    CHECK(nested.depth() == 2);
    CHECK(relDepth(nested) == 0);
    CHECK(relDepth(Net()) == 0);
}

TEST_CASE("sizes by level") {
    Net n = pParg(pAx(atom("X")), 1).finish();
    auto s = sizesByLevel(n, canonicalIndexing(n));
    long total = 0;
    for (auto [l, k] : s) total += k;
    CHECK(total == n.size());
}

TEST_CASE("bounds") {
    CHECK(*tower(0, 5) == 5);
    CHECK(*tower(1, 5) == 32);
    CHECK(*tower(2, 2) == 16);
    CHECK_FALSE(tower(3, 5).has_value());
    CHECK(*sizeBound(3, 1) == 27);
    CHECK(*sizeBoom(3) == 256);
    CHECK(*elemBound(0, 7) == 7);
    CHECK(*elemBound(1, 2) == 2 * 16);
    CHECK(within(100, std::nullopt));
}
