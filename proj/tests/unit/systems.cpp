#include "doctest.h"
#include "llev/builder.hpp"
#include "llev/corpus.hpp"
#include "llev/systems.hpp"

using namespace llev;

namespace {

std::size_t slotOf(const Proof& p, const char* f) {
    F g = parseFormula(f);
    for (std::size_t i = 0; i < p.slots.size(); ++i)
        if (equal(p.slots[i].formula, g)) return i;
    FAIL("no slot " << f);
    return 0;
}

}

TEST_CASE("empty net belongs to every system") {
    auto r = classify(Net());
    CHECK(r.isProofNet);
    CHECK(r.isMELL);
    CHECK(r.isML3);
    CHECK(r.isML4);
    CHECK(r.level == 0);
    CHECK(r.size == 0);
}

TEST_CASE("non-indexable net") {
    auto r = classify(nonIndexable());
    CHECK(r.isProofNet);
    CHECK_FALSE(r.weakIndexable);
    CHECK_FALSE(r.indexable);
    CHECK_FALSE(r.isML3);
}

TEST_CASE("box with two auxiliary ports is not light") {
    Proof p = pTensor(pAx(atom("X")), 1, pAx(atom("Y")), 1);  // ~X, ~Y, X*Y
    p = pDer(std::move(p), slotOf(p, "~X"));
    p = pDer(std::move(p), slotOf(p, "~Y"));
    p = pProm(std::move(p), slotOf(p, "X * Y"));
    Net n = p.finish();
    CHECK(n.valid());
    auto L = checkLightness(n);
    CHECK_FALSE(L.ok);
    CHECK(L.box >= 0);
    auto r = classify(n);
    CHECK(r.isMELL);
    CHECK(r.isML3);
    CHECK_FALSE(r.isML4);
}

TEST_CASE("light promotion keeps lightness") {
    Proof p = pAx(atom("X"));
    p = pLProm(std::move(p), 1);
    Net n = p.finish();
    CHECK(checkLightness(n).ok);
    auto r = classify(n);
    CHECK(r.isML3);
    CHECK(r.depth == 1);
}

TEST_CASE("paragraph derivation with unequal conclusions") {
    auto r = classify(pargD1());
    CHECK(r.isProofNet);
    CHECK(r.weakIndexable);
    CHECK_FALSE(r.indexable);
    CHECK_FALSE(r.isML4);
}

TEST_CASE("stratification of the worked example") {
    Net n = runningEx();
    CHECK(checkDepthStratification(n, Strat::Weak).ok);
    auto r = classify(n);
    CHECK(r.isML4);
    CHECK_FALSE(reportJson(r).empty());
}
