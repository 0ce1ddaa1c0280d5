#include "doctest.h"
#include "llev/builder.hpp"
#include "llev/corpus.hpp"
#include "llev/correctness.hpp"
#include "llev/metrics.hpp"
#include "llev/rewrite.hpp"
#include "llev/strategy.hpp"
#include "llev/translate.hpp"

using namespace llev;

namespace {

int onlyCut(const Net& n) {
    auto c = n.cuts();
    REQUIRE(c.size() == 1);
    return c[0];
}

// |- ~X, ~Y, X*Y  cut against  |- ~Y | ~X, Y, X
Net tensorParCut() {
    Proof a = pTensor(pAx(atom("X")), 1, pAx(atom("Y")), 1);
    Proof b = pPar(pMix(pAx(atom("X")), pAx(atom("Y"))), 2, 0);
    return pCut(std::move(a), 2, std::move(b), b.slots.size() - 1).finish();
}

}

TEST_CASE("cut complexity counts both isolevel trees") {
    Net n = tensorParCut();
    int c = onlyCut(n);
    auto& l = n.link(c);
    CHECK(isolevelTreeSize(n, l.prem[0]) == 3);
    CHECK(isolevelTreeSize(n, l.prem[1]) == 3);
    CHECK(cutComplexity(n, c) == 6);
}

TEST_CASE("multiplicative step") {
    Net n = tensorParCut();
    int c = onlyCut(n);
    CHECK(classifyCut(n, c) == CutClass::Multiplicative);
    auto info = step(n, c);
    CHECK(info.newCuts.size() == 2);
    CHECK(n.valid());
    CHECK(isCorrect(n).ok());
    for (int k : info.newCuts) CHECK(classifyCut(n, k) == CutClass::Axiom);
    Net nf = roundByRound(n).normal;
    CHECK(nf.cuts().empty());
    CHECK(nf.size() == 2);
}

TEST_CASE("weakening erases the box") {
    Proof a = pLProm(pAx(atom("X")), 1);           // |- ~X, !X (light)
    Proof w = pWeak(pAx(atom("Y")), natom("X"));   // |- ~Y, Y, ?~X
    Net n = pCut(std::move(a), 1, std::move(w), 2).finish();
    int c = onlyCut(n);
    CHECK(classifyCut(n, c) == CutClass::ExpWeakening);
    step(n, c);
    CHECK(n.valid());
    CHECK(n.boxes().empty());
    CHECK(n.cuts().empty());
}

TEST_CASE("worked example: cut selection and contractive step") {
    Net n = runningEx();
    auto p = runningExParts(n);
    auto s = selectCut(n);
    REQUIRE(s);
    CHECK(*s == p.c);
    CHECK(classifyCut(n, p.c) == CutClass::ExpContractive);
    int w = -1;
    for (int e : n.link(p.c).prem)
        if (n.link(n.edge(e).src).kind == LinkKind::Wn) w = n.edge(e).src;
    REQUIRE(w >= 0);
    long flats = static_cast<long>(n.flatsAbove(w).size());
    auto info = step(n, p.c);
    CHECK(info.copies == flats);
    CHECK(isomorphic(n, runningExRed()));
}

TEST_CASE("normal net gives an empty trace") {
    auto r = roundByRound(buildString("101", StringFlavor::SP));
    CHECK(r.trace.steps.empty());
    CHECK(r.trace.rounds().empty());
    CHECK_FALSE(r.trace.capExceeded);
}

TEST_CASE("self-cut axiom is irreducible") {
    Net n = axSelfCut();
    CHECK(classifyCut(n, onlyCut(n)) == CutClass::Irreducible);
    CHECK(reducibleCuts(n).empty());
}

TEST_CASE("weights compare from the highest index down") {
    CHECK(compareWeights({{0, 3}}, {{0, 2}}) == 1);
    CHECK(compareWeights({{0, 1}, {1, 9}}, {{0, 2}}) == 1);
    CHECK(compareWeights({{0, 9}, {1, 1}}, {{1, 2}}) == -1);
    CHECK(compareWeights({{1, 9}}, {{1, 9}}) == 0);
    CHECK(compareWeights({{0, 2}, {1, 1}}, {{0, 2}}) == 1);
}

TEST_CASE("weight drops along the reduction") {
    Net n = runningEx();
    Weight before = weight(n);
    step(n, runningExParts(runningEx()).c);
    CHECK(compareWeights(weight(n), before) == -1);
}
