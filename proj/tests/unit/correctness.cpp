#include <algorithm>

#include "doctest.h"
#include "llev/builder.hpp"
#include "llev/corpus.hpp"
#include "llev/correctness.hpp"

using namespace llev;

TEST_CASE("par over two axioms jumps to both") {
    Proof p = pTensor(pAx(parseFormula("X")), 1, pAx(parseFormula("Y")), 1);  // [~X, ~Y, X*Y]
    p = pPar(std::move(p), 1, 0);
    Net n = p.finish();
    int par = -1;
    for (auto& [id, l] : n.links)
        if (l.kind == LinkKind::Par) par = id;
    auto j = jumps(n, par);
    CHECK(j.size() == 2);
    CHECK(isCorrect(n).ok());
}

TEST_CASE("forall jumps to the links using its eigenvariable") {
    Proof p = pAx(atom("E"));                                  // [~E, E]
    p = pExists(std::move(p), 0, "Z", natom("Z"), atom("E"));  // [E, ex Z.~Z]
    p = pForall(std::move(p), 0, "E");
    Net n = p.finish();
    int fa = -1;
    std::vector<int> want;
    for (auto& [id, l] : n.links) {
        if (l.kind == LinkKind::Forall) fa = id;
        if (l.kind == LinkKind::Ax || l.kind == LinkKind::Exists) want.push_back(id);
    }
    REQUIRE(fa >= 0);
    auto j = jumps(n, fa);
    std::sort(j.begin(), j.end());
    CHECK(j == want);
    CHECK(isCorrect(n).ok());
}

TEST_CASE("cycle through an axiom cut on itself") {
    auto r = isCorrect(axSelfCut());
    CHECK(r.verdict == Verdict::Incorrect);
}

TEST_CASE("switching cycle is found") {
    // tensor of the two conclusions of one axiom: every switching is cyclic
    Proof p = pAx(parseFormula("X"));
    Net n = p.finish();
    int a = n.links.begin()->second.concl[0], b = n.links.begin()->second.concl[1];
    int t = n.newEdge(tensor(n.edge(a).label, n.edge(b).label));
    n.newLink(LinkKind::Tensor, {a, b}, {t});
    CHECK(n.valid());
    CHECK(isCorrect(n).verdict == Verdict::Incorrect);
}

TEST_CASE("juxtaposed proof nets stay correct") {
    Net n = pMix(pAx(atom("X")), pTensor(pAx(atom("Y")), 1, pAx(atom("Z")), 1)).finish();
    CHECK(isCorrect(n).ok());
}

TEST_CASE("corpus nets are correct") {
    for (auto& name : corpusNames()) {
        if (name == "ax-self-cut") continue;
        CAPTURE(name);
        CHECK(isCorrect(corpusNet(name)).ok());
    }
}
