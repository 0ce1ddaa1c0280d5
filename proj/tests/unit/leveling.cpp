#include <map>
#include <random>

#include "doctest.h"
#include "llev/builder.hpp"
#include "llev/corpus.hpp"
#include "llev/leveling.hpp"

using namespace llev;

namespace {

// union-find with offsets: pot[e] = I(e) - I(root)
struct Oracle {
    std::map<int, int> up;
    std::map<int, long> pot;
    bool ok = true;
    std::pair<int, long> find(int e) {
        if (!up.count(e)) up[e] = e, pot[e] = 0;
        if (up[e] == e) return {e, 0};
        auto [r, p] = find(up[e]);
        up[e] = r;
        pot[e] += p;
        return {r, pot[e]};
    }
    void relate(int a, int b, long d) {  // I(a) - I(b) = d
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) {
            if (pa - pb != d) ok = false;
            return;
        }
        up[ra] = rb;
        pot[ra] = d + pb - pa;
    }
};

void checkAgainstOracle(const Net& n) {
    Oracle o;
    for (auto& [id, e] : n.edges) o.find(id);
    for (auto& c : generateConstraints(n)) o.relate(c.e1, c.e2, c.d);
    auto cc = n.conclusions();
    for (std::size_t i = 1; i < cc.size(); ++i) o.relate(cc[0], cc[i], 0);
    Indexing I = canonicalIndexing(n);
    REQUIRE(I.ok == o.ok);
    if (!o.ok) return;
    std::map<int, long> mins;
    for (auto& [id, e] : n.edges) {
        auto [r, p] = o.find(id);
        auto it = mins.find(r);
        if (it == mins.end() || p < it->second) mins[r] = p;
    }
    for (auto& [id, e] : n.edges) {
        auto [r, p] = o.find(id);
        CHECK(I.at(id) == p - mins[r]);
    }
}

}

TEST_CASE("single axiom sits at index 0") {
    Net n = pAx(atom("X")).finish();
    Indexing I = canonicalIndexing(n);
    REQUIRE(I.ok);
    for (auto& [id, e] : n.edges) CHECK(I.at(id) == 0);
    CHECK(netLevel(n) == 0);
}

TEST_CASE("paragraph raises its premise") {
    Net n = pParg(pAx(atom("X")), 1).finish();  // |- ~X, $X
    CHECK_FALSE(solveIndexing(n, IndexMode::Full).ok);
    Indexing I = canonicalize(n, solveIndexing(n, IndexMode::Weak));
    REQUIRE(I.ok);
    for (auto& [id, l] : n.links)
        if (l.kind == LinkKind::Parg) CHECK(I.at(l.prem[0]) == I.at(l.concl[0]) + 1);
    CHECK(netLevel(n, I) == 1);
}

TEST_CASE("closed components are normalized separately") {
    // an axiom on k-fold paragraphs cut against itself
    auto selfCut = [](unsigned k) {
        Net m;
        int a = m.newEdge(natom("X")), b = m.newEdge(atom("X"));
        m.newLink(LinkKind::Ax, {}, {a, b});
        for (unsigned i = 0; i < k; ++i) {
            int a2 = m.newEdge(parg(m.edge(a).label)), b2 = m.newEdge(parg(m.edge(b).label));
            m.newLink(LinkKind::Parg, {a}, {a2});
            m.newLink(LinkKind::Parg, {b}, {b2});
            a = a2, b = b2;
        }
        m.newLink(LinkKind::Cut, {a, b}, {});
        return m;
    };
    Net n = pAx(atom("Y")).finish();
    n.absorb(selfCut(2));
    n.absorb(selfCut(5));
    REQUIRE(n.valid());
    Indexing raw = solveIndexing(n);
    REQUIRE(raw.ok);
    Indexing I = canonicalize(n, raw);
    std::map<int, long> mins;
    for (auto& [e, v] : I.idx) {
        int g = I.group.at(e);
        mins[g] = mins.count(g) ? std::min(mins[g], v) : v;
    }
    CHECK(mins.size() >= 2);
    for (auto& [g, m] : mins) CHECK(m == 0);
    for (int c : n.conclusions()) CHECK(I.at(c) == 0);
    Indexing again = canonicalize(n, I);
    CHECK(again.idx == I.idx);
    checkAgainstOracle(n);
}

TEST_CASE("unindexable net has a conflict witness in both modes") {
    Net n = nonIndexable();
    Indexing I = solveIndexing(n, IndexMode::Full);
    CHECK_FALSE(I.ok);
    CHECK_FALSE(I.conflict.empty());
    CHECK_FALSE(solveIndexing(n, IndexMode::Weak).ok);
}

TEST_CASE("canonical indexing against an offset union-find") {
    for (auto& name : corpusNames()) {
        CAPTURE(name);
        checkAgainstOracle(corpusNet(name));
    }
    std::mt19937_64 rng(17);
    for (RuleSet rs : {RuleSet::ML3, RuleSet::ML4, RuleSet::ML40})
        for (int k = 0; k < 60; ++k) checkAgainstOracle(elaborate(randomDerivation(rs, rng), rs));
}

TEST_CASE("string nets have level 1") {
    CHECK(netLevel(buildString("0110", StringFlavor::SP)) == 1);
    CHECK(netLevel(buildString("0110", StringFlavor::SE)) == 1);
}
