#include <random>

#include "doctest.h"
#include "llev/corpus.hpp"
#include "llev/derivation.hpp"
#include "llev/systems.hpp"
#include "llev/translate.hpp"

using namespace llev;

TEST_CASE("expanded axiom") {
    Net n = buildRAp(parseFormula("X * Y"), 0);
    CHECK(n.valid());
    CHECK(n.size() == 4);  // two axioms, tensor, par
    Net p = buildRAp(atom("X"), 2);
    CHECK(p.size() == 3);
    Net q = buildRAp(parseFormula("!X"), 1);
    CHECK(q.valid());
    CHECK(q.boxes().size() == 1);
}

TEST_CASE("paragraphs absorbed into axioms") {
    Net sp = buildString("0110", StringFlavor::SP);
    TranslationReport rep;
    Net t = trzero(sp, &rep);
    CHECK(t.mode == Mode::Typed0);
    CHECK(classify(t).isML40);
    CHECK(isomorphic(t, trzero(buildString("0110", StringFlavor::SPprime))));
    CHECK(isomorphic(t, buildString("0110", StringFlavor::S0)));
    for (auto& [id, l] : t.links) CHECK(l.kind != LinkKind::Parg);
}

TEST_CASE("erasure and forgetting") {
    Net n = pargD1();
    Net e = erase(n);
    for (auto& [id, l] : e.links) CHECK(l.kind != LinkKind::Parg);
    Net u = forget(n);
    CHECK(u.mode == Mode::Untyped);
    CHECK(u.size() == n.size());
}

TEST_CASE("eta normal form is idempotent") {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 40; ++k) {
        Net n = elaborate(randomDerivation(RuleSet::ML40, rng), RuleSet::ML40);
        Net e = etaNormalForm(n);
        CHECK(isomorphic(etaNormalForm(e), e));
        for (auto& [id, l] : e.links)
            if (l.kind == LinkKind::Ax) CHECK(isAtomic(e.edge(l.concl[1]).label));
    }
}

TEST_CASE("isomorphism ignores ids") {
    Net a = runningEx();
    Net b = fromText(toText(a));
    CHECK(isomorphic(a, b));
    CHECK_FALSE(isomorphic(a, runningExRed()));
}
