#include "doctest.h"
#include "llev/corpus.hpp"
#include "llev/rewrite.hpp"
#include "llev/strategy.hpp"
#include "llev/systems.hpp"

using namespace llev;

TEST_CASE("string nets read back") {
    for (StringFlavor f : {StringFlavor::SE, StringFlavor::SP, StringFlavor::SPprime, StringFlavor::S0}) {
        for (const char* w : {"", "0", "1", "10", "0111001"}) {
            CAPTURE(flavorName(f));
            CAPTURE(w);
            Net n = buildString(w, f);
            CHECK(n.valid());
            CHECK(readString(n, f) == w);
        }
        CHECK(flavorFromName(flavorName(f)) == f);
    }
}

TEST_CASE("string derivations check") {
    for (StringFlavor f : {StringFlavor::SE, StringFlavor::SP, StringFlavor::SPprime}) {
        auto d = stringDerivation("1101", f);
        RuleSet rs = f == StringFlavor::SE ? RuleSet::ML3 : RuleSet::ML4;
        Sequent s = checkDerivation(d, rs);
        CHECK(isProper(s));
        CHECK(readString(elaborate(d, rs), f) == "1101");
    }
}

TEST_CASE("church numerals") {
    for (unsigned k : {0u, 1u, 2u, 5u}) {
        Net n = buildChurchNat(k);
        CHECK(readChurchNat(n) == k);
        CHECK(countFlats(n) == k);
    }
}

TEST_CASE("theta reduces to the tower numerals") {
    const long want[] = {2, 4, 16};
    for (unsigned k = 1; k <= 3; ++k) {
        Net nf = roundByRound(buildTheta(k)).normal;
        CHECK(countFlats(nf) == want[k - 1]);
        CHECK(readChurchNat(nf) == want[k - 1]);
    }
}

TEST_CASE("corpus is well formed") {
    for (auto& name : corpusNames()) {
        CAPTURE(name);
        Net n = corpusNet(name);
        CHECK(n.valid());
    }
    CHECK_THROWS(corpusNet("no-such-net"));
}

TEST_CASE("dig example is in mL3") {
    auto r = classify(digExample());
    CHECK(r.isML3);
    CHECK(r.isProofNet);
}
