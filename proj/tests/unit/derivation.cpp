#include <random>

#include "doctest.h"
#include "llev/corpus.hpp"
#include "llev/derivation.hpp"
#include "llev/leveling.hpp"

using namespace llev;

namespace {

Sequent check(const char* text, RuleSet rs) { return checkDerivation(parseDerivation(text), rs); }

}

TEST_CASE("axiom and tensor") {
    auto s = check(R"(tensor 1 1
  ax "X" 0
  ax "Y" 0
)",
                   RuleSet::ML3);
    REQUIRE(s.size() == 3);
    CHECK(equal(s[2].formula, parseFormula("X * Y")));
    CHECK(s[2].index == 0);
    CHECK(isProper(s));
}

TEST_CASE("weighted axiom in mL40") {
    auto s = check(R"(ax "X" 2 1)", RuleSet::ML40);
    REQUIRE(s.size() == 2);
    CHECK(equal(s[0].formula, parseFormula("2@~X")));
    CHECK(s[0].index == 1);
    CHECK(s[1].index == 3);
    CHECK_THROWS_AS(check(R"(ax "X" 2 1)", RuleSet::ML4), DerivationError);
}

TEST_CASE("rule set restrictions") {
    const char* prom = R"(prom 0
  der 0
    ax "X" 0
)";
    CHECK_NOTHROW(check(prom, RuleSet::ML3));
    CHECK_THROWS_AS(check(prom, RuleSet::ML4), DerivationError);
    const char* lprom = R"(lprom 1
  ax "X" 0
)";
    CHECK_THROWS_AS(check(lprom, RuleSet::ML3), DerivationError);
    auto s = check(lprom, RuleSet::ML4);
    CHECK(equal(s[0].formula, parseFormula("?~X")));
    CHECK(s[1].index == -1);
    CHECK_THROWS_AS(check(R"(parg 0
  ax "X" 0
)",
                          RuleSet::ML40),
                    DerivationError);
}

TEST_CASE("errors name the rule and the node") {
    try {
        check(R"(cut 0 0
  ax "X" 0
  ax "X" 0
)",
              RuleSet::ML3);
        FAIL("expected an error");
    } catch (const DerivationError& e) {
        std::string m = e.what();
        CHECK(m.find("cut") != std::string::npos);
        CHECK(m.find("root") != std::string::npos);
    }
    CHECK_THROWS_AS(check(R"(par 0 0
  ax "X" 0
)",
                          RuleSet::ML3),
                    DerivationError);
    CHECK_THROWS_AS(parseDerivation(""), ParseError);
}

TEST_CASE("elaborated nets carry the checked indexes") {
    std::mt19937_64 rng(29);
    for (RuleSet rs : {RuleSet::ML3, RuleSet::ML4, RuleSet::ML40}) {
        for (int k = 0; k < 40; ++k) {
            Derivation d = randomDerivation(rs, rng);
            Sequent s = checkDerivation(d, rs);
            Net n = elaborate(d, rs);
            CHECK(n.valid());
            CHECK(n.conclusions().size() == s.size());
            Indexing I = solveIndexing(n, IndexMode::Weak);
            REQUIRE(I.ok);
            // conclusions differ by the same amounts as in the sequent
            auto cc = n.conclusions();
            for (std::size_t i = 1; i < cc.size(); ++i)
                CHECK(I.at(cc[i]) - I.at(cc[0]) == s[i].index - s[0].index);
        }
    }
}

TEST_CASE("print and parse round trip") {
    Derivation d = digDerivation();
    Derivation e = parseDerivation(printDerivation(d));
    CHECK(printDerivation(e) == printDerivation(d));
    CHECK(showSequent(checkDerivation(e, RuleSet::ML3)) == showSequent(checkDerivation(d, RuleSet::ML3)));
}
