#include <random>

#include "doctest.h"
#include "llev/corpus.hpp"
#include "llev/formula.hpp"

using namespace llev;

namespace {

F P(const char* s) { return parseFormula(s); }

bool same(const char* a, const F& b) { return equal(P(a), b); }

// structural weight stripping, written independently of the library
F stripWeights(const F& f) {
    switch (f->c) {
    case Conn::Atom:
    case Conn::NegAtom: {
        auto g = std::make_shared<Formula>(*f);
        g->w = 0;
        return g;
    }
    case Conn::Tensor: return tensor(stripWeights(f->l), stripWeights(f->r));
    case Conn::Par: return par(stripWeights(f->l), stripWeights(f->r));
    case Conn::Oc: return oc(stripWeights(f->l));
    case Conn::Wn: return wn(stripWeights(f->l));
    case Conn::Parg: return stripWeights(f->l);
    case Conn::Forall:
    case Conn::Exists: return binder(f->c, f->name, stripWeights(f->l));
    }
    return f;
}

}

TEST_CASE("parse and print round trip") {
    for (const char* s : {"X * Y", "all X. X | 2@~X", "$(X * $~X)", "!?X", "ex X. X", "?(~X * X) | !(~X | X)"}) {
        F f = P(s);
        CHECK(equal(P(show(f).c_str()), f));
    }
    CHECK_THROWS_AS(P("X *"), ParseError);
    CHECK_THROWS_AS(P("all . X"), ParseError);
}

TEST_CASE("duality") {
    CHECK(same("~Y | ~X", dual(P("X * Y"))));
    CHECK(same("$~X", dual(P("$X"))));
    F q = P("all X. 0@X | 2@~X");
    CHECK(equal(dual(dual(q)), q));
    CHECK(same("?!~X", dual(P("!?X"))));
    CHECK(same("all X. ~X", dual(P("ex X. X"))));
}

TEST_CASE("monoid action") {
    F f = P("1@X");
    CHECK(equal(shift(0, f), f));
    CHECK(same("6@X", shift(2, shift(3, f))));
    CHECK(same("!(1@X | 1@~X)", shift(1, P("!(X | ~X)"))));
}

TEST_CASE("substitution") {
    CHECK(same("(Y * Z) | (~Z | ~Y)", substitute(P("X | ~X"), P("Y * Z"), "X")));
    CHECK(same("X", substitute(P("X"), P("X"), "X")));
    CHECK(same("all X. X", substitute(P("all X. X"), P("Y"), "X")));
    CHECK(same("3@Y | 2@Z", cansubst(P("2@X"), P("1@Y | Z"), "X")));
    CHECK(same("1@~Z | 1@~Y", cansubst(P("1@~X"), P("Y * Z"), "X")));
    F b = P("Y * !Z");
    CHECK(equal(cansubst(P("X"), b, "X"), b));
}

TEST_CASE("substitution avoids capture") {
    F f = P("all Y. X | Y");
    F g = substitute(f, P("Y"), "X");
    CHECK(occursFree(g, "Y"));
    CHECK(g->c == Conn::Forall);
}

TEST_CASE("translations between the two languages") {
    CHECK(same("0@X", toForm0(P("X"))));
    CHECK(same("1@X * 2@~X", toForm0(P("$(X * $~X)"))));
    CHECK(equal(toForm0(types::stringSP()), types::stringS0()));
    CHECK(equal(toForm0(types::stringSPprime()), types::stringS0()));
    CHECK(same("~X", toForm(P("0@~X"))));
    CHECK(same("$$X | $~X", toForm(P("2@X | 1@~X"))));
    CHECK(same("X * Y", eraseParagraphs(P("$(X * $Y)"))));
    F free = P("!(X | ~Y)");
    CHECK(equal(eraseParagraphs(free), free));
    CHECK(same("X", forgetWeights(P("3@X"))));
    CHECK(equal(forgetWeights(types::stringS0()), eraseParagraphs(types::stringSP())));
}

TEST_CASE("random formulas: toForm0 inverts toForm, erasure matches weight stripping") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 300; ++k) {
        F f = randomFormula(RuleSet::ML40, rng, 4);
        CHECK(equal(toForm0(toForm(f)), f));
        CHECK(equal(eraseParagraphs(toForm(f)), stripWeights(f)));
        CHECK(equal(forgetWeights(f), stripWeights(f)));
        CHECK(equal(forgetWeights(shift(3, f)), forgetWeights(f)));
    }
}
