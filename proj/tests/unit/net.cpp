#include <algorithm>

#include "doctest.h"
#include "llev/corpus.hpp"
#include "llev/net.hpp"

using namespace llev;

namespace {

bool hasViolation(const Net& n, const std::string& what) {
    auto v = n.validate();
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.what == what; });
}

// flat inside two nested boxes, its branch leaves through both auxiliary ports
const char* twoCrossings = R"(mode untyped
edge 0
edge 1
edge 2
edge 3
edge 4
edge 5
edge 6
edge 7
link 0 ax -> 0 1
link 1 flat 1 -> 2
link 2 pax 2 -> 3
link 3 oc 0 -> 4
link 5 pax 3 -> 5
link 6 oc 4 -> 6
link 7 whynot 5 -> 7
box 3 { 0 1 } aux [2]
box 6 { 0 1 2 3 } aux [5]
)";

}

TEST_CASE("single axiom") {
    Net n;
    int a = n.newEdge(parseFormula("~X")), b = n.newEdge(parseFormula("X"));
    n.newLink(LinkKind::Ax, {}, {a, b});
    CHECK(n.valid());
    CHECK(n.size() == 1);
    CHECK(n.depth() == 0);
    CHECK(Net().size() == 0);
}

TEST_CASE("ill-typed axiom is reported") {
    Net n;
    int a = n.newEdge(parseFormula("X")), b = n.newEdge(parseFormula("X"));
    n.newLink(LinkKind::Ax, {}, {a, b});
    CHECK_FALSE(n.valid());
}

TEST_CASE("flat conclusion must reach a pax or why-not") {
    Net n;
    n.mode = Mode::Untyped;
    int a = n.newEdge(), b = n.newEdge(), c = n.newEdge(), d = n.newEdge(), e = n.newEdge(), f = n.newEdge();
    n.newLink(LinkKind::Ax, {}, {a, b});
    n.newLink(LinkKind::Ax, {}, {c, d});
    n.newLink(LinkKind::Flat, {b}, {e});
    n.newLink(LinkKind::Tensor, {e, c}, {f});
    CHECK(hasViolation(n, "flat-conclusion target"));
}

TEST_CASE("depth and pax crossings") {
    Net n = fromText(twoCrossings);
    CHECK(n.valid());
    CHECK(n.depthOf(0) == 2);
    CHECK(n.depthOf(3) == 1);
    CHECK(n.depth() == 2);
    CHECK(n.paxCrossings(1) == std::vector<int>{2, 5});
    CHECK(n.branchWhynot(1) == 7);
    CHECK(n.flatsAbove(7) == std::vector<int>{1});
    // size leaves out auxiliary ports
    CHECK(n.size() == 5);
}

TEST_CASE("flat directly under a why-not") {
    Net n = fromText(R"(mode untyped
edge 0
edge 1
edge 2
edge 3
link 0 ax -> 0 1
link 1 flat 1 -> 2
link 2 whynot 2 -> 3
)");
    CHECK(n.valid());
    CHECK(n.paxCrossings(1).empty());
    CHECK(n.exponentialBranch(1).size() == 1);
}

TEST_CASE("text format round trip") {
    for (const char* name : {"running", "dig", "theta-2", "string-SP-101", "string-S0-11"}) {
        Net n = corpusNet(name);
        Net m = fromText(toText(n));
        CHECK(m.valid());
        CHECK(toText(m) == toText(n));
    }
    CHECK_THROWS_AS(fromText("link 0 frobnicate -> 1"), ParseError);
}

TEST_CASE("box queries") {
    Net n = corpusNet("running");
    for (int b : n.boxes()) {
        auto c = n.content(b);
        for (int l : c) CHECK(n.inside(l, b));
        CHECK_FALSE(n.inside(b, b));
    }
}
