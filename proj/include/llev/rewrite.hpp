#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "llev/net.hpp"

namespace llev {

enum class CutClass {
    Axiom,
    Multiplicative,
    Quantifier,
    ExpWeakening,
    ExpContractive,
    Paragraph,
    Ax0Negative,
    Ax0Positive,
    Irreducible
};

const char* cutClassName(CutClass c);

struct StepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CutClass classifyCut(const Net& n, int cut);
inline bool isReducible(const Net& n, int cut) { return classifyCut(n, cut) != CutClass::Irreducible; }
inline bool isContractive(CutClass c) { return c == CutClass::ExpContractive; }
std::vector<int> reducibleCuts(const Net& n);

struct StepInfo {
    int cut = -1;
    CutClass cls = CutClass::Irreducible;
    std::vector<int> newCuts;
    int copies = 0;
};

// Links touched by an exponential step: class 1 (content of the box and the
// why-not links receiving its auxiliary branches) and class 2 (w, the principal
// port, the cut and the flats above w).
struct ExpClasses {
    std::set<int> class1;
    std::set<int> class2;
};
ExpClasses expStepClasses(const Net& n, int cut);

StepInfo step(Net& n, int cut);

// edges above e, stopping at axiom and weakening links
std::vector<int> treeOf(const Net& n, int e);

// Typed0 axiom steps relabel the tree of the other premise; its indexes move by `shift`.
struct AxAction {
    std::vector<int> tree;
    long shift = 0;
};
AxAction axAction(const Net& n, int cut);

}
