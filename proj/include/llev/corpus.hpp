#pragma once

#include <string>
#include <vector>

#include "llev/derivation.hpp"
#include "llev/net.hpp"

namespace llev {

enum class StringFlavor { SE, SP, SPprime, S0 };
const char* flavorName(StringFlavor f);
StringFlavor flavorFromName(const std::string& s);
F stringType(StringFlavor f);

Net buildString(const std::string& bits, StringFlavor f);
// Reads a cut-free string net, possibly below k paragraphs or inside k boxes.
std::string readString(const Net& n, StringFlavor f);
// Same word as an elaborated 2-sequent derivation (not for S0).
Derivation stringDerivation(const std::string& bits, StringFlavor f);

Net buildChurchNat(unsigned n);
// Counts the successor applications of a cut-free numeral, looking through
// enclosing boxes; -1 if the net does not have the expected shape.
long readChurchNat(const Net& n);
// Numeral oracle: flat links in the net.
long countFlats(const Net& n);
Proof churchNatProof(unsigned n);
// The exponential function on numerals: conclusions N^, !N.
Proof expProof();
Net buildTheta(unsigned n);

// worked example with nested boxes of the same level, and its reduct along c
Net runningEx();
Net runningExRed();
struct RunningExParts {
    int B = -1, C = -1, D = -1, B0 = -1, c = -1;
};
RunningExParts runningExParts(const Net& n);

Net nonIndexable();
// |- $A^, A  and  |- A^, $A
Net pargD1();
Net pargD2();
// 1: cut on A (result conclusions $A^, $A); 2: cut on the paragraphs
Net pargComposite(int which);
Net axSelfCut();
// !(!A * B) -o !!A * ?B, provable in mL3
Net digExample();
Derivation digDerivation();

std::vector<std::string> corpusNames();
Net corpusNet(const std::string& name);

}

#include <random>

namespace llev {

// Random formula over the atoms X, Y, Z (weighted atoms for ML40).
F randomFormula(RuleSet rs, std::mt19937_64& rng, int depth);
// Derivation of |- A^ (index i), A (index i), eta-expanded.
Derivation etaDerivation(const F& a, long i, RuleSet rs);
// A random derivation in the given rule set whose root has one conclusion, or
// none; about `ops` rule applications on a pool of partial derivations.
Derivation randomDerivation(RuleSet rs, std::mt19937_64& rng, int ops = 24);

}
