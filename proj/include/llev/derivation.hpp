#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "llev/builder.hpp"

namespace llev {

enum class RuleSet { ML3, ML4, ML40 };
const char* ruleSetName(RuleSet r);

// Rule arguments:
//   ax A i | ax A p i (ML40)     weak A i
//   cut k1 k2 | tensor k1 k2 (one slot per premise)
//   par k1 k2 | ctr k1 k2 | forall k X | exists k X A B | der k | prom k | lprom k | parg k
//   mix
// Principal formulas are appended after the remaining context.
struct Derivation {
    std::string rule;
    std::vector<long> ints;
    std::vector<F> formulas;
    std::string var;
    std::vector<Derivation> kids;
};

struct IndexedFormula {
    F formula;
    long index;
};
using Sequent = std::vector<IndexedFormula>;

struct DerivationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Returns the derived 2-sequent; throws DerivationError naming the rule and node path.
Sequent checkDerivation(const Derivation& d, RuleSet rs);
bool isProper(const Sequent& s);
Net elaborate(const Derivation& d, RuleSet rs);
Proof elaborateProof(const Derivation& d, RuleSet rs);

// Indented prefix syntax, one rule per line, children indented below:
//   tensor 0 0
//     ax "X" 0
//     ax "Y" 0
Derivation parseDerivation(const std::string& text);
std::string printDerivation(const Derivation& d);
std::string showSequent(const Sequent& s);

}
