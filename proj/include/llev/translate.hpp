#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "llev/net.hpp"

namespace llev {

struct TranslateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TranslationReport {
    std::string name;
    // axiom id in the output -> (weight of first conclusion, weight of second)
    std::map<int, std::pair<std::uint64_t, std::uint64_t>> axioms;
};

// mL4 -> mL4_0: paragraphs absorbed into the axioms
Net trzero(const Net& n, TranslationReport* rep = nullptr);
// eta-expanded axiom on A^, A with p paragraphs under every atom on the A^ side
Net buildRAp(const F& a, unsigned p);
// mL4_0 -> mL4
Net trone(const Net& n, TranslationReport* rep = nullptr);
Net erase(const Net& n);
// U: labels dropped
Net forget(const Net& n);

// one layer of eta-expansion of a non-atomic axiom (typed or typed0)
Net etaExpand(const Net& n, int axiom);
Net etaNormalForm(const Net& n);

// Isomorphism of the untyped structure (link kinds, ports, boxes). Cut and
// why-not premises and axiom conclusions are unordered.
bool isomorphic(const Net& a, const Net& b);

}
