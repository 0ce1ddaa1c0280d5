#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "llev/net.hpp"

namespace llev {

struct BuildError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A conclusion of a proof under construction. A why-not conclusion may be kept
// as a bundle of discharged edges until some rule needs it as a plain edge.
struct Slot {
    F formula;
    int edge = -1;
    std::vector<int> bundle;
    bool isBundle() const { return edge < 0; }
};

// Proof-net construction mirroring the sequent rules. Every operation consumes
// its arguments by value and returns the new proof.
struct Proof {
    Net net;
    std::vector<Slot> slots;

    int edgeOf(std::size_t k);  // materializes a bundle
    void materializeAll();
    Net finish();               // materializes and returns the net
};

Proof pAx(const F& a, Mode m = Mode::Typed);
// typed0 axiom on p.A^ and A
Proof pAx0(const F& a, std::uint64_t p);
Proof pMix(Proof a, Proof b);
Proof pCut(Proof a, std::size_t ka, Proof b, std::size_t kb);
Proof pTensor(Proof a, std::size_t ka, Proof b, std::size_t kb);
Proof pPar(Proof a, std::size_t k1, std::size_t k2);
Proof pForall(Proof a, std::size_t k, const std::string& x);
// slot k holds body[b/x]
Proof pExists(Proof a, std::size_t k, const std::string& x, const F& body, const F& b);
Proof pDer(Proof a, std::size_t k);
Proof pCtr(Proof a, std::size_t k1, std::size_t k2);
Proof pWeak(Proof a, const F& inner);
// ordinary promotion: all slots other than k are why-nots
Proof pProm(Proof a, std::size_t k);
// light promotion: at most one other slot, which is flattened inside the box
Proof pLProm(Proof a, std::size_t k);
Proof pParg(Proof a, std::size_t k);

// moves slot k to the end
Proof pRotate(Proof a, std::size_t k);

}
