#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "llev/net.hpp"

namespace llev {

enum class Verdict { Correct, Incorrect, Inconclusive };

struct CorrectnessResult {
    Verdict verdict = Verdict::Correct;
    int scope = -1;                               // box whose content failed (-1: top level)
    std::vector<std::pair<int, int>> switching;   // jumping link -> chosen target link
    std::string detail;
    bool ok() const { return verdict == Verdict::Correct; }
};

// Jump set of a par, or of a forall in typed/typed0 mode.
std::vector<int> jumps(const Net& n, int link);

CorrectnessResult isCorrect(const Net& n, std::uint64_t cap = std::uint64_t(1) << 20);

}
