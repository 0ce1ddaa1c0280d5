#pragma once

#include <string>

#include "llev/correctness.hpp"
#include "llev/leveling.hpp"
#include "llev/net.hpp"

namespace llev {

enum class Strat { Exact, Weak };

struct StratResult {
    bool ok = true;
    int flat = -1;  // offending flat link
};

struct LightResult {
    bool ok = true;
    int box = -1;
};

struct SystemReport {
    bool validNet = false;
    bool isProofNet = false;
    bool correctnessInconclusive = false;
    bool weakIndexable = false;
    bool indexable = false;
    bool depthStratExact = false;
    bool depthStratWeak = false;
    bool lightness = false;
    bool levelEqualsDepth = false;
    bool isMELL = false;
    bool isML3 = false;
    bool isML4 = false;
    bool isML40 = false;
    bool lllImage = false;
    long level = 0;
    int depth = 0;
    int size = 0;
    std::string witness;
};

StratResult checkDepthStratification(const Net& n, Strat mode);
LightResult checkLightness(const Net& n);
// links with non-discharged conclusion have canonical level equal to their depth
bool levelEqualsDepth(const Net& n, const Indexing& canonical, int* offender = nullptr);
SystemReport classify(const Net& n, bool asLLLImage = false);
std::string reportJson(const SystemReport& r);

}
