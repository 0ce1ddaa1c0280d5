#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "llev/metrics.hpp"
#include "llev/rewrite.hpp"

namespace llev {

struct Snapshot {
    int size = 0;
    long level = 0;
    int relDepth = 0;
    Weight weight;
    std::map<long, long> sizes;      // S_i
    std::map<long, BigInt> potSize;  // per level, full metrics only
};

struct StepRecord {
    int cut = -1;
    CutClass cls = CutClass::Irreducible;
    long level = 0;
    int copies = 0;
    std::vector<int> newCuts;
    Snapshot after;
};

struct Round {
    long level = 0;
    std::size_t first = 0;  // index of the first step
    std::size_t steps = 0;
    bool contractive = false;
    int sizeBefore = 0;
    int sizeAfter = 0;
};

struct Trace {
    Snapshot initial;
    std::vector<StepRecord> steps;
    bool capExceeded = false;
    std::vector<Round> rounds() const;
};

enum class Strategy { Round, Any };

struct ReduceOptions {
    Strategy strategy = Strategy::Round;
    std::uint64_t maxSteps = 10000000;
    bool fullMetrics = true;
    // chooses among the reducible cuts in Any mode (default: smallest id)
    std::function<int(const std::vector<int>&)> chooser;
    // called after each step with the nets before and after
    std::function<void(const Net&, const Net&, const StepRecord&)> onStep;
};

Snapshot snapshot(const Net& n, bool full);

std::optional<int> selectCut(const Net& n, const Indexing& I);
std::optional<int> selectCut(const Net& n);

struct Reduction {
    Net normal;
    Trace trace;
};
Reduction roundByRound(const Net& n, const ReduceOptions& opt = {});

std::string traceJson(const Trace& t);

// Levels of residues agree with the levels of their lifts up to one shift per
// indexing group of the reduct. Given the reduced cut of a typed0 axiom step,
// the relabeled tree may move by the axiom's weight relative to the rest.
bool residueLevelsStable(const Net& before, const Net& after, std::string* why = nullptr, int cut = -1);

}
