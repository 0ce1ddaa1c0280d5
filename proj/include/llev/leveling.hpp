#pragma once

#include <map>
#include <string>
#include <vector>

#include "llev/net.hpp"

namespace llev {

// I(e1) - I(e2) = d
struct IndexConstraint {
    int e1, e2;
    long d;
    int link;  // generating link, -1 for the equal-conclusions constraints
};

enum class IndexMode { Weak, Full };

struct Indexing {
    bool ok = false;
    IndexMode mode = IndexMode::Full;
    std::map<int, long> idx;
    std::map<int, int> group;          // edge -> shift group representative
    std::vector<int> conflict;         // edge cycle witnessing unindexability
    std::string detail;
    long at(int e) const { return idx.at(e); }
};

std::vector<IndexConstraint> generateConstraints(const Net& n);
Indexing solveIndexing(const Net& n, IndexMode mode = IndexMode::Full);
Indexing canonicalize(const Net& n, const Indexing& in);
Indexing canonicalIndexing(const Net& n);

long linkLevel(const Net& n, const Indexing& I, int link);
long boxLevel(const Net& n, const Indexing& I, int box);
long netLevel(const Net& n, const Indexing& I);
long netLevel(const Net& n);

}
