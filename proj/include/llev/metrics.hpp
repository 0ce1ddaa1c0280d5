#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "llev/leveling.hpp"
#include "llev/net.hpp"

namespace llev {

using BigInt = boost::multiprecision::cpp_int;

// isolevel tree of e: leaves at ax, whynot, oc and paragraph links
long isolevelTreeSize(const Net& n, int e);
long cutComplexity(const Net& n, int cut);

using Weight = std::map<long, long>;
Weight weight(const Net& n, const Indexing& I);
Weight weight(const Net& n);
// -1, 0, 1
int compareWeights(const Weight& a, const Weight& b);

struct ContractiveOrders {
    std::set<std::pair<int, int>> prec1, preceq, precL, preceqL;
};
ContractiveOrders contractiveOrders(const Net& n, const Indexing& I);

// whynot cut against the principal port of b, -1 if none
int cutWhynot(const Net& n, int box, int* cut = nullptr);

struct BoxMetrics {
    std::map<int, long> arity;
    std::map<int, BigInt> ctrFact;
    std::map<int, BigInt> mult;
};
BoxMetrics boxMetrics(const Net& n, const Indexing& I, const ContractiveOrders& o);
BoxMetrics boxMetrics(const Net& n);

int relDepth(const Net& n, const Indexing& I, int box);
int relDepth(const Net& n, const Indexing& I);
int relDepth(const Net& n);

BigInt potSize(const Net& n, const Indexing& I, const BoxMetrics& m, long k, std::map<int, BigInt>* perLink = nullptr);
BigInt potSize(const Net& n, long k, std::map<int, BigInt>* perLink = nullptr);

// S_i: non-pax links at level i
std::map<long, long> sizesByLevel(const Net& n, const Indexing& I);

}
