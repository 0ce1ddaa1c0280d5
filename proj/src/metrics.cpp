#include "llev/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "llev/rewrite.hpp"

namespace llev {

long isolevelTreeSize(const Net& n, int e) {
    const Link& l = n.link(n.edge(e).src);
    switch (l.kind) {
    case LinkKind::Ax:
    case LinkKind::Wn:
    case LinkKind::Oc:
    case LinkKind::Parg: return 1;
    case LinkKind::Tensor:
    case LinkKind::Par:
    case LinkKind::Forall:
    case LinkKind::Exists: {
        long s = 1;
        for (int p : l.prem) s += isolevelTreeSize(n, p);
        return s;
    }
    default: throw std::invalid_argument("no isolevel tree for the conclusion of a " + std::string(kindName(l.kind)) + " link");
    }
}

long cutComplexity(const Net& n, int c) {
    const Link& l = n.link(c);
    if (l.kind != LinkKind::Cut) throw std::invalid_argument("link " + std::to_string(c) + " is not a cut");
    return isolevelTreeSize(n, l.prem[0]) + isolevelTreeSize(n, l.prem[1]);
}

Weight weight(const Net& n, const Indexing& I) {
    Weight w;
    long top = netLevel(n, I);
    for (int c : reducibleCuts(n)) w[top - linkLevel(n, I, c)] += cutComplexity(n, c);
    return w;
}

Weight weight(const Net& n) {
    auto I = canonicalIndexing(n);
    if (!I.ok) throw std::runtime_error("net is not indexable");
    return weight(n, I);
}

int compareWeights(const Weight& a, const Weight& b) {
    std::set<long> keys;
    for (auto& [k, v] : a) keys.insert(k);
    for (auto& [k, v] : b) keys.insert(k);
    for (auto it = keys.rbegin(); it != keys.rend(); ++it) {
        auto ia = a.find(*it), ib = b.find(*it);
        long x = ia == a.end() ? 0 : ia->second;
        long y = ib == b.end() ? 0 : ib->second;
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

int cutWhynot(const Net& n, int b, int* cut) {
    int e = n.link(b).concl.at(0);
    int c = n.edge(e).tgt;
    if (c < 0 || n.link(c).kind != LinkKind::Cut) return -1;
    const Link& cl = n.link(c);
    int other = cl.prem[0] == e ? cl.prem[1] : cl.prem[0];
    int w = n.edge(other).src;
    if (n.link(w).kind != LinkKind::Wn) return -1;
    if (cut) *cut = c;
    return w;
}

namespace {

std::set<std::pair<int, int>> closure(const std::vector<int>& nodes, const std::set<std::pair<int, int>>& rel) {
    std::set<std::pair<int, int>> r;
    std::map<int, std::vector<int>> succ;
    for (auto& [a, b] : rel) succ[a].push_back(b);
    for (int s : nodes) {
        std::vector<int> todo{s};
        std::set<int> seen;
        while (!todo.empty()) {
            int x = todo.back();
            todo.pop_back();
            if (!seen.insert(x).second) continue;
            r.insert({s, x});
            for (int y : succ[x]) todo.push_back(y);
        }
    }
    return r;
}

}

ContractiveOrders contractiveOrders(const Net& n, const Indexing& I) {
    ContractiveOrders o;
    auto bs = n.boxes();
    for (int b : bs) {
        int w = cutWhynot(n, b);
        if (w < 0) continue;
        long lb = boxLevel(n, I, b);
        auto flats = n.flatsAbove(w);
        for (int c : bs) {
            if (boxLevel(n, I, c) != lb) continue;
            bool hit = std::any_of(flats.begin(), flats.end(), [&](int f) { return n.inside(f, c); });
            if (!hit) continue;
            o.prec1.insert({b, c});
            if (!n.boxWithin(b, c)) o.precL.insert({b, c});
        }
    }
    o.preceq = closure(bs, o.prec1);
    o.preceqL = closure(bs, o.precL);
    return o;
}

BoxMetrics boxMetrics(const Net& n, const Indexing& I, const ContractiveOrders& o) {
    BoxMetrics m;
    auto bs = n.boxes();
    for (int b : bs) {
        int w = cutWhynot(n, b);
        if (w < 0) {
            m.arity[b] = 1;
            continue;
        }
        long a = static_cast<long>(n.link(w).prem.size());
        for (int f : n.flatsAbove(w)) {
            bool sub = false;
            for (auto& [x, c] : o.precL)
                if (x == b && n.inside(f, c)) sub = true;
            if (sub) --a;
        }
        m.arity[b] = a;
    }
    for (int b : bs) {
        BigInt s = 0;
        for (auto& [x, c] : o.preceqL)
            if (x == b) s += m.arity[c];
        m.ctrFact[b] = s;
    }
    for (int b : bs) {
        BigInt p = 1;
        long lb = boxLevel(n, I, b);
        for (int c : bs)
            if (n.boxWithin(b, c) && boxLevel(n, I, c) == lb) p *= m.ctrFact[c];
        m.mult[b] = p;
    }
    return m;
}

namespace {
Indexing mustIndex(const Net& n) {
    auto I = canonicalIndexing(n);
    if (!I.ok) throw std::runtime_error("net is not indexable");
    return I;
}
}

BoxMetrics boxMetrics(const Net& n) {
    auto I = mustIndex(n);
    return boxMetrics(n, I, contractiveOrders(n, I));
}

int relDepth(const Net& n, const Indexing& I, int b) {
    long lb = boxLevel(n, I, b);
    int top = b;
    for (int s = n.link(b).box; s >= 0; s = n.link(s).box)
        if (boxLevel(n, I, s) == lb) top = s;
    return n.boxDepth(b) - n.boxDepth(top);
}

int relDepth(const Net& n, const Indexing& I) {
    int r = 0;
    for (int b : n.boxes()) r = std::max(r, relDepth(n, I, b));
    return r;
}

int relDepth(const Net& n) { return relDepth(n, mustIndex(n)); }

BigInt potSize(const Net& n, const Indexing& I, const BoxMetrics& m, long k, std::map<int, BigInt>* perLink) {
    BigInt total = 0;
    for (auto& [id, l] : n.links) {
        if (l.kind == LinkKind::Pax) continue;
        BigInt v = 1;
        for (int s = l.box; s >= 0; s = n.link(s).box) {
            if (boxLevel(n, I, s) == k) {
                v = m.mult.at(s);
                break;
            }
        }
        if (perLink) (*perLink)[id] = v;
        total += v;
    }
    return total;
}

BigInt potSize(const Net& n, long k, std::map<int, BigInt>* perLink) {
    auto I = mustIndex(n);
    auto m = boxMetrics(n, I, contractiveOrders(n, I));
    return potSize(n, I, m, k, perLink);
}

std::map<long, long> sizesByLevel(const Net& n, const Indexing& I) {
    std::map<long, long> s;
    for (auto& [id, l] : n.links)
        if (l.kind != LinkKind::Pax) s[linkLevel(n, I, id)]++;
    return s;
}

}
