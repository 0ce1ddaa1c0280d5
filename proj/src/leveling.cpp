#include "llev/leveling.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <tuple>

namespace llev {

std::vector<IndexConstraint> generateConstraints(const Net& n) {
    std::vector<IndexConstraint> cs;
    for (auto& [id, l] : n.links) {
        switch (l.kind) {
        case LinkKind::Ax: {
            long d = 0;
            int a = l.concl[0], b = l.concl[1];
            if (n.mode == Mode::Typed0) {
                const F& la = n.edge(a).label;
                const F& lb = n.edge(b).label;
                if (auto k = axiomShift(la, lb)) {
                    d = static_cast<long>(*k);  // a heavy: I(b) = I(a) + k
                    cs.push_back({b, a, d, id});
                    break;
                }
                if (auto k = axiomShift(lb, la)) {
                    cs.push_back({a, b, static_cast<long>(*k), id});
                    break;
                }
            }
            cs.push_back({a, b, 0, id});
            break;
        }
        case LinkKind::Cut: cs.push_back({l.prem[0], l.prem[1], 0, id}); break;
        case LinkKind::Oc:
        case LinkKind::Flat:
        case LinkKind::Parg: cs.push_back({l.prem[0], l.concl[0], 1, id}); break;
        default:
            for (int p : l.prem) cs.push_back({p, l.concl[0], 0, id});
            break;
        }
    }
    return cs;
}

Indexing solveIndexing(const Net& n, IndexMode mode) {
    Indexing I;
    I.mode = mode;
    auto cs = generateConstraints(n);
    if (mode == IndexMode::Full) {
        auto cc = n.conclusions();
        for (std::size_t i = 1; i < cc.size(); ++i) cs.push_back({cc[0], cc[i], 0, -1});
    }
    // adjacency: edge -> (other edge, value to add to go from this to other, constraint index)
    std::map<int, std::vector<std::tuple<int, long, int>>> adj;
    for (int i = 0; i < static_cast<int>(cs.size()); ++i) {
        auto& c = cs[i];
        // I(e1) = I(e2) + d
        adj[c.e2].push_back({c.e1, c.d, i});
        adj[c.e1].push_back({c.e2, -c.d, i});
    }
    std::map<int, int> parentEdge;
    for (auto& [root, e] : n.edges) {
        if (I.idx.count(root)) continue;
        I.idx[root] = 0;
        I.group[root] = root;
        parentEdge[root] = -1;
        std::deque<int> q{root};
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (auto [v, d, ci] : adj[u]) {
                long want = I.idx[u] + d;
                auto it = I.idx.find(v);
                if (it == I.idx.end()) {
                    I.idx[v] = want;
                    I.group[v] = root;
                    parentEdge[v] = u;
                    q.push_back(v);
                } else if (it->second != want) {
                    // witness: path u -> root and v -> root
                    std::vector<int> pu, pv;
                    for (int x = u; x >= 0; x = parentEdge[x]) pu.push_back(x);
                    for (int x = v; x >= 0; x = parentEdge[x]) pv.push_back(x);
                    while (pu.size() > 1 && pv.size() > 1 && pu[pu.size() - 2] == pv[pv.size() - 2]) {
                        pu.pop_back();
                        pv.pop_back();
                    }
                    I.conflict = pu;
                    for (int k = static_cast<int>(pv.size()) - 2; k >= 0; --k) I.conflict.push_back(pv[k]);
                    I.detail = "constraint of link " + std::to_string(cs[ci].link) + " between edges " +
                               std::to_string(cs[ci].e1) + " and " + std::to_string(cs[ci].e2) + " conflicts";
                    I.ok = false;
                    return I;
                }
            }
        }
    }
    I.ok = true;
    return I;
}

Indexing canonicalize(const Net& n, const Indexing& in) {
    Indexing out = in;
    if (!in.ok) return out;
    // merge all groups owning a conclusion
    auto cc = n.conclusions();
    std::map<int, int> rep;
    int concGroup = -1;
    for (int c : cc) {
        int g = in.group.at(c);
        if (concGroup < 0) concGroup = g;
        rep[g] = concGroup;
    }
    auto R = [&](int g) {
        auto it = rep.find(g);
        return it == rep.end() ? g : it->second;
    };
    std::map<int, long> mins;
    for (auto& [e, v] : in.idx) {
        int g = R(in.group.at(e));
        auto it = mins.find(g);
        if (it == mins.end() || v < it->second) mins[g] = v;
    }
    for (auto& [e, v] : out.idx) {
        int g = R(in.group.at(e));
        v -= mins[g];
        out.group[e] = g;
    }
    return out;
}

Indexing canonicalIndexing(const Net& n) {
    auto I = solveIndexing(n, IndexMode::Full);
    if (!I.ok) return I;
    return canonicalize(n, I);
}

long linkLevel(const Net& n, const Indexing& I, int lk) {
    const Link& l = n.link(lk);
    if (l.kind == LinkKind::Cut) return I.at(l.prem[0]);
    long v = I.at(l.concl.at(0));
    for (int e : l.concl) v = std::min(v, I.at(e));
    return v;
}

long boxLevel(const Net& n, const Indexing& I, int b) { return I.at(n.link(b).concl.at(0)); }

long netLevel(const Net& n, const Indexing& I) {
    long m = 0;
    for (auto& [e, v] : I.idx) m = std::max(m, v);
    (void)n;
    return m;
}

long netLevel(const Net& n) {
    auto I = canonicalIndexing(n);
    if (!I.ok) throw std::runtime_error("net is not indexable");
    return netLevel(n, I);
}

}
