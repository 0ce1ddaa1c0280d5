#include "llev/correctness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace llev {

std::vector<int> jumps(const Net& n, int lk) {
    const Link& l = n.link(lk);
    std::set<int> r;
    if (l.kind == LinkKind::Par) {
        for (int e : l.prem) r.insert(n.edge(e).src);
    } else if (l.kind == LinkKind::Forall && n.mode != Mode::Untyped) {
        r.insert(n.edge(l.prem[0]).src);
        for (auto& [id, e] : n.edges)
            if (e.label && e.src != lk && occursFree(e.label, l.eigen)) r.insert(e.src);
        for (auto& [id, m] : n.links)
            if (m.kind == LinkKind::Exists && m.assoc && occursFree(m.assoc, l.eigen)) r.insert(id);
        r.erase(lk);
    } else {
        throw std::invalid_argument("link " + std::to_string(lk) + " is not a jumping link");
    }
    return {r.begin(), r.end()};
}

namespace {

bool isJumping(const Net& n, const Link& l) {
    return l.kind == LinkKind::Par || (l.kind == LinkKind::Forall && n.mode != Mode::Untyped);
}

// contraction keeps exactly one of its discharged premises
bool isContraction(const Link& l) { return l.kind == LinkKind::Wn && l.prem.size() >= 2; }

std::vector<int> switchTargets(const Net& n, int lk) {
    const Link& l = n.link(lk);
    if (!isContraction(l)) return jumps(n, lk);
    std::vector<int> r;
    for (int e : l.prem) r.push_back(n.edge(e).src);
    return r;
}

struct UF {
    std::vector<int> p;
    std::vector<std::pair<int, int>> hist;
    explicit UF(int k) : p(k) {
        for (int i = 0; i < k; ++i) p[i] = i;
    }
    int find(int x) const {
        while (p[x] != x) x = p[x];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        hist.push_back({a, p[a]});
        p[a] = b;
        return true;
    }
    void rollback(std::size_t to) {
        while (hist.size() > to) {
            p[hist.back().first] = hist.back().second;
            hist.pop_back();
        }
    }
};

struct GEdge {
    int u, v;
    int group;   // -1: fixed
    int target;  // chosen jump target link for option edges
};

class ScopeChecker {
public:
    ScopeChecker(const Net& n, int scope, std::uint64_t cap) : n_(n), s_(scope), cap_(cap) {}

    CorrectnessResult run() {
        build();
        CorrectnessResult res;
        res.scope = s_;
        if (!contract(res)) return res;
        bcc();
        for (auto& comp : comps_) {
            if (!checkComponent(comp, res)) return res;
        }
        return res;
    }

private:
    const Net& n_;
    int s_;
    std::uint64_t cap_;
    std::uint64_t visits_ = 0;
    std::map<int, int> nodeIdx_;
    std::vector<int> nodeLink_;
    std::vector<GEdge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;  // node -> (other, edge idx)
    std::vector<std::vector<int>> comps_;                // edge indices per biconnected component
    std::map<int, int> groupSize_;                       // group -> total option count

    int nodeOf(int lk) const {
        const Link& l = n_.link(lk);
        bool border = l.kind == LinkKind::Oc || l.kind == LinkKind::Pax;
        if (!border && l.box == s_) return lk;
        int x = border ? l.owner : l.box;
        while (x >= 0 && n_.link(x).box != s_) x = n_.link(x).box;
        if (x >= 0 && x == s_) return -1;
        return x;
    }

    int idx(int node) {
        auto it = nodeIdx_.find(node);
        if (it != nodeIdx_.end()) return it->second;
        int k = static_cast<int>(nodeLink_.size());
        nodeIdx_[node] = k;
        nodeLink_.push_back(node);
        return k;
    }

    void build() {
        std::set<int> jumpers;
        for (auto& [id, l] : n_.links)
            if (l.box == s_ && (isJumping(n_, l) || isContraction(l))) jumpers.insert(id);
        for (auto& [id, e] : n_.edges) {
            if (e.tgt < 0) continue;
            if (jumpers.count(e.tgt)) continue;
            int u = nodeOf(e.src), v = nodeOf(e.tgt);
            if (u < 0 || v < 0 || u == v) continue;
            edges_.push_back({idx(u), idx(v), -1, -1});
        }
        for (int j : jumpers) {
            std::set<int> seen;
            for (int m : switchTargets(n_, j)) {
                int v = nodeOf(m);
                if (v < 0 || v == j || !seen.insert(v).second) continue;
                edges_.push_back({idx(j), idx(v), j, m});
                groupSize_[j]++;
            }
            idx(j);
        }
        for (auto& [id, l] : n_.links) {
            int v = nodeOf(id);
            if (v >= 0) idx(v);
        }
        adj_.assign(nodeLink_.size(), {});
        for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
            adj_[edges_[i].u].push_back({edges_[i].v, i});
            adj_[edges_[i].v].push_back({edges_[i].u, i});
        }
    }

    // Merges fixed edges and single-target groups, drops options ending in a
    // leaf; the search then only sees groups with two or more real choices.
    // Choosing no option (a jump leaving the scope) never closes a cycle, so
    // it is not considered.
    bool contract(CorrectnessResult& res) {
        int N = static_cast<int>(nodeLink_.size());
        UF uf(N);
        std::map<int, std::vector<int>> groups;
        for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
            const GEdge& g = edges_[i];
            if (g.group >= 0) {
                groups[g.group].push_back(i);
            } else if (!uf.unite(g.u, g.v)) {
                res.verdict = Verdict::Incorrect;
                res.detail = "cycle through fixed edges";
                return false;
            }
        }
        for (bool changed = true; changed;) {
            changed = false;
            for (auto it = groups.begin(); it != groups.end();) {
                std::map<int, int> byTarget;
                int j = -1;
                for (int ei : it->second) {
                    j = uf.find(edges_[ei].u);
                    int t = uf.find(edges_[ei].v);
                    if (t == j) {
                        res.verdict = Verdict::Incorrect;
                        res.detail = "cyclic switching";
                        res.switching = {{it->first, edges_[ei].target}};
                        return false;
                    }
                    byTarget.emplace(t, ei);
                }
                std::vector<int> kept;
                for (auto& [t, ei] : byTarget) kept.push_back(ei);
                if (kept.size() <= 1) {
                    if (kept.size() == 1) uf.unite(j, uf.find(edges_[kept[0]].v));
                    it = groups.erase(it);
                    changed = true;
                    continue;
                }
                if (kept.size() != it->second.size()) changed = true;
                it->second = kept;
                ++it;
            }
            // an option whose target cannot reach the jumper without the
            // group's own edges is never on a cycle
            for (auto& [g, os] : groups) {
                if (os.empty()) continue;
                std::map<int, std::vector<int>> adj;
                for (auto& [h, hs] : groups) {
                    if (h == g) continue;
                    for (int ei : hs) {
                        int a = uf.find(edges_[ei].u), b = uf.find(edges_[ei].v);
                        adj[a].push_back(b);
                        adj[b].push_back(a);
                    }
                }
                int j = uf.find(edges_[os[0]].u);
                std::set<int> seen{j};
                std::vector<int> todo{j};
                while (!todo.empty()) {
                    int x = todo.back();
                    todo.pop_back();
                    for (int y : adj[x])
                        if (seen.insert(y).second) todo.push_back(y);
                }
                std::vector<int> kept;
                for (int ei : os)
                    if (seen.count(uf.find(edges_[ei].v))) kept.push_back(ei);
                if (kept.size() != os.size()) {
                    changed = true;
                    os = kept;
                }
            }
            std::map<int, int> deg;
            for (auto& [g, os] : groups)
                for (int ei : os) {
                    deg[uf.find(edges_[ei].u)]++;
                    deg[uf.find(edges_[ei].v)]++;
                }
            for (auto& [g, os] : groups) {
                std::vector<int> kept;
                for (int ei : os)
                    if (deg[uf.find(edges_[ei].v)] > 1 && deg[uf.find(edges_[ei].u)] > 1) kept.push_back(ei);
                if (kept.size() != os.size()) {
                    changed = true;
                    os = kept;
                }
            }
        }
        std::vector<GEdge> rest;
        groupSize_.clear();
        for (auto& [g, os] : groups)
            for (int ei : os) {
                GEdge e = edges_[ei];
                e.u = uf.find(e.u);
                e.v = uf.find(e.v);
                rest.push_back(e);
                groupSize_[g]++;
            }
        edges_ = rest;
        adj_.assign(nodeLink_.size(), {});
        for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
            adj_[edges_[i].u].push_back({edges_[i].v, i});
            adj_[edges_[i].v].push_back({edges_[i].u, i});
        }
        return true;
    }

    // Tarjan biconnected components on the multigraph (edge-based).
    void bcc() {
        int N = static_cast<int>(nodeLink_.size());
        std::vector<int> disc(N, -1), low(N, 0);
        std::vector<int> stack;
        int timer = 0;
        std::function<void(int, int)> dfs = [&](int u, int parentEdge) {
            disc[u] = low[u] = timer++;
            for (auto [v, ei] : adj_[u]) {
                if (ei == parentEdge) continue;
                if (disc[v] < 0) {
                    stack.push_back(ei);
                    dfs(v, ei);
                    low[u] = std::min(low[u], low[v]);
                    if (low[v] >= disc[u]) {
                        std::vector<int> comp;
                        for (;;) {
                            int x = stack.back();
                            stack.pop_back();
                            comp.push_back(x);
                            if (x == ei) break;
                        }
                        comps_.push_back(comp);
                    }
                } else if (disc[v] < disc[u]) {
                    stack.push_back(ei);
                    low[u] = std::min(low[u], disc[v]);
                }
            }
        };
        for (int u = 0; u < N; ++u)
            if (disc[u] < 0) dfs(u, -1);
    }

    bool checkComponent(const std::vector<int>& comp, CorrectnessResult& res) {
        if (comp.size() < 2) return true;
        std::vector<int> fixed;
        std::map<int, std::vector<int>> opts;
        for (int ei : comp) {
            if (edges_[ei].group < 0) fixed.push_back(ei);
            else opts[edges_[ei].group].push_back(ei);
        }
        UF uf(static_cast<int>(nodeLink_.size()));
        for (int ei : fixed) {
            if (!uf.unite(edges_[ei].u, edges_[ei].v)) {
                res.verdict = Verdict::Incorrect;
                res.detail = "cycle through fixed edges";
                return false;
            }
        }
        struct Group {
            int link;
            std::vector<int> options;
            bool canSkip;
        };
        std::vector<Group> groups;
        for (auto& [g, os] : opts)
            groups.push_back({g, os, static_cast<int>(os.size()) < groupSize_[g]});
        std::vector<int> chosen(groups.size(), -1);
        bool inconclusive = false;
        std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
            if (k == groups.size()) {
                if (++visits_ > cap_) inconclusive = true;
                return false;
            }
            for (int ei : groups[k].options) {
                std::size_t mark = uf.hist.size();
                chosen[k] = ei;
                if (!uf.unite(edges_[ei].u, edges_[ei].v)) return true;
                if (search(k + 1)) return true;
                uf.rollback(mark);
                if (inconclusive) return false;
            }
            if (groups[k].canSkip) {
                chosen[k] = -1;
                if (search(k + 1)) return true;
            }
            return false;
        };
        if (search(0)) {
            res.verdict = Verdict::Incorrect;
            res.detail = "cyclic switching";
            for (std::size_t k = 0; k < groups.size(); ++k)
                if (chosen[k] >= 0) res.switching.push_back({groups[k].link, edges_[chosen[k]].target});
            return false;
        }
        if (inconclusive) {
            res.verdict = Verdict::Inconclusive;
            res.detail = "switching cap exceeded";
            return false;
        }
        return true;
    }
};

}

CorrectnessResult isCorrect(const Net& n, std::uint64_t cap) {
    std::vector<int> scopes{-1};
    for (int b : n.boxes()) scopes.push_back(b);
    for (int s : scopes) {
        ScopeChecker sc(n, s, cap);
        auto r = sc.run();
        if (!r.ok()) return r;
    }
    return {};
}

}
