#include "llev/strategy.hpp"

#include <set>
#include <stdexcept>

#include "json.hpp"

namespace llev {

std::vector<Round> Trace::rounds() const {
    std::vector<Round> r;
    int prevSize = initial.size;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        if (r.empty() || r.back().level != s.level) {
            Round nr;
            nr.level = s.level;
            nr.first = i;
            nr.sizeBefore = prevSize;
            r.push_back(nr);
        }
        auto& cur = r.back();
        cur.steps++;
        cur.contractive = cur.contractive || isContractive(s.cls);
        cur.sizeAfter = s.after.size;
        prevSize = s.after.size;
    }
    return r;
}

Snapshot snapshot(const Net& n, bool full) {
    Snapshot s;
    s.size = n.size();
    auto I = canonicalIndexing(n);
    if (!I.ok) throw std::runtime_error("net is not indexable: " + I.detail);
    s.level = netLevel(n, I);
    s.weight = weight(n, I);
    s.sizes = sizesByLevel(n, I);
    if (full) {
        s.relDepth = relDepth(n, I);
        auto m = boxMetrics(n, I, contractiveOrders(n, I));
        for (long k = 0; k <= s.level; ++k) s.potSize[k] = potSize(n, I, m, k);
    }
    return s;
}

std::optional<int> selectCut(const Net& n, const Indexing& I) {
    auto rc = reducibleCuts(n);
    if (rc.empty()) return std::nullopt;
    long lo = linkLevel(n, I, rc[0]);
    for (int c : rc) lo = std::min(lo, linkLevel(n, I, c));
    std::vector<int> contractive;
    for (int c : rc) {
        if (linkLevel(n, I, c) != lo) continue;
        if (!isContractive(classifyCut(n, c))) return c;
        contractive.push_back(c);
    }
    auto o = contractiveOrders(n, I);
    auto boxOf = [&](int c) {
        const Link& l = n.link(c);
        int s = n.edge(l.prem[0]).src;
        return n.link(s).kind == LinkKind::Oc ? s : n.edge(l.prem[1]).src;
    };
    for (int c : contractive) {
        int b = boxOf(c);
        bool minimal = true;
        for (int d : contractive) {
            int b2 = boxOf(d);
            if (b2 != b && o.preceq.count({b2, b})) minimal = false;
        }
        if (minimal) return c;
    }
    return contractive.front();
}

std::optional<int> selectCut(const Net& n) {
    auto I = canonicalIndexing(n);
    if (!I.ok) throw std::runtime_error("net is not indexable");
    return selectCut(n, I);
}

Reduction roundByRound(const Net& in, const ReduceOptions& opt) {
    Reduction r{in, {}};
    Net& n = r.normal;
    r.trace.initial = snapshot(n, opt.fullMetrics);
    for (std::uint64_t k = 0;; ++k) {
        auto I = canonicalIndexing(n);
        if (!I.ok) throw std::runtime_error("net is not indexable: " + I.detail);
        std::optional<int> c;
        if (opt.strategy == Strategy::Round) {
            c = selectCut(n, I);
        } else {
            auto rc = reducibleCuts(n);
            if (!rc.empty()) c = opt.chooser ? opt.chooser(rc) : rc.front();
        }
        if (!c) break;
        if (k >= opt.maxSteps) {
            r.trace.capExceeded = true;
            break;
        }
        StepRecord rec;
        rec.cut = *c;
        rec.level = linkLevel(n, I, *c);
        Net before;
        if (opt.onStep) before = n;
        auto info = step(n, *c);
        rec.cls = info.cls;
        rec.copies = info.copies;
        rec.newCuts = info.newCuts;
        rec.after = snapshot(n, opt.fullMetrics);
        if (opt.onStep) opt.onStep(before, n, rec);
        r.trace.steps.push_back(std::move(rec));
    }
    return r;
}

namespace {

nlohmann::json weightJson(const Weight& w) {
    nlohmann::json j = nlohmann::json::object();
    for (auto& [k, v] : w) j[std::to_string(k)] = v;
    return j;
}

nlohmann::json snapJson(const Snapshot& s) {
    nlohmann::json j;
    j["size"] = s.size;
    j["level"] = s.level;
    j["relDepth"] = s.relDepth;
    j["weight"] = weightJson(s.weight);
    nlohmann::json S = nlohmann::json::object();
    for (auto& [k, v] : s.sizes) S[std::to_string(k)] = v;
    j["sizes"] = S;
    nlohmann::json P = nlohmann::json::object();
    for (auto& [k, v] : s.potSize) P[std::to_string(k)] = v.str();
    j["potSize"] = P;
    return j;
}

}

std::string traceJson(const Trace& t) {
    nlohmann::json j;
    j["schema"] = "llev-trace/1";
    j["initial"] = snapJson(t.initial);
    j["capExceeded"] = t.capExceeded;
    j["steps"] = nlohmann::json::array();
    for (auto& s : t.steps) {
        nlohmann::json x;
        x["cut"] = s.cut;
        x["class"] = cutClassName(s.cls);
        x["level"] = s.level;
        x["copies"] = s.copies;
        x["newCuts"] = s.newCuts;
        x["after"] = snapJson(s.after);
        j["steps"].push_back(x);
    }
    j["rounds"] = nlohmann::json::array();
    for (auto& r : t.rounds())
        j["rounds"].push_back({{"level", r.level},
                               {"first", r.first},
                               {"steps", r.steps},
                               {"contractive", r.contractive},
                               {"sizeBefore", r.sizeBefore},
                               {"sizeAfter", r.sizeAfter}});
    return j.dump(2);
}

bool residueLevelsStable(const Net& before, const Net& after, std::string* why, int cut) {
    auto Ib = canonicalIndexing(before);
    auto Ia = canonicalIndexing(after);
    if (!Ib.ok || !Ia.ok) {
        if (why) *why = "unindexable";
        return false;
    }
    // 0: rest, 1: relabeled tree, -1: not compared
    std::map<int, int> side;
    AxAction act;
    if (cut >= 0 && before.hasLink(cut)) act = axAction(before, cut);
    if (!act.tree.empty()) {
        std::set<int> tree(act.tree.begin(), act.tree.end());
        for (int e : act.tree) {
            const Link& l = before.link(before.edge(e).src);
            int in = 0;
            for (int c : l.concl) in += tree.count(c);
            side[l.origin] = l.kind == LinkKind::Ax && in != int(l.concl.size()) ? -1 : 1;
        }
    }
    std::map<int, std::set<long>> lift;
    for (auto& [id, l] : before.links) lift[l.origin].insert(linkLevel(before, Ib, id));
    std::map<std::pair<int, int>, long> delta;
    for (auto& [id, l] : after.links) {
        auto it = lift.find(l.origin);
        if (it == lift.end() || it->second.size() != 1) continue;
        int sd = side.count(l.origin) ? side[l.origin] : 0;
        if (sd < 0) continue;
        int e = l.kind == LinkKind::Cut ? l.prem[0] : l.concl[0];
        int g = Ia.group.at(e);
        long d = linkLevel(after, Ia, id) - *it->second.begin();
        auto [di, fresh] = delta.insert({{g, sd}, d});
        if (!fresh && di->second != d) {
            if (why) *why = "residue " + std::to_string(id) + " level differs from its lift";
            return false;
        }
    }
    for (auto& [k, d] : delta) {
        if (k.second != 1) continue;
        auto rest = delta.find({k.first, 0});
        if (rest != delta.end() && d - rest->second != act.shift) {
            if (why) *why = "relabeled tree moved by " + std::to_string(d - rest->second) + " instead of " +
                            std::to_string(act.shift);
            return false;
        }
    }
    return true;
}

}
