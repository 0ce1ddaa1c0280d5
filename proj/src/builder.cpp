#include "llev/builder.hpp"

#include <set>

namespace llev {

int Proof::edgeOf(std::size_t k) {
    Slot& s = slots.at(k);
    if (!s.isBundle()) return s.edge;
    int e = net.newEdge(s.formula);
    net.newLink(LinkKind::Wn, s.bundle, {e});
    s.edge = e;
    s.bundle.clear();
    return e;
}

void Proof::materializeAll() {
    for (std::size_t k = 0; k < slots.size(); ++k) edgeOf(k);
}

Net Proof::finish() {
    materializeAll();
    return net;
}

namespace {

void need(bool c, const std::string& m) {
    if (!c) throw BuildError(m);
}

Slot take(Proof& p, std::size_t k) {
    need(k < p.slots.size(), "slot index out of range");
    Slot s = p.slots[k];
    p.slots.erase(p.slots.begin() + static_cast<long>(k));
    return s;
}

int edgeNow(Proof& p, Slot& s) {
    if (!s.isBundle()) return s.edge;
    int e = p.net.newEdge(s.formula);
    p.net.newLink(LinkKind::Wn, s.bundle, {e});
    s.edge = e;
    s.bundle.clear();
    return e;
}

void toBundle(Proof& p, Slot& s) {
    need(s.formula->c == Conn::Wn, "promotion context formula is not a why-not");
    if (s.isBundle()) return;
    Net& n = p.net;
    int e = s.edge;
    int src = n.edge(e).src;
    const Link& l = n.link(src);
    if (l.kind == LinkKind::Wn) {
        std::vector<int> prem = l.prem;
        n.removeLink(src);
        n.removeEdge(e);
        s.bundle = prem;
        s.edge = -1;
        return;
    }
    need(l.kind == LinkKind::Ax, "why-not conclusion is neither a why-not link nor an axiom");
    int other = l.concl[0] == e ? l.concl[1] : l.concl[0];
    const F& ol = n.edge(other).label;
    need(ol->c == Conn::Oc, "axiom partner is not an of-course formula");
    int oldBox = l.box;
    n.removeLink(src);
    n.removeEdge(e);
    int a = n.newEdge(s.formula->l);
    int b = n.newEdge(ol->l);
    int ax = n.newLink(LinkKind::Ax, {}, {a, b}, oldBox);
    int fe = n.newEdge(s.formula->l);
    int fl = n.newLink(LinkKind::Flat, {a}, {fe}, oldBox);
    int oc = n.newLink(LinkKind::Oc, {b}, {other}, oldBox);
    n.link(ax).box = oc;
    n.link(fl).box = oc;
    int pe = n.newEdge(s.formula->l);
    int px = n.newLink(LinkKind::Pax, {fe}, {pe}, oldBox);
    n.link(px).owner = oc;
    n.aux[oc].push_back(px);
    s.bundle = {pe};
    s.edge = -1;
}

// links at the top level of p are moved into a new box around edge e
int wrap(Proof& p, int e, int* ocEdge) {
    Net& n = p.net;
    std::vector<int> top;
    for (auto& [id, l] : n.links)
        if (l.box < 0) top.push_back(id);
    int oe = n.newEdge(oc(n.edge(e).label));
    int o = n.newLink(LinkKind::Oc, {e}, {oe});
    for (int id : top) n.link(id).box = o;
    *ocEdge = oe;
    return o;
}

int addPax(Net& n, int box, int d) {
    int pe = n.newEdge(n.edge(d).label);
    int px = n.newLink(LinkKind::Pax, {d}, {pe});
    n.link(px).owner = box;
    n.aux[box].push_back(px);
    return pe;
}

}

Proof pAx(const F& a, Mode m) {
    Proof p;
    p.net.mode = m;
    int e1 = p.net.newEdge(dual(a)), e2 = p.net.newEdge(a);
    p.net.newLink(LinkKind::Ax, {}, {e1, e2});
    p.slots = {{dual(a), e1, {}}, {a, e2, {}}};
    return p;
}

Proof pAx0(const F& a, std::uint64_t w) {
    Proof p;
    p.net.mode = Mode::Typed0;
    F h = shift(w, dual(a));
    int e1 = p.net.newEdge(h), e2 = p.net.newEdge(a);
    p.net.newLink(LinkKind::Ax, {}, {e1, e2});
    p.slots = {{h, e1, {}}, {a, e2, {}}};
    return p;
}

Proof pMix(Proof a, Proof b) {
    if (a.net.links.empty() && a.slots.empty()) a.net.mode = b.net.mode;
    std::set<std::string> used = a.net.eigenvariables(), theirs = b.net.eigenvariables();
    for (auto& [id, e] : a.net.edges)
        if (e.label) freeVars(e.label, used);
    std::set<std::string> all = used;
    all.insert(theirs.begin(), theirs.end());
    for (auto& [id, e] : b.net.edges)
        if (e.label) freeVars(e.label, all);
    for (const auto& z : theirs) {
        if (!used.count(z)) continue;
        std::string base = z.substr(0, z.find('#'));
        std::string nz;
        for (int k = std::max(a.net.nextName, b.net.nextName);; ++k) {
            nz = base + "#" + std::to_string(k);
            if (!all.count(nz)) break;
        }
        all.insert(nz);
        b.net.relabelAll([&](const F& f) { return renameFree(f, z, nz); });
        for (auto& [id, l] : b.net.links)
            if (l.kind == LinkKind::Forall && l.eigen == z) l.eigen = nz;
        for (auto& s : b.slots) s.formula = renameFree(s.formula, z, nz);
    }
    auto em = a.net.absorb(b.net);
    for (auto s : b.slots) {
        if (s.edge >= 0) s.edge = em.at(s.edge);
        for (int& d : s.bundle) d = em.at(d);
        a.slots.push_back(s);
    }
    return a;
}

Proof pCut(Proof a, std::size_t ka, Proof b, std::size_t kb) {
    std::size_t na = a.slots.size();
    Proof p = pMix(std::move(a), std::move(b));
    Slot x = p.slots.at(ka), y = p.slots.at(na + kb);
    need(equal(dual(x.formula), y.formula), "cut formulas are not dual: " + show(x.formula) + " / " + show(y.formula));
    int ex = edgeNow(p, x), ey = edgeNow(p, y);
    p.slots.erase(p.slots.begin() + static_cast<long>(na + kb));
    p.slots.erase(p.slots.begin() + static_cast<long>(ka));
    p.net.newLink(LinkKind::Cut, {ex, ey}, {});
    return p;
}

Proof pTensor(Proof a, std::size_t ka, Proof b, std::size_t kb) {
    std::size_t na = a.slots.size();
    Proof p = pMix(std::move(a), std::move(b));
    Slot x = p.slots.at(ka), y = p.slots.at(na + kb);
    int ex = edgeNow(p, x), ey = edgeNow(p, y);
    p.slots.erase(p.slots.begin() + static_cast<long>(na + kb));
    p.slots.erase(p.slots.begin() + static_cast<long>(ka));
    F t = tensor(x.formula, y.formula);
    int e = p.net.newEdge(t);
    p.net.newLink(LinkKind::Tensor, {ex, ey}, {e});
    p.slots.push_back({t, e, {}});
    return p;
}

Proof pPar(Proof a, std::size_t k1, std::size_t k2) {
    need(k1 != k2, "par on a single slot");
    Slot x = a.slots.at(k1), y = a.slots.at(k2);
    int ex = edgeNow(a, x), ey = edgeNow(a, y);
    a.slots.erase(a.slots.begin() + static_cast<long>(std::max(k1, k2)));
    a.slots.erase(a.slots.begin() + static_cast<long>(std::min(k1, k2)));
    F t = par(x.formula, y.formula);
    int e = a.net.newEdge(t);
    a.net.newLink(LinkKind::Par, {ex, ey}, {e});
    a.slots.push_back({t, e, {}});
    return a;
}

Proof pForall(Proof a, std::size_t k, const std::string& x) {
    for (std::size_t i = 0; i < a.slots.size(); ++i)
        need(i == k || !occursFree(a.slots[i].formula, x), "eigenvariable " + x + " free in the context");
    Slot s = take(a, k);
    int e = edgeNow(a, s);
    std::string z = a.net.freshName(x.substr(0, x.find('#')));
    a.net.relabelAll([&](const F& f) { return renameFree(f, x, z); });
    F body = a.net.edge(e).label;
    F t = forall(z, body);
    int c = a.net.newEdge(t);
    int l = a.net.newLink(LinkKind::Forall, {e}, {c});
    a.net.link(l).eigen = z;
    a.slots.push_back({t, c, {}});
    return a;
}

Proof pExists(Proof a, std::size_t k, const std::string& x, const F& body, const F& b) {
    Slot s = take(a, k);
    need(equal(cansubst(body, b, x), s.formula), "exists premise is not the instance " + show(cansubst(body, b, x)));
    int e = edgeNow(a, s);
    F t = exists(x, body);
    int c = a.net.newEdge(t);
    int l = a.net.newLink(LinkKind::Exists, {e}, {c});
    a.net.link(l).assoc = b;
    a.slots.push_back({t, c, {}});
    return a;
}

Proof pDer(Proof a, std::size_t k) {
    Slot s = take(a, k);
    int e = edgeNow(a, s);
    int fe = a.net.newEdge(s.formula);
    a.net.newLink(LinkKind::Flat, {e}, {fe});
    a.slots.push_back({wn(s.formula), -1, {fe}});
    return a;
}

Proof pCtr(Proof a, std::size_t k1, std::size_t k2) {
    need(k1 != k2, "contraction on a single slot");
    need(equal(a.slots.at(k1).formula, a.slots.at(k2).formula), "contracted formulas differ");
    toBundle(a, a.slots[k1]);
    toBundle(a, a.slots[k2]);
    Slot x = a.slots[k1], y = a.slots[k2];
    a.slots.erase(a.slots.begin() + static_cast<long>(std::max(k1, k2)));
    a.slots.erase(a.slots.begin() + static_cast<long>(std::min(k1, k2)));
    x.bundle.insert(x.bundle.end(), y.bundle.begin(), y.bundle.end());
    a.slots.push_back(x);
    return a;
}

Proof pWeak(Proof a, const F& inner) {
    a.slots.push_back({wn(inner), -1, {}});
    return a;
}

Proof pProm(Proof a, std::size_t k) {
    Slot s = take(a, k);
    int e = edgeNow(a, s);
    for (auto& c : a.slots) toBundle(a, c);
    int oe;
    int o = wrap(a, e, &oe);
    for (auto& c : a.slots)
        for (int& d : c.bundle) d = addPax(a.net, o, d);
    a.slots.push_back({oc(s.formula), oe, {}});
    return a;
}

Proof pLProm(Proof a, std::size_t k) {
    need(a.slots.size() <= 2, "light promotion with more than one context formula");
    Slot s = take(a, k);
    int e = edgeNow(a, s);
    int fe = -1;
    F ctx;
    if (!a.slots.empty()) {
        Slot c = take(a, 0);
        int ce = edgeNow(a, c);
        ctx = c.formula;
        fe = a.net.newEdge(ctx);
        a.net.newLink(LinkKind::Flat, {ce}, {fe});
    }
    int oe;
    int o = wrap(a, e, &oe);
    if (fe >= 0) a.slots.push_back({wn(ctx), -1, {addPax(a.net, o, fe)}});
    a.slots.push_back({oc(s.formula), oe, {}});
    return a;
}

Proof pParg(Proof a, std::size_t k) {
    Slot s = take(a, k);
    int e = edgeNow(a, s);
    F t = parg(s.formula);
    int c = a.net.newEdge(t);
    a.net.newLink(LinkKind::Parg, {e}, {c});
    a.slots.push_back({t, c, {}});
    return a;
}

Proof pRotate(Proof a, std::size_t k) {
    Slot s = take(a, k);
    a.slots.push_back(s);
    return a;
}

}
