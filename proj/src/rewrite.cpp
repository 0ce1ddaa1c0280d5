#include "llev/rewrite.hpp"

#include <algorithm>
#include <map>

namespace llev {

const char* cutClassName(CutClass c) {
    switch (c) {
    case CutClass::Axiom: return "axiom";
    case CutClass::Multiplicative: return "multiplicative";
    case CutClass::Quantifier: return "quantifier";
    case CutClass::ExpWeakening: return "exponential-weakening";
    case CutClass::ExpContractive: return "exponential-contractive";
    case CutClass::Paragraph: return "paragraph";
    case CutClass::Ax0Negative: return "axiom0-negative";
    case CutClass::Ax0Positive: return "axiom0-positive";
    case CutClass::Irreducible: return "irreducible";
    }
    return "?";
}

namespace {

struct AxCut {
    int a = -1;      // axiom link
    int ePrime = -1; // cut premise from a
    int e = -1;      // other cut premise
    int e2 = -1;     // other conclusion of a
};

AxCut axCut(const Net& n, int c) {
    const Link& cl = n.link(c);
    AxCut r;
    for (int k = 0; k < 2; ++k) {
        int p = cl.prem[k];
        int s = n.edge(p).src;
        if (n.link(s).kind == LinkKind::Ax) {
            r.a = s;
            r.ePrime = p;
            r.e = cl.prem[1 - k];
            const Link& al = n.link(s);
            r.e2 = al.concl[0] == p ? al.concl[1] : al.concl[0];
            return r;
        }
    }
    return r;
}

F unshift(std::uint64_t p, const F& f) {
    if (p == 0) return f;
    switch (f->c) {
    case Conn::Atom:
    case Conn::NegAtom: {
        if (f->w < p) throw StepError("cannot divide label " + show(f));
        auto g = std::make_shared<Formula>(*f);
        g->w -= p;
        return g;
    }
    default: {
        auto g = std::make_shared<Formula>(*f);
        g->l = unshift(p, f->l);
        if (f->r) g->r = unshift(p, f->r);
        return g;
    }
    }
}

void eraseLinks(Net& n, const std::set<int>& ls) {
    std::set<int> es;
    for (int l : ls) {
        if (!n.hasLink(l)) continue;
        for (int e : n.link(l).concl) es.insert(e);
    }
    for (int l : ls) n.removeLink(l);
    for (int e : es) n.removeEdge(e);
}

int freshOrigin(Net& n) { return n.nextOrigin++; }

int addCut(Net& n, int a, int b, int box) {
    return n.newLink(LinkKind::Cut, {a, b}, {}, box, freshOrigin(n));
}

}

CutClass classifyCut(const Net& n, int c) {
    const Link& cl = n.link(c);
    if (cl.kind != LinkKind::Cut) throw StepError("link " + std::to_string(c) + " is not a cut");
    int s0 = n.edge(cl.prem[0]).src, s1 = n.edge(cl.prem[1]).src;
    auto k0 = n.link(s0).kind, k1 = n.link(s1).kind;
    if (k0 == LinkKind::Ax || k1 == LinkKind::Ax) {
        if (s0 == s1) return CutClass::Irreducible;
        if (n.mode == Mode::Typed0) {
            AxCut ac = axCut(n, c);
            const F& lp = n.edge(ac.ePrime).label;
            const F& l2 = n.edge(ac.e2).label;
            auto heavy = axiomShift(lp, l2);
            if (heavy && *heavy > 0) return CutClass::Ax0Negative;
            auto light = axiomShift(l2, lp);
            if (light && *light > 0) return CutClass::Ax0Positive;
        }
        return CutClass::Axiom;
    }
    auto pair = [&](LinkKind a, LinkKind b) { return (k0 == a && k1 == b) || (k0 == b && k1 == a); };
    if (pair(LinkKind::Tensor, LinkKind::Par)) return CutClass::Multiplicative;
    if (pair(LinkKind::Forall, LinkKind::Exists)) return CutClass::Quantifier;
    if (pair(LinkKind::Oc, LinkKind::Wn)) {
        int w = k0 == LinkKind::Wn ? s0 : s1;
        return n.link(w).prem.empty() ? CutClass::ExpWeakening : CutClass::ExpContractive;
    }
    if (k0 == LinkKind::Parg && k1 == LinkKind::Parg) return CutClass::Paragraph;
    return CutClass::Irreducible;
}

std::vector<int> reducibleCuts(const Net& n) {
    std::vector<int> r;
    for (int c : n.cuts())
        if (isReducible(n, c)) r.push_back(c);
    return r;
}

std::vector<int> treeOf(const Net& n, int e) {
    std::vector<int> out;
    std::set<int> seen;
    std::vector<int> todo{e};
    while (!todo.empty()) {
        int x = todo.back();
        todo.pop_back();
        if (!seen.insert(x).second) continue;
        out.push_back(x);
        const Link& l = n.link(n.edge(x).src);
        if (l.kind == LinkKind::Ax) continue;
        for (int p : l.prem) todo.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

AxAction axAction(const Net& n, int cut) {
    AxAction r;
    if (n.mode != Mode::Typed0) return r;
    auto cls = classifyCut(n, cut);
    if (cls != CutClass::Ax0Negative && cls != CutClass::Ax0Positive) return r;
    AxCut ac = axCut(n, cut);
    const F& lp = n.edge(ac.ePrime).label;
    const F& l2 = n.edge(ac.e2).label;
    r.tree = treeOf(n, ac.e);
    if (cls == CutClass::Ax0Negative)
        r.shift = long(*axiomShift(lp, l2));
    else
        r.shift = -long(*axiomShift(l2, lp));
    return r;
}

namespace {

void axStep(Net& n, int c, StepInfo& info) {
    AxCut ac = axCut(n, c);
    if (n.edge(ac.e).src == ac.a) throw StepError("cut between the two conclusions of one axiom");
    if (n.mode == Mode::Typed0 && (info.cls == CutClass::Ax0Negative || info.cls == CutClass::Ax0Positive)) {
        const F& lp = n.edge(ac.ePrime).label;
        const F& l2 = n.edge(ac.e2).label;
        auto tree = treeOf(n, ac.e);
        if (info.cls == CutClass::Ax0Negative) {
            std::uint64_t p = *axiomShift(lp, l2);
            for (int x : tree) n.edge(x).label = unshift(p, n.edge(x).label);
        } else {
            std::uint64_t p = *axiomShift(l2, lp);
            for (int x : tree) n.edge(x).label = shift(p, n.edge(x).label);
        }
    }
    int t = n.edge(ac.e2).tgt;
    n.removeLink(c);
    n.removeLink(ac.a);
    n.removeEdge(ac.ePrime);
    if (t >= 0) {
        n.replacePremise(t, ac.e2, ac.e);
    } else {
        n.edge(ac.e).tgt = -1;
    }
    n.removeEdge(ac.e2);
}

void multStep(Net& n, int c, StepInfo& info) {
    const Link& cl = n.link(c);
    int s0 = n.edge(cl.prem[0]).src, s1 = n.edge(cl.prem[1]).src;
    int t = n.link(s0).kind == LinkKind::Tensor ? s0 : s1;
    int p = t == s0 ? s1 : s0;
    int box = cl.box;
    std::vector<int> tp = n.link(t).prem, pp = n.link(p).prem;
    eraseLinks(n, {c, t, p});
    info.newCuts.push_back(addCut(n, tp[0], pp[1], box));
    info.newCuts.push_back(addCut(n, tp[1], pp[0], box));
}

void quantStep(Net& n, int c, StepInfo& info) {
    const Link& cl = n.link(c);
    int s0 = n.edge(cl.prem[0]).src, s1 = n.edge(cl.prem[1]).src;
    int fa = n.link(s0).kind == LinkKind::Forall ? s0 : s1;
    int ex = fa == s0 ? s1 : s0;
    int box = cl.box;
    std::string z = n.link(fa).eigen;
    F b = n.link(ex).assoc;
    int pa = n.link(fa).prem[0], pe = n.link(ex).prem[0];
    eraseLinks(n, {c, fa, ex});
    info.newCuts.push_back(addCut(n, pa, pe, box));
    if (n.mode != Mode::Untyped && b) n.relabelAll([&](const F& f) { return cansubst(f, b, z); });
}

void pargStep(Net& n, int c, StepInfo& info) {
    const Link& cl = n.link(c);
    int s0 = n.edge(cl.prem[0]).src, s1 = n.edge(cl.prem[1]).src;
    int box = cl.box;
    int p0 = n.link(s0).prem[0], p1 = n.link(s1).prem[0];
    eraseLinks(n, {c, s0, s1});
    info.newCuts.push_back(addCut(n, p0, p1, box));
}

void expStep(Net& n, int c, StepInfo& info) {
    const Link& cl = n.link(c);
    int s0 = n.edge(cl.prem[0]).src, s1 = n.edge(cl.prem[1]).src;
    int B = n.link(s0).kind == LinkKind::Oc ? s0 : s1;
    int w = B == s0 ? s1 : s0;

    std::vector<int> flats = n.flatsAbove(w);
    std::vector<std::vector<int>> branchPax;
    for (int f : flats) {
        if (n.inside(f, B)) throw StepError("flat above the why-not lies inside the cut box");
        branchPax.push_back(n.paxCrossings(f));
    }
    std::vector<int> auxs = n.aux.at(B);
    struct Chain {
        std::vector<int> qs;
        int last;
        int u;
    };
    std::vector<Chain> chains;
    for (int a : auxs) {
        Chain ch;
        int cur = n.link(a).concl[0];
        int guard = 0;
        while (n.edge(cur).tgt >= 0 && n.link(n.edge(cur).tgt).kind == LinkKind::Pax) {
            int q = n.edge(cur).tgt;
            ch.qs.push_back(q);
            cur = n.link(q).concl[0];
            if (++guard > 100000) throw StepError("pax chain cycle");
        }
        int u = n.edge(cur).tgt;
        if (u < 0 || n.link(u).kind != LinkKind::Wn) throw StepError("auxiliary branch does not end in a why-not");
        if (u == w) throw StepError("auxiliary branch returns to the cut why-not");
        ch.last = cur;
        ch.u = u;
        chains.push_back(ch);
    }
    std::vector<int> content = n.content(B);
    std::set<int> contentSet(content.begin(), content.end());
    int ocPrem = n.link(B).prem[0];
    std::vector<int> auxPrem;
    for (int a : auxs) auxPrem.push_back(n.link(a).prem[0]);

    std::vector<int> contentEdges;
    for (int l : content)
        for (int e : n.link(l).concl) contentEdges.push_back(e);
    std::set<std::string> eigens;
    for (int l : content)
        if (n.link(l).kind == LinkKind::Forall) eigens.insert(n.link(l).eigen);

    for (std::size_t j = 0; j < flats.size(); ++j) {
        int f = flats[j];
        int scope = n.link(f).box;
        std::map<std::string, std::string> ren;
        if (j > 0 && n.mode != Mode::Untyped)
            for (auto& z : eigens) ren[z] = n.freshName(z.substr(0, z.find('#')));
        auto relabel = [&](F lab) {
            if (!lab) return lab;
            for (auto& [from, to] : ren) lab = renameFree(lab, from, to);
            return lab;
        };
        std::map<int, int> em, lm;
        for (int e : contentEdges) em[e] = n.newEdge(relabel(n.edge(e).label));
        for (int l : content) lm[l] = n.nextLink++;
        for (int l : content) {
            Link nl = n.link(l);
            nl.id = lm[l];
            for (int& e : nl.prem) e = em.at(e);
            for (int& e : nl.concl) e = em.at(e);
            nl.box = nl.box == B ? scope : lm.at(nl.box);
            if (nl.owner >= 0) nl.owner = lm.at(nl.owner);
            if (nl.kind == LinkKind::Forall && ren.count(nl.eigen)) nl.eigen = ren[nl.eigen];
            nl.assoc = relabel(nl.assoc);
            for (int e : nl.prem) n.edge(e).tgt = nl.id;
            for (int e : nl.concl) n.edge(e).src = nl.id;
            n.links[nl.id] = nl;
        }
        for (int l : content) {
            const Link& ol = n.link(l);
            if (ol.kind == LinkKind::Oc) {
                auto& v = n.aux[lm[l]];
                for (int p : n.aux.at(l)) v.push_back(lm.at(p));
            }
        }
        int fp = n.link(f).prem[0];
        n.edge(fp).tgt = -1;
        n.link(f).prem.clear();
        info.newCuts.push_back(addCut(n, em.at(ocPrem), fp, scope));
        for (std::size_t t = 0; t < auxs.size(); ++t) {
            int cur = em.at(auxPrem[t]);
            auto addPax = [&](int model) {
                const Link& m = n.link(model);
                int ne = n.newEdge(n.edge(cur).label);
                int id = n.newLink(LinkKind::Pax, {cur}, {ne}, m.box, freshOrigin(n));
                n.link(id).owner = m.owner;
                n.aux[m.owner].push_back(id);
                cur = ne;
            };
            for (int pxl : branchPax[j]) addPax(pxl);
            for (int q : chains[t].qs) addPax(q);
            n.link(chains[t].u).prem.push_back(cur);
            n.edge(cur).tgt = chains[t].u;
        }
        ++info.copies;
    }

    std::set<int> dead(content.begin(), content.end());
    dead.insert(c);
    dead.insert(B);
    dead.insert(w);
    for (int a : auxs) dead.insert(a);
    for (auto& ch : chains) {
        for (int q : ch.qs) dead.insert(q);
        auto& up = n.link(ch.u).prem;
        up.erase(std::remove(up.begin(), up.end(), ch.last), up.end());
    }
    for (std::size_t j = 0; j < flats.size(); ++j) {
        dead.insert(flats[j]);
        for (int p : branchPax[j]) dead.insert(p);
    }
    eraseLinks(n, dead);
}

}

ExpClasses expStepClasses(const Net& n, int c) {
    ExpClasses r;
    const Link& cl = n.link(c);
    int s0 = n.edge(cl.prem[0]).src, s1 = n.edge(cl.prem[1]).src;
    int B = n.link(s0).kind == LinkKind::Oc ? s0 : s1;
    int w = B == s0 ? s1 : s0;
    for (int l : n.content(B))
        if (n.link(l).kind != LinkKind::Pax) r.class1.insert(l);
    for (int a : n.aux.at(B)) {
        int cur = n.link(a).concl[0];
        while (n.edge(cur).tgt >= 0 && n.link(n.edge(cur).tgt).kind == LinkKind::Pax) cur = n.link(n.edge(cur).tgt).concl[0];
        if (n.edge(cur).tgt >= 0) r.class1.insert(n.edge(cur).tgt);
    }
    r.class2 = {c, B, w};
    for (int f : n.flatsAbove(w)) r.class2.insert(f);
    return r;
}

StepInfo step(Net& n, int c) {
    StepInfo info;
    info.cut = c;
    info.cls = classifyCut(n, c);
    switch (info.cls) {
    case CutClass::Axiom:
    case CutClass::Ax0Negative:
    case CutClass::Ax0Positive: axStep(n, c, info); break;
    case CutClass::Multiplicative: multStep(n, c, info); break;
    case CutClass::Quantifier:
        if (n.mode == Mode::Untyped) pargStep(n, c, info);
        else quantStep(n, c, info);
        break;
    case CutClass::Paragraph: pargStep(n, c, info); break;
    case CutClass::ExpWeakening:
    case CutClass::ExpContractive: expStep(n, c, info); break;
    case CutClass::Irreducible: throw StepError("cut " + std::to_string(c) + " is irreducible");
    }
    return info;
}

}
