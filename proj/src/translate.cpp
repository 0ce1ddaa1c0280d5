#include "llev/translate.hpp"

#include <algorithm>
#include <functional>
#include <vector>

#include "llev/systems.hpp"

namespace llev {

namespace {

// paragraph links on the downward path from e
unsigned pargsBelow(const Net& n, int e) {
    unsigned c = 0;
    for (;;) {
        int t = n.edge(e).tgt;
        if (t < 0) return c;
        const Link& l = n.link(t);
        if (l.kind == LinkKind::Cut) return c;
        if (l.kind == LinkKind::Parg) ++c;
        e = l.concl[0];
    }
}

void dropParagraphs(Net& n) {
    std::vector<int> ps;
    for (auto& [id, l] : n.links)
        if (l.kind == LinkKind::Parg) ps.push_back(id);
    for (int id : ps) {
        int p = n.link(id).prem[0], c = n.link(id).concl[0];
        int t = n.edge(c).tgt;
        n.removeLink(id);
        if (t >= 0) n.replacePremise(t, c, p);
        else n.edge(p).tgt = -1;
        n.removeEdge(c);
    }
}

struct Pair {
    int neg, pos;
};

// Eta-expanded axiom on shift(k, A^) / A, bottom-up. Mode Typed0 shifts the
// negative atoms by k; otherwise k paragraph links are put under them. depth
// bounds the number of expanded layers (-1: down to atoms).
class EtaBuilder {
public:
    EtaBuilder(Net& n, int box) : n_(n), box_(box) {}

    Pair build(const F& a, std::uint64_t k, int depth) {
        std::vector<int> made;
        return go(a, k, depth, made);
    }

private:
    Net& n_;
    int box_;

    int link(LinkKind kind, std::vector<int> prem, std::vector<int> concl, std::vector<int>& made) {
        int l = n_.newLink(kind, std::move(prem), std::move(concl), box_);
        made.push_back(l);
        return l;
    }

    int unary(LinkKind kind, int e, const F& label, std::vector<int>& made) {
        int c = n_.newEdge(label);
        link(kind, {e}, {c}, made);
        return c;
    }

    std::string fresh(const std::string& hint) { return n_.freshName(hint.empty() ? "Z" : hint.substr(0, hint.find('#'))); }

    Pair go(const F& a, std::uint64_t k, int depth, std::vector<int>& made) {
        bool typed0 = n_.mode == Mode::Typed0;
        if (isAtomic(a) || depth == 0) {
            F neg = typed0 ? shift(k, dual(a)) : dual(a);
            int x = n_.newEdge(neg), y = n_.newEdge(a);
            link(LinkKind::Ax, {}, {x, y}, made);
            if (!typed0)
                for (std::uint64_t i = 0; i < k; ++i) x = unary(LinkKind::Parg, x, parg(n_.edge(x).label), made);
            return {x, y};
        }
        int d = depth < 0 ? -1 : depth - 1;
        auto L = [&](int e) { return n_.edge(e).label; };
        switch (a->c) {
        case Conn::Tensor:
        case Conn::Par: {
            Pair l = go(a->l, k, d, made), r = go(a->r, k, d, made);
            bool t = a->c == Conn::Tensor;
            int pos = n_.newEdge(t ? tensor(L(l.pos), L(r.pos)) : par(L(l.pos), L(r.pos)));
            link(t ? LinkKind::Tensor : LinkKind::Par, {l.pos, r.pos}, {pos}, made);
            int neg = n_.newEdge(t ? par(L(r.neg), L(l.neg)) : tensor(L(r.neg), L(l.neg)));
            link(t ? LinkKind::Par : LinkKind::Tensor, {r.neg, l.neg}, {neg}, made);
            return {neg, pos};
        }
        case Conn::Oc:
        case Conn::Wn: {
            std::vector<int> inner;
            Pair b = go(a->l, k, d, inner);
            bool ocPos = a->c == Conn::Oc;
            int ocPrem = ocPos ? b.pos : b.neg, flatPrem = ocPos ? b.neg : b.pos;
            int oe = n_.newEdge(oc(L(ocPrem)));
            int o = link(LinkKind::Oc, {ocPrem}, {oe}, made);
            int fe = unary(LinkKind::Flat, flatPrem, L(flatPrem), inner);
            for (int id : inner)
                if (n_.link(id).box == box_) n_.link(id).box = o;
            made.insert(made.end(), inner.begin(), inner.end());
            int pe = n_.newEdge(L(fe));
            int px = link(LinkKind::Pax, {fe}, {pe}, made);
            n_.link(px).owner = o;
            n_.aux[o].push_back(px);
            int we = n_.newEdge(wn(L(pe)));
            link(LinkKind::Wn, {pe}, {we}, made);
            return ocPos ? Pair{we, oe} : Pair{oe, we};
        }
        case Conn::Parg: {
            Pair b = go(a->l, k, d, made);
            return {unary(LinkKind::Parg, b.neg, parg(L(b.neg)), made), unary(LinkKind::Parg, b.pos, parg(L(b.pos)), made)};
        }
        case Conn::Forall:
        case Conn::Exists: {
            std::string z = fresh(a->name);
            Pair b = go(instantiate(a->l, atom(z)), k, d, made);
            bool fa = a->c == Conn::Forall;
            int univ = fa ? b.pos : b.neg, ex = fa ? b.neg : b.pos;
            int ue = n_.newEdge(forall(z, L(univ)));
            int ul = link(LinkKind::Forall, {univ}, {ue}, made);
            n_.link(ul).eigen = z;
            int ee = n_.newEdge(exists(z, L(ex)));
            int el = link(LinkKind::Exists, {ex}, {ee}, made);
            n_.link(el).assoc = atom(z);
            return fa ? Pair{ee, ue} : Pair{ue, ee};
        }
        default: break;
        }
        throw TranslateError("cannot eta-expand " + show(a));
    }
};

// the conclusion produced for e is spliced onto the existing edge old
void splice(Net& n, int fresh, int old) {
    int s = n.edge(fresh).src;
    Link& l = n.link(s);
    for (int& c : l.concl)
        if (c == fresh) c = old;
    n.edge(old).src = s;
    n.removeEdge(fresh);
}

// heavy/light orientation of an axiom: (neg edge, pos edge, shift)
struct AxShape {
    int neg, pos;
    std::uint64_t k;
};

AxShape axShape(const Net& n, int ax) {
    const Link& l = n.link(ax);
    int c0 = l.concl[0], c1 = l.concl[1];
    if (n.mode != Mode::Typed0) return {c0, c1, 0};
    if (auto k = axiomShift(n.edge(c0).label, n.edge(c1).label)) return {c0, c1, *k};
    if (auto k = axiomShift(n.edge(c1).label, n.edge(c0).label)) return {c1, c0, *k};
    throw TranslateError("axiom " + std::to_string(ax) + " is ill-typed");
}

void replaceAxiom(Net& n, int ax, int depth, const F& posLabel, std::uint64_t k, int neg, int pos) {
    int box = n.link(ax).box;
    n.removeLink(ax);
    EtaBuilder eb(n, box);
    Pair p = eb.build(posLabel, k, depth);
    splice(n, p.neg, neg);
    splice(n, p.pos, pos);
}

}

Net trzero(const Net& in, TranslationReport* rep) {
    if (in.mode != Mode::Typed) throw TranslateError("trzero expects a typed net");
    if (!classify(in).isML4) throw TranslateError("trzero: input is not an mL4 proof net");
    Net n = in;
    for (auto& [id, e] : n.edges) e.label = shift(pargsBelow(in, id), toForm0(e.label));
    for (auto& [id, l] : n.links)
        if (l.kind == LinkKind::Exists && l.assoc) l.assoc = toForm0(l.assoc);
    dropParagraphs(n);
    n.mode = Mode::Typed0;
    if (rep) {
        rep->name = "trzero";
        for (auto& [id, l] : n.links)
            if (l.kind == LinkKind::Ax)
                rep->axioms[id] = {pargsBelow(in, l.concl[0]), pargsBelow(in, l.concl[1])};
    }
    return n;
}

Net buildRAp(const F& a, unsigned p) {
    Net n;
    n.mode = Mode::Typed;
    EtaBuilder eb(n, -1);
    eb.build(a, p, -1);
    return n;
}

Net trone(const Net& in, TranslationReport* rep) {
    if (in.mode != Mode::Typed0) throw TranslateError("trone expects a typed0 net");
    if (!classify(in).isML40) throw TranslateError("trone: input is not an mL4_0 proof net");
    Net n = in;
    std::vector<std::pair<int, AxShape>> axs;
    for (auto& [id, l] : n.links)
        if (l.kind == LinkKind::Ax) axs.push_back({id, axShape(in, id)});
    for (auto& [id, e] : n.edges) e.label = toForm(e.label);
    for (auto& [id, l] : n.links)
        if (l.kind == LinkKind::Exists && l.assoc) l.assoc = toForm(l.assoc);
    n.mode = Mode::Typed;
    for (auto& [id, s] : axs) {
        replaceAxiom(n, id, -1, n.edge(s.pos).label, s.k, s.neg, s.pos);
        if (rep) rep->axioms[id] = {s.k, 0};
    }
    if (rep) rep->name = "trone";
    auto v = n.validate();
    if (!v.empty()) throw TranslateError("trone: output is ill-typed (" + v.front().what + ")");
    return n;
}

Net erase(const Net& in) {
    Net n = in;
    dropParagraphs(n);
    if (n.mode == Mode::Untyped) return n;
    for (auto& [id, e] : n.edges)
        if (e.label) e.label = eraseParagraphs(e.label);
    for (auto& [id, l] : n.links)
        if (l.assoc) l.assoc = eraseParagraphs(l.assoc);
    return n;
}

Net forget(const Net& in) {
    Net n = in;
    n.mode = Mode::Untyped;
    for (auto& [id, e] : n.edges) e.label = nullptr;
    for (auto& [id, l] : n.links) {
        l.assoc = nullptr;
        l.eigen.clear();
    }
    return n;
}

Net etaExpand(const Net& in, int axiom) {
    if (in.mode == Mode::Untyped) throw TranslateError("eta-expansion needs a typed net");
    const Link& l = in.link(axiom);
    if (l.kind != LinkKind::Ax) throw TranslateError("link " + std::to_string(axiom) + " is not an axiom");
    AxShape s = axShape(in, axiom);
    F a = in.edge(s.pos).label;
    if (isAtomic(a)) throw TranslateError("axiom " + std::to_string(axiom) + " is atomic");
    Net n = in;
    replaceAxiom(n, axiom, 1, a, s.k, s.neg, s.pos);
    return n;
}

Net etaNormalForm(const Net& in) {
    if (in.mode == Mode::Untyped) throw TranslateError("eta-expansion needs a typed net");
    Net n = in;
    std::vector<int> axs;
    for (auto& [id, l] : n.links)
        if (l.kind == LinkKind::Ax) axs.push_back(id);
    for (int id : axs) {
        AxShape s = axShape(n, id);
        F a = n.edge(s.pos).label;
        if (!isAtomic(a)) replaceAxiom(n, id, -1, a, s.k, s.neg, s.pos);
    }
    return n;
}

// ---------------------------------------------------------------- isomorphism

namespace {

struct Port {
    int link = -1;  // -1: net conclusion
    bool prem = false;
    int pos = -1;   // -1 inside an unordered group
    bool operator==(const Port& o) const = default;
};

struct G {
    const Net* n;
    std::vector<int> ids;
    std::map<int, int> li, ei;
    std::vector<int> eids;
    std::vector<Port> src, tgt;  // per dense edge

    explicit G(const Net& net) : n(&net) {
        for (auto& [id, l] : net.links) {
            li[id] = static_cast<int>(ids.size());
            ids.push_back(id);
        }
        for (auto& [id, e] : net.edges) {
            ei[id] = static_cast<int>(eids.size());
            eids.push_back(id);
        }
        src.assign(eids.size(), {});
        tgt.assign(eids.size(), {});
        for (auto& [id, l] : net.links) {
            bool uc = l.kind == LinkKind::Ax, up = l.kind == LinkKind::Cut || l.kind == LinkKind::Wn;
            for (std::size_t i = 0; i < l.concl.size(); ++i)
                src[ei.at(l.concl[i])] = {li.at(id), false, uc ? -1 : static_cast<int>(i)};
            for (std::size_t i = 0; i < l.prem.size(); ++i)
                tgt[ei.at(l.prem[i])] = {li.at(id), true, up ? -1 : static_cast<int>(i)};
        }
    }
    const Link& L(int d) const { return n->link(ids[d]); }
    std::vector<int> ports(int d, bool prem) const {
        std::vector<int> r;
        for (int e : prem ? L(d).prem : L(d).concl) r.push_back(ei.at(e));
        return r;
    }
    // the endpoint of e other than the port of link d on the given side
    const Port& other(int e, bool premSide) const { return premSide ? src[e] : tgt[e]; }
};

class Iso {
public:
    Iso(const Net& a, const Net& b) : A(a), B(b) {}

    bool run() {
        if (A.ids.size() != B.ids.size() || A.eids.size() != B.eids.size()) return false;
        std::map<LinkKind, int> ka, kb;
        for (int d = 0; d < static_cast<int>(A.ids.size()); ++d) ka[A.L(d).kind]++;
        for (int d = 0; d < static_cast<int>(B.ids.size()); ++d) kb[B.L(d).kind]++;
        if (ka != kb) return false;
        St s;
        s.lm.assign(A.ids.size(), -1);
        s.lr.assign(B.ids.size(), -1);
        s.em.assign(A.eids.size(), -1);
        s.er.assign(B.eids.size(), -1);
        return search(s);
    }

private:
    G A, B;

    struct St {
        std::vector<int> lm, lr, em, er;
    };

    bool sameShape(int x, int y) const {
        const Link& a = A.L(x);
        const Link& b = B.L(y);
        return a.kind == b.kind && a.prem.size() == b.prem.size() && a.concl.size() == b.concl.size() &&
               (a.kind != LinkKind::Oc || A.n->aux.at(a.id).size() == B.n->aux.at(b.id).size());
    }

    // e (in A) may be mapped to f (in B), given what is mapped so far
    bool edgeOk(const St& s, int e, int f) const {
        if (s.er[f] >= 0) return s.er[f] == e;
        auto endOk = [&](const Port& p, const Port& q) {
            if ((p.link < 0) != (q.link < 0)) return false;
            if (p.link < 0) return true;
            if (p.prem != q.prem || p.pos != q.pos) return false;
            if (s.lm[p.link] >= 0) return s.lm[p.link] == q.link;
            if (s.lr[q.link] >= 0) return false;
            return sameShape(p.link, q.link);
        };
        return endOk(A.src[e], B.src[f]) && endOk(A.tgt[e], B.tgt[f]);
    }

    bool boxesOk(const St& s) const {
        for (int d = 0; d < static_cast<int>(A.ids.size()); ++d) {
            const Link& a = A.L(d);
            const Link& b = B.L(s.lm[d]);
            auto mapId = [&](int id) { return id < 0 ? -1 : B.ids[s.lm[A.li.at(id)]]; };
            if (mapId(a.box) != b.box) return false;
            if (a.kind == LinkKind::Pax && mapId(a.owner) != b.owner) return false;
        }
        return true;
    }

    // matches link x to y and then continues the search
    bool assign(St s, int x, int y) {
        if (!sameShape(x, y)) return false;
        s.lm[x] = y;
        s.lr[y] = x;
        std::vector<std::pair<int, std::vector<int>>> free;  // unordered edges needing a choice
        for (bool prem : {true, false}) {
            auto pa = A.ports(x, prem), pb = B.ports(y, prem);
            bool unordered = prem ? (A.L(x).kind == LinkKind::Cut || A.L(x).kind == LinkKind::Wn) : A.L(x).kind == LinkKind::Ax;
            if (!unordered) {
                for (std::size_t i = 0; i < pa.size(); ++i) {
                    int e = pa[i], f = pb[i];
                    if (s.em[e] >= 0) {
                        if (s.em[e] != f) return false;
                        continue;
                    }
                    if (!edgeOk(s, e, f)) return false;
                    s.em[e] = f;
                    s.er[f] = e;
                }
                continue;
            }
            std::vector<int> rest;
            for (int f : pb)
                if (s.er[f] < 0) rest.push_back(f);
            for (int e : pa) {
                if (s.em[e] >= 0) {
                    if (std::find(pb.begin(), pb.end(), s.em[e]) == pb.end()) return false;
                    continue;
                }
                const Port& o = A.other(e, prem);
                if (o.link >= 0 && o.pos >= 0) continue;  // fixed when the other end is matched
                free.push_back({e, rest});
            }
        }
        return choose(s, free, 0);
    }

    bool choose(St& s, const std::vector<std::pair<int, std::vector<int>>>& free, std::size_t k) {
        if (k == free.size()) return search(s);
        int e = free[k].first;
        for (int f : free[k].second) {
            if (s.er[f] >= 0 || !edgeOk(s, e, f)) continue;
            St t = s;
            t.em[e] = f;
            t.er[f] = e;
            if (choose(t, free, k + 1)) return true;
        }
        return false;
    }

    bool search(St& s) {
        int N = static_cast<int>(A.ids.size());
        // forced: an unmatched link at the end of a mapped edge
        for (int e = 0; e < static_cast<int>(A.eids.size()); ++e) {
            if (s.em[e] < 0) continue;
            int f = s.em[e];
            for (bool side : {true, false}) {
                const Port& p = side ? A.src[e] : A.tgt[e];
                const Port& q = side ? B.src[f] : B.tgt[f];
                if (p.link >= 0 && s.lm[p.link] < 0) {
                    if (q.link < 0 || s.lr[q.link] >= 0) return false;
                    return assign(s, p.link, q.link);
                }
            }
        }
        // next to a matched link through a still unmapped edge
        for (int e = 0; e < static_cast<int>(A.eids.size()); ++e) {
            if (s.em[e] >= 0) continue;
            const Port& p = A.src[e];
            const Port& q = A.tgt[e];
            int known = -1, unknown = -1;
            bool knownPrem = false;
            if (p.link >= 0 && s.lm[p.link] >= 0 && q.link >= 0 && s.lm[q.link] < 0) known = p.link, unknown = q.link, knownPrem = false;
            if (q.link >= 0 && s.lm[q.link] >= 0 && p.link >= 0 && s.lm[p.link] < 0) known = q.link, unknown = p.link, knownPrem = true;
            if (known < 0) continue;
            int y = s.lm[known];
            for (int f : B.ports(y, knownPrem)) {
                if (s.er[f] >= 0) continue;
                const Port& o = B.other(f, knownPrem);
                if (o.link < 0 || s.lr[o.link] >= 0) continue;
                if (assign(s, unknown, o.link)) return true;
            }
            return false;
        }
        int x = -1;
        for (int d = 0; d < N; ++d)
            if (s.lm[d] < 0) {
                x = d;
                break;
            }
        if (x < 0) {
            for (int e = 0; e < static_cast<int>(A.eids.size()); ++e)
                if (s.em[e] < 0) return false;
            return boxesOk(s);
        }
        for (int y = 0; y < static_cast<int>(B.ids.size()); ++y)
            if (s.lr[y] < 0 && assign(s, x, y)) return true;
        return false;
    }
};

}

bool isomorphic(const Net& a, const Net& b) { return Iso(a, b).run(); }

}
