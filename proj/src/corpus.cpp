#include "llev/corpus.hpp"

#include <stdexcept>

namespace llev {

const char* flavorName(StringFlavor f) {
    switch (f) {
    case StringFlavor::SE: return "SE";
    case StringFlavor::SP: return "SP";
    case StringFlavor::SPprime: return "SP'";
    case StringFlavor::S0: return "S0";
    }
    return "?";
}

StringFlavor flavorFromName(const std::string& s) {
    if (s == "SE" || s == "se") return StringFlavor::SE;
    if (s == "SP" || s == "sp") return StringFlavor::SP;
    if (s == "SP'" || s == "sp'" || s == "spp" || s == "SPprime") return StringFlavor::SPprime;
    if (s == "S0" || s == "s0") return StringFlavor::S0;
    throw std::invalid_argument("unknown string flavor " + s);
}

F stringType(StringFlavor f) {
    switch (f) {
    case StringFlavor::SE: return types::stringSE();
    case StringFlavor::SP: return types::stringSP();
    case StringFlavor::SPprime: return types::stringSPprime();
    case StringFlavor::S0: return types::stringS0();
    }
    return nullptr;
}

namespace {

void checkBits(const std::string& bits) {
    for (char c : bits)
        if (c != '0' && c != '1') throw std::invalid_argument("word is not binary: " + bits);
}

// Shared skeleton of strings and numerals: a chain of successor applications
// ending in the body par, bucketed why-nots, pars and the quantifier.
Net buildIterator(const std::vector<int>& buckets, int nbuckets, StringFlavor f) {
    Net n;
    bool w0 = f == StringFlavor::S0;
    n.mode = w0 ? Mode::Typed0 : Mode::Typed;
    const std::string x = "X";
    auto X = [&](std::uint64_t w) { return atom(x, w); };
    auto nX = [&](std::uint64_t w) { return natom(x, w); };
    std::vector<int> inner;
    std::vector<std::vector<int>> flats(static_cast<std::size_t>(nbuckets));
    std::size_t len = buckets.size();
    // innermost axiom: z and the first carrier
    int z = n.newEdge(w0 ? nX(1) : nX(0));
    int cur = n.newEdge(w0 && len == 0 ? X(1) : X(0));
    inner.push_back(n.newLink(LinkKind::Ax, {}, {z, cur}));
    for (std::size_t k = len; k-- > 0;) {
        int a = n.newEdge(nX(0));
        int out = n.newEdge(w0 && k == 0 ? X(1) : X(0));
        inner.push_back(n.newLink(LinkKind::Ax, {}, {a, out}));
        F tl = tensor(nX(0), X(0));
        int t = n.newEdge(tl);
        inner.push_back(n.newLink(LinkKind::Tensor, {a, cur}, {t}));
        int fe = n.newEdge(tl);
        int fl = n.newLink(LinkKind::Flat, {t}, {fe});
        inner.push_back(fl);
        flats[static_cast<std::size_t>(buckets[k])].push_back(fe);
        cur = out;
    }
    int body;
    if (f == StringFlavor::SPprime) {
        int pz = n.newEdge(parg(n.edge(z).label));
        n.newLink(LinkKind::Parg, {z}, {pz});
        int pc = n.newEdge(parg(n.edge(cur).label));
        n.newLink(LinkKind::Parg, {cur}, {pc});
        body = n.newEdge(par(n.edge(pz).label, n.edge(pc).label));
        n.newLink(LinkKind::Par, {pz, pc}, {body});
    } else {
        int pe = n.newEdge(par(n.edge(z).label, n.edge(cur).label));
        int pl = n.newLink(LinkKind::Par, {z, cur}, {pe});
        inner.push_back(pl);
        if (f == StringFlavor::SE) {
            body = n.newEdge(oc(n.edge(pe).label));
            int o = n.newLink(LinkKind::Oc, {pe}, {body});
            for (int l : inner) n.link(l).box = o;
            for (auto& fs : flats)
                for (int& fe : fs) {
                    int pxe = n.newEdge(n.edge(fe).label);
                    int px = n.newLink(LinkKind::Pax, {fe}, {pxe});
                    n.link(px).owner = o;
                    n.aux[o].push_back(px);
                    fe = pxe;
                }
        } else if (f == StringFlavor::SP) {
            body = n.newEdge(parg(n.edge(pe).label));
            n.newLink(LinkKind::Parg, {pe}, {body});
        } else {
            body = pe;
        }
    }
    F ql = wn(tensor(nX(0), X(0)));
    std::vector<int> ws;
    for (auto& fs : flats) {
        int we = n.newEdge(ql);
        n.newLink(LinkKind::Wn, fs, {we});
        ws.push_back(we);
    }
    int acc = body;
    for (std::size_t k = ws.size(); k-- > 0;) {
        int pe = n.newEdge(par(n.edge(ws[k]).label, n.edge(acc).label));
        n.newLink(LinkKind::Par, {ws[k], acc}, {pe});
        acc = pe;
    }
    int fe = n.newEdge(forall(x, n.edge(acc).label));
    int fl = n.newLink(LinkKind::Forall, {acc}, {fe});
    n.link(fl).eigen = x;
    return n;
}

int src(const Net& n, int e) { return n.edge(e).src; }

int stripUp(const Net& n, int e) {
    for (;;) {
        const Link& l = n.link(src(n, e));
        if (l.kind == LinkKind::Parg || l.kind == LinkKind::Oc) {
            e = l.prem[0];
            continue;
        }
        return e;
    }
}

struct Chain {
    bool ok = false;
    std::vector<int> whynots;  // one per application, outermost first
    bool etaShort = false;
};

Chain readChain(const Net& n, std::size_t nbuckets, std::vector<int>* wlinks) {
    Chain c;
    auto cs = n.conclusions();
    if (cs.size() != 1) return c;
    int e = stripUp(n, cs[0]);
    const Link& q = n.link(src(n, e));
    if (q.kind != LinkKind::Forall) return c;
    e = q.prem[0];
    std::vector<int> ws;
    for (std::size_t k = 0; k < nbuckets; ++k) {
        const Link& p = n.link(src(n, e));
        if (p.kind != LinkKind::Par) return c;
        ws.push_back(p.prem[0]);
        e = p.prem[1];
    }
    *wlinks = {};
    for (int w : ws) wlinks->push_back(src(n, w));
    int be = stripUp(n, e);
    const Link& bl = n.link(src(n, be));
    if (bl.kind == LinkKind::Ax) {
        // eta-short identity on the body: only the numeral one
        if (nbuckets == 1 && src(n, ws[0]) == bl.id) {
            c.ok = true;
            c.etaShort = true;
        }
        return c;
    }
    if (bl.kind != LinkKind::Par) return c;
    int z = stripUp(n, bl.prem[0]);
    int out = stripUp(n, bl.prem[1]);
    for (std::size_t guard = 0; guard <= n.links.size(); ++guard) {
        const Link& a = n.link(src(n, out));
        if (a.kind != LinkKind::Ax) return c;
        int other = a.concl[0] == out ? a.concl[1] : a.concl[0];
        if (other == z) {
            c.ok = true;
            return c;
        }
        int t = n.edge(other).tgt;
        if (t < 0) return c;
        const Link& tl = n.link(t);
        if (tl.kind != LinkKind::Tensor || tl.prem[0] != other) return c;
        int d = tl.concl[0];
        int fl = n.edge(d).tgt;
        if (fl < 0 || n.link(fl).kind != LinkKind::Flat) return c;
        int w = n.branchWhynot(fl);
        c.whynots.push_back(w);
        out = tl.prem[1];
    }
    return c;
}

}

Net buildString(const std::string& bits, StringFlavor f) {
    checkBits(bits);
    std::vector<int> b;
    for (char ch : bits) b.push_back(ch - '0');
    return buildIterator(b, 2, f);
}

std::string readString(const Net& n, StringFlavor) {
    std::vector<int> ws;
    Chain c = readChain(n, 2, &ws);
    if (!c.ok || c.etaShort) throw std::runtime_error("net is not a cut-free string");
    std::string s;
    for (int w : c.whynots) {
        if (w == ws[0]) s += '0';
        else if (w == ws[1]) s += '1';
        else throw std::runtime_error("application does not reach a successor why-not");
    }
    return s;
}

namespace {

struct RB {
    Derivation d;
    std::vector<std::string> roles;
};

long pos(const RB& r, const std::string& role) {
    for (std::size_t i = 0; i < r.roles.size(); ++i)
        if (r.roles[i] == role) return static_cast<long>(i);
    throw std::logic_error("no slot " + role);
}

RB rAx(const F& a, long i, const std::string& r1, const std::string& r2) {
    return {{"ax", {i}, {a}, "", {}}, {r1, r2}};
}

RB rUnary(RB a, const std::string& rule, const std::string& r, const std::string& nr) {
    long k = pos(a, r);
    RB o{{rule, {k}, {}, "", {std::move(a.d)}}, a.roles};
    o.roles.erase(o.roles.begin() + k);
    o.roles.push_back(nr);
    return o;
}

RB rPair(RB a, const std::string& rule, const std::string& r1, const std::string& r2, const std::string& nr) {
    long k1 = pos(a, r1), k2 = pos(a, r2);
    RB o{{rule, {k1, k2}, {}, "", {std::move(a.d)}}, a.roles};
    o.roles.erase(o.roles.begin() + std::max(k1, k2));
    o.roles.erase(o.roles.begin() + std::min(k1, k2));
    o.roles.push_back(nr);
    return o;
}

RB rTensor(RB a, const std::string& ra, RB b, const std::string& rb, const std::string& nr) {
    long ka = pos(a, ra), kb = pos(b, rb);
    RB o{{"tensor", {ka, kb}, {}, "", {std::move(a.d), std::move(b.d)}}, a.roles};
    o.roles.erase(o.roles.begin() + ka);
    for (std::size_t i = 0; i < b.roles.size(); ++i)
        if (static_cast<long>(i) != kb) o.roles.push_back(b.roles[i]);
    o.roles.push_back(nr);
    return o;
}

}

Derivation stringDerivation(const std::string& bits, StringFlavor f) {
    checkBits(bits);
    if (f == StringFlavor::S0) throw std::invalid_argument("no mL3 derivation of the weighted string type");
    F X = atom("X");
    RB p = rAx(X, 1, "z", "out");
    std::size_t len = bits.size();
    bool have[2] = {false, false};
    for (std::size_t k = len; k-- > 0;) {
        RB a = rAx(X, 1, "arg", "new");
        p = rTensor(std::move(a), "arg", std::move(p), "out", "t");
        for (auto& r : p.roles)
            if (r == "new") r = "out";
        std::string b = bits[k] == '0' ? "w0" : "w1";
        if (have[bits[k] - '0']) {
            p = rUnary(std::move(p), "der", "t", "fresh");
            p = rPair(std::move(p), "ctr", b, "fresh", b);
        } else {
            p = rUnary(std::move(p), "der", "t", b);
            have[bits[k] - '0'] = true;
        }
    }
    F q = tensor(natom("X"), X);
    for (int k = 0; k < 2; ++k)
        if (!have[k]) {
            RB o{{"weak", {0}, {q}, "", {std::move(p.d)}}, p.roles};
            o.roles.push_back(k == 0 ? "w0" : "w1");
            p = std::move(o);
        }
    if (f == StringFlavor::SPprime) {
        p = rUnary(std::move(p), "parg", "z", "z");
        p = rUnary(std::move(p), "parg", "out", "out");
        p = rPair(std::move(p), "par", "z", "out", "body");
    } else {
        p = rPair(std::move(p), "par", "z", "out", "body");
        p = rUnary(std::move(p), f == StringFlavor::SE ? "prom" : "parg", "body", "body");
    }
    p = rPair(std::move(p), "par", "w1", "body", "body");
    p = rPair(std::move(p), "par", "w0", "body", "body");
    RB o{{"forall", {pos(p, "body")}, {}, "X", {std::move(p.d)}}, {"S"}};
    return o.d;
}

Net buildChurchNat(unsigned n) { return buildIterator(std::vector<int>(n, 0), 1, StringFlavor::SE); }

long readChurchNat(const Net& n) {
    std::vector<int> ws;
    Chain c = readChain(n, 1, &ws);
    if (!c.ok) return -1;
    if (c.etaShort) return 1;
    for (int w : c.whynots)
        if (w != ws[0]) return -1;
    return static_cast<long>(c.whynots.size());
}

long countFlats(const Net& n) {
    long k = 0;
    for (auto& [id, l] : n.links)
        if (l.kind == LinkKind::Flat) ++k;
    return k;
}

Proof churchNatProof(unsigned n) {
    Proof p;
    p.net = buildChurchNat(n);
    int c = p.net.conclusions().at(0);
    p.slots = {{p.net.edge(c).label, c, {}}};
    return p;
}

namespace {

Proof etaShortOne() {
    Proof p = pAx(parseFormula("!(~X | X)"));
    p = pPar(std::move(p), 0, 1);
    return pForall(std::move(p), 0, "X");
}

Proof doubleProof() {
    F Y = atom("Y");
    Proof a1 = pAx(Y);                                 // [z, c]
    Proof p = pTensor(pAx(Y), 0, std::move(a1), 1);    // [c2, z, t]
    p = pDer(std::move(p), 2);                         // [c2, z, ?]
    p = pTensor(pAx(Y), 0, std::move(p), 0);           // [c3, z, ?, t]
    p = pDer(std::move(p), 3);
    p = pCtr(std::move(p), 2, 3);                      // [c3, z, ?S]
    p = pPar(std::move(p), 1, 0);                      // [?S, body]
    p = pProm(std::move(p), 1);                        // [?S, !body]
    Proof o = pAx(parseFormula("!(~Y | Y)"));          // [?(~Y*Y), !(~Y|Y)]
    p = pTensor(std::move(o), 0, std::move(p), 1);     // [out, ?S, t]
    p = pExists(std::move(p), 2, "X", parseFormula("?(~X * X) * !(~X | X)"), Y);
    p = pPar(std::move(p), 1, 0);
    return pForall(std::move(p), 1, "Y");              // [N^, N]
}

}

Proof expProof() {
    F N = types::church();
    Proof d = pPar(doubleProof(), 0, 1);
    d = pProm(std::move(d), 0);                        // [!(N^ | N)]
    Proof ap = pTensor(pAx(N), 0, etaShortOne(), 0);   // [N, N^ * N]
    ap = pDer(std::move(ap), 1);
    ap = pProm(std::move(ap), 0);                      // [?(N^ * N), !N]
    Proof p = pTensor(std::move(ap), 0, std::move(d), 0);
    p = pExists(std::move(p), 1, "X", parseFormula("?(~X * X) * !(~X | X)"), N);
    return pRotate(std::move(p), 0);                   // [N^, !N]
}

Net buildTheta(unsigned n) {
    if (n == 0) throw std::invalid_argument("theta needs n >= 1");
    Proof p = pCut(etaShortOne(), 0, expProof(), 0);
    for (unsigned k = 1; k < n; ++k) {
        Proof e = pDer(expProof(), 0);                 // [!N, ?N^]
        p = pCut(std::move(p), 0, std::move(e), 1);
    }
    return p.finish();
}

namespace {

F SY() { return parg(atom("Y")); }
F I() { return par(dual(SY()), SY()); }

Proof derAx(const F& a) { return pDer(pAx(a), 0); }

Proof copyB() { return pPar(pAx(SY()), 0, 1); }

// [Ya, Y^b, I^]
Proof dCore() {
    Proof pa = pParg(pAx(atom("Y")), 0);
    Proof pb = pParg(pAx(atom("Y")), 1);
    return pTensor(std::move(pa), 1, std::move(pb), 1);
}

Proof gPart() {
    Proof g = pMix(derAx(I()), derAx(I()));
    return pCtr(std::move(g), 1, 3);                   // [I, I, ?I^]
}

// [I_f3, I_g1, I_g2, !(Y | Y^)] -> !F, then cut against two derelictions
Net closeRunning(Proof m) {
    m = pPar(std::move(m), 0, 1);
    m = pPar(std::move(m), 2, 0);
    m = pPar(std::move(m), 1, 0);
    m = pLProm(std::move(m), 0);
    F f = m.slots[0].formula->l;
    Proof w = pMix(derAx(f), derAx(f));
    w = pCtr(std::move(w), 1, 3);
    return pCut(std::move(m), 0, std::move(w), 2).finish();
}

}

Net runningEx() {
    Proof pB = pLProm(pPar(pAx(SY()), 0, 1), 0);       // [!I]
    Proof p3 = derAx(I());                             // [I, ?I^]
    Proof pC = pLProm(pAx(I()), 1);                    // [?I^, !I]
    Proof cg = pCut(std::move(pC), 1, gPart(), 2);     // [?I^, I, I]
    Proof pd = pPar(dCore(), 0, 1);                    // [I^, Y | Y^]
    pd = pLProm(std::move(pd), 1);                     // [?I^, !(Y | Y^)]
    Proof m = pMix(pMix(std::move(p3), std::move(cg)), std::move(pd));
    m = pCtr(std::move(m), 1, 2);
    m = pCtr(std::move(m), 3, 5);
    m = pCut(std::move(m), 4, std::move(pB), 0);
    return closeRunning(std::move(m));
}

Net runningExRed() {
    Proof p3 = pCut(pAx(I()), 0, copyB(), 0);          // [I]
    Proof pC = pLProm(pCut(pAx(I()), 0, copyB(), 0), 0);
    Proof cg = pCut(std::move(pC), 0, gPart(), 2);     // [I, I]
    Proof pd = pCut(dCore(), 2, copyB(), 0);           // [Ya, Y^b]
    pd = pPar(std::move(pd), 0, 1);
    pd = pLProm(std::move(pd), 0);                     // [!(Y | Y^)]
    Proof m = pMix(pMix(std::move(p3), std::move(cg)), std::move(pd));
    return closeRunning(std::move(m));
}

RunningExParts runningExParts(const Net& n) {
    RunningExParts r;
    F yy = oc(par(atom("Y"), natom("Y")));
    for (int b : n.boxes()) {
        const Link& o = n.link(b);
        int e = o.concl[0];
        if (o.box < 0) r.B0 = b;
        if (equal(n.edge(e).label, yy)) r.D = b;
        int t = n.edge(e).tgt;
        if (t < 0 || n.link(t).kind != LinkKind::Cut) continue;
        const Link& c = n.link(t);
        int other = c.prem[0] == e ? c.prem[1] : c.prem[0];
        const Link& w = n.link(n.edge(other).src);
        if (w.kind != LinkKind::Wn) continue;
        if (w.prem.size() == 3) {
            r.B = b;
            r.c = t;
        } else if (w.prem.size() == 2 && o.box >= 0) {
            r.C = b;
        }
    }
    return r;
}

Net nonIndexable() {
    Proof p = derAx(atom("A"));                        // [A, ?A^]
    return pPar(std::move(p), 1, 0).finish();
}

Net pargD1() { return pParg(pAx(atom("A")), 0).finish(); }
Net pargD2() { return pParg(pAx(atom("A")), 1).finish(); }

Net pargComposite(int which) {
    Proof d1 = pParg(pAx(atom("A")), 0);               // [A, $A^]
    Proof d2 = pParg(pAx(atom("A")), 1);               // [A^, $A]
    if (which == 1) return pCut(std::move(d1), 0, std::move(d2), 0).finish();
    return pCut(std::move(d1), 1, std::move(d2), 1).finish();
}

Net axSelfCut() {
    Net n;
    int a = n.newEdge(natom("A")), b = n.newEdge(atom("A"));
    n.newLink(LinkKind::Ax, {}, {a, b});
    n.newLink(LinkKind::Cut, {a, b}, {});
    return n;
}

Derivation digDerivation() {
    return parseDerivation(
        "der 1\n"
        "  par 0 1\n"
        "    tensor 1 1\n"
        "      prom 1\n"
        "        prom 0\n"
        "          der 0\n"
        "            ax \"A\" 2\n"
        "      der 1\n"
        "        ax \"B\" 1\n");
}

Net digExample() { return elaborate(digDerivation(), RuleSet::ML3); }

std::vector<std::string> corpusNames() {
    return {"running", "running-red", "nonindexable", "parg-d1", "parg-d2", "parg-c1", "parg-c2",
            "ax-self-cut", "dig", "string-SE-101", "string-SP-101", "string-SP'-101", "string-S0-101",
            "church-3", "exp", "theta-1", "theta-2", "theta-3"};
}

Net corpusNet(const std::string& name) {
    if (name == "running") return runningEx();
    if (name == "running-red") return runningExRed();
    if (name == "nonindexable") return nonIndexable();
    if (name == "parg-d1") return pargD1();
    if (name == "parg-d2") return pargD2();
    if (name == "parg-c1") return pargComposite(1);
    if (name == "parg-c2") return pargComposite(2);
    if (name == "ax-self-cut") return axSelfCut();
    if (name == "dig") return digExample();
    if (name == "exp") return expProof().finish();
    auto tail = [&](const std::string& pre) { return name.substr(pre.size()); };
    if (name.rfind("church-", 0) == 0) return buildChurchNat(static_cast<unsigned>(std::stoul(tail("church-"))));
    if (name.rfind("theta-", 0) == 0) return buildTheta(static_cast<unsigned>(std::stoul(tail("theta-"))));
    if (name.rfind("string-", 0) == 0) {
        std::string rest = tail("string-");
        auto dash = rest.rfind('-');
        if (dash == std::string::npos) throw std::invalid_argument("expected string-<flavor>-<bits>");
        return buildString(rest.substr(dash + 1), flavorFromName(rest.substr(0, dash)));
    }
    throw std::invalid_argument("unknown corpus net " + name);
}

}
