#include "llev/net.hpp"

#include <algorithm>
#include "json.hpp"
#include <sstream>
#include <stdexcept>

namespace llev {

namespace {
const char* kKindNames[] = {"ax", "cut", "tensor", "par", "forall", "exists", "oc", "whynot", "flat", "pax", "paragraph"};
}

const char* kindName(LinkKind k) { return kKindNames[static_cast<int>(k)]; }

std::optional<LinkKind> kindFromName(const std::string& s) {
    for (int i = 0; i < 11; ++i)
        if (s == kKindNames[i]) return static_cast<LinkKind>(i);
    return std::nullopt;
}

const char* modeName(Mode m) {
    switch (m) {
    case Mode::Typed: return "typed";
    case Mode::Typed0: return "typed0";
    case Mode::Untyped: return "untyped";
    }
    return "?";
}

int Net::newEdge(F label) {
    int id = nextEdge++;
    Edge e;
    e.id = id;
    e.label = std::move(label);
    edges[id] = e;
    return id;
}

int Net::newLink(LinkKind k, std::vector<int> prem, std::vector<int> concl, int box, int origin) {
    int id = nextLink++;
    Link l;
    l.id = id;
    l.kind = k;
    l.prem = std::move(prem);
    l.concl = std::move(concl);
    l.box = box;
    l.origin = origin >= 0 ? origin : nextOrigin++;
    for (int e : l.prem) edges.at(e).tgt = id;
    for (int e : l.concl) edges.at(e).src = id;
    if (k == LinkKind::Oc) {
        l.owner = id;
        aux[id];
    }
    links[id] = l;
    return id;
}

void Net::removeLink(int id) {
    auto it = links.find(id);
    if (it == links.end()) return;
    const Link& l = it->second;
    for (int e : l.prem) {
        auto ei = edges.find(e);
        if (ei != edges.end() && ei->second.tgt == id) ei->second.tgt = -1;
    }
    for (int e : l.concl) {
        auto ei = edges.find(e);
        if (ei != edges.end() && ei->second.src == id) ei->second.src = -1;
    }
    if (l.kind == LinkKind::Oc) aux.erase(id);
    if (l.kind == LinkKind::Pax) {
        auto ai = aux.find(l.owner);
        if (ai != aux.end()) ai->second.erase(std::remove(ai->second.begin(), ai->second.end(), id), ai->second.end());
    }
    links.erase(it);
}

void Net::removeEdge(int id) { edges.erase(id); }

void Net::replacePremise(int lk, int oldEdge, int newEdgeId) {
    Link& l = link(lk);
    for (int& e : l.prem)
        if (e == oldEdge) e = newEdgeId;
    edge(newEdgeId).tgt = lk;
}

std::string Net::freshName(const std::string& base) {
    std::set<std::string> used = eigenvariables();
    for (auto& [id, e] : edges)
        if (e.label) freeVars(e.label, used);
    for (;;) {
        std::string n = base + "#" + std::to_string(nextName++);
        if (!used.count(n)) return n;
    }
}

const Link& Net::link(int id) const {
    auto it = links.find(id);
    if (it == links.end()) throw std::out_of_range("unknown link " + std::to_string(id));
    return it->second;
}
Link& Net::link(int id) {
    auto it = links.find(id);
    if (it == links.end()) throw std::out_of_range("unknown link " + std::to_string(id));
    return it->second;
}
const Edge& Net::edge(int id) const {
    auto it = edges.find(id);
    if (it == edges.end()) throw std::out_of_range("unknown edge " + std::to_string(id));
    return it->second;
}
Edge& Net::edge(int id) {
    auto it = edges.find(id);
    if (it == edges.end()) throw std::out_of_range("unknown edge " + std::to_string(id));
    return it->second;
}

bool Net::isBorder(int id) const {
    auto k = link(id).kind;
    return k == LinkKind::Oc || k == LinkKind::Pax;
}

bool Net::discharged(int e) const {
    int s = edge(e).src;
    if (s < 0 || !hasLink(s)) return false;
    auto k = link(s).kind;
    return k == LinkKind::Flat || k == LinkKind::Pax;
}

std::vector<int> Net::boxes() const {
    std::vector<int> r;
    for (auto& [id, a] : aux) r.push_back(id);
    return r;
}

bool Net::inside(int l, int b) const {
    int s = link(l).box;
    int guard = 0;
    while (s >= 0) {
        if (s == b) return true;
        s = link(s).box;
        if (++guard > 100000) throw std::runtime_error("box nesting cycle");
    }
    return false;
}

bool Net::boxWithin(int c, int b) const { return c == b || inside(c, b); }

std::vector<int> Net::content(int b) const {
    std::vector<int> r;
    for (auto& [id, l] : links)
        if (inside(id, b)) r.push_back(id);
    return r;
}

std::vector<int> Net::conclusions() const {
    std::vector<int> r;
    for (auto& [id, e] : edges)
        if (e.tgt < 0) r.push_back(id);
    return r;
}

std::vector<int> Net::cuts() const {
    std::vector<int> r;
    for (auto& [id, l] : links)
        if (l.kind == LinkKind::Cut) r.push_back(id);
    return r;
}

int Net::depthOf(int l) const {
    int d = 0;
    for (int s = link(l).box; s >= 0; s = link(s).box) ++d;
    return d;
}

int Net::depth() const {
    int d = 0;
    for (auto& [id, l] : links) d = std::max(d, depthOf(id));
    return d;
}

int Net::size() const {
    int n = 0;
    for (auto& [id, l] : links)
        if (l.kind != LinkKind::Pax) ++n;
    return n;
}

int Net::srcScope(int e) const {
    const Link& l = link(edge(e).src);
    return l.box;
}

int Net::tgtScope(int e) const {
    const Link& l = link(edge(e).tgt);
    if (l.kind == LinkKind::Oc || l.kind == LinkKind::Pax) return l.owner;
    return l.box;
}

std::vector<int> Net::exponentialBranch(int flat) const {
    std::vector<int> path;
    int cur = flat;
    for (int guard = 0; guard < 100000; ++guard) {
        const Link& l = link(cur);
        if (l.concl.size() != 1) break;
        int e = l.concl[0];
        path.push_back(e);
        int t = edge(e).tgt;
        if (t < 0) break;
        const Link& tl = link(t);
        if (tl.kind == LinkKind::Wn) return path;
        if (tl.kind != LinkKind::Pax) break;
        cur = t;
    }
    throw std::runtime_error("dangling exponential branch from flat " + std::to_string(flat));
}

int Net::branchWhynot(int flat) const {
    auto p = exponentialBranch(flat);
    return edge(p.back()).tgt;
}

std::vector<int> Net::paxCrossings(int flat) const {
    std::vector<int> r;
    auto p = exponentialBranch(flat);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) r.push_back(edge(p[i]).tgt);
    return r;
}

std::vector<int> Net::flatsAbove(int w) const {
    std::vector<int> r;
    for (int e : link(w).prem) {
        int s = edge(e).src;
        int guard = 0;
        while (s >= 0 && link(s).kind == LinkKind::Pax) {
            s = edge(link(s).prem.at(0)).src;
            if (++guard > 100000) throw std::runtime_error("pax chain cycle");
        }
        if (s < 0 || link(s).kind != LinkKind::Flat) throw std::runtime_error("whynot premise not above a flat");
        r.push_back(s);
    }
    return r;
}

std::set<std::string> Net::eigenvariables() const {
    std::set<std::string> r;
    for (auto& [id, l] : links)
        if (l.kind == LinkKind::Forall) r.insert(l.eigen);
    return r;
}

void Net::relabelAll(const std::function<F(const F&)>& fn) {
    for (auto& [id, e] : edges)
        if (e.label) e.label = fn(e.label);
    for (auto& [id, l] : links)
        if (l.assoc) l.assoc = fn(l.assoc);
}

std::map<int, int> Net::absorb(const Net& o, std::map<int, int>* linkMapOut) {
    std::map<int, int> em, lm;
    for (auto& [id, e] : o.edges) em[id] = newEdge(e.label);
    for (auto& [id, l] : o.links) lm[id] = nextLink++;
    int originBase = nextOrigin;
    int maxOrigin = -1;
    for (auto& [id, l] : o.links) {
        Link n = l;
        n.id = lm[id];
        for (int& e : n.prem) e = em[e];
        for (int& e : n.concl) e = em[e];
        n.box = l.box >= 0 ? lm.at(l.box) : -1;
        n.owner = l.owner >= 0 ? lm.at(l.owner) : -1;
        n.origin = originBase + l.origin;
        maxOrigin = std::max(maxOrigin, l.origin);
        links[n.id] = n;
    }
    for (auto& [id, e] : o.edges) {
        Edge& ne = edges[em[id]];
        ne.src = e.src >= 0 ? lm.at(e.src) : -1;
        ne.tgt = e.tgt >= 0 ? lm.at(e.tgt) : -1;
    }
    for (auto& [b, ps] : o.aux) {
        auto& v = aux[lm.at(b)];
        for (int p : ps) v.push_back(lm.at(p));
    }
    nextOrigin = originBase + maxOrigin + 1;
    nextName = std::max(nextName, o.nextName);
    if (linkMapOut) *linkMapOut = lm;
    return em;
}

// ---------------------------------------------------------------- validation

namespace {

// x == shift(k, y) for some k >= 0
std::optional<std::uint64_t> shiftDiff(const F& x, const F& y) {
    std::optional<std::uint64_t> k;
    std::function<bool(const F&, const F&)> go = [&](const F& a, const F& b) -> bool {
        if (a->c != b->c) return false;
        if (a->c == Conn::Atom || a->c == Conn::NegAtom) {
            if (a->bvar != b->bvar) return false;
            if (a->bvar < 0 && a->name != b->name) return false;
            if (a->w < b->w) return false;
            std::uint64_t d = a->w - b->w;
            if (k && *k != d) return false;
            k = d;
            return true;
        }
        if (!go(a->l, b->l)) return false;
        return !a->r || go(a->r, b->r);
    };
    if (!go(x, y)) return std::nullopt;
    return k ? k : std::optional<std::uint64_t>(0);
}

}

std::optional<std::uint64_t> axiomShift(const F& heavy, const F& light) {
    return shiftDiff(heavy, dual(light));
}

std::vector<Violation> Net::validate() const {
    std::vector<Violation> v;
    auto bad = [&](std::string what, int l, int e = -1) { v.push_back({std::move(what), l, e}); };

    // edges
    for (auto& [id, e] : edges) {
        if (e.src < 0 || !hasLink(e.src)) {
            bad("edge without source link", -1, id);
            continue;
        }
        auto& sc = link(e.src).concl;
        if (std::count(sc.begin(), sc.end(), id) != 1) bad("edge not listed among source conclusions", e.src, id);
        if (e.tgt >= 0) {
            if (!hasLink(e.tgt)) {
                bad("edge target missing", -1, id);
                continue;
            }
            auto& tp = link(e.tgt).prem;
            if (std::count(tp.begin(), tp.end(), id) != 1) bad("edge not listed among target premises", e.tgt, id);
        }
    }
    // links: arity and incidence
    for (auto& [id, l] : links) {
        std::size_t np = l.prem.size(), nc = l.concl.size();
        bool ok = true;
        switch (l.kind) {
        case LinkKind::Ax: ok = np == 0 && nc == 2; break;
        case LinkKind::Cut: ok = np == 2 && nc == 0; break;
        case LinkKind::Tensor:
        case LinkKind::Par: ok = np == 2 && nc == 1; break;
        case LinkKind::Wn: ok = nc == 1; break;
        default: ok = np == 1 && nc == 1; break;
        }
        if (!ok) bad("arity", id);
        for (int e : l.prem) {
            if (!edges.count(e) || edge(e).tgt != id) bad("premise edge does not point to link", id, e);
        }
        for (int e : l.concl) {
            if (!edges.count(e) || edge(e).src != id) bad("conclusion edge does not point to link", id, e);
        }
        if (l.kind == LinkKind::Forall && l.eigen.empty()) bad("forall without eigenvariable", id);
        if (l.kind == LinkKind::Parg && mode == Mode::Typed0) bad("paragraph link in typed0 net", id);
    }
    if (!v.empty()) return v;

    // boxes
    for (auto& [id, l] : links) {
        if (l.kind == LinkKind::Oc) {
            if (l.owner != id) bad("oc owner", id);
            if (!aux.count(id)) bad("oc without box entry", id);
        }
        if (l.kind == LinkKind::Pax) {
            if (l.owner < 0 || !hasLink(l.owner) || link(l.owner).kind != LinkKind::Oc) {
                bad("pax without box", id);
                continue;
            }
            auto& a = aux.at(l.owner);
            if (std::count(a.begin(), a.end(), id) != 1) bad("pax missing from aux list", id);
            if (l.box != link(l.owner).box) bad("pax and oc on different levels of nesting", id);
        }
        if (l.box >= 0 && (!hasLink(l.box) || link(l.box).kind != LinkKind::Oc)) bad("scope is not a box", id);
    }
    for (auto& [b, ps] : aux) {
        if (!hasLink(b) || link(b).kind != LinkKind::Oc) {
            bad("box entry without oc", b);
            continue;
        }
        for (int p : ps)
            if (!hasLink(p) || link(p).kind != LinkKind::Pax || link(p).owner != b) bad("aux entry is not a pax of the box", b);
        int s = link(b).box, guard = 0;
        while (s >= 0 && hasLink(s) && ++guard < 100000) {
            if (s == b) {
                bad("box nesting cycle", b);
                break;
            }
            s = link(s).box;
        }
    }
    if (!v.empty()) return v;

    for (auto& [id, e] : edges) {
        if (e.tgt < 0) {
            if (srcScope(id) != -1) bad("conclusion edge leaves a box", e.src, id);
            continue;
        }
        if (srcScope(id) != tgtScope(id)) bad("edge crosses a box border", e.src, id);
    }

    // discharged formulas
    for (auto& [id, e] : edges) {
        bool d = discharged(id);
        if (d) {
            if (e.tgt < 0) {
                bad("discharged conclusion", e.src, id);
            } else {
                auto k = link(e.tgt).kind;
                if (k != LinkKind::Pax && k != LinkKind::Wn) bad("flat-conclusion target", e.tgt, id);
            }
        } else if (e.tgt >= 0) {
            auto k = link(e.tgt).kind;
            if (k == LinkKind::Pax || k == LinkKind::Wn) bad("why-not premise is not discharged", e.tgt, id);
        }
    }

    // eigenvariables
    std::set<std::string> eig;
    for (auto& [id, l] : links) {
        if (l.kind != LinkKind::Forall) continue;
        if (!eig.insert(l.eigen).second) bad("duplicate eigenvariable " + l.eigen, id);
    }

    if (mode == Mode::Untyped) return v;

    for (auto& [id, e] : edges)
        if (!e.label) bad("missing label", e.src, id);
    if (!v.empty()) return v;

    for (int c : conclusions()) {
        for (auto& z : eig)
            if (occursFree(edge(c).label, z)) bad("conclusion contains eigenvariable " + z, edge(c).src, c);
    }
    if (mode == Mode::Typed) {
        for (auto& [id, e] : edges)
            if (hasWeight(e.label)) bad("weighted atom in meLL net", e.src, id);
    } else {
        for (auto& [id, e] : edges)
            if (hasParagraph(e.label)) bad("paragraph formula in typed0 net", e.src, id);
    }

    auto L = [&](int e) { return edge(e).label; };
    for (auto& [id, l] : links) {
        bool ok = true;
        switch (l.kind) {
        case LinkKind::Ax:
            if (mode == Mode::Typed) {
                ok = equal(L(l.concl[0]), dual(L(l.concl[1])));
            } else {
                ok = axiomShift(L(l.concl[0]), L(l.concl[1])).has_value() ||
                     axiomShift(L(l.concl[1]), L(l.concl[0])).has_value();
            }
            break;
        case LinkKind::Cut: ok = equal(L(l.prem[0]), dual(L(l.prem[1]))); break;
        case LinkKind::Tensor: ok = equal(L(l.concl[0]), tensor(L(l.prem[0]), L(l.prem[1]))); break;
        case LinkKind::Par: ok = equal(L(l.concl[0]), par(L(l.prem[0]), L(l.prem[1]))); break;
        case LinkKind::Forall: {
            F c = L(l.concl[0]);
            ok = c->c == Conn::Forall && equal(L(l.prem[0]), instantiate(c->l, atom(l.eigen)));
            break;
        }
        case LinkKind::Exists: {
            F c = L(l.concl[0]);
            ok = c->c == Conn::Exists && l.assoc && equal(L(l.prem[0]), instantiate(c->l, l.assoc));
            break;
        }
        case LinkKind::Oc: ok = equal(L(l.concl[0]), oc(L(l.prem[0]))); break;
        case LinkKind::Parg: ok = equal(L(l.concl[0]), parg(L(l.prem[0]))); break;
        case LinkKind::Flat:
        case LinkKind::Pax: ok = equal(L(l.concl[0]), L(l.prem[0])); break;
        case LinkKind::Wn: {
            F c = L(l.concl[0]);
            ok = c->c == Conn::Wn;
            for (int p : l.prem) ok = ok && equal(L(p), c->l);
            break;
        }
        }
        if (!ok) bad(std::string("ill-typed ") + kindName(l.kind), id);
    }
    return v;
}

// ---------------------------------------------------------------- text format

std::string toText(const Net& n) {
    std::ostringstream o;
    o << "mode " << modeName(n.mode) << "\n";
    for (auto& [id, e] : n.edges) {
        o << "edge " << id;
        if (e.label) o << " : " << show(e.label);
        o << "\n";
    }
    for (auto& [id, l] : n.links) {
        o << "link " << id << " " << kindName(l.kind);
        for (int e : l.prem) o << " " << e;
        o << " ->";
        for (int e : l.concl) o << " " << e;
        o << " origin " << l.origin;
        if (l.kind == LinkKind::Forall) o << " eigen " << l.eigen;
        if (l.kind == LinkKind::Exists && l.assoc) o << " with " << show(l.assoc);
        o << "\n";
    }
    for (auto& [b, ps] : n.aux) {
        o << "box " << b << " {";
        for (int c : n.content(b)) o << " " << c;
        o << " } aux [";
        for (std::size_t i = 0; i < ps.size(); ++i) o << (i ? " " : "") << ps[i];
        o << "]\n";
    }
    return o.str();
}

Net fromText(const std::string& text) {
    Net n;
    std::istringstream in(text);
    std::string line;
    std::map<int, std::set<int>> boxContent;
    std::map<int, std::vector<int>> boxAux;
    int lineNo = 0;
    auto fail = [&](const std::string& m) {
        throw ParseError("net text line " + std::to_string(lineNo) + ": " + m);
    };
    struct Pending {
        int id;
        LinkKind k;
        std::vector<int> prem, concl;
        std::string eigen;
        F assoc;
        int origin = -1;
    };
    std::vector<Pending> pend;
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find("//");
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "mode") {
            std::string m;
            ls >> m;
            if (m == "typed") n.mode = Mode::Typed;
            else if (m == "typed0") n.mode = Mode::Typed0;
            else if (m == "untyped") n.mode = Mode::Untyped;
            else fail("unknown mode " + m);
        } else if (kw == "edge") {
            int id;
            if (!(ls >> id)) fail("edge id");
            Edge e;
            e.id = id;
            std::string rest;
            std::getline(ls, rest);
            auto colon = rest.find(':');
            if (colon != std::string::npos) e.label = parseFormula(rest.substr(colon + 1));
            if (n.edges.count(id)) fail("duplicate edge id");
            n.edges[id] = e;
            n.nextEdge = std::max(n.nextEdge, id + 1);
        } else if (kw == "link") {
            Pending p;
            std::string kind;
            if (!(ls >> p.id >> kind)) fail("link header");
            auto k = kindFromName(kind);
            if (!k) fail("unknown link kind " + kind);
            p.k = *k;
            std::string tok;
            bool arrow = false;
            while (ls >> tok) {
                if (tok == "->") {
                    arrow = true;
                    continue;
                }
                if (tok == "origin") {
                    ls >> p.origin;
                    continue;
                }
                if (tok == "eigen") {
                    ls >> p.eigen;
                    continue;
                }
                if (tok == "with") {
                    std::string rest;
                    std::getline(ls, rest);
                    p.assoc = parseFormula(rest);
                    break;
                }
                int e;
                try {
                    e = std::stoi(tok);
                } catch (...) {
                    fail("bad token " + tok);
                }
                (arrow ? p.concl : p.prem).push_back(e);
            }
            if (!arrow) fail("missing '->'");
            pend.push_back(p);
        } else if (kw == "box") {
            int b;
            std::string tok;
            if (!(ls >> b >> tok) || tok != "{") fail("box header");
            auto& cs = boxContent[b];
            while (ls >> tok && tok != "}") cs.insert(std::stoi(tok));
            if (!(ls >> tok) || tok != "aux") fail("expected aux");
            std::string rest;
            std::getline(ls, rest);
            for (char& c : rest)
                if (c == '[' || c == ']' || c == ',') c = ' ';
            std::istringstream as(rest);
            int p;
            while (as >> p) boxAux[b].push_back(p);
        } else {
            fail("unknown directive " + kw);
        }
    }
    for (auto& p : pend) {
        Link l;
        l.id = p.id;
        l.kind = p.k;
        l.prem = p.prem;
        l.concl = p.concl;
        l.eigen = p.eigen;
        l.assoc = p.assoc;
        l.origin = p.origin >= 0 ? p.origin : p.id;
        if (n.links.count(p.id)) fail("duplicate link id");
        n.links[p.id] = l;
        n.nextLink = std::max(n.nextLink, p.id + 1);
        n.nextOrigin = std::max(n.nextOrigin, l.origin + 1);
        for (int e : p.prem) {
            if (!n.edges.count(e)) fail("undeclared edge " + std::to_string(e));
            n.edges[e].tgt = p.id;
        }
        for (int e : p.concl) {
            if (!n.edges.count(e)) fail("undeclared edge " + std::to_string(e));
            n.edges[e].src = p.id;
        }
    }
    for (auto& [id, l] : n.links) {
        if (l.kind == LinkKind::Oc) {
            l.owner = id;
            n.aux[id];
        }
    }
    for (auto& [b, ps] : boxAux) {
        if (!n.links.count(b) || n.links[b].kind != LinkKind::Oc) throw ParseError("box " + std::to_string(b) + " has no oc link");
        for (int p : ps) {
            if (!n.links.count(p)) throw ParseError("unknown pax " + std::to_string(p));
            n.links[p].owner = b;
        }
        n.aux[b] = ps;
    }
    // innermost containing box = the one with the smallest content set
    for (auto& [id, l] : n.links) {
        int best = -1;
        std::size_t bestSize = SIZE_MAX;
        for (auto& [b, cs] : boxContent) {
            if (cs.count(id) && cs.size() < bestSize) {
                best = b;
                bestSize = cs.size();
            }
        }
        l.box = best;
    }
    return n;
}

std::string toJson(const Net& n) {
    nlohmann::json j;
    j["mode"] = modeName(n.mode);
    j["edges"] = nlohmann::json::array();
    for (auto& [id, e] : n.edges) {
        nlohmann::json je{{"id", id}, {"src", e.src}, {"tgt", e.tgt}, {"discharged", n.discharged(id)}};
        je["label"] = e.label ? nlohmann::json(show(e.label)) : nlohmann::json(nullptr);
        j["edges"].push_back(je);
    }
    j["links"] = nlohmann::json::array();
    for (auto& [id, l] : n.links) {
        nlohmann::json jl{{"id", id}, {"kind", kindName(l.kind)}, {"premises", l.prem}, {"conclusions", l.concl}, {"origin", l.origin}};
        if (l.kind == LinkKind::Forall) jl["eigen"] = l.eigen;
        if (l.assoc) jl["with"] = show(l.assoc);
        j["links"].push_back(jl);
    }
    j["boxes"] = nlohmann::json::array();
    for (auto& [b, ps] : n.aux) j["boxes"].push_back({{"oc", b}, {"content", n.content(b)}, {"aux", ps}});
    return j.dump(2);
}

}
