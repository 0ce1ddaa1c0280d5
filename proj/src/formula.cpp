#include "llev/formula.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace llev {

namespace {

F mk(Conn c, std::string name, int bvar, std::uint64_t w, F l, F r) {
    auto f = std::make_shared<Formula>();
    f->c = c;
    f->name = std::move(name);
    f->bvar = bvar;
    f->w = w;
    f->l = std::move(l);
    f->r = std::move(r);
    return f;
}

bool isBinder(Conn c) { return c == Conn::Forall || c == Conn::Exists; }
bool isLeaf(Conn c) { return c == Conn::Atom || c == Conn::NegAtom; }

// Generic bottom-up rebuild with binder depth tracking.
F mapAtoms(const F& f, int depth, const std::function<F(const F&, int)>& leaf) {
    switch (f->c) {
    case Conn::Atom:
    case Conn::NegAtom:
        return leaf(f, depth);
    case Conn::Tensor:
    case Conn::Par: {
        F a = mapAtoms(f->l, depth, leaf);
        F b = mapAtoms(f->r, depth, leaf);
        if (a == f->l && b == f->r) return f;
        return mk(f->c, f->name, -1, 0, a, b);
    }
    case Conn::Forall:
    case Conn::Exists: {
        F a = mapAtoms(f->l, depth + 1, leaf);
        if (a == f->l) return f;
        return mk(f->c, f->name, -1, 0, a, nullptr);
    }
    default: {
        F a = mapAtoms(f->l, depth, leaf);
        if (a == f->l) return f;
        return mk(f->c, f->name, -1, 0, a, nullptr);
    }
    }
}

}

F atom(const std::string& x, std::uint64_t w) { return mk(Conn::Atom, x, -1, w, nullptr, nullptr); }
F natom(const std::string& x, std::uint64_t w) { return mk(Conn::NegAtom, x, -1, w, nullptr, nullptr); }
F tensor(F a, F b) { return mk(Conn::Tensor, "", -1, 0, std::move(a), std::move(b)); }
F par(F a, F b) { return mk(Conn::Par, "", -1, 0, std::move(a), std::move(b)); }
F oc(F a) { return mk(Conn::Oc, "", -1, 0, std::move(a), nullptr); }
F wn(F a) { return mk(Conn::Wn, "", -1, 0, std::move(a), nullptr); }
F parg(F a) { return mk(Conn::Parg, "", -1, 0, std::move(a), nullptr); }
F parg(F a, unsigned k) {
    for (unsigned i = 0; i < k; ++i) a = parg(a);
    return a;
}
F binder(Conn c, const std::string& hint, F body) { return mk(c, hint, -1, 0, std::move(body), nullptr); }
F forall(const std::string& x, F body) { return binder(Conn::Forall, x, abstractVar(body, x)); }
F exists(const std::string& x, F body) { return binder(Conn::Exists, x, abstractVar(body, x)); }

bool isAtomic(const F& f) { return isLeaf(f->c); }

bool equal(const F& a, const F& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->c != b->c) return false;
    if (isLeaf(a->c)) {
        if (a->w != b->w || a->bvar != b->bvar) return false;
        return a->bvar >= 0 || a->name == b->name;
    }
    if (!equal(a->l, b->l)) return false;
    return !a->r || equal(a->r, b->r);
}

F dual(const F& f) {
    switch (f->c) {
    case Conn::Atom: return mk(Conn::NegAtom, f->name, f->bvar, f->w, nullptr, nullptr);
    case Conn::NegAtom: return mk(Conn::Atom, f->name, f->bvar, f->w, nullptr, nullptr);
    case Conn::Tensor: return par(dual(f->r), dual(f->l));
    case Conn::Par: return tensor(dual(f->r), dual(f->l));
    case Conn::Oc: return wn(dual(f->l));
    case Conn::Wn: return oc(dual(f->l));
    case Conn::Forall: return binder(Conn::Exists, f->name, dual(f->l));
    case Conn::Exists: return binder(Conn::Forall, f->name, dual(f->l));
    case Conn::Parg: return parg(dual(f->l));
    }
    return f;
}

F shift(std::uint64_t p, const F& f) {
    if (p == 0) return f;
    return mapAtoms(f, 0, [p](const F& a, int) {
        return mk(a->c, a->name, a->bvar, a->w + p, nullptr, nullptr);
    });
}

F instantiate(const F& body, const F& b) {
    F nb = dual(b);
    return mapAtoms(body, 0, [&](const F& a, int depth) -> F {
        if (a->bvar != depth) return a;
        return shift(a->w, a->c == Conn::Atom ? b : nb);
    });
}

F abstractVar(const F& f, const std::string& x) {
    return mapAtoms(f, 0, [&](const F& a, int depth) -> F {
        if (a->bvar >= 0 || a->name != x) return a;
        return mk(a->c, x, depth, a->w, nullptr, nullptr);
    });
}

F cansubst(const F& f, const F& b, const std::string& x) {
    F nb = dual(b);
    return mapAtoms(f, 0, [&](const F& a, int) -> F {
        if (a->bvar >= 0 || a->name != x) return a;
        return shift(a->w, a->c == Conn::Atom ? b : nb);
    });
}

F substitute(const F& f, const F& b, const std::string& x) { return cansubst(f, b, x); }

F renameFree(const F& f, const std::string& from, const std::string& to) {
    return mapAtoms(f, 0, [&](const F& a, int) -> F {
        if (a->bvar >= 0 || a->name != from) return a;
        return mk(a->c, to, -1, a->w, nullptr, nullptr);
    });
}

void freeVars(const F& f, std::set<std::string>& out) {
    if (isLeaf(f->c)) {
        if (f->bvar < 0) out.insert(f->name);
        return;
    }
    freeVars(f->l, out);
    if (f->r) freeVars(f->r, out);
}

bool occursFree(const F& f, const std::string& x) {
    if (isLeaf(f->c)) return f->bvar < 0 && f->name == x;
    return occursFree(f->l, x) || (f->r && occursFree(f->r, x));
}

bool hasParagraph(const F& f) {
    if (isLeaf(f->c)) return false;
    if (f->c == Conn::Parg) return true;
    return hasParagraph(f->l) || (f->r && hasParagraph(f->r));
}

bool hasWeight(const F& f) {
    if (isLeaf(f->c)) return f->w != 0;
    return hasWeight(f->l) || (f->r && hasWeight(f->r));
}

std::size_t formulaSize(const F& f) {
    if (isLeaf(f->c)) return 1;
    return 1 + formulaSize(f->l) + (f->r ? formulaSize(f->r) : 0);
}

static F toForm0At(const F& f, std::uint64_t k) {
    switch (f->c) {
    case Conn::Atom:
    case Conn::NegAtom: return mk(f->c, f->name, f->bvar, f->w + k, nullptr, nullptr);
    case Conn::Parg: return toForm0At(f->l, k + 1);
    case Conn::Tensor:
    case Conn::Par: return mk(f->c, "", -1, 0, toForm0At(f->l, k), toForm0At(f->r, k));
    default: return mk(f->c, f->name, -1, 0, toForm0At(f->l, k), nullptr);
    }
}

F toForm0(const F& f) { return toForm0At(f, 0); }

F toForm(const F& f) {
    return mapAtoms(f, 0, [](const F& a, int) -> F {
        F base = mk(a->c, a->name, a->bvar, 0, nullptr, nullptr);
        return parg(base, static_cast<unsigned>(a->w));
    });
}

F eraseParagraphs(const F& f) {
    switch (f->c) {
    case Conn::Atom:
    case Conn::NegAtom: return f;
    case Conn::Parg: return eraseParagraphs(f->l);
    case Conn::Tensor:
    case Conn::Par: return mk(f->c, "", -1, 0, eraseParagraphs(f->l), eraseParagraphs(f->r));
    default: return mk(f->c, f->name, -1, 0, eraseParagraphs(f->l), nullptr);
    }
}

F forgetWeights(const F& f) {
    return mapAtoms(f, 0, [](const F& a, int) -> F {
        if (a->w == 0) return a;
        return mk(a->c, a->name, a->bvar, 0, nullptr, nullptr);
    });
}

// ---------------------------------------------------------------- printing

namespace {

struct Printer {
    std::vector<std::string> env;  // env.back() is bound index 0
    std::ostringstream out;

    std::string fresh(const std::string& hint, const F& body) {
        std::set<std::string> fv;
        freeVars(body, fv);
        std::string n = hint.empty() ? "X" : hint;
        auto clash = [&](const std::string& s) {
            if (fv.count(s)) return true;
            for (auto& e : env)
                if (e == s) return true;
            return false;
        };
        while (clash(n)) n += "'";
        return n;
    }

    void leaf(const F& f) {
        if (f->w) out << f->w << '@';
        if (f->c == Conn::NegAtom) out << '~';
        if (f->bvar >= 0) {
            int k = static_cast<int>(env.size()) - 1 - f->bvar;
            out << (k >= 0 ? env[k] : "?" + std::to_string(f->bvar));
        } else {
            out << f->name;
        }
    }

    // prec: 0 = anything, 1 = tensor operand/par left, 2 = unary operand
    void go(const F& f, int prec) {
        switch (f->c) {
        case Conn::Atom:
        case Conn::NegAtom: leaf(f); return;
        case Conn::Oc:
        case Conn::Wn:
        case Conn::Parg:
            out << (f->c == Conn::Oc ? '!' : f->c == Conn::Wn ? '?' : '$');
            go(f->l, 3);
            return;
        case Conn::Forall:
        case Conn::Exists: {
            bool paren = prec > 0;
            if (paren) out << '(';
            std::string n = fresh(f->name, f->l);
            out << (f->c == Conn::Forall ? "all " : "ex ") << n << ". ";
            env.push_back(n);
            go(f->l, 0);
            env.pop_back();
            if (paren) out << ')';
            return;
        }
        case Conn::Par: {
            bool paren = prec >= 1;
            if (paren) out << '(';
            go(f->l, 1);
            out << " | ";
            go(f->r, f->r->c == Conn::Par ? 0 : 1);
            if (paren) out << ')';
            return;
        }
        case Conn::Tensor: {
            bool paren = prec >= 2;
            if (paren) out << '(';
            go(f->l, 2);
            out << " * ";
            go(f->r, f->r->c == Conn::Tensor ? 1 : 2);
            if (paren) out << ')';
            return;
        }
        }
    }
};

}

std::string show(const F& f) {
    if (!f) return "<none>";
    Printer p;
    p.go(f, 0);
    return p.out.str();
}

// ---------------------------------------------------------------- parsing

namespace {

struct Parser {
    const std::string& s;
    std::size_t i = 0;
    std::vector<std::string> env;

    explicit Parser(const std::string& src) : s(src) {}

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("formula: " + msg + " at offset " + std::to_string(i) + " in '" + s + "'");
    }
    static bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool identChar(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '#';
    }
    std::string ident() {
        ws();
        if (i >= s.size() || !identStart(s[i])) fail("expected identifier");
        std::size_t b = i;
        while (i < s.size() && identChar(s[i])) ++i;
        return s.substr(b, i - b);
    }
    bool keyword(const char* kw) {
        ws();
        std::size_t n = std::char_traits<char>::length(kw);
        if (s.compare(i, n, kw) != 0) return false;
        if (i + n < s.size() && identChar(s[i + n])) return false;
        i += n;
        return true;
    }

    F atomic(std::uint64_t w, bool neg) {
        std::string x = ident();
        for (int k = static_cast<int>(env.size()) - 1; k >= 0; --k) {
            if (env[k] == x) {
                int idx = static_cast<int>(env.size()) - 1 - k;
                return mk(neg ? Conn::NegAtom : Conn::Atom, x, idx, w, nullptr, nullptr);
            }
        }
        return neg ? natom(x, w) : atom(x, w);
    }

    F quant(Conn c) {
        std::string x = ident();
        if (!eat('.')) fail("expected '.'");
        env.push_back(x);
        F body = top();
        env.pop_back();
        return binder(c, x, body);
    }

    F unary() {
        ws();
        if (i >= s.size()) fail("unexpected end");
        char c = s[i];
        if (c == '!') { ++i; return oc(unary()); }
        if (c == '?') { ++i; return wn(unary()); }
        if (c == '$') { ++i; return parg(unary()); }
        if (c == '(') {
            ++i;
            F f = top();
            if (!eat(')')) fail("expected ')'");
            return f;
        }
        if (keyword("all")) return quant(Conn::Forall);
        if (keyword("ex")) return quant(Conn::Exists);
        std::uint64_t w = 0;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) w = w * 10 + (s[i++] - '0');
            if (!eat('@')) fail("expected '@' after weight");
        }
        bool neg = eat('~');
        return atomic(w, neg);
    }

    F tens() {
        F a = unary();
        if (eat('*')) return tensor(a, tens());
        return a;
    }

    F top() {
        F a = tens();
        if (eat('|')) return par(a, top());
        return a;
    }
};

}

F parseFormula(const std::string& src) {
    Parser p(src);
    F f = p.top();
    p.ws();
    if (p.i != src.size()) p.fail("trailing input");
    return f;
}

namespace types {
F stringSE() { return parseFormula("all X. ?(~X * X) | ?(~X * X) | !(~X | X)"); }
F stringSP() { return parseFormula("all X. ?(~X * X) | ?(~X * X) | $(~X | X)"); }
F stringSPprime() { return parseFormula("all X. ?(~X * X) | ?(~X * X) | ($~X | $X)"); }
F stringS0() { return parseFormula("all X. ?(~X * X) | ?(~X * X) | (1@~X | 1@X)"); }
F church() { return parseFormula("all X. ?(~X * X) | !(~X | X)"); }
}

}
