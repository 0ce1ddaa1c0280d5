#include "llev/derivation.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace llev {

const char* ruleSetName(RuleSet r) {
    switch (r) {
    case RuleSet::ML3: return "mL3";
    case RuleSet::ML4: return "mL4";
    case RuleSet::ML40: return "mL40";
    }
    return "?";
}

namespace {

struct Checker {
    RuleSet rs;

    [[noreturn]] void fail(const std::string& path, const Derivation& d, const std::string& m) const {
        throw DerivationError("rule " + d.rule + " at " + (path.empty() ? "root" : path) + ": " + m);
    }

    void arity(const std::string& path, const Derivation& d, std::size_t kids, std::size_t ints) const {
        if (d.kids.size() != kids) fail(path, d, "expected " + std::to_string(kids) + " premise(s)");
        if (d.ints.size() < ints) fail(path, d, "missing integer argument");
    }

    std::size_t slot(const std::string& path, const Derivation& d, const Sequent& s, long k) const {
        if (k < 0 || static_cast<std::size_t>(k) >= s.size()) fail(path, d, "position " + std::to_string(k) + " out of range");
        return static_cast<std::size_t>(k);
    }

    void formulaOk(const std::string& path, const Derivation& d, const F& f) const {
        if (rs == RuleSet::ML40 && hasParagraph(f)) fail(path, d, "paragraph in an mL40 formula");
        if (rs != RuleSet::ML40 && hasWeight(f)) fail(path, d, "weighted atom outside mL40");
    }

    Sequent run(const Derivation& d, const std::string& path) const {
        std::vector<Sequent> prem;
        for (std::size_t i = 0; i < d.kids.size(); ++i) prem.push_back(run(d.kids[i], path + "/" + std::to_string(i)));
        auto erase = [](Sequent s, std::size_t k) {
            s.erase(s.begin() + static_cast<long>(k));
            return s;
        };
        const std::string& r = d.rule;
        if (r == "ax") {
            if (!d.kids.empty() || d.formulas.size() != 1 || d.ints.empty()) fail(path, d, "expects a formula and an index");
            F a = d.formulas[0];
            formulaOk(path, d, a);
            long p = 0, i = d.ints.back();
            if (d.ints.size() == 2) {
                if (rs != RuleSet::ML40) fail(path, d, "weighted axiom outside mL40");
                p = d.ints[0];
                if (p < 0) fail(path, d, "negative weight");
            }
            return {{shift(static_cast<std::uint64_t>(p), dual(a)), i}, {a, i + p}};
        }
        if (r == "mix") {
            arity(path, d, 2, 0);
            Sequent s = prem[0];
            s.insert(s.end(), prem[1].begin(), prem[1].end());
            return s;
        }
        if (r == "cut" || r == "tensor") {
            arity(path, d, 2, 2);
            auto ka = slot(path, d, prem[0], d.ints[0]), kb = slot(path, d, prem[1], d.ints[1]);
            auto a = prem[0][ka], b = prem[1][kb];
            if (a.index != b.index) fail(path, d, "premise indexes differ");
            if (r == "cut" && !equal(dual(a.formula), b.formula)) fail(path, d, "cut formulas are not dual");
            Sequent s = erase(prem[0], ka);
            auto rest = erase(prem[1], kb);
            s.insert(s.end(), rest.begin(), rest.end());
            if (r == "tensor") s.push_back({tensor(a.formula, b.formula), a.index});
            return s;
        }
        if (r == "par" || r == "ctr") {
            arity(path, d, 1, 2);
            auto k1 = slot(path, d, prem[0], d.ints[0]), k2 = slot(path, d, prem[0], d.ints[1]);
            if (k1 == k2) fail(path, d, "same position twice");
            auto a = prem[0][k1], b = prem[0][k2];
            if (a.index != b.index) fail(path, d, "premise indexes differ");
            Sequent s = erase(erase(prem[0], std::max(k1, k2)), std::min(k1, k2));
            if (r == "par") {
                s.push_back({par(a.formula, b.formula), a.index});
            } else {
                if (a.formula->c != Conn::Wn || !equal(a.formula, b.formula)) fail(path, d, "contraction needs two equal why-not formulas");
                s.push_back(a);
            }
            return s;
        }
        if (r == "forall") {
            arity(path, d, 1, 1);
            if (d.var.empty()) fail(path, d, "missing variable");
            auto k = slot(path, d, prem[0], d.ints[0]);
            for (std::size_t i = 0; i < prem[0].size(); ++i)
                if (i != k && occursFree(prem[0][i].formula, d.var)) fail(path, d, d.var + " free in the context");
            auto a = prem[0][k];
            Sequent s = erase(prem[0], k);
            s.push_back({forall(d.var, a.formula), a.index});
            return s;
        }
        if (r == "exists") {
            arity(path, d, 1, 1);
            if (d.var.empty() || d.formulas.size() != 2) fail(path, d, "expects a variable, a body and a witness");
            auto k = slot(path, d, prem[0], d.ints[0]);
            auto a = prem[0][k];
            formulaOk(path, d, d.formulas[1]);
            if (!equal(cansubst(d.formulas[0], d.formulas[1], d.var), a.formula)) fail(path, d, "premise is not the stated instance");
            Sequent s = erase(prem[0], k);
            s.push_back({exists(d.var, d.formulas[0]), a.index});
            return s;
        }
        if (r == "der" || r == "parg") {
            arity(path, d, 1, 1);
            if (r == "parg" && rs == RuleSet::ML40) fail(path, d, "no paragraph rule in mL40");
            auto k = slot(path, d, prem[0], d.ints[0]);
            auto a = prem[0][k];
            Sequent s = erase(prem[0], k);
            s.push_back({r == "der" ? wn(a.formula) : parg(a.formula), a.index - 1});
            return s;
        }
        if (r == "weak") {
            arity(path, d, 1, 1);
            if (d.formulas.size() != 1) fail(path, d, "expects a formula");
            formulaOk(path, d, d.formulas[0]);
            Sequent s = prem[0];
            s.push_back({wn(d.formulas[0]), d.ints[0]});
            return s;
        }
        if (r == "prom") {
            if (rs != RuleSet::ML3) fail(path, d, "ordinary promotion is not a rule of " + std::string(ruleSetName(rs)));
            arity(path, d, 1, 1);
            auto k = slot(path, d, prem[0], d.ints[0]);
            auto a = prem[0][k];
            Sequent s = erase(prem[0], k);
            for (auto& c : s)
                if (c.formula->c != Conn::Wn) fail(path, d, "context formula " + show(c.formula) + " is not a why-not");
            s.push_back({oc(a.formula), a.index - 1});
            return s;
        }
        if (r == "lprom") {
            if (rs == RuleSet::ML3) fail(path, d, "light promotion is not a rule of mL3");
            arity(path, d, 1, 1);
            auto k = slot(path, d, prem[0], d.ints[0]);
            if (prem[0].size() > 2) fail(path, d, "more than one context formula");
            auto a = prem[0][k];
            Sequent s = erase(prem[0], k);
            if (!s.empty()) s[0] = {wn(s[0].formula), s[0].index - 1};
            s.push_back({oc(a.formula), a.index - 1});
            return s;
        }
        fail(path, d, "unknown rule");
    }
};

Proof build(const Derivation& d, RuleSet rs) {
    const std::string& r = d.rule;
    auto k = [&](std::size_t i) { return static_cast<std::size_t>(d.ints.at(i)); };
    Mode m = rs == RuleSet::ML40 ? Mode::Typed0 : Mode::Typed;
    if (r == "ax") {
        if (rs == RuleSet::ML40) return pAx0(d.formulas[0], d.ints.size() == 2 ? static_cast<std::uint64_t>(d.ints[0]) : 0);
        return pAx(d.formulas[0], m);
    }
    if (r == "mix") return pMix(build(d.kids[0], rs), build(d.kids[1], rs));
    if (r == "cut") return pCut(build(d.kids[0], rs), k(0), build(d.kids[1], rs), k(1));
    if (r == "tensor") return pTensor(build(d.kids[0], rs), k(0), build(d.kids[1], rs), k(1));
    Proof p = build(d.kids.at(0), rs);
    if (r == "par") return pPar(std::move(p), k(0), k(1));
    if (r == "ctr") return pCtr(std::move(p), k(0), k(1));
    if (r == "forall") return pForall(std::move(p), k(0), d.var);
    if (r == "exists") return pExists(std::move(p), k(0), d.var, d.formulas[0], d.formulas[1]);
    if (r == "der") return pDer(std::move(p), k(0));
    if (r == "parg") return pParg(std::move(p), k(0));
    if (r == "weak") return pWeak(std::move(p), d.formulas[0]);
    if (r == "prom") return pProm(std::move(p), k(0));
    if (r == "lprom") return pLProm(std::move(p), k(0));
    throw DerivationError("unknown rule " + r);
}

}

Sequent checkDerivation(const Derivation& d, RuleSet rs) { return Checker{rs}.run(d, ""); }

bool isProper(const Sequent& s) {
    for (auto& f : s)
        if (f.index != s.front().index) return false;
    return true;
}

Proof elaborateProof(const Derivation& d, RuleSet rs) {
    checkDerivation(d, rs);
    return build(d, rs);
}

Net elaborate(const Derivation& d, RuleSet rs) { return elaborateProof(d, rs).finish(); }

Derivation parseDerivation(const std::string& text) {
    struct Line {
        int indent;
        Derivation d;
        int no;
    };
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        auto c = raw.find("//");
        if (c != std::string::npos) raw = raw.substr(0, c);
        std::size_t i = 0;
        while (i < raw.size() && raw[i] == ' ') ++i;
        if (raw.find_first_not_of(" \t\r", i) == std::string::npos) continue;
        Line L{static_cast<int>(i), {}, no};
        auto fail = [&](const std::string& m) { throw ParseError("derivation line " + std::to_string(no) + ": " + m); };
        bool first = true;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            if (raw[i] == '"') {
                auto j = raw.find('"', i + 1);
                if (j == std::string::npos) fail("unterminated formula");
                L.d.formulas.push_back(parseFormula(raw.substr(i + 1, j - i - 1)));
                i = j + 1;
                continue;
            }
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
            std::string tok = raw.substr(i, j - i);
            i = j;
            if (first) {
                L.d.rule = tok;
                first = false;
            } else if (std::isdigit(static_cast<unsigned char>(tok[0])) || (tok[0] == '-' && tok.size() > 1)) {
                L.d.ints.push_back(std::stol(tok));
            } else {
                if (!L.d.var.empty()) fail("more than one variable argument");
                L.d.var = tok;
            }
        }
        lines.push_back(L);
    }
    if (lines.empty()) throw ParseError("empty derivation");
    std::size_t pos = 0;
    std::function<Derivation(int)> tree = [&](int indent) {
        Line& L = lines[pos++];
        Derivation d = L.d;
        if (pos < lines.size() && lines[pos].indent > indent) {
            int ci = lines[pos].indent;
            while (pos < lines.size() && lines[pos].indent == ci) d.kids.push_back(tree(ci));
            if (pos < lines.size() && lines[pos].indent > indent)
                throw ParseError("derivation line " + std::to_string(lines[pos].no) + ": inconsistent indentation");
        }
        return d;
    };
    Derivation d = tree(lines[0].indent);
    if (pos != lines.size()) throw ParseError("derivation line " + std::to_string(lines[pos].no) + ": trailing lines");
    return d;
}

std::string printDerivation(const Derivation& d) {
    std::ostringstream o;
    std::function<void(const Derivation&, int)> go = [&](const Derivation& x, int ind) {
        o << std::string(static_cast<std::size_t>(ind), ' ') << x.rule;
        if (x.rule == "weak" || x.rule == "ax") {
            for (auto& f : x.formulas) o << " \"" << show(f) << "\"";
            for (long v : x.ints) o << " " << v;
        } else {
            for (long v : x.ints) o << " " << v;
            if (!x.var.empty()) o << " " << x.var;
            for (auto& f : x.formulas) o << " \"" << show(f) << "\"";
        }
        o << "\n";
        for (auto& k : x.kids) go(k, ind + 2);
    };
    go(d, 0);
    return o.str();
}

std::string showSequent(const Sequent& s) {
    std::string r = "|-";
    for (std::size_t i = 0; i < s.size(); ++i) r += (i ? ", " : " ") + show(s[i].formula) + "^" + std::to_string(s[i].index);
    return r;
}

}
