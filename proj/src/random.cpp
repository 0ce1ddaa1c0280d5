#include <algorithm>
#include <set>

#include "llev/corpus.hpp"

namespace llev {

namespace {

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

long uni(std::mt19937_64& rng, long a, long b) { return std::uniform_int_distribution<long>(a, b)(rng); }

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Derivation node(const std::string& r, std::vector<long> ints, std::vector<Derivation> kids) {
    Derivation d;
    d.rule = r;
    d.ints = std::move(ints);
    d.kids = std::move(kids);
    return d;
}

struct Item {
    Derivation d;
    Sequent s;
};

}

F randomFormula(RuleSet rs, std::mt19937_64& rng, int depth) {
    static const std::vector<std::string> names{"X", "Y", "Z"};
    if (depth <= 0 || coin(rng, 0.4)) {
        std::uint64_t w = rs == RuleSet::ML40 && coin(rng, 0.25) ? 1 : 0;
        const std::string& x = pick(rng, names);
        return coin(rng, 0.5) ? atom(x, w) : natom(x, w);
    }
    long c = uni(rng, 0, rs == RuleSet::ML40 ? 5 : 6);
    switch (c) {
    case 0: return tensor(randomFormula(rs, rng, depth - 1), randomFormula(rs, rng, depth - 1));
    case 1: return par(randomFormula(rs, rng, depth - 1), randomFormula(rs, rng, depth - 1));
    case 2: return oc(randomFormula(rs, rng, depth - 1));
    case 3: return wn(randomFormula(rs, rng, depth - 1));
    case 4:
    case 5: {
        F b = randomFormula(rs, rng, depth - 1);
        std::set<std::string> fv;
        freeVars(b, fv);
        if (fv.empty()) return b;
        std::vector<std::string> v(fv.begin(), fv.end());
        return coin(rng, 0.5) ? forall(pick(rng, v), b) : exists(pick(rng, v), b);
    }
    default: return parg(randomFormula(rs, rng, depth - 1));
    }
}

namespace {

long slotOf(const Derivation& d, const F& f, RuleSet rs) {
    Sequent s = checkDerivation(d, rs);
    for (std::size_t q = 0; q < s.size(); ++q)
        if (equal(s[q].formula, f)) return static_cast<long>(q);
    throw DerivationError("no slot " + show(f));
}

}

Derivation etaDerivation(const F& a, long i, RuleSet rs) {
    static int counter = 0;
    switch (a->c) {
    case Conn::Tensor:
    case Conn::Par: {
        bool t = a->c == Conn::Tensor;
        // the tensor of the pair uses the positive side for A*B, the negative one for A|B
        Derivation x = etaDerivation(a->l, i, rs), y = etaDerivation(a->r, i, rs);
        F fx = t ? a->l : dual(a->l), fy = t ? a->r : dual(a->r);
        Derivation d = t ? node("tensor", {slotOf(x, fx, rs), slotOf(y, fy, rs)}, {x, y})
                         : node("tensor", {slotOf(y, fy, rs), slotOf(x, fx, rs)}, {y, x});
        // [x rest, y rest, tensor] resp. [y rest, x rest, tensor]
        return node("par", {1, 0}, {d});
    }
    case Conn::Oc:
    case Conn::Wn: {
        Derivation x = etaDerivation(a->l, i + 1, rs);
        bool o = a->c == Conn::Oc;
        F boxed = o ? a->l : dual(a->l), flat = o ? dual(a->l) : a->l;
        if (rs != RuleSet::ML3) return node("lprom", {slotOf(x, boxed, rs)}, {x});
        Derivation d = node("der", {slotOf(x, flat, rs)}, {x});
        return node("prom", {slotOf(d, boxed, rs)}, {d});
    }
    case Conn::Parg: {
        Derivation x = etaDerivation(a->l, i + 1, rs);
        Derivation d = node("parg", {slotOf(x, a->l, rs)}, {x});
        return node("parg", {slotOf(d, dual(a->l), rs)}, {d});
    }
    case Conn::Forall:
    case Conn::Exists: {
        std::string z = "E" + std::to_string(counter++);
        std::string x = "B" + std::to_string(counter++);
        F inst = instantiate(a->l, atom(z));
        F body = instantiate(a->l, atom(x));
        bool fa = a->c == Conn::Forall;
        Derivation d = etaDerivation(inst, i, rs);
        F exInst = fa ? dual(inst) : inst;
        Derivation e = node("exists", {slotOf(d, exInst, rs)}, {d});
        e.var = x;
        e.formulas = {fa ? dual(body) : body, atom(z)};
        Derivation f = node("forall", {slotOf(e, fa ? inst : dual(inst), rs)}, {e});
        f.var = z;
        return f;
    }
    default: {
        Derivation d = node("ax", {i}, {});
        d.formulas = {a};
        return d;
    }
    }
}

Derivation randomDerivation(RuleSet rs, std::mt19937_64& rng, int ops) {
    std::vector<Item> pool;
    auto add = [&](Derivation d) -> bool {
        try {
            Sequent s = checkDerivation(d, rs);
            pool.push_back({std::move(d), std::move(s)});
            return true;
        } catch (const DerivationError&) {
            return false;
        }
    };
    auto take = [&](std::size_t k) {
        Item it = std::move(pool[k]);
        pool.erase(pool.begin() + static_cast<long>(k));
        return it;
    };
    auto newAx = [&]() {
        F a = randomFormula(rs, rng, 2);
        long i = uni(rng, 0, 2);
        Derivation d = coin(rng, 0.5) ? etaDerivation(a, i, rs) : node("ax", {i}, {});
        if (d.rule == "ax") {
            d.formulas = {a};
            if (rs == RuleSet::ML40 && coin(rng, 0.3)) d.ints = {1, i};
        }
        add(std::move(d));
    };
    auto slotsOf = [](const Item& it, auto pred) {
        std::vector<long> r;
        for (std::size_t k = 0; k < it.s.size(); ++k)
            if (pred(it.s[k])) r.push_back(static_cast<long>(k));
        return r;
    };
    newAx();
    newAx();
    for (int step = 0; step < ops; ++step) {
        long op = uni(rng, 0, 11);
        if (pool.empty() || op == 0) {
            newAx();
            continue;
        }
        std::size_t k = static_cast<std::size_t>(uni(rng, 0, static_cast<long>(pool.size()) - 1));
        const Item it = pool[k];
        long n = static_cast<long>(it.s.size());
        switch (op) {
        case 1:
        case 2: {  // cut against a fresh partner or another pool item
            if (n == 0) break;
            long a = uni(rng, 0, n - 1);
            IndexedFormula f = it.s[static_cast<std::size_t>(a)];
            for (std::size_t j = 0; j < pool.size(); ++j) {
                if (j == k) continue;
                auto c = slotsOf(pool[j], [&](const IndexedFormula& g) { return g.index == f.index && equal(g.formula, dual(f.formula)); });
                if (c.empty()) continue;
                Item x = pool[k], y = pool[j];
                Derivation d = node("cut", {a, pick(rng, c)}, {x.d, y.d});
                pool.erase(pool.begin() + static_cast<long>(std::max(k, j)));
                pool.erase(pool.begin() + static_cast<long>(std::min(k, j)));
                add(std::move(d));
                goto next;
            }
            {
                Item x = take(k);
                // eta partner conclusions: [f, f^] or [f^, f]; find f^
                Derivation e = etaDerivation(f.formula, f.index, rs);
                long pos = slotOf(e, dual(f.formula), rs);
                if (!add(node("cut", {a, pos}, {x.d, e}))) pool.push_back(std::move(x));
            }
            break;
        }
        case 3: {  // tensor with another item
            if (pool.size() < 2 || n == 0) break;
            std::size_t j = static_cast<std::size_t>(uni(rng, 0, static_cast<long>(pool.size()) - 1));
            if (j == k) break;
            long a = uni(rng, 0, n - 1);
            auto c = slotsOf(pool[j], [&](const IndexedFormula& g) { return g.index == it.s[static_cast<std::size_t>(a)].index; });
            if (c.empty()) break;
            Item x = pool[k], y = pool[j];
            Derivation d = node("tensor", {a, pick(rng, c)}, {x.d, y.d});
            if (add(std::move(d))) {
                pool.erase(pool.begin() + static_cast<long>(std::max(k, j)));
                pool.erase(pool.begin() + static_cast<long>(std::min(k, j)));
            }
            break;
        }
        case 4: {  // par
            if (n < 2) break;
            long a = uni(rng, 0, n - 1), b = uni(rng, 0, n - 1);
            if (a == b || it.s[static_cast<std::size_t>(a)].index != it.s[static_cast<std::size_t>(b)].index) break;
            Item x = take(k);
            if (!add(node("par", {a, b}, {x.d}))) pool.push_back(std::move(x));
            break;
        }
        case 5: {  // dereliction, maybe followed by contraction
            if (n == 0) break;
            Item x = take(k);
            long a = uni(rng, 0, n - 1);
            Derivation d = node("der", {a}, {x.d});
            if (!add(d)) {
                pool.push_back(std::move(x));
                break;
            }
            Item& y = pool.back();
            long last = static_cast<long>(y.s.size()) - 1;
            auto same = slotsOf(y, [&](const IndexedFormula& g) { return g.index == y.s.back().index && equal(g.formula, y.s.back().formula); });
            if (same.size() >= 2) {
                Item z = take(pool.size() - 1);
                if (!add(node("ctr", {same.front(), last}, {z.d}))) pool.push_back(std::move(z));
            }
            break;
        }
        case 6: {  // promotion
            if (n == 0) break;
            Item x = take(k);
            bool ok = false;
            if (rs == RuleSet::ML3) {
                auto notWn = slotsOf(x, [](const IndexedFormula& g) { return g.formula->c != Conn::Wn; });
                long a = notWn.size() == 1 ? notWn[0] : (notWn.empty() ? uni(rng, 0, n - 1) : -1);
                if (a >= 0) ok = add(node("prom", {a}, {x.d}));
            } else if (n <= 2) {
                ok = add(node("lprom", {uni(rng, 0, n - 1)}, {x.d}));
            }
            if (!ok) pool.push_back(std::move(x));
            break;
        }
        case 7: {  // paragraph
            if (n == 0 || rs == RuleSet::ML40) break;
            Item x = take(k);
            if (!add(node("parg", {uni(rng, 0, n - 1)}, {x.d}))) pool.push_back(std::move(x));
            break;
        }
        case 8: {  // weakening
            Item x = take(k);
            Derivation d = node("weak", {n ? it.s[0].index : uni(rng, 0, 1)}, {x.d});
            d.formulas = {randomFormula(rs, rng, 1)};
            if (!add(std::move(d))) pool.push_back(std::move(x));
            break;
        }
        case 9: {  // quantifiers
            if (n == 0) break;
            long a = uni(rng, 0, n - 1);
            F f = it.s[static_cast<std::size_t>(a)].formula;
            std::set<std::string> fv;
            freeVars(f, fv);
            if (fv.empty()) break;
            std::string v = pick(rng, std::vector<std::string>(fv.begin(), fv.end()));
            Item x = take(k);
            Derivation d = node(coin(rng, 0.5) ? "forall" : "exists", {a}, {x.d});
            if (d.rule == "forall") {
                d.var = v;
            } else {
                static int counter = 0;
                d.var = "Q" + std::to_string(counter++);
                d.formulas = {renameFree(f, v, d.var), atom(v)};
            }
            if (!add(std::move(d))) pool.push_back(std::move(x));
            break;
        }
        case 10: {  // mix, rarely
            if (pool.size() < 2 || !coin(rng, 0.3)) break;
            Item x = take(0), y = take(0);
            add(node("mix", {}, {x.d, y.d}));
            break;
        }
        default: newAx();
        }
    next:;
    }
    // join the pool and fold the conclusions into one
    while (pool.size() > 1) {
        Item x = take(0), y = take(0);
        add(node("mix", {}, {x.d, y.d}));
    }
    Item it = take(0);
    for (;;) {
        long n = static_cast<long>(it.s.size());
        if (n <= 1) return it.d;
        long hi = 0;
        for (long q = 1; q < n; ++q)
            if (it.s[static_cast<std::size_t>(q)].index > it.s[static_cast<std::size_t>(hi)].index) hi = q;
        long mate = -1;
        for (long q = 0; q < n; ++q)
            if (q != hi && it.s[static_cast<std::size_t>(q)].index == it.s[static_cast<std::size_t>(hi)].index) mate = q;
        Derivation d = mate >= 0 ? node("par", {hi, mate}, {it.d}) : node(rs == RuleSet::ML40 ? "der" : (coin(rng, 0.5) ? "der" : "parg"), {hi}, {it.d});
        it.s = checkDerivation(d, rs);
        it.d = std::move(d);
    }
}

}
