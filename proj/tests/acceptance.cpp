#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "llev/bounds.hpp"
#include "llev/corpus.hpp"
#include "llev/correctness.hpp"
#include "llev/leveling.hpp"
#include "llev/metrics.hpp"
#include "llev/rewrite.hpp"
#include "llev/strategy.hpp"
#include "llev/systems.hpp"
#include "llev/translate.hpp"

using namespace llev;

namespace {

// failures grouped by kind, with the first instance of each
struct Outcome {
    std::vector<std::string> kinds;
    std::map<std::string, std::pair<long, std::string>> failures;
    std::string note;
    bool ok() const { return failures.empty(); }
    void fail(const std::string& kind, const std::string& where = "") {
        auto [it, fresh] = failures.insert({kind, {0, where}});
        if (fresh) kinds.push_back(kind);
        it->second.first++;
    }
    void check(bool c, const std::string& kind, const std::string& where = "") {
        if (!c) fail(kind, where);
    }
    std::string detail() const {
        std::string out;
        for (auto& k : kinds) {
            auto& [count, where] = failures.at(k);
            out += "\n    " + k + ": " + std::to_string(count) + "x" + (where.empty() ? "" : ", first at " + where);
        }
        if (!note.empty()) out = " [" + note + "]" + out;
        return out;
    }
};

struct Shared {
    // failures of criteria 8 and 9, collected while running 5-7
    Outcome stability;
    Outcome correctness;
    long stepsSeen = 0;
};

Shared shared;

std::string str(const BigInt& x) {
    std::ostringstream o;
    o << x;
    return o.str();
}

bool flagOf(const SystemReport& r, RuleSet rs) {
    switch (rs) {
    case RuleSet::ML3: return r.isML3;
    case RuleSet::ML4: return r.isML4;
    case RuleSet::ML40: return r.isML40;
    }
    return false;
}

// criteria 8 and 9 for one step
void stepChecks(const Net& before, const Net& after, int cut, RuleSet rs, const std::string& where) {
    shared.stepsSeen++;
    auto r = classify(after);
    shared.stability.check(flagOf(r, rs), std::string(ruleSetName(rs)) + " flag lost", where);
    std::string why;
    shared.stability.check(residueLevelsStable(before, after, &why, cut), "residue level differs from lift",
                           where + " (" + why + ")");
    auto c = isCorrect(after);
    shared.correctness.check(c.ok(), "incorrect after a step", where + " (" + c.detail + ")");
}

std::vector<long> cutLevels(const Net& n) {
    auto I = canonicalIndexing(n);
    std::vector<long> out;
    for (int c : reducibleCuts(n)) out.push_back(linkLevel(n, I, c));
    return out;
}

bool normalUpTo(const Net& n, long i) {
    for (long l : cutLevels(n))
        if (l <= i) return false;
    return true;
}

bool contractiveAt(const Net& n, long i) {
    auto I = canonicalIndexing(n);
    bool any = false;
    for (int c : reducibleCuts(n)) {
        long l = linkLevel(n, I, c);
        if (l < i) return false;
        if (l == i) {
            if (!isContractive(classifyCut(n, c))) return false;
            any = true;
        }
    }
    return any;
}

bool arborescent(const Net& n) {
    auto o = contractiveOrders(n, canonicalIndexing(n));
    std::map<int, int> preds;
    for (auto& [b, c] : o.precL)
        if (++preds[c] > 1) return false;
    for (auto& [b, c] : o.preceqL)
        if (b != c && o.preceqL.count({c, b})) return false;
    return true;
}

std::vector<Net> randomNets(RuleSet rs, std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<Net> out;
    while (int(out.size()) < count) out.push_back(elaborate(randomDerivation(rs, rng), rs));
    return out;
}

const Snapshot& snapBefore(const Trace& t, std::size_t step) {
    return step == 0 ? t.initial : t.steps[step - 1].after;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
    Outcome o;
    o.check(!solveIndexing(nonIndexable(), IndexMode::Weak).ok, "nonindexable net accepted by the weak solver");
    for (auto [nm, n] : {std::pair{"parg-d1", pargD1()}, std::pair{"parg-d2", pargD2()}}) {
        o.check(solveIndexing(n, IndexMode::Weak).ok, "paragraph net not weak-indexable", nm);
        o.check(!solveIndexing(n, IndexMode::Full).ok, "paragraph net full-indexable", nm);
    }
    Net c1 = roundByRound(pargComposite(1)).normal;
    Net c2 = roundByRound(pargComposite(2)).normal;
    o.check(isomorphic(c1, buildRAp(parg(atom("A")), 0)), "composite 1 normal form is not the expanded axiom");
    o.check(isomorphic(c2, buildRAp(atom("A"), 0)), "composite 2 normal form is not the expanded axiom");
    return o;
}

Outcome criterion2() {
    Outcome o;
    Net n = runningEx();
    auto p = runningExParts(n);
    auto m = boxMetrics(n);
    auto eq = [&](const std::string& what, const BigInt& got, long want) {
        o.check(got == want, what + " = " + str(got) + ", expected " + std::to_string(want));
    };
    eq("Arity(B)", m.arity[p.B], 2);
    eq("Arity(C)", m.arity[p.C], 2);
    eq("Arity(B0)", m.arity[p.B0], 2);
    eq("Arity(D)", m.arity[p.D], 1);
    eq("CtrFact(B)", m.ctrFact[p.B], 4);
    eq("Mult(B)", m.mult[p.B], 8);
    eq("Mult(C)", m.mult[p.C], 4);
    eq("Mult(B0)", m.mult[p.B0], 2);

    auto cl = expStepClasses(n, p.c);
    std::map<int, BigInt> per;
    potSize(n, 0, &per);
    BigInt s1 = 0, s2 = 0;
    for (int l : cl.class1) s1 += per[l];
    for (int l : cl.class2) s2 += per[l];
    eq("class 1 potential size", s1, 16);
    eq("class 2 potential size", s2, 14);

    // residues of B's content: copies made by the exponential steps, then
    // those left in the normal form
    std::set<int> origins;
    for (int l : n.content(p.B)) origins.insert(n.link(l).origin);
    auto count = [&](const Net& x) {
        std::map<int, long> r;
        for (auto& [id, l] : x.links)
            if (origins.count(l.origin)) r[l.origin]++;
        return r;
    };
    std::map<int, long> peak;
    ReduceOptions opt;
    opt.fullMetrics = false;
    opt.onStep = [&](const Net&, const Net& after, const StepRecord&) {
        for (auto [org, k] : count(after)) peak[org] = std::max(peak[org], k);
    };
    Net nf = roundByRound(n, opt).normal;
    auto left = count(nf);
    for (int org : origins) {
        eq("copies of B content link " + std::to_string(org), peak[org], 8);
        eq("B content link " + std::to_string(org) + " in normal form", left[org], 8);
    }
    o.note = "B content copied " + std::to_string(peak[*origins.begin()]) + "x, " +
             std::to_string(left[*origins.begin()]) + " left in normal form";

    Net red = n;
    step(red, p.c);
    o.check(isomorphic(red, runningExRed()), "step on c does not give the reduced example");
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::mt19937_64 rng(3);
    const StringFlavor flavors[] = {StringFlavor::SE, StringFlavor::SP, StringFlavor::SPprime, StringFlavor::S0};
    auto system = [](StringFlavor f, const SystemReport& r) {
        switch (f) {
        case StringFlavor::SE: return r.isMELL;
        case StringFlavor::SP:
        case StringFlavor::SPprime: return r.isML4;
        case StringFlavor::S0: return r.isML40;
        }
        return false;
    };
    long checked = 0;
    std::map<std::string, long> sizeOffset;
    for (int len = 0; len <= 16; ++len) {
        // exhaustive up to length 8, 64 sampled words per longer length
        std::vector<std::string> words;
        if (len <= 8) {
            for (long v = 0; v < (1L << len); ++v) {
                std::string w;
                for (int b = len - 1; b >= 0; --b) w += (v >> b & 1) ? '1' : '0';
                words.push_back(w);
            }
        } else {
            for (int k = 0; k < 64; ++k) {
                std::string w;
                for (int b = 0; b < len; ++b) w += (rng() & 1) ? '1' : '0';
                words.push_back(w);
            }
        }
        for (auto& w : words)
            for (auto f : flavors) {
                Net n = buildString(w, f);
                std::string fl = flavorName(f);
                std::string tag = fl + " \"" + w + "\"";
                sizeOffset[fl] = n.size() - 3 * len;
                o.check(n.size() == 3 * len + 6, fl + " size is not 3n+6", tag + ": " + std::to_string(n.size()));
                auto r = classify(n);
                o.check(r.level == 1, fl + " level is not 1", tag + ": " + std::to_string(r.level));
                o.check(relDepth(n) == 0, fl + " relative depth is not 0", tag);
                o.check(system(f, r), fl + " rejected by its system", tag + " (" + r.witness + ")");
                o.check(readString(n, f) == w, fl + " read back differently", tag);
                checked++;
            }
    }
    o.note = std::to_string(checked) + " nets; sizes";
    for (auto& [fl, off] : sizeOffset) o.note += " " + fl + "=3n+" + std::to_string(off);
    return o;
}

Outcome criterion4() {
    Outcome o;
    const long want[] = {0, 2, 4, 16};
    for (unsigned k = 1; k <= 3; ++k) {
        Net t = buildTheta(k);
        auto r = classify(t);
        std::string tag = "theta_" + std::to_string(k);
        o.check(r.depth == 1, "depth is not 1", tag + ": " + std::to_string(r.depth));
        o.check(r.level == long(k), "level is not n", tag + ": " + std::to_string(r.level));
        o.check(r.isML3, "not mL3", tag);
        o.check(!r.isMELL, "in mELL", tag);
        ReduceOptions opt;
        opt.fullMetrics = false;
        auto red = roundByRound(t, opt);
        long got = readChurchNat(red.normal);
        o.check(got == want[k], "wrong numeral", tag + ": " + std::to_string(got));
        o.check(within(red.trace.steps.size(), elemBound(r.level, r.size)), "steps above the elementary bound", tag);
        o.note += (k > 1 ? "; " : "") + tag + " -> " + std::to_string(got) + " in " +
                  std::to_string(red.trace.steps.size()) + " steps";
    }
    return o;
}

Outcome criterion5() {
    Outcome o;
    auto nets = randomNets(RuleSet::ML3, 5, 500);
    long steps = 0;
    for (std::size_t k = 0; k < nets.size(); ++k) {
        const Net& n = nets[k];
        std::string tag = "net " + std::to_string(k);
        auto r = classify(n);
        if (!r.isML3) {
            o.fail("generated net outside mL3", tag);
            continue;
        }
        ReduceOptions opt;
        opt.fullMetrics = false;
        long prevLevel = r.level;
        Weight prevW = weight(n);
        std::size_t idx = 0;
        opt.onStep = [&](const Net& before, const Net& after, const StepRecord& rec) {
            std::string at = tag + " step " + std::to_string(idx++);
            o.check(compareWeights(rec.after.weight, prevW) < 0, "weight did not decrease", at);
            o.check(rec.after.level <= prevLevel, "level increased", at);
            prevW = rec.after.weight;
            prevLevel = rec.after.level;
            stepChecks(before, after, rec.cut, RuleSet::ML3, "mL3 " + at);
        };
        auto red = roundByRound(n, opt);
        const Trace& t = red.trace;
        steps += t.steps.size();
        for (auto& rd : t.rounds()) {
            const Snapshot& s = snapBefore(t, rd.first);
            long si = s.sizes.count(rd.level) ? s.sizes.at(rd.level) : 0;
            o.check(long(rd.steps) <= si, "round longer than S_i", tag + " level " + std::to_string(rd.level));
            if (rd.contractive)
                o.check(within(rd.sizeAfter, sizeBoom(rd.sizeBefore)), "contractive round above the size cap", tag);
        }
        o.check(within(t.steps.size(), elemBound(r.level, r.size)), "steps above the elementary bound", tag);
    }
    o.note = std::to_string(nets.size()) + " nets, " + std::to_string(steps) + " steps";
    return o;
}

Outcome criterion6() {
    Outcome o;
    auto nets = randomNets(RuleSet::ML4, 6, 500);
    long steps = 0;
    for (std::size_t k = 0; k < nets.size(); ++k) {
        const Net& n = nets[k];
        std::string tag = "net " + std::to_string(k);
        auto r = classify(n);
        if (!r.isML4) {
            o.fail("generated net outside mL4", tag);
            continue;
        }
        auto normalPot = [&](const Net& x, const std::string& at) {
            long lvl = netLevel(x);
            for (long i = 0; i <= lvl; ++i)
                if (normalUpTo(x, i))
                    o.check(potSize(x, i) == x.size(), "potential size differs from size on a normal net",
                            at + " level " + std::to_string(i));
        };
        o.check(arborescent(n), "light order not arborescent", tag);
        normalPot(n, tag);
        int prevRel = relDepth(n);
        std::size_t idx = 0;
        ReduceOptions opt;
        opt.onStep = [&](const Net& before, const Net& after, const StepRecord& rec) {
            std::string at = tag + " step " + std::to_string(idx++);
            o.check(rec.after.relDepth <= prevRel, "relative depth increased", at);
            prevRel = rec.after.relDepth;
            if (isContractive(rec.cls) && contractiveAt(before, rec.level))
                o.check(potSize(after, rec.level) < potSize(before, rec.level), "potential size did not decrease", at);
            o.check(arborescent(after), "light order not arborescent", at);
            normalPot(after, at);
            stepChecks(before, after, rec.cut, RuleSet::ML4, "mL4 " + at);
        };
        auto red = roundByRound(n, opt);
        const Trace& t = red.trace;
        steps += t.steps.size();
        for (auto& rd : t.rounds()) {
            const Snapshot& s = snapBefore(t, rd.first);
            o.check(within(rd.sizeAfter, sizeBound(rd.sizeBefore, s.relDepth)), "round above the size bound",
                    tag + " level " + std::to_string(rd.level));
        }
        o.check(within(t.steps.size(), polyBound(r.level, r.size, relDepth(n))), "steps above the polynomial bound", tag);
    }
    o.note = std::to_string(nets.size()) + " nets, " + std::to_string(steps) + " steps";
    return o;
}

// step simulation between a typed net and its untyped image
void forgetSim(Outcome& o, const Net& before, const Net& after, int cut, const std::string& at) {
    Net ub = forget(before);
    o.check(reducibleCuts(before) == reducibleCuts(ub), "reducible cuts change when types are forgotten", at);
    if (!ub.hasLink(cut)) return;
    step(ub, cut);
    o.check(isomorphic(ub, forget(after)), "untyped step does not simulate the typed one", at);
}

Outcome criterion7() {
    Outcome o;
    auto ml4 = randomNets(RuleSet::ML4, 71, 100);
    auto ml40 = randomNets(RuleSet::ML40, 72, 100);
    ReduceOptions quiet;
    quiet.fullMetrics = false;
    for (std::size_t k = 0; k < ml4.size(); ++k) {
        const Net& n = ml4[k];
        std::string tag = "mL4 net " + std::to_string(k);
        try {
            Net z = trzero(n);
            o.check(classify(z).isML40, "trzero output outside mL4_0", tag);
            o.check(isomorphic(forget(z), erase(n)), "U(trzero) differs from erase", tag);
            std::size_t idx = 0;
            ReduceOptions opt = quiet;
            opt.onStep = [&](const Net& before, const Net& after, const StepRecord& rec) {
                forgetSim(o, before, after, rec.cut, tag + " step " + std::to_string(idx++));
            };
            Net nf = roundByRound(n, opt).normal;
            Net nfz = roundByRound(z, quiet).normal;
            o.check(isomorphic(forget(nfz), erase(nf)), "first diagram does not commute", tag);
        } catch (const std::exception& e) {
            o.fail("exception", tag + ": " + e.what());
        }
    }
    for (std::size_t k = 0; k < ml40.size(); ++k) {
        const Net& n = ml40[k];
        std::string tag = "mL4_0 net " + std::to_string(k);
        try {
            Net one = trone(n);
            o.check(classify(one).isML4, "trone output outside mL4", tag);
            o.check(isomorphic(trzero(one), etaNormalForm(n)), "trzero(trone) differs from the eta normal form", tag);
            std::size_t idx = 0;
            ReduceOptions opt = quiet;
            opt.onStep = [&](const Net& before, const Net& after, const StepRecord& rec) {
                std::string at = tag + " step " + std::to_string(idx++);
                forgetSim(o, before, after, rec.cut, at);
                stepChecks(before, after, rec.cut, RuleSet::ML40, at);
            };
            Net nf = roundByRound(n, opt).normal;
            Net nfOne = roundByRound(one, quiet).normal;
            o.check(isomorphic(erase(nfOne), forget(etaNormalForm(nf))), "second diagram does not commute", tag);
        } catch (const std::exception& e) {
            o.fail("exception", tag + ": " + e.what());
        }
    }
    std::mt19937_64 rng(73);
    for (int k = 0; k < 1000; ++k) {
        F a = randomFormula(RuleSet::ML40, rng, 4);
        o.check(equal(toForm0(toForm(a)), a), "toForm0 . toForm is not the identity", show(a));
    }
    o.note = "200 nets, 1000 formulas";
    return o;
}

Outcome criterion8() { return shared.stability; }

Outcome criterion9() {
    Outcome o = shared.correctness;
    o.check(!isCorrect(axSelfCut()).ok(), "ax-self-cut accepted");
    return o;
}

}

int main() {
    using clock = std::chrono::steady_clock;
    struct Entry {
        int id;
        const char* what;
        double limit;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> all = {
        {1, "indexability gates", 1, criterion1},
        {2, "worked example gold values", 0, criterion2},
        {3, "string encodings", 10, criterion3},
        {4, "theta tower", 60, criterion4},
        {5, "mL3 strategy invariants", 300, criterion5},
        {6, "mL4 invariants", 300, criterion6},
        {7, "translation diagrams", 300, criterion7},
        {8, "stability", 0, criterion8},
        {9, "correctness preservation", 0, criterion9},
    };
    int failed = 0;
    for (auto& e : all) {
        auto t0 = clock::now();
        Outcome o;
        try {
            o = e.run();
        } catch (const std::exception& ex) {
            o.fail("exception", ex.what());
        }
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        if (e.limit > 0 && secs > e.limit) o.fail("over the time limit");
        if (e.id == 8 || e.id == 9) o.note = std::to_string(shared.stepsSeen) + " steps";
        std::printf("criterion %d %s: %s (%.2f s)%s\n", e.id, e.what, o.ok() ? "PASS" : "FAIL", secs, o.detail().c_str());
        std::fflush(stdout);
        failed += !o.ok();
    }
    return failed ? 1 : 0;
}
