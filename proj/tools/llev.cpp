#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "llev/bounds.hpp"
#include "llev/corpus.hpp"
#include "llev/correctness.hpp"
#include "llev/derivation.hpp"
#include "llev/leveling.hpp"
#include "llev/metrics.hpp"
#include "llev/strategy.hpp"
#include "llev/systems.hpp"
#include "llev/translate.hpp"

using namespace llev;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string format = "text";
    std::string out;
    std::string rules = "ml4";
};

RuleSet ruleSet(const std::string& s) {
    if (s == "ml3") return RuleSet::ML3;
    if (s == "ml4") return RuleSet::ML4;
    if (s == "ml40") return RuleSet::ML40;
    throw UsageError("unknown rule set " + s);
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream o;
        o << std::cin.rdbuf();
        return o.str();
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream o;
    o << in.rdbuf();
    return o.str();
}

bool looksLikeNet(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto c = line.find("//");
        if (c != std::string::npos) line = line.substr(0, c);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        return kw == "mode" || kw == "edge" || kw == "link" || kw == "box";
    }
    return true;
}

// corpus:NAME, a net text file, or a derivation script
Net load(const std::string& input, const Common& c, std::string* sequent = nullptr) {
    if (input.rfind("corpus:", 0) == 0) {
        try {
            return corpusNet(input.substr(7));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    std::string text = slurp(input);
    if (looksLikeNet(text)) return fromText(text);
    RuleSet rs = ruleSet(c.rules);
    Derivation d = parseDerivation(text);
    Sequent s = checkDerivation(d, rs);
    if (sequent) *sequent = showSequent(s);
    return elaborate(d, rs);
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream o(c.out);
    if (!o) throw UsageError("cannot write " + c.out);
    o << text;
}

std::string boundStr(const std::optional<BigInt>& b) { return b ? b->str() : "inf"; }

std::string yes(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------- verbs

int cmdParse(const std::string& input, const Common& c) {
    std::string seq;
    Net n = load(input, c, &seq);
    auto v = n.validate();
    if (c.format == "json") {
        json j = json::parse(toJson(n));
        if (!seq.empty()) j["sequent"] = seq;
        j["violations"] = json::array();
        for (auto& x : v) j["violations"].push_back({{"what", x.what}, {"link", x.link}, {"edge", x.edge}});
        emit(c, j.dump(2));
    } else {
        std::string t = toText(n);
        if (!seq.empty()) t = "// " + seq + "\n" + t;
        emit(c, t);
    }
    for (auto& x : v) std::cerr << "violation: " << x.what << " (link " << x.link << ", edge " << x.edge << ")\n";
    return v.empty() ? 0 : 1;
}

int cmdCheck(const std::string& input, const Common& c) {
    Net n = load(input, c);
    auto v = n.validate();
    CorrectnessResult cr;
    if (v.empty()) cr = isCorrect(n);
    bool valid = v.empty();
    bool idx = valid && solveIndexing(n, IndexMode::Full).ok;
    bool weak = valid && solveIndexing(n, IndexMode::Weak).ok;
    const char* verdict = !valid ? "n/a"
                          : cr.verdict == Verdict::Correct   ? "yes"
                          : cr.verdict == Verdict::Incorrect ? "no"
                                                             : "inconclusive";
    if (c.format == "json") {
        json j{{"valid", valid}, {"correct", verdict}, {"indexable", idx}, {"weakIndexable", weak}};
        if (!cr.detail.empty()) j["detail"] = cr.detail;
        if (!cr.switching.empty()) j["switching"] = cr.switching;
        emit(c, j.dump(2));
    } else {
        std::ostringstream o;
        o << "valid: " << yes(valid) << "\ncorrect: " << verdict << "\nindexable: " << yes(idx)
          << "\nweakly indexable: " << yes(weak) << "\n";
        if (!cr.detail.empty()) o << "detail: " << cr.detail << "\n";
        emit(c, o.str());
    }
    for (auto& x : v) std::cerr << "violation: " << x.what << " (link " << x.link << ", edge " << x.edge << ")\n";
    return valid && cr.verdict != Verdict::Incorrect ? 0 : 1;
}

int cmdIndex(const std::string& input, const Common& c, bool weakMode) {
    Net n = load(input, c);
    Indexing I = weakMode ? canonicalize(n, solveIndexing(n, IndexMode::Weak)) : canonicalIndexing(n);
    if (!I.ok) {
        std::cerr << "not indexable: " << I.detail << "\n";
        if (!I.conflict.empty()) {
            std::cerr << "conflict cycle:";
            for (int e : I.conflict) std::cerr << " " << e;
            std::cerr << "\n";
        }
        return 1;
    }
    if (c.format == "json") {
        json j = json::object();
        for (auto& [e, v] : I.idx) j[std::to_string(e)] = v;
        emit(c, j.dump(2));
    } else {
        std::ostringstream o;
        for (auto& [e, v] : I.idx) o << "edge " << e << ": " << v << "\n";
        o << "level: " << netLevel(n, I) << "\n";
        emit(c, o.str());
    }
    return 0;
}

int cmdClassify(const std::string& input, const Common& c, bool lll) {
    Net n = load(input, c);
    auto r = classify(n, lll);
    if (c.format == "json") {
        emit(c, reportJson(r));
    } else {
        std::ostringstream o;
        o << "valid: " << yes(r.validNet) << "\nproof net: " << yes(r.isProofNet)
          << (r.correctnessInconclusive ? " (inconclusive)" : "") << "\nindexable: " << yes(r.indexable)
          << "\nweakly indexable: " << yes(r.weakIndexable) << "\nlight: " << yes(r.lightness)
          << "\nmELL: " << yes(r.isMELL) << "\nmL3: " << yes(r.isML3) << "\nmL4: " << yes(r.isML4)
          << "\nmL40: " << yes(r.isML40) << "\nlevel: " << r.level << "\ndepth: " << r.depth << "\nsize: " << r.size
          << "\n";
        if (lll) o << "LLL image: " << yes(r.lllImage) << "\n";
        if (!r.witness.empty()) o << "witness: " << r.witness << "\n";
        emit(c, o.str());
    }
    return r.isProofNet ? 0 : 1;
}

int cmdReduce(const std::string& input, const Common& c, const std::string& strategy, std::uint64_t maxSteps,
              const std::string& traceFile, const std::string& metrics) {
    Net n = load(input, c);
    ReduceOptions opt;
    if (strategy == "round") opt.strategy = Strategy::Round;
    else if (strategy == "any") opt.strategy = Strategy::Any;
    else throw UsageError("unknown strategy " + strategy);
    if (metrics != "all" && metrics != "cheap") throw UsageError("unknown metrics mode " + metrics);
    opt.fullMetrics = metrics == "all";
    opt.maxSteps = maxSteps;
    auto r = roundByRound(n, opt);
    if (!traceFile.empty()) {
        std::ofstream t(traceFile);
        if (!t) throw UsageError("cannot write " + traceFile);
        t << traceJson(r.trace) << "\n";
    }
    if (c.format == "json") {
        json j{{"steps", r.trace.steps.size()},
               {"rounds", r.trace.rounds().size()},
               {"capExceeded", r.trace.capExceeded},
               {"normal", json::parse(toJson(r.normal))}};
        emit(c, j.dump(2));
    } else {
        std::ostringstream o;
        o << "// " << r.trace.steps.size() << " steps, " << r.trace.rounds().size() << " rounds"
          << (r.trace.capExceeded ? ", step cap reached" : "") << "\n"
          << toText(r.normal);
        emit(c, o.str());
    }
    return r.trace.capExceeded ? 1 : 0;
}

int cmdTranslate(const std::string& input, const Common& c, const std::string& to) {
    Net n = load(input, c);
    Net t;
    if (to == "l40") t = trzero(n);
    else if (to == "l4") t = trone(n);
    else if (to == "erased") t = erase(n);
    else if (to == "untyped") t = forget(n);
    else throw UsageError("unknown target " + to);
    emit(c, c.format == "json" ? toJson(t) : toText(t));
    return 0;
}

int cmdCorpus(const std::string& name, const Common& c) {
    if (name.empty()) {
        auto names = corpusNames();
        if (c.format == "json") {
            emit(c, json(names).dump(2));
        } else {
            std::string s;
            for (auto& x : names) s += x + "\n";
            emit(c, s);
        }
        return 0;
    }
    Net n;
    try {
        n = corpusNet(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    emit(c, c.format == "json" ? toJson(n) : toText(n));
    return 0;
}

// ---------------------------------------------------------------- bench

struct BenchRecord {
    std::string name;
    long s = 0, l = 0, r = 0;
    std::size_t steps = 0;
    std::string bound;
    std::vector<int> roundSizes;
    double ms = 0;
    std::vector<std::string> violations;
};

struct BenchEntry {
    std::string name;
    std::function<Net()> make;
};

BenchRecord runEntry(const std::string& suite, const BenchEntry& e, std::uint64_t maxSteps) {
    BenchRecord rec;
    rec.name = e.name;
    auto t0 = std::chrono::steady_clock::now();
    Net n = e.make();
    auto rep = classify(n);
    auto I = canonicalIndexing(n);
    rec.s = rep.size;
    rec.l = rep.level;
    rec.r = I.ok ? relDepth(n, I) : 0;
    bool elementary = suite == "theta" || suite == "random-l3";
    auto bound = elementary ? elemBound(rec.l, rec.s) : polyBound(rec.l, rec.s, rec.r);
    rec.bound = boundStr(bound);
    auto fail = [&](const std::string& m) { rec.violations.push_back(m); };

    ReduceOptions opt;
    opt.maxSteps = maxSteps;
    opt.fullMetrics = !elementary;
    std::size_t k = 0;
    opt.onStep = [&](const Net& before, const Net& after, const StepRecord& s) {
        std::string at = " at step " + std::to_string(k++) + " (cut " + std::to_string(s.cut) + ")";
        std::string why;
        if (!residueLevelsStable(before, after, &why, s.cut)) fail("residue levels moved" + at + ": " + why);
        if (!isCorrect(after).ok()) fail("reduct is not correct" + at);
    };
    auto red = roundByRound(n, opt);
    rec.steps = red.trace.steps.size();
    if (red.trace.capExceeded) fail("step cap reached");
    if (!within(rec.steps, bound)) fail("steps above the bound");

    Snapshot prev = red.trace.initial;
    for (std::size_t i = 0; i < red.trace.steps.size(); ++i) {
        auto& s = red.trace.steps[i];
        std::string at = " at step " + std::to_string(i);
        if (compareWeights(s.after.weight, prev.weight) >= 0) fail("weight did not decrease" + at);
        if (s.after.level > prev.level) fail("level increased" + at);
        if (!elementary && s.after.relDepth > prev.relDepth) fail("relative depth increased" + at);
        prev = s.after;
    }
    for (auto& round : red.trace.rounds()) {
        rec.roundSizes.push_back(round.sizeAfter);
        auto cap = elementary ? sizeBoom(round.sizeBefore) : sizeBound(round.sizeBefore, rec.r);
        if (round.contractive && !within(round.sizeAfter, cap))
            fail("round at level " + std::to_string(round.level) + " grew past the size bound");
    }

    if (suite == "runningex") {
        Net ex = runningEx();
        auto p = runningExParts(ex);
        std::set<int> origins;
        for (int l : ex.content(p.B)) origins.insert(ex.link(l).origin);
        std::map<int, long> left;
        for (auto& [id, l] : red.normal.links)
            if (origins.count(l.origin)) left[l.origin]++;
        for (int o : origins)
            if (left[o] != 8)
                fail("B content link " + std::to_string(o) + " has " + std::to_string(left[o]) +
                     " residues in the normal form, expected 8");
    }
    rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::vector<BenchEntry> suiteEntries(const std::string& suite, unsigned maxBits, unsigned count, std::uint64_t seed) {
    std::vector<BenchEntry> v;
    if (suite == "strings") {
        for (StringFlavor f : {StringFlavor::SE, StringFlavor::SP, StringFlavor::SPprime, StringFlavor::S0}) {
            for (unsigned len = 0; len <= maxBits; ++len) {
                // all words up to 8 bits, 64 sampled ones above
                std::vector<std::string> words;
                if (len <= 8) {
                    for (unsigned w = 0; w < (1u << len); ++w) {
                        std::string s;
                        for (unsigned i = 0; i < len; ++i) s += (w >> (len - 1 - i)) & 1 ? '1' : '0';
                        words.push_back(s);
                    }
                } else {
                    std::mt19937_64 rng(seed + len);
                    for (int k = 0; k < 64; ++k) {
                        std::string s;
                        for (unsigned i = 0; i < len; ++i) s += rng() & 1 ? '1' : '0';
                        words.push_back(s);
                    }
                }
                for (auto& w : words)
                    v.push_back({std::string("string-") + flavorName(f) + "-" + w, [w, f] { return buildString(w, f); }});
            }
        }
    } else if (suite == "theta") {
        for (unsigned k = 1; k <= 3; ++k) v.push_back({"theta-" + std::to_string(k), [k] { return buildTheta(k); }});
    } else if (suite == "runningex") {
        v.push_back({"running", [] { return runningEx(); }});
    } else if (suite == "random-l3" || suite == "random-l4") {
        RuleSet rs = suite == "random-l3" ? RuleSet::ML3 : RuleSet::ML4;
        std::mt19937_64 rng(seed);
        for (unsigned k = 0; k < count; ++k) {
            Net n = elaborate(randomDerivation(rs, rng), rs);
            v.push_back({suite + "-" + std::to_string(k), [n] { return n; }});
        }
    } else {
        throw UsageError("unknown suite " + suite);
    }
    return v;
}

int cmdBench(const std::string& suite, const Common& c, unsigned maxBits, unsigned count, std::uint64_t seed,
             std::uint64_t maxSteps, unsigned jobs) {
    auto entries = suiteEntries(suite, maxBits, count, seed);
    std::vector<BenchRecord> recs(entries.size());
    std::atomic<std::size_t> next{0};
    std::mutex errMu;
    std::vector<std::string> errors;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < entries.size();) {
            try {
                recs[i] = runEntry(suite, entries[i], maxSteps);
            } catch (const std::exception& e) {
                recs[i].name = entries[i].name;
                recs[i].violations.push_back(e.what());
            }
        }
    };
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    int bad = 0;
    if (c.format == "json") {
        json a = json::array();
        for (auto& r : recs) {
            a.push_back({{"name", r.name},
                         {"s", r.s},
                         {"l", r.l},
                         {"r", r.r},
                         {"steps", r.steps},
                         {"bound", r.bound},
                         {"roundSizes", r.roundSizes},
                         {"ms", r.ms},
                         {"violations", r.violations}});
        }
        emit(c, json{{"schema", "llev-bench/1"}, {"suite", suite}, {"records", a}}.dump(2));
    } else {
        std::ostringstream o;
        for (auto& r : recs) {
            o << r.name << "  s=" << r.s << " l=" << r.l << " r=" << r.r << " steps=" << r.steps
              << " bound=" << (r.bound.size() > 24 ? r.bound.substr(0, 20) + "...(" + std::to_string(r.bound.size()) + " digits)" : r.bound)
              << " ms=" << static_cast<long>(r.ms) << (r.violations.empty() ? "" : "  VIOLATED") << "\n";
        }
        emit(c, o.str());
    }
    for (auto& r : recs) {
        if (r.violations.empty()) continue;
        ++bad;
        for (auto& v : r.violations) std::cerr << r.name << ": " << v << "\n";
    }
    std::cerr << recs.size() << " records, " << bad << " with violations\n";
    return bad ? 1 : 0;
}

}

int main(int argc, char** argv) {
    CLI::App app{"llev: proof nets with levels"};
    app.require_subcommand(1);
    Common c;
    auto common = [&](CLI::App* s) {
        s->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        s->add_option("--out", c.out, "write output to FILE");
        s->add_option("--rules", c.rules, "rule set for derivation scripts")->check(CLI::IsMember({"ml3", "ml4", "ml40"}));
    };
    std::string input;
    auto withInput = [&](const char* name, const char* desc) {
        auto s = app.add_subcommand(name, desc);
        s->add_option("input", input, "net file, derivation script, - or corpus:NAME")->required();
        common(s);
        return s;
    };
    auto sParse = withInput("parse", "read and validate a net or derivation");
    auto sCheck = withInput("check", "validity, correctness and indexability");
    auto sIndex = withInput("index", "canonical indexes per edge");
    bool weakIdx = false;
    sIndex->add_flag("--weak", weakIdx, "drop the equal-conclusions constraint");
    auto sClassify = withInput("classify", "system membership report");
    bool lll = false;
    sClassify->add_flag("--lll", lll, "also test for an LLL image");
    auto sReduce = withInput("reduce", "normalize round by round");
    std::string strategy = "round", traceFile, metrics = "all";
    std::uint64_t maxSteps = 10000000;
    sReduce->add_option("--strategy", strategy, "round or any");
    sReduce->add_option("--max-steps", maxSteps);
    sReduce->add_option("--trace", traceFile, "write the trace JSON to FILE");
    sReduce->add_option("--metrics", metrics, "all or cheap");
    auto sTranslate = withInput("translate", "translate between systems");
    std::string to;
    sTranslate->add_option("--to", to, "l40, l4, erased or untyped")->required();

    auto sCorpus = app.add_subcommand("corpus", "print a named net, or list the names");
    std::string corpusName;
    sCorpus->add_option("name", corpusName);
    common(sCorpus);

    auto sBench = app.add_subcommand("bench", "check the bounds on a suite of nets");
    std::string suite;
    unsigned maxBits = 8, count = 100, jobs = 0;
    std::uint64_t seed = 1;
    sBench->add_option("--suite", suite)
        ->required()
        ->check(CLI::IsMember({"strings", "theta", "runningex", "random-l3", "random-l4"}));
    sBench->add_option("--max-bits", maxBits, "longest word in the strings suite");
    sBench->add_option("--count", count, "nets in a random suite");
    sBench->add_option("--seed", seed);
    sBench->add_option("--max-steps", maxSteps);
    sBench->add_option("--jobs", jobs, "worker threads (0: one per core)");
    common(sBench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*sParse) return cmdParse(input, c);
        if (*sCheck) return cmdCheck(input, c);
        if (*sIndex) return cmdIndex(input, c, weakIdx);
        if (*sClassify) return cmdClassify(input, c, lll);
        if (*sReduce) return cmdReduce(input, c, strategy, maxSteps, traceFile, metrics);
        if (*sTranslate) return cmdTranslate(input, c, to);
        if (*sCorpus) return cmdCorpus(corpusName, c);
        if (*sBench) return cmdBench(suite, c, maxBits, count, seed, maxSteps, jobs);
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const DerivationError& e) {
        std::cerr << "derivation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
