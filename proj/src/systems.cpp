#include "llev/systems.hpp"

#include "json.hpp"
#include "llev/metrics.hpp"

namespace llev {

StratResult checkDepthStratification(const Net& n, Strat mode) {
    for (auto& [id, l] : n.links) {
        if (l.kind != LinkKind::Flat) continue;
        auto k = n.paxCrossings(id).size();
        bool bad = mode == Strat::Exact ? k != 1 : k > 1;
        if (bad) return {false, id};
    }
    return {};
}

LightResult checkLightness(const Net& n) {
    for (auto& [b, ps] : n.aux)
        if (ps.size() > 1) return {false, b};
    return {};
}

bool levelEqualsDepth(const Net& n, const Indexing& I, int* offender) {
    for (auto& [id, l] : n.links) {
        if (l.kind == LinkKind::Cut || l.kind == LinkKind::Flat || l.kind == LinkKind::Pax) continue;
        if (linkLevel(n, I, id) != n.depthOf(id)) {
            if (offender) *offender = id;
            return false;
        }
    }
    return true;
}

SystemReport classify(const Net& n, bool asLLLImage) {
    SystemReport r;
    auto viol = n.validate();
    if (!viol.empty()) {
        r.witness = "invalid net: " + viol.front().what;
        return r;
    }
    r.validNet = true;
    r.size = n.size();
    r.depth = n.depth();
    bool empty = n.links.empty();

    auto ds = checkDepthStratification(n, Strat::Exact);
    r.depthStratExact = ds.ok;
    auto dw = checkDepthStratification(n, Strat::Weak);
    r.depthStratWeak = dw.ok;
    auto lt = checkLightness(n);
    r.lightness = lt.ok;

    auto W = solveIndexing(n, IndexMode::Weak);
    r.weakIndexable = W.ok;
    Indexing I;
    if (W.ok) {
        I = canonicalIndexing(n);
        r.indexable = I.ok;
    }

    auto cr = isCorrect(n);
    r.isProofNet = cr.ok();
    r.correctnessInconclusive = cr.verdict == Verdict::Inconclusive;

    int off = -1;
    if (r.indexable) {
        r.level = netLevel(n, I);
        r.levelEqualsDepth = levelEqualsDepth(n, I, &off);
    }
    bool meLL = n.mode != Mode::Typed0;
    r.isML3 = r.isProofNet && r.indexable;
    r.isMELL = meLL && r.isML3 && r.depthStratExact && r.levelEqualsDepth;
    r.isML4 = meLL && r.isML3 && r.depthStratWeak && r.lightness;
    r.isML40 = (n.mode == Mode::Typed0 || empty) && r.isML3 && r.depthStratWeak && r.lightness;
    if (asLLLImage) r.lllImage = r.isML4 && relDepth(n, I) == 0;

    if (!r.isProofNet)
        r.witness = cr.verdict == Verdict::Inconclusive ? "correctness inconclusive: " + cr.detail
                                                        : "not a proof net: " + cr.detail;
    else if (!r.weakIndexable)
        r.witness = "not weakly indexable: " + W.detail;
    else if (!r.indexable)
        r.witness = "conclusions cannot share one index: " + I.detail;
    else if (!r.depthStratWeak)
        r.witness = "flat " + std::to_string(dw.flat) + " crosses more than one auxiliary port";
    else if (!r.lightness)
        r.witness = "box " + std::to_string(lt.box) + " has more than one auxiliary port";
    else if (!r.depthStratExact)
        r.witness = "flat " + std::to_string(ds.flat) + " does not cross exactly one auxiliary port";
    else if (!r.levelEqualsDepth)
        r.witness = "link " + std::to_string(off) + " has level different from its depth";
    return r;
}

std::string reportJson(const SystemReport& r) {
    nlohmann::json j;
    j["validNet"] = r.validNet;
    j["isProofNet"] = r.isProofNet;
    j["correctnessInconclusive"] = r.correctnessInconclusive;
    j["weakIndexable"] = r.weakIndexable;
    j["indexable"] = r.indexable;
    j["depthStratExact"] = r.depthStratExact;
    j["depthStratWeak"] = r.depthStratWeak;
    j["lightness"] = r.lightness;
    j["levelEqualsDepth"] = r.levelEqualsDepth;
    j["isMELL"] = r.isMELL;
    j["isML3"] = r.isML3;
    j["isML4"] = r.isML4;
    j["isML40"] = r.isML40;
    j["lllImage"] = r.lllImage;
    j["level"] = r.level;
    j["depth"] = r.depth;
    j["size"] = r.size;
    j["witness"] = r.witness;
    return j.dump(2);
}

}
