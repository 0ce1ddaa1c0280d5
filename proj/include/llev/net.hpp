#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "llev/formula.hpp"

namespace llev {

enum class LinkKind { Ax, Cut, Tensor, Par, Forall, Exists, Oc, Wn, Flat, Pax, Parg };
enum class Mode { Typed, Typed0, Untyped };

const char* kindName(LinkKind k);
std::optional<LinkKind> kindFromName(const std::string& s);
const char* modeName(Mode m);

struct Edge {
    int id = -1;
    int src = -1;
    int tgt = -1;  // -1: net conclusion
    F label;       // null in untyped mode; discharged iff the source is flat or pax
};

struct Link {
    int id = -1;
    LinkKind kind = LinkKind::Ax;
    std::vector<int> prem;
    std::vector<int> concl;
    std::string eigen;  // forall
    F assoc;            // exists
    int origin = -1;
    // Innermost box whose content holds the link (-1: top level). For border
    // links (oc, pax) this is the box around the bordered box.
    int box = -1;
    // Bordered box for oc (own id) and pax links.
    int owner = -1;
};

struct Violation {
    std::string what;
    int link = -1;
    int edge = -1;
};

class Net {
public:
    Mode mode = Mode::Typed;
    std::map<int, Link> links;
    std::map<int, Edge> edges;
    std::map<int, std::vector<int>> aux;  // oc id -> pax ids
    int nextLink = 0;
    int nextEdge = 0;
    int nextOrigin = 0;
    int nextName = 0;

    // ---- construction primitives
    int newEdge(F label = nullptr);
    int newLink(LinkKind k, std::vector<int> prem, std::vector<int> concl, int box = -1, int origin = -1);
    void removeLink(int id);
    void removeEdge(int id);
    void replacePremise(int link, int oldEdge, int newEdge);
    std::string freshName(const std::string& base);

    // ---- queries
    const Link& link(int id) const;
    Link& link(int id);
    const Edge& edge(int id) const;
    Edge& edge(int id);
    bool hasLink(int id) const { return links.count(id) != 0; }
    bool isBorder(int id) const;
    bool discharged(int e) const;
    int parentBox(int box) const { return link(box).box; }
    std::vector<int> boxes() const;
    // true iff link l lies inside the content of box b (transitively)
    bool inside(int l, int b) const;
    // box c is b or nested inside b
    bool boxWithin(int c, int b) const;
    std::vector<int> content(int b) const;
    std::vector<int> conclusions() const;
    std::vector<int> cuts() const;
    int depthOf(int l) const;
    int boxDepth(int b) const { return depthOf(b); }
    int depth() const;
    int size() const;
    // scope seen from the edge's source / target side
    int srcScope(int e) const;
    int tgtScope(int e) const;
    // the premise edges of whynot w traced to their flat links
    std::vector<int> exponentialBranch(int flat) const;
    int branchWhynot(int flat) const;
    std::vector<int> flatsAbove(int whynot) const;
    std::vector<int> paxCrossings(int flat) const;
    std::set<std::string> eigenvariables() const;

    std::vector<Violation> validate() const;
    bool valid() const { return validate().empty(); }

    void relabelAll(const std::function<F(const F&)>& fn);
    // merges other into this, renumbering; returns map old edge id -> new edge id
    std::map<int, int> absorb(const Net& other, std::map<int, int>* linkMap = nullptr);
};

// k with heavy == shift(k, dual(light)), if any
std::optional<std::uint64_t> axiomShift(const F& heavy, const F& light);

std::string toText(const Net& n);
Net fromText(const std::string& text);
std::string toJson(const Net& n);

}
