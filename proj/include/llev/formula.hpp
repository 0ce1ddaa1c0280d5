#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace llev {

enum class Conn : std::uint8_t { Atom, NegAtom, Tensor, Par, Oc, Wn, Forall, Exists, Parg };

struct Formula;
using F = std::shared_ptr<const Formula>;

// Locally nameless: bound atoms carry a de Bruijn index in `bvar`, free atoms a name.
// Binders keep `name` only as a printing hint.
struct Formula {
    Conn c = Conn::Atom;
    std::string name;
    int bvar = -1;
    std::uint64_t w = 0;
    F l, r;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

F atom(const std::string& x, std::uint64_t w = 0);
F natom(const std::string& x, std::uint64_t w = 0);
F tensor(F a, F b);
F par(F a, F b);
F oc(F a);
F wn(F a);
F parg(F a);
F parg(F a, unsigned k);
// Abstracts the free variable x of body.
F forall(const std::string& x, F body);
F exists(const std::string& x, F body);
// body is already abstracted (bound index 0 refers to the binder).
F binder(Conn c, const std::string& hint, F body);

bool isAtomic(const F& f);
bool equal(const F& a, const F& b);
inline bool same(const F& a, const F& b) { return equal(a, b); }

F dual(const F& f);
F shift(std::uint64_t p, const F& f);
// Opens a binder body with b: pX becomes shift(p, b), pX^ becomes shift(p, dual b).
F instantiate(const F& body, const F& b);
// Abstracts free x into bound index 0 (inverse of instantiate with atom x).
F abstractVar(const F& f, const std::string& x);
F substitute(const F& f, const F& b, const std::string& x);
F cansubst(const F& f, const F& b, const std::string& x);
F renameFree(const F& f, const std::string& from, const std::string& to);

bool occursFree(const F& f, const std::string& x);
void freeVars(const F& f, std::set<std::string>& out);
bool hasParagraph(const F& f);
bool hasWeight(const F& f);
std::size_t formulaSize(const F& f);

F toForm0(const F& f);
F toForm(const F& f);
F eraseParagraphs(const F& f);
F forgetWeights(const F& f);

std::string show(const F& f);
F parseFormula(const std::string& s);

// A few named types used throughout.
namespace types {
F stringSE();
F stringSP();
F stringSPprime();
F stringS0();
F church();
}

}
