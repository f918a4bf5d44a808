#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cox/system.hpp"
#include "cox/verdict.hpp"

namespace cox {

/// A signed half-space of the Coxeter complex: `root` is the positive root
/// of the wall, `positive` selects the side containing the fundamental
/// chamber C0 (true) or its complement (false).
struct HalfSpace {
  RootVec root;
  bool positive = true;
};

/// A wall: the unordered pair of half-spaces over one positive root, paired
/// with its reflection in normal form. Wall identity == reflection identity.
struct Wall {
  RootVec root;        // positive root
  Element reflection;  // normal form of r_root
};

struct WallHash {
  size_t operator()(const Wall& w) const { return ElementHash{}(w.reflection); }
};
struct WallEq {
  bool operator()(const Wall& a, const Wall& b) const {
    return a.reflection == b.reflection;
  }
};

enum class WallRelation { Equal, Transverse, ParallelDistinct, Perpendicular };
enum class Nesting {
  Equal,
  Subset,           // h strictly inside h'
  Superset,         // h' strictly inside h
  DisjointSides,    // h and h' disjoint
  ExhaustiveUnion,  // complements disjoint: h and h' cover everything
  Crossing          // transverse walls
};

std::string wall_relation_name(WallRelation r);
std::string nesting_name(Nesting n);

/// Positive root together with its depth (minimal gallery distance from C0
/// to a chamber beyond the wall).
struct DepthRoot {
  RootVec root;
  int depth = 1;
};

HalfSpace half_space_of(const System& S, RootVec signed_root);
inline HalfSpace opposite(HalfSpace h) {
  h.positive = !h.positive;
  return h;
}

Wall wall_of_root(const System& S, RootVec signed_root);
Wall wall_of_reflection(const System& S, const Element& t);
/// Writes t = u s u^{-1} with 2 l(u) + 1 = l(t); returns (u, s). The chambers
/// u and u.s are adjacent along the wall, u on the positive-root side.
std::pair<Element, int> reflection_seed(const System& S, const Element& t);
/// Canonical adjacent chamber pair of the wall: (near, far), near on the
/// positive side.
std::pair<Element, Element> wall_witnesses(const System& S, const Wall& m);

Wall act_on_wall(const System& S, const Element& w, const Wall& m);
HalfSpace act_on_half_space(const System& S, const Element& w, HalfSpace h);

/// Does the chamber w C0 lie in h?
bool chamber_side(const System& S, const Element& w, const HalfSpace& h);

/// All positive roots of depth <= depth, breadth-first, exact dedup.
std::vector<DepthRoot> enumerate_roots(const System& S, int depth,
                                       size_t cap = 200000);

WallRelation wall_relation(const System& S, const Wall& a, const Wall& b);
/// Re-derives the relation from the order of the product of the two
/// reflections and raises ConsistencyError on disagreement.
void wall_relation_cross_check(const System& S, const Wall& a, const Wall& b,
                               WallRelation claimed, long order_cap = 512);

Nesting nesting_relation(const System& S, const HalfSpace& h,
                         const HalfSpace& g);

/// Is `h` strictly contained in `g`?
bool strictly_nested(const System& S, const HalfSpace& h, const HalfSpace& g);

/// Does mu strictly separate the parallel walls a and b (a on one side, b on
/// the other, mu distinct from both)?
bool wall_between(const System& S, const Wall& mu, const Wall& a,
                  const Wall& b);

/// Number of walls strictly separating two parallel (or equal) walls:
/// the combinatorial stand-in for the Davis-complex distance between them.
/// Transverse input violates the precondition.
long wall_separation(const System& S, const Wall& a, const Wall& b);

/// Gallery-distance proxy from chamber x to wall m: number of walls
/// separating x from m.
long chamber_wall_distance(const System& S, const Element& x, const Wall& m);

Json root_to_json(const System& S, const RootVec& v);
Json wall_to_json(const System& S, const Wall& m);

}  // namespace cox
