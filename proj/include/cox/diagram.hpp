#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cox/coxmatrix.hpp"
#include "cox/verdict.hpp"

namespace cox {

enum class FamilyKind { Spherical, Affine, CompactHyperbolic, Indefinite };

std::string family_kind_name(FamilyKind k);

/// One irreducible component of a subdiagram, with its catalogue family name
/// when spherical or affine ("A3", "B5", "I2(7)", "~A2", "~C3", ...).
struct ComponentType {
  GeneratorSet members;
  FamilyKind kind = FamilyKind::Indefinite;
  std::string family;
};

struct DiagramType {
  std::vector<ComponentType> components;
  bool is_spherical = false;    // every component spherical
  bool is_essential = false;    // no component spherical
  bool is_irreducible = false;  // exactly one component

  bool is_affine_irreducible() const {
    return is_irreducible && components[0].kind == FamilyKind::Affine;
  }
  std::string str() const;
  Json to_json(const CoxeterMatrix& M) const;
};

/// Connected components of the diagram restricted to J (edges are the bonds
/// with m >= 3).
std::vector<GeneratorSet> irreducible_components(const CoxeterMatrix& M,
                                                 const GeneratorSet& J);

/// Catalogue classification of every component of J. Deterministic; no
/// numeric computation involved.
DiagramType classify_subset(const CoxeterMatrix& M, const GeneratorSet& J);

/// J-perp: the generators outside J commuting with all of J.
GeneratorSet perp(const CoxeterMatrix& M, const GeneratorSet& J);

/// Union of the non-spherical irreducible components of J.
GeneratorSet essential_core(const CoxeterMatrix& M, const GeneratorSet& J);

/// All pairs (J, J') with J' a spherical subset of J-perp: the shells of the
/// open-subgroup envelope. Enumerates all subsets of S.
std::vector<std::pair<GeneratorSet, GeneratorSet>> shells(
    const CoxeterMatrix& M, int rank_cap = 16);

/// For irreducible non-spherical M: Verified iff every proper subset of S is
/// spherical, cross-checked against membership of the full classification in
/// {Affine, CompactHyperbolic}. A cross-check mismatch yields a Refuted
/// verdict tagged internal_consistency.
Verdict few_open_subgroups_check(const CoxeterMatrix& M);

/// Exact signature of the Gram form of the geometric representation on J,
/// via the characteristic polynomial over the coefficient field.
struct GramSignature {
  int positive = 0;
  int zero = 0;
  int negative = 0;
};
GramSignature gram_signature(const CoxeterMatrix& M, const GeneratorSet& J);

}  // namespace cox
