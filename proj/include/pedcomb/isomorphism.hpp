#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pedcomb/pedigree.hpp"

namespace pedcomb {

class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

struct CanonOptions {
  std::uint64_t node_budget = 10'000'000;  // search nodes before ResourceLimit
};

/// Two pedigrees on the same extant label list have equal codes iff a
/// label-fixing isomorphism exists between them. Codes are structural over
/// label positions, so same-shaped cards on different subsets compare
/// equal. Bytes start with a format tag, so stored codes invalidate when
/// the algorithm changes.
struct CanonicalCode {
  std::string bytes;
  auto operator<=>(const CanonicalCode&) const = default;
  std::string hex() const;
};

struct CanonicalForm {
  CanonicalCode code;
  std::vector<int> labelling;  // internal vertex index -> canonical position
};

/// Colour refinement seeded with (extant label, out-degree, in-degree,
/// depth), followed by complete individualization-refinement backtracking.
/// Exactness rests on the backtracking being complete; refinement only
/// prunes.
CanonicalForm canonical_form(const Pedigree& p, const CanonOptions& opt = {});
CanonicalCode canonical_code(const Pedigree& p, const CanonOptions& opt = {});

/// Vertex bijection between two pedigrees fixing every extant label.
struct LabelledIsomorphism {
  std::vector<std::pair<VertexId, VertexId>> map;  // sorted by source id
};

/// Pure check: bijection, arcs preserved both ways, labels fixed.
bool verify_isomorphism(const Pedigree& p, const Pedigree& q,
                        const LabelledIsomorphism& m);

/// Witness bijection or proof of absence. Requires equal extant label lists.
std::optional<LabelledIsomorphism> find_isomorphism(const Pedigree& p,
                                                    const Pedigree& q,
                                                    const CanonOptions& opt = {});

struct Deck {
  int r = 0;
  std::vector<std::string> labels;  // full extant label list
  std::map<std::vector<int>, CanonicalCode> entries;  // sorted label positions -> code
};

/// One entry per r-subset Y of extant labels: canonical_code(sub_pedigree(p, Y)).
Deck deck(const Pedigree& p, int r, const CanonOptions& opt = {});

/// Entry-by-entry deck equality; per subset, never multiset-only.
bool are_r_hypomorphic(const Pedigree& p, const Pedigree& q, int r,
                       const CanonOptions& opt = {});

std::string deck_to_json(const Deck& d);

}  // namespace pedcomb
