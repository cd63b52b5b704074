#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pedcomb/isomorphism.hpp"
#include "pedcomb/pedigree.hpp"

namespace pedcomb {

class MalformedDeckError : public std::invalid_argument {
 public:
  explicit MalformedDeckError(const std::string& what) : std::invalid_argument(what) {}
};

/// Full (n-1)-deck with representative pedigrees, not just codes: the
/// reconstruction lemmas read structure off cards. Cards may arrive in any
/// vertex labelling.
struct DeckOfPedigrees {
  std::vector<std::string> labels;  // full label list, in order
  std::map<std::vector<int>, Pedigree> cards;  // sorted present label positions
};

DeckOfPedigrees full_deck(const Pedigree& p);

std::string cards_to_json(const DeckOfPedigrees& d);
DeckOfPedigrees cards_from_json(const std::string& text);

enum class ReconStatus { Reconstructed, NotApplicable, Ambiguous, Undetermined };

std::string to_string(ReconStatus s);

struct ReconOutcome {
  ReconStatus status = ReconStatus::Undetermined;
  std::optional<Pedigree> pedigree;
  std::string note;
};

/// Twin rule: a pair of extant vertices sharing both parents is visible on
/// any card containing both; the pedigree is the card missing one twin plus
/// that twin joined to the other's parents.
ReconOutcome reconstruct_from_twins(const DeckOfPedigrees& d,
                                    const CanonOptions& opt = {});

/// Cycle rule (n > 3): infers the parent graph G1 up to labelled
/// isomorphism from the cards, and when G1 has a cycle completes the card
/// missing an on-cycle extant vertex. Ambiguous when card symmetries leave
/// the required read non-unique.
ReconOutcome reconstruct_from_cycle(const DeckOfPedigrees& d,
                                    const CanonOptions& opt = {});

/// Corollary dispatcher: twins first, else the cycle rule; Undetermined
/// only when G1 is twin-free and acyclic (forcing |X1| > n).
ReconOutcome reconstruct(const DeckOfPedigrees& d, const CanonOptions& opt = {});

struct ProbeResult {
  bool reconstructible = false;
  std::optional<Pedigree> counterpart;
  std::uint64_t examined = 0;  // valid candidates checked
};

/// Exhaustive oracle: enumerates pedigrees on the same extant set (up to
/// labelled isomorphism, every vertex ancestral to an extant vertex, vertex
/// count <= max_vertices) and reports the first non-isomorphic candidate
/// with an identical r-deck, if any.
ProbeResult brute_reconstructibility(const Pedigree& p, int r, int max_vertices,
                                     const CanonOptions& opt = {});

}  // namespace pedcomb
