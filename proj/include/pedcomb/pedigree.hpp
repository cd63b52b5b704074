#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pedcomb {

using VertexId = std::uint64_t;

// Raw input graph before validation. Arcs run child -> parent.
struct RawPedigree {
  std::vector<VertexId> vertices;
  std::vector<std::pair<VertexId, VertexId>> arcs;
  std::vector<std::pair<std::string, VertexId>> extant;  // ordered labels
};

enum class IssueKind {
  BadOutDegree,
  ExtantHasChild,
  IsolatedVertex,
  DuplicateParent,
  CyclicAncestry,
  UnknownVertex,
  DuplicateVertex,
  DuplicateLabel,
};

std::string to_string(IssueKind kind);

struct ValidationIssue {
  IssueKind kind;
  VertexId vertex = 0;
  std::string detail;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

/// Immutable validated pedigree. Vertices live at dense internal indices
/// 0..vertex_count()-1 (sorted by external id); external ids survive round
/// trips but carry no structural meaning.
class Pedigree {
 public:
  Pedigree() = default;  // the empty pedigree

  /// All invariant violations in `raw`, empty when valid.
  static std::vector<ValidationIssue> check(const RawPedigree& raw);

  /// Throws ValidationError listing every violated invariant.
  static Pedigree from_raw(const RawPedigree& raw);

  int vertex_count() const { return static_cast<int>(ids_.size()); }
  int order() const { return static_cast<int>(extant_labels_.size()); }

  bool is_founder(int v) const { return parents_[v][0] < 0; }
  /// Both parents, sorted by internal index. Only valid for non-founders.
  const std::array<int, 2>& parents(int v) const { return parents_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }

  VertexId id_of(int v) const { return ids_[v]; }
  int index_of(VertexId id) const;  // -1 when absent

  const std::vector<std::string>& extant_labels() const { return extant_labels_; }
  /// Internal index of the extant vertex at label position `pos`.
  int extant_vertex(int pos) const { return extant_idx_[pos]; }
  /// Label position of vertex `v`, or -1 when v is not extant.
  int label_pos(int v) const { return label_of_[v]; }
  int label_position_of(const std::string& label) const;  // -1 when absent

  /// Longest directed path from an extant vertex to v, or -1 when v has no
  /// extant descendant (the max ranges over an empty set).
  int depth_of(int v) const { return depths_[v]; }
  int depth() const;

  RawPedigree to_raw() const;

 private:
  std::vector<VertexId> ids_;
  std::vector<std::array<int, 2>> parents_;  // {-1,-1} for founders
  std::vector<std::vector<int>> children_;
  std::vector<std::string> extant_labels_;
  std::vector<int> extant_idx_;
  std::vector<int> label_of_;
  std::vector<int> depths_;
};

/// Convenience builder used by tests and constructions.
class PedigreeBuilder {
 public:
  PedigreeBuilder& vertex(VertexId id);
  PedigreeBuilder& child(VertexId c, VertexId p1, VertexId p2);
  PedigreeBuilder& extant(const std::string& label, VertexId id);
  const RawPedigree& raw() const { return raw_; }
  Pedigree build() const { return Pedigree::from_raw(raw_); }

 private:
  RawPedigree raw_;
};

/// Restriction to vertices with at least one descendant in `keep` (labels).
/// The extant list of the result is `keep` in P's label order.
Pedigree sub_pedigree(const Pedigree& p, const std::vector<std::string>& keep);

/// vertex_depth by external id; throws std::invalid_argument on unknown id.
int vertex_depth(const Pedigree& p, VertexId id);

struct DiscreteGenerationPedigree {
  Pedigree pedigree;
  std::vector<std::vector<int>> layers;  // layers[0] = extant, back() = founders
  int depth() const { return static_cast<int>(layers.size()) - 1; }
};

/// Layers each vertex at its depth; empty when the result violates the
/// discrete-generation invariants (a parent skips a generation, or some
/// vertex has no extant descendant).
std::optional<DiscreteGenerationPedigree> as_discrete_generation(const Pedigree& p);

enum class Gender { Male, Female };

struct GenderAssignment {
  std::vector<Gender> by_vertex;  // indexed by internal vertex index
};

struct GenderResult {
  std::optional<GenderAssignment> assignment;
  std::vector<int> odd_cycle;  // witness when no assignment exists
};

/// 2-colours the mating graph (an edge joins the two parents of each
/// non-founder). Vertices untouched by mating edges are assigned Male.
GenderResult find_gender_labelling(const Pedigree& p);

bool check_gender_labelling(const Pedigree& p, const GenderAssignment& g);

struct ParentGraph {
  std::vector<int> vertices;              // internal indices of X1
  std::vector<std::array<int, 2>> edges;  // edges[i] = parents of x_{i+1}
};

/// The multigraph G1 on X1: one edge per extant vertex joining its parents.
ParentGraph parent_graph(const DiscreteGenerationPedigree& p);

}  // namespace pedcomb
