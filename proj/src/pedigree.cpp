#include "pedcomb/pedigree.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace pedcomb {

std::string to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::BadOutDegree: return "BadOutDegree";
    case IssueKind::ExtantHasChild: return "ExtantHasChild";
    case IssueKind::IsolatedVertex: return "IsolatedVertex";
    case IssueKind::DuplicateParent: return "DuplicateParent";
    case IssueKind::CyclicAncestry: return "CyclicAncestry";
    case IssueKind::UnknownVertex: return "UnknownVertex";
    case IssueKind::DuplicateVertex: return "DuplicateVertex";
    case IssueKind::DuplicateLabel: return "DuplicateLabel";
  }
  return "Unknown";
}

namespace {

std::string issues_message(const std::vector<ValidationIssue>& issues) {
  std::ostringstream os;
  os << "invalid pedigree:";
  for (const auto& issue : issues) {
    os << " [" << to_string(issue.kind) << " at vertex " << issue.vertex;
    if (!issue.detail.empty()) os << ": " << issue.detail;
    os << "]";
  }
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error(issues_message(issues)), issues_(std::move(issues)) {}

std::vector<ValidationIssue> Pedigree::check(const RawPedigree& raw) {
  std::vector<ValidationIssue> issues;
  std::set<VertexId> vertex_set;
  for (VertexId id : raw.vertices) {
    if (!vertex_set.insert(id).second)
      issues.push_back({IssueKind::DuplicateVertex, id, "vertex listed twice"});
  }
  bool ids_ok = true;
  for (const auto& [c, p] : raw.arcs) {
    if (!vertex_set.count(c)) {
      issues.push_back({IssueKind::UnknownVertex, c, "arc child not a vertex"});
      ids_ok = false;
    }
    if (!vertex_set.count(p)) {
      issues.push_back({IssueKind::UnknownVertex, p, "arc parent not a vertex"});
      ids_ok = false;
    }
  }
  std::set<std::string> labels;
  std::set<VertexId> extant_ids;
  for (const auto& [label, id] : raw.extant) {
    if (!labels.insert(label).second)
      issues.push_back({IssueKind::DuplicateLabel, id, "label '" + label + "' listed twice"});
    if (!extant_ids.insert(id).second)
      issues.push_back({IssueKind::DuplicateLabel, id, "vertex carries two extant labels"});
    if (!vertex_set.count(id)) {
      issues.push_back({IssueKind::UnknownVertex, id, "extant label on unknown vertex"});
      ids_ok = false;
    }
  }
  if (!ids_ok) return issues;

  // Out-degree and parent distinctness; arcs are a set but doubled input
  // arcs count as a doubled parent.
  std::map<VertexId, std::vector<VertexId>> parents_of;
  std::map<VertexId, int> in_degree;
  std::set<std::pair<VertexId, VertexId>> arc_set;
  for (const auto& arc : raw.arcs) {
    if (arc.first == arc.second) {
      issues.push_back({IssueKind::CyclicAncestry, arc.first, "vertex is its own parent"});
      continue;
    }
    parents_of[arc.first].push_back(arc.second);
    arc_set.insert(arc);
  }
  for (const auto& arc : arc_set) in_degree[arc.second]++;

  for (VertexId id : vertex_set) {
    auto it = parents_of.find(id);
    std::size_t out = it == parents_of.end() ? 0 : it->second.size();
    if (out == 2 && it->second[0] == it->second[1]) {
      issues.push_back({IssueKind::DuplicateParent, id, "both arcs point at the same parent"});
      continue;
    }
    if (out != 0 && out != 2) {
      issues.push_back({IssueKind::BadOutDegree, id, "out-degree " + std::to_string(out)});
    }
  }
  for (const auto& [label, id] : raw.extant) {
    if (in_degree.count(id))
      issues.push_back({IssueKind::ExtantHasChild, id, "extant '" + label + "' has a child"});
  }
  for (VertexId id : vertex_set) {
    bool has_out = parents_of.count(id) && !parents_of[id].empty();
    if (!has_out && !in_degree.count(id))
      issues.push_back({IssueKind::IsolatedVertex, id, "no arcs touch this vertex"});
  }

  // Kahn's algorithm on child->parent arcs; leftovers sit on cycles.
  std::map<VertexId, std::vector<VertexId>> children_of;
  std::map<VertexId, int> pending;  // number of (deduped) parents
  for (const auto& arc : arc_set) {
    children_of[arc.second].push_back(arc.first);
    pending[arc.first]++;
  }
  std::queue<VertexId> queue;
  std::set<VertexId> done;
  for (VertexId id : vertex_set)
    if (!pending.count(id)) queue.push(id);
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop();
    done.insert(v);
    auto it = children_of.find(v);
    if (it == children_of.end()) continue;
    for (VertexId c : it->second)
      if (--pending[c] == 0) queue.push(c);
  }
  if (done.size() != vertex_set.size()) {
    for (VertexId id : vertex_set) {
      if (!done.count(id)) {
        issues.push_back({IssueKind::CyclicAncestry, id,
                          "vertex is its own proper ancestor"});
        break;  // one witness is enough
      }
    }
  }
  return issues;
}

Pedigree Pedigree::from_raw(const RawPedigree& raw) {
  auto issues = check(raw);
  if (!issues.empty()) throw ValidationError(std::move(issues));

  Pedigree p;
  p.ids_ = raw.vertices;
  std::sort(p.ids_.begin(), p.ids_.end());
  std::map<VertexId, int> index;
  for (int i = 0; i < static_cast<int>(p.ids_.size()); ++i) index[p.ids_[i]] = i;

  int n = p.vertex_count();
  p.parents_.assign(n, {-1, -1});
  p.children_.assign(n, {});
  std::set<std::pair<VertexId, VertexId>> arc_set(raw.arcs.begin(), raw.arcs.end());
  std::vector<std::vector<int>> parent_lists(n);
  for (const auto& [c, q] : arc_set) parent_lists[index[c]].push_back(index[q]);
  for (int v = 0; v < n; ++v) {
    if (parent_lists[v].empty()) continue;
    std::sort(parent_lists[v].begin(), parent_lists[v].end());
    p.parents_[v] = {parent_lists[v][0], parent_lists[v][1]};
    p.children_[parent_lists[v][0]].push_back(v);
    p.children_[parent_lists[v][1]].push_back(v);
  }
  for (auto& kids : p.children_) std::sort(kids.begin(), kids.end());

  p.label_of_.assign(n, -1);
  for (const auto& [label, id] : raw.extant) {
    p.extant_labels_.push_back(label);
    p.extant_idx_.push_back(index[id]);
    p.label_of_[index[id]] = static_cast<int>(p.extant_labels_.size()) - 1;
  }

  // Longest path from an extant vertex, -1 when unreachable. Process each
  // vertex only after all its children, i.e. topologically along the
  // (acyclic) child->parent arcs.
  p.depths_.assign(n, -1);
  std::vector<int> outstanding(n, 0);
  for (int v = 0; v < n; ++v) outstanding[v] = static_cast<int>(p.children_[v].size());
  std::queue<int> q2;
  for (int v = 0; v < n; ++v)
    if (outstanding[v] == 0) q2.push(v);
  std::vector<int> topo_order;
  while (!q2.empty()) {
    int v = q2.front();
    q2.pop();
    topo_order.push_back(v);
    if (!p.is_founder(v)) {
      for (int par : p.parents_[v])
        if (--outstanding[par] == 0) q2.push(par);
    }
  }
  for (int v : topo_order) {
    int d = p.label_of_[v] >= 0 ? 0 : -1;
    for (int c : p.children_[v])
      if (p.depths_[c] >= 0) d = std::max(d, p.depths_[c] + 1);
    p.depths_[v] = d;
  }
  return p;
}

int Pedigree::index_of(VertexId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return -1;
  return static_cast<int>(it - ids_.begin());
}

int Pedigree::label_position_of(const std::string& label) const {
  for (int i = 0; i < order(); ++i)
    if (extant_labels_[i] == label) return i;
  return -1;
}

int Pedigree::depth() const {
  int d = 0;
  for (int v = 0; v < vertex_count(); ++v) d = std::max(d, depths_[v]);
  return d;
}

RawPedigree Pedigree::to_raw() const {
  RawPedigree raw;
  raw.vertices = ids_;
  for (int v = 0; v < vertex_count(); ++v) {
    if (is_founder(v)) continue;
    raw.arcs.push_back({ids_[v], ids_[parents_[v][0]]});
    raw.arcs.push_back({ids_[v], ids_[parents_[v][1]]});
  }
  std::sort(raw.arcs.begin(), raw.arcs.end());
  for (int i = 0; i < order(); ++i)
    raw.extant.push_back({extant_labels_[i], ids_[extant_idx_[i]]});
  return raw;
}

PedigreeBuilder& PedigreeBuilder::vertex(VertexId id) {
  for (VertexId v : raw_.vertices)
    if (v == id) return *this;
  raw_.vertices.push_back(id);
  return *this;
}

PedigreeBuilder& PedigreeBuilder::child(VertexId c, VertexId p1, VertexId p2) {
  vertex(c).vertex(p1).vertex(p2);
  raw_.arcs.push_back({c, p1});
  raw_.arcs.push_back({c, p2});
  return *this;
}

PedigreeBuilder& PedigreeBuilder::extant(const std::string& label, VertexId id) {
  vertex(id);
  raw_.extant.push_back({label, id});
  return *this;
}

Pedigree sub_pedigree(const Pedigree& p, const std::vector<std::string>& keep) {
  if (keep.empty()) throw std::invalid_argument("sub_pedigree: empty subset");
  std::set<int> positions;
  for (const auto& label : keep) {
    int pos = p.label_position_of(label);
    if (pos < 0)
      throw std::invalid_argument("sub_pedigree: unknown label '" + label + "'");
    positions.insert(pos);
  }

  // A vertex survives iff some member of `keep` descends from it, i.e. it is
  // reachable from a kept extant vertex along child->parent arcs.
  std::vector<bool> kept(p.vertex_count(), false);
  std::vector<int> stack;
  for (int pos : positions) {
    int v = p.extant_vertex(pos);
    if (!kept[v]) {
      kept[v] = true;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (p.is_founder(v)) continue;
    for (int par : p.parents(v)) {
      if (!kept[par]) {
        kept[par] = true;
        stack.push_back(par);
      }
    }
  }

  RawPedigree raw;
  for (int v = 0; v < p.vertex_count(); ++v) {
    if (!kept[v]) continue;
    raw.vertices.push_back(p.id_of(v));
    if (!p.is_founder(v)) {
      raw.arcs.push_back({p.id_of(v), p.id_of(p.parents(v)[0])});
      raw.arcs.push_back({p.id_of(v), p.id_of(p.parents(v)[1])});
    }
  }
  for (int pos : positions)
    raw.extant.push_back({p.extant_labels()[pos], p.id_of(p.extant_vertex(pos))});
  return Pedigree::from_raw(raw);
}

int vertex_depth(const Pedigree& p, VertexId id) {
  int v = p.index_of(id);
  if (v < 0) throw std::invalid_argument("vertex_depth: unknown vertex id");
  return p.depth_of(v);
}

std::optional<DiscreteGenerationPedigree> as_discrete_generation(const Pedigree& p) {
  int d = 0;
  for (int v = 0; v < p.vertex_count(); ++v) {
    if (p.depth_of(v) < 0) return std::nullopt;  // no extant descendant
    d = std::max(d, p.depth_of(v));
  }
  // Parents must sit exactly one layer above, and the top layer must be
  // exactly the founder set.
  for (int v = 0; v < p.vertex_count(); ++v) {
    if (p.is_founder(v)) {
      if (p.depth_of(v) != d) return std::nullopt;
    } else {
      for (int par : p.parents(v))
        if (p.depth_of(par) != p.depth_of(v) + 1) return std::nullopt;
    }
  }
  DiscreteGenerationPedigree out;
  out.layers.assign(d + 1, {});
  for (int v = 0; v < p.vertex_count(); ++v) out.layers[p.depth_of(v)].push_back(v);
  out.pedigree = p;
  return out;
}

GenderResult find_gender_labelling(const Pedigree& p) {
  int n = p.vertex_count();
  // Mating graph: an undirected edge joins the two parents of each child.
  std::vector<std::vector<int>> mate(n);
  for (int v = 0; v < n; ++v) {
    if (p.is_founder(v)) continue;
    mate[p.parents(v)[0]].push_back(p.parents(v)[1]);
    mate[p.parents(v)[1]].push_back(p.parents(v)[0]);
  }
  std::vector<int> colour(n, -1), from(n, -1);
  for (int start = 0; start < n; ++start) {
    if (colour[start] >= 0 || mate[start].empty()) continue;
    colour[start] = 0;
    std::queue<int> bfs;
    bfs.push(start);
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop();
      for (int w : mate[v]) {
        if (colour[w] < 0) {
          colour[w] = 1 - colour[v];
          from[w] = v;
          bfs.push(w);
        } else if (colour[w] == colour[v]) {
          // Odd cycle: climb both BFS branches to a common ancestor.
          std::vector<int> pa, pb;
          for (int x = v; x >= 0; x = from[x]) pa.push_back(x);
          for (int x = w; x >= 0; x = from[x]) pb.push_back(x);
          std::reverse(pa.begin(), pa.end());
          std::reverse(pb.begin(), pb.end());
          std::size_t k = 0;
          while (k + 1 < pa.size() && k + 1 < pb.size() && pa[k + 1] == pb[k + 1]) ++k;
          GenderResult res;
          for (std::size_t i = k; i < pa.size(); ++i) res.odd_cycle.push_back(pa[i]);
          for (std::size_t i = pb.size(); i-- > k + 1;) res.odd_cycle.push_back(pb[i]);
          return res;
        }
      }
    }
  }
  GenderResult res;
  GenderAssignment g;
  g.by_vertex.assign(n, Gender::Male);  // untouched vertices default to Male
  for (int v = 0; v < n; ++v)
    if (colour[v] == 1) g.by_vertex[v] = Gender::Female;
  res.assignment = std::move(g);
  return res;
}

bool check_gender_labelling(const Pedigree& p, const GenderAssignment& g) {
  if (static_cast<int>(g.by_vertex.size()) != p.vertex_count()) return false;
  for (int v = 0; v < p.vertex_count(); ++v) {
    if (p.is_founder(v)) continue;
    if (g.by_vertex[p.parents(v)[0]] == g.by_vertex[p.parents(v)[1]]) return false;
  }
  return true;
}

ParentGraph parent_graph(const DiscreteGenerationPedigree& dgp) {
  if (dgp.depth() < 1) throw std::invalid_argument("parent_graph: depth must be >= 1");
  ParentGraph g;
  g.vertices = dgp.layers[1];
  const Pedigree& p = dgp.pedigree;
  for (int pos = 0; pos < p.order(); ++pos) {
    int x = p.extant_vertex(pos);
    g.edges.push_back(p.parents(x));
  }
  return g;
}

}  // namespace pedcomb
