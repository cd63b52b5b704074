#include "pedcomb/reconstruction.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pedcomb/io.hpp"

namespace pedcomb {

std::string to_string(ReconStatus s) {
  switch (s) {
    case ReconStatus::Reconstructed: return "Reconstructed";
    case ReconStatus::NotApplicable: return "NotApplicable";
    case ReconStatus::Ambiguous: return "Ambiguous";
    case ReconStatus::Undetermined: return "Undetermined";
  }
  return "Unknown";
}

DeckOfPedigrees full_deck(const Pedigree& p) {
  DeckOfPedigrees d;
  d.labels = p.extant_labels();
  int n = p.order();
  for (int out = 0; out < n; ++out) {
    std::vector<int> key;
    std::vector<std::string> keep;
    for (int pos = 0; pos < n; ++pos) {
      if (pos == out) continue;
      key.push_back(pos);
      keep.push_back(d.labels[pos]);
    }
    d.cards.emplace(key, sub_pedigree(p, keep));
  }
  return d;
}

std::string cards_to_json(const DeckOfPedigrees& d) {
  nlohmann::ordered_json j;
  j["format"] = "pedcomb-cards-v1";
  j["labels"] = d.labels;
  auto cards = nlohmann::ordered_json::object();
  for (const auto& [key, card] : d.cards) {
    std::string name;
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i) name += ",";
      name += d.labels[key[i]];
    }
    cards[name] = nlohmann::ordered_json::parse(pedigree_to_json(card));
  }
  j["cards"] = std::move(cards);
  return j.dump(2) + "\n";
}

DeckOfPedigrees cards_from_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedDeckError(std::string("deck JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != "pedcomb-cards-v1")
    throw MalformedDeckError("deck JSON: missing format tag pedcomb-cards-v1");
  DeckOfPedigrees d;
  for (const auto& l : j.at("labels")) d.labels.push_back(l.get<std::string>());
  for (const auto& [name, card] : j.at("cards").items()) {
    std::vector<int> key;
    std::stringstream ss(name);
    std::string part;
    while (std::getline(ss, part, ',')) {
      auto it = std::find(d.labels.begin(), d.labels.end(), part);
      if (it == d.labels.end())
        throw MalformedDeckError("deck JSON: card label '" + part + "' not in labels");
      key.push_back(static_cast<int>(it - d.labels.begin()));
    }
    std::sort(key.begin(), key.end());
    try {
      d.cards.emplace(key, pedigree_from_json(card.dump()));
    } catch (const std::exception& e) {
      throw MalformedDeckError("deck JSON: bad card '" + name + "': " + e.what());
    }
  }
  return d;
}

namespace {

struct DeckView {
  const DeckOfPedigrees& d;
  int n;
  // o[i][j] = |parents(x_i) ∩ parents(x_j)|, consistent across cards.
  std::vector<std::vector<int>> overlap;

  explicit DeckView(const DeckOfPedigrees& deck) : d(deck), n(int(deck.labels.size())) {
    if (n < 3) throw MalformedDeckError("deck needs order >= 3");
    if (int(d.cards.size()) != n)
      throw MalformedDeckError("expected one card per (n-1)-subset");
    overlap.assign(n, std::vector<int>(n, -1));
    for (int out = 0; out < n; ++out) {
      std::vector<int> key;
      for (int pos = 0; pos < n; ++pos)
        if (pos != out) key.push_back(pos);
      auto it = d.cards.find(key);
      if (it == d.cards.end())
        throw MalformedDeckError("missing card for subset omitting " + d.labels[out]);
      const Pedigree& card = it->second;
      std::vector<std::string> want;
      for (int pos : key) want.push_back(d.labels[pos]);
      if (card.extant_labels() != want)
        throw MalformedDeckError("card extant labels disagree with its subset");
      if (!as_discrete_generation(card))
        throw MalformedDeckError("card is not a discrete generation pedigree");
      for (std::size_t a = 0; a < key.size(); ++a) {
        for (std::size_t b = a + 1; b < key.size(); ++b) {
          int o = shared_parents(card, int(a), int(b));
          int i = key[a], j = key[b];
          if (overlap[i][j] >= 0 && overlap[i][j] != o)
            throw MalformedDeckError("cards disagree on shared parents of " +
                                     d.labels[i] + "," + d.labels[j]);
          overlap[i][j] = overlap[j][i] = o;
        }
      }
    }
  }

  static int shared_parents(const Pedigree& card, int pos_a, int pos_b) {
    auto pa = card.parents(card.extant_vertex(pos_a));
    auto pb = card.parents(card.extant_vertex(pos_b));
    int shared = 0;
    for (int x : pa)
      for (int y : pb)
        if (x == y) shared++;
    return shared;
  }

  const Pedigree& card_without(int out) const {
    std::vector<int> key;
    for (int pos = 0; pos < n; ++pos)
      if (pos != out) key.push_back(pos);
    return d.cards.at(key);
  }

  // Position of label `pos` inside the card that omits `out`.
  static int card_pos(int pos, int out) { return pos < out ? pos : pos - 1; }
};

Pedigree complete_card(const DeckView& view, int out, int parent_a, int parent_b) {
  const Pedigree& card = view.card_without(out);
  RawPedigree raw = card.to_raw();
  VertexId fresh = 0;
  for (VertexId id : raw.vertices) fresh = std::max(fresh, id + 1);
  raw.vertices.push_back(fresh);
  raw.arcs.push_back({fresh, card.id_of(parent_a)});
  raw.arcs.push_back({fresh, card.id_of(parent_b)});
  std::sort(raw.arcs.begin(), raw.arcs.end());
  raw.extant.clear();
  for (int pos = 0; pos < view.n; ++pos) {
    if (pos == out)
      raw.extant.push_back({view.d.labels[pos], fresh});
    else
      raw.extant.push_back(
          {view.d.labels[pos],
           card.id_of(card.extant_vertex(DeckView::card_pos(pos, out)))});
  }
  return Pedigree::from_raw(raw);
}

// Does deck(candidate, n-1) reproduce the input cards, subset by subset?
bool deck_matches(const DeckView& view, const Pedigree& candidate,
                  const CanonOptions& opt) {
  for (const auto& [key, card] : view.d.cards) {
    std::vector<std::string> keep;
    for (int pos : key) keep.push_back(view.d.labels[pos]);
    if (canonical_code(sub_pedigree(candidate, keep), opt) != canonical_code(card, opt))
      return false;
  }
  return true;
}

// Depth-1 vertices of a card (parents of its extant vertices).
std::vector<int> depth1_vertices(const Pedigree& card) {
  std::set<int> x1;
  for (int pos = 0; pos < card.order(); ++pos)
    for (int par : card.parents(card.extant_vertex(pos))) x1.insert(par);
  return {x1.begin(), x1.end()};
}

// A parent-graph candidate: n labelled edges over abstract vertex ids.
struct G1Candidate {
  std::vector<std::array<int, 2>> edges;  // edges[i] = endpoints of e_{i+1}
  int vertex_count = 0;

  bool edge_on_cycle(int e) const {
    // e is on a cycle iff its endpoints stay connected without it
    // (parallel edges included).
    std::vector<int> comp(vertex_count);
    for (int v = 0; v < vertex_count; ++v) comp[v] = v;
    std::function<int(int)> find = [&](int v) {
      while (comp[v] != v) v = comp[v] = comp[comp[v]];
      return v;
    };
    for (std::size_t f = 0; f < edges.size(); ++f) {
      if (int(f) == e) continue;
      comp[find(edges[f][0])] = find(edges[f][1]);
    }
    return find(edges[e][0]) == find(edges[e][1]);
  }

  bool has_cycle() const {
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edge_on_cycle(int(e))) return true;
    return false;
  }

  // Encode as a depth-1 pedigree (children x_1..x_n, parents the G1
  // vertices) so labelled-isomorphism classes reuse canonical codes.
  CanonicalCode code(const std::vector<std::string>& labels,
                     const CanonOptions& opt) const {
    RawPedigree raw;
    for (int v = 0; v < vertex_count; ++v) raw.vertices.push_back(1000 + v);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      VertexId child = e;
      raw.vertices.push_back(child);
      raw.arcs.push_back({child, VertexId(1000 + edges[e][0])});
      raw.arcs.push_back({child, VertexId(1000 + edges[e][1])});
      raw.extant.push_back({labels[e], child});
    }
    std::sort(raw.arcs.begin(), raw.arcs.end());
    return canonical_code(Pedigree::from_raw(raw), opt);
  }
};

// All G1 completions consistent with card `out`: the card shows G1 minus
// e_out (minus its then-isolated vertices); the missing edge is placed on
// visible depth-1 vertices or on fresh degree-1 endpoints, subject to the
// shared-parent counts.
std::vector<G1Candidate> g1_candidates_from_card(const DeckView& view, int out) {
  const Pedigree& card = view.card_without(out);
  std::vector<int> x1 = depth1_vertices(card);
  std::map<int, int> index;  // card vertex -> dense G1 vertex
  for (std::size_t i = 0; i < x1.size(); ++i) index[x1[i]] = int(i);
  int fresh1 = int(x1.size()), fresh2 = fresh1 + 1;

  std::vector<std::array<int, 2>> base(view.n, {-1, -1});
  for (int pos = 0; pos < view.n; ++pos) {
    if (pos == out) continue;
    auto par = card.parents(card.extant_vertex(DeckView::card_pos(pos, out)));
    base[pos] = {index[par[0]], index[par[1]]};
  }

  std::vector<int> endpoints;
  for (std::size_t i = 0; i <= x1.size(); ++i) endpoints.push_back(int(i));
  endpoints.push_back(fresh2);

  std::vector<G1Candidate> out_candidates;
  for (std::size_t a = 0; a < endpoints.size(); ++a) {
    for (std::size_t b = a + 1; b < endpoints.size(); ++b) {
      int u = endpoints[a], v = endpoints[b];
      if (v == fresh2 && u != fresh1) continue;  // fresh ids are interchangeable
      bool ok = true;
      for (int m = 0; m < view.n && ok; ++m) {
        if (m == out) continue;
        int touch = 0;
        for (int w : {u, v})
          if (w < fresh1 && (base[m][0] == w || base[m][1] == w)) touch++;
        if (touch != view.overlap[out][m]) ok = false;
      }
      if (!ok) continue;
      G1Candidate cand;
      cand.edges = base;
      cand.edges[out] = {u, v};
      cand.vertex_count = fresh1 + (v >= fresh1 ? (v == fresh2 ? 2 : 1) : 0);
      out_candidates.push_back(std::move(cand));
    }
  }
  return out_candidates;
}

ReconOutcome twins_impl(const DeckView& view, const CanonOptions& opt) {
  int n = view.n;
  int twin_i = -1, twin_j = -1;
  for (int i = 0; i < n && twin_i < 0; ++i)
    for (int j = i + 1; j < n && twin_i < 0; ++j)
      if (view.overlap[i][j] == 2) {
        twin_i = i;
        twin_j = j;
      }
  if (twin_i < 0) return {ReconStatus::NotApplicable, std::nullopt, "no twin pair"};

  const Pedigree& card = view.card_without(twin_i);
  int xj = card.extant_vertex(DeckView::card_pos(twin_j, twin_i));
  Pedigree result =
      complete_card(view, twin_i, card.parents(xj)[0], card.parents(xj)[1]);
  if (!deck_matches(view, result, opt))
    throw MalformedDeckError("cards are not the deck of the twin completion");
  return {ReconStatus::Reconstructed, result,
          "twins " + view.d.labels[twin_i] + "," + view.d.labels[twin_j]};
}

ReconOutcome cycle_impl(const DeckView& view, const CanonOptions& opt) {
  int n = view.n;

  // Intersect G1 candidates across all cards.
  std::map<std::string, G1Candidate> first_card;
  std::map<std::string, int> hits;
  for (int out = 0; out < n; ++out) {
    std::set<std::string> seen;
    for (G1Candidate& cand : g1_candidates_from_card(view, out)) {
      std::string key = cand.code(view.d.labels, opt).bytes;
      if (!seen.insert(key).second) continue;
      hits[key]++;
      first_card.emplace(key, std::move(cand));
    }
  }
  std::vector<const G1Candidate*> common;
  for (const auto& [key, count] : hits)
    if (count == n) common.push_back(&first_card.at(key));
  if (common.empty())
    throw MalformedDeckError("cards admit no common parent graph");

  bool any_cycle = false;
  for (const G1Candidate* cand : common) any_cycle |= cand->has_cycle();
  if (!any_cycle)
    return {ReconStatus::NotApplicable, std::nullopt, "parent graph is acyclic"};

  // Labels whose edge sits on a cycle in every surviving candidate; for
  // those the card misses exactly one vertex.
  std::vector<int> anchors;
  for (int e = 0; e < n; ++e) {
    bool all = true;
    for (const G1Candidate* cand : common)
      if (!cand->edge_on_cycle(e)) all = false;
    if (all) anchors.push_back(e);
  }
  if (anchors.empty())
    return {ReconStatus::Ambiguous, std::nullopt,
            "no edge lies on a cycle in every consistent parent graph"};

  std::set<std::string> codes;
  std::optional<Pedigree> result;
  std::string best_code;
  for (int i : anchors) {
    const Pedigree& card = view.card_without(i);
    std::vector<int> x1 = depth1_vertices(card);
    for (std::size_t a = 0; a < x1.size(); ++a) {
      for (std::size_t b = a + 1; b < x1.size(); ++b) {
        bool ok = true;
        for (int m = 0; m < n && ok; ++m) {
          if (m == i) continue;
          auto par = card.parents(card.extant_vertex(DeckView::card_pos(m, i)));
          int touch = 0;
          for (int w : {x1[a], x1[b]})
            if (par[0] == w || par[1] == w) touch++;
          if (touch != view.overlap[i][m]) ok = false;
        }
        if (!ok) continue;
        Pedigree candidate = complete_card(view, i, x1[a], x1[b]);
        if (!as_discrete_generation(candidate)) continue;
        if (!deck_matches(view, candidate, opt)) continue;
        std::string code = canonical_code(candidate, opt).bytes;
        if (codes.insert(code).second) {
          if (!result || code < best_code) {
            result = candidate;
            best_code = code;
          }
        }
      }
    }
  }
  if (codes.empty())
    throw MalformedDeckError("no cycle completion reproduces the deck");
  if (codes.size() > 1)
    return {ReconStatus::Ambiguous, std::nullopt,
            "multiple non-isomorphic completions share this deck"};
  return {ReconStatus::Reconstructed, result, "cycle completion"};
}

}  // namespace

ReconOutcome reconstruct_from_twins(const DeckOfPedigrees& d, const CanonOptions& opt) {
  DeckView view(d);
  return twins_impl(view, opt);
}

ReconOutcome reconstruct_from_cycle(const DeckOfPedigrees& d, const CanonOptions& opt) {
  if (int(d.labels.size()) <= 3)
    throw std::invalid_argument(
        "cycle rule needs order > 3: parent graphs K_3 and K_{1,3} share all "
        "edge-deleted subgraphs");
  DeckView view(d);
  return cycle_impl(view, opt);
}

ReconOutcome reconstruct(const DeckOfPedigrees& d, const CanonOptions& opt) {
  if (int(d.labels.size()) <= 3)
    throw std::invalid_argument("reconstruct needs order > 3");
  DeckView view(d);
  ReconOutcome twins = twins_impl(view, opt);
  if (twins.status == ReconStatus::Reconstructed) return twins;
  ReconOutcome cycle = cycle_impl(view, opt);
  if (cycle.status == ReconStatus::NotApplicable) {
    // Twin-free with acyclic G1: n simple edges on more than n vertices,
    // outside the corollary's |X1| <= n hypothesis.
    return {ReconStatus::Undetermined, std::nullopt,
            "no twins and acyclic parent graph (|X1| > n)"};
  }
  return cycle;
}

ProbeResult brute_reconstructibility(const Pedigree& p, int r, int max_vertices,
                                     const CanonOptions& opt) {
  int n = p.order();
  if (r < 1 || r > n) throw std::invalid_argument("probe: r must be in [1, n]");
  if (max_vertices < n + 2)
    throw std::invalid_argument("probe: bound below the smallest pedigree");

  Deck target = deck(p, r, opt);
  CanonicalCode self = canonical_code(p, opt);

  ProbeResult res;
  std::set<std::string> seen;
  std::uint64_t budget = opt.node_budget;

  for (int m = n + 2; m <= max_vertices; ++m) {
    // choices[v]: parent pair among non-extant vertices, or founder for
    // the hidden ones. Encoded as (a, b) with a < b, or (-1, -1).
    std::vector<std::array<int, 2>> choice(m, {-1, -1});
    std::vector<std::array<int, 2>> pairs;
    for (int a = n; a < m; ++a)
      for (int b = a + 1; b < m; ++b) pairs.push_back({a, b});

    std::function<bool(int)> place = [&](int v) -> bool {
      if (v == m) {
        if (++res.examined > budget)
          throw ResourceLimitError("probe exceeded candidate budget");
        // Every hidden vertex needs a child, parents acyclic, founders exist.
        std::vector<int> kids(m, 0);
        for (int w = 0; w < m; ++w) {
          if (choice[w][0] < 0) continue;
          kids[choice[w][0]]++;
          kids[choice[w][1]]++;
        }
        for (int w = n; w < m; ++w)
          if (kids[w] == 0) return false;
        // Cycle check over hidden vertices.
        std::vector<int> state(m, 0);
        std::function<bool(int)> dfs = [&](int w) {
          state[w] = 1;
          if (choice[w][0] >= 0) {
            for (int par : choice[w]) {
              if (state[par] == 1) return false;
              if (state[par] == 0 && !dfs(par)) return false;
            }
          }
          state[w] = 2;
          return true;
        };
        for (int w = 0; w < m; ++w)
          if (state[w] == 0 && !dfs(w)) return false;

        RawPedigree raw;
        for (int w = 0; w < m; ++w) {
          raw.vertices.push_back(w);
          if (choice[w][0] >= 0) {
            raw.arcs.push_back({VertexId(w), VertexId(choice[w][0])});
            raw.arcs.push_back({VertexId(w), VertexId(choice[w][1])});
          }
        }
        for (int pos = 0; pos < n; ++pos)
          raw.extant.push_back({p.extant_labels()[pos], VertexId(pos)});
        Pedigree q = Pedigree::from_raw(raw);
        CanonicalCode code = canonical_code(q, opt);
        if (code == self) return false;
        if (!seen.insert(code.bytes).second) return false;
        for (const auto& [key, want] : target.entries) {
          std::vector<std::string> keep;
          for (int pos : key) keep.push_back(p.extant_labels()[pos]);
          if (canonical_code(sub_pedigree(q, keep), opt) != want) return false;
        }
        res.counterpart = q;
        return true;
      }
      if (v < n) {
        for (const auto& pr : pairs) {
          choice[v] = pr;
          if (place(v + 1)) return true;
        }
      } else {
        choice[v] = {-1, -1};
        if (place(v + 1)) return true;
        for (const auto& pr : pairs) {
          if (pr[0] == v || pr[1] == v) continue;
          choice[v] = pr;
          if (place(v + 1)) return true;
        }
      }
      return false;
    };
    if (place(0)) return res;
  }
  res.reconstructible = true;
  return res;
}

}  // namespace pedcomb
