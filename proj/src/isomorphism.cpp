#include "pedcomb/isomorphism.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace pedcomb {

namespace {

void append_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>((v >> 24) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

constexpr char kCodeTag[] = "PDC1";

struct Canonicalizer {
  const Pedigree& p;
  int n;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::string best;
  std::vector<int> best_perm;

  Canonicalizer(const Pedigree& ped, std::uint64_t node_budget)
      : p(ped), n(ped.vertex_count()), budget(node_budget) {}

  std::vector<int> initial_colours() const {
    // Key: (extant label position + 1 or 0, out-degree, in-degree, depth).
    std::vector<std::array<int, 4>> keys(n);
    for (int v = 0; v < n; ++v) {
      keys[v] = {p.label_pos(v) + 1, p.is_founder(v) ? 0 : 2,
                 static_cast<int>(p.children(v).size()), p.depth_of(v)};
    }
    std::vector<std::array<int, 4>> distinct = keys;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> colours(n);
    for (int v = 0; v < n; ++v)
      colours[v] = static_cast<int>(
          std::lower_bound(distinct.begin(), distinct.end(), keys[v]) - distinct.begin());
    return colours;
  }

  // Signature refinement to a fixpoint. New colours are ranks of
  // (old colour, sorted parent colours, sorted child colours), so the old
  // cell order is preserved and the result is relabelling-invariant.
  void refine(std::vector<int>& colours) const {
    int count = 1 + *std::max_element(colours.begin(), colours.end());
    while (true) {
      std::vector<std::vector<int>> sigs(n);
      for (int v = 0; v < n; ++v) {
        std::vector<int>& s = sigs[v];
        s.push_back(colours[v]);
        if (p.is_founder(v)) {
          s.push_back(-1);
        } else {
          int a = colours[p.parents(v)[0]];
          int b = colours[p.parents(v)[1]];
          s.push_back(std::min(a, b));
          s.push_back(std::max(a, b));
        }
        std::vector<int> kids;
        kids.reserve(p.children(v).size());
        for (int c : p.children(v)) kids.push_back(colours[c]);
        std::sort(kids.begin(), kids.end());
        s.insert(s.end(), kids.begin(), kids.end());
      }
      std::vector<std::vector<int>> distinct = sigs;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      int next = static_cast<int>(distinct.size());
      for (int v = 0; v < n; ++v)
        colours[v] = static_cast<int>(
            std::lower_bound(distinct.begin(), distinct.end(), sigs[v]) - distinct.begin());
      if (next == count) return;
      count = next;
    }
  }

  // Codes are structural over extant label positions: cards on {x1} and
  // {x2} with the same shape compare equal. Every cross-pedigree operation
  // checks label lists first.
  std::string encode_leaf(const std::vector<int>& perm) const {
    std::string out = kCodeTag;
    append_u32(out, static_cast<std::uint32_t>(n));
    append_u32(out, static_cast<std::uint32_t>(p.order()));
    for (int pos = 0; pos < p.order(); ++pos)
      append_u32(out, static_cast<std::uint32_t>(perm[p.extant_vertex(pos)]));
    std::vector<std::pair<int, int>> arcs;
    for (int v = 0; v < n; ++v) {
      if (p.is_founder(v)) continue;
      arcs.push_back({perm[v], perm[p.parents(v)[0]]});
      arcs.push_back({perm[v], perm[p.parents(v)[1]]});
    }
    std::sort(arcs.begin(), arcs.end());
    append_u32(out, static_cast<std::uint32_t>(arcs.size()));
    for (const auto& [a, b] : arcs) {
      append_u32(out, static_cast<std::uint32_t>(a));
      append_u32(out, static_cast<std::uint32_t>(b));
    }
    return out;
  }

  // Individualize v: it keeps its cell's colour, cellmates move one colour
  // up, higher colours shift to stay contiguous.
  static std::vector<int> individualize(const std::vector<int>& colours, int v) {
    std::vector<int> out(colours.size());
    int c = colours[v];
    for (std::size_t u = 0; u < colours.size(); ++u) {
      if (colours[u] > c)
        out[u] = colours[u] + 1;
      else if (colours[u] == c && static_cast<int>(u) != v)
        out[u] = c + 1;
      else
        out[u] = colours[u];
    }
    return out;
  }

  void search(const std::vector<int>& colours) {
    if (++nodes > budget)
      throw ResourceLimitError("canonical labelling exceeded node budget");

    // First non-singleton cell in colour order. The choice must depend on
    // colours only, never on vertex indices.
    std::vector<int> cell_size(n, 0);
    for (int c : colours) cell_size[c]++;
    int target = -1;
    for (int c = 0; c < n && target < 0; ++c)
      if (cell_size[c] >= 2) target = c;
    if (target < 0) {
      std::string code = encode_leaf(colours);
      if (best.empty() || code < best) {
        best = std::move(code);
        best_perm = colours;
      }
      return;
    }

    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if (colours[v] == target) members.push_back(v);

    // Vertices with identical raw neighbourhoods are swappable by an
    // automorphism; branching on one representative suffices.
    std::vector<std::pair<std::vector<int>, std::vector<int>>> tried;
    for (int v : members) {
      std::vector<int> par;
      if (!p.is_founder(v)) par = {p.parents(v)[0], p.parents(v)[1]};
      std::pair<std::vector<int>, std::vector<int>> sig{par, p.children(v)};
      bool seen = false;
      for (const auto& t : tried)
        if (t == sig) {
          seen = true;
          break;
        }
      if (seen) continue;
      tried.push_back(std::move(sig));
      std::vector<int> next = individualize(colours, v);
      refine(next);
      search(next);
    }
  }

  CanonicalForm run() {
    CanonicalForm out;
    if (n == 0) {
      out.code.bytes = std::string(kCodeTag) + std::string(8, '\0');
      return out;
    }
    std::vector<int> colours = initial_colours();
    refine(colours);
    search(colours);
    out.code.bytes = std::move(best);
    out.labelling = std::move(best_perm);
    return out;
  }
};

}  // namespace

std::string CanonicalCode::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

CanonicalForm canonical_form(const Pedigree& p, const CanonOptions& opt) {
  Canonicalizer canon(p, opt.node_budget);
  return canon.run();
}

CanonicalCode canonical_code(const Pedigree& p, const CanonOptions& opt) {
  return canonical_form(p, opt).code;
}

bool verify_isomorphism(const Pedigree& p, const Pedigree& q,
                        const LabelledIsomorphism& m) {
  if (p.vertex_count() != q.vertex_count()) return false;
  if (static_cast<int>(m.map.size()) != p.vertex_count()) return false;
  std::vector<int> image(p.vertex_count(), -1);
  std::vector<bool> hit(q.vertex_count(), false);
  for (const auto& [from, to] : m.map) {
    int v = p.index_of(from);
    int w = q.index_of(to);
    if (v < 0 || w < 0 || image[v] >= 0 || hit[w]) return false;
    image[v] = w;
    hit[w] = true;
  }
  for (int v = 0; v < p.vertex_count(); ++v)
    if (image[v] < 0) return false;

  // Labels fixed pointwise.
  if (p.extant_labels() != q.extant_labels()) return false;
  for (int pos = 0; pos < p.order(); ++pos)
    if (image[p.extant_vertex(pos)] != q.extant_vertex(pos)) return false;

  // Arcs to arcs and non-arcs to non-arcs: parent pairs must correspond.
  for (int v = 0; v < p.vertex_count(); ++v) {
    int w = image[v];
    if (p.is_founder(v) != q.is_founder(w)) return false;
    if (p.is_founder(v)) continue;
    std::array<int, 2> a = {image[p.parents(v)[0]], image[p.parents(v)[1]]};
    std::sort(a.begin(), a.end());
    if (a != q.parents(w)) return false;
  }
  return true;
}

std::optional<LabelledIsomorphism> find_isomorphism(const Pedigree& p,
                                                    const Pedigree& q,
                                                    const CanonOptions& opt) {
  if (p.extant_labels() != q.extant_labels())
    throw std::invalid_argument("find_isomorphism: extant label lists differ");
  if (p.vertex_count() != q.vertex_count()) return std::nullopt;
  CanonicalForm fp = canonical_form(p, opt);
  CanonicalForm fq = canonical_form(q, opt);
  if (fp.code != fq.code) return std::nullopt;

  std::vector<int> inverse_q(q.vertex_count(), -1);
  for (int w = 0; w < q.vertex_count(); ++w) inverse_q[fq.labelling[w]] = w;
  LabelledIsomorphism iso;
  for (int v = 0; v < p.vertex_count(); ++v)
    iso.map.push_back({p.id_of(v), q.id_of(inverse_q[fp.labelling[v]])});
  std::sort(iso.map.begin(), iso.map.end());
  if (!verify_isomorphism(p, q, iso))
    throw std::logic_error("canonical labelling produced an invalid witness");
  return iso;
}

namespace {

bool next_combination(std::vector<int>& comb, int n) {
  int r = static_cast<int>(comb.size());
  for (int i = r - 1; i >= 0; --i) {
    if (comb[i] < n - (r - i)) {
      ++comb[i];
      for (int j = i + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

Deck deck(const Pedigree& p, int r, const CanonOptions& opt) {
  int n = p.order();
  if (r < 1 || r > n) throw std::invalid_argument("deck: r must be in [1, n]");
  Deck d;
  d.r = r;
  d.labels = p.extant_labels();
  std::vector<int> comb(r);
  for (int i = 0; i < r; ++i) comb[i] = i;
  while (true) {
    std::vector<std::string> keep;
    for (int pos : comb) keep.push_back(d.labels[pos]);
    d.entries[comb] = canonical_code(sub_pedigree(p, keep), opt);
    if (!next_combination(comb, n)) break;
  }
  return d;
}

bool are_r_hypomorphic(const Pedigree& p, const Pedigree& q, int r,
                       const CanonOptions& opt) {
  if (p.extant_labels() != q.extant_labels())
    throw std::invalid_argument("are_r_hypomorphic: extant label lists differ");
  Deck dp = deck(p, r, opt);
  Deck dq = deck(q, r, opt);
  return dp.entries == dq.entries;
}

std::string deck_to_json(const Deck& d) {
  nlohmann::ordered_json j;
  j["format"] = "pedcomb-deck-v1";
  j["r"] = d.r;
  j["labels"] = d.labels;
  auto entries = nlohmann::ordered_json::object();
  for (const auto& [key, code] : d.entries) {
    std::string name;
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i) name += ",";
      name += d.labels[key[i]];
    }
    entries[name] = code.hex();
  }
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

}  // namespace pedcomb
