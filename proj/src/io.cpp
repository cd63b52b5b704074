#include "pedcomb/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pedcomb {

using ordered_json = nlohmann::ordered_json;

std::string pedigree_to_json(const Pedigree& p) {
  RawPedigree raw = p.to_raw();
  ordered_json j;
  j["vertices"] = raw.vertices;
  auto arcs = ordered_json::array();
  for (const auto& [c, q] : raw.arcs) arcs.push_back({c, q});
  j["arcs"] = std::move(arcs);
  auto extant = ordered_json::object();
  for (const auto& [label, id] : raw.extant) extant[label] = id;
  j["extant"] = std::move(extant);
  return j.dump(2) + "\n";
}

Pedigree pedigree_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("pedigree JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("arcs") ||
      !j.contains("extant"))
    throw std::invalid_argument("pedigree JSON: expected vertices/arcs/extant");
  RawPedigree raw;
  for (const auto& v : j["vertices"]) raw.vertices.push_back(v.get<VertexId>());
  for (const auto& a : j["arcs"]) {
    if (!a.is_array() || a.size() != 2)
      throw std::invalid_argument("pedigree JSON: arc must be [child, parent]");
    raw.arcs.push_back({a[0].get<VertexId>(), a[1].get<VertexId>()});
  }
  for (const auto& [label, id] : j["extant"].items())
    raw.extant.push_back({label, id.get<VertexId>()});
  return Pedigree::from_raw(raw);
}

std::string pedigree_to_dot(const Pedigree& p) {
  std::ostringstream os;
  os << "digraph pedigree {\n";
  os << "  rankdir=BT;\n";
  for (int v = 0; v < p.vertex_count(); ++v) {
    os << "  v" << p.id_of(v);
    if (p.label_pos(v) >= 0)
      os << " [label=\"" << p.extant_labels()[p.label_pos(v)] << "\", shape=box]";
    else
      os << " [label=\"\", shape=circle]";
    os << ";\n";
  }
  for (int v = 0; v < p.vertex_count(); ++v) {
    if (p.is_founder(v)) continue;
    for (int par : p.parents(v))
      os << "  v" << p.id_of(v) << " -> v" << p.id_of(par) << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace pedcomb
