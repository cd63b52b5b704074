#pragma once

#include <string>

#include "pedcomb/pedigree.hpp"

namespace pedcomb {

/// On-disk schema:
///   {"vertices": [id...], "arcs": [[child,parent]...], "extant": {"x1": id, ...}}
/// Arcs are lexicographically sorted and extant keys appear in label order,
/// so output is byte-stable.
std::string pedigree_to_json(const Pedigree& p);
Pedigree pedigree_from_json(const std::string& text);

/// Arcs drawn child->parent; extant vertices carry their labels, all other
/// vertices are unlabelled. Vertex and arc order is deterministic.
std::string pedigree_to_dot(const Pedigree& p);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace pedcomb
