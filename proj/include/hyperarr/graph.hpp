#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hyperarr {

// Simple undirected graph on integer vertices.
struct Graph {
  std::set<unsigned> vertices;
  std::set<std::pair<unsigned, unsigned>> edges;  // stored with first < second

  void add_vertex(unsigned v) { vertices.insert(v); }
  // Adds both endpoints; loops are rejected.
  void add_edge(unsigned u, unsigned v);
  bool has_edge(unsigned u, unsigned v) const;
  std::vector<unsigned> neighbors(unsigned v) const;
  bool operator==(const Graph&) const = default;
};

Graph cycle_graph(const std::vector<unsigned>& cycle);

// Maximum cardinality search followed by a perfect-elimination check.
bool is_chordal(const Graph& g);

// A shortest induced cycle of length >= 4, rotated to start at its smallest
// vertex and oriented toward the smaller neighbour; nullopt when chordal.
std::optional<std::vector<unsigned>> chordless_cycle(const Graph& g);

// True when some vertex is adjacent to every other vertex and no edge avoids it.
bool is_complete_star(const Graph& g);

std::string to_dot(const Graph& g, const std::string& name);

}  // namespace hyperarr
