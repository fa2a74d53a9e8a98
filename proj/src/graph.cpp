#include "hyperarr/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hyperarr/error.hpp"

namespace hyperarr {

void Graph::add_edge(unsigned u, unsigned v) {
  if (u == v) throw PreconditionError("graph loops are not allowed");
  vertices.insert(u);
  vertices.insert(v);
  edges.emplace(std::min(u, v), std::max(u, v));
}

bool Graph::has_edge(unsigned u, unsigned v) const { return edges.count({std::min(u, v), std::max(u, v)}) > 0; }

std::vector<unsigned> Graph::neighbors(unsigned v) const {
  std::vector<unsigned> out;
  for (const auto& [a, b] : edges) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Graph cycle_graph(const std::vector<unsigned>& cycle) {
  Graph g;
  for (std::size_t i = 0; i < cycle.size(); ++i) g.add_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
  return g;
}

bool is_chordal(const Graph& g) {
  std::map<unsigned, std::vector<unsigned>> adj;
  for (unsigned v : g.vertices) adj[v];
  for (const auto& [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // Maximum cardinality search; the reverse visiting order is a perfect
  // elimination ordering exactly when the graph is chordal.
  std::map<unsigned, int> weight, position;
  for (unsigned v : g.vertices) weight[v] = 0;
  std::vector<unsigned> order;
  while (order.size() < g.vertices.size()) {
    unsigned best = 0;
    int best_w = -1;
    for (const auto& [v, w] : weight)
      if (!position.count(v) && w > best_w) best = v, best_w = w;
    position[best] = static_cast<int>(order.size());
    order.push_back(best);
    for (unsigned u : adj[best])
      if (!position.count(u)) ++weight[u];
  }
  // Each vertex's earlier neighbours must form a clique; checking the latest
  // of them suffices.
  for (unsigned v : order) {
    std::vector<unsigned> earlier;
    for (unsigned u : adj[v])
      if (position[u] < position[v]) earlier.push_back(u);
    if (earlier.size() < 2) continue;
    const unsigned parent = *std::max_element(earlier.begin(), earlier.end(),
                                              [&](unsigned a, unsigned b) { return position[a] < position[b]; });
    for (unsigned u : earlier)
      if (u != parent && !g.has_edge(u, parent)) return false;
  }
  return true;
}

namespace {

bool induced_cycle(const Graph& g, const std::vector<unsigned>& path) {
  const std::size_t k = path.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const bool consecutive = j == i + 1 || (i == 0 && j == k - 1);
      if (g.has_edge(path[i], path[j]) != consecutive) return false;
    }
  return true;
}

}  // namespace

std::optional<std::vector<unsigned>> chordless_cycle(const Graph& g) {
  if (is_chordal(g)) return std::nullopt;
  const std::vector<unsigned> verts(g.vertices.begin(), g.vertices.end());
  // Paths start at their smallest vertex; the second vertex is below the last
  // so each cycle is met once, already in canonical orientation.
  for (std::size_t len = 4; len <= verts.size(); ++len) {
    std::optional<std::vector<unsigned>> found;
    std::vector<unsigned> path;
    auto extend = [&](auto&& self) -> void {
      if (found) return;
      if (path.size() == len) {
        if (path[1] < path.back() && induced_cycle(g, path)) found = path;
        return;
      }
      for (unsigned w : g.neighbors(path.back())) {
        if (w <= path.front() || std::find(path.begin(), path.end(), w) != path.end()) continue;
        path.push_back(w);
        self(self);
        path.pop_back();
      }
    };
    for (unsigned start : verts) {
      path = {start};
      extend(extend);
      if (found) return found;
    }
  }
  throw InvariantError("non-chordal graph without an induced cycle");
}

bool is_complete_star(const Graph& g) {
  if (g.vertices.size() <= 2) return g.edges.size() + 1 == g.vertices.size() || g.vertices.size() <= 1;
  for (unsigned hub : g.vertices) {
    if (g.edges.size() != g.vertices.size() - 1) return false;
    if (g.neighbors(hub).size() == g.vertices.size() - 1) return true;
  }
  return false;
}

std::string to_dot(const Graph& g, const std::string& name) {
  std::ostringstream out;
  out << "graph \"" << name << "\" {\n";
  for (unsigned v : g.vertices) out << "  " << v << ";\n";
  for (const auto& [a, b] : g.edges) out << "  " << a << " -- " << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace hyperarr
