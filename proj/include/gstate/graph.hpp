#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gstate/gf2.hpp"

namespace gstate {

/// Undirected simple graph with packed adjacency rows.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), adj_(n, n) {}

  std::size_t order() const { return n_; }

  bool edge(std::size_t a, std::size_t b) const { return adj_.get(a, b); }
  void set_edge(std::size_t a, std::size_t b, bool present);
  void toggle_edge(std::size_t a, std::size_t b);

  const gf2::BitMatrix& adjacency() const { return adj_; }

  gf2::BitVec neighbors(std::size_t a) const { return adj_.row_vec(a); }
  std::size_t degree(std::size_t a) const;
  std::size_t min_degree() const;
  std::size_t edge_count() const;

  bool connected() const;

  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  std::size_t n_ = 0;
  gf2::BitMatrix adj_;
};

// Named families. Vertex numbering is fixed so results are reproducible:
// paths/cycles/complete graphs number 0..n-1 in order, grids are row-major,
// honeycombs use brick-wall unit-cell order (cell (r,c) holds sites
// 2*(r*cols+c) and 2*(r*cols+c)+1).
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph grid_graph(std::size_t rows, std::size_t cols, bool periodic);
Graph honeycomb_graph(std::size_t cell_rows, std::size_t cell_cols,
                      bool periodic);

/// Parses a family spec like "cycle:6", "grid:3x4:open",
/// "honeycomb:2x2:periodic", "complete:5". Throws std::invalid_argument on
/// unknown families or invalid sizes.
Graph make_family(const std::string& spec);

/// The |A| x (n-|A|) submatrix of adjacency bits crossing the cut (A, V\A).
/// Rows follow A in ascending vertex order, columns V\A likewise.
/// A must be nonempty and a proper subset.
gf2::BitMatrix submatrix_cut(const Graph& g, const std::vector<std::size_t>& a);

/// Toggle all edges inside the neighborhood of vertex a.
Graph local_complement(const Graph& g, std::size_t a);

struct OrbitMinDegree {
  std::size_t min_degree = 0;
  std::vector<std::size_t> witness;  // complementation vertices from the input
  bool exact = true;                 // false when the budget cut the search off
  std::size_t orbit_size = 0;        // distinct graphs visited
};

/// Minimum vertex degree over the local-complementation orbit of g.
/// Exact when the orbit closure fits within `budget` distinct graphs,
/// otherwise an upper bound with exact=false. The witness reproduces a graph
/// achieving the reported degree when replayed through local_complement.
OrbitMinDegree lc_orbit_min_degree(const Graph& g,
                                   std::size_t budget = 1'000'000);

// Edge-list text format: first line n, then one "u v" pair per line,
// 0-based; '#' starts a comment.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list_file(const std::string& path);

}  // namespace gstate
