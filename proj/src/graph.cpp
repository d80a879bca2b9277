#include "gstate/graph.hpp"

#include <charconv>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace gstate {

void Graph::set_edge(std::size_t a, std::size_t b, bool present) {
  if (a >= n_ || b >= n_) throw std::out_of_range("Graph: vertex out of range");
  if (a == b) throw std::invalid_argument("Graph: no self loops");
  adj_.set(a, b, present);
  adj_.set(b, a, present);
}

void Graph::toggle_edge(std::size_t a, std::size_t b) {
  set_edge(a, b, !edge(a, b));
}

std::size_t Graph::degree(std::size_t a) const {
  return adj_.row_vec(a).popcount();
}

std::size_t Graph::min_degree() const {
  std::size_t best = n_;
  for (std::size_t a = 0; a < n_; ++a) best = std::min(best, degree(a));
  return best;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (std::size_t a = 0; a < n_; ++a) total += degree(a);
  return total / 2;
}

bool Graph::connected() const {
  if (n_ == 0) return true;
  std::vector<bool> seen(n_, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t u = 0; u < n_; ++u) {
      if (edge(v, u) && !seen[u]) {
        seen[u] = true;
        ++reached;
        queue.push_back(u);
      }
    }
  }
  return reached == n_;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = a + 1; b < n_; ++b)
      if (edge(a, b)) out.emplace_back(a, b);
  return out;
}

Graph path_graph(std::size_t n) {
  if (n < 2) throw std::invalid_argument("path: n >= 2 required");
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.set_edge(i, i + 1, true);
  return g;
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle: n >= 3 required");
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) g.set_edge(i, (i + 1) % n, true);
  return g;
}

Graph complete_graph(std::size_t n) {
  if (n < 2) throw std::invalid_argument("complete: n >= 2 required");
  Graph g(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) g.set_edge(a, b, true);
  return g;
}

Graph grid_graph(std::size_t rows, std::size_t cols, bool periodic) {
  if (rows < 2 || cols < 2)
    throw std::invalid_argument("grid: each dimension >= 2 required");
  Graph g(rows * cols);
  auto at = [cols](std::size_t r, std::size_t c) { return r * cols + c; };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols)
        g.set_edge(at(r, c), at(r, c + 1), true);
      else if (periodic)
        g.set_edge(at(r, c), at(r, 0), true);
      if (r + 1 < rows)
        g.set_edge(at(r, c), at(r + 1, c), true);
      else if (periodic)
        g.set_edge(at(r, c), at(0, c), true);
    }
  return g;
}

Graph honeycomb_graph(std::size_t cell_rows, std::size_t cell_cols,
                      bool periodic) {
  if (cell_rows < 1 || cell_cols < 1)
    throw std::invalid_argument("honeycomb: cell counts >= 1 required");
  if (periodic && (cell_rows < 2 || cell_cols < 2))
    throw std::invalid_argument(
        "honeycomb: periodic boundaries need >= 2 cells per direction");
  Graph g(2 * cell_rows * cell_cols);
  auto site = [cell_cols](std::size_t r, std::size_t c, std::size_t sub) {
    return 2 * (r * cell_cols + c) + sub;
  };
  for (std::size_t r = 0; r < cell_rows; ++r)
    for (std::size_t c = 0; c < cell_cols; ++c) {
      g.set_edge(site(r, c, 0), site(r, c, 1), true);
      if (c + 1 < cell_cols)
        g.set_edge(site(r, c, 1), site(r, c + 1, 0), true);
      else if (periodic)
        g.set_edge(site(r, c, 1), site(r, 0, 0), true);
      if (r + 1 < cell_rows)
        g.set_edge(site(r, c, 1), site(r + 1, c, 0), true);
      else if (periodic)
        g.set_edge(site(r, c, 1), site(0, c, 0), true);
    }
  return g;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::size_t parse_count(const std::string& s) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("invalid count '" + s + "'");
  return value;
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& s) {
  auto parts = split(s, 'x');
  if (parts.size() != 2)
    throw std::invalid_argument("invalid dimensions '" + s + "'");
  return {parse_count(parts[0]), parse_count(parts[1])};
}

bool parse_boundary(const std::string& s) {
  if (s == "open") return false;
  if (s == "periodic") return true;
  throw std::invalid_argument("boundary must be 'open' or 'periodic', got '" +
                              s + "'");
}

}  // namespace

Graph make_family(const std::string& spec) {
  auto parts = split(spec, ':');
  const std::string& name = parts[0];
  if (name == "path" && parts.size() == 2) return path_graph(parse_count(parts[1]));
  if (name == "cycle" && parts.size() == 2)
    return cycle_graph(parse_count(parts[1]));
  if (name == "complete" && parts.size() == 2)
    return complete_graph(parse_count(parts[1]));
  if (name == "grid" && parts.size() == 3) {
    auto [r, c] = parse_dims(parts[1]);
    return grid_graph(r, c, parse_boundary(parts[2]));
  }
  if (name == "honeycomb" && parts.size() == 3) {
    auto [r, c] = parse_dims(parts[1]);
    return honeycomb_graph(r, c, parse_boundary(parts[2]));
  }
  throw std::invalid_argument("unknown graph family spec '" + spec + "'");
}

gf2::BitMatrix submatrix_cut(const Graph& g,
                             const std::vector<std::size_t>& a) {
  const std::size_t n = g.order();
  if (a.empty() || a.size() >= n)
    throw std::invalid_argument("submatrix_cut: A must be a proper nonempty subset");
  std::vector<bool> in_a(n, false);
  for (std::size_t v : a) {
    if (v >= n) throw std::out_of_range("submatrix_cut: vertex out of range");
    in_a[v] = true;
  }
  std::vector<std::size_t> rows, cols;
  for (std::size_t v = 0; v < n; ++v) (in_a[v] ? rows : cols).push_back(v);

  gf2::BitMatrix cut(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (g.edge(rows[i], cols[j])) cut.set(i, j, true);
  return cut;
}

Graph local_complement(const Graph& g, std::size_t a) {
  if (a >= g.order())
    throw std::out_of_range("local_complement: vertex out of range");
  Graph out = g;
  std::vector<std::size_t> nbrs;
  for (std::size_t v = 0; v < g.order(); ++v)
    if (g.edge(a, v)) nbrs.push_back(v);
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j)
      out.toggle_edge(nbrs[i], nbrs[j]);
  return out;
}

namespace {

// Upper-triangle adjacency packed into words: the visited-set key for orbit
// search. Equal keys mean equal labeled graphs.
using OrbitKey = std::vector<gf2::Word>;

struct OrbitKeyHash {
  std::size_t operator()(const OrbitKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (gf2::Word w : k) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }
};

OrbitKey pack_key(const Graph& g) {
  const std::size_t n = g.order();
  OrbitKey key(gf2::words_for(n * (n - 1) / 2), 0);
  std::size_t bit = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b, ++bit)
      if (g.edge(a, b)) key[bit / gf2::kWordBits] |= gf2::Word{1}
                                                     << (bit % gf2::kWordBits);
  return key;
}

Graph unpack_key(const OrbitKey& key, std::size_t n) {
  Graph g(n);
  std::size_t bit = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b, ++bit)
      if ((key[bit / gf2::kWordBits] >> (bit % gf2::kWordBits)) & 1u)
        g.set_edge(a, b, true);
  return g;
}

}  // namespace

OrbitMinDegree lc_orbit_min_degree(const Graph& g, std::size_t budget) {
  if (!g.connected())
    throw std::invalid_argument("lc_orbit_min_degree: graph must be connected");
  const std::size_t n = g.order();

  OrbitMinDegree result;
  result.min_degree = g.min_degree();
  if (n <= 2 || result.min_degree <= 1) {
    result.orbit_size = 1;
    return result;  // degree 1 cannot be beaten on a connected graph
  }

  struct Entry {
    OrbitKey key;
    std::int64_t parent;
    std::size_t via_vertex;
  };
  std::vector<Entry> entries;
  std::unordered_map<OrbitKey, std::size_t, OrbitKeyHash> seen;

  entries.push_back({pack_key(g), -1, 0});
  seen.emplace(entries[0].key, 0);
  std::size_t best_entry = 0;

  auto rebuild_witness = [&](std::size_t idx) {
    std::vector<std::size_t> path;
    for (std::int64_t cur = static_cast<std::int64_t>(idx); cur > 0;
         cur = entries[cur].parent)
      path.push_back(entries[cur].via_vertex);
    return std::vector<std::size_t>(path.rbegin(), path.rend());
  };

  std::size_t head = 0;
  while (head < entries.size()) {
    Graph current = unpack_key(entries[head].key, n);
    for (std::size_t v = 0; v < n; ++v) {
      Graph next = local_complement(current, v);
      OrbitKey key = pack_key(next);
      if (seen.contains(key)) continue;
      if (entries.size() >= budget) {
        // Orbit closure did not fit; report what we saw as an upper bound.
        result.exact = false;
        result.orbit_size = entries.size();
        result.witness = rebuild_witness(best_entry);
        return result;
      }
      entries.push_back({std::move(key), static_cast<std::int64_t>(head), v});
      seen.emplace(entries.back().key, entries.size() - 1);
      std::size_t deg = next.min_degree();
      if (deg < result.min_degree) {
        result.min_degree = deg;
        best_entry = entries.size() - 1;
        if (deg <= 1) {
          result.orbit_size = entries.size();
          result.witness = rebuild_witness(best_entry);
          return result;
        }
      }
    }
    ++head;
  }

  result.orbit_size = entries.size();
  result.witness = rebuild_witness(best_entry);
  return result;
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  bool have_n = false;
  Graph g;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    if (!have_n) {
      if (ss >> n) {
        g = Graph(n);
        have_n = true;
        std::size_t extra;
        if (ss >> extra)
          throw std::invalid_argument("edge list: header line must hold n only");
      }
      continue;
    }
    std::size_t u, v;
    if (ss >> u) {
      if (!(ss >> v))
        throw std::invalid_argument("edge list: incomplete pair at line " +
                                    std::to_string(lineno));
      if (u >= n || v >= n)
        throw std::invalid_argument("edge list: vertex out of range at line " +
                                    std::to_string(lineno));
      g.set_edge(u, v, true);
    }
  }
  if (!have_n) throw std::invalid_argument("edge list: missing vertex count");
  return g;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open edge list file '" + path + "'");
  return read_edge_list(in);
}

}  // namespace gstate
