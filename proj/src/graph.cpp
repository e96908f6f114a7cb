#include "aqc/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "aqc/errors.hpp"
#include "aqc/rng.hpp"

namespace aqc {

namespace {

void check_n(int n) {
  if (n < 1 || n > 32) throw std::invalid_argument("graph: n must be in [1, 32]");
}

}  // namespace

int Graph::edge_count() const {
  int c = 0;
  for (int i = 0; i < n; ++i) c += std::popcount(adj[static_cast<std::size_t>(i)]);
  return c / 2;
}

Graph Graph::empty_graph(int n) {
  check_n(n);
  Graph g;
  g.n = n;
  g.adj.assign(static_cast<std::size_t>(n), 0);
  return g;
}

Graph Graph::complete(int n) {
  Graph g = empty_graph(n);
  const std::uint32_t all = (n == 32) ? ~0u : ((std::uint32_t{1} << n) - 1);
  for (int i = 0; i < n; ++i) g.adj[static_cast<std::size_t>(i)] = all & ~(std::uint32_t{1} << i);
  return g;
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g = empty_graph(n);
  for (const auto& [i, j] : edges) {
    if (i < 1 || j < 1 || i > n || j > n || i == j)
      throw std::invalid_argument("graph: bad edge endpoints");
    g.adj[static_cast<std::size_t>(i - 1)] |= std::uint32_t{1} << (j - 1);
    g.adj[static_cast<std::size_t>(j - 1)] |= std::uint32_t{1} << (i - 1);
  }
  return g;
}

Graph generate_random_graph(int n, std::uint64_t seed) {
  check_n(n);
  Graph g = Graph::empty_graph(n);
  g.seed = seed;
  std::uint64_t t = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++t) {
      if (rng::coin(seed, t)) {
        g.adj[static_cast<std::size_t>(i)] |= std::uint32_t{1} << j;
        g.adj[static_cast<std::size_t>(j)] |= std::uint32_t{1} << i;
      }
    }
  }
  return g;
}

bool is_clique(const Graph& g, std::uint32_t mask) {
  std::uint32_t rest = mask;
  while (rest != 0) {
    const int i = std::countr_zero(rest);
    rest &= rest - 1;
    // every later selected vertex must be adjacent to i
    if ((rest & ~g.adj[static_cast<std::size_t>(i)]) != 0) return false;
  }
  return true;
}

namespace {

struct MaxCliqueSearch {
  const std::vector<std::uint32_t>& adj;
  int best = 0;

  // Tomita-style branch and bound: candidates colored greedily, vertices
  // visited in reverse color order, pruned when |R| + color <= best.
  void expand(int rsize, std::uint32_t cand) {
    if (cand == 0) {
      best = std::max(best, rsize);
      return;
    }
    int order[32];
    int colors[32];
    int cnt = 0;
    std::uint32_t q = cand;
    for (int color = 1; q != 0; ++color) {
      std::uint32_t avail = q;
      while (avail != 0) {
        const int v = std::countr_zero(avail);
        const std::uint32_t vb = std::uint32_t{1} << v;
        avail &= ~(adj[static_cast<std::size_t>(v)] | vb);
        q &= ~vb;
        order[cnt] = v;
        colors[cnt] = color;
        ++cnt;
      }
    }
    std::uint32_t p = cand;
    for (int i = cnt - 1; i >= 0; --i) {
      if (rsize + colors[i] <= best) return;
      const int v = order[i];
      expand(rsize + 1, p & adj[static_cast<std::size_t>(v)]);
      p &= ~(std::uint32_t{1} << v);
    }
  }
};

// All cliques of exactly `need` more vertices, candidates consumed in
// ascending order so each clique is produced once.
void collect_cliques(const std::vector<std::uint32_t>& adj, std::uint32_t cur,
                     std::uint32_t cand, int need, std::vector<std::uint32_t>& out) {
  if (need == 0) {
    out.push_back(cur);
    return;
  }
  while (cand != 0 && std::popcount(cand) >= need) {
    const int v = std::countr_zero(cand);
    cand &= cand - 1;
    collect_cliques(adj, cur | (std::uint32_t{1} << v),
                    cand & adj[static_cast<std::size_t>(v)], need - 1, out);
  }
}

InstanceClassification classify_from(const std::vector<std::uint32_t>& masks, int k) {
  InstanceClassification cls;
  cls.max_clique_size = k;
  cls.cliques_at_max.reserve(masks.size());
  for (std::uint32_t m : masks) cls.cliques_at_max.push_back({m, std::popcount(m)});
  cls.is_unique = masks.size() == 1;
  return cls;
}

}  // namespace

InstanceClassification classify(const Graph& g, int exhaustive_bound) {
  if (g.n > exhaustive_bound)
    throw ResourceLimitError("classify: n = " + std::to_string(g.n) +
                             " above the exact-search bound " + std::to_string(exhaustive_bound));
  const std::uint32_t all = (g.n == 32) ? ~0u : ((std::uint32_t{1} << g.n) - 1);
  MaxCliqueSearch search{g.adj};
  search.best = 1;  // n >= 1, a single vertex is always a clique
  search.expand(0, all);
  std::vector<std::uint32_t> at_max;
  collect_cliques(g.adj, 0, all, search.best, at_max);
  std::sort(at_max.begin(), at_max.end());
  return classify_from(at_max, search.best);
}

InstanceClassification classify_brute(const Graph& g) {
  if (g.n > 20) throw ResourceLimitError("classify_brute: n > 20");
  int best = 0;
  std::vector<std::uint32_t> at_max;
  const std::uint64_t limit = std::uint64_t{1} << g.n;
  for (std::uint64_t m = 1; m < limit; ++m) {
    const auto mask = static_cast<std::uint32_t>(m);
    const int w = std::popcount(mask);
    if (w < best || !is_clique(g, mask)) continue;
    if (w > best) {
      best = w;
      at_max.clear();
    }
    at_max.push_back(mask);
  }
  return classify_from(at_max, best);
}

SampledInstance sample_until(int n, const SampleFilter& filter, std::uint64_t stream_seed,
                             std::uint64_t attempt_cap) {
  check_n(n);
  for (std::uint64_t attempt = 0; attempt < attempt_cap; ++attempt) {
    std::uint64_t s = rng::word(stream_seed, attempt);
    if (s == 0) s = 1;  // 0 is reserved for handcrafted graphs
    Graph g = generate_random_graph(n, s);
    InstanceClassification cls = classify(g);
    if (filter.k && cls.max_clique_size != *filter.k) continue;
    if (filter.unique_required && !cls.is_unique) continue;
    return {std::move(g), std::move(cls), attempt + 1};
  }
  throw ResourceLimitError("sample_until: no instance with the requested filters after " +
                           std::to_string(attempt_cap) + " attempts");
}

void write_graph(const Graph& g, std::ostream& os) {
  os << "n=" << g.n << " seed=" << g.seed << "\n";
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (g.edge(i, j)) os << (i + 1) << " " << (j + 1) << "\n";
}

std::string graph_to_string(const Graph& g) {
  std::ostringstream os;
  write_graph(g, os);
  return os.str();
}

Graph read_graph(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("graph file: empty");
  int n = 0;
  unsigned long long seed = 0;
  if (std::sscanf(line.c_str(), "n=%d seed=%llu", &n, &seed) != 2)
    throw std::invalid_argument("graph file: bad header line: " + line);
  Graph g = Graph::empty_graph(n);
  g.seed = seed;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    int i = 0, j = 0;
    if (std::sscanf(line.c_str(), "%d %d", &i, &j) != 2)
      throw std::invalid_argument("graph file: bad edge line: " + line);
    if (i < 1 || j <= i || j > n)
      throw std::invalid_argument("graph file: edge out of range: " + line);
    g.adj[static_cast<std::size_t>(i - 1)] |= std::uint32_t{1} << (j - 1);
    g.adj[static_cast<std::size_t>(j - 1)] |= std::uint32_t{1} << (i - 1);
  }
  return g;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open graph file: " + path);
  return read_graph(f);
}

void write_graph_file(const Graph& g, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open for writing: " + path);
  write_graph(g, f);
}

}  // namespace aqc
