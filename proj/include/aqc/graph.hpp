#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aqc {

/// Undirected n-vertex graph as per-vertex adjacency bitmasks.
/// Vertices are 1-based externally and 0-based internally; seed 0 is
/// reserved for handcrafted graphs.
struct Graph {
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> adj;  // adj[i] bit j set iff edge {i,j}

  bool edge(int i, int j) const { return (adj[static_cast<std::size_t>(i)] >> j) & 1u; }
  int edge_count() const;

  static Graph empty_graph(int n);
  static Graph complete(int n);
  /// Edge list with 1-based endpoints.
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
};

struct VertexSubset {
  std::uint32_t mask = 0;
  int weight = 0;
};

struct InstanceClassification {
  int max_clique_size = 0;
  std::vector<VertexSubset> cliques_at_max;  // masks in ascending order
  bool is_unique = false;
};

/// Each of the n(n-1)/2 vertex pairs is present independently with
/// probability 1/2, drawn from the sm64ctr-v1 stream of `seed` in
/// row-major (i < j) order. Pure function of (n, seed).
Graph generate_random_graph(int n, std::uint64_t seed);

/// True iff every pair of vertices selected by `mask` is connected.
/// Subsets of weight 0 and 1 are cliques.
bool is_clique(const Graph& g, std::uint32_t mask);

/// Exact maximum clique size, all cliques of that size, uniqueness flag.
/// Branch-and-bound with a greedy coloring bound; refuses n above
/// `exhaustive_bound` so the oracle stays exact.
InstanceClassification classify(const Graph& g, int exhaustive_bound = 24);

/// Plain enumeration of all 2^n subsets; independent cross-check for
/// classify. Refuses n > 20.
InstanceClassification classify_brute(const Graph& g);

struct SampleFilter {
  std::optional<int> k;         // require max_clique_size == k
  bool unique_required = false; // require exactly one maximum clique
};

struct SampledInstance {
  Graph graph;
  InstanceClassification cls;
  std::uint64_t attempts = 0;  // graphs generated, including the accepted one
};

/// Generates graphs from the seed stream word(stream_seed, 0), word(stream_seed, 1), ...
/// until one passes the filters. Throws ResourceLimitError with the attempt
/// count once `attempt_cap` graphs have been rejected.
SampledInstance sample_until(int n, const SampleFilter& filter, std::uint64_t stream_seed,
                             std::uint64_t attempt_cap = 1'000'000);

/// Text format, bit-exact:
///   line 1: "n=<int> seed=<u64>"
///   then one edge per line, "<i> <j>" with 1 <= i < j <= n, ascending
///   lexicographic order, newline-terminated ASCII.
void write_graph(const Graph& g, std::ostream& os);
std::string graph_to_string(const Graph& g);
Graph read_graph(std::istream& is);
Graph read_graph_file(const std::string& path);
void write_graph_file(const Graph& g, const std::string& path);

}  // namespace aqc
