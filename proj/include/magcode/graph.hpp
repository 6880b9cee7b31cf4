#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "magcode/pair_table.hpp"
#include "magcode/rational.hpp"
#include "magcode/scoring.hpp"
#include "magcode/universe.hpp"

namespace magcode {

/// Undirected simple graph as dense bitset rows.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }

  void connect(std::size_t u, std::size_t v);
  bool adjacent(std::size_t u, std::size_t v) const {
    return (rows_[u * words_ + v / 64] >> (v % 64)) & 1U;
  }
  const std::uint64_t* row(std::size_t u) const { return rows_.data() + u * words_; }
  std::size_t degree(std::size_t u) const;
  std::size_t edge_count() const;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

struct GraphOptions {
  ConfigSet config_set = ConfigSet::RotatedTranslations;
  unsigned threads = 0;
  /// Directory for the persisted pair-score table; none disables persistence.
  std::optional<std::filesystem::path> cache_dir;
  /// When false, a missing cache is an error instead of being computed.
  bool build_cache = true;
};

/// Vertices are universe members (deduplicated, lowest index kept) whose local
/// score passes tau_L; an edge joins two vertices whose pair score passes tau_G.
class CompatibilityGraph {
 public:
  const std::vector<std::size_t>& vertices() const { return vertices_; }
  const std::vector<Rational>& local_scores() const { return local_scores_; }
  const AdjacencyMatrix& adjacency() const { return adjacency_; }
  const PairTable& pair_table() const { return *table_; }
  std::shared_ptr<const PairTable> shared_pair_table() const { return table_; }
  const Threshold& local_threshold() const { return tau_l_; }
  const Threshold& global_threshold() const { return tau_g_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return adjacency_.edge_count(); }

  /// Same vertices and cached pair table, edges rebuilt for a new tau_G.
  CompatibilityGraph with_global_threshold(const Threshold& tau_g) const;

  friend CompatibilityGraph build_graph(const MatrixUniverse&, const Threshold&, const Threshold&,
                                        const GraphOptions&);

 private:
  std::vector<std::size_t> vertices_;
  std::vector<Rational> local_scores_;
  std::shared_ptr<const PairTable> table_;
  Threshold tau_l_;
  Threshold tau_g_;
  AdjacencyMatrix adjacency_;
};

CompatibilityGraph build_graph(const MatrixUniverse& u, const Threshold& tau_l, const Threshold& tau_g,
                               const GraphOptions& opts = {});

/// Universe indices that survive duplicate removal (first occurrence kept).
std::vector<std::size_t> distinct_members(const MatrixUniverse& u);

/// Local score of every member, packed kernel when the order allows it.
std::vector<Rational> local_scores(const std::vector<Encoding>& members, ConfigSet set);

}  // namespace magcode
