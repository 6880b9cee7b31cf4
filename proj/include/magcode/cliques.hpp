#pragma once

#include <cstdint>
#include <vector>

#include "magcode/error.hpp"
#include "magcode/graph.hpp"

namespace magcode {

using VertexSet = std::vector<std::size_t>;

/// Resume point for an interrupted clique enumeration: every outer (degeneracy
/// order) position before `next_outer` is fully explored and its cliques are in
/// `found`.
struct CliqueCheckpoint {
  std::size_t next_outer = 0;
  std::vector<VertexSet> found;
  std::size_t best_size = 0;
};

struct CliqueSearchOptions {
  /// Maximum number of recursive expansions before giving up.
  std::uint64_t budget = 1'000'000'000ULL;
  const CliqueCheckpoint* resume = nullptr;
};

class CliqueBudgetError : public BudgetError {
 public:
  CliqueBudgetError(std::uint64_t expansions, CliqueCheckpoint checkpoint, std::size_t outer_total);
  const CliqueCheckpoint& checkpoint() const { return checkpoint_; }
  std::uint64_t expansions() const { return expansions_; }

 private:
  std::uint64_t expansions_;
  CliqueCheckpoint checkpoint_;
};

/// Every maximal clique with at least `size_floor` vertices (Bron–Kerbosch with
/// Tomita pivoting under a degeneracy-ordered outer loop). Cliques are sorted
/// and listed in canonical lexicographic order.
std::vector<VertexSet> maximal_cliques(const AdjacencyMatrix& g, std::size_t size_floor,
                                       const CliqueSearchOptions& opts = {});

/// All cliques of maximum size, canonical order. Empty graph gives no cliques.
std::vector<VertexSet> maximum_cliques(const AdjacencyMatrix& g, const CliqueSearchOptions& opts = {});

/// One clique of maximum size (branch and bound that skips ties); use this when
/// only the clique number is needed and maximum cliques may be too many to list.
VertexSet maximum_clique(const AdjacencyMatrix& g, const CliqueSearchOptions& opts = {});

struct Clique {
  /// Universe indices, ascending.
  std::vector<std::size_t> members;
  /// Minimum pairwise score among members (0 for a single member).
  Rational achieved_sg;
  /// Minimum member local score.
  Rational achieved_sl;
};

/// Maps graph-local cliques to universe indices with scores recomputed from the members.
Clique to_clique(const CompatibilityGraph& g, const VertexSet& local);

/// maximal_cliques on a compatibility graph, reported in universe terms.
std::vector<Clique> max_cliques(const CompatibilityGraph& g, std::size_t size_floor,
                                const CliqueSearchOptions& opts = {});

}  // namespace magcode
