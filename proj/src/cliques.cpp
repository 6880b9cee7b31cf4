#include "magcode/cliques.hpp"

#include <algorithm>
#include <bit>
#include <optional>

namespace magcode {

CliqueBudgetError::CliqueBudgetError(std::uint64_t expansions, CliqueCheckpoint checkpoint,
                                     std::size_t outer_total)
    : BudgetError("clique search budget of " + std::to_string(expansions) +
                  " expansions exhausted after " + std::to_string(checkpoint.next_outer) + "/" +
                  std::to_string(outer_total) + " outer vertices (" +
                  std::to_string(checkpoint.found.size()) + " cliques so far)"),
      expansions_(expansions),
      checkpoint_(std::move(checkpoint)) {}

namespace {

// Degeneracy ordering by repeated minimum-degree removal.
std::vector<std::size_t> degeneracy_order(const AdjacencyMatrix& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> degree(n);
  std::size_t max_deg = 0;
  for (std::size_t v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    max_deg = std::max(max_deg, degree[v]);
  }
  std::vector<std::vector<std::size_t>> buckets(max_deg + 1);
  for (std::size_t v = 0; v < n; ++v) buckets[degree[v]].push_back(v);
  std::vector<bool> removed(n, false);
  std::vector<std::size_t> order;
  order.reserve(n);
  std::size_t d = 0;
  while (order.size() < n) {
    d = 0;
    while (buckets[d].empty()) ++d;
    const std::size_t v = buckets[d].back();
    buckets[d].pop_back();
    if (removed[v] || degree[v] != d) continue;
    removed[v] = true;
    order.push_back(v);
    for (std::size_t w = 0; w < g.words(); ++w) {
      std::uint64_t bits = g.row(v)[w];
      while (bits) {
        const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        if (!removed[u]) {
          --degree[u];
          buckets[degree[u]].push_back(u);
        }
      }
    }
  }
  return order;
}

using Bits = std::vector<std::uint64_t>;

std::size_t count(const Bits& b) {
  std::size_t c = 0;
  for (auto w : b) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

// Bron–Kerbosch over a local subgraph (the neighbourhood of one outer vertex).
class LocalSearch {
 public:
  // Size keeps a single witness and prunes ties, so it only finds larger cliques.
  enum class Mode { AtLeast, Maximum, Size };

  LocalSearch(const AdjacencyMatrix& g, std::vector<std::size_t> local_to_global, Mode mode,
              std::size_t& floor, std::vector<VertexSet>& sink,
              std::optional<std::vector<VertexSet>>& stash, std::uint64_t& expansions,
              std::uint64_t budget)
      : globals_(std::move(local_to_global)),
        words_((globals_.size() + 63) / 64),
        adj_(globals_.size() * words_, 0),
        mode_(mode),
        floor_(floor),
        sink_(sink),
        stash_(stash),
        expansions_(expansions),
        budget_(budget) {
    for (std::size_t a = 0; a < globals_.size(); ++a)
      for (std::size_t b = a + 1; b < globals_.size(); ++b)
        if (g.adjacent(globals_[a], globals_[b])) {
          adj_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
          adj_[b * words_ + a / 64] |= std::uint64_t{1} << (a % 64);
        }
  }

  // Returns false when the budget ran out.
  bool run(std::size_t root, std::size_t later_count) {
    Bits p(words_, 0), x(words_, 0);
    for (std::size_t k = 0; k < globals_.size(); ++k) {
      auto& target = k < later_count ? p : x;
      target[k / 64] |= std::uint64_t{1} << (k % 64);
    }
    root_ = root;
    return expand(p, x);
  }

 private:
  bool expand(Bits& p, Bits& x) {
    if (++expansions_ > budget_) return false;
    const std::size_t pc = count(p);
    if (pc == 0) {
      if (count(x) == 0) report();
      return true;
    }
    const std::size_t reach = 1 + r_.size() + pc;
    if (reach < floor_) return true;

    // Tomita pivot: the vertex of P ∪ X with most neighbours in P.
    std::size_t pivot = 0, best = 0;
    bool have = false;
    for (const Bits* s : {&p, &x}) {
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = (*s)[w];
        while (bits) {
          const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
          bits &= bits - 1;
          std::size_t c = 0;
          const std::uint64_t* row = adj_.data() + u * words_;
          for (std::size_t k = 0; k < words_; ++k) c += static_cast<std::size_t>(std::popcount(p[k] & row[k]));
          if (!have || c > best) {
            pivot = u;
            best = c;
            have = true;
          }
        }
      }
    }

    const std::uint64_t* prow = adj_.data() + pivot * words_;
    Bits candidates(words_);
    for (std::size_t w = 0; w < words_; ++w) candidates[w] = p[w] & ~prow[w];
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = candidates[w];
      while (bits) {
        const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        const std::uint64_t* row = adj_.data() + v * words_;
        Bits p2(words_), x2(words_);
        for (std::size_t k = 0; k < words_; ++k) {
          p2[k] = p[k] & row[k];
          x2[k] = x[k] & row[k];
        }
        r_.push_back(v);
        const bool ok = expand(p2, x2);
        r_.pop_back();
        if (!ok) return false;
        p[w] &= ~(std::uint64_t{1} << (v % 64));
        x[w] |= std::uint64_t{1} << (v % 64);
        if (1 + r_.size() + count(p) < floor_) return true;
      }
    }
    return true;
  }

  void report() {
    const std::size_t size = 1 + r_.size();
    if (size < floor_) return;
    if ((mode_ == Mode::Maximum && size > floor_) || mode_ == Mode::Size) {
      if (!stash_) stash_ = sink_;
      sink_.clear();
      floor_ = mode_ == Mode::Size ? size + 1 : size;
    }
    VertexSet clique{root_};
    for (auto v : r_) clique.push_back(globals_[v]);
    std::sort(clique.begin(), clique.end());
    sink_.push_back(std::move(clique));
  }

  std::vector<std::size_t> globals_;
  std::size_t words_;
  std::vector<std::uint64_t> adj_;
  Mode mode_;
  std::size_t& floor_;
  std::vector<VertexSet>& sink_;
  std::optional<std::vector<VertexSet>>& stash_;
  std::uint64_t& expansions_;
  std::uint64_t budget_;
  std::size_t root_ = 0;
  std::vector<std::size_t> r_;
};

std::vector<VertexSet> enumerate(const AdjacencyMatrix& g, std::size_t floor, LocalSearch::Mode mode,
                                 const CliqueSearchOptions& opts) {
  const auto order = degeneracy_order(g);
  std::vector<std::size_t> position(g.size());
  for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = k;

  std::vector<VertexSet> found;
  std::size_t start = 0;
  if (opts.resume) {
    found = opts.resume->found;
    start = opts.resume->next_outer;
    if (mode == LocalSearch::Mode::Maximum) floor = std::max(floor, opts.resume->best_size);
    if (mode == LocalSearch::Mode::Size) floor = std::max(floor, opts.resume->best_size + 1);
  }

  std::uint64_t expansions = 0;
  for (std::size_t k = start; k < order.size(); ++k) {
    const std::size_t v = order[k];
    std::vector<std::size_t> later, earlier;
    for (std::size_t w = 0; w < g.words(); ++w) {
      std::uint64_t bits = g.row(v)[w];
      while (bits) {
        const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        (position[u] > k ? later : earlier).push_back(u);
      }
    }
    if (1 + later.size() < floor) continue;
    std::vector<std::size_t> locals = later;
    locals.insert(locals.end(), earlier.begin(), earlier.end());

    // Cliques from a partially explored outer vertex are dropped on budget
    // exhaustion so that resuming at k reproduces the uninterrupted result.
    const std::size_t size_before = found.size();
    const std::size_t floor_before = floor;
    std::optional<std::vector<VertexSet>> stash;
    LocalSearch search(g, std::move(locals), mode, floor, found, stash, expansions, opts.budget);
    if (!search.run(v, later.size())) {
      std::vector<VertexSet> kept = stash ? std::move(*stash) : std::move(found);
      kept.resize(std::min(kept.size(), size_before));
      std::size_t best = 0;
      if (mode == LocalSearch::Mode::Maximum) best = floor_before;
      if (mode == LocalSearch::Mode::Size) best = floor_before - 1;
      CliqueCheckpoint cp{k, std::move(kept), best};
      throw CliqueBudgetError(opts.budget, std::move(cp), order.size());
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace

std::vector<VertexSet> maximal_cliques(const AdjacencyMatrix& g, std::size_t size_floor,
                                       const CliqueSearchOptions& opts) {
  if (size_floor < 1) throw ValidationError("clique size floor must be at least 1");
  return enumerate(g, size_floor, LocalSearch::Mode::AtLeast, opts);
}

std::vector<VertexSet> maximum_cliques(const AdjacencyMatrix& g, const CliqueSearchOptions& opts) {
  return enumerate(g, 1, LocalSearch::Mode::Maximum, opts);
}

VertexSet maximum_clique(const AdjacencyMatrix& g, const CliqueSearchOptions& opts) {
  auto found = enumerate(g, 1, LocalSearch::Mode::Size, opts);
  return found.empty() ? VertexSet{} : std::move(found.front());
}

Clique to_clique(const CompatibilityGraph& g, const VertexSet& local) {
  Clique c;
  c.achieved_sg = Rational(0);
  c.achieved_sl = Rational(0);
  bool first_sl = true;
  for (std::size_t a = 0; a < local.size(); ++a) {
    c.members.push_back(g.vertices()[local[a]]);
    const Rational sl = g.local_scores()[local[a]];
    if (first_sl || sl < c.achieved_sl) c.achieved_sl = sl;
    first_sl = false;
    for (std::size_t b = a + 1; b < local.size(); ++b) {
      const Rational s = g.pair_table().score(local[a], local[b]);
      if (s < c.achieved_sg) c.achieved_sg = s;
    }
  }
  std::sort(c.members.begin(), c.members.end());
  return c;
}

std::vector<Clique> max_cliques(const CompatibilityGraph& g, std::size_t size_floor,
                                const CliqueSearchOptions& opts) {
  std::vector<Clique> out;
  for (const auto& local : maximal_cliques(g.adjacency(), size_floor, opts)) out.push_back(to_clique(g, local));
  std::sort(out.begin(), out.end(), [](const Clique& a, const Clique& b) { return a.members < b.members; });
  return out;
}

}  // namespace magcode
