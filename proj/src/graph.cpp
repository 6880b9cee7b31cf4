#include "magcode/graph.hpp"

#include <bit>
#include <map>
#include <sstream>

#include "magcode/packed.hpp"

namespace magcode {

AdjacencyMatrix::AdjacencyMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n * words_, 0) {}

void AdjacencyMatrix::connect(std::size_t u, std::size_t v) {
  if (u == v) return;
  rows_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  rows_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
}

std::size_t AdjacencyMatrix::degree(std::size_t u) const {
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(row(u)[w]));
  return d;
}

std::size_t AdjacencyMatrix::edge_count() const {
  std::size_t total = 0;
  for (std::size_t u = 0; u < n_; ++u) total += degree(u);
  return total / 2;
}

std::vector<std::size_t> distinct_members(const MatrixUniverse& u) {
  std::vector<std::size_t> keep;
  std::map<std::vector<int>, std::size_t> seen;
  for (std::size_t i = 0; i < u.members.size(); ++i) {
    const CellMatrix& c = u.members[i].cells();
    std::vector<int> key(c.data(), c.data() + c.size());
    if (seen.emplace(std::move(key), i).second) keep.push_back(i);
  }
  return keep;
}

std::vector<Rational> local_scores(const std::vector<Encoding>& members, ConfigSet set) {
  std::vector<Rational> out;
  out.reserve(members.size());
  if (!members.empty() && members.front().order() <= kMaxPackedOrder) {
    const PackedScorer scorer(members.front().order(), set);
    for (const auto& m : members) {
      out.emplace_back(scorer.local_numerator(PackedGrid::pack(m)), scorer.denominator());
    }
    return out;
  }
  for (const auto& m : members) out.push_back(local_score(m, set).local_score);
  return out;
}

namespace {

std::filesystem::path cache_path(const std::filesystem::path& dir, std::uint64_t key) {
  std::ostringstream name;
  name << "pairs-" << std::hex << key << ".bin";
  return dir / name.str();
}

std::shared_ptr<const PairTable> obtain_table(const std::vector<Encoding>& members, const GraphOptions& opts) {
  const std::uint64_t key = PairTable::key_for(members, opts.config_set);
  if (opts.cache_dir) {
    const auto path = cache_path(*opts.cache_dir, key);
    if (std::filesystem::exists(path)) return std::make_shared<const PairTable>(PairTable::load(path, key));
    if (!opts.build_cache) throw IoError("pair-score cache missing and building is disabled: " + path.string());
    auto table = PairTable::compute(members, opts.config_set, opts.threads);
    table.save(path);
    return std::make_shared<const PairTable>(std::move(table));
  }
  if (!opts.build_cache) throw IoError("pair-score cache building is disabled and no cache directory is set");
  return std::make_shared<const PairTable>(PairTable::compute(members, opts.config_set, opts.threads));
}

AdjacencyMatrix edges_for(const PairTable& table, const Threshold& tau_g) {
  AdjacencyMatrix adj(table.size());
  if (table.size() < 2) return adj;
  const std::int64_t floor = tau_g.lattice_floor(table.denominator());
  const auto& raw = table.raw();
  std::size_t k = 0;
  for (std::size_t i = 0; i < table.size(); ++i)
    for (std::size_t j = i + 1; j < table.size(); ++j, ++k)
      if (raw[k] >= floor) adj.connect(i, j);
  return adj;
}

}  // namespace

CompatibilityGraph build_graph(const MatrixUniverse& u, const Threshold& tau_l, const Threshold& tau_g,
                               const GraphOptions& opts) {
  for (const auto* t : {&tau_l, &tau_g}) {
    if (t->value > Rational(0) || t->value < Rational(-1)) {
      throw ValidationError("thresholds must lie in [-1, 0], got " + t->value.str());
    }
  }
  const auto distinct = distinct_members(u);
  std::vector<Encoding> candidates;
  candidates.reserve(distinct.size());
  for (auto i : distinct) candidates.push_back(u.members[i]);
  const auto scores = local_scores(candidates, opts.config_set);

  CompatibilityGraph g;
  g.tau_l_ = tau_l;
  g.tau_g_ = tau_g;
  std::vector<Encoding> kept;
  for (std::size_t k = 0; k < distinct.size(); ++k) {
    if (!tau_l.admits(scores[k])) continue;
    g.vertices_.push_back(distinct[k]);
    g.local_scores_.push_back(scores[k]);
    kept.push_back(candidates[k]);
  }
  g.table_ = obtain_table(kept, opts);
  g.adjacency_ = edges_for(*g.table_, tau_g);
  return g;
}

CompatibilityGraph CompatibilityGraph::with_global_threshold(const Threshold& tau_g) const {
  CompatibilityGraph g = *this;
  g.tau_g_ = tau_g;
  g.adjacency_ = edges_for(*table_, tau_g);
  return g;
}

}  // namespace magcode
