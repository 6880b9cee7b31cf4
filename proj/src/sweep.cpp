#include "magcode/sweep.hpp"

#include <algorithm>

namespace magcode {

SweepResult threshold_sweep(const MatrixUniverse& u, const Rational& tau_l, const Rational& tau_start,
                            const Rational& step, std::size_t target_size, int precision,
                            const SweepOptions& opts) {
  if (tau_start > Rational(0) || tau_start < Rational(-1)) {
    throw ValidationError("tau_start must lie in [-1, 0], got " + tau_start.str());
  }
  if (step <= Rational(0)) throw ValidationError("sweep step must be positive");
  if (target_size < 1) throw ValidationError("target clique size must be at least 1");

  SweepResult result;
  result.tau_l = Threshold{tau_l, precision};
  result.precision = precision;
  result.config_set = opts.graph.config_set;

  CompatibilityGraph graph = build_graph(u, result.tau_l, Threshold{tau_start, precision}, opts.graph);
  result.vertex_count = graph.vertex_count();
  result.table_key = graph.pair_table().key();
  const std::int64_t den = std::int64_t{u.order} * u.order;

  for (Rational tau = tau_start; tau >= Rational(-1); tau = tau - step) {
    const Threshold threshold{tau, precision};
    if (tau != tau_start) graph = graph.with_global_threshold(threshold);
    const auto cliques = maximum_cliques(graph.adjacency(), opts.cliques);

    SweepStep row;
    row.tau_g = tau;
    row.lattice_bound = Rational(threshold.lattice_floor(den), den);
    row.edges = graph.edge_count();
    row.max_size = cliques.empty() ? 0 : cliques.front().size();
    row.count = cliques.size();
    result.schedule.push_back(row);

    if (row.max_size >= target_size) {
      result.final_tau_g = tau;
      for (const auto& c : cliques) result.cliques_at_final.push_back(to_clique(graph, c));
      std::sort(result.cliques_at_final.begin(), result.cliques_at_final.end(),
                [](const Clique& a, const Clique& b) { return a.members < b.members; });
      return result;
    }
  }
  throw SweepExhaustedError("sweep reached tau_G = -1 without a clique of size " + std::to_string(target_size),
                            result.schedule);
}

Clique select_clique(const SweepResult& s, const MatrixUniverse& u, std::size_t index) {
  if (index >= s.cliques_at_final.size()) {
    throw ValidationError("clique index " + std::to_string(index) + " out of range (" +
                          std::to_string(s.cliques_at_final.size()) + " cliques)");
  }
  Clique c;
  c.members = s.cliques_at_final[index].members;
  c.achieved_sg = Rational(0);
  bool first = true;
  for (std::size_t a = 0; a < c.members.size(); ++a) {
    const Encoding& ea = u.members.at(c.members[a]);
    const Rational sl = local_score(ea, s.config_set).local_score;
    if (first || sl < c.achieved_sl) c.achieved_sl = sl;
    first = false;
    for (std::size_t b = a + 1; b < c.members.size(); ++b) {
      const Rational sg = pair_score(ea, u.members.at(c.members[b]), s.config_set);
      if (sg < c.achieved_sg) c.achieved_sg = sg;
    }
  }
  return c;
}

}  // namespace magcode
