#pragma once

#include <vector>

#include "magcode/cliques.hpp"
#include "magcode/graph.hpp"

namespace magcode {

struct SweepStep {
  Rational tau_g;
  /// Effective bound on the score lattice: smallest admitted numerator / order^2.
  Rational lattice_bound;
  std::size_t edges = 0;
  std::size_t max_size = 0;
  std::size_t count = 0;
};

struct SweepResult {
  Threshold tau_l;
  int precision = 2;
  ConfigSet config_set = ConfigSet::RotatedTranslations;
  std::size_t vertex_count = 0;
  std::uint64_t table_key = 0;
  std::vector<SweepStep> schedule;
  Rational final_tau_g;
  std::vector<Clique> cliques_at_final;
};

class SweepExhaustedError : public Error {
 public:
  SweepExhaustedError(const std::string& what, std::vector<SweepStep> schedule)
      : Error(what), schedule_(std::move(schedule)) {}
  const std::vector<SweepStep>& schedule() const { return schedule_; }

 private:
  std::vector<SweepStep> schedule_;
};

struct SweepOptions {
  GraphOptions graph;
  CliqueSearchOptions cliques;
};

/// Lowers tau_G from tau_start by `step` until the maximum clique reaches
/// target_size. tau_L stays fixed; edges are rebuilt from one cached pair table.
/// Thresholds are compared at `precision` decimal places (0 = exact).
SweepResult threshold_sweep(const MatrixUniverse& u, const Rational& tau_l, const Rational& tau_start,
                            const Rational& step, std::size_t target_size, int precision = 2,
                            const SweepOptions& opts = {});

/// index-th final clique in canonical order, scores recomputed from the encodings.
Clique select_clique(const SweepResult& s, const MatrixUniverse& u, std::size_t index);

}  // namespace magcode
