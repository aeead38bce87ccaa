#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fblow/modpres.hpp"

namespace fblow {

/// Generators of an ideal of R isomorphic to the Villamayor ideal I_M.
struct FractionalIdealRep {
  QRingPtr ring;
  /// Nonzero normal forms in R.
  std::vector<Polynomial> generators;
};

/// Greedy column selection, then the (t - r)-minors of the selected columns
/// reduced mod I.  Generators are made monic and redundant ones dropped.
/// Throws InvariantViolation if the selection cannot reach t - r columns.
FractionalIdealRep villamayor_ideal(const PresentedModule& m);

struct ReesPresentation {
  QRingPtr base;
  /// S[t_0..t_{m-1}]: the variables of S followed by the t's.
  RingPtr ring;
  std::vector<std::string> t_vars;
  /// Defining ideal, I_R included.
  ReducedGB J;
  /// f_i corresponds to t_i.
  std::vector<Polynomial> generators;
};

/// Kernel of S[t] -> R[It], t_i -> f_i T, by eliminating T.
ReesPresentation rees(const FractionalIdealRep& ideal);

struct Chart {
  std::size_t index = 0;
  /// Surviving variables after t_index = 1 and linear elimination.
  RingPtr ring;
  IdealGens relations;
  /// Images of f_0..f_{m-1}, zeros dropped.
  IdealGens exceptional;
  /// Eliminated variable names with their values in the surviving ones.
  std::vector<std::pair<std::string, Polynomial>> back_substitution;

  explicit Chart(RingPtr r) : ring(r), relations(r), exceptional(r) {}
};

std::vector<Chart> charts(const ReesPresentation& p);

struct SmoothReport {
  bool smooth = false;
  IdealGens singular;
  /// Dimension of the chart ring.
  int dim = 0;
  /// Dimension of the singular locus, -1 when empty.
  int singular_dim = -1;

  explicit SmoothReport(RingPtr r) : singular(std::move(r)) {}
};

/// Jacobian criterion with c = codimension of the chart.
SmoothReport smooth_check(const Chart& c);

struct R1Report {
  bool r1 = false;
};

R1Report r1_check(const Chart& c);
R1Report r1_check(const SmoothReport& s);

/// sqrt(I_M + I_R) == sqrt(Jac + I_R), by mutual radical membership in S.
bool kunz_locus_agrees(const QuotientRing& r, const FractionalIdealRep& villamayor);

/// Ideal of c x c Jacobian minors plus the relations, c the codimension.
IdealGens singular_locus(const IdealGens& relations);

struct ChartReport {
  std::size_t index = 0;
  std::vector<std::string> vars;
  std::vector<std::string> relations;
  std::vector<std::string> exceptional;
  std::vector<std::pair<std::string, std::string>> back_substitution;
  std::optional<bool> smooth;
  std::optional<bool> r1;
  std::optional<int> dim;
  std::optional<int> singular_dim;
  /// Empty when the analysis finished.
  std::string status;
};

struct BlockReport {
  std::size_t rows = 0, cols = 0, rank = 0;
  std::string signature;
  std::vector<std::vector<std::string>> fitting;
  std::vector<std::vector<std::string>> matrix;
};

struct FBlowupOptions {
  uint64_t seed = 0;
  bool analyze_charts = true;
  bool check_kunz = true;
};

struct FBlowupReport {
  unsigned e = 1;
  uint64_t seed = 0;
  std::size_t rank = 0;
  std::size_t pruned_rows = 0, pruned_cols = 0;
  std::vector<BlockReport> blocks;
  std::vector<std::string> villamayor;
  std::vector<std::string> rees_vars;
  std::vector<std::string> rees;
  std::vector<ChartReport> charts;
  std::optional<bool> kunz;
  /// "complete", or "budget_exceeded" with the stage in `incomplete_stage`.
  std::string status = "complete";
  std::string incomplete_stage;
  std::vector<std::pair<std::string, double>> timings;
};

/// Pushforward, Villamayor ideal, Rees algebra, charts and chart reports.
/// A budget overrun stops the pipeline and returns the partial report.
FBlowupReport fblowup(const QRingPtr& ring, unsigned e, const FBlowupOptions& opts = {});

BlockReport block_report(const PresentedModule& block);

}  // namespace fblow
