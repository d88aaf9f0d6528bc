#pragma once

// Generalized knapsack: profit(A) = sum_{i in A} p_i - c * max{0, w(A) - B}.
//
// A set of rounds collapses into one convex instance: summed profits p_s and
// the piecewise-linear excess k(W) = sum_t max{0, W - B^t}.

#include <cstddef>
#include <span>
#include <vector>

#include "mmo/instances.hpp"
#include "mmo/minmax.hpp"

namespace mmo {

using ItemSet = Subset;

double gkp_profit(const ItemSet& A, const GkpStatic& statics, const GkpRound& round);

/// k(W) over a multiset of capacities, evaluated by binary search on the
/// sorted capacities and their prefix sums.
class ExcessFunction {
public:
  ExcessFunction() = default;
  explicit ExcessFunction(std::vector<double> capacities);

  void add_capacity(double B);

  const std::vector<double>& sorted_caps() const noexcept { return caps_; }
  const std::vector<double>& prefix_sums() const noexcept { return prefix_; }
  std::size_t size() const noexcept { return caps_.size(); }

private:
  std::vector<double> caps_;
  std::vector<double> prefix_;  // prefix_[j] = caps_[0] + ... + caps_[j]
};

/// j*W - prefix[j-1] where j = #{capacities < W}.
double excess_value(double W, const ExcessFunction& f);

/// Sum of per-round excesses in round order, for cross-checking.
double excess_direct(double W, std::span<const double> capacities);

/// Several GKP rounds folded into one convex knapsack instance.
struct MultiGkp {
  GkpStatic statics;
  std::vector<double> profit_sums;
  ExcessFunction excess;

  std::uint32_t item_count() const noexcept { return statics.item_count(); }
  void add_round(const GkpRound& round);
  void add_scaled_round(const GkpRound& round, double scale);
};

MultiGkp aggregate(const GkpStatic& statics, std::span<const GkpRound> rounds);

double multi_gkp_profit(const ItemSet& A, const MultiGkp& inst);
double multi_gkp_profit(const ItemSet& A, const GkpStatic& statics,
                        std::span<const GkpRound> rounds);

struct GkpSolution {
  ItemSet items;
  double profit = 0.0;
  std::size_t dp_cells = 0;
  /// False only when the FPTAS had to stop refining before it could prove
  /// the (1 - eps) guarantee.
  bool certified = true;
};

inline constexpr std::uint32_t kMaxBruteItems = 20;
inline constexpr std::size_t kDefaultMaxDpCells = std::size_t{1} << 26;

/// Exhaustive maximizer; ties go to the lexicographically smallest set.
GkpSolution brute_oracle(const MultiGkp& inst);
GkpSolution brute_oracle(const GkpStatic& statics, std::span<const GkpRound> rounds);

/// Profit-indexed DP: least weight reaching each scaled profit total. Exact
/// when every summed profit is an integer multiple of unit.
GkpSolution exact_dp_oracle(const MultiGkp& inst, double unit,
                            std::size_t max_cells = kDefaultMaxDpCells);
GkpSolution exact_dp_oracle(const GkpStatic& statics, std::span<const GkpRound> rounds,
                            double unit, std::size_t max_cells = kDefaultMaxDpCells);

/// Profit-scaling FPTAS: value >= (1 - eps) OPT whenever certified.
GkpSolution fptas_oracle(const MultiGkp& inst, double eps,
                         std::size_t max_cells = kDefaultMaxDpCells);
GkpSolution fptas_oracle(const GkpStatic& statics, std::span<const GkpRound> rounds, double eps,
                         std::size_t max_cells = kDefaultMaxDpCells);

/// n rounds; round j gives item j profit P, others 0, capacity sum_i w_i.
std::vector<GkpRound> distinguisher_set(const GkpStatic& statics, double P);

/// Gamma[mask][j] = gkp_profit(items of mask, rounds[j]); needs n <= 20.
std::vector<std::vector<double>> induced_payoff_matrix(const GkpStatic& statics,
                                                       std::span<const GkpRound> rounds);

} // namespace mmo
