#include "mmo/gkp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmo/error.hpp"

namespace mmo {

namespace {

void check_items(const ItemSet& A, std::uint32_t n) {
  for (auto i : A)
    require(i < n, ErrorCode::DimensionMismatch,
            "item " + std::to_string(i) + " outside instance of " + std::to_string(n) + " items");
}

ItemSet mask_items(std::uint64_t mask) {
  ItemSet s;
  for (std::uint32_t i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) s.push_back(i);
  return s;
}

// Keeps the better of two candidate solutions; ties go to the
// lexicographically smaller item list.
void keep_best(GkpSolution& best, ItemSet items, double profit) {
  if (profit > best.profit || (profit == best.profit && items < best.items)) {
    best.items = std::move(items);
    best.profit = profit;
  }
}

// Least-weight DP over integer profit levels. Returns the best true-profit
// set among every reachable level.
GkpSolution profit_level_dp(const MultiGkp& inst, const std::vector<std::uint64_t>& level,
                            std::size_t max_cells) {
  const std::size_t n = inst.item_count();
  std::uint64_t total = 0;
  for (auto q : level) total += q;
  const std::size_t cols = static_cast<std::size_t>(total) + 1;
  if (total >= max_cells || (n + 1) > max_cells / cols)
    fail(ErrorCode::GridOverflow, "DP grid of " + std::to_string(n + 1) + " x " +
                                      std::to_string(cols) + " cells exceeds the cap of " +
                                      std::to_string(max_cells));

  constexpr double inf = std::numeric_limits<double>::infinity();
  // min_weight[i][q]: least weight of a subset of the first i items at level q.
  std::vector<double> table((n + 1) * cols, inf);
  auto at = [&](std::size_t i, std::size_t q) -> double& { return table[i * cols + q]; };
  at(0, 0) = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto qi = static_cast<std::size_t>(level[i - 1]);
    const double wi = inst.statics.w[i - 1];
    for (std::size_t q = 0; q < cols; ++q) {
      double best = at(i - 1, q);
      if (q >= qi && at(i - 1, q - qi) + wi < best) best = at(i - 1, q - qi) + wi;
      at(i, q) = best;
    }
  }

  GkpSolution sol;
  sol.dp_cells = (n + 1) * cols;
  for (std::size_t q = 0; q < cols; ++q) {
    if (at(n, q) == inf) continue;
    ItemSet items;
    std::size_t r = q;
    for (std::size_t i = n; i >= 1; --i) {
      if (at(i, r) != at(i - 1, r)) {
        items.push_back(static_cast<std::uint32_t>(i - 1));
        r -= static_cast<std::size_t>(level[i - 1]);
      }
    }
    std::reverse(items.begin(), items.end());
    keep_best(sol, items, multi_gkp_profit(items, inst));
  }
  return sol;
}

} // namespace

double gkp_profit(const ItemSet& A, const GkpStatic& statics, const GkpRound& round) {
  const auto n = statics.item_count();
  require(round.p.size() == n, ErrorCode::DimensionMismatch, "profit vector size mismatch");
  check_items(A, n);
  double profit = 0.0, weight = 0.0;
  for (auto i : A) {
    profit += round.p[i];
    weight += statics.w[i];
  }
  return profit - statics.c * std::max(0.0, weight - round.B);
}

// ---------------------------------------------------------------- excess

ExcessFunction::ExcessFunction(std::vector<double> capacities) : caps_(std::move(capacities)) {
  std::sort(caps_.begin(), caps_.end());
  prefix_.resize(caps_.size());
  double run = 0.0;
  for (std::size_t j = 0; j < caps_.size(); ++j) prefix_[j] = (run += caps_[j]);
}

void ExcessFunction::add_capacity(double B) {
  const auto pos = static_cast<std::size_t>(
      std::upper_bound(caps_.begin(), caps_.end(), B) - caps_.begin());
  caps_.insert(caps_.begin() + static_cast<std::ptrdiff_t>(pos), B);
  prefix_.resize(caps_.size());
  double run = pos == 0 ? 0.0 : prefix_[pos - 1];
  for (std::size_t j = pos; j < caps_.size(); ++j) prefix_[j] = (run += caps_[j]);
}

double excess_value(double W, const ExcessFunction& f) {
  const auto& caps = f.sorted_caps();
  const auto j =
      static_cast<std::size_t>(std::lower_bound(caps.begin(), caps.end(), W) - caps.begin());
  if (j == 0) return 0.0;
  return static_cast<double>(j) * W - f.prefix_sums()[j - 1];
}

double excess_direct(double W, std::span<const double> capacities) {
  double total = 0.0;
  for (double B : capacities) total += std::max(0.0, W - B);
  return total;
}

// ---------------------------------------------------------------- multi-instance

void MultiGkp::add_round(const GkpRound& round) { add_scaled_round(round, 1.0); }

void MultiGkp::add_scaled_round(const GkpRound& round, double scale) {
  round.validate(item_count());
  if (profit_sums.empty()) profit_sums.assign(item_count(), 0.0);
  for (std::size_t i = 0; i < profit_sums.size(); ++i) profit_sums[i] += scale * round.p[i];
  excess.add_capacity(round.B);
}

MultiGkp aggregate(const GkpStatic& statics, std::span<const GkpRound> rounds) {
  statics.validate();
  MultiGkp inst;
  inst.statics = statics;
  inst.profit_sums.assign(statics.item_count(), 0.0);
  std::vector<double> caps;
  caps.reserve(rounds.size());
  for (const auto& r : rounds) {
    r.validate(statics.item_count());
    for (std::size_t i = 0; i < inst.profit_sums.size(); ++i) inst.profit_sums[i] += r.p[i];
    caps.push_back(r.B);
  }
  inst.excess = ExcessFunction(std::move(caps));
  return inst;
}

double multi_gkp_profit(const ItemSet& A, const MultiGkp& inst) {
  const auto n = inst.item_count();
  check_items(A, n);
  if (A.empty()) return 0.0;  // also covers the case of no rounds at all
  double profit = 0.0, weight = 0.0;
  for (auto i : A) {
    profit += inst.profit_sums.empty() ? 0.0 : inst.profit_sums[i];
    weight += inst.statics.w[i];
  }
  return profit - inst.statics.c * excess_value(weight, inst.excess);
}

double multi_gkp_profit(const ItemSet& A, const GkpStatic& statics,
                        std::span<const GkpRound> rounds) {
  return multi_gkp_profit(A, aggregate(statics, rounds));
}

// ---------------------------------------------------------------- oracles

GkpSolution brute_oracle(const MultiGkp& inst) {
  const auto n = inst.item_count();
  require(n <= kMaxBruteItems, ErrorCode::TooLarge,
          "brute-force oracle needs n <= " + std::to_string(kMaxBruteItems));
  GkpSolution best;  // the empty set, profit 0
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    ItemSet items = mask_items(mask);
    const double v = multi_gkp_profit(items, inst);
    keep_best(best, std::move(items), v);
  }
  return best;
}

GkpSolution brute_oracle(const GkpStatic& statics, std::span<const GkpRound> rounds) {
  return brute_oracle(aggregate(statics, rounds));
}

GkpSolution exact_dp_oracle(const MultiGkp& inst, double unit, std::size_t max_cells) {
  require(unit > 0.0 && std::isfinite(unit), ErrorCode::InvalidArgument, "unit must be positive");
  const auto n = inst.item_count();
  std::vector<std::uint64_t> level(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = inst.profit_sums.empty() ? 0.0 : inst.profit_sums[i];
    const double q = p / unit;
    const double r = std::round(q);
    require(std::abs(q - r) <= 1e-9 * std::max(1.0, std::abs(q)), ErrorCode::InvalidArgument,
            "summed profit of item " + std::to_string(i) + " is not a multiple of the unit");
    require(r < 9.0e15, ErrorCode::GridOverflow, "scaled profit too large");
    level[i] = static_cast<std::uint64_t>(r);
  }
  return profit_level_dp(inst, level, max_cells);
}

GkpSolution exact_dp_oracle(const GkpStatic& statics, std::span<const GkpRound> rounds,
                            double unit, std::size_t max_cells) {
  return exact_dp_oracle(aggregate(statics, rounds), unit, max_cells);
}

GkpSolution fptas_oracle(const MultiGkp& inst, double eps, std::size_t max_cells) {
  require(eps > 0.0, ErrorCode::InvalidArgument, "eps must be positive");
  const auto n = inst.item_count();

  // Baseline candidates: the empty set and every singleton.
  GkpSolution best;
  double p_max = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const double p = inst.profit_sums.empty() ? 0.0 : inst.profit_sums[i];
    p_max = std::max(p_max, p);
    keep_best(best, {i}, multi_gkp_profit({i}, inst));
  }
  if (p_max <= 0.0) return best;

  // With scale K the DP loses at most n*K of true profit. OPT >= best.profit,
  // so once n*K <= eps * (a known lower bound on OPT) the answer is certified.
  // The first pass uses the classic K = eps * P_max / n; a second pass rescales
  // from the value found, and passes keep halving K while no positive lower
  // bound is known.
  std::size_t cells = 0;
  double K = eps * p_max / n;
  for (;;) {
    std::vector<std::uint64_t> level(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double p = inst.profit_sums.empty() ? 0.0 : inst.profit_sums[i];
      level[i] = static_cast<std::uint64_t>(std::floor(p / K));
    }
    GkpSolution pass;
    try {
      pass = profit_level_dp(inst, level, max_cells);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::GridOverflow) throw;
      best.certified = false;
      break;
    }
    cells += pass.dp_cells;
    keep_best(best, std::move(pass.items), pass.profit);

    if (n * K <= eps * best.profit) break;
    if (best.profit <= 0.0 && n <= kMaxBruteItems) {
      // Only OPT <= n*K is known; settle OPT == 0 versus OPT > 0 exactly.
      const std::size_t spent = cells;
      best = brute_oracle(inst);
      cells = spent;
      break;
    }
    K = best.profit > 0.0 ? eps * best.profit / n : K / 2.0;
  }
  best.dp_cells = cells;
  return best;
}

GkpSolution fptas_oracle(const GkpStatic& statics, std::span<const GkpRound> rounds, double eps,
                         std::size_t max_cells) {
  return fptas_oracle(aggregate(statics, rounds), eps, max_cells);
}

// ---------------------------------------------------------------- distinguisher

std::vector<GkpRound> distinguisher_set(const GkpStatic& statics, double P) {
  require(P > 0.0 && std::isfinite(P), ErrorCode::InvalidArgument, "marker profit must be > 0");
  const auto n = statics.item_count();
  const double capacity = statics.total_weight();
  std::vector<GkpRound> rounds(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    rounds[j].p.assign(n, 0.0);
    rounds[j].p[j] = P;
    rounds[j].B = capacity;
  }
  return rounds;
}

std::vector<std::vector<double>> induced_payoff_matrix(const GkpStatic& statics,
                                                       std::span<const GkpRound> rounds) {
  const auto n = statics.item_count();
  require(n <= kMaxBruteItems, ErrorCode::TooLarge, "induced matrix needs n <= 20");
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::vector<double>> gamma(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const ItemSet items = mask_items(mask);
    gamma[mask].reserve(rounds.size());
    for (const auto& r : rounds) gamma[mask].push_back(gkp_profit(items, statics, r));
  }
  return gamma;
}

} // namespace mmo
