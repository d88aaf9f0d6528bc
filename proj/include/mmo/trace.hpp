#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmo/minmax.hpp"

namespace mmo {

enum class Sense { Minimize, Maximize };

struct TraceRow {
  std::uint64_t t = 0;
  Subset action;
  double value = 0.0;       // cost or payoff of round t
  double cumulative = 0.0;  // prefix sum of value
  std::vector<double> extra;
};

/// Per-round ledger of one online run. Column names let each algorithm keep
/// its own CSV layout while sharing the bookkeeping.
struct RegretTrace {
  std::string algorithm;
  std::uint64_t seed = 0;
  Sense sense = Sense::Minimize;
  std::string value_name = "value";
  std::string cumulative_name = "cumulative";
  std::vector<std::string> extra_names;
  /// CSV column order; may name "t", "played_set", value/cumulative names
  /// and any extra column.
  std::vector<std::string> csv_columns;
  std::vector<TraceRow> rows;
  std::optional<double> benchmark;
  std::vector<double> perturbation;  // GFTPL audit: the single draw of the run
  std::string config_json;

  double total() const noexcept { return rows.empty() ? 0.0 : rows.back().cumulative; }

  /// Appends round rows.size()+1 with an exact running sum.
  TraceRow& append(Subset action, double value, std::vector<double> extra = {});

  std::size_t extra_index(const std::string& name) const;
  double extra(std::size_t row, const std::string& name) const;
  void set_extra(std::size_t row, const std::string& name, double v);
};

std::string format_set(const Subset& s);  // "0;2;5"
std::string to_csv(const RegretTrace& trace);

/// True iff t runs 1,2,... and every cumulative is the exact running sum.
bool prefix_sums_consistent(const RegretTrace& trace);

} // namespace mmo
