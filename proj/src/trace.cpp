#include "mmo/trace.hpp"

#include <algorithm>

#include "mmo/error.hpp"

namespace mmo {

TraceRow& RegretTrace::append(Subset action, double value, std::vector<double> extra) {
  require(extra.size() == extra_names.size(), ErrorCode::DimensionMismatch,
          "trace row has the wrong number of extra columns");
  TraceRow row;
  row.t = rows.size() + 1;
  row.action = std::move(action);
  row.value = value;
  row.cumulative = total() + value;
  row.extra = std::move(extra);
  rows.push_back(std::move(row));
  return rows.back();
}

std::size_t RegretTrace::extra_index(const std::string& name) const {
  const auto it = std::find(extra_names.begin(), extra_names.end(), name);
  require(it != extra_names.end(), ErrorCode::InvalidArgument, "unknown trace column " + name);
  return static_cast<std::size_t>(it - extra_names.begin());
}

double RegretTrace::extra(std::size_t row, const std::string& name) const {
  return rows.at(row).extra.at(extra_index(name));
}

void RegretTrace::set_extra(std::size_t row, const std::string& name, double v) {
  rows.at(row).extra.at(extra_index(name)) = v;
}

std::string format_set(const Subset& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(s[i]);
  }
  return out;
}

std::string to_csv(const RegretTrace& trace) {
  std::string out;
  for (std::size_t c = 0; c < trace.csv_columns.size(); ++c) {
    if (c) out += ',';
    out += trace.csv_columns[c];
  }
  out += '\n';
  for (const auto& row : trace.rows) {
    for (std::size_t c = 0; c < trace.csv_columns.size(); ++c) {
      const auto& col = trace.csv_columns[c];
      if (c) out += ',';
      if (col == "t")
        out += std::to_string(row.t);
      else if (col == "played_set")
        out += format_set(row.action);
      else if (col == trace.value_name)
        out += format_real(row.value);
      else if (col == trace.cumulative_name)
        out += format_real(row.cumulative);
      else
        out += format_real(row.extra.at(trace.extra_index(col)));
    }
    out += '\n';
  }
  return out;
}

bool prefix_sums_consistent(const RegretTrace& trace) {
  double running = 0.0;
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const auto& r = trace.rows[i];
    if (r.t != i + 1) return false;
    running += r.value;
    if (running != r.cumulative) return false;
  }
  return true;
}

} // namespace mmo
