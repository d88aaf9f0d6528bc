#pragma once

// Problem instances shared by every solver, their seeded generators, and the
// flat-file formats used by the CLI.
//
//   graph      "n m" header, then m lines "u v" (0-indexed)
//   weights    CSV, header "n=<n>", then one comma-separated row per step
//   gkp        JSON {"w":[...], "c":..., "rounds":[{"p":[...], "B":...}, ...]}
//   dnf        optional "p dnf <n> <m>" header, then one clause per line,
//              literals as signed 1-indexed integers ("1 -2 3")
//
// Real numbers are written in the shortest decimal form that parses back to
// the same double, so files round-trip bit-exactly.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmo/rng.hpp"

namespace mmo {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph. Edges are stored with u < v in insertion order;
/// edge indices are positions in edges().
class Graph {
public:
  Graph() = default;
  /// Throws InvalidArgument on self-loops, out-of-range endpoints, or duplicates.
  Graph(std::uint32_t n, std::vector<Edge> edges);

  std::uint32_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Neighbour bitmask of v; only valid when vertex_count() <= 64.
  std::uint64_t neighbour_mask(Vertex v) const;

  bool operator==(const Graph&) const = default;

private:
  std::uint32_t n_ = 0;
  std::vector<Edge> edges_;
};

/// T rows of n nonnegative weights. Also used for processing-time matrices
/// and for per-edge / per-arc weight functions of the reductions.
class WeightSequence {
public:
  WeightSequence() = default;
  explicit WeightSequence(std::uint32_t n) : n_(n) {}
  WeightSequence(std::uint32_t n, std::vector<std::vector<double>> rows);

  std::uint32_t width() const noexcept { return n_; }
  std::size_t length() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  const std::vector<double>& row(std::size_t t) const { return rows_.at(t); }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }

  void push_back(std::vector<double> row);

  bool operator==(const WeightSequence&) const = default;

private:
  std::uint32_t n_ = 0;
  std::vector<std::vector<double>> rows_;
};

using ProcTimeMatrix = WeightSequence;

/// Static part of a generalized knapsack instance.
struct GkpStatic {
  std::vector<double> w;
  double c = 0.0;

  std::uint32_t item_count() const noexcept { return static_cast<std::uint32_t>(w.size()); }
  double total_weight() const noexcept;
  void validate() const;

  bool operator==(const GkpStatic&) const = default;
};

/// Per-round part: profits and capacity.
struct GkpRound {
  std::vector<double> p;
  double B = 0.0;

  void validate(std::uint32_t n) const;
  bool operator==(const GkpRound&) const = default;
};

struct GkpInstanceSet {
  GkpStatic statics;
  std::vector<GkpRound> rounds;

  void validate() const;
  bool operator==(const GkpInstanceSet&) const = default;
};

struct Literal {
  std::uint32_t var = 0;
  bool negated = false;

  bool operator==(const Literal&) const = default;
};

using Clause = std::array<Literal, 3>;

/// Max-3-DNF formula: a list of 3-literal conjunctions over distinct variables.
class Dnf3Formula {
public:
  Dnf3Formula() = default;
  Dnf3Formula(std::uint32_t n, std::vector<Clause> clauses);

  std::uint32_t variable_count() const noexcept { return n_; }
  std::size_t clause_count() const noexcept { return clauses_.size(); }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }

  /// Assignment bit i is the truth value of variable i.
  bool satisfies(const Clause& clause, const std::vector<bool>& assignment) const;
  std::size_t satisfied_count(const std::vector<bool>& assignment) const;

  bool operator==(const Dnf3Formula&) const = default;

private:
  std::uint32_t n_ = 0;
  std::vector<Clause> clauses_;
};

// Parsing. Errors are Parse (with 1-based line numbers) or InvalidArgument.
Graph parse_graph(std::string_view text);
WeightSequence parse_weights(std::string_view text);
GkpInstanceSet parse_gkp(std::string_view text);
/// Variable count is the largest referenced index unless min_vars is larger.
Dnf3Formula parse_dnf(std::string_view text, std::uint32_t min_vars = 0);

std::string serialize(const Graph& g);
std::string serialize(const WeightSequence& seq);
std::string serialize(const GkpInstanceSet& set);
std::string serialize(const Dnf3Formula& f);

/// Shortest round-trip decimal for a double.
std::string format_real(double v);

// Generators. All randomness flows through the supplied stream.
Graph gen_random_graph(std::uint32_t n, double p, SeededRng& rng);
WeightSequence gen_onehot_weights(std::uint32_t n, std::size_t T, SeededRng& rng);
WeightSequence gen_uniform_weights(std::uint32_t n, std::size_t T, double W, SeededRng& rng);
/// Weights and profits uniform on [0,1], capacities uniform on [0, sum w].
GkpInstanceSet gen_random_gkp(std::uint32_t n, std::size_t rounds, double c, SeededRng& rng);
Dnf3Formula gen_random_dnf(std::uint32_t n, std::size_t m, SeededRng& rng);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

} // namespace mmo
