#include "mmo/instances.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mmo/error.hpp"

namespace mmo {

namespace {

std::string at_line(std::size_t line, const std::string& msg) {
  return "line " + std::to_string(line) + ": " + msg;
}

// Splits on '\n', dropping a trailing '\r' so CRLF input still parses.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; });
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

template <typename Int>
bool parse_int(std::string_view tok, Int& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

bool parse_double(std::string_view tok, double& out) {
  tok = trim(tok);
  if (tok.empty()) return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += '\n';
    out += lines[i];
  }
  return out;
}

void check_nonneg_finite(double v, const std::string& what) {
  require(std::isfinite(v) && v >= 0.0, ErrorCode::InvalidArgument,
          what + " must be finite and nonnegative");
}

} // namespace

// ---------------------------------------------------------------- Graph

Graph::Graph(std::uint32_t n, std::vector<Edge> edges) : n_(n) {
  std::set<Edge> seen;
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    require(u < n && v < n, ErrorCode::InvalidArgument,
            "edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    require(u != v, ErrorCode::InvalidArgument, "self-loop at vertex " + std::to_string(u));
    Edge e = std::minmax(u, v);
    require(seen.insert(e).second, ErrorCode::InvalidArgument,
            "duplicate edge " + std::to_string(e.first) + " " + std::to_string(e.second));
    edges_.push_back(e);
  }
}

std::uint64_t Graph::neighbour_mask(Vertex v) const {
  require(n_ <= 64, ErrorCode::TooLarge, "neighbour_mask needs at most 64 vertices");
  std::uint64_t mask = 0;
  for (auto [a, b] : edges_) {
    if (a == v) mask |= std::uint64_t{1} << b;
    if (b == v) mask |= std::uint64_t{1} << a;
  }
  return mask;
}

Graph parse_graph(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t idx = 0;
  while (idx < lines.size() && is_blank(lines[idx])) ++idx;
  if (idx == lines.size()) fail(ErrorCode::Parse, "empty graph file");

  const auto header = split_ws(lines[idx]);
  std::uint32_t n = 0;
  std::size_t m = 0;
  if (header.size() != 2 || !parse_int(header[0], n) || !parse_int(header[1], m))
    fail(ErrorCode::Parse, at_line(idx + 1, "malformed header, expected \"n m\""));

  std::vector<Edge> edges;
  std::set<Edge> seen;
  for (++idx; idx < lines.size(); ++idx) {
    if (is_blank(lines[idx])) continue;
    const auto tok = split_ws(lines[idx]);
    Vertex u = 0, v = 0;
    if (tok.size() != 2 || !parse_int(tok[0], u) || !parse_int(tok[1], v))
      fail(ErrorCode::Parse, at_line(idx + 1, "malformed edge, expected \"u v\""));
    if (u >= n || v >= n) fail(ErrorCode::Parse, at_line(idx + 1, "endpoint out of range"));
    if (u == v) fail(ErrorCode::Parse, at_line(idx + 1, "self-loop"));
    if (!seen.insert(std::minmax(u, v)).second)
      fail(ErrorCode::Parse, at_line(idx + 1, "duplicate edge"));
    edges.emplace_back(u, v);
  }
  if (edges.size() != m)
    fail(ErrorCode::Parse, "header declares " + std::to_string(m) + " edges, found " +
                               std::to_string(edges.size()));
  return Graph(n, std::move(edges));
}

std::string serialize(const Graph& g) {
  std::vector<std::string> lines;
  lines.push_back(std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()));
  for (auto [u, v] : g.edges()) lines.push_back(std::to_string(u) + " " + std::to_string(v));
  return join_lines(lines);
}

Graph gen_random_graph(std::uint32_t n, double p, SeededRng& rng) {
  require(n >= 1, ErrorCode::InvalidArgument, "graph needs at least one vertex");
  require(p >= 0.0 && p <= 1.0, ErrorCode::InvalidArgument, "edge probability outside [0,1]");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

// ---------------------------------------------------------------- weights

WeightSequence::WeightSequence(std::uint32_t n, std::vector<std::vector<double>> rows) : n_(n) {
  rows_.reserve(rows.size());
  for (auto& r : rows) push_back(std::move(r));
}

void WeightSequence::push_back(std::vector<double> row) {
  require(row.size() == n_, ErrorCode::DimensionMismatch,
          "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n_));
  for (double v : row) check_nonneg_finite(v, "weight");
  rows_.push_back(std::move(row));
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

WeightSequence parse_weights(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t idx = 0;
  while (idx < lines.size() && is_blank(lines[idx])) ++idx;
  if (idx == lines.size()) fail(ErrorCode::Parse, "empty weight file");

  const auto head = trim(lines[idx]);
  std::uint32_t n = 0;
  if (head.substr(0, 2) != "n=" || !parse_int(head.substr(2), n))
    fail(ErrorCode::Parse, at_line(idx + 1, "malformed header, expected \"n=<n>\""));

  WeightSequence seq(n);
  for (++idx; idx < lines.size(); ++idx) {
    if (is_blank(lines[idx])) continue;
    std::vector<double> row;
    std::string_view rest = lines[idx];
    for (;;) {
      const std::size_t comma = rest.find(',');
      double v = 0;
      if (!parse_double(rest.substr(0, comma), v))
        fail(ErrorCode::Parse, at_line(idx + 1, "malformed number"));
      if (!(v >= 0.0) || !std::isfinite(v))
        fail(ErrorCode::Parse, at_line(idx + 1, "negative or non-finite weight"));
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (row.size() != n)
      fail(ErrorCode::Parse, at_line(idx + 1, "row has " + std::to_string(row.size()) +
                                                  " entries, expected " + std::to_string(n)));
    seq.push_back(std::move(row));
  }
  return seq;
}

std::string serialize(const WeightSequence& seq) {
  std::vector<std::string> lines;
  lines.push_back("n=" + std::to_string(seq.width()));
  for (const auto& row : seq.rows()) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += ',';
      line += format_real(row[i]);
    }
    lines.push_back(std::move(line));
  }
  return join_lines(lines);
}

WeightSequence gen_onehot_weights(std::uint32_t n, std::size_t T, SeededRng& rng) {
  require(n >= 1, ErrorCode::InvalidArgument, "one-hot weights need n >= 1");
  WeightSequence seq(n);
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<double> row(n, 0.0);
    row[rng.below(n)] = 1.0;
    seq.push_back(std::move(row));
  }
  return seq;
}

WeightSequence gen_uniform_weights(std::uint32_t n, std::size_t T, double W, SeededRng& rng) {
  require(std::isfinite(W) && W >= 0.0, ErrorCode::InvalidArgument, "max weight must be >= 0");
  WeightSequence seq(n);
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<double> row(n);
    for (auto& v : row) v = W * rng.uniform01();
    seq.push_back(std::move(row));
  }
  return seq;
}

// ---------------------------------------------------------------- GKP

double GkpStatic::total_weight() const noexcept {
  return std::accumulate(w.begin(), w.end(), 0.0);
}

void GkpStatic::validate() const {
  for (double v : w) check_nonneg_finite(v, "item weight");
  check_nonneg_finite(c, "penalty rate");
}

void GkpRound::validate(std::uint32_t n) const {
  require(p.size() == n, ErrorCode::DimensionMismatch,
          "profit vector has " + std::to_string(p.size()) + " entries, expected " +
              std::to_string(n));
  for (double v : p) check_nonneg_finite(v, "profit");
  check_nonneg_finite(B, "capacity");
}

void GkpInstanceSet::validate() const {
  statics.validate();
  for (const auto& r : rounds) r.validate(statics.item_count());
}

GkpInstanceSet parse_gkp(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("gkp json: ") + e.what());
  }
  GkpInstanceSet set;
  try {
    set.statics.w = j.at("w").get<std::vector<double>>();
    set.statics.c = j.at("c").get<double>();
    if (j.contains("rounds")) {
      for (const auto& r : j.at("rounds"))
        set.rounds.push_back({r.at("p").get<std::vector<double>>(), r.at("B").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("gkp json: ") + e.what());
  }
  set.validate();
  return set;
}

std::string serialize(const GkpInstanceSet& set) {
  // Hand-written so numbers use the same shortest form as the CSV files.
  auto vec = [](const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += format_real(v[i]);
    }
    return s + "]";
  };
  std::string out = "{\"w\":" + vec(set.statics.w) + ",\"c\":" + format_real(set.statics.c) +
                    ",\"rounds\":[";
  for (std::size_t t = 0; t < set.rounds.size(); ++t) {
    if (t) out += ",";
    out += "{\"p\":" + vec(set.rounds[t].p) + ",\"B\":" + format_real(set.rounds[t].B) + "}";
  }
  return out + "]}";
}

GkpInstanceSet gen_random_gkp(std::uint32_t n, std::size_t rounds, double c, SeededRng& rng) {
  require(std::isfinite(c) && c >= 0.0, ErrorCode::InvalidArgument, "penalty rate must be >= 0");
  GkpInstanceSet set;
  set.statics.c = c;
  set.statics.w.resize(n);
  for (auto& v : set.statics.w) v = rng.uniform01();
  const double total = set.statics.total_weight();
  for (std::size_t t = 0; t < rounds; ++t) {
    GkpRound r;
    r.p.resize(n);
    for (auto& v : r.p) v = rng.uniform01();
    r.B = total * rng.uniform01();
    set.rounds.push_back(std::move(r));
  }
  return set;
}

// ---------------------------------------------------------------- DNF

Dnf3Formula::Dnf3Formula(std::uint32_t n, std::vector<Clause> clauses)
    : n_(n), clauses_(std::move(clauses)) {
  for (const auto& cl : clauses_) {
    for (const auto& lit : cl)
      require(lit.var < n_, ErrorCode::InvalidArgument, "literal variable out of range");
    require(cl[0].var != cl[1].var && cl[0].var != cl[2].var && cl[1].var != cl[2].var,
            ErrorCode::InvalidArgument, "clause literals must use distinct variables");
  }
}

bool Dnf3Formula::satisfies(const Clause& clause, const std::vector<bool>& assignment) const {
  require(assignment.size() == n_, ErrorCode::DimensionMismatch, "assignment size mismatch");
  return std::all_of(clause.begin(), clause.end(),
                     [&](const Literal& l) { return assignment[l.var] != l.negated; });
}

std::size_t Dnf3Formula::satisfied_count(const std::vector<bool>& assignment) const {
  return static_cast<std::size_t>(std::count_if(
      clauses_.begin(), clauses_.end(), [&](const Clause& c) { return satisfies(c, assignment); }));
}

Dnf3Formula parse_dnf(std::string_view text, std::uint32_t min_vars) {
  const auto lines = split_lines(text);
  std::vector<Clause> clauses;
  std::uint32_t declared = 0;
  std::uint32_t max_var = 0;
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const auto line = trim(lines[idx]);
    if (line.empty() || line.front() == 'c') continue;
    const auto tok = split_ws(line);
    if (line.front() == 'p') {
      std::size_t m = 0;
      if (tok.size() != 4 || tok[1] != "dnf" || !parse_int(tok[2], declared) ||
          !parse_int(tok[3], m))
        fail(ErrorCode::Parse, at_line(idx + 1, "malformed header, expected \"p dnf n m\""));
      continue;
    }
    if (tok.size() != 3) fail(ErrorCode::Parse, at_line(idx + 1, "clause needs exactly 3 literals"));
    Clause cl;
    for (std::size_t k = 0; k < 3; ++k) {
      long long v = 0;
      if (!parse_int(tok[k], v) || v == 0)
        fail(ErrorCode::Parse, at_line(idx + 1, "malformed literal"));
      const auto var = static_cast<std::uint32_t>(v < 0 ? -v : v);
      cl[k] = Literal{var - 1, v < 0};
      max_var = std::max(max_var, var);
    }
    if (cl[0].var == cl[1].var || cl[0].var == cl[2].var || cl[1].var == cl[2].var)
      fail(ErrorCode::Parse, at_line(idx + 1, "repeated variable in clause"));
    clauses.push_back(cl);
  }
  if (declared && max_var > declared)
    fail(ErrorCode::Parse, "literal exceeds declared variable count");
  return Dnf3Formula(std::max({declared, max_var, min_vars}), std::move(clauses));
}

std::string serialize(const Dnf3Formula& f) {
  std::vector<std::string> lines;
  lines.push_back("p dnf " + std::to_string(f.variable_count()) + " " +
                  std::to_string(f.clause_count()));
  for (const auto& cl : f.clauses()) {
    std::string line;
    for (std::size_t k = 0; k < 3; ++k) {
      if (k) line += ' ';
      if (cl[k].negated) line += '-';
      line += std::to_string(cl[k].var + 1);
    }
    lines.push_back(std::move(line));
  }
  return join_lines(lines);
}

Dnf3Formula gen_random_dnf(std::uint32_t n, std::size_t m, SeededRng& rng) {
  require(n >= 3, ErrorCode::InvalidArgument, "3-DNF needs at least 3 variables");
  std::vector<Clause> clauses;
  for (std::size_t j = 0; j < m; ++j) {
    Clause cl;
    for (std::size_t k = 0; k < 3; ++k) {
      std::uint32_t v;
      do {
        v = static_cast<std::uint32_t>(rng.below(n));
      } while ((k > 0 && cl[0].var == v) || (k > 1 && cl[1].var == v));
      cl[k] = Literal{v, rng.bernoulli(0.5)};
    }
    clauses.push_back(cl);
  }
  return Dnf3Formula(n, std::move(clauses));
}

// ---------------------------------------------------------------- files

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::Io, "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  require(static_cast<bool>(out), ErrorCode::Io, "write failed for " + path);
}

} // namespace mmo
