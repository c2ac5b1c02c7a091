#include "qqw/bforacle.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "qqw/graphprops.hpp"

namespace qqw {
namespace bf {
namespace {

void require_arity(const TruthTable& f, std::size_t cap, const char* op) {
  if (f.n > cap)
    throw std::invalid_argument(std::string(op) + ": arity cap exceeded");
  if (f.values.size() != (std::size_t{1} << f.n))
    throw std::invalid_argument(std::string(op) + ": truth table length is not 2^N");
}

}  // namespace

TruthTable TruthTable::from_function(std::size_t n, const std::function<int(std::uint64_t)>& f) {
  if (n > 22) throw std::invalid_argument("TruthTable: arity cap is 22");
  TruthTable t;
  t.n = n;
  t.values.resize(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < t.values.size(); ++mask)
    t.values[mask] = f(mask) ? 1 : 0;
  return t;
}

TruthTable or_function(std::size_t n) {
  return TruthTable::from_function(n, [](std::uint64_t m) { return m != 0; });
}

TruthTable and_function(std::size_t n) {
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  return TruthTable::from_function(n, [full](std::uint64_t m) { return m == full; });
}

TruthTable majority_function(std::size_t n) {
  return TruthTable::from_function(n, [n](std::uint64_t m) {
    return 2 * static_cast<std::size_t>(std::popcount(m)) >= n;
  });
}

TruthTable dictator_function(std::size_t n, std::size_t i) {
  return TruthTable::from_function(n, [i](std::uint64_t m) { return (m >> i) & 1; });
}

TruthTable constant_function(std::size_t n, int value) {
  return TruthTable::from_function(n, [value](std::uint64_t) { return value; });
}

TruthTable tree_function(const TreeShape& shape) {
  const std::size_t n = shape.leaves();
  return TruthTable::from_function(n, [&](std::uint64_t m) {
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = (m >> i) & 1;
    return eval_tree(shape, bits);
  });
}

TruthTable star_property(std::size_t vertices) {
  GraphOracle probe = GraphOracle::empty(vertices);
  const std::size_t n = probe.edge_count_max();
  return TruthTable::from_function(n, [&](std::uint64_t m) {
    for (std::size_t c = 0; c < vertices; ++c) {
      bool star = true;
      for (std::size_t j = 0; j < vertices && star; ++j) {
        if (j == c) continue;
        if (((m >> probe.edge_index(c, j)) & 1) == 0) star = false;
      }
      if (star) return 1;
    }
    return 0;
  });
}

TruthTable edge_exists_property(std::size_t vertices) {
  GraphOracle probe = GraphOracle::empty(vertices);
  return TruthTable::from_function(probe.edge_count_max(),
                                   [](std::uint64_t m) { return m != 0; });
}

int degree(const TruthTable& f) {
  require_arity(f, 22, "degree");
  // In-place Moebius transform over the subset lattice, exact in integers.
  std::vector<std::int64_t> coeff(f.values.begin(), f.values.end());
  const std::size_t size = coeff.size();
  for (std::size_t bit = 1; bit < size; bit <<= 1)
    for (std::size_t mask = 0; mask < size; ++mask)
      if (mask & bit) coeff[mask] -= coeff[mask ^ bit];
  int deg = 0;
  for (std::size_t mask = 0; mask < size; ++mask)
    if (coeff[mask] != 0) deg = std::max(deg, std::popcount(mask));
  return deg;
}

int sensitivity(const TruthTable& f) {
  require_arity(f, 22, "sensitivity");
  int best = 0;
  const std::size_t size = f.values.size();
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    int s = 0;
    for (std::size_t i = 0; i < f.n; ++i)
      if (f.values[mask] != f.values[mask ^ (std::uint64_t{1} << i)]) ++s;
    best = std::max(best, s);
  }
  return best;
}

namespace {

// Restrictions encoded in ternary: digit i is 0 (free), 1 (x_i = 0),
// 2 (x_i = 1). Two memo tables over the 3^n states: the restricted
// function's value (0/1/mixed) and the minimax depth.
struct DepthSolver {
  const TruthTable& f;
  std::vector<std::size_t> pow3;
  std::vector<std::int8_t> constancy;  // -1 unset, 0, 1, 2 = mixed
  std::vector<std::int8_t> depth;      // -1 unset

  explicit DepthSolver(const TruthTable& table) : f(table) {
    pow3.resize(f.n + 1);
    pow3[0] = 1;
    for (std::size_t i = 1; i <= f.n; ++i) pow3[i] = pow3[i - 1] * 3;
    constancy.assign(pow3[f.n], -1);
    depth.assign(pow3[f.n], -1);
  }

  int constant_value(std::size_t code) {
    std::int8_t& memo = constancy[code];
    if (memo >= 0) return memo;
    // Find the first free variable; fully assigned restrictions evaluate f.
    std::size_t c = code;
    std::size_t free_var = f.n;
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < f.n; ++i) {
      const std::size_t digit = c % 3;
      c /= 3;
      if (digit == 0 && free_var == f.n) free_var = i;
      if (digit == 2) mask |= std::uint64_t{1} << i;
    }
    if (free_var == f.n) {
      memo = static_cast<std::int8_t>(f.values[mask]);
      return memo;
    }
    const int v0 = constant_value(code + pow3[free_var]);
    const int v1 = constant_value(code + 2 * pow3[free_var]);
    memo = (v0 == v1 && v0 != 2) ? static_cast<std::int8_t>(v0) : std::int8_t{2};
    return memo;
  }

  int solve(std::size_t code) {
    std::int8_t& memo = depth[code];
    if (memo >= 0) return memo;
    if (constant_value(code) != 2) {
      memo = 0;
      return 0;
    }
    int best = static_cast<int>(f.n);
    std::size_t c = code;
    for (std::size_t i = 0; i < f.n; ++i) {
      const std::size_t digit = c % 3;
      c /= 3;
      if (digit != 0) continue;
      const int d0 = solve(code + pow3[i]);
      const int d1 = solve(code + 2 * pow3[i]);
      best = std::min(best, 1 + std::max(d0, d1));
    }
    memo = static_cast<std::int8_t>(best);
    return best;
  }
};

}  // namespace

int decision_tree_depth(const TruthTable& f) {
  require_arity(f, 14, "decision_tree_depth");
  DepthSolver solver(f);
  return solver.solve(0);
}

bool is_monotone(const TruthTable& f) {
  require_arity(f, 22, "is_monotone");
  const std::size_t size = f.values.size();
  for (std::uint64_t mask = 0; mask < size; ++mask)
    for (std::size_t i = 0; i < f.n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (!(mask & bit) && f.values[mask] > f.values[mask | bit]) return false;
    }
  return true;
}

MonotoneReport check_monotone_relations(const TruthTable& f) {
  require_arity(f, 14, "check_monotone_relations");
  MonotoneReport r;
  r.monotone = is_monotone(f);
  r.depth = decision_tree_depth(f);
  r.sens = sensitivity(f);
  r.deg = degree(f);
  r.depth_le_sens_sq = r.depth <= r.sens * r.sens;
  r.deg_ge_sens = r.deg >= r.sens;
  return r;
}

std::string to_file(const TruthTable& f) {
  std::string out = std::to_string(f.n) + "\n";
  out.reserve(out.size() + f.values.size() + 1);
  // Lexicographic input order: x_0 is the most significant position.
  for (std::size_t row = 0; row < f.values.size(); ++row) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < f.n; ++i)
      if ((row >> (f.n - 1 - i)) & 1) mask |= std::uint64_t{1} << i;
    out += f.values[mask] ? '1' : '0';
  }
  out += "\n";
  return out;
}

TruthTable from_file(const std::string& content) {
  std::istringstream in(content);
  std::size_t n = 0;
  std::string row;
  if (!(in >> n)) throw std::invalid_argument("truth table file: missing arity line");
  if (n > 22) throw std::invalid_argument("truth table file: arity cap is 22");
  if (!(in >> row)) throw std::invalid_argument("truth table file: missing value line");
  const std::size_t size = std::size_t{1} << n;
  if (row.size() != size)
    throw std::invalid_argument("truth table file: value line must have 2^N characters");
  TruthTable t;
  t.n = n;
  t.values.assign(size, 0);
  for (std::size_t rowidx = 0; rowidx < size; ++rowidx) {
    const char ch = row[rowidx];
    if (ch != '0' && ch != '1')
      throw std::invalid_argument("truth table file: values must be 0 or 1");
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < n; ++i)
      if ((rowidx >> (n - 1 - i)) & 1) mask |= std::uint64_t{1} << i;
    t.values[mask] = ch == '1' ? 1 : 0;
  }
  return t;
}

}  // namespace bf
}  // namespace qqw
