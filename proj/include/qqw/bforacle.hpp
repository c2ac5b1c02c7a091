#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qqw/andor.hpp"

namespace qqw {
namespace bf {

// Brute-force ground truth for small Boolean functions. Input encoding:
// entry `mask` holds f(x) where x_i = bit i of mask.
struct TruthTable {
  std::size_t n = 0;
  std::vector<std::uint8_t> values;  // size 2^n

  static TruthTable from_function(std::size_t n, const std::function<int(std::uint64_t)>& f);
  std::uint8_t at(std::uint64_t mask) const { return values[mask]; }
};

TruthTable or_function(std::size_t n);
TruthTable and_function(std::size_t n);
TruthTable majority_function(std::size_t n);  // ties (even n) count as 1
TruthTable dictator_function(std::size_t n, std::size_t i);
TruthTable constant_function(std::size_t n, int value);
TruthTable tree_function(const TreeShape& shape);
TruthTable star_property(std::size_t vertices);
TruthTable edge_exists_property(std::size_t vertices);

// Degree of the unique multilinear representation, via the integer Moebius
// transform. n <= 22.
int degree(const TruthTable& f);

// max over x of the number of single-bit flips that change f. n <= 22.
int sensitivity(const TruthTable& f);

// Optimal deterministic decision-tree depth by memoized minimax over
// partial assignments (ternary-encoded restrictions). n <= 14.
int decision_tree_depth(const TruthTable& f);

bool is_monotone(const TruthTable& f);

struct MonotoneReport {
  bool monotone = false;
  int depth = 0;
  int sens = 0;
  int deg = 0;
  bool depth_le_sens_sq = false;
  bool deg_ge_sens = false;
};

// D(f), s(f), deg(f) and the structural sanity flags for monotone f.
MonotoneReport check_monotone_relations(const TruthTable& f);

// File format: first line N, second line 2^N characters of 0/1 in
// lexicographic input order (x_0 is the most significant position).
std::string to_file(const TruthTable& f);
TruthTable from_file(const std::string& content);

}  // namespace bf
}  // namespace qqw
