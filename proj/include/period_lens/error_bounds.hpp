#pragma once

#include "period_lens/period_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace period_lens {

int l_index(int weight, Parity parity);

struct BoundReport {
  int level = 0;
  int weight = 0;
  Parity parity = Parity::plus;
  int l = 0;
  bool applicable = false;  // false when l < 0 or l + 2 <= 2 pi / sqrt N
  Real B;
  Real radius_floor;
  bool holds = false;
};

Real radius_floor(int level, Parity parity);
BoundReport bound_B(int level, int weight, Parity parity, unsigned bits = 128);

struct KCell {
  int level = 0;
  std::optional<int> k;  // empty: "none"
  std::string status;    // "ok", "none", "horizon"
};

// smallest even k with floor > B that keeps holding up to the horizon
KCell k_threshold(int level, Parity parity, int horizon = 500, unsigned bits = 128);
std::vector<KCell> k_table(const std::vector<int>& levels, Parity parity, int jobs = 1, int horizon = 500);

// X^m q(1/(NX)) - X^m g(2 pi / (NX)), X = e^{i theta}/sqrt N, g = cos or sin
Complex error_term(const PeriodPolynomial& q, const Real& theta);

// lower bound on the main-term modulus at the first lattice point for the
// two degenerate cases (N = 16 plus, k >= 12; N = 4 minus, k >= 26)
struct SpecialFloor {
  Real floor;
  Real B;
  bool holds = false;
};
SpecialFloor special_floor(int level, int weight, Parity parity, unsigned bits = 128);

struct GrowthCheck {
  int sigma = 0;
  int part = 0;  // 1 or 2
  Real value;
  Real bound;
  bool holds = false;
};
Real growth_bound_near_one(int weight);
Real growth_bound_strip(int level, int weight);
// part 1 for sigma >= 3k/4, part 2 for integer sigma >= k/2
GrowthCheck growth_selfcheck(const Newform& f, int sigma, int part, const PrecisionPolicy& pol);

}  // namespace period_lens
