#include "period_lens/golden.hpp"

namespace period_lens::golden {

std::optional<int> d_value(int N, Parity parity) {
  if (N < 1) return std::nullopt;
  if (parity == Parity::plus) {
    static const int small[] = {0, 16, 12, 10, 10, 8, 8, 8, 8, 10, 12, 14, 18, 24, 34, 66};
    if (N <= 15) return small[N];
    if (N <= 27) return 6;
    return 4;
  }
  if (N == 1) return std::nullopt;
  if (N == 2) return 12;
  if (N == 3) return 16;
  if (N == 4) return 10;
  if (N <= 10) return 8;
  return 6;
}

std::optional<int> k_value(int N, Parity parity) {
  if (N < 1) return std::nullopt;
  if (parity == Parity::plus) {
    static const int small[] = {0, 84, 44, 28, 20, 20, 18, 16, 14, 14, 12, 12, 12, 12, 12, 14};
    if (N <= 15) return small[N];
    if (N == 16) return std::nullopt;
    if (N <= 22) return 12;
    if (N <= 30) return 10;
    if (N <= 56) return 8;
    if (N <= 454) return 6;
    return 4;
  }
  if (N <= 1 || N == 4) return std::nullopt;
  if (N == 2) return 40;
  if (N == 3) return 30;
  if (N == 5) return 22;
  if (N <= 8) return 16;
  if (N == 9) return 14;
  if (N <= 12) return 12;
  if (N <= 17) return 10;
  if (N <= 145) return 8;
  return 6;
}

std::optional<std::pair<int, int>> exceptional_row(int N, Parity parity) {
  if (parity == Parity::plus) {
    static const int kmin[] = {0, 84, 44, 28, 20, 20, 18, 16, 14, 14, 12, 14, 18, 24, 34, 66, 12};
    if (N < 1 || N > 16) return std::nullopt;
    return std::make_pair(kmin[N], N == 1 ? 8 : N == 16 ? 0 : 4);
  }
  switch (N) {
    case 1: return std::make_pair(52, 5);
    case 2: return std::make_pair(40, 5);
    case 3: return std::make_pair(30, 5);
    case 4: return std::make_pair(26, 1);
    default: return std::nullopt;
  }
}

}  // namespace period_lens::golden
