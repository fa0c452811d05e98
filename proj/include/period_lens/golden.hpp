#pragma once

#include "period_lens/period_poly.hpp"

#include <optional>
#include <utility>

namespace period_lens::golden {

// published threshold tables, looked up by level
std::optional<int> d_value(int level, Parity parity);
std::optional<int> k_value(int level, Parity parity);  // empty for the "--" cells and outside the table

// (first weight, exceptional-zero bound) for the small levels
std::optional<std::pair<int, int>> exceptional_row(int level, Parity parity);

}  // namespace period_lens::golden
