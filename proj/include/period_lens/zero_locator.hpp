#pragma once

#include "period_lens/root_oracle.hpp"

#include <optional>
#include <vector>

namespace period_lens {

enum class Route { main_term, oracle, both };
std::string to_string(Route r);
Route parse_route(const std::string& s);

// Im or Re of e^{i m theta} q(conj X), X = e^{i theta}/sqrt N; its zeros in
// theta are the zeros of the matching p polynomial on the circle
struct TargetValue {
  Real value;
  Real radius;
};
bool target_uses_imag(Parity parity, int fricke_sign);
TargetValue target_function(const PeriodPolynomial& q, const Real& theta);

struct EndpointMultiplicity {
  int at_plus = 0;   // X = +1/sqrt N
  int at_minus = 0;  // X = -1/sqrt N
  bool conclusive = true;
};
// order of vanishing at the endpoints, read off successive derivatives.
// p is a p_plus or p_minus polynomial; `recheck`, when given, is the same
// polynomial built at a higher precision and must agree
EndpointMultiplicity endpoint_multiplicity(const PeriodPolynomial& p, const PeriodPolynomial* recheck = nullptr);

// one sign decision of the main-term route
struct SignSample {
  Real theta;
  Real phase;    // m theta - a(theta); unset on plain grid points
  Real value;
  Real radius;
  Real margin;   // |value| - radius
  int sign = 0;  // 0 when not certified
  bool lattice = false;
};

struct ZeroVerdict {
  std::string label;
  Parity parity = Parity::plus;
  int degree = 0;
  int on_circle_count = 0;
  int exceptional_upper_bound = 0;
  int endpoint_plus = 0;
  int endpoint_minus = 0;
  bool certified = false;
  Route route = Route::main_term;
  std::optional<int> predicted;
  std::optional<int> oracle_on_circle;
  int sign_changes = 0;
  int lattice_points = 0;
  std::optional<Real> min_margin;        // over lattice points
  std::optional<Real> min_bound_margin;  // over lattice points, |main| - B; informational
  bool degenerate = false;               // polynomial vanishes within its radii
  std::string note;
};

// on-circle count guaranteed by the published theorems and tables, if any
std::optional<int> predicted_count(int level, int weight, int fricke_sign, Parity parity);

struct LocatorOptions {
  Route route = Route::main_term;
  int scan_points = 16384;
  bool recheck_endpoints = true;  // rebuild at doubled precision for near-zero endpoints
};

ZeroVerdict count_on_circle(const Newform& f, Parity parity, const PrecisionPolicy& pol,
                            const LocatorOptions& opt = {});

// the certified samples behind a main-term count, for reports
std::vector<SignSample> sign_sequence(const PeriodPolynomial& q, int scan_points, bool with_lattice);

}  // namespace period_lens
