#pragma once

#include "period_lens/numeric.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace period_lens {

enum class CoeffKind { rational, embedded };
enum class Source { file, generated, lmfdb };

std::string to_string(CoeffKind k);
std::string to_string(Source s);

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientCoefficients : public std::runtime_error {
 public:
  InsufficientCoefficients(int required, int available);
  int required;
  int available;
};

struct NewformData {
  std::string label;
  int level = 0;
  int weight = 0;
  int fricke_sign = 0;
  int fe_sign = 0;
  CoeffKind kind = CoeffKind::rational;
  int precision_digits = 0;  // embedded only
  std::vector<std::string> an;
  Source source = Source::file;
  std::optional<int> embedding;
  std::string normalization_note;
};

// Immutable once constructed; the constructor validates.
class Newform {
 public:
  explicit Newform(NewformData d);

  const std::string& label() const { return d_.label; }
  int level() const { return d_.level; }
  int weight() const { return d_.weight; }
  int fricke_sign() const { return d_.fricke_sign; }
  int fe_sign() const { return d_.fe_sign; }
  CoeffKind kind() const { return d_.kind; }
  int precision_digits() const { return d_.precision_digits; }
  Source source() const { return d_.source; }
  const std::optional<int>& embedding() const { return d_.embedding; }
  const std::string& normalization_note() const { return d_.normalization_note; }
  int count() const { return static_cast<int>(d_.an.size()); }
  const std::vector<std::string>& coefficient_text() const { return d_.an; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const NewformData& data() const { return d_; }

  // a(1..n) at the current precision; n <= count()
  RealVector coefficients(int n) const;
  // exact values, rational kind only
  const std::vector<Rational>& exact() const { return exact_; }
  // relative error carried by each stored coefficient (0 for rational)
  Real coefficient_relative_error() const;

 private:
  NewformData d_;
  std::vector<Rational> exact_;
  std::vector<std::string> warnings_;
};

int fe_sign_from_fricke(int weight, int fricke);

Newform parse_newform(const std::string& json_text, Source src = Source::file);
Newform load_newform(const std::filesystem::path& p);
std::string serialize_newform(const Newform& f);
void save_newform(const Newform& f, const std::filesystem::path& p);

std::vector<Newform> load_corpus(const std::filesystem::path& dir);

// Exact q-expansion of the level-one eigenform of weight k (dim S_k = 1).
Newform generate_level_one(int weight, int count);
std::vector<Integer> level_one_coefficients(int weight, int count);

// d(n) for n = 1..n_max, index 0 unused
std::vector<int> divisor_counts(int n_max);

}  // namespace period_lens
