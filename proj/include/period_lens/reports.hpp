#pragma once

#include "period_lens/zero_locator.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace period_lens {

enum class TableKind { d_plus, d_minus, k_plus, k_minus };
TableKind parse_table_kind(const std::string& s);  // "d+", "d-", "k+", "k-"
std::string to_string(TableKind t);
Parity parity_of(TableKind t);

struct TableRow {
  int level = 0;
  std::string computed;  // integer or "none" / "horizon"
  std::string published;  // empty when no golden value is bundled
  bool match = true;
};

// golden CSV: '#' comment lines, header "N,value", then one row per level
std::map<int, std::string> load_golden(const std::filesystem::path& csv);
std::vector<int> parse_range(const std::string& spec);  // "1..60,454,455"

std::vector<TableRow> compute_table(TableKind t, const std::vector<int>& levels, int jobs,
                                    const std::map<int, std::string>& golden = {});
std::string table_csv(const std::vector<TableRow>& rows);

std::string verdict_json(const ZeroVerdict& v, const Newform& f);
std::string polynomial_json(const PeriodPolynomial& p, int digits = 60);
PeriodPolynomial polynomial_from_json(const std::string& text);
std::string roots_json(const RootSet& rs, int digits = 40);

// git blob sha1 of the file contents
std::string git_blob_sha1(const std::filesystem::path& p);

struct FigureFiles {
  std::filesystem::path raw, corrected;
};
// alpha with its branch jumps, and the continuous argument, on `points` samples of [0, pi]
FigureFiles emit_figures(int level, Parity parity, const std::filesystem::path& out_dir, int points = 2048);

struct VerifyOptions {
  std::filesystem::path corpus_dir;
  std::filesystem::path golden_dir;
  std::filesystem::path out_dir;
  PrecisionPolicy policy;
  int jobs = 1;  // k-table scans only; verdicts run sequentially
  bool quiet = false;
};

struct VerifySummary {
  int table_mismatches = 0;
  int verdict_problems = 0;
  int verdicts = 0;
  std::vector<std::string> mismatch_lines;
  int exit_code() const { return table_mismatches + verdict_problems > 0 ? 1 : 0; }
};

// writes tables_{d+,d-,k+,k-}.csv, verdicts.jsonl, mismatches.txt, manifest.json
VerifySummary run_verify_all(const VerifyOptions& opt);

}  // namespace period_lens
