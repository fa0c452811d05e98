#pragma once

#include "period_lens/newform.hpp"

#include <chrono>
#include <filesystem>
#include <mutex>
#include <stdexcept>
#include <string>

namespace period_lens {

class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LabelNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requests, relative to base_url:
//   /api/mf_newforms/?label=<label>&_format=json
//   /api/mf_hecke_nf/?label=<label>&_format=json
// Responses are {"data": [record]}.  Fetched forms are cached in the newform
// file format as <cache_dir>/<label>.json (<label>.e<j>.json for embedding j > 0).
struct LmfdbOptions {
  std::string base_url = "https://www.lmfdb.org";
  std::filesystem::path cache_dir;  // empty: default_cache_dir()
  bool offline = false;
  int delay_ms = 500;     // minimum gap between requests, clamped to >= 500
  int embedding = 0;      // j-th smallest real root of the Hecke field polynomial
  int digits = 160;       // decimal digits kept for embedded coefficients
  int timeout_s = 30;
  bool cross_check = true;
};

// PERIOD_LENS_CACHE if set, else $HOME/.cache/period-lens, else ./.period-lens-cache
std::filesystem::path default_cache_dir();
bool valid_label(const std::string& label);
std::filesystem::path cache_path(const LmfdbOptions& opt, const std::string& label);

class LmfdbClient {
 public:
  explicit LmfdbClient(LmfdbOptions opt);
  Newform fetch(const std::string& label);
  const LmfdbOptions& options() const { return opt_; }

 private:
  std::string get(const std::string& path);

  LmfdbOptions opt_;
  std::mutex mu_;
  std::chrono::steady_clock::time_point last_{};
  bool first_ = true;
};

Newform fetch_lmfdb(const std::string& label, const LmfdbOptions& opt = {});

// Builds the newform from the two records; exposed for testing
Newform newform_from_records(const std::string& newforms_json, const std::string& hecke_json,
                             const LmfdbOptions& opt);

// JSON text with integer literals of 16+ digits turned into strings
std::string quote_long_integers(const std::string& text);

}  // namespace period_lens
