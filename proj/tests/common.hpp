#pragma once

#include "period_lens/newform.hpp"

#include <filesystem>
#include <string>

inline std::filesystem::path fixture_dir() { return std::filesystem::path(PL_FIXTURES) / "newforms"; }
inline std::filesystem::path golden_dir() { return std::filesystem::path(PL_FIXTURES) / "golden"; }
inline std::filesystem::path testdata_dir() { return PL_TESTDATA; }

inline period_lens::Newform fixture(const std::string& label) {
  return period_lens::load_newform(fixture_dir() / (label + ".json"));
}

inline double d(const period_lens::Real& x) { return x.convert_to<double>(); }

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("period-lens-" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}
