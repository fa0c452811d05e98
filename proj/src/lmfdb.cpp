#include "period_lens/lmfdb.hpp"

#include "period_lens/lfunction.hpp"
#include "period_lens/root_oracle.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

namespace period_lens {

using nlohmann::json;

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("PERIOD_LENS_CACHE"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "period-lens";
  return ".period-lens-cache";
}

bool valid_label(const std::string& label) {
  static const std::regex re(R"(^[1-9][0-9]*\.[1-9][0-9]*\.[a-z]+\.[a-z]+$)");
  return std::regex_match(label, re);
}

std::filesystem::path cache_path(const LmfdbOptions& opt, const std::string& label) {
  auto dir = opt.cache_dir.empty() ? default_cache_dir() : opt.cache_dir;
  std::string name = label + (opt.embedding > 0 ? ".e" + std::to_string(opt.embedding) : "") + ".json";
  return dir / name;
}

std::string quote_long_integers(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 64);
  bool in_string = false;
  for (std::size_t i = 0; i < text.size();) {
    char c = text[i];
    if (in_string) {
      out += c;
      if (c == '\\' && i + 1 < text.size()) {
        out += text[i + 1];
        i += 2;
        continue;
      }
      if (c == '"') in_string = false;
      ++i;
      continue;
    }
    if (c == '"') {
      in_string = true;
      out += c;
      ++i;
      continue;
    }
    if (c == '-' || (c >= '0' && c <= '9')) {
      std::size_t j = i + (c == '-' ? 1 : 0);
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      bool plain = j == text.size() || (text[j] != '.' && text[j] != 'e' && text[j] != 'E');
      std::string tok = text.substr(i, j - i);
      if (plain && j - i >= 16)
        out += '"' + tok + '"';
      else
        out += tok;
      i = j;
      continue;
    }
    out += c;
    ++i;
  }
  return out;
}

namespace {

Integer to_integer(const json& v) {
  if (v.is_string()) return Integer(v.get<std::string>());
  if (v.is_number_integer()) return Integer(v.get<long long>());
  throw ValidationError("expected an integer in the remote record");
}

json first_record(const std::string& text, const std::string& what) {
  json doc = json::parse(quote_long_integers(text));
  if (!doc.contains("data") || !doc["data"].is_array()) throw ValidationError(what + ": response lacks a data array");
  if (doc["data"].empty()) throw LabelNotFound(what + ": no record");
  return doc["data"][0];
}

// all real roots, ascending
std::vector<Real> real_roots(const std::vector<Integer>& poly, unsigned bits) {
  ComplexVector c(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) c(static_cast<long>(i)) = Complex(Real(poly[i]), 0);
  RealVector radii = RealVector::Constant(c.size(), Real(0));
  PrecisionPolicy pol{bits, bits / 2};
  RootSet rs = all_roots(c, radii, 1, pol);
  PrecisionGuard g(rs.bits);
  std::vector<Real> out;
  const Real tol = two_pow(-static_cast<long>(bits) / 3);
  for (auto& r : rs.roots)
    if (abs(r.value.imag()) <= tol * (1 + abs(r.value.real()))) out.push_back(r.value.real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Newform newform_from_records(const std::string& newforms_json, const std::string& hecke_json, const LmfdbOptions& opt) {
  json nf = first_record(newforms_json, "mf_newforms");
  json hk = first_record(hecke_json, "mf_hecke_nf");

  NewformData d;
  d.label = nf.value("label", std::string());
  d.level = nf.at("level").get<int>();
  d.weight = nf.at("weight").get<int>();
  if (nf.contains("char_order") && nf["char_order"].get<int>() != 1)
    throw ValidationError(d.label + ": nontrivial character");
  const int dim = nf.value("dim", 1);
  if (nf.contains("fricke_eigenval") && !nf["fricke_eigenval"].is_null()) d.fricke_sign = nf["fricke_eigenval"].get<int>();
  d.source = Source::lmfdb;

  const json& an = hk.at("an");
  if (!an.is_array() || an.empty()) throw ValidationError(d.label + ": no coefficients");

  std::vector<std::vector<Integer>> num;
  std::vector<Integer> den;
  if (hk.contains("hecke_ring_numerators") && !hk["hecke_ring_numerators"].is_null()) {
    for (const auto& row : hk["hecke_ring_numerators"]) {
      std::vector<Integer> r;
      for (const auto& x : row) r.push_back(to_integer(x));
      num.push_back(r);
    }
    for (const auto& x : hk.at("hecke_ring_denominators")) den.push_back(to_integer(x));
  } else {
    for (int j = 0; j < dim; ++j) {
      std::vector<Integer> r(dim, 0);
      r[j] = 1;
      num.push_back(r);
      den.push_back(1);
    }
  }

  if (dim == 1) {
    d.kind = CoeffKind::rational;
    std::vector<Rational> q;
    for (const auto& row : an) q.push_back(Rational(to_integer(row.is_array() ? row[0] : row)) * Rational(num[0][0], den[0]));
    Rational a1 = q[0];
    if (a1 == 0) throw ValidationError(d.label + ": a(1) = 0");
    if (a1 != 1) {
      for (auto& x : q) x /= a1;
      d.normalization_note = "divided by a(1) = " + a1.str();
    }
    for (const auto& x : q) d.an.push_back(x.str());
  } else {
    std::vector<Integer> poly;
    for (const auto& x : nf.contains("field_poly") ? nf["field_poly"] : hk.at("field_poly")) poly.push_back(to_integer(x));
    const unsigned bits = static_cast<unsigned>(opt.digits * 3.33) + 96;
    auto roots = real_roots(poly, bits);
    if (opt.embedding < 0 || opt.embedding >= static_cast<int>(roots.size()))
      throw ValidationError(d.label + ": no real embedding with index " + std::to_string(opt.embedding));
    PrecisionGuard g(bits);
    const Real beta = roots[static_cast<std::size_t>(opt.embedding)];
    std::vector<Real> basis;
    for (std::size_t j = 0; j < num.size(); ++j) {
      Real v(0), pw(1);
      for (const auto& c : num[j]) {
        v += Real(c) * pw;
        pw *= beta;
      }
      basis.push_back(v / Real(den[j]));
    }
    std::vector<Real> vals;
    for (const auto& row : an) {
      Real v(0);
      for (std::size_t j = 0; j < row.size() && j < basis.size(); ++j) v += Real(to_integer(row[j])) * basis[j];
      vals.push_back(v);
    }
    Real a1 = vals[0];
    if (a1 == 0) throw ValidationError(d.label + ": a(1) = 0");
    if (abs(a1 - 1) > two_pow(-static_cast<long>(bits) / 2)) {
      for (auto& x : vals) x /= a1;
      d.normalization_note = "divided by a(1) = " + to_decimal(a1, 30);
    }
    vals[0] = 1;
    d.kind = CoeffKind::embedded;
    d.precision_digits = opt.digits;
    d.embedding = opt.embedding;
    for (const auto& x : vals) d.an.push_back(x == 0 ? "0" : to_decimal(x, opt.digits));
  }

  // the sign either comes with the record or is decided by the
  // two-split functional-equation test
  PrecisionPolicy pol;
  auto try_sign = [&](int eps) -> std::optional<bool> {
    NewformData t = d;
    t.fricke_sign = eps;
    t.fe_sign = fe_sign_from_fricke(t.weight, eps);
    try {
      return functional_equation_check(Newform(t), pol).consistent;
    } catch (const InsufficientCoefficients&) {
      return std::nullopt;
    } catch (const ValidationError&) {
      return false;  // ruled out structurally, e.g. level 4 with +1
    }
  };
  if (d.fricke_sign == 0) {
    auto plus = try_sign(1), minus = try_sign(-1);
    if (!plus || !minus || *plus == *minus)
      throw ValidationError(d.label + ": remote record lacks the Fricke sign and the self-check is inconclusive");
    d.fricke_sign = *plus ? 1 : -1;
  } else if (opt.cross_check) {
    auto ok = try_sign(d.fricke_sign);
    if (ok && !*ok) throw ValidationError(d.label + ": remote Fricke sign fails the functional-equation check");
    if (!ok) d.normalization_note += (d.normalization_note.empty() ? "" : "; ") + std::string("sign cross-check skipped: too few coefficients");
  }
  d.fe_sign = fe_sign_from_fricke(d.weight, d.fricke_sign);
  return Newform(std::move(d));
}

LmfdbClient::LmfdbClient(LmfdbOptions opt) : opt_(std::move(opt)) {
  if (opt_.delay_ms < 500) opt_.delay_ms = 500;
  if (opt_.cache_dir.empty()) opt_.cache_dir = default_cache_dir();
}

std::string LmfdbClient::get(const std::string& path) {
  std::lock_guard<std::mutex> lk(mu_);
  if (!first_) {
    auto wait = last_ + std::chrono::milliseconds(opt_.delay_ms) - std::chrono::steady_clock::now();
    if (wait > std::chrono::steady_clock::duration::zero()) std::this_thread::sleep_for(wait);
  }
  first_ = false;
  httplib::Client cli(opt_.base_url);
  cli.set_connection_timeout(opt_.timeout_s);
  cli.set_read_timeout(opt_.timeout_s);
  cli.set_follow_location(true);
  auto res = cli.Get(path);
  last_ = std::chrono::steady_clock::now();
  if (!res) throw NetworkError("request failed: " + opt_.base_url + path + " (" + httplib::to_string(res.error()) + ")");
  if (res->status == 404) throw LabelNotFound("not found: " + path);
  if (res->status != 200) throw NetworkError("HTTP " + std::to_string(res->status) + " for " + path);
  return res->body;
}

Newform LmfdbClient::fetch(const std::string& label) {
  if (!valid_label(label)) throw std::invalid_argument("malformed label: " + label);
  auto cached = cache_path(opt_, label);
  if (std::filesystem::exists(cached)) {
    std::ifstream in(cached);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_newform(ss.str(), Source::lmfdb);
  }
  if (opt_.offline) throw NetworkError("offline and no cache entry for " + label);
  std::string q = "?label=" + label + "&_format=json";
  std::string a = get("/api/mf_newforms/" + q);
  std::string b = get("/api/mf_hecke_nf/" + q);
  Newform f = newform_from_records(a, b, opt_);
  std::filesystem::create_directories(cached.parent_path());
  save_newform(f, cached);
  return f;
}

Newform fetch_lmfdb(const std::string& label, const LmfdbOptions& opt) {
  LmfdbClient c(opt);
  return c.fetch(label);
}

}  // namespace period_lens
