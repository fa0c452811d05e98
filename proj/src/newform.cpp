#include "period_lens/newform.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace period_lens {

using ojson = nlohmann::ordered_json;

std::string to_string(CoeffKind k) { return k == CoeffKind::rational ? "rational" : "embedded"; }

std::string to_string(Source s) {
  switch (s) {
    case Source::file: return "file";
    case Source::generated: return "generated";
    case Source::lmfdb: return "lmfdb";
  }
  return "file";
}

InsufficientCoefficients::InsufficientCoefficients(int req, int avail)
    : std::runtime_error("need " + std::to_string(req) + " coefficients, have " +
                         std::to_string(avail)),
      required(req),
      available(avail) {}

int fe_sign_from_fricke(int weight, int fricke) {
  // i^k with k even
  return (weight % 4 == 0) ? fricke : -fricke;
}

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Rational parse_rational(const std::string& s) {
  try {
    Rational q(s);
    return q;
  } catch (const std::exception&) {
    throw ValidationError("bad rational coefficient: " + s);
  }
}

}  // namespace

Newform::Newform(NewformData d) : d_(std::move(d)) {
  if (d_.label.empty()) throw ValidationError("empty label");
  if (d_.level < 1) throw ValidationError("level must be positive");
  if (d_.weight < 4 || d_.weight % 2 != 0) throw ValidationError("weight must be even and >= 4");
  if (d_.fricke_sign != 1 && d_.fricke_sign != -1) throw ValidationError("fricke_sign must be +1 or -1");
  if (d_.fe_sign != fe_sign_from_fricke(d_.weight, d_.fricke_sign))
    throw ValidationError("fe_sign inconsistent with i^k times fricke_sign");
  if (d_.level == 4 && d_.fricke_sign != -1) throw ValidationError("level 4 forces fricke_sign = -1");
  if (d_.level == 1 && d_.fricke_sign != 1) throw ValidationError("level 1 forces fricke_sign = +1");
  if (d_.an.empty()) throw ValidationError("no coefficients");

  if (d_.kind == CoeffKind::rational) {
    exact_.reserve(d_.an.size());
    for (const auto& s : d_.an) exact_.push_back(parse_rational(s));
    if (exact_[0] != 1) throw ValidationError("a(1) != 1");
    for (int p = 2; p <= count(); ++p) {
      if (!is_prime(p)) continue;
      const Rational& a = exact_[p - 1];
      Integer num = boost::multiprecision::numerator(a), den = boost::multiprecision::denominator(a);
      Integer bound = 4 * boost::multiprecision::pow(Integer(p), static_cast<unsigned>(d_.weight - 1));
      if (num * num > bound * den * den)
        throw ValidationError("Deligne bound violated at p = " + std::to_string(p));
    }
  } else {
    if (d_.precision_digits <= 0) throw ValidationError("embedded coefficients need precision_decimal_digits");
    PrecisionGuard g(static_cast<unsigned>(d_.precision_digits * 3.33) + 32);
    Real a1;
    try {
      a1 = parse_real(d_.an[0]);
    } catch (const std::exception& e) {
      throw ValidationError(e.what());
    }
    if (abs(a1 - 1) > pow(Real(10), -(d_.precision_digits - 2))) throw ValidationError("a(1) != 1");
    for (int p = 2; p <= count(); ++p) {
      if (!is_prime(p)) continue;
      Real a = parse_real(d_.an[p - 1]);
      if (a * a > 4 * pow(Real(p), d_.weight - 1) * (1 + pow(Real(10), -(d_.precision_digits - 4))))
        warnings_.push_back("Deligne bound exceeded at p = " + std::to_string(p));
    }
  }
}

RealVector Newform::coefficients(int n) const {
  if (n > count()) throw InsufficientCoefficients(n, count());
  RealVector v(n);
  for (int i = 0; i < n; ++i) {
    if (d_.kind == CoeffKind::rational)
      v(i) = Real(exact_[i]);
    else
      v(i) = parse_real(d_.an[i]);
  }
  return v;
}

Real Newform::coefficient_relative_error() const {
  if (d_.kind == CoeffKind::rational) return Real(0);
  return pow(Real(10), -(d_.precision_digits - 1));
}

Newform parse_newform(const std::string& text, Source src) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  NewformData d;
  try {
    d.label = j.at("label").get<std::string>();
    d.level = j.at("level").get<int>();
    d.weight = j.at("weight").get<int>();
    d.fricke_sign = j.at("fricke_sign").get<int>();
    d.fe_sign = j.at("fe_sign").get<int>();
    auto kind = j.at("coeff_kind").get<std::string>();
    if (kind == "rational")
      d.kind = CoeffKind::rational;
    else if (kind == "embedded")
      d.kind = CoeffKind::embedded;
    else
      throw ValidationError("unknown coeff_kind " + kind);
    if (d.kind == CoeffKind::embedded) d.precision_digits = j.at("precision_decimal_digits").get<int>();
    for (const auto& a : j.at("an")) d.an.push_back(a.is_string() ? a.get<std::string>() : a.dump());
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationError(std::string("bad newform record: ") + e.what());
  }
  d.source = src;
  return Newform(std::move(d));
}

Newform load_newform(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_newform(ss.str());
}

std::string serialize_newform(const Newform& f) {
  ojson j;
  j["label"] = f.label();
  j["level"] = f.level();
  j["weight"] = f.weight();
  j["fricke_sign"] = f.fricke_sign();
  j["fe_sign"] = f.fe_sign();
  j["coeff_kind"] = to_string(f.kind());
  if (f.kind() == CoeffKind::embedded) j["precision_decimal_digits"] = f.precision_digits();
  j["an"] = f.coefficient_text();
  return j.dump(2) + "\n";
}

void save_newform(const Newform& f, const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << serialize_newform(f);
}

std::vector<Newform> load_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<Newform> out;
  for (const auto& p : files) out.push_back(load_newform(p));
  return out;
}

std::vector<int> divisor_counts(int n_max) {
  std::vector<int> d(n_max + 1, 0);
  for (int i = 1; i <= n_max; ++i)
    for (int j = i; j <= n_max; j += i) ++d[j];
  return d;
}

namespace {

using Series = std::vector<Integer>;

Series mul(const Series& a, const Series& b, int len) {
  Series c(len, Integer(0));
  for (int i = 0; i < len; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j < len; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Series eisenstein(int k, int len) {
  // 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, only k = 4, 6 needed
  long factor = k == 4 ? 240 : -504;
  Series e(len, Integer(0));
  e[0] = 1;
  for (int n = 1; n < len; ++n) {
    Integer s = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) s += boost::multiprecision::pow(Integer(d), k - 1);
    e[n] = factor * s;
  }
  return e;
}

}  // namespace

std::vector<Integer> level_one_coefficients(int weight, int count) {
  int a4 = 0, a6 = 0;
  switch (weight) {
    case 12: break;
    case 16: a4 = 1; break;
    case 18: a6 = 1; break;
    case 20: a4 = 2; break;
    case 22: a4 = 1; a6 = 1; break;
    case 26: a4 = 2; a6 = 1; break;
    default:
      throw std::invalid_argument("S_k(1) is not one-dimensional for k = " + std::to_string(weight));
  }
  int len = count + 1;
  Series e4 = eisenstein(4, len), e6 = eisenstein(6, len);
  Series e4c = mul(mul(e4, e4, len), e4, len), e6s = mul(e6, e6, len);
  Series delta(len);
  for (int i = 0; i < len; ++i) delta[i] = (e4c[i] - e6s[i]) / 1728;
  for (int i = 0; i < a4; ++i) delta = mul(delta, e4, len);
  for (int i = 0; i < a6; ++i) delta = mul(delta, e6, len);
  return std::vector<Integer>(delta.begin() + 1, delta.end());
}

Newform generate_level_one(int weight, int count) {
  NewformData d;
  d.label = "1." + std::to_string(weight) + ".a.a";
  d.level = 1;
  d.weight = weight;
  d.fricke_sign = 1;
  d.fe_sign = fe_sign_from_fricke(weight, 1);
  d.kind = CoeffKind::rational;
  for (const auto& c : level_one_coefficients(weight, count)) d.an.push_back(c.str());
  d.source = Source::generated;
  return Newform(std::move(d));
}

}  // namespace period_lens
