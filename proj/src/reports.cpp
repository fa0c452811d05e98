#include "period_lens/reports.hpp"

#include "period_lens/error_bounds.hpp"
#include "period_lens/main_term.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace period_lens {

using ojson = nlohmann::ordered_json;

TableKind parse_table_kind(const std::string& s) {
  if (s == "d+") return TableKind::d_plus;
  if (s == "d-") return TableKind::d_minus;
  if (s == "k+") return TableKind::k_plus;
  if (s == "k-") return TableKind::k_minus;
  throw std::invalid_argument("table must be one of d+, d-, k+, k-");
}

std::string to_string(TableKind t) {
  switch (t) {
    case TableKind::d_plus: return "d+";
    case TableKind::d_minus: return "d-";
    case TableKind::k_plus: return "k+";
    case TableKind::k_minus: return "k-";
  }
  return "d+";
}

Parity parity_of(TableKind t) {
  return t == TableKind::d_plus || t == TableKind::k_plus ? Parity::plus : Parity::minus;
}

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::string golden_name(TableKind t) {
  switch (t) {
    case TableKind::d_plus: return "d_plus.csv";
    case TableKind::d_minus: return "d_minus.csv";
    case TableKind::k_plus: return "k_plus.csv";
    case TableKind::k_minus: return "k_minus.csv";
  }
  return "";
}

}  // namespace

std::map<int, std::string> load_golden(const std::filesystem::path& csv) {
  std::istringstream in(slurp(csv));
  std::map<int, std::string> out;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("bad golden row: " + line);
    out[std::stoi(line.substr(0, comma))] = trim(line.substr(comma + 1));
  }
  return out;
}

std::vector<int> parse_range(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    if (part.empty()) continue;
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stoi(part));
    } else {
      int a = std::stoi(part.substr(0, dots)), b = std::stoi(part.substr(dots + 2));
      if (a > b) throw std::invalid_argument("empty range " + part);
      for (int n = a; n <= b; ++n) out.push_back(n);
    }
  }
  if (out.empty()) throw std::invalid_argument("no levels in '" + spec + "'");
  for (int n : out)
    if (n < 1) throw std::invalid_argument("levels must be positive");
  return out;
}

std::vector<TableRow> compute_table(TableKind t, const std::vector<int>& levels, int jobs,
                                    const std::map<int, std::string>& golden) {
  const Parity par = parity_of(t);
  std::vector<TableRow> rows;
  if (t == TableKind::d_plus || t == TableKind::d_minus) {
    // shares the global precision, so one level at a time
    for (int N : levels) {
      TableRow r;
      r.level = N;
      r.computed = (N == 1 && par == Parity::minus) ? "none" : std::to_string(d_threshold(N, par));
      rows.push_back(r);
    }
  } else {
    for (const auto& c : k_table(levels, par, jobs)) {
      TableRow r;
      r.level = c.level;
      r.computed = c.k ? std::to_string(*c.k) : c.status;
      rows.push_back(r);
    }
  }
  for (auto& r : rows) {
    auto it = golden.find(r.level);
    if (it == golden.end()) continue;
    r.published = it->second;
    r.match = r.published == r.computed;
  }
  return rows;
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "N,computed,paper_value,match\n";
  for (const auto& r : rows) os << r.level << ',' << r.computed << ',' << r.published << ',' << (r.match ? "yes" : "no") << '\n';
  return os.str();
}

std::string verdict_json(const ZeroVerdict& v, const Newform& f) {
  ojson j;
  j["label"] = v.label;
  j["level"] = f.level();
  j["weight"] = f.weight();
  j["fricke_sign"] = f.fricke_sign();
  j["parity"] = to_string(v.parity);
  j["degree"] = v.degree;
  j["on_circle_count"] = v.on_circle_count;
  j["exceptional_upper_bound"] = v.exceptional_upper_bound;
  j["endpoint_multiplicities"] = {{"plus", v.endpoint_plus}, {"minus", v.endpoint_minus}};
  j["certified"] = v.certified;
  j["route"] = to_string(v.route);
  j["predicted"] = v.predicted ? ojson(*v.predicted) : ojson(nullptr);
  j["oracle_on_circle"] = v.oracle_on_circle ? ojson(*v.oracle_on_circle) : ojson(nullptr);
  j["sign_changes"] = v.sign_changes;
  j["lattice_points"] = v.lattice_points;
  j["min_margin"] = v.min_margin ? ojson(to_decimal(*v.min_margin, 20)) : ojson(nullptr);
  j["min_bound_margin"] = v.min_bound_margin ? ojson(to_decimal(*v.min_bound_margin, 20)) : ojson(nullptr);
  j["degenerate"] = v.degenerate;
  j["note"] = v.note;
  return j.dump();
}

std::string polynomial_json(const PeriodPolynomial& p, int digits) {
  PrecisionGuard g(p.bits);
  ojson j;
  j["kind"] = to_string(p.kind);
  j["level"] = p.level;
  j["weight"] = p.weight;
  j["fricke_sign"] = p.fricke_sign;
  j["bits"] = p.bits;
  j["r_scale"] = {to_decimal(p.r_scale.real(), digits), to_decimal(p.r_scale.imag(), digits)};
  ojson cs = ojson::array();
  for (int i = 0; i <= p.degree(); ++i)
    cs.push_back({{"re", to_decimal(p.coefficients(i).real(), digits)},
                  {"im", to_decimal(p.coefficients(i).imag(), digits)},
                  {"radius", to_decimal(p.radii(i), 6)}});
  j["coefficients"] = cs;
  return j.dump(2) + "\n";
}

PeriodPolynomial polynomial_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  PeriodPolynomial p;
  static const std::map<std::string, PolyKind> kinds = {
      {"full", PolyKind::full},       {"even", PolyKind::even},       {"odd", PolyKind::odd},
      {"p_plus", PolyKind::p_plus},   {"p_minus", PolyKind::p_minus}, {"q_plus", PolyKind::q_plus},
      {"q_minus", PolyKind::q_minus}};
  p.kind = kinds.at(j.value("kind", std::string("full")));
  p.level = j.value("level", 1);
  p.weight = j.value("weight", 0);
  p.fricke_sign = j.value("fricke_sign", 1);
  p.bits = j.value("bits", 256u);
  PrecisionGuard g(p.bits);
  const auto& cs = j.at("coefficients");
  p.coefficients.resize(static_cast<long>(cs.size()));
  p.radii.resize(static_cast<long>(cs.size()));
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto& c = cs[i];
    p.coefficients(static_cast<long>(i)) = Complex(parse_real(c.at("re").get<std::string>()), parse_real(c.value("im", std::string("0"))));
    p.radii(static_cast<long>(i)) = parse_real(c.value("radius", std::string("0")));
  }
  if (j.contains("r_scale")) p.r_scale = Complex(parse_real(j["r_scale"][0].get<std::string>()), parse_real(j["r_scale"][1].get<std::string>()));
  return p;
}

std::string roots_json(const RootSet& rs, int digits) {
  PrecisionGuard g(rs.bits);
  ojson j;
  j["level"] = rs.level;
  j["degree"] = rs.degree();
  j["tolerance"] = to_decimal(rs.tol, 6);
  j["max_residual"] = to_decimal(rs.max_residual, 6);
  j["converged"] = rs.converged;
  RootCounts c = counts(rs);
  j["counts"] = {{"on_circle", c.on_circle}, {"exceptional", c.exceptional}, {"origin", c.origin}, {"borderline", c.borderline}};
  ojson arr = ojson::array();
  for (const auto& r : rs.roots)
    arr.push_back({{"re", to_decimal(r.value.real(), digits)},
                   {"im", to_decimal(r.value.imag(), digits)},
                   {"class", to_string(r.cls)},
                   {"borderline", r.borderline},
                   {"residual", to_decimal(r.residual, 6)}});
  j["roots"] = arr;
  return j.dump(2) + "\n";
}

std::string git_blob_sha1(const std::filesystem::path& p) {
  std::string body = slurp(p);
  std::string data = "blob " + std::to_string(body.size()) + std::string(1, '\0') + body;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha1(), nullptr);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

FigureFiles emit_figures(int level, Parity parity, const std::filesystem::path& out_dir, int points) {
  if (points < 2) throw std::invalid_argument("need at least two points");
  std::filesystem::create_directories(out_dir);
  PrecisionGuard g(128);
  ArgumentFunction<Real> a(level, parity);
  const Real pi = pi_real();
  std::ostringstream raw, cor;
  raw << "theta,alpha\n";
  cor << "theta,argument\n";
  for (int i = 0; i < points; ++i) {
    Real th = pi * i / (points - 1);
    std::string t = to_decimal(th, 17);
    raw << t << ',' << to_decimal(a.raw(th), 17) << '\n';
    cor << t << ',' << to_decimal(a(th), 17) << '\n';
  }
  std::string stem = "figure_N" + std::to_string(level) + (parity == Parity::plus ? "_plus" : "_minus");
  FigureFiles f{out_dir / (stem + "_raw.csv"), out_dir / (stem + "_corrected.csv")};
  spit(f.raw, raw.str());
  spit(f.corrected, cor.str());
  return f;
}

VerifySummary run_verify_all(const VerifyOptions& opt) {
  if (!std::filesystem::is_directory(opt.corpus_dir)) throw std::runtime_error("missing corpus: " + opt.corpus_dir.string());
  std::filesystem::create_directories(opt.out_dir);
  VerifySummary sum;
  auto log = [&](const std::string& s) {
    if (!opt.quiet) std::cerr << s << '\n';
  };

  ojson inputs = ojson::array();
  for (TableKind t : {TableKind::d_plus, TableKind::d_minus, TableKind::k_plus, TableKind::k_minus}) {
    auto gpath = opt.golden_dir / golden_name(t);
    auto golden = load_golden(gpath);
    inputs.push_back({{"path", "golden/" + golden_name(t)}, {"sha1", git_blob_sha1(gpath)}});
    std::vector<int> levels;
    for (const auto& kv : golden) levels.push_back(kv.first);
    log("table " + to_string(t) + ": " + std::to_string(levels.size()) + " levels");
    auto rows = compute_table(t, levels, opt.jobs, golden);
    for (const auto& r : rows) {
      if (r.match) continue;
      ++sum.table_mismatches;
      sum.mismatch_lines.push_back("table " + to_string(t) + " N=" + std::to_string(r.level) + " computed=" + r.computed +
                                   " published=" + r.published);
    }
    spit(opt.out_dir / ("tables_" + to_string(t) + ".csv"), table_csv(rows));
  }

  auto corpus = load_corpus(opt.corpus_dir);
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(opt.corpus_dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) inputs.push_back({{"path", "newforms/" + p.filename().string()}, {"sha1", git_blob_sha1(p)}});

  std::ostringstream jsonl;
  int certified = 0;
  LocatorOptions lo;
  lo.route = Route::both;
  for (const auto& f : corpus) {
    for (Parity par : {Parity::plus, Parity::minus}) {
      if (par == Parity::minus && f.weight() < 6) continue;
      log("verdict " + f.label() + " " + to_string(par));
      ZeroVerdict v = count_on_circle(f, par, opt.policy, lo);
      jsonl << verdict_json(v, f) << '\n';
      ++sum.verdicts;
      if (v.certified) ++certified;
      std::string tag = "verdict " + f.label() + " " + to_string(par) + ": ";
      const bool main_route = !(f.level() == 1 && par == Parity::minus);
      if (v.predicted && main_route && !v.certified && !v.degenerate) {
        ++sum.verdict_problems;
        sum.mismatch_lines.push_back(tag + "expected a certified count, got none");
      }
      if (v.predicted && v.certified && v.on_circle_count < *v.predicted) {
        ++sum.verdict_problems;
        sum.mismatch_lines.push_back(tag + "on-circle " + std::to_string(v.on_circle_count) + " below predicted " +
                                     std::to_string(*v.predicted));
      }
      if (v.certified && v.oracle_on_circle && *v.oracle_on_circle != v.on_circle_count) {
        ++sum.verdict_problems;
        sum.mismatch_lines.push_back(tag + "main term " + std::to_string(v.on_circle_count) + " vs oracle " +
                                     std::to_string(*v.oracle_on_circle));
      }
    }
  }
  spit(opt.out_dir / "verdicts.jsonl", jsonl.str());

  std::ostringstream mm;
  for (const auto& l : sum.mismatch_lines) mm << l << '\n';
  spit(opt.out_dir / "mismatches.txt", mm.str());

  ojson man;
  // paths and job counts stay out so reruns elsewhere compare byte for byte
  man["command"] = "verify-all";
  man["inputs"] = inputs;
  man["policy"] = {{"working_bits", opt.policy.working_bits}, {"target_bits", opt.policy.target_bits}};
  man["summary"] = {{"verdicts", sum.verdicts},
                    {"certified", certified},
                    {"table_mismatches", sum.table_mismatches},
                    {"verdict_problems", sum.verdict_problems}};
  man["outputs"] = {"tables_d+.csv", "tables_d-.csv", "tables_k+.csv", "tables_k-.csv", "verdicts.jsonl", "mismatches.txt"};
  spit(opt.out_dir / "manifest.json", man.dump(2) + "\n");
  return sum;
}

}  // namespace period_lens
