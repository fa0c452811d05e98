// period-lens: command-line front end

#include "period_lens/error_bounds.hpp"
#include "period_lens/lmfdb.hpp"
#include "period_lens/main_term.hpp"
#include "period_lens/reports.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace period_lens;

namespace {

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Period polynomials of newforms and their zeros on the circle |X| = 1/sqrt(N)"};
  app.require_subcommand(1);

  unsigned bits = 256;
  std::string cache;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool offline = false;
  app.add_option("--bits", bits, "working precision in bits (target is half)")->check(CLI::Range(128u, 8192u));
  app.add_option("--cache", cache, "LMFDB cache directory (default: $PERIOD_LENS_CACHE)");
  app.add_option("--jobs", jobs, "worker threads for table scans")->check(CLI::PositiveNumber);
  app.add_flag("--offline", offline, "never touch the network");

  auto policy = [&]() {
    PrecisionPolicy p{bits, bits / 2};
    p.validate();
    return p;
  };

  // ingest
  std::string in_file, out_path;
  auto* ingest = app.add_subcommand("ingest", "validate a newform file and rewrite it canonically");
  ingest->add_option("file", in_file)->required()->check(CLI::ExistingFile);
  ingest->add_option("--out", out_path, "write the canonical form here");

  // gen-level1
  int gen_k = 12, gen_count = 0;
  bool gen_all = false;
  auto* gen = app.add_subcommand("gen-level1", "generate a level-one eigenform from Eisenstein products");
  gen->add_option("--k", gen_k, "weight: 12, 16, 18, 20, 22 or 26");
  gen->add_option("--count", gen_count, "number of coefficients (default: the precision budget)");
  gen->add_flag("--all", gen_all, "every supported weight, written as <out>/1.<k>.a.a.json");
  gen->add_option("--out", out_path, "output file, or directory with --all");

  // fetch
  std::string label, base_url = "https://www.lmfdb.org";
  int embedding = 0;
  auto* fetch = app.add_subcommand("fetch", "fetch a newform from the LMFDB (cached)");
  fetch->add_option("label", label)->required();
  fetch->add_option("--embedding", embedding, "index of the real embedding, smallest root first");
  fetch->add_option("--base-url", base_url);

  // lvalue
  int s_arg = 1;
  std::string method = "completed";
  auto* lv = app.add_subcommand("lvalue", "L(f, s) with an error radius");
  lv->add_option("file", in_file)->required()->check(CLI::ExistingFile);
  lv->add_option("--s", s_arg)->required();
  lv->add_option("--method", method)->check(CLI::IsMember({"completed", "direct"}));

  // poly
  std::string kind = "full";
  auto* poly = app.add_subcommand("poly", "period polynomial coefficients");
  poly->add_option("file", in_file)->required()->check(CLI::ExistingFile);
  poly->add_option("--kind", kind)->check(CLI::IsMember({"full", "even", "odd", "q+", "q-"}));
  poly->add_option("--out", out_path);

  // mainterm
  int level = 1;
  std::string parity_s = "+", profile_path;
  int points = 2048;
  auto* mt = app.add_subcommand("mainterm", "argument and radius of the trigonometric main term");
  mt->add_option("--N", level)->required()->check(CLI::PositiveNumber);
  mt->add_option("--parity", parity_s);
  mt->add_option("--emit-profile", profile_path, "CSV with theta, argument, radius");
  mt->add_option("--points", points);

  // tables
  std::string which = "d+", range = "1..30", golden_dir;
  auto* tb = app.add_subcommand("tables", "recompute a threshold table");
  tb->add_option("--which", which)->check(CLI::IsMember({"d+", "d-", "k+", "k-"}));
  tb->add_option("--range", range);
  tb->add_option("--golden", golden_dir, "directory with the bundled golden CSVs");
  tb->add_option("--out", out_path);

  // locate
  std::string route_s = "main", report;
  int scan = 16384;
  auto* loc = app.add_subcommand("locate", "count zeros on the circle");
  loc->add_option("file", in_file)->required()->check(CLI::ExistingFile);
  loc->add_option("--parity", parity_s);
  loc->add_option("--route", route_s)->check(CLI::IsMember({"main", "oracle", "both"}));
  loc->add_option("--scan", scan, "dense scan points");
  loc->add_option("--report", report, "verdict JSON path");

  // roots
  auto* rt = app.add_subcommand("roots", "all roots of a polynomial written by `poly`");
  rt->add_option("file", in_file)->required()->check(CLI::ExistingFile);
  rt->add_option("--N", level, "level fixing the circle (default: from the file)");
  rt->add_option("--out", out_path);

  // verify-all
  std::string corpus = "fixtures/newforms", out_dir = "verify-out";
  golden_dir = "fixtures/golden";
  auto* va = app.add_subcommand("verify-all", "tables, verdicts and golden comparison for a corpus");
  va->add_option("--corpus", corpus);
  va->add_option("--golden", golden_dir);
  va->add_option("--out", out_dir);

  // emit-figures
  auto* ef = app.add_subcommand("emit-figures", "raw and branch-corrected argument curves");
  ef->add_option("--N", level)->required()->check(CLI::PositiveNumber);
  ef->add_option("--parity", parity_s);
  ef->add_option("--points", points);
  ef->add_option("--out", out_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      Newform f = load_newform(in_file);
      for (const auto& w : f.warnings()) std::cerr << "warning: " << w << '\n';
      if (!out_path.empty()) save_newform(f, out_path);
      std::cout << f.label() << " N=" << f.level() << " k=" << f.weight() << " eps=" << f.fricke_sign()
                << " coefficients=" << f.count() << '\n';
    } else if (*gen) {
      std::vector<int> weights = gen_all ? std::vector<int>{12, 16, 18, 20, 22, 26} : std::vector<int>{gen_k};
      for (int k : weights) {
        int count = gen_count > 0 ? gen_count : std::max(600, coefficient_budget(1, k, bits).required);
        Newform f = generate_level_one(k, count);
        std::string path = out_path;
        if (gen_all) path = (std::filesystem::path(out_path.empty() ? "." : out_path) / (f.label() + ".json")).string();
        if (path.empty())
          std::cout << serialize_newform(f);
        else
          save_newform(f, path);
      }
    } else if (*fetch) {
      LmfdbOptions o;
      o.base_url = base_url;
      o.cache_dir = cache;
      o.offline = offline;
      o.embedding = embedding;
      Newform f = fetch_lmfdb(label, o);
      std::cout << cache_path(o, label).string() << '\n';
      if (!f.normalization_note().empty()) std::cerr << "note: " << f.normalization_note() << '\n';
    } else if (*lv) {
      Newform f = load_newform(in_file);
      PrecisionPolicy pol = policy();
      LValue v = method == "direct" ? l_value_direct(f, s_arg, pol) : l_value(f, s_arg, pol);
      PrecisionGuard g(pol.working_bits);
      std::cout << to_decimal(v.value, static_cast<int>(pol.target_bits * 0.30103)) << ' ' << to_decimal(v.radius, 6) << '\n';
    } else if (*poly) {
      Newform f = load_newform(in_file);
      PrecisionPolicy pol = policy();
      PeriodPolynomial p = kind == "full"   ? build_full(f, pol)
                           : kind == "even" ? build_even(f, pol)
                           : kind == "odd"  ? build_odd(f, pol)
                           : kind == "q+"   ? build_q(f, Parity::plus, pol)
                                            : build_q(f, Parity::minus, pol);
      write_or_print(out_path, polynomial_json(p));
    } else if (*mt) {
      Parity par = parse_parity(parity_s);
      SupEnclosure e = derivative_sup(level, par);
      std::cout << "sup a' in [" << to_decimal(e.lower, 12) << ", " << to_decimal(e.upper, 12) << "], d = "
                << d_threshold(level, par) << '\n';
      if (!profile_path.empty()) write_or_print(profile_path, profile_csv(main_term_profile(level, par, points)));
    } else if (*tb) {
      TableKind t = parse_table_kind(which);
      std::map<int, std::string> golden;
      if (!golden_dir.empty()) {
        static const std::map<TableKind, std::string> names = {{TableKind::d_plus, "d_plus.csv"},
                                                               {TableKind::d_minus, "d_minus.csv"},
                                                               {TableKind::k_plus, "k_plus.csv"},
                                                               {TableKind::k_minus, "k_minus.csv"}};
        golden = load_golden(std::filesystem::path(golden_dir) / names.at(t));
      }
      write_or_print(out_path, table_csv(compute_table(t, parse_range(range), jobs, golden)));
    } else if (*loc) {
      Newform f = load_newform(in_file);
      LocatorOptions o;
      o.route = parse_route(route_s);
      o.scan_points = scan;
      ZeroVerdict v = count_on_circle(f, parse_parity(parity_s), policy(), o);
      std::string js = verdict_json(v, f) + "\n";
      if (report.empty())
        std::cout << js;
      else
        write_or_print(report, js);
    } else if (*rt) {
      PeriodPolynomial p = polynomial_from_json(read_file(in_file));
      if (rt->count("--N")) p.level = level;
      RootSet rs = all_roots(p, policy());
      write_or_print(out_path, roots_json(rs));
    } else if (*va) {
      VerifyOptions o;
      o.corpus_dir = corpus;
      o.golden_dir = golden_dir;
      o.out_dir = out_dir;
      o.policy = policy();
      o.jobs = jobs;
      VerifySummary s = run_verify_all(o);
      std::cout << s.verdicts << " verdicts, " << s.table_mismatches << " table mismatches, " << s.verdict_problems
                << " verdict problems\n";
      for (const auto& l : s.mismatch_lines) std::cout << l << '\n';
      return s.exit_code();
    } else if (*ef) {
      FigureFiles f = emit_figures(level, parse_parity(parity_s), out_dir, points);
      std::cout << f.raw.string() << '\n' << f.corrected.string() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
