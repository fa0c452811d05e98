#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"

#include <json.hpp>

#include <fstream>
#include <random>
#include <sstream>

using namespace period_lens;

namespace {

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// tau(n) for n = 1..M from q prod (1 - q^n)^24: Euler's pentagonal series for
// the product, then the power recurrence n g_n = sum_j ((k+1) j - n) f_j g_{n-j}
std::vector<__int128> tau_oracle(int M) {
  std::vector<__int128> f(M, 0);
  for (long j = 0;; ++j) {
    bool any = false;
    for (long g : {j * (3 * j - 1) / 2, j * (3 * j + 1) / 2}) {
      if (g < M) {
        f[g] = (j % 2 ? -1 : 1);
        any = true;
      }
      if (j == 0) break;
    }
    if (!any) break;
  }
  const int k = 24;
  std::vector<__int128> g(M, 0);
  g[0] = 1;
  for (int n = 1; n < M; ++n) {
    __int128 acc = 0;
    for (int j = 1; j <= n; ++j)
      if (f[j] != 0) acc += static_cast<__int128>((k + 1) * j - n) * f[j] * g[n - j];
    g[n] = acc / n;
  }
  return g;  // tau(n) = g[n-1]
}

std::string i128(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  std::string s;
  while (u) {
    s.insert(s.begin(), static_cast<char>('0' + u % 10));
    u /= 10;
  }
  return neg ? "-" + s : s;
}

nlohmann::ordered_json small_form() {
  nlohmann::ordered_json j;
  j["label"] = "7.4.a.a";
  j["level"] = 7;
  j["weight"] = 4;
  j["fricke_sign"] = 1;
  j["fe_sign"] = 1;
  j["coeff_kind"] = "rational";
  j["an"] = {"1", "-1", "-2", "-7", "16", "2", "-7"};
  return j;
}

}  // namespace

TEST_CASE("fixture round-trips byte for byte") {
  for (const auto& e : std::filesystem::directory_iterator(fixture_dir())) {
    std::string text = read(e.path());
    Newform f = parse_newform(text);
    CHECK(serialize_newform(f) == text);
  }
}

TEST_CASE("7.4.a.a file carries the expected header") {
  Newform f = fixture("7.4.a.a");
  CHECK(f.level() == 7);
  CHECK(f.weight() == 4);
  CHECK(f.fricke_sign() == 1);
  CHECK(f.kind() == CoeffKind::rational);
  CHECK(f.exact()[0] == 1);
}

TEST_CASE("Deligne violation on exact data") {
  auto j = small_form();
  j["an"][1] = "100";  // bound 2 * 2^1.5 ~ 5.66
  CHECK_THROWS_AS(parse_newform(j.dump()), ValidationError);
}

TEST_CASE("Deligne violation on embedded data only warns") {
  auto j = small_form();
  j["coeff_kind"] = "embedded";
  j["precision_decimal_digits"] = 30;
  j["an"][1] = "100.0";
  Newform f = parse_newform(j.dump());
  CHECK_FALSE(f.warnings().empty());
}

TEST_CASE("level 4 requires the minus Fricke sign") {
  auto j = small_form();
  j["label"] = "4.6.a.a";
  j["level"] = 4;
  j["weight"] = 6;
  j["fricke_sign"] = 1;
  j["fe_sign"] = -1;
  j["an"] = {"1", "0", "-12"};
  CHECK_THROWS_AS(parse_newform(j.dump()), ValidationError);
  j["fricke_sign"] = -1;
  j["fe_sign"] = 1;
  CHECK_NOTHROW(parse_newform(j.dump()));
}

TEST_CASE("level 1 requires the plus Fricke sign") {
  Newform d12 = generate_level_one(12, 10);
  NewformData data = d12.data();
  data.fricke_sign = -1;
  data.fe_sign = -1;
  CHECK_THROWS_AS(Newform{data}, ValidationError);
}

TEST_CASE("inconsistent sign triple") {
  auto j = small_form();
  j["fe_sign"] = -1;  // k = 4: fe sign equals the Fricke sign
  CHECK_THROWS_AS(parse_newform(j.dump()), ValidationError);
  CHECK(fe_sign_from_fricke(4, 1) == 1);
  CHECK(fe_sign_from_fricke(6, 1) == -1);
  CHECK(fe_sign_from_fricke(6, -1) == 1);
}

TEST_CASE("a(1) must be 1") {
  auto j = small_form();
  j["an"][0] = "2";
  CHECK_THROWS_AS(parse_newform(j.dump()), ValidationError);
}

TEST_CASE("randomized corruption is rejected") {
  std::mt19937 rng(20240611);
  const std::string good = small_form().dump();
  int rejected = 0, trials = 200;
  for (int t = 0; t < trials; ++t) {
    auto j = small_form();
    switch (rng() % 8) {
      case 0: j["weight"] = 5; break;
      case 1: j["weight"] = 2; break;
      case 2: j["fricke_sign"] = 0; break;
      case 3: j["an"][0] = std::to_string(static_cast<int>(rng() % 50) + 2); break;
      case 4: j["an"][2] = "x" + std::to_string(rng() % 10); break;
      case 5: j["an"][1] = std::to_string(static_cast<int>(rng() % 1000) + 6); break;
      case 6: j.erase("level"); break;
      case 7: j["coeff_kind"] = "complex"; break;
    }
    try {
      parse_newform(j.dump());
    } catch (const std::exception&) {
      ++rejected;
    }
  }
  CHECK(rejected == trials);
  CHECK_NOTHROW(parse_newform(good));
}

TEST_CASE("malformed text") {
  CHECK_THROWS(parse_newform("{ not json"));
  CHECK_THROWS(parse_newform("[]"));
}

TEST_CASE("level one: normalization, sign and the first coefficients") {
  Newform f = generate_level_one(12, 5);
  CHECK(f.exact()[0] == 1);
  CHECK(f.exact()[1] == -24);
  CHECK(f.fricke_sign() == 1);
  CHECK(f.source() == Source::generated);
  for (int k : {16, 18, 20, 22, 26}) {
    Newform g = generate_level_one(k, 3);
    CHECK(g.exact()[0] == 1);
    CHECK(g.fricke_sign() == 1);
  }
}

TEST_CASE("weight 12 agrees with the product formula") {
  const int M = 1500;
  auto tau = tau_oracle(M);
  auto ours = level_one_coefficients(12, M);
  for (int n = 1; n <= M; ++n) REQUIRE(ours[n - 1].str() == i128(tau[n - 1]));
}

TEST_CASE("unsupported level-one weights") {
  CHECK_THROWS(generate_level_one(14, 10));
  CHECK_THROWS(generate_level_one(24, 10));
}

TEST_CASE("Hecke multiplicativity on generated forms") {
  for (int k : {12, 16, 18, 20, 22, 26}) {
    const int M = 400;
    Newform f = generate_level_one(k, M);
    const auto& a = f.exact();
    for (int m = 2; m * m <= M; ++m)
      for (int n = 2; n * n <= M; ++n)
        if (std::gcd(m, n) == 1) REQUIRE(a[m * n - 1] == a[m - 1] * a[n - 1]);
  }
}

TEST_CASE("divisor counts") {
  auto dc = divisor_counts(12);
  CHECK(dc[1] == 1);
  CHECK(dc[6] == 4);
  CHECK(dc[12] == 6);
}

TEST_CASE("corpus loads in label order") {
  auto c = load_corpus(fixture_dir());
  REQUIRE(c.size() >= 13);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i - 1].label() < c[i].label());
}

TEST_CASE("embedded coefficients carry their precision") {
  Newform f = fixture("4.26.a.a");
  CHECK(f.kind() == CoeffKind::embedded);
  CHECK(f.precision_digits() >= 100);
  CHECK(d(f.coefficient_relative_error()) < 1e-90);
  CHECK(f.fricke_sign() == -1);
}

TEST_CASE("save and reload") {
  auto dir = scratch_dir("newform");
  Newform f = generate_level_one(16, 50);
  save_newform(f, dir / "x.json");
  Newform g = load_newform(dir / "x.json");
  CHECK(serialize_newform(g) == serialize_newform(f));
}
