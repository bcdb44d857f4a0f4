// Copyright 2026 The shiftsieve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "json.hpp"
#include "shiftsieve/arith.hpp"
#include "shiftsieve/bessel.hpp"
#include "shiftsieve/dirichlet.hpp"
#include "shiftsieve/error.hpp"
#include "shiftsieve/eulerprod.hpp"
#include "shiftsieve/hecke.hpp"
#include "shiftsieve/parallel.hpp"
#include "shiftsieve/shiftsums.hpp"
#include "shiftsieve/sieveweights.hpp"

namespace shiftsieve::cli {

namespace {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- output

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string num(std::uint64_t v) { return std::to_string(v); }
std::string num(std::int64_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

// nlohmann writes non-finite doubles as null; keep that explicit.
Json jnum(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

struct Table {
  std::string name;  // file stem
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      os << (i ? "," : "") << header[i];
    }
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << '\n';
    }
  }
};

struct Report {
  std::string name;
  std::vector<Table> tables;  // tables[0] is the primary one
  Json summary;
};

// ---------------------------------------------------------------- options

struct Options {
  std::string source = "delta";
  std::string table;
  std::string ell;
  std::string x;
  std::string z;
  std::string c;
  std::string cutoff_exp;
  std::string level_exp;
  std::string out;
  std::string threads = "1";
  std::string format = "csv";
  std::string config;
  std::string limit;
  // subcommand specific
  std::string level;
  std::string audit_limit;
  std::string q;
  std::string r;
  std::string w;
  std::string b_grid;
  bool ab_scan = false;
};

[[noreturn]] void config_error(const std::string& msg) {
  fail(ErrorKind::kConfig, msg);
}

// Reals accept a/b fractions.
double parse_real(const std::string& key, const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t p1 = 0;
      std::size_t p2 = 0;
      const double a = std::stod(text.substr(0, slash), &p1);
      const double b = std::stod(text.substr(slash + 1), &p2);
      if (p1 != slash || p2 != text.size() - slash - 1 || b == 0.0) {
        config_error("bad value for --" + key + ": " + text);
      }
      return a / b;
    }
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size() || !std::isfinite(v)) {
      config_error("bad value for --" + key + ": " + text);
    }
    return v;
  } catch (const std::logic_error&) {
    config_error("bad value for --" + key + ": " + text);
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      items.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  items.push_back(cur);
  return items;
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
  const double v = parse_real(key, text);
  if (v < 1.0 || v > 9e15 || std::floor(v) != v) {
    config_error("--" + key + " needs positive integers, got " + text);
  }
  return static_cast<std::uint64_t>(v);
}

std::vector<double> parse_reals(const std::string& key, const std::string& text) {
  std::vector<double> v;
  for (const auto& item : split_list(text)) v.push_back(parse_real(key, item));
  return v;
}

struct Config {
  std::string command;
  std::string source;
  std::string table_path;
  std::vector<std::int64_t> ells;
  std::vector<std::uint64_t> xs;
  std::optional<double> z;
  double c = 1.0;
  double cutoff_exp = shift::kCutoffExponent;
  double level_exp = shift::kLevelExponent;
  std::string out;
  unsigned threads = 1;
  std::string format = "csv";
  std::uint64_t limit = 0;
  Options raw;
};

Config resolve(const std::string& command, const Options& o,
               std::vector<std::uint64_t> default_x,
               std::vector<std::int64_t> default_ell) {
  Config cfg;
  cfg.command = command;
  cfg.raw = o;
  if (o.source != "delta" && o.source != "file") {
    config_error("--source must be delta or file");
  }
  cfg.source = o.source;
  cfg.table_path = o.table;
  if (!o.table.empty()) cfg.source = "file";
  if (cfg.source == "file" && cfg.table_path.empty()) {
    config_error("--source file needs --table <path>");
  }
  if (o.ell.empty()) {
    cfg.ells = std::move(default_ell);
  } else {
    for (const auto& item : split_list(o.ell)) {
      const double v = parse_real("ell", item);
      if (v == 0.0 || std::floor(v) != v || std::abs(v) > 1e12) {
        config_error("--ell entries must be non-zero integers, got " + item);
      }
      cfg.ells.push_back(static_cast<std::int64_t>(v));
    }
  }
  if (o.x.empty()) {
    cfg.xs = std::move(default_x);
  } else {
    for (const auto& item : split_list(o.x)) cfg.xs.push_back(parse_count("x", item));
  }
  for (std::size_t i = 1; i < cfg.xs.size(); ++i) {
    if (cfg.xs[i] <= cfg.xs[i - 1]) config_error("--x grid must be strictly ascending");
  }
  if (!o.z.empty() && !o.c.empty()) config_error("--z and --c are exclusive");
  if (!o.z.empty()) {
    cfg.z = parse_real("z", o.z);
    if (!(*cfg.z >= 2.0)) config_error("--z must be at least 2");
  }
  if (!o.c.empty()) {
    cfg.c = parse_real("c", o.c);
    if (!(cfg.c > 0.0)) config_error("--c must be positive");
  }
  if (!o.cutoff_exp.empty()) {
    cfg.cutoff_exp = parse_real("cutoff-exp", o.cutoff_exp);
    if (!(cfg.cutoff_exp > 0.0 && cfg.cutoff_exp <= 1.0)) {
      config_error("--cutoff-exp must lie in (0, 1]");
    }
  }
  if (!o.level_exp.empty()) {
    cfg.level_exp = parse_real("level-exp", o.level_exp);
    if (!(cfg.level_exp > 0.0 && cfg.level_exp <= 1.0)) {
      config_error("--level-exp must lie in (0, 1]");
    }
  }
  cfg.out = o.out;
  const double t = parse_real("threads", o.threads);
  if (t < 1 || t > 256 || std::floor(t) != t) config_error("--threads must be 1..256");
  cfg.threads = static_cast<unsigned>(t);
  if (o.format != "csv" && o.format != "json") config_error("--format must be csv or json");
  cfg.format = o.format;
  if (!o.limit.empty()) cfg.limit = parse_count("limit", o.limit);
  return cfg;
}

double z_for(const Config& cfg, std::uint64_t x) {
  return cfg.z ? *cfg.z : euler::sieve_cutoff(static_cast<double>(x), cfg.c);
}

std::uint64_t max_abs_ell(const Config& cfg) {
  std::uint64_t m = 0;
  for (auto l : cfg.ells) m = std::max<std::uint64_t>(m, static_cast<std::uint64_t>(std::llabs(l)));
  return m;
}

// Smallest built-in table; main terms want gamma_u at 1e4. Loaded files
// only have to cover the request.
constexpr std::uint64_t kMinTable = 10000;

EigenvalueTable load_table(const Config& cfg, std::uint64_t need) {
  if (cfg.source == "delta") {
    return build_delta_table(std::max({need, kMinTable, cfg.limit}));
  }
  return load_eigenvalue_table(cfg.table_path, std::max(need, cfg.limit));
}

Json input_echo(const Config& cfg) {
  // Thread count and output directory are left out so that reports from
  // different runs of the same experiment compare byte for byte.
  Json in;
  in["command"] = cfg.command;
  in["source"] = cfg.source;
  if (cfg.source == "file") in["table"] = cfg.table_path;
  in["ell"] = cfg.ells;
  in["x"] = cfg.xs;
  if (cfg.z) {
    in["z"] = *cfg.z;
  } else {
    in["c"] = cfg.c;
  }
  in["cutoff_exp"] = cfg.cutoff_exp;
  in["level_exp"] = cfg.level_exp;
  if (cfg.limit) in["limit"] = cfg.limit;
  return in;
}

Json exponents() {
  Json e;
  e["cutoff"] = shift::kCutoffExponent;        // 1/16
  e["sieve_level"] = shift::kLevelExponent;    // 1/64
  e["decay"] = shift::kDecayExponent;          // 1/7
  e["ab_saving"] = 1.0 / 6.0;
  e["lemma41_root"] = 1.0 / 18.0;
  return e;
}

struct Context {
  Config cfg;
  EigenvalueTable table;
  shift::Calibration cal;
  double gamma = 1.0;
};

Context make(const Config& cfg, std::uint64_t need) {
  Context ctx{cfg, load_table(cfg, need), {}, 1.0};
  ctx.cal = shift::calibrate(ctx.table);
  ctx.gamma = euler::gamma_u(ctx.table);
  return ctx;
}

Json header(const Context& ctx) {
  Json j;
  j["input"] = input_echo(ctx.cfg);
  Json t;
  t["source"] = ctx.table.source();
  t["limit"] = ctx.table.limit();
  t["bound_mode"] = std::string(to_string(ctx.table.bound_mode()));
  j["table"] = t;
  Json cal;
  cal["l_hat"] = ctx.cal.l_hat;
  cal["x0"] = ctx.cal.x0;
  cal["lambda2_sum"] = ctx.cal.lambda2_sum;
  cal["gamma_u"] = ctx.gamma;
  cal["gamma_u_cutoff"] = std::min<std::uint64_t>(euler::kGammaCutoff, ctx.table.limit());
  j["calibration"] = cal;
  j["exponents"] = exponents();
  return j;
}

// ---------------------------------------------------------------- commands

Report cmd_eigen(const Config& cfg) {
  const std::uint64_t n = cfg.xs.back();
  Context ctx = make(cfg, n);
  Report rep{"eigen", {}, header(ctx)};
  Table t{"eigen", {"n", "lambda"}, {}};
  for (std::uint64_t k = 1; k <= n; ++k) t.rows.push_back({num(k), num(ctx.table(k))});
  rep.tables.push_back(std::move(t));
  double worst = 0.0;
  const std::uint64_t mn = std::min<std::uint64_t>(n, 10000);
  for (std::uint64_t a = 1; a <= mn; ++a) {
    for (std::uint64_t b = a; a * b <= mn; ++b) {
      worst = std::max(worst, std::abs(hecke_relation_residual(ctx.table, a, b)));
    }
  }
  Json r;
  r["rows"] = n;
  r["bound_excess"] = bound_excess(ctx.table);
  r["max_hecke_residual"] = worst;
  r["hecke_residual_range_mn"] = mn;
  rep.summary["results"] = r;
  return rep;
}

Report cmd_sums(const Config& cfg) {
  Context ctx = make(cfg, cfg.xs.back() + max_abs_ell(cfg));
  Report rep{"sums", {}, header(ctx)};
  const bool many = cfg.ells.size() > 1;
  Table decay{"sums", {}, {}};
  if (many) decay.header.push_back("ell");
  for (const char* h : {"x", "S", "S_over_x", "S_norm_1_7"}) decay.header.push_back(h);
  Table part{"sums_partition",
             {"ell", "x", "z", "cutoff", "S_total", "S_A", "S_Al", "S_star"}, {}};
  Json per_ell = Json::array();
  for (auto ell : cfg.ells) {
    const auto rows = shift::theorem1_decay_table(ctx.table, ell, cfg.xs);
    for (const auto& r : rows) {
      std::vector<std::string> row;
      if (many) row.push_back(num(ell));
      for (double v : {r.x, r.S, r.S_over_x, r.S_norm}) row.push_back(num(v));
      decay.rows.push_back(std::move(row));
    }
    for (auto x : cfg.xs) {
      const double z = z_for(cfg, x);
      const auto p = shift::partition_sums(ctx.table, ell, x, z, cfg.cutoff_exp);
      part.rows.push_back({num(ell), num(x), num(z), num(cfg.cutoff_exp), num(p.S_total),
                           num(p.S_A), num(p.S_Al), num(p.S_star)});
    }
    Json e;
    e["ell"] = ell;
    e["decay_slope"] = rows.size() >= 2 ? jnum(shift::decay_slope(rows)) : Json(nullptr);
    bool dec = true;
    for (std::size_t i = 1; i < rows.size(); ++i) dec = dec && rows[i].S_over_x < rows[i - 1].S_over_x;
    e["strictly_decreasing"] = dec;
    per_ell.push_back(e);
  }
  rep.summary["results"] = per_ell;
  rep.tables.push_back(std::move(decay));
  rep.tables.push_back(std::move(part));
  return rep;
}

Report cmd_sieve(const Config& cfg) {
  const double z = cfg.z.value_or(5.0);
  const double level = cfg.raw.level.empty() ? z : parse_real("level", cfg.raw.level);
  if (!(level >= 1.0)) config_error("--level must be at least 1");
  const std::uint64_t audit_limit =
      cfg.raw.audit_limit.empty() ? 100000 : parse_count("audit-limit", cfg.raw.audit_limit);
  Context ctx = make(cfg, static_cast<std::uint64_t>(std::ceil(z)));
  Report rep{"sieve", {}, header(ctx)};
  const auto sctx = sieve::make_context(z);
  const auto w = sieve::linear_sieve_weights(sctx, level);
  Table t{"sieve", {"d", "xi"}, {}};
  Json weights = Json::object();
  for (const auto& e : w.support()) {
    t.rows.push_back({num(e.d), num(e.xi)});
    weights[num(e.d)] = e.xi;
  }
  rep.tables.push_back(std::move(t));

  // The residual depends only on which context primes divide n, so all
  // subsets is exhaustive; past 20 primes fall back to n <= audit_limit.
  Json audit;
  std::int64_t min_res = std::numeric_limits<std::int64_t>::max();
  std::uint64_t checked = 0;
  if (sctx.primes.size() <= 20) {
    audit["mode"] = "prime-subsets";
    const std::size_t full = std::size_t{1} << sctx.primes.size();
    for (std::size_t mask = 0; mask < full; ++mask) {
      // Residual of the squarefree representative; products of many primes
      // can overflow, so evaluate it directly from the support.
      std::int64_t s = 0;
      for (const auto& e : w.support()) {
        bool divides = true;
        for (std::size_t i = 0; i < sctx.primes.size() && divides; ++i) {
          if (e.d % sctx.primes[i] == 0 && !(mask >> i & 1)) divides = false;
        }
        if (divides) s += e.xi;
      }
      const std::int64_t indicator = mask == 0 ? 1 : 0;
      min_res = std::min(min_res, s - indicator);
      ++checked;
    }
  } else {
    audit["mode"] = "range";
    for (std::uint64_t n = 1; n <= audit_limit; ++n) {
      min_res = std::min(min_res, sieve::upper_bound_residual(w, n));
      ++checked;
    }
  }
  audit["checked"] = checked;
  audit["min_residual"] = min_res;
  audit["pass"] = min_res >= 0;
  Json r;
  r["z"] = z;
  r["level"] = level;
  r["primes"] = sctx.primes;
  r["support_size"] = w.support().size();
  r["weights"] = weights;
  r["audit"] = audit;
  const auto g1 = sieve::density_g1(ctx.table, sctx, 1);
  const auto g2 = sieve::density_g2(ctx.table, sctx, 1, 1);
  const double G = sieve::bilinear_G(w, w, g1, g2);
  const auto A = sieve::theoremA_bound(sctx, g1, g2, level, level);
  Json ta;
  ta["C"] = A.C;
  ta["V1"] = A.V1;
  ta["V2"] = A.V2;
  ta["product"] = A.product;
  r["bilinear_G"] = G;
  r["theorem_a"] = ta;
  rep.summary["results"] = r;
  if (min_res < 0) {
    rep.summary["results"]["error"] = "negative upper-bound residual";
  }
  return rep;
}

Report cmd_euler(const Config& cfg) {
  double z_max = 2.0;
  for (auto x : cfg.xs) z_max = std::max(z_max, z_for(cfg, x));
  Context ctx = make(cfg, static_cast<std::uint64_t>(std::ceil(z_max)));
  Report rep{"euler", {}, header(ctx)};
  Table prod{cfg.raw.ab_scan ? "euler_products" : "euler",
             {"x", "z", "L1", "L2", "L4", "L6", "M", "lemma41_bound", "min_prime_margin"},
             {}};
  for (auto x : cfg.xs) {
    const double z = z_for(cfg, x);
    const auto rep41 = euler::lemma41_check(ctx.table, z);
    std::vector<std::string> row{num(x), num(z)};
    for (int m : {1, 2, 4, 6}) row.push_back(num(euler::partial_sym_power(ctx.table, m, z).value));
    row.push_back(num(rep41.M));
    row.push_back(num(rep41.bound));
    row.push_back(num(rep41.min_prime_margin));
    prod.rows.push_back(std::move(row));
  }
  Json r;
  r["known_pair"] = {{"a", euler::kKnownA}, {"b", euler::kKnownB},
                     {"min_margin", euler::poly_min_margin(euler::kKnownA, euler::kKnownB)}};
  double ems = std::numeric_limits<double>::infinity();
  for (int i = -20000; i <= 20000; ++i) ems = std::min(ems, euler::ems_inequality_margin(i * 1e-4));
  r["ems_min_margin"] = ems;
  r["saving_ceiling"] = euler::saving_ceiling();
  if (cfg.raw.ab_scan) {
    std::vector<double> bs = cfg.raw.b_grid.empty()
        ? std::vector<double>{0.0, 1.0 / 144, 1.0 / 72, 1.0 / 48, 1.0 / 36,
                              1.0 / 24, 1.0 / 18, 1.0 / 12}
        : parse_reals("b-grid", cfg.raw.b_grid);
    Table scan{"euler", {"a", "b", "saving", "min_margin", "admissible", "kind"}, {}};
    auto add = [&](const euler::AbCandidate& c, const char* kind) {
      scan.rows.push_back({num(c.a), num(c.b), num(c.saving), num(c.min_margin),
                           c.admissible ? "true" : "false", kind});
    };
    const auto known = euler::evaluate_ab(euler::kKnownA, euler::kKnownB);
    add(known, "known");
    double best = known.saving;
    for (const auto& c : euler::ab_scan(bs)) {
      add(c, "scan");
      if (c.admissible) best = std::max(best, c.saving);
    }
    r["known_admissible"] = known.admissible;
    r["best_scan_saving"] = best;
    rep.tables.push_back(std::move(scan));
  }
  rep.tables.push_back(std::move(prod));
  rep.summary["results"] = r;
  return rep;
}

Report cmd_dirichlet(const Config& cfg) {
  std::vector<std::uint64_t> qs;
  if (cfg.raw.q.empty()) {
    qs = {3, 5, 7, 11};
  } else {
    for (const auto& item : split_list(cfg.raw.q)) qs.push_back(parse_count("q", item));
  }
  Context ctx = make(cfg, cfg.xs.back());
  Report rep{"dirichlet", {}, header(ctx)};
  const shift::EtaFunction eta(ctx.table, cfg.xs.back());
  Table t{"dirichlet", {"q", "m", "x", "direct", "via_orthogonality", "main", "rel_error"}, {}};
  Json per = Json::array();
  for (auto q : qs) {
    const dirichlet::CharacterTable chars(q);
    for (auto x : cfg.xs) {
      const auto sums = dirichlet::progression_eta_sums(eta, chars, x, ctx.cal, ctx.gamma);
      double recon = 0.0;
      std::vector<double> cls(q, 0.0);
      std::size_t k = 0;
      for (std::uint64_t m = 0; m < q; ++m) {
        if (std::gcd(m, q) != 1) continue;
        const auto& s = sums[k++];
        cls[m] = s.direct;
        recon = std::max(recon, std::abs(s.direct - s.via_orthogonality) / (1.0 + std::abs(s.direct)));
        t.rows.push_back({num(q), num(m), num(x), num(s.direct), num(s.via_orthogonality),
                          num(s.main), num((s.direct - s.main) / s.main)});
      }
      Json e;
      e["q"] = q;
      e["x"] = x;
      e["phi"] = chars.phi();
      e["spread"] = jnum(q == 1 ? 0.0 : dirichlet::equidistribution_spread(cls, q));
      e["max_reconstruction_error"] = recon;
      e["column_orthogonality_error"] = chars.column_orthogonality_error();
      e["row_orthogonality_error"] = chars.row_orthogonality_error();
      per.push_back(e);
    }
  }
  rep.tables.push_back(std::move(t));
  rep.summary["results"] = per;
  return rep;
}

Report cmd_bessel(const Config& cfg) {
  Context ctx = make(cfg, 0);
  Report rep{"bessel", {}, header(ctx)};
  const std::vector<double> rs = cfg.raw.r.empty()
      ? std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}
      : parse_reals("r", cfg.raw.r);
  const std::vector<double> ws = cfg.raw.w.empty() ? std::vector<double>{0.1, 1.0, 10.0}
                                                   : parse_reals("w", cfg.raw.w);
  const bessel::TestFunction g(1.0, 2.0);
  Table sq{"bessel", {"w", "r", "I", "normalized"}, {}};
  double max_norm = 0.0;
  double min_norm = std::numeric_limits<double>::infinity();
  double max_small = 0.0;
  double min_small = std::numeric_limits<double>::infinity();
  for (double w : ws) {
    for (double r : rs) {
      const auto s = bessel::weighted_square_integral(g, w, r);
      sq.rows.push_back({num(w), num(r), num(s.I), num(s.normalized)});
      max_norm = std::max(max_norm, s.normalized);
      min_norm = std::min(min_norm, s.normalized);
      if (w <= 1.0) {
        max_small = std::max(max_small, s.normalized);
        min_small = std::min(min_small, s.normalized);
      }
    }
  }
  rep.tables.push_back(std::move(sq));

  struct MP { double mu, nu; std::complex<double> s; };
  const MP grid[] = {{0, 0, 1}, {1, 1, 1}, {1, 0, 1}, {0.5, 1.5, 2}, {2, 1, 1.5}, {1, 0.5, {1.5, 2}}};
  Table mt{"bessel_mellin",
           {"mu", "nu", "s_re", "s_im", "numeric_re", "numeric_im", "closed_re", "closed_im", "rel_err"},
           {}};
  double mellin_err = 0.0;
  for (const auto& p : grid) {
    const auto m = bessel::mellin_gamma_check(p.mu, p.nu, p.s);
    mellin_err = std::max(mellin_err, m.rel_err);
    mt.rows.push_back({num(p.mu), num(p.nu), num(p.s.real()), num(p.s.imag()),
                       num(m.numeric.real()), num(m.numeric.imag()),
                       num(m.closed_form.real()), num(m.closed_form.imag()), num(m.rel_err)});
  }
  rep.tables.push_back(std::move(mt));

  Table rt{"bessel_residue", {"r", "integral", "main", "normalized_difference", "relative"}, {}};
  double res_max = 0.0;
  for (double r : rs) {
    if (r < 2.0) continue;
    const auto c = bessel::residue_formula_check(g, r);
    res_max = std::max(res_max, c.normalized);
    rt.rows.push_back({num(r), num(c.integral), num(c.main), num(c.normalized), num(c.relative)});
  }
  rep.tables.push_back(std::move(rt));

  Table mo{"bessel_moments", {"sigma", "r", "value", "normalized"}, {}};
  double mo_min = std::numeric_limits<double>::infinity();
  double mo_max = 0.0;
  for (double sigma : {0.25, 0.5, 1.0, 1.5}) {
    for (double r : rs) {
      const auto m = bessel::square_moment(r, sigma);
      mo.rows.push_back({num(sigma), num(r), num(m.value), num(m.normalized)});
      mo_min = std::min(mo_min, m.normalized);
      mo_max = std::max(mo_max, m.normalized);
    }
  }
  rep.tables.push_back(std::move(mo));

  std::vector<double> ys;
  for (double y = 0.5; y <= 50.0 + 1e-9; y *= 1.05) ys.push_back(y);
  const auto b1 = bessel::uniform_bound_check(rs, ys);
  std::vector<double> ra = {0.0};
  ra.insert(ra.end(), rs.begin(), rs.end());
  const std::vector<double> mult = {1.0, 1.5, 2.0, 4.0, 10.0};
  const auto a2 = bessel::asymptotic_check(ra, mult);

  Json r;
  r["mellin_max_rel_err"] = mellin_err;
  r["uniform_bound_constant"] = b1.max_constant;
  r["asymptotic_constant"] = a2.max_constant;
  r["square_integral_max_normalized"] = max_norm;
  r["square_integral_min_normalized"] = min_norm;
  r["square_integral_ratio_all_w"] = jnum(max_norm / min_norm);
  r["square_integral_ratio_w_le_1"] = jnum(max_small / min_small);
  r["residue_max_normalized_difference"] = res_max;
  r["moment_normalized_min"] = mo_min;
  r["moment_normalized_max"] = mo_max;
  r["test_function_decay_constant"] = g.decay_constant(0.5, 2.0, 20.0, 8);
  r["kernel_sum_r10_X5_ell1"] = bessel::kernel_shifted_sum(ctx.table, 5.0, 10.0, 1, g, g);
  rep.summary["results"] = r;
  return rep;
}

Report cmd_theorem1(const Config& cfg) {
  Context ctx = make(cfg, cfg.xs.back() + max_abs_ell(cfg));
  Report rep{"theorem1", {}, header(ctx)};
  const shift::EtaFunction eta(ctx.table);
  Table main{"theorem1",
             {"ell", "x", "S", "S_over_x", "S_norm_1_7", "z", "M", "lemma13_ratio", "S_A", "S_Al",
              "S_star", "sieve_direct", "sieve_X", "sieve_G", "theorem_a"},
             {}};
  std::vector<Table> decays;
  Json per = Json::array();
  for (auto ell : cfg.ells) {
    const auto rows = shift::theorem1_decay_table(ctx.table, ell, cfg.xs);
    Table d{"theorem1_decay_ell" + num(ell), {"x", "S", "S_over_x", "S_norm_1_7"}, {}};
    double lmin = std::numeric_limits<double>::infinity();
    double lmax = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      const std::uint64_t x = cfg.xs[i];
      d.rows.push_back({num(row.x), num(row.S), num(row.S_over_x), num(row.S_norm)});
      const double z = z_for(cfg, x);
      const auto l13 = shift::lemma13_ratio(ctx.table, ctx.cal, ell, x, cfg.c);
      lmin = std::min(lmin, l13.ratio);
      lmax = std::max(lmax, l13.ratio);
      const auto p = shift::partition_sums(ctx.table, ell, x, z, cfg.cutoff_exp);
      const auto sa = shift::sieve_assembly(eta, ctx.cal, ctx.gamma, 1, 1, ell, x, z, cfg.level_exp);
      main.rows.push_back({num(ell), num(x), num(row.S), num(row.S_over_x), num(row.S_norm),
                           num(z), num(l13.M), num(l13.ratio), num(p.S_A), num(p.S_Al),
                           num(p.S_star), num(sa.direct), num(sa.X), num(sa.G),
                           num(sa.theorem_a.product)});
    }
    bool dec = true;
    for (std::size_t i = 1; i < rows.size(); ++i) dec = dec && rows[i].S_over_x < rows[i - 1].S_over_x;
    Json e;
    e["ell"] = ell;
    e["strictly_decreasing"] = dec;
    e["decay_slope"] = rows.size() >= 2 ? jnum(shift::decay_slope(rows)) : Json(nullptr);
    e["lemma13_min"] = lmin;
    e["lemma13_max"] = lmax;
    e["lemma13_ratio_spread"] = jnum(lmax / lmin);
    per.push_back(e);
    decays.push_back(std::move(d));
  }
  rep.tables.push_back(std::move(main));
  for (auto& d : decays) rep.tables.push_back(std::move(d));
  rep.summary["results"] = per;
  return rep;
}

// ---------------------------------------------------------------- plumbing

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      config_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") {
      config_error(path + ":" + std::to_string(lineno) + ": bad key");
    }
    kv[key] = value;
  }
  return kv;
}

bool has_flag(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// File keys become flags unless the command line already has them.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  const std::set<std::string> flags = {"ab-scan"};
  for (const auto& [key, value] : read_config(path)) {
    if (has_flag(args, key)) continue;
    if (flags.count(key)) {
      if (value == "true" || value == "1") {
        args.push_back("--" + key);
      } else if (value != "false" && value != "0") {
        config_error("flag " + key + " takes true or false");
      }
      continue;
    }
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--source", o.source, "delta or file");
  app->add_option("--table", o.table, "eigenvalue table file");
  app->add_option("--ell", o.ell, "comma-separated shifts");
  app->add_option("--x", o.x, "comma-separated ascending x grid");
  app->add_option("--z", o.z, "explicit sieve cutoff z");
  app->add_option("--c", o.c, "z = x^{c / log log x}");
  app->add_option("--cutoff-exp", o.cutoff_exp, "smooth-part cutoff exponent");
  app->add_option("--level-exp", o.level_exp, "sieve level exponent");
  app->add_option("--out", o.out, "output directory");
  app->add_option("--threads", o.threads, "worker threads");
  app->add_option("--format", o.format, "stdout format: csv or json");
  app->add_option("--config", o.config, "key = value config file");
  app->add_option("--limit", o.limit, "minimum table length");
}

class ThreadGuard {
 public:
  explicit ThreadGuard(unsigned n) : saved_(thread_count()) { set_thread_count(n); }
  ~ThreadGuard() { set_thread_count(saved_); }
  ThreadGuard(const ThreadGuard&) = delete;
  ThreadGuard& operator=(const ThreadGuard&) = delete;

 private:
  unsigned saved_;
};

void emit(const Report& rep, const Config& cfg, std::ostream& out) {
  if (!cfg.out.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out, ec);
    if (ec) config_error("cannot create output directory " + cfg.out);
    for (const auto& t : rep.tables) {
      std::ofstream f(std::filesystem::path(cfg.out) / (t.name + ".csv"));
      if (!f) config_error("cannot write " + t.name + ".csv");
      t.write(f);
    }
    std::ofstream j(std::filesystem::path(cfg.out) / (rep.name + ".json"));
    if (!j) config_error("cannot write " + rep.name + ".json");
    j << rep.summary.dump(2) << '\n';
    return;
  }
  if (cfg.format == "json") {
    out << rep.summary.dump(2) << '\n';
  } else {
    rep.tables.front().write(out);
  }
}

void write_error(std::ostream& err, ErrorKind kind, const std::string& message) {
  Json e;
  e["error"] = {{"kind", std::string(to_string(kind))}, {"message", message}};
  e["exit_code"] = exit_code_for(kind);
  err << e.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"shiftsieve: shifted convolution sums of Hecke eigenvalues"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  struct Sub {
    std::string name;
    CLI::App* app;
  };
  std::vector<Sub> subs;
  auto* eigen = app.add_subcommand("eigen", "build and dump an eigenvalue table");
  auto* sums = app.add_subcommand("sums", "shifted sums, partition and decay table");
  auto* sieve_cmd = app.add_subcommand("sieve", "sieve weights, residual audit, C V' V'' bound");
  auto* euler_cmd = app.add_subcommand("euler", "partial Euler products and inequality scans");
  auto* dir = app.add_subcommand("dirichlet", "progression sums and orthogonality");
  auto* bes = app.add_subcommand("bessel", "K-Bessel integral audit");
  auto* exp = app.add_subcommand("experiment", "full pipelines");
  exp->require_subcommand(1);
  auto* th1 = exp->add_subcommand("theorem1", "decay, partition and sieve assembly");
  for (auto* s : {eigen, sums, sieve_cmd, euler_cmd, dir, bes, th1}) add_common(s, o);
  sieve_cmd->add_option("--level", o.level, "sieve level D");
  sieve_cmd->add_option("--audit-limit", o.audit_limit, "range audit bound");
  euler_cmd->add_flag("--ab-scan", o.ab_scan, "scan admissible (a, b) pairs");
  euler_cmd->add_option("--b-grid", o.b_grid, "b values for the scan");
  dir->add_option("--q", o.q, "comma-separated moduli");
  bes->add_option("--r", o.r, "spectral parameters");
  bes->add_option("--w", o.w, "argument scalings");

  try {
    std::vector<std::string> args = merge_config(argv);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      config_error(e.what());
    }

    const std::vector<std::uint64_t> grid = {1000, 10000, 100000};
    Config cfg;
    Report rep;
    auto setup = [&](const char* name, std::vector<std::uint64_t> xs,
                     std::vector<std::int64_t> ells) {
      cfg = resolve(name, o, std::move(xs), std::move(ells));
    };
    if (*eigen) setup("eigen", {100}, {1});
    if (*sums) setup("sums", grid, {1});
    if (*sieve_cmd) setup("sieve", {1000}, {1});
    if (*euler_cmd) setup("euler", {10000, 100000, 1000000}, {1});
    if (*dir) setup("dirichlet", {100000}, {1});
    if (*bes) setup("bessel", {1000}, {1});
    if (*th1) setup("experiment theorem1", {1000, 10000, 100000, 1000000}, {1, 2, 3});
    ThreadGuard guard(cfg.threads);
    if (*eigen) rep = cmd_eigen(cfg);
    if (*sums) rep = cmd_sums(cfg);
    if (*sieve_cmd) rep = cmd_sieve(cfg);
    if (*euler_cmd) rep = cmd_euler(cfg);
    if (*dir) rep = cmd_dirichlet(cfg);
    if (*bes) rep = cmd_bessel(cfg);
    if (*th1) rep = cmd_theorem1(cfg);
    emit(rep, cfg, out);
    if (rep.summary["results"].is_object() && rep.summary["results"].contains("error")) {
      write_error(err, ErrorKind::kConsistency,
                  rep.summary["results"]["error"].get<std::string>());
      return exit_code_for(ErrorKind::kConsistency);
    }
    return 0;
  } catch (const Error& e) {
    write_error(err, e.kind(), e.what());
    return exit_code_for(e.kind());
  } catch (const std::bad_alloc&) {
    write_error(err, ErrorKind::kCapacity, "out of memory");
    return exit_code_for(ErrorKind::kCapacity);
  } catch (const std::exception& e) {
    write_error(err, ErrorKind::kConsistency, e.what());
    return exit_code_for(ErrorKind::kConsistency);
  }
}

}  // namespace shiftsieve::cli
