#pragma once

// Leaf commands of the lmom tool. Each takes an ExperimentConfig and writes
// records; run() maps exceptions to exit codes so the whole surface can be
// driven in-process.

#include "lmom/characters.hpp"
#include "lmom/config.hpp"
#include "lmom/dedekind.hpp"
#include "lmom/discrepancy.hpp"
#include "lmom/errors.hpp"
#include "lmom/farey.hpp"
#include "lmom/lattice.hpp"
#include "lmom/ntcore.hpp"
#include "lmom/output.hpp"
#include "lmom/parallel.hpp"
#include "lmom/suites.hpp"

#include <functional>
#include <iostream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace lmom {

enum ExitCode : int { kExitOk = 0, kExitAssertion = 1, kExitUsage = 2, kExitFeasibility = 3 };

struct ParamSpec {
  std::string name;
  std::string help;
  bool required = false;
};

struct Command {
  std::string path;  // "group leaf"
  std::string help;
  std::vector<ParamSpec> params;
  // returns the exit code; records go to the writer
  std::function<int(const ExperimentConfig&, RecordWriter&)> run;
};

namespace cmd_detail {

inline u64 get_u64(const ExperimentConfig& c, const std::string& key) {
  long long v = c.get_int(key);
  if (v < 0) throw usage_error("--" + key + " must be nonnegative");
  return static_cast<u64>(v);
}

inline u64 get_prime(const ExperimentConfig& c, const std::string& key = "p") {
  u64 p = get_u64(c, key);
  if (!is_prime(p)) throw usage_error("--" + key + " " + std::to_string(p) + " is not prime");
  return p;
}

inline SubgroupSpec get_subgroup(const ExperimentConfig& c) {
  u64 p = get_prime(c);
  u64 m = get_u64(c, "m");
  if (m == 0 || (p - 1) % m != 0) throw usage_error("--m must divide p-1");
  return subgroup(p, m);
}

inline u64 get_residue(const ExperimentConfig& c, const std::string& key, u64 p) {
  long long v = c.get_int(key);
  u64 r = mod(v, p);
  if (r == 0) throw usage_error("--" + key + " must not be divisible by p");
  return r;
}

inline std::vector<double> get_list(const ExperimentConfig& c, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(c.get(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw usage_error("--" + key + " expects comma-separated numbers");
    }
  }
  return out;
}

inline std::string join(const std::vector<i64>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

// ---- ded ----

inline int ded_sum(const ExperimentConfig& c, RecordWriter& w) {
  const i64 cc = c.get_int("c"), d = c.get_int("d");
  std::string method = c.has("method") ? c.get("method") : "reciprocity";
  Record r;
  r.add("c", Field(static_cast<std::int64_t>(cc))).add("d", Field(static_cast<std::int64_t>(d)));
  if (method == "cf") {
    CfApprox a = dedekind_cf(cc, d);
    r.add("method", "cf").add("approx", a.approx).add("quotients", join(a.quotients));
    if (std::gcd(cc, d) == 1) r.add("exact", dedekind_fast(cc, d));
  } else if (method == "naive") {
    r.add("method", "naive").add("value", dedekind(cc, d, DedekindMethod::naive).value);
  } else if (method == "reciprocity" || method == "fast") {
    r.add("method", "reciprocity").add("value", dedekind(cc, d, DedekindMethod::reciprocity).value);
  } else {
    throw usage_error("--method must be naive, reciprocity, fast or cf");
  }
  w.write(r);
  return kExitOk;
}

inline int ded_subgroup_sum(const ExperimentConfig& c, RecordWriter& w) {
  auto spec = get_subgroup(c);
  Rational S = subgroup_sum(spec);
  Record r;
  r.add("p", Field(spec.p())).add("m", Field(spec.m)).add("d", Field(spec.d)).add("S", S).add("S_double", S.to_double());
  w.write(r);
  return kExitOk;
}

inline int ded_corr(const ExperimentConfig& c, RecordWriter& w) {
  const u64 p = get_prime(c);
  const i64 k1 = c.get_int("k1"), k2 = c.get_int("k2");
  auto v = correlation(p, k1, k2);
  Record r;
  r.add("p", Field(p)).add("k1", Field(static_cast<std::int64_t>(k1))).add("k2", Field(static_cast<std::int64_t>(k2))).add("value", v.value).add("value_double", v.value.to_double());
  w.write(r);
  return kExitOk;
}

// K_k(lambda) for one lambda, or the total over G_m when --lambda is absent.
inline int ded_kfold(const ExperimentConfig& c, RecordWriter& w) {
  const int k = static_cast<int>(c.get_int("k"));
  if (k < 2) throw usage_error("--k must be at least 2");
  Record r;
  if (c.has("lambda")) {
    const u64 p = get_prime(c);
    const u64 l = get_residue(c, "lambda", p);
    KfoldCorrelation K(PrimeContext::make(p), k);
    Rational v = K.at(l);
    r.add("p", Field(p)).add("k", k).add("lambda", Field(l)).add("value", v).add("value_double", v.to_double());
  } else {
    auto spec = get_subgroup(c);
    KfoldCorrelation K(spec.ctx, k);
    Rational v = K.subgroup_total(spec);
    r.add("p", Field(spec.p())).add("m", Field(spec.m)).add("k", k).add("total", v).add("total_double", v.to_double());
  }
  w.write(r);
  return kExitOk;
}

inline int ded_frac_moment(const ExperimentConfig& c, RecordWriter& w) {
  const u64 p = get_prime(c);
  const double alpha = c.get_double("alpha");
  if (!(alpha > 0)) throw usage_error("--alpha must be positive");
  Record r;
  r.add("p", Field(p)).add("alpha", alpha).add("value", fractional_moment(p, alpha));
  w.write(r);
  return kExitOk;
}

// ---- lattice ----

inline int lattice_rho2(const ExperimentConfig& c, RecordWriter& w) {
  const u64 p = get_prime(c);
  const u64 l = get_residue(c, "lambda", p);
  const int s = c.has("s") ? static_cast<int>(c.get_int("s")) : 2;
  Record r;
  r.add("lambda", Field(l)).add("p", Field(p)).add("s", s);
  if (s == 2) {
    LatticeWitness x = rho2(l, p);
    r.add("rho", Field(x.rho)).add("witness", join(x.witness));
  } else if (s >= 3) {
    auto x = rho_s(l, p, s);
    if (!x) throw feasibility_error("rho_s: minimum exceeds the search radius 100");
    r.add("rho", Field(x->rho)).add("witness", join(x->witness));
  } else {
    throw usage_error("--s must be at least 2");
  }
  w.write(r);
  return kExitOk;
}

inline int lattice_sigma(const ExperimentConfig& c, RecordWriter& w) {
  const u64 p = get_prime(c);
  const u64 l = get_residue(c, "lambda", p);
  const double H = c.get_double("H");
  const int s = c.has("s") ? static_cast<int>(c.get_int("s")) : 2;
  if (!(H >= 1)) throw usage_error("--H must be at least 1");
  SigmaValue v = sigma(l, H, p, s);
  Record r;
  r.add("lambda", Field(l)).add("p", Field(p)).add("H", H).add("s", s).add("value", v.value).add("value_double", v.as_double());
  w.write(r);
  return kExitOk;
}

inline int lattice_census(const ExperimentConfig& c, RecordWriter& w) {
  auto spec = get_subgroup(c);
  const double cc = c.has("c") ? c.get_double("c") : kCensusConstant;
  CensusResult res = interval_census(spec, cc);
  for (std::size_t n = 0; n < res.counts.size(); ++n) {
    Record r;
    r.add("p", Field(res.p)).add("m", Field(res.m)).add("d", Field(res.d)).add("n", Field(static_cast<u64>(n + 1))).add("count", Field(res.counts[n]));
    w.write(r);
  }
  Record r;
  r.add("p", Field(res.p)).add("m", Field(res.m)).add("d", Field(res.d)).add("phi_d", Field(res.phi_d)).add("c", res.c).add("uncovered", Field(res.uncovered));
  w.write(r);
  return kExitOk;
}

inline int lattice_exceptional(const ExperimentConfig& c, RecordWriter& w) {
  const double D = c.get_double("D"), R = c.get_double("R");
  const u64 lo = get_u64(c, "lo"), hi = get_u64(c, "hi");
  ExceptionalSet e = exceptional_primes(D, R, lo, hi);
  for (u64 p : e.primes) {
    Record r;
    r.add("p", Field(p));
    w.write(r);
  }
  Record r;
  r.add("D", D).add("R", R).add("lo", Field(lo)).add("hi", Field(hi)).add("count", Field(static_cast<u64>(e.primes.size()))).add("routes_agree", e.routes_agree).add("shape", e.shape);
  w.write(r);
  return e.routes_agree ? kExitOk : kExitAssertion;
}

// ---- moments ----

inline MomentMethod parse_method(const std::string& s) {
  if (s == "walum-exact") return MomentMethod::walum_exact;
  if (s == "smoothed") return MomentMethod::smoothed;
  if (s == "dedekind-identity") return MomentMethod::dedekind_identity;
  throw usage_error("--method must be walum-exact, smoothed or dedekind-identity");
}

inline void write_moment(RecordWriter& w, const MomentReport& m) {
  Record r;
  r.add("p", Field(m.p)).add("m", Field(m.m)).add("d", Field(m.d)).add("nu", m.nu).add("method", to_string(m.method)).add("value", m.value).add("Z", m.Z).add("error_budget", m.error_budget);
  w.write(r);
}

inline int moments_compute(const ExperimentConfig& c, RecordWriter& w) {
  auto spec = get_subgroup(c);
  const double nu = c.get_double("nu");
  const double Z = c.has("Z") ? c.get_double("Z") : 0;
  std::optional<MomentMethod> method;
  if (c.has("method")) method = parse_method(c.get("method"));
  write_moment(w, moment(spec, nu, Z, method));
  return kExitOk;
}

inline int moments_via_dedekind(const ExperimentConfig& c, RecordWriter& w) {
  auto spec = get_subgroup(c);
  write_moment(w, moment_via_dedekind(spec, static_cast<int>(c.get_int("k"))));
  return kExitOk;
}

inline int moments_twisted4(const ExperimentConfig& c, RecordWriter& w) {
  const u64 p = get_prime(c);
  const i64 k1 = c.get_int("k1"), k2 = c.get_int("k2");
  TwistedFourth t = twisted_fourth(p, k1, k2);
  Record r;
  r.add("p", Field(p)).add("k1", Field(static_cast<std::int64_t>(k1))).add("k2", Field(static_cast<std::int64_t>(k2))).add("value", t.value).add("identity", t.identity).add("correlation", t.correlation);
  if (k1 > 0 && k2 > 0 && std::gcd(k1, k2) == 1) r.add("c", c_constant(static_cast<u64>(k1), static_cast<u64>(k2)));
  w.write(r);
  return kExitOk;
}

inline int moments_a_constant(const ExperimentConfig& c, RecordWriter& w) {
  const u64 k = get_u64(c, "k");
  const double tol = c.has("tol") ? c.get_double("tol") : 1e-10;
  AConstant a = a_constant(k, tol);
  Record r;
  r.add("k", Field(k)).add("value", a.euler).add("euler", a.euler).add("direct", a.direct).add("tail_majorant", a.tail_majorant).add("tol", a.tol).add("agree", a.agree);
  w.write(r);
  return a.agree ? kExitOk : kExitAssertion;
}

inline int moments_cdf(const ExperimentConfig& c, RecordWriter& w) {
  auto spec = get_subgroup(c);
  std::vector<double> grid = get_list(c, "grid");
  auto cdf = empirical_cdf(spec, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Record r;
    r.add("p", Field(spec.p())).add("m", Field(spec.m)).add("x", grid[i]).add("cdf", cdf[i]);
    w.write(r);
  }
  return kExitOk;
}

// ---- disc ----

inline int disc_star(const ExperimentConfig& c, RecordWriter& w) {
  const u64 p = get_prime(c);
  const u64 l = get_residue(c, "lambda", p);
  Rational D = star_discrepancy_exact(l, p);
  Record r;
  r.add("lambda", Field(l)).add("p", Field(p)).add("D_star", D).add("D_star_double", D.to_double());
  w.write(r);
  return kExitOk;
}

inline int disc_ks(const ExperimentConfig& c, RecordWriter& w) {
  const u64 p = get_prime(c);
  const u64 l = get_residue(c, "lambda", p);
  KsBound b = c.has("H") ? ks_bound(l, p, c.get_int("H")) : ks_envelope(l, p);
  Record r;
  r.add("lambda", Field(l)).add("p", Field(p)).add("H", Field(static_cast<std::int64_t>(b.H))).add("sigma", b.sigma).add("bound", b.bound);
  w.write(r);
  return kExitOk;
}

inline int disc_compare(const ExperimentConfig& c, RecordWriter& w) {
  const u64 p = get_prime(c);
  const u64 l = get_residue(c, "lambda", p);
  auto d = dedekind_vs_discrepancy(l, p);
  Record r;
  r.add("lambda", Field(l)).add("p", Field(p)).add("s_abs", d.s_abs).add("D_star", d.d_star).add("p_D_star", d.p_d_star).add("ratio", d.ratio).add("within", d.within);
  w.write(r);
  return d.within ? kExitOk : kExitAssertion;
}

// ---- farey ----

inline int farey_set_cmd(const ExperimentConfig& c, RecordWriter& w) {
  const u64 Q = get_u64(c, "Q");
  FareySet f = farey_set(Q);
  for (const Fraction& x : f.elements) {
    Record r;
    r.add("Q", Field(Q)).add("fraction", x.str());
    w.write(r);
  }
  return kExitOk;
}

inline int farey_product_cmd(const ExperimentConfig& c, RecordWriter& w) {
  ProductReport p = farey_product_report(get_u64(c, "Q"), static_cast<int>(c.get_int("k")));
  Record r;
  r.add("Q", Field(p.Q)).add("k", p.k).add("A", Field(p.base)).add("product", Field(p.product)).add("ratio", p.ratio).add("implied_c", p.implied_c);
  w.write(r);
  return kExitOk;
}

inline int farey_subgroup_count(const ExperimentConfig& c, RecordWriter& w) {
  auto spec = get_subgroup(c);
  const u64 l = get_u64(c, "l");
  Record r;
  r.add("p", Field(spec.p())).add("m", Field(spec.m)).add("l", Field(l)).add("V", Field(subgroup_fraction_count(spec, l))).add("rho2_le_l", Field(subgroup_rho2_count(spec, l)));
  w.write(r);
  return kExitOk;
}

// ---- verify ----

inline int verify(const ExperimentConfig& c, RecordWriter& w) {
  const std::string group = c.get("group");
  const std::string name = c.has("suite") ? c.get("suite") : "";
  SuiteOptions opt;
  if (c.has("pmax")) opt.pmax = get_u64(c, "pmax");
  const bool determinism = (group == "determinism" || group == "all") && (name.empty() || name == "determinism");
  auto selected = select_suites(group, name);
  if (selected.empty() && !determinism) throw usage_error("verify: no suite named '" + group + (name.empty() ? "" : " " + name) + "'");
  bool ok = true;
  for (const Suite* s : selected) ok = s->run(opt, w) && ok;
  if (determinism) ok = suite_determinism(opt, w, std::max<std::size_t>(2, c.threads)) && ok;
  return ok ? kExitOk : kExitAssertion;
}

}  // namespace cmd_detail

inline const std::vector<Command>& commands() {
  using namespace cmd_detail;
  static const std::vector<Command> list = {
      {"ded sum", "Dedekind sum s(c,d)", {{"c", "numerator", true}, {"d", "modulus", true}, {"method", "naive | reciprocity | fast | cf"}}, ded_sum},
      {"ded subgroup-sum", "S(p,m): s(x,p) summed over G_m minus 1", {{"p", "prime", true}, {"m", "index", true}}, ded_subgroup_sum},
      {"ded corr", "S_{k1,k2}(p)", {{"p", "prime", true}, {"k1", "first twist", true}, {"k2", "second twist", true}}, ded_corr},
      {"ded kfold", "K_k(lambda), or its total over G_m", {{"p", "prime", true}, {"k", "fold", true}, {"lambda", "residue"}, {"m", "index"}}, ded_kfold},
      {"ded frac-moment", "sum_a |s(a,p)|^alpha", {{"p", "prime", true}, {"alpha", "exponent", true}}, ded_frac_moment},
      {"lattice rho2", "rho_s(lambda,p) with witness", {{"lambda", "residue", true}, {"p", "prime", true}, {"s", "dimension (default 2)"}}, lattice_rho2},
      {"lattice sigma", "sigma_s(lambda,H)", {{"lambda", "residue", true}, {"p", "prime", true}, {"H", "box radius", true}, {"s", "dimension (default 2)"}}, lattice_sigma},
      {"lattice census", "interval census of rho_2 over G_m", {{"p", "prime", true}, {"m", "index", true}, {"c", "lower constant"}}, lattice_census},
      {"lattice exceptional", "E(D,R) in [lo,hi]", {{"D", "order bound", true}, {"R", "rho bound", true}, {"lo", "range low", true}, {"hi", "range high", true}}, lattice_exceptional},
      {"moments compute", "M_nu(p,m)", {{"p", "prime", true}, {"m", "even index", true}, {"nu", "exponent", true}, {"Z", "smoothing cutoff"}, {"method", "walum-exact | smoothed | dedekind-identity"}}, moments_compute},
      {"moments via-dedekind", "M_2k(p,m) from k-fold correlations", {{"p", "prime", true}, {"m", "even index", true}, {"k", "fold", true}}, moments_via_dedekind},
      {"moments twisted4", "twisted fourth moment", {{"p", "prime", true}, {"k1", "first twist", true}, {"k2", "second twist", true}}, moments_twisted4},
      {"moments a-constant", "a(k) two ways", {{"k", "divisor order", true}, {"tol", "agreement tolerance"}}, moments_a_constant},
      {"moments cdf", "empirical distribution of |L(1,chi)|", {{"p", "prime", true}, {"m", "even index", true}, {"grid", "comma-separated sorted points", true}}, moments_cdf},
      {"disc star", "exact star discrepancy of S_{lambda,p}", {{"lambda", "residue", true}, {"p", "prime", true}}, disc_star},
      {"disc ks", "Koksma-Szusz bound (envelope unless --H)", {{"lambda", "residue", true}, {"p", "prime", true}, {"H", "box radius"}}, disc_ks},
      {"disc compare", "|s(lambda,p)| against p D*", {{"lambda", "residue", true}, {"p", "prime", true}}, disc_compare},
      {"farey set", "F_Q", {{"Q", "height", true}}, farey_set_cmd},
      {"farey product", "|F_Q^(k)|", {{"Q", "height", true}, {"k", "factors", true}}, farey_product_cmd},
      {"farey subgroup-count", "V(p,G_m,l)", {{"p", "prime", true}, {"m", "index", true}, {"l", "height", true}}, farey_subgroup_count},
      {"verify", "run verification suites", {{"group", "suite group or all", true}, {"suite", "sub-suite"}, {"pmax", "cap on prime ranges"}}, verify},
  };
  return list;
}

inline const Command* find_command(const std::string& path) {
  for (const Command& c : commands()) {
    if (c.path == path) return &c;
  }
  return nullptr;
}

// Validates the config, runs the command, and converts errors to exit codes
// with a message on err.
inline int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err = std::cerr) {
  try {
    validate(config);
    const Command* cmd = find_command(config.command);
    if (!cmd) throw usage_error("unknown command '" + config.command + "'");
    for (const ParamSpec& p : cmd->params) {
      if (p.required && !config.has(p.name)) throw usage_error(config.command + ": missing --" + p.name);
    }
    for (const auto& [key, value] : config.params) {
      bool known = false;
      for (const ParamSpec& p : cmd->params) known = known || p.name == key;
      if (!known) throw usage_error(config.command + ": unknown parameter --" + key);
    }
    par::set_thread_count(config.threads);
    RecordWriter w(out, config.output);
    return cmd->run(config, w);
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const feasibility_error& e) {
    err << "feasibility cap: " << e.what() << '\n';
    return kExitFeasibility;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace lmom
