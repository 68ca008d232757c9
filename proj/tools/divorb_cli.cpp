// Command line front end: verify lemma sweeps, equidistribution experiments
// and family censuses. Exit codes: 0 ok, 1 violation, 2 budget exceeded,
// 64 bad usage.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "divorb/errors.hpp"
#include "divorb/families.hpp"
#include "divorb/table.hpp"
#include "divorb/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string format = "csv";
  std::string out;

  std::string lemma;
  std::size_t n = 2;
  std::vector<long long> qs;
  std::vector<double> Ms;
  int resolution = 64;
  long long nmax = 10000;
  std::size_t d = 2;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  double eta = 1e-2;
  std::vector<double> Ns;
  std::vector<double> etas;
  std::vector<std::size_t> ns;
  std::size_t samples = 10000;
  std::size_t systems = 1000;
  double t_max = 10;
  double spread = 20;

  double R = 1.5;
  double truncation = 1000;
  bool timing = false;

  std::string census_kind;
  long long q_max = 0;
  bool primes_only = false;
  double census_M = 2;
};

void check_ranges(const Options& o) {
  if (o.n < 2 || o.n > 4) throw UsageError("n must lie in [2, 4]");
  if (o.resolution < 1 || o.resolution > 1024) throw UsageError("resolution must lie in [1, 1024]");
  for (long long q : o.qs) {
    if (q < 2) throw UsageError("q must be at least 2");
    if (o.n == 2 && q > 1000000) throw UsageError("q must not exceed 1e6 at n = 2");
    if (o.n == 3 && q > 500) throw UsageError("q must not exceed 500 at n = 3");
    if (o.n == 4 && q > 60) throw UsageError("q must not exceed 60 at n = 4");
  }
}

template <class T>
std::vector<T> or_default(const std::vector<T>& v, std::vector<T> fallback) {
  return v.empty() ? fallback : v;
}

void emit(const divorb::Table& table, const std::string& command, const Options& o) {
  const std::string text = o.format == "json" ? divorb::to_json(table, command) : divorb::to_csv(table);
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + o.out);
  f << text;
}

int run_verify(const Options& o) {
  using namespace divorb;
  VerifyResult r;
  const std::string& id = o.lemma;
  if (id == "totient") {
    if (o.nmax < 1 || o.nmax > 1000000) throw UsageError("nmax must lie in [1, 1e6]");
    r = verify_totient(o.nmax);
  } else if (id == "mass-bound") {
    r = verify_mass_bound(o.n, or_default(o.qs, {101, 251, 499}), or_default(o.Ms, {2.0, 4.0, 8.0}), o.resolution);
  } else if (id == "no-escape") {
    r = verify_no_escape(o.n, or_default(o.qs, {101, 251, 499}), or_default(o.Ms, {2.0, 4.0, 8.0}), o.resolution);
  } else if (id == "ht-conjugation") {
    if (o.d < 2 || o.d > 4) throw UsageError("d must lie in [2, 4]");
    if (o.t_max < 0 || o.t_max > 30) throw UsageError("t-max must lie in [0, 30]");
    r = verify_ht_conjugation(o.d, o.trials, o.seed, o.t_max);
  } else if (id == "separation") {
    const auto qs = or_default(o.qs, {101});
    if (qs.size() != 1) throw UsageError("separation takes a single q");
    r = verify_separation(o.n, qs.front(), o.eta, or_default(o.Ns, {0.0, 2.0, 4.0}), o.spread);
  } else if (id == "ball-algebra") {
    r = verify_ball_algebra(or_default(o.ns, {2, 3}), or_default(o.etas, {1e-2, 1e-3}), or_default(o.Ns, {0.0, 3.0}),
                            o.samples, o.seed);
  } else if (id == "entropy") {
    r = verify_entropy(o.systems, o.seed);
  } else if (id == "fundamental-domain") {
    r = verify_fundamental_domain(o.n, o.samples, o.seed);
  } else if (id == "restriction-defect") {
    const auto qs = or_default(o.qs, {10007});
    if (qs.size() != 1) throw UsageError("restriction-defect takes a single q");
    r = verify_restriction_defect(o.n, qs.front(), or_default(o.Ms, {0.5, 1.0, 2.0}), o.resolution);
  } else {
    std::string known;
    for (const auto& k : verify_registry()) known += " " + k;
    throw UsageError("unknown lemma '" + id + "'; known:" + known);
  }
  emit(r.table, "verify " + id, o);
  return r.violations == 0 ? kExitOk : kExitViolation;
}

int run_equidist(const Options& o) {
  const auto rows = divorb::equidist(o.n, or_default(o.qs, {101, 1009, 10007}), o.resolution, o.R, o.truncation);
  emit(divorb::equidist_table(rows, o.timing), "equidist", o);
  return kExitOk;
}

int run_census(const Options& o) {
  std::vector<long long> qs = o.qs;
  if (o.q_max > 0) {
    if (!qs.empty()) throw UsageError("give either --q or --q-max");
    if (o.primes_only) {
      qs = divorb::primes_up_to(o.q_max);
    } else {
      for (long long q = 2; q <= o.q_max; ++q) qs.push_back(q);
    }
  }
  if (qs.empty()) throw UsageError("census needs --q or --q-max");
  Options checked = o;
  checked.qs = qs;
  check_ranges(checked);
  if (o.census_kind == "zaremba") {
    if (o.n != 2) throw UsageError("the Zaremba census is defined for n = 2");
    if (o.census_M < 1) throw UsageError("M must be at least 1");
    emit(divorb::zaremba_table(qs, static_cast<long long>(o.census_M)), "census zaremba", o);
  } else {
    emit(divorb::bounded_orbit_table(o.n, qs, o.census_M, o.resolution), "census bounded-orbit", o);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divergent diagonal orbits: lemma verification and equidistribution experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", o.out, "write to a file instead of stdout");

  auto* verify = app.add_subcommand("verify", "run a lemma verifier");
  verify->add_option("lemma", o.lemma, "lemma id")->required();
  verify->add_option("--n", o.n, "dimension");
  verify->add_option("--q", o.qs, "moduli")->delimiter(',');
  verify->add_option("--M", o.Ms, "height thresholds")->delimiter(',');
  verify->add_option("--resolution", o.resolution, "grid resolution");
  verify->add_option("--nmax", o.nmax, "largest N for the totient sweep");
  verify->add_option("--d", o.d, "dimension for ht-conjugation");
  verify->add_option("--trials", o.trials, "random trials");
  verify->add_option("--seed", o.seed, "random seed");
  verify->add_option("--eta", o.eta, "ball radius for separation");
  verify->add_option("--N", o.Ns, "Bowen depths")->delimiter(',');
  verify->add_option("--etas", o.etas, "radii for ball-algebra")->delimiter(',');
  verify->add_option("--dims", o.ns, "dimensions for ball-algebra")->delimiter(',');
  verify->add_option("--samples", o.samples, "Monte Carlo samples");
  verify->add_option("--systems", o.systems, "random finite systems for the entropy harness");
  verify->add_option("--t-max", o.t_max, "largest |t_i| for ht-conjugation");
  verify->add_option("--spread", o.spread, "allowed max/min ratio of normalised separation counts");

  auto* eq = app.add_subcommand("equidist", "KS and Siegel statistics along a list of moduli");
  eq->add_option("--n", o.n, "dimension");
  eq->add_option("--q", o.qs, "moduli")->delimiter(',');
  eq->add_option("--resolution", o.resolution, "orbit grid resolution");
  eq->add_option("--R", o.R, "sup-norm radius of the Siegel count");
  eq->add_option("--truncation", o.truncation, "clip level of the Siegel count");
  eq->add_flag("--timing", o.timing, "fill runtime_ms with measured wall time (otherwise 0)");

  auto* census = app.add_subcommand("census", "count family points with a bounded expansion or orbit");
  census->add_option("kind", o.census_kind, "zaremba or bounded-orbit")
      ->required()
      ->check(CLI::IsMember({"zaremba", "bounded-orbit"}));
  census->add_option("--n", o.n, "dimension");
  census->add_option("--q", o.qs, "moduli")->delimiter(',');
  census->add_option("--q-max", o.q_max, "all moduli up to this bound");
  census->add_flag("--primes", o.primes_only, "restrict --q-max to primes");
  census->add_option("--M", o.census_M, "bound on partial quotients or on ht");
  census->add_option("--resolution", o.resolution, "orbit grid resolution for bounded-orbit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) {
      check_ranges(o);
      return run_verify(o);
    }
    if (*eq) {
      check_ranges(o);
      return run_equidist(o);
    }
    return run_census(o);
  } catch (const divorb::SearchBudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const divorb::IllConditioned& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  }
}
