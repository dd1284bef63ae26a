// kzdual command-line front end: basis listing, verification suites and
// matrix dumps. Output is newline-delimited JSON.
//
// Exit codes: 0 success / all checks pass, 1 some check failed, 2 usage
// or input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "kzdual/kzdual.hpp"

namespace {

using namespace kzdual;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Config {
  std::optional<int> k;
  std::optional<int> n;
  int k_max = 3;
  int n_max = 3;
  std::vector<int> lambda;
  std::vector<int> mu;
  std::string suite;
  std::uint64_t seed = 42;
  int trials = 5;
  int degree_max = 4;
  unsigned jobs = 0;
  std::string cache_dir;
  std::string output = "-";
  bool timing = false;
  bool cache_stats = false;

  // dump
  std::string object;
  std::string side = "glk";
  std::string family;
  int N = 0;
  int l = 0;
  int m = 0;
  int a = 0;
  int b = 0;
  int index = 0;
  std::string z;
  std::string lam;
  std::string kappa;
  std::string t;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw ParseError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_record(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto piece = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_rat(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Side parse_side(const std::string& s) {
  if (s == "glk") return Side::GLK;
  if (s == "gln") return Side::GLN;
  throw ParseError("side must be glk or gln");
}

Family parse_family(const std::string& s) {
  for (Family f : {Family::KzRat, Family::KzTrig, Family::DdRat, Family::DdTrig})
    if (s == family_name(f)) return f;
  throw ParseError("unknown family: " + s);
}

void validate_counts(const Config& c) {
  if (c.k && *c.k < 1) throw ParseError("--k must be positive");
  if (c.n && *c.n < 1) throw ParseError("--n must be positive");
  if (c.k_max < 1 || c.n_max < 1) throw ParseError("--k-max and --n-max must be positive");
  if (c.degree_max < 0) throw ParseError("--degree-max must be nonnegative");
  if (c.trials < 1) throw ParseError("--trials must be positive");
  for (int v : c.lambda)
    if (v < 0) throw ParseError("--lambda entries must be nonnegative");
  for (int v : c.mu)
    if (v < 0) throw ParseError("--mu entries must be nonnegative");
  if (c.n && !c.lambda.empty() && static_cast<int>(c.lambda.size()) != *c.n)
    throw ParseError("--lambda must have n entries");
  if (c.k && !c.mu.empty() && static_cast<int>(c.mu.size()) != *c.k)
    throw ParseError("--mu must have k entries");
}

Margins required_margins(const Config& c) {
  validate_counts(c);
  if (!c.k || !c.n) throw ParseError("--k and --n are required");
  if (static_cast<int>(c.lambda.size()) != *c.n || static_cast<int>(c.mu.size()) != *c.k)
    throw ParseError("--lambda (n entries) and --mu (k entries) are required");
  return Margins{*c.k, *c.n, c.lambda, c.mu};
}

void configure_cache(const Config& c) {
  std::string dir = c.cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv("KZDUAL_CACHE_DIR")) dir = env;
  if (!dir.empty()) default_projector_cache().set_directory(std::filesystem::path(dir));
}

void report_cache_stats(const Config& c) {
  if (!c.cache_stats) return;
  const auto& cache = default_projector_cache();
  std::cerr << json{{"projectors_computed", cache.computed()}, {"projectors_loaded", cache.loaded()}}.dump()
            << '\n';
}

int cmd_basis(const Config& c) {
  const Margins margins = required_margins(c);
  Output out(c.output);
  const auto block = block_for(margins);
  json tables = json::array();
  for (const auto& t : block->tables()) tables.push_back(table_json(t));
  write_record(out.stream(), json{{"schema_version", kSchemaVersion},
                                  {"command", "basis"},
                                  {"margins", margins_json(margins)},
                                  {"dimension", block->size()},
                                  {"tables", std::move(tables)}});
  return 0;
}

int cmd_verify(const Config& c) {
  validate_counts(c);
  if (!is_suite_name(c.suite)) throw ParseError("unknown suite: " + c.suite);
  configure_cache(c);
  Limits lim;
  lim.k = c.k;
  lim.n = c.n;
  lim.k_max = c.k_max;
  lim.n_max = c.n_max;
  lim.degree_max = c.degree_max;
  if (!c.lambda.empty()) lim.lambda = c.lambda;
  if (!c.mu.empty()) lim.mu = c.mu;
  lim.trials = c.trials;
  lim.seed = c.seed;
  lim.jobs = c.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : c.jobs;
  lim.timing = c.timing;

  Output out(c.output);
  std::size_t records = 0;
  std::size_t failures = 0;
  run_suite(c.suite, lim, [&](const VerifyReport& r) {
    ++records;
    if (!r.pass) ++failures;
    write_record(out.stream(), report_json(r));
  });
  out.stream().flush();
  std::cerr << "kzdual verify " << c.suite << ": " << records << " records, " << failures << " failed\n";
  report_cache_stats(c);
  return failures == 0 ? 0 : kExitFail;
}

ParamPoint dump_point(const Config& c, Side side, const Margins& margins) {
  const SideView view{side, margins};
  const auto F = static_cast<std::size_t>(view.factor_count());
  const auto K = static_cast<std::size_t>(view.cartan_count());
  const bool explicit_point = !c.z.empty() || !c.lam.empty() || !c.kappa.empty();
  ParamPoint p;
  if (explicit_point) {
    if (c.z.empty() || c.lam.empty() || c.kappa.empty())
      throw ParseError("--z, --lam and --kappa must be given together");
    p.z = parse_rat_list(c.z);
    p.lam = parse_rat_list(c.lam);
    p.kappa = parse_rat(c.kappa);
    if (p.z.size() != F || p.lam.size() != K)
      throw ParseError("--z needs one value per tensor factor and --lam one per Cartan direction");
  } else {
    p = sample_point(c.seed, F, K, true, margins.degree() + 1);
  }
  if (!c.t.empty()) p.t = parse_rat(c.t);
  return p;
}

int cmd_dump(const Config& c) {
  configure_cache(c);
  json record{{"schema_version", kSchemaVersion}, {"object", c.object}};
  if (c.object == "rmatrix") {
    if (c.N < 1 || c.l < 0 || c.m < 0) throw ParseError("rmatrix needs --N >= 1 and --l, --m >= 0");
    if (c.t.empty()) throw ParseError("rmatrix needs --t");
    const Rat t = parse_rat(c.t);
    const RMatrixKey key{c.N, c.l, c.m};
    record["key"] = json{{"N", c.N}, {"l", c.l}, {"m", c.m}};
    record["t"] = to_string(t);
    record["matrix"] = matrix_json(r_matrix(key, t));
  } else {
    const Margins margins = required_margins(c);
    if (!margins.feasible()) throw ParseError("margins have different totals");
    const Side side = parse_side(c.side);
    const auto block = block_for(margins);
    record["side"] = side_name(side);
    record["margins"] = margins_json(margins);
    if (c.object == "bmatrix") {
      if (c.t.empty()) throw ParseError("bmatrix needs --t");
      const Rat t = parse_rat(c.t);
      record["a"] = c.a;
      record["b"] = c.b;
      record["t"] = to_string(t);
      record["matrix"] = matrix_json(b_matrix(side, c.a - 1, c.b - 1, t, block));
    } else {
      const ParamPoint p = dump_point(c, side, margins);
      record["index"] = c.index;
      if (c.object == "coeff") record["family"] = family_name(parse_family(c.family));
      record["point"] = point_json(p);
      QMatrix mat;
      if (c.object == "xmatrix") mat = x_matrix(side, c.index - 1, block, p);
      else if (c.object == "kmatrix") mat = k_matrix(side, c.index - 1, block, p);
      else mat = coeff(parse_family(c.family), side, c.index - 1, block, p);
      record["matrix"] = matrix_json(mat);
    }
  }
  Output out(c.output);
  write_record(out.stream(), record);
  report_cache_stats(c);
  return 0;
}

void add_margin_options(CLI::App* cmd, Config& c) {
  cmd->add_option("--k", c.k, "gl_k rank (rows of a table)");
  cmd->add_option("--n", c.n, "gl_n rank (columns of a table)");
  cmd->add_option("--lambda", c.lambda, "factor degrees l_1..l_n")->delimiter(',');
  cmd->add_option("--mu", c.mu, "gl_k weight m_1..m_k")->delimiter(',');
}

void add_output_option(CLI::App* cmd, Config& c) {
  cmd->add_option("-o,--output", c.output, "output file, - for stdout")->capture_default_str();
}

void add_cache_options(CLI::App* cmd, Config& c) {
  cmd->add_option("--cache-dir", c.cache_dir, "directory for persisted R-matrix projectors");
  cmd->add_flag("--cache-stats", c.cache_stats, "print projector cache counters to stderr");
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Exact operator identities on weight blocks of P_kn"};
  app.require_subcommand(1);

  auto* basis = app.add_subcommand("basis", "list the table basis of one weight block");
  add_margin_options(basis, c);
  add_output_option(basis, c);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_margin_options(verify, c);
  verify->add_option("--suite", c.suite, "suite name or all")->required();
  verify->add_option("--k-max", c.k_max, "largest k swept when --k is omitted")->capture_default_str();
  verify->add_option("--n-max", c.n_max, "largest n swept when --n is omitted")->capture_default_str();
  verify->add_option("--degree-max", c.degree_max, "largest total degree swept")->capture_default_str();
  verify->add_option("--seed", c.seed, "base seed; trial r uses seed + r")->capture_default_str();
  verify->add_option("--trials", c.trials, "sampled points per case")->capture_default_str();
  verify->add_option("--jobs", c.jobs, "worker threads, 0 for all cores")->capture_default_str();
  verify->add_flag("--timing", c.timing, "add elapsed_ms to each record (not deterministic)");
  add_cache_options(verify, c);
  add_output_option(verify, c);

  auto* dump = app.add_subcommand("dump", "write one matrix record");
  dump->add_option("object", c.object, "rmatrix, bmatrix, xmatrix, kmatrix or coeff")
      ->required()
      ->check(CLI::IsMember({"rmatrix", "bmatrix", "xmatrix", "kmatrix", "coeff"}));
  add_margin_options(dump, c);
  dump->add_option("--side", c.side, "glk or gln")->capture_default_str()->check(CLI::IsMember({"glk", "gln"}));
  dump->add_option("--family", c.family, "kz_rat, kz_trig, dd_rat or dd_trig (coeff)");
  dump->add_option("--N", c.N, "gl_N rank (rmatrix)");
  dump->add_option("--l", c.l, "first symmetric power (rmatrix)");
  dump->add_option("--m", c.m, "second symmetric power (rmatrix)");
  dump->add_option("--a", c.a, "first Cartan index, 1-based (bmatrix)");
  dump->add_option("--b", c.b, "second Cartan index, 1-based (bmatrix)");
  dump->add_option("--index", c.index, "operator index, 1-based (xmatrix, kmatrix, coeff)");
  dump->add_option("--z", c.z, "factor coordinates, comma separated p/q values");
  dump->add_option("--lam", c.lam, "Cartan coordinates, comma separated p/q values");
  dump->add_option("--kappa", c.kappa, "step kappa");
  dump->add_option("--t", c.t, "spectral parameter");
  dump->add_option("--seed", c.seed, "seed for the sampled point when none is given")->capture_default_str();
  add_cache_options(dump, c);
  add_output_option(dump, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*basis) return cmd_basis(c);
    if (*verify) return cmd_verify(c);
    return cmd_dump(c);
  } catch (const Error& e) {
    std::cerr << "kzdual: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "kzdual: " << e.what() << '\n';
    return kExitUsage;
  }
}
