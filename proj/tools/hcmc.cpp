// hcmc command-line tool: hyperbolic-cross index tables, randomized
// approximation runs, and the empirical error laboratory. All randomness
// flows from --seed through documented counter-based derivation, so
// identical invocations produce byte-identical outputs.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "hcmc/approx.hpp"
#include "hcmc/coeff_io.hpp"
#include "hcmc/errorlab.hpp"
#include "hcmc/indexset.hpp"
#include "hcmc/rng.hpp"

namespace {

constexpr const char* kVersion = "hcmc 0.1.0";

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string meta_header(const std::string& config, std::uint64_t seed) {
  std::ostringstream out;
  out << "# " << kVersion << "\n# config: " << config << "\n# seed: " << seed << "\n";
  return out.str();
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    hcmc::write_file_atomic(out_path, content);
}

struct IndexArgs {
  int d = 1;
  int max_layer = 0;
  std::string format = "csv";
  std::string out;
};

int run_index(const IndexArgs& a) {
  std::ostringstream body;
  if (a.format == "csv") {
    body << meta_header("index --d " + std::to_string(a.d) + " --max-layer " + std::to_string(a.max_layer), 0);
    body << "d,j,compositions,layer_size,cumulative_size\n";
    for (int j = 0; j <= a.max_layer; ++j) {
      const auto st = hcmc::layer_stats(a.d, j);
      body << st.d << "," << st.j << "," << st.compositions << "," << st.layer_size << ","
           << st.cumulative_size << "\n";
    }
  } else {
    body << "[";
    for (int j = 0; j <= a.max_layer; ++j) {
      const auto st = hcmc::layer_stats(a.d, j);
      body << (j ? ", " : "") << "{\"d\": " << st.d << ", \"j\": " << st.j
           << ", \"compositions\": " << st.compositions << ", \"layer_size\": " << st.layer_size
           << ", \"cumulative_size\": " << st.cumulative_size << "}";
    }
    body << "]\n";
  }
  emit(a.out, body.str());
  return 0;
}

struct ApproxArgs {
  int d = 1;
  double r = 1.0;
  std::uint64_t budget = 2;
  std::optional<int> J;
  std::optional<int> L;
  std::string variant = "complex";
  std::uint64_t seed = 0;
  std::string input;
  std::string out;
  // two-stage extras
  std::size_t m = 0;
  std::optional<double> s_aux;
};

hcmc::ApproxPlan make_plan(const ApproxArgs& a) {
  hcmc::SmoothnessParams params{a.d, a.r, 2.0};
  auto plan = hcmc::plan_from_budget(params, a.budget, a.L, a.seed, a.J);
  plan.variant = a.variant == "real" ? hcmc::Variant::real_basis : hcmc::Variant::complex_basis;
  return plan;
}

int run_approx(const ApproxArgs& a) {
  const hcmc::TrigPoly f = hcmc::read_coeff_json(a.input);
  const auto plan = make_plan(a);
  const hcmc::TrigPoly g = plan.variant == hcmc::Variant::real_basis
                               ? hcmc::approximate_real(f, plan)
                               : hcmc::approximate(f, plan);
  emit(a.out, hcmc::to_coeff_json(g));
  return 0;
}

int run_twostage(const ApproxArgs& a) {
  const hcmc::TrigPoly f = hcmc::read_coeff_json(a.input);
  auto plan = make_plan(a);
  const double s = a.s_aux ? *a.s_aux : hcmc::default_s_aux(a.r);
  const hcmc::TwoStageParams ts(a.m, s, plan);
  emit(a.out, hcmc::to_coeff_json(hcmc::two_stage_approximate(f, ts)));
  return 0;
}

struct BenchArgs {
  int d = 1;
  double r = 1.0;
  std::uint64_t n_min = 64;
  std::uint64_t n_max = 1024;
  std::string n_step = "pow2";
  int reps = 64;
  std::string family = "random_ball";
  std::uint64_t seed = 0;
  std::string out;
  std::optional<int> max_layer;
  std::optional<int> L;
  int threads = 0;
};

int run_bench(const BenchArgs& a) {
  if (a.n_step != "pow2") throw CLI::ValidationError("--n-step", "only pow2 is supported");
  hcmc::SmoothnessParams params{a.d, a.r, 2.0};
  hcmc::ErrorLabConfig cfg;
  cfg.threads = a.threads;

  const int j_top = hcmc::budget_to_J(a.d, a.n_max).J;
  const int ball_layer = a.max_layer ? *a.max_layer : j_top + 3;

  std::ostringstream body;
  std::ostringstream cfgline;
  cfgline << "bench --d " << a.d << " --r " << a.r << " --n-min " << a.n_min << " --n-max " << a.n_max
          << " --n-step pow2 --reps " << a.reps << " --family " << a.family << " --seed " << a.seed
          << " --max-layer " << ball_layer;
  body << meta_header(cfgline.str(), a.seed);
  body << "# d: " << a.d << "\n";
  body << "n,J,L,family,reps,mean_err,stderr,seed\n";

  for (std::uint64_t n = a.n_min; n <= a.n_max; n *= 2) {
    auto plan = hcmc::plan_from_budget(params, n, a.L, a.seed);
    if (!a.L) plan.L = std::max(plan.J + 1, ball_layer);  // align sketch range with the test family

    hcmc::MeanStderr row;
    if (a.family == "random_ball") {
      // Unit-ball supremum surrogate: max over 10 sampled functions.
      for (int i = 0; i < 10; ++i) {
        hcmc::TestFunctionSpec spec{hcmc::TestFunctionSpec::Kind::random_ball, a.d, a.r, ball_layer,
                                    hcmc::derive_seed(a.seed, "sampler", static_cast<std::uint64_t>(i))};
        const auto f = hcmc::sample_unit_ball(spec);
        const auto ms = hcmc::expected_error(hcmc::AlgorithmKind::mc_complex, f, plan, a.reps,
                                             hcmc::derive_seed(a.seed, "replication", i), cfg);
        if (ms.mean > row.mean) row = ms;
      }
    } else {
      const auto kind = a.family == "flat_layer" ? hcmc::TestFunctionSpec::Kind::flat_layer
                                                 : hcmc::TestFunctionSpec::Kind::single_layer;
      hcmc::TestFunctionSpec spec{kind, a.d, a.r, plan.J + 1, hcmc::derive_seed(a.seed, "sampler", 0)};
      const auto f = hcmc::sample_unit_ball(spec);
      row = hcmc::expected_error(hcmc::AlgorithmKind::mc_complex, f, plan, a.reps, a.seed, cfg);
    }
    body << n << "," << plan.J << "," << plan.L << "," << a.family << "," << row.reps << ","
         << fmt(row.mean) << "," << fmt(row.std_err) << "," << a.seed << "\n";
  }
  emit(a.out, body.str());
  return 0;
}

struct NormLemmaArgs {
  int d = 1;
  int j_min = 4;
  int j_max = 8;
  std::string q = "inf";
  int reps = 256;
  std::uint64_t seed = 0;
  std::string out;
  int threads = 0;
};

int run_normlemma(const NormLemmaArgs& a) {
  const double q = a.q == "inf" ? std::numeric_limits<double>::infinity() : std::stod(a.q);
  hcmc::ErrorLabConfig cfg;
  cfg.threads = a.threads;

  std::ostringstream body;
  std::ostringstream cfgline;
  cfgline << "normlemma --d " << a.d << " --j-min " << a.j_min << " --j-max " << a.j_max << " --q "
          << a.q << " --reps " << a.reps << " --seed " << a.seed;
  body << meta_header(cfgline.str(), a.seed);
  body << "j,set_size,deg,q,mean_norm,stderr,ratio_to_bound\n";
  for (int j = a.j_min; j <= a.j_max; ++j) {
    const auto E = hcmc::layer(a.d, j);
    int deg = 0;
    for (const auto& k : E) {
      int s = 0;
      for (int v : k) s += std::abs(v);
      deg = std::max(deg, s);
    }
    const auto ms =
        hcmc::expected_sup_norm(E, q, a.reps, hcmc::derive_seed(a.seed, "sampler", j), cfg);
    const double bound = std::isinf(q)
                             ? std::sqrt(E.size() * std::log2(std::max(deg, 2)))
                             : std::sqrt(q * static_cast<double>(E.size()));
    body << j << "," << E.size() << "," << deg << "," << a.q << "," << fmt(ms.mean) << ","
         << fmt(ms.std_err) << "," << fmt(ms.mean / bound) << "\n";
  }
  emit(a.out, body.str());
  return 0;
}

struct RateFitArgs {
  std::string in;
  std::string predictor = "raw_log";
  std::optional<int> d;
  std::string out;
};

int run_ratefit(const RateFitArgs& a) {
  std::ifstream in(a.in);
  if (!in) throw std::runtime_error("cannot open " + a.in);
  std::vector<std::pair<double, double>> points;
  int d_from_file = 0;
  std::string line;
  int col_n = -1, col_err = -1;
  while (std::getline(in, line)) {
    if (line.rfind("# d:", 0) == 0) {
      d_from_file = std::stoi(line.substr(4));
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (col_n < 0) {  // header row
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "n") col_n = static_cast<int>(i);
        if (fields[i] == "mean_err") col_err = static_cast<int>(i);
      }
      if (col_n < 0 || col_err < 0) throw std::runtime_error("CSV must have columns n and mean_err");
      continue;
    }
    points.emplace_back(std::stod(fields[col_n]), std::stod(fields[col_err]));
  }
  const int d = a.d ? *a.d : (d_from_file > 0 ? d_from_file : 1);
  const auto pred = a.predictor == "hyperbolic" ? hcmc::RatePredictor::hyperbolic
                                                : hcmc::RatePredictor::raw_log;
  const auto fit = hcmc::fit_rate(points, pred, d);
  std::ostringstream body;
  body << "{\"slope\": " << fmt(fit.slope) << ", \"intercept\": " << fmt(fit.intercept)
       << ", \"residual_rms\": " << fmt(fit.residual_rms) << ", \"predictor\": \"" << fit.predictor
       << "\", \"points\": " << points.size() << "}\n";
  emit(a.out, body.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized uniform approximation of periodic functions on hyperbolic crosses"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads, 0 = auto (never changes results)");

  IndexArgs ia;
  auto* idx = app.add_subcommand("index", "layer cardinality table");
  idx->add_option("--d", ia.d)->required();
  idx->add_option("--max-layer", ia.max_layer)->required();
  idx->add_option("--format", ia.format)->check(CLI::IsMember({"csv", "json"}));
  idx->add_option("--out", ia.out);

  ApproxArgs aa;
  auto* ap = app.add_subcommand("approx", "randomized linear approximation of a coefficient file");
  ap->add_option("--d", aa.d)->required();
  ap->add_option("--r", aa.r)->required();
  ap->add_option("--budget", aa.budget)->required();
  ap->add_option("--J", aa.J);
  ap->add_option("--L", aa.L);
  ap->add_option("--variant", aa.variant)->check(CLI::IsMember({"complex", "real"}));
  ap->add_option("--seed", aa.seed);
  ap->add_option("--input", aa.input)->required();
  ap->add_option("--out", aa.out);

  ApproxArgs ta;
  auto* tw = app.add_subcommand("twostage", "two-stage nonlinear approximation");
  tw->add_option("--d", ta.d)->required();
  tw->add_option("--r", ta.r)->required();
  tw->add_option("--budget", ta.budget)->required();
  tw->add_option("--J", ta.J);
  tw->add_option("--L", ta.L);
  tw->add_option("--m", ta.m)->required();
  tw->add_option("--s-aux", ta.s_aux);
  tw->add_option("--seed", ta.seed);
  tw->add_option("--input", ta.input)->required();
  tw->add_option("--out", ta.out);

  BenchArgs ba;
  auto* be = app.add_subcommand("bench", "expected-error sweep over budgets");
  be->add_option("--d", ba.d)->required();
  be->add_option("--r", ba.r)->required();
  be->add_option("--n-min", ba.n_min)->required();
  be->add_option("--n-max", ba.n_max)->required();
  be->add_option("--n-step", ba.n_step);
  be->add_option("--reps", ba.reps);
  be->add_option("--family", ba.family)
      ->check(CLI::IsMember({"random_ball", "flat_layer", "single_layer"}));
  be->add_option("--seed", ba.seed);
  be->add_option("--max-layer", ba.max_layer);
  be->add_option("--L", ba.L);
  be->add_option("--out", ba.out);

  NormLemmaArgs na;
  auto* nl = app.add_subcommand("normlemma", "expected norm of random trigonometric polynomials");
  nl->add_option("--d", na.d)->required();
  nl->add_option("--j-min", na.j_min)->required();
  nl->add_option("--j-max", na.j_max)->required();
  nl->add_option("--q", na.q);
  nl->add_option("--reps", na.reps);
  nl->add_option("--seed", na.seed);
  nl->add_option("--out", na.out);

  RateFitArgs ra;
  auto* rf = app.add_subcommand("ratefit", "least-squares rate exponent from a bench CSV");
  rf->add_option("--in", ra.in)->required();
  rf->add_option("--predictor", ra.predictor)->check(CLI::IsMember({"raw_log", "hyperbolic"}));
  rf->add_option("--d", ra.d);
  rf->add_option("--out", ra.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ba.threads = threads;
    na.threads = threads;
    if (idx->parsed()) return run_index(ia);
    if (ap->parsed()) return run_approx(aa);
    if (tw->parsed()) return run_twostage(ta);
    if (be->parsed()) return run_bench(ba);
    if (nl->parsed()) return run_normlemma(na);
    if (rf->parsed()) return run_ratefit(ra);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
