// Command-line front end for the near-ideal filter library.
//
// Exit codes: 0 success, 1 benchmark trial error, 2 invalid flags or
// malformed input, 3 output write failure, 4 certificate or condition failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nearideal.hpp"

namespace {

using namespace nearideal;

constexpr int kExitTrialError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitWrite = 3;
constexpr int kExitCertificate = 4;

struct WriteFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Collects the text and writes it to --out (or stdout) at the end.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw WriteFailure("cannot write to stdout");
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw WriteFailure("cannot open " + path + " for writing");
  os << text;
  os.flush();
  if (!os) throw WriteFailure("cannot write " + path);
}

Series read_series_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open " + path);
  return read_series_csv(is);
}

struct NearIdealFlags {
  double a = 0.6;
  double p = 0.7;
  int N = 100;
  int m = 2;

  void add(CLI::App* cmd) {
    cmd->add_option("--a", a, "near-ideal a in (0,1)");
    cmd->add_option("--p", p, "near-ideal p in (1/2,1)");
    cmd->add_option("--N", N, "near-ideal N >= 1");
    cmd->add_option("--m", m, "near-ideal m >= 1");
  }
  NearIdealParams params() const { return {a, p, N, m}; }
};

struct SpecFlags {
  bool near_ideal = false;
  bool reference = false;
  bool predictor = false;
  NearIdealFlags ni;
  double mu = 0.02;
  double q = 1.01;
  double gamma = 1.1;
  double r = 1.1;

  void add(CLI::App* cmd) {
    cmd->add_flag("--near-ideal", near_ideal, "include the near-ideal filter H_a");
    cmd->add_flag("--reference", reference, "include the reference gain M_{mu,q}");
    cmd->add_flag("--predictor", predictor, "include the predictor K");
    ni.add(cmd);
    cmd->add_option("--mu", mu, "reference mu > 0");
    cmd->add_option("--q", q, "reference q > 1");
    cmd->add_option("--gamma", gamma, "predictor gain > 0");
    cmd->add_option("--r", r, "predictor exponent > 0");
  }

  /// Product of the selected factors in the order predictor, near-ideal, reference.
  TransferSpec spec() const {
    std::vector<TransferSpec> factors;
    if (predictor) factors.emplace_back(PredictorParams(gamma, r));
    if (near_ideal) factors.emplace_back(ni.params());
    if (reference) factors.emplace_back(ReferenceParams(mu, q));
    if (factors.empty()) throw DomainError("select at least one of --near-ideal, --reference, --predictor");
    if (factors.size() == 1) return factors.front();
    return TransferSpec::product(std::move(factors));
  }
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(csv::parse_double(csv::split(item).front(), 0));
  return out;
}

// --- freqresp -----------------------------------------------------------------

std::string freqresp_csv(const TransferSpec& spec, std::size_t grid) {
  detail::require(grid >= 1, "--grid must be >= 1");
  std::ostringstream os;
  os << "omega,re,im,gain,err1\n";
  for (std::size_t j = 0; j < grid; ++j) {
    const double omega = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid);
    const Complex z = (j == 0) ? Complex{-1.0, 0.0} : on_circle(omega);
    const Complex h = eval_spec(spec, z);
    csv::write_row(os, {csv::format_double(omega), csv::format_double(h.real()), csv::format_double(h.imag()),
                        csv::format_double(std::abs(h)), csv::format_double(std::abs(h - 1.0))});
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Near-ideal causal smoothing filters and one-step prediction"};
  app.require_subcommand(1);
  std::string out_path;

  // freqresp
  auto* freqresp = app.add_subcommand("freqresp", "frequency response on [-pi, pi): omega,re,im,gain,err1");
  SpecFlags fr_spec;
  std::size_t fr_grid = 4096;
  fr_spec.add(freqresp);
  freqresp->add_option("--grid", fr_grid, "number of frequencies");
  freqresp->add_option("--out", out_path, "output CSV (default stdout)");

  // impulse
  auto* impulse = app.add_subcommand("impulse", "causal impulse response: t,h");
  SpecFlags im_spec;
  std::size_t im_grid = kDefaultGrid;
  std::size_t im_support = 256;
  im_spec.add(impulse);
  impulse->add_option("--grid", im_grid, "frequency grid (power of two)");
  impulse->add_option("--support", im_support, "number of taps");
  impulse->add_option("--out", out_path, "output CSV (default stdout)");

  // smooth
  auto* smooth = app.add_subcommand("smooth", "filter a series with H_a: t,x,y");
  NearIdealFlags sm_ni;
  std::string sm_in;
  std::size_t sm_grid = kDefaultGrid;
  std::size_t sm_support = 101;
  sm_ni.add(smooth);
  smooth->add_option("--in", sm_in, "input series CSV (t,x)")->required();
  smooth->add_option("--grid", sm_grid, "frequency grid (power of two)");
  smooth->add_option("--support", sm_support, "number of filter taps");
  smooth->add_option("--out", out_path, "output CSV (default stdout)");

  // predict
  auto* predict = app.add_subcommand("predict", "one-step forecasts: t,x,yhat");
  NearIdealFlags pr_ni;
  std::string pr_in;
  BenchConfig pr_cfg;
  double pr_gamma = 1.1;
  double pr_r = 1.1;
  bool pr_prefilter = false;
  std::string pr_window = "d";
  pr_ni.add(predict);
  predict->add_option("--in", pr_in, "input series CSV (t,x)")->required();
  predict->add_option("--d", pr_cfg.d, "kernel window: lags 0..d");
  predict->add_option("--gamma", pr_gamma, "predictor gain > 0");
  predict->add_option("--r", pr_r, "predictor exponent > 0");
  predict->add_flag("--prefilter", pr_prefilter, "apply the near-ideal prefilter (composite kernel)");
  predict->add_option("--window", pr_window, "composite kernel window")->check(CLI::IsMember({"d", "2d"}));
  predict->add_option("--grid", pr_cfg.grid, "frequency grid (power of two)");
  predict->add_option("--out", out_path, "output CSV (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "numerical checks a1, a2, b1, b2 (and optionally a3, c)");
  NearIdealFlags ve_ni;
  ve_ni.a = 0.99;
  ve_ni.p = 0.6;
  ve_ni.N = 50;
  ve_ni.m = 2;
  std::string ve_a_list = "0.5,0.6,0.7,0.8,0.9,0.95,0.99";
  std::string ve_a_seq = "0.9,0.99,0.999";
  double ve_omega = std::numbers::pi / 2;
  double ve_epsilon = 0.1;
  int ve_grid = 4096;
  bool ve_sequence = false;
  bool ve_domination = false;
  double ve_mu = 0.02;
  double ve_q = 1.01;
  std::string ve_band = "2.0,2.6,3.0";
  ve_ni.add(verify);
  verify->add_option("--a-list", ve_a_list, "a values for the bounded-gain check");
  verify->add_option("--a-seq", ve_a_seq, "increasing a values for the identity checks");
  verify->add_option("--omega", ve_omega, "half-width Omega of the identity band");
  verify->add_option("--epsilon", ve_epsilon, "epsilon for the neighbourhood and band checks");
  verify->add_option("--grid", ve_grid, "grid points per check");
  verify->add_flag("--sequence", ve_sequence, "also run the sequence-domain identity check");
  verify->add_flag("--domination", ve_domination, "also run the domination check");
  verify->add_option("--mu", ve_mu, "reference mu for --domination");
  verify->add_option("--q", ve_q, "reference q for --domination");
  verify->add_option("--band", ve_band, "Omega,Omega0,Omega1 for --domination");
  verify->add_option("--report", out_path, "output JSON (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "Monte-Carlo forecasting benchmark");
  BenchConfig bc;
  std::string be_model = "ar2";
  std::string be_window = "d";
  double be_gamma = 1.1;
  double be_r = 1.1;
  NearIdealFlags be_ni;
  be_ni.add(bench);
  bench->add_option("--trials", bc.trials, "number of trials");
  bench->add_option("--n", bc.n, "scored horizon t = 1..n");
  bench->add_option("--d", bc.d, "kernel window: lags 0..d");
  bench->add_option("--sigma", bc.sigma, "noise intensity > 0");
  bench->add_option("--model", be_model, "ar1 or ar2")->check(CLI::IsMember({"ar1", "ar2"}));
  bench->add_option("--seed", bc.master_seed, "master seed");
  bench->add_option("--window", be_window, "composite kernel window")->check(CLI::IsMember({"d", "2d"}));
  bench->add_option("--gamma", be_gamma, "predictor gain > 0");
  bench->add_option("--r", be_r, "predictor exponent > 0");
  bench->add_option("--grid", bc.grid, "frequency grid (power of two)");
  bench->add_option("--burn-in", bc.burn_in, "discarded simulation prefix");
  bench->add_option("--threads", bc.threads, "worker threads (0: all cores)");
  bench->add_option("--out", out_path, "output JSON (default stdout)");

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
    if (*freqresp) {
      const auto spec = fr_spec.spec();
      detail::require(fr_grid >= 1, "--grid must be >= 1");
      emit(out_path, freqresp_csv(spec, fr_grid));
    } else if (*impulse) {
      const auto kernel = impulse_from_spec(im_spec.spec(), im_grid, im_support);
      std::ostringstream os;
      write_kernel_csv(os, kernel);
      emit(out_path, os.str());
    } else if (*smooth) {
      const auto params = sm_ni.params();
      const auto x = read_series_file(sm_in);
      const auto kernel = impulse_from_spec(TransferSpec(params), sm_grid, sm_support);
      const auto y = convolve(kernel, x);
      std::ostringstream os;
      os << "t,x,y\n";
      for (auto t = x.start_index(); t < x.end_index(); ++t)
        csv::write_row(os, {std::to_string(t), csv::format_double(x.at(t)), csv::format_double(y.at(t))});
      emit(out_path, os.str());
    } else if (*predict) {
      pr_cfg.predictor = PredictorParams(pr_gamma, pr_r);
      pr_cfg.prefilter = pr_ni.params();
      pr_cfg.composite_window = pr_window == "2d" ? CompositeWindow::kTwoDWindow : CompositeWindow::kDWindow;
      const auto x = read_series_file(pr_in);
      const auto kernels = make_bench_kernels(pr_cfg);
      const auto y = convolve(pr_prefilter ? kernels.prefiltered : kernels.predictor, x);
      std::ostringstream os;
      os << "t,x,yhat\n";
      // Row t holds the forecast of x(t) issued at t-1.
      for (auto t = x.start_index(); t < x.end_index(); ++t)
        csv::write_row(os, {std::to_string(t), csv::format_double(x.at(t)), csv::format_double(y.at(t - 1))});
      emit(out_path, os.str());
    } else if (*verify) {
      const auto params = ve_ni.params();
      const auto a_list = parse_list(ve_a_list);
      std::vector<NearIdealParams> seq;
      for (double a : parse_list(ve_a_seq)) seq.push_back(params.with_a(a));

      std::vector<ConditionReport> reports;
      reports.push_back(check_bounded_gain(params.p(), params.N(), params.m(), a_list, ve_grid));
      reports.push_back(check_identity_approx(seq, ve_omega, ve_grid));
      if (ve_sequence) {
        const std::vector<double> tones{0.05, 0.2};
        reports.push_back(check_sequence_identity(seq, tones));
      }
      reports.push_back(check_zero_at_pi(params));
      reports.push_back(check_small_neighborhood(params, ve_epsilon, ve_grid));
      if (ve_domination) {
        const auto band = parse_list(ve_band);
        detail::require(band.size() == 3, "--band needs Omega,Omega0,Omega1");
        reports.push_back(check_domination(params, ReferenceParams(ve_mu, ve_q),
                                           BandSpec(band[0], band[1], band[2], ve_epsilon, ve_grid)));
      }

      bool all_pass = true;
      Json doc{{"parameters", {{"a", params.a()}, {"p", params.p()}, {"N", params.N()}, {"m", params.m()}}},
               {"reports", Json::array()}};
      for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        doc["reports"].push_back(to_json(r));
        std::cerr << r.condition_id << ": " << (r.pass ? "pass" : "FAIL") << "\n";
      }
      doc["pass"] = all_pass;
      emit(out_path, doc.dump(2) + "\n");
      return all_pass ? 0 : kExitCertificate;
    } else if (*bench) {
      bc.model_kind = be_model == "ar1" ? ModelKind::kAr1 : ModelKind::kAr2;
      bc.composite_window = be_window == "2d" ? CompositeWindow::kTwoDWindow : CompositeWindow::kDWindow;
      bc.predictor = PredictorParams(be_gamma, be_r);
      bc.prefilter = be_ni.params();
      bc.validate();
      const auto kernels = make_bench_kernels(bc);
      BenchReport report;
      try {
        report = run_benchmark(bc, kernels);
      } catch (const WriteFailure&) {
        throw;
      } catch (const std::exception& e) {
        std::cerr << "bench: trial failed: " << e.what() << "\n";
        return kExitTrialError;
      }
      emit(out_path, to_json(report).dump(2) + "\n");
    }
  } catch (const WriteFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitWrite;
  } catch (const CausalityViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCertificate;
  } catch (const AliasingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCertificate;
  } catch (const RealnessViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCertificate;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help() ;
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SingularityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
