#include "sweatpp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "sweatpp/abc.hpp"
#include "sweatpp/changepoint.hpp"
#include "sweatpp/envelopes.hpp"
#include "sweatpp/fit.hpp"
#include "sweatpp/frame_io.hpp"
#include "sweatpp/generative.hpp"
#include "sweatpp/manifest.hpp"
#include "sweatpp/pattern_io.hpp"
#include "sweatpp/priors.hpp"
#include "sweatpp/quadrature.hpp"
#include "sweatpp/sequential.hpp"
#include "sweatpp/summaries.hpp"

namespace sweatpp {

namespace {

constexpr int kDefaultJ = 10800;

struct WindowFlags {
  std::string sidecar;
  double width = 0.0;
  double height = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--window", sidecar,
                    "window sidecar JSON with width/height");
    cmd->add_option("--width", width, "window width in pixels");
    cmd->add_option("--height", height, "window height in pixels");
  }

  Window resolve() const {
    if (!sidecar.empty()) return load_window_json(sidecar);
    if (width > 0.0 && height > 0.0) return Window{width, height};
    throw std::invalid_argument(
        "window unspecified: pass --window FILE or both --width and "
        "--height");
  }
};

nlohmann::json describe_prior(const Prior& prior) {
  nlohmann::json desc = nlohmann::json::array();
  for (std::size_t i = 0; i < prior.dim(); ++i) {
    const PriorComponent& c = prior.components[i];
    nlohmann::json entry;
    entry["name"] = prior.names[i];
    switch (c.kind()) {
      case PriorComponent::Kind::gamma:
        entry["family"] = "gamma";
        entry["shape"] = c.a();
        entry["scale"] = c.b();
        break;
      case PriorComponent::Kind::uniform:
        entry["family"] = "uniform";
        entry["a"] = c.a();
        entry["b"] = c.b();
        break;
      case PriorComponent::Kind::improper_uniform:
        entry["family"] = "improper_uniform";
        entry["a"] = c.a();
        break;
    }
    desc.push_back(entry);
  }
  return desc;
}

void write_function_csv(const std::string& path, const FunctionEstimate& f) {
  std::vector<std::vector<double>> rows;
  rows.reserve(f.r.size());
  for (std::size_t i = 0; i < f.r.size(); ++i)
    rows.push_back({f.r[i], f.value[i]});
  save_table_csv(path, {"r", "value"}, rows);
}

std::vector<std::vector<double>> select_columns(
    const std::string& path, const std::vector<std::string>& wanted) {
  std::vector<std::string> header;
  const auto rows = load_table_csv(path, &header);
  std::vector<std::size_t> idx;
  for (const std::string& name : wanted) {
    std::size_t found = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) found = i;
    if (found == header.size())
      throw std::runtime_error(path + ": missing column '" + name + "'");
    idx.push_back(found);
  }
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<double> sel;
    sel.reserve(idx.size());
    for (const std::size_t i : idx) sel.push_back(row[i]);
    out.push_back(std::move(sel));
  }
  if (out.empty()) throw std::runtime_error(path + ": no data rows");
  return out;
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& argv) {
  CLI::App app{"simulation, fitting, and extraction of sweat gland "
               "activation patterns"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 1;
  app.add_option("--threads", threads, "worker count (only 1 is implemented)")
      ->check(CLI::PositiveNumber);

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "draw one pattern from a model");
  struct {
    std::string model, out;
    std::size_t n = 0;
    double R = 0, kappa = 0, theta = 0, sigma = 0, p = 1;
    std::uint64_t seed = 0, max_failures = 300, max_proposals = 10000000;
    double width = 0, height = 0;
  } sim_opt;
  sim->add_option("--model", sim_opt.model)
      ->required()
      ->check(CLI::IsMember({"softcore", "mixture", "generative"}));
  sim->add_option("--n", sim_opt.n, "point count (sequential models)");
  sim->add_option("--R", sim_opt.R)->required();
  auto* sim_kappa = sim->add_option("--kappa", sim_opt.kappa);
  auto* sim_theta = sim->add_option("--theta", sim_opt.theta);
  auto* sim_sigma = sim->add_option("--sigma", sim_opt.sigma);
  auto* sim_p = sim->add_option("--p", sim_opt.p);
  sim->add_option("--width", sim_opt.width)->required();
  sim->add_option("--height", sim_opt.height)->required();
  sim->add_option("--seed", sim_opt.seed)->required();
  sim->add_option("--out", sim_opt.out)->required();
  sim->add_option("--max-failures", sim_opt.max_failures);
  sim->add_option("--max-proposals", sim_opt.max_proposals);
  sim->callback([&] {
    const Window window{sim_opt.width, sim_opt.height};
    if (!(window.width > 0.0 && window.height > 0.0))
      throw std::invalid_argument("window dimensions must be positive");
    Rng rng(sim_opt.seed);
    PointPattern pattern;
    nlohmann::json params;
    params["model"] = sim_opt.model;
    params["R"] = sim_opt.R;
    params["width"] = window.width;
    params["height"] = window.height;
    if (sim_opt.model == "generative") {
      if (!sim_sigma->count() || !sim_p->count())
        throw std::invalid_argument(
            "generative model needs --sigma and --p");
      pattern = simulate_generative({sim_opt.R, sim_opt.sigma, sim_opt.p},
                                    window, rng, sim_opt.max_failures);
      params["sigma"] = sim_opt.sigma;
      params["p"] = sim_opt.p;
      params["max_failures"] = sim_opt.max_failures;
    } else {
      if (sim_opt.n < 1)
        throw std::invalid_argument("sequential models need --n >= 1");
      if (!sim_kappa->count())
        throw std::invalid_argument("sequential models need --kappa");
      params["n"] = sim_opt.n;
      params["kappa"] = sim_opt.kappa;
      params["max_proposals"] = sim_opt.max_proposals;
      if (sim_opt.model == "mixture") {
        if (!sim_theta->count())
          throw std::invalid_argument("mixture model needs --theta");
        params["theta"] = sim_opt.theta;
        pattern = simulate_mixture(
            sim_opt.n, {{sim_opt.R, sim_opt.kappa}, sim_opt.theta}, window,
            rng, sim_opt.max_proposals);
      } else {
        pattern = simulate_sequential(sim_opt.n, {sim_opt.R, sim_opt.kappa},
                                      window, rng, sim_opt.max_proposals);
      }
    }
    save_pattern_csv(sim_opt.out, pattern);
    save_window_json(sim_opt.out + ".window.json", window);
    write_run_manifest(sim_opt.out + ".manifest.json", "simulate", argv,
                       params, sim_opt.seed, {},
                       {sim_opt.out, sim_opt.out + ".window.json"});
  });

  // ---- summaries ----
  auto* summ = app.add_subcommand(
      "summaries", "pcf, empty space function, and the ABC triple");
  struct {
    std::string pattern, out;
    double bandwidth = 0;
  } summ_opt;
  WindowFlags summ_window;
  summ->add_option("--pattern", summ_opt.pattern)->required();
  summ_window.attach(summ);
  summ->add_option("--out", summ_opt.out, "output path prefix")->required();
  auto* summ_bw = summ->add_option("--bandwidth", summ_opt.bandwidth);
  summ->callback([&] {
    const Window window = summ_window.resolve();
    const PointPattern pattern =
        load_pattern_csv(summ_opt.pattern, window);
    const std::vector<double> grid = default_r_grid(window);
    const std::optional<double> bw =
        summ_bw->count() ? std::optional<double>(summ_opt.bandwidth)
                         : std::nullopt;
    const FunctionEstimate g = estimate_pcf(pattern, grid, bw);
    const FunctionEstimate f =
        estimate_F(pattern, grid, default_f_lattice_spacing(window));
    write_function_csv(summ_opt.out + ".g.csv", g);
    write_function_csv(summ_opt.out + ".F.csv", f);
    const auto s = abc_summaries(pattern);
    nlohmann::json triple;
    triple["r1"] = s ? nlohmann::json(s->r1) : nlohmann::json(nullptr);
    triple["r2"] = s ? nlohmann::json(s->r2) : nlohmann::json(nullptr);
    triple["r3"] = s ? nlohmann::json(s->r3) : nlohmann::json(nullptr);
    std::ofstream out(summ_opt.out + ".summaries.json");
    if (!out)
      throw std::runtime_error("cannot write " + summ_opt.out +
                               ".summaries.json");
    out << triple.dump(2) << "\n";
    out.close();
    nlohmann::json params;
    params["pattern"] = summ_opt.pattern;
    if (bw) params["bandwidth"] = *bw;
    write_run_manifest(summ_opt.out + ".manifest.json", "summaries", argv,
                       params, 0, {summ_opt.pattern},
                       {summ_opt.out + ".g.csv", summ_opt.out + ".F.csv",
                        summ_opt.out + ".summaries.json"});
  });

  // ---- loglik ----
  auto* ll = app.add_subcommand("loglik",
                                "sequential log likelihood of a pattern");
  struct {
    std::string pattern, model = "softcore";
    double R = 0, kappa = 0, theta = 0;
    int J = kDefaultJ;
  } ll_opt;
  WindowFlags ll_window;
  ll->add_option("--pattern", ll_opt.pattern)->required();
  ll_window.attach(ll);
  ll->add_option("--model", ll_opt.model)
      ->check(CLI::IsMember({"softcore", "mixture"}));
  ll->add_option("--R", ll_opt.R)->required();
  ll->add_option("--kappa", ll_opt.kappa)->required();
  auto* ll_theta = ll->add_option("--theta", ll_opt.theta);
  ll->add_option("--J", ll_opt.J, "quadrature node target")
      ->check(CLI::PositiveNumber);
  ll->callback([&] {
    const Window window = ll_window.resolve();
    const PointPattern pattern = load_pattern_csv(ll_opt.pattern, window);
    const QuadratureScheme quad = make_regular_quadrature(window, ll_opt.J);
    double value = 0.0;
    if (ll_opt.model == "mixture") {
      if (!ll_theta->count())
        throw std::invalid_argument("mixture model needs --theta");
      value = mixture_loglik(pattern, {{ll_opt.R, ll_opt.kappa}, ll_opt.theta},
                             quad);
    } else {
      value = seq_loglik(pattern, {ll_opt.R, ll_opt.kappa}, quad);
    }
    std::printf("loglik %.9f\nJ %zu\n", value, quad.size());
  });

  // ---- fit-mle ----
  auto* mle = app.add_subcommand("fit-mle", "maximum likelihood fit");
  struct {
    std::string pattern, model = "softcore", out;
    double init_R = 70, init_kappa = 0.5, init_theta = 0.1;
    bool fix_theta = false;
    int J = kDefaultJ;
  } mle_opt;
  WindowFlags mle_window;
  mle->add_option("--pattern", mle_opt.pattern)->required();
  mle_window.attach(mle);
  mle->add_option("--model", mle_opt.model)
      ->check(CLI::IsMember({"softcore", "mixture"}));
  mle->add_option("--init-R", mle_opt.init_R);
  mle->add_option("--init-kappa", mle_opt.init_kappa);
  mle->add_option("--init-theta", mle_opt.init_theta);
  mle->add_flag("--fix-theta", mle_opt.fix_theta,
                "keep theta at its initial value");
  mle->add_option("--J", mle_opt.J)->check(CLI::PositiveNumber);
  mle->add_option("--out", mle_opt.out)->required();
  mle->callback([&] {
    const Window window = mle_window.resolve();
    const PointPattern pattern = load_pattern_csv(mle_opt.pattern, window);
    const QuadratureScheme quad = make_regular_quadrature(window, mle_opt.J);
    const bool mixture = mle_opt.model == "mixture";
    std::vector<double> init{mle_opt.init_R, mle_opt.init_kappa};
    if (mixture) init.push_back(mle_opt.init_theta);
    const MleResult fit =
        fit_mle(pattern, mixture ? SeqModel::mixture : SeqModel::softcore,
                quad, init, mle_opt.fix_theta);
    nlohmann::json out;
    out["model"] = mle_opt.model;
    out["R"] = fit.params[0];
    out["kappa"] = fit.params[1];
    if (mixture) out["theta"] = fit.params[2];
    out["loglik"] = fit.loglik;
    out["iterations"] = fit.iterations;
    out["converged"] = fit.converged;
    out["J"] = quad.size();
    std::ofstream f(mle_opt.out);
    if (!f) throw std::runtime_error("cannot write " + mle_opt.out);
    f << out.dump(2) << "\n";
    f.close();
    nlohmann::json params;
    params["model"] = mle_opt.model;
    params["init"] = init;
    params["fix_theta"] = mle_opt.fix_theta;
    params["J"] = quad.size();
    write_run_manifest(mle_opt.out + ".manifest.json", "fit-mle", argv,
                       params, 0, {mle_opt.pattern}, {mle_opt.out});
  });

  // ---- fit-bayes ----
  auto* bayes =
      app.add_subcommand("fit-bayes", "posterior chain for the mixture fit");
  struct {
    std::string pattern, out;
    std::size_t iterations = 120000, burn_in = 20000;
    int J = kDefaultJ;
    std::uint64_t seed = 0;
  } bayes_opt;
  WindowFlags bayes_window;
  bayes->add_option("--pattern", bayes_opt.pattern)->required();
  bayes_window.attach(bayes);
  bayes->add_option("--iterations", bayes_opt.iterations);
  bayes->add_option("--burn-in", bayes_opt.burn_in);
  bayes->add_option("--J", bayes_opt.J)->check(CLI::PositiveNumber);
  bayes->add_option("--seed", bayes_opt.seed)->required();
  bayes->add_option("--out", bayes_opt.out)->required();
  bayes->callback([&] {
    const Window window = bayes_window.resolve();
    const PointPattern pattern = load_pattern_csv(bayes_opt.pattern, window);
    const QuadratureScheme quad =
        make_regular_quadrature(window, bayes_opt.J);
    const Prior prior = mixture_default_prior();
    Rng rng(bayes_opt.seed);
    const Chain chain =
        fit_bayes_mixture(pattern, quad, prior, bayes_opt.iterations,
                          bayes_opt.burn_in, rng);
    save_table_csv(bayes_opt.out, {"R", "kappa", "theta"}, chain.draws);
    nlohmann::json params;
    params["iterations"] = bayes_opt.iterations;
    params["burn_in"] = bayes_opt.burn_in;
    params["J"] = quad.size();
    params["prior"] = describe_prior(prior);
    params["acceptance_rate"] = chain.acceptance_rate();
    write_run_manifest(bayes_opt.out + ".manifest.json", "fit-bayes", argv,
                       params, bayes_opt.seed, {bayes_opt.pattern},
                       {bayes_opt.out});
  });

  // ---- fit-abc ----
  auto* abc = app.add_subcommand("fit-abc",
                                 "ABC posterior for the generative model");
  struct {
    std::string pattern, out, method = "mcmc";
    std::size_t iterations = 200000, keep = 5000, M = 1000;
    double epsilon = 0, R_upper = 0;
    std::uint64_t seed = 0, budget = 1000000;
  } abc_opt;
  WindowFlags abc_window;
  abc->add_option("--pattern", abc_opt.pattern)->required();
  abc_window.attach(abc);
  abc->add_option("--method", abc_opt.method)
      ->check(CLI::IsMember({"mcmc", "rejection"}));
  abc->add_option("--iterations", abc_opt.iterations);
  abc->add_option("--keep", abc_opt.keep);
  abc->add_option("--M", abc_opt.M, "kept draws (rejection)");
  auto* abc_eps = abc->add_option("--epsilon", abc_opt.epsilon,
                                  "acceptance tolerance (rejection)");
  abc->add_option("--R-upper", abc_opt.R_upper,
                  "replace the improper R prior by uniform(40, R-upper)");
  abc->add_option("--budget", abc_opt.budget,
                  "rejection proposals allowed per kept draw");
  abc->add_option("--seed", abc_opt.seed)->required();
  abc->add_option("--out", abc_opt.out)->required();
  abc->callback([&] {
    const Window window = abc_window.resolve();
    const PointPattern pattern = load_pattern_csv(abc_opt.pattern, window);
    const auto observed = abc_summaries(pattern);
    if (!observed)
      throw std::invalid_argument(
          "the observed pattern's summaries are undefined; ABC distances "
          "would all be infinite");
    Prior prior = generative_default_prior();
    if (abc_opt.R_upper > 0.0)
      prior.components[0] = PriorComponent::uniform(40.0, abc_opt.R_upper);
    Rng rng(abc_opt.seed);
    AbcSample sample;
    if (abc_opt.method == "rejection") {
      if (!abc_eps->count())
        throw std::invalid_argument("rejection ABC needs --epsilon");
      sample = abc_rejection(*observed, prior, window, abc_opt.epsilon,
                             abc_opt.M, rng, abc_opt.budget);
    } else {
      sample = abc_mcmc(*observed, prior, window, abc_opt.iterations,
                        abc_opt.keep, rng);
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(sample.draws.size());
    for (std::size_t i = 0; i < sample.draws.size(); ++i) {
      std::vector<double> row = sample.draws[i];
      row.push_back(sample.distances[i]);
      rows.push_back(std::move(row));
    }
    save_table_csv(abc_opt.out, {"R", "sigma", "p", "distance"}, rows);
    nlohmann::json params;
    params["method"] = abc_opt.method;
    params["prior"] = describe_prior(prior);
    params["observed_r1"] = observed->r1;
    params["observed_r2"] = observed->r2;
    params["observed_r3"] = observed->r3;
    if (abc_opt.method == "rejection") {
      params["epsilon"] = abc_opt.epsilon;
      params["M"] = abc_opt.M;
      params["budget"] = abc_opt.budget;
    } else {
      params["iterations"] = abc_opt.iterations;
      params["keep"] = abc_opt.keep;
    }
    params["simulations"] = sample.simulations;
    params["tolerance"] = sample.tolerance;
    write_run_manifest(abc_opt.out + ".manifest.json", "fit-abc", argv,
                       params, abc_opt.seed, {abc_opt.pattern},
                       {abc_opt.out});
  });

  // ---- envelope ----
  auto* env = app.add_subcommand(
      "envelope", "posterior predictive global rank envelope");
  struct {
    std::string pattern, sample, model, statistic = "pcf", out;
    std::size_t nsim = 2500;
    double level = 0.95;
    std::uint64_t seed = 0;
    bool with_noise = false;
  } env_opt;
  WindowFlags env_window;
  env->add_option("--pattern", env_opt.pattern)->required();
  env_window.attach(env);
  env->add_option("--sample", env_opt.sample, "fitted sample CSV")
      ->required();
  env->add_option("--model", env_opt.model)
      ->required()
      ->check(CLI::IsMember({"softcore", "mixture", "generative"}));
  env->add_option("--statistic", env_opt.statistic)
      ->check(CLI::IsMember({"pcf", "F"}));
  env->add_option("--nsim", env_opt.nsim);
  env->add_option("--level", env_opt.level);
  env->add_flag("--with-noise", env_opt.with_noise,
                "simulate the mixture's uniform noise component too");
  env->add_option("--seed", env_opt.seed)->required();
  env->add_option("--out", env_opt.out, "output path prefix")->required();
  env->callback([&] {
    const Window window = env_window.resolve();
    const PointPattern pattern = load_pattern_csv(env_opt.pattern, window);
    PredModel model = PredModel::generative;
    std::vector<std::string> columns{"R", "sigma", "p"};
    if (env_opt.model == "softcore") {
      model = PredModel::softcore_seq;
      columns = {"R", "kappa"};
    } else if (env_opt.model == "mixture") {
      model = PredModel::mixture_seq;
      columns = {"R", "kappa", "theta"};
    }
    const auto draws = select_columns(env_opt.sample, columns);
    Rng rng(env_opt.seed);
    const Envelope envelope = posterior_predictive_envelope(
        draws, model, pattern,
        env_opt.statistic == "pcf" ? StatKind::pcf : StatKind::empty_space,
        env_opt.nsim, env_opt.level, rng, !env_opt.with_noise);
    std::vector<std::vector<double>> rows;
    rows.reserve(envelope.r.size());
    for (std::size_t i = 0; i < envelope.r.size(); ++i)
      rows.push_back({envelope.r[i], envelope.lo[i], envelope.central[i],
                      envelope.hi[i]});
    save_table_csv(env_opt.out + ".csv", {"r", "lo", "mean", "hi"}, rows);
    nlohmann::json verdict;
    verdict["p_lo"] = envelope.p_lo;
    verdict["p_hi"] = envelope.p_hi;
    verdict["reject"] = envelope.reject;
    verdict["level"] = envelope.level;
    std::ofstream vf(env_opt.out + ".json");
    if (!vf)
      throw std::runtime_error("cannot write " + env_opt.out + ".json");
    vf << verdict.dump(2) << "\n";
    vf.close();
    nlohmann::json params;
    params["model"] = env_opt.model;
    params["statistic"] = env_opt.statistic;
    params["nsim"] = env_opt.nsim;
    params["level"] = env_opt.level;
    params["noise_free"] = !env_opt.with_noise;
    write_run_manifest(env_opt.out + ".manifest.json", "envelope", argv,
                       params, env_opt.seed,
                       {env_opt.pattern, env_opt.sample},
                       {env_opt.out + ".csv", env_opt.out + ".json"});
  });

  // ---- extract ----
  auto* ext = app.add_subcommand(
      "extract", "ordered pattern from a grayscale frame stack");
  struct {
    std::string input, out, dump_masks;
    double threshold = 0, sigma = 100, merge_radius = 15;
    std::size_t min_spot = 20;
    bool no_closing = false;
  } ext_opt;
  ext->add_option("--input", ext_opt.input, "PGM directory or stack header")
      ->required();
  ext->add_option("--threshold", ext_opt.threshold)->required();
  ext->add_option("--sigma", ext_opt.sigma);
  ext->add_option("--min-spot", ext_opt.min_spot);
  ext->add_option("--merge-radius", ext_opt.merge_radius);
  ext->add_flag("--no-closing", ext_opt.no_closing);
  ext->add_option("--dump-masks", ext_opt.dump_masks,
                  "write per-frame wet masks to this path prefix");
  ext->add_option("--out", ext_opt.out)->required();
  ext->callback([&] {
    const FrameStack stack = load_frame_stack(ext_opt.input);
    Image first;
    first.height = stack.height;
    first.width = stack.width;
    first.pixels.resize(stack.height * stack.width);
    for (std::size_t i = 0; i < first.pixels.size(); ++i)
      first.pixels[i] = static_cast<double>(stack.data[i]);
    const Image lighting = background_correct(first, ext_opt.sigma);
    const WetSequence wet = binarize_stack(stack, lighting, ext_opt.threshold,
                                           !ext_opt.no_closing);
    if (!ext_opt.dump_masks.empty()) {
      for (std::size_t t = 1; t <= wet.frames; ++t) {
        Image mask;
        mask.height = wet.height;
        mask.width = wet.width;
        mask.pixels.resize(wet.height * wet.width);
        for (std::size_t p = 0; p < mask.pixels.size(); ++p)
          mask.pixels[p] = wet.wet_from[p] <= static_cast<std::int32_t>(t)
                               ? 1.0
                               : 0.0;
        char suffix[32];
        std::snprintf(suffix, sizeof(suffix), "_t%03zu.pgm", t);
        save_pgm(ext_opt.dump_masks + suffix, mask);
      }
    }
    const PointPattern pattern =
        extract_spots(wet, ext_opt.merge_radius, ext_opt.min_spot);
    save_pattern_csv(ext_opt.out, pattern);
    save_window_json(ext_opt.out + ".window.json", pattern.window);
    nlohmann::json params;
    params["input"] = ext_opt.input;
    params["threshold"] = ext_opt.threshold;
    params["sigma"] = ext_opt.sigma;
    params["min_spot"] = ext_opt.min_spot;
    params["merge_radius"] = ext_opt.merge_radius;
    params["closing"] = !ext_opt.no_closing;
    write_run_manifest(ext_opt.out + ".manifest.json", "extract", argv,
                       params, 0, {},
                       {ext_opt.out, ext_opt.out + ".window.json"});
  });

  // ---- rerun ----
  auto* rerun = app.add_subcommand("rerun", "replay a run from its manifest");
  struct {
    std::string manifest;
  } rerun_opt;
  rerun->add_option("--manifest", rerun_opt.manifest)->required();
  int rerun_status = 0;
  rerun->callback([&] {
    const nlohmann::json m = load_run_manifest(rerun_opt.manifest);
    if (!m.contains("argv") || !m["argv"].is_array())
      throw std::runtime_error(rerun_opt.manifest +
                               ": manifest has no argv record");
    std::vector<std::string> replay;
    for (const auto& a : m["argv"]) replay.push_back(a.get<std::string>());
    rerun_status = parse_and_dispatch(replay);
    if (rerun_status != 0)
      throw std::runtime_error("replayed command failed");
  });

  std::vector<std::string> args = argv;
  std::vector<const char*> cargv;
  cargv.push_back("sweatpp");
  for (const std::string& a : args) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()),
              const_cast<char**>(cargv.data()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace sweatpp
