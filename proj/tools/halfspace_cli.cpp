#include "halfspace/core.hpp"
#include "halfspace/glm.hpp"
#include "halfspace/io.hpp"
#include "halfspace/oracle.hpp"
#include "halfspace/parallel.hpp"
#include "halfspace/pipeline.hpp"
#include "halfspace/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace hs = halfspace;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitWarnings = 1;
constexpr int kExitUsage = 2;

struct TargetSpec {
  std::string kind;  // dictator | constant | regular | sparse
  hs::Index sparse_k = 0;
};

TargetSpec parse_target(const std::string& s) {
  if (s == "dictator" || s == "constant" || s == "regular") return {s, 0};
  if (s.rfind("sparse:", 0) == 0) {
    const long k = std::stol(s.substr(7));
    if (k < 1) throw CLI::ValidationError("--target", "sparse:k needs k >= 1");
    return {"sparse", k};
  }
  throw CLI::ValidationError("--target", "expected dictator|constant|regular|sparse:k");
}

hs::synth::NoiseSpec parse_noise(const std::string& s) {
  using hs::synth::NoiseSpec;
  if (s == "none") return NoiseSpec::none();
  auto rate_of = [](const std::string& t) {
    const double r = std::stod(t);
    if (!(r >= 0.0 && r < 1.0)) throw CLI::ValidationError("--noise", "rate must be in [0,1)");
    return r;
  };
  if (s.rfind("flip:", 0) == 0) return NoiseSpec::random_flip(rate_of(s.substr(5)));
  if (s.rfind("boundary:", 0) == 0) return NoiseSpec::boundary_flip(rate_of(s.substr(9)));
  if (s.rfind("contam:", 0) == 0) {
    const std::string rest = s.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--noise", "contam:r:adversary needs an adversary id");
    return NoiseSpec::contaminate(rate_of(rest.substr(0, colon)), rest.substr(colon + 1));
  }
  throw CLI::ValidationError("--noise", "expected none|flip:r|boundary:r|contam:r:adversary");
}

hs::Halfspace make_target(const TargetSpec& t, hs::Index d, hs::SeededRng& rng) {
  if (t.kind == "dictator") {
    hs::Vector v = hs::Vector::Zero(d);
    v[0] = 1.0;
    return hs::Halfspace(std::move(v), 0.0);
  }
  if (t.kind == "constant")
    return hs::Halfspace(hs::Vector::Zero(d), static_cast<double>(d) + 1.0);
  if (t.kind == "regular") return hs::synth::random_regular_halfspace(d, rng);
  return hs::synth::planted_sparse_halfspace(d, t.sparse_k, rng);
}

int cmd_gen(hs::Index d, hs::Index n, const std::string& target, const std::string& noise,
            std::uint64_t seed, const std::string& out, const std::string& planted_out) {
  const TargetSpec t = parse_target(target);
  const hs::synth::NoiseSpec spec = parse_noise(noise);
  hs::SeededRng rng(seed);
  hs::SeededRng rng_target = rng.split(0);
  hs::SeededRng rng_points = rng.split(1);
  hs::SeededRng rng_noise = rng.split(2);

  const hs::Halfspace planted = make_target(t, d, rng_target);
  const hs::LabeledSet clean =
      hs::synth::label_with(planted, hs::synth::sample_uniform(d, n, rng_points));
  const hs::LabeledSet noisy = hs::synth::apply_noise(clean, spec, rng_noise, planted);

  hs::save_labeled_set(out, noisy);
  if (!planted_out.empty()) hs::save_halfspace(planted_out, planted);
  std::cout << "wrote " << out << " (d=" << d << " n=" << n
            << " provenance=" << noisy.provenance().tag() << ")\n";
  return kExitOk;
}

int cmd_learn(double eps, const std::string& mode, std::int64_t cap_k, std::int64_t cap_samples,
              double c_const, std::uint64_t seed, const std::string& in, const std::string& out,
              const std::string& hypothesis_out) {
  if (mode != "label-noise" && mode != "contaminated")
    throw CLI::ValidationError("--mode", "expected label-noise|contaminated");
  hs::LearnerConfig cfg;
  cfg.epsilon = eps;
  cfg.cap_k = cap_k;
  cfg.cap_samples = cap_samples;
  cfg.c_const = c_const;
  cfg.seed = seed;

  const hs::DatasetOracle oracle(hs::load_labeled_set(in));
  const hs::pipeline::RunReport report = mode == "contaminated"
                                             ? hs::pipeline::learn_halfspace_contaminated(cfg, oracle)
                                             : hs::pipeline::learn_halfspace(cfg, oracle);

  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open '" + out + "' for writing");
    f << report.to_json() << "\n";
  } else {
    std::cout << report.to_json() << "\n";
  }
  if (!hypothesis_out.empty()) hs::save_halfspace(hypothesis_out, report.chosen());

  std::cout << "chosen s3 error = " << report.chosen_error() << "\n";
  if (report.any_warning()) {
    std::cerr << "warning: some candidates fell back to the constant hypothesis\n";
    return kExitWarnings;
  }
  return kExitOk;
}

int cmd_glm(double eps, double w_max, const std::string& in, const std::string& out) {
  const hs::LabeledSet data = hs::load_labeled_set(in);
  hs::glm::RealDataset real{data.to_matrix(), data.label_vector()};
  const auto fit = hs::glm::learn_sigmoid_glm(eps, w_max, real);
  std::cout << "surrogate_value = " << hs::format_double(fit.surrogate_value) << "\n"
            << "iterations = " << fit.iterations << "\n"
            << "rho = " << hs::format_double(fit.rho) << "\n";
  if (!out.empty()) {
    hs::save_halfspace(out, hs::Halfspace(fit.weights, fit.bias));
    std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

int cmd_eval(const std::string& hypothesis_path, const std::string& data_path,
             const std::string& target_path) {
  const hs::Halfspace h = hs::load_halfspace(hypothesis_path);
  const hs::LabeledSet data = hs::load_labeled_set(data_path);
  std::cout << "empirical_error = " << hs::format_double(hs::empirical_error(h, data)) << "\n";
  if (!target_path.empty()) {
    const hs::Halfspace f = hs::load_halfspace(target_path);
    if (h.dim() <= 22) {
      std::cout << "exact_error_vs_target = "
                << hs::format_double(hs::oracle::exact_error(h, f)) << "\n";
    } else {
      std::cout << "exact_error_vs_target = n/a (d > 22)\n";
    }
  }
  return kExitOk;
}

struct BenchRow {
  std::string key;
  std::string line;
};

int cmd_bench(const std::string& config_path, bool glm_scaling, const std::string& out_path) {
  std::ostringstream table;
  if (glm_scaling) {
    // runtime vs weight-norm bound on one fixed sigmoid-GLM dataset
    const hs::Index d = 5;
    const hs::Index n = 60000;
    hs::SeededRng rng(17);
    hs::Vector w_star(d);
    w_star << 3.0, -2.0, 1.0, 0.5, -1.0;
    const double tau_star = 0.5;
    hs::glm::RealDataset data;
    data.x.resize(n, d);
    data.y.resize(n);
    for (hs::Index i = 0; i < n; ++i) {
      for (hs::Index c = 0; c < d; ++c) data.x(i, c) = rng.rademacher();
      const double mean = std::tanh(0.5 * (data.x.row(i).dot(w_star) + tau_star));
      data.y[i] = rng.bernoulli(0.5 * (1.0 + mean)) ? 1.0 : -1.0;
    }
    table << "w_max\tsq_sigma_err\twall_ms\titerations\n";
    for (const double wmax : {1e3, 1e6, 1e9}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto fit = hs::glm::learn_sigmoid_glm(0.05, wmax, data);
      const auto t1 = std::chrono::steady_clock::now();
      double sq = 0.0;
      hs::SeededRng fresh(18);
      const hs::Index trials = 20000;
      for (hs::Index i = 0; i < trials; ++i) {
        hs::Vector x(d);
        for (hs::Index c = 0; c < d; ++c) x[c] = fresh.rademacher();
        const double a = std::tanh(0.5 * (x.dot(w_star) + tau_star));
        const double b = std::tanh(0.5 * (x.dot(fit.weights) + fit.bias));
        sq += (a - b) * (a - b);
      }
      sq /= static_cast<double>(trials);
      const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      table << hs::format_double(wmax) << "\t" << hs::format_double(sq) << "\t"
            << hs::format_double(ms) << "\t" << fit.iterations << "\n";
    }
  } else {
    if (config_path.empty())
      throw CLI::ValidationError("bench", "either --config or --glm-scaling is required");
    std::ifstream f(config_path);
    if (!f) throw std::runtime_error("cannot open '" + config_path + "'");
    nlohmann::json cfg_json;
    try {
      f >> cfg_json;
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(std::string("malformed bench config: ") + e.what());
    }
    const hs::Index fresh_n = cfg_json.value("fresh", 100000);
    const auto& cells = cfg_json.at("cells");

    struct Cell {
      hs::Index d;
      double eps;
      std::string target;
      std::string noise;
      std::vector<std::uint64_t> seeds;
      std::int64_t cap_k;
      std::int64_t cap_samples;
      double c_const;
      std::string mode;
    };
    std::vector<Cell> parsed;
    for (const auto& c : cells) {
      Cell cell;
      cell.d = c.at("d").get<hs::Index>();
      cell.eps = c.at("eps").get<double>();
      cell.target = c.at("target").get<std::string>();
      cell.noise = c.value("noise", std::string("none"));
      cell.seeds = c.value("seeds", std::vector<std::uint64_t>{1});
      cell.cap_k = c.value("cap_k", std::int64_t{6});
      cell.cap_samples = c.value("cap_samples", std::int64_t{20000});
      cell.c_const = c.value("c_const", 4.0);
      cell.mode = c.value("mode", std::string("label-noise"));
      parsed.push_back(std::move(cell));
    }

    std::vector<BenchRow> rows(parsed.size());
    hs::parallel_for_indexed(static_cast<int>(parsed.size()), [&](int i) {
      const Cell& cell = parsed[static_cast<std::size_t>(i)];
      const TargetSpec t = parse_target(cell.target);
      const hs::synth::NoiseSpec noise = parse_noise(cell.noise);

      double sum = 0.0, sumsq = 0.0;
      const auto t0 = std::chrono::steady_clock::now();
      for (const std::uint64_t seed : cell.seeds) {
        hs::SeededRng rng_target = hs::SeededRng(seed).split(0);
        const hs::Halfspace planted = make_target(t, cell.d, rng_target);
        const hs::synth::SyntheticOracle oracle(planted, noise);

        hs::LearnerConfig cfg;
        cfg.epsilon = cell.eps;
        cfg.cap_k = cell.cap_k;
        cfg.cap_samples = cell.cap_samples;
        cfg.c_const = cell.c_const;
        cfg.seed = seed;
        const auto report = cell.mode == "contaminated"
                                ? hs::pipeline::learn_halfspace_contaminated(cfg, oracle)
                                : hs::pipeline::learn_halfspace(cfg, oracle);

        hs::SeededRng rng_fresh = hs::SeededRng(seed).split(999);
        const hs::LabeledSet fresh = oracle.draw(fresh_n, rng_fresh);
        const double err = hs::empirical_error(report.chosen(), fresh);
        sum += err;
        sumsq += err * err;
      }
      const auto t1 = std::chrono::steady_clock::now();
      const double n = static_cast<double>(cell.seeds.size());
      const double mean = sum / n;
      const double var = std::max(0.0, sumsq / n - mean * mean);
      std::ostringstream key;
      key << cell.d << "\t" << cell.eps << "\t" << cell.target << "\t" << cell.noise << "\t"
          << cell.mode;
      std::ostringstream line;
      line << key.str() << "\t" << hs::format_double(mean) << "\t"
           << hs::format_double(std::sqrt(var)) << "\t"
           << hs::format_double(std::chrono::duration<double, std::milli>(t1 - t0).count())
           << "\n";
      rows[static_cast<std::size_t>(i)] = BenchRow{key.str(), line.str()};
    });

    std::sort(rows.begin(), rows.end(),
              [](const BenchRow& a, const BenchRow& b) { return a.key < b.key; });
    table << "d\teps\ttarget\tnoise\tmode\terr_mean\terr_std\twall_ms\n";
    for (const auto& r : rows) table << r.line;
  }

  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    f << table.str();
  }
  std::cout << table.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"halfspace learning over the boolean hypercube"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic labeled dataset");
  hs::Index gen_d = 30, gen_n = 1000;
  std::string gen_target = "dictator", gen_noise = "none", gen_out = "data.txt", gen_planted;
  std::uint64_t gen_seed = 1;
  gen->add_option("--d", gen_d, "dimension")->required()->check(CLI::PositiveNumber);
  gen->add_option("--n", gen_n, "sample count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--target", gen_target, "dictator|constant|regular|sparse:k")->required();
  gen->add_option("--noise", gen_noise, "none|flip:r|boundary:r|contam:r:adversary");
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--out", gen_out, "output dataset path")->required();
  gen->add_option("--planted-out", gen_planted, "also write the planted halfspace here");

  // learn
  auto* learn = app.add_subcommand("learn", "run the learner on a dataset file");
  double learn_eps = 0.1, learn_c = 4.0;
  std::string learn_mode = "label-noise", learn_in, learn_out, learn_hyp;
  std::int64_t learn_cap_k = 6, learn_cap_samples = 20000;
  std::uint64_t learn_seed = 1;
  learn->add_option("--eps", learn_eps, "accuracy parameter")->required();
  learn->add_option("--mode", learn_mode, "label-noise|contaminated");
  learn->add_option("--cap-k", learn_cap_k, "desk-scale clamp on k");
  learn->add_option("--cap-samples", learn_cap_samples, "desk-scale clamp on sample formulas");
  learn->add_option("--c-const", learn_c, "the universal constant C");
  learn->add_option("--seed", learn_seed, "rng seed");
  learn->add_option("--in", learn_in, "input dataset path")->required();
  learn->add_option("--out", learn_out, "report JSON path (stdout if omitted)");
  learn->add_option("--hypothesis-out", learn_hyp, "write the chosen halfspace here");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a serialized halfspace on a dataset");
  std::string eval_hyp, eval_data, eval_target;
  eval->add_option("--hypothesis", eval_hyp, "halfspace file")->required();
  eval->add_option("--data", eval_data, "dataset file")->required();
  eval->add_option("--target", eval_target, "optional target halfspace for exact error");

  // glm
  auto* glm_cmd = app.add_subcommand("glm", "standalone clipped-sigmoid GLM fit");
  double glm_eps = 0.05, glm_wmax = 1000.0;
  std::string glm_in, glm_out;
  glm_cmd->add_option("--eps", glm_eps, "accuracy parameter");
  glm_cmd->add_option("--w-max", glm_wmax, "weight-norm bound for the fit");
  glm_cmd->add_option("--in", glm_in, "input dataset path")->required();
  glm_cmd->add_option("--out", glm_out, "write the fitted (w, tau) here");

  // bench
  auto* bench = app.add_subcommand("bench", "parameter sweeps and scaling measurements");
  std::string bench_cfg, bench_out;
  bool bench_glm = false;
  bench->add_option("--config", bench_cfg, "JSON sweep config");
  bench->add_flag("--glm-scaling", bench_glm, "runtime vs w_max sweep for the sigmoid learner");
  bench->add_option("--out", bench_out, "also write the table here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed())
      return cmd_gen(gen_d, gen_n, gen_target, gen_noise, gen_seed, gen_out, gen_planted);
    if (learn->parsed())
      return cmd_learn(learn_eps, learn_mode, learn_cap_k, learn_cap_samples, learn_c, learn_seed,
                       learn_in, learn_out, learn_hyp);
    if (eval->parsed()) return cmd_eval(eval_hyp, eval_data, eval_target);
    if (glm_cmd->parsed()) return cmd_glm(glm_eps, glm_wmax, glm_in, glm_out);
    if (bench->parsed()) return cmd_bench(bench_cfg, bench_glm, bench_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
