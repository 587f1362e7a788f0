#include "bmc/experiments.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "bmc/errors.hpp"
#include "bmc/parallel.hpp"

namespace bmc {

CltResult clt_study(const ExperimentConfig& cfg) {
  cfg.validate();
  const BarSpectrum q = cfg.params.spectrum();
  CltResult res;
  res.n = cfg.n;
  res.regime = classify_regime(q.a()).regime;
  if (res.regime == Regime::supercritical) {
    throw NumericRejection(
        "no Gaussian fluctuation limit when 2a^2 > 1; use the supercritical study");
  }
  ExperimentConfig run = cfg;
  run.normalization = Normalization::regime;
  res.statistics = replicate(run);

  const SpectralFn f = cfg.test_function();
  const bool gen = cfg.target == Target::generation;
  const FunctionalSeq seq = gen ? FunctionalSeq::single(f) : FunctionalSeq::tree(f);
  res.series = res.regime == Regime::subcritical ? sigma_sub(q, seq) : sigma_crit(q, seq);
  res.series_variance = gen ? res.series.value : res.series.value / 2.0;

  res.moments = sample_moments(res.statistics);
  res.empirical_variance = res.moments.variance;
  res.ks_threshold = ks_threshold_5pct(res.statistics.size());
  if (res.series_variance > 0.0) {
    res.ks_distance = ks_distance_normal(res.statistics, 0.0, res.series_variance);
  } else {
    res.ks_skipped = true;
  }
  return res;
}

namespace {

MartingaleResult collect_martingale(const std::vector<std::vector<double>>& paths, int depth) {
  MartingaleResult m;
  const std::size_t reps = paths.size();
  std::vector<double> column(reps);
  for (int g = 0; g <= depth; ++g) {
    for (std::size_t r = 0; r < reps; ++r) column[r] = paths[r][g];
    const SampleMoments sm = sample_moments(column);
    m.mean.push_back(sm.mean);
    m.mean_se.push_back(reps > 1 ? std::sqrt(sm.variance / static_cast<double>(reps)) : 0.0);
    if (g < depth) {
      double s = 0.0;
      for (std::size_t r = 0; r < reps; ++r) s += std::abs(paths[r][g + 1] - paths[r][g]);
      m.l1_diffs.push_back(s / static_cast<double>(reps));
    }
  }
  return m;
}

}  // namespace

MartingaleResult martingale_study(const ExperimentConfig& cfg) {
  cfg.validate();
  const BarSpectrum q = cfg.params.spectrum();
  if (q.a() == 0.0) throw NumericRejection("martingale needs a nonzero eigenvalue a");
  const SpectralFn rf[] = {project_r(cfg.test_function())};
  const RandomStream master(cfg.master_seed);
  std::vector<std::vector<double>> paths(cfg.replicas);
  parallel_for(paths.size(), cfg.threads, [&](std::size_t r) {
    const auto sums = generation_sums(cfg.nu, cfg.params, cfg.n, master.replica(r), rf);
    paths[r] = martingale_path_from_sums(q, sums[0]);
  });
  return collect_martingale(paths, cfg.n);
}

SupercriticalResult supercritical_study(const ExperimentConfig& cfg) {
  cfg.validate();
  const BarSpectrum q = cfg.params.spectrum();
  const RegimeTag tag = classify_regime(q.a());
  if (tag.regime != Regime::supercritical || q.a() <= 0.0) {
    throw NumericRejection("supercritical study needs 2a^2 > 1 and a > 0");
  }
  const SpectralFn f = cfg.test_function();
  const SpectralFn fs[] = {center(f), project_r(f)};
  const RandomStream master(cfg.master_seed);
  const auto reps = static_cast<std::size_t>(cfg.replicas);

  SupercriticalResult res;
  res.generation_limits.resize(reps);
  res.tree_limits.resize(reps);
  std::vector<std::vector<double>> paths(reps);
  parallel_for(reps, cfg.threads, [&](std::size_t r) {
    const auto sums = generation_sums(cfg.nu, cfg.params, cfg.n, master.replica(r), fs);
    const SupercriticalLimits lim = supercritical_limits_from_sums(q, sums[0]);
    res.generation_limits[r] = lim.generation;
    res.tree_limits[r] = lim.tree;
    paths[r] = martingale_path_from_sums(q, sums[1]);
  });

  std::vector<double> ratios;
  ratios.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    if (res.generation_limits[r] != 0.0) {
      ratios.push_back(res.tree_limits[r] / res.generation_limits[r]);
    }
  }
  res.ratio_median = ratios.empty() ? 0.0 : median(ratios);
  res.expected_ratio = 2.0 * tag.alpha / (2.0 * tag.alpha - 1.0);
  res.martingale = collect_martingale(paths, cfg.n);
  res.martingale_l1_diffs = res.martingale.l1_diffs;
  return res;
}

double h1(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("h1 needs 0 < alpha < 1");
  return std::log(std::max(alpha * alpha, 0.5)) / std::log(2.0);
}

double h2(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("h2 needs 0 < alpha < 1");
  const double a2 = alpha * alpha;
  return std::log(std::max(a2 * a2, 0.5)) / std::log(2.0);
}

void SlopeStudyConfig::validate() const {
  if (alphas.empty()) throw ConfigError("slope study needs at least one alpha");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("alpha grid must lie in (0, 1)");
  }
  if (functions.empty()) throw ConfigError("slope study needs a test function");
  if (n_min < 0 || n_max < n_min + 3) throw ConfigError("slope study needs n_max >= n_min + 3");
  if (n_max > kMaxDepth) throw ResourceCap("n_max exceeds the depth cap");
  if (replicas < 2) throw ConfigError("variance estimation needs at least two replicas");
  if (outer_repeats < 1) throw ConfigError("outer_repeats must be at least 1");
  if (targets.empty()) throw ConfigError("slope study needs a target");
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
}

LinearFit fit_log_slope(std::span<const double> sizes, std::span<const double> variances) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    x.push_back(std::log(sizes[i]));
    y.push_back(std::log(variances[i]));
  }
  return fit_line(x, y);
}

std::vector<SlopeResult> slope_study(const SlopeStudyConfig& cfg) {
  cfg.validate();
  const std::size_t n_funcs = cfg.functions.size();
  const auto reps = static_cast<std::size_t>(cfg.replicas);
  const RandomStream master(cfg.master_seed);
  std::vector<SlopeResult> rows;

  for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
    const double alpha = cfg.alphas[ai];
    const BarParams params = BarParams::symmetric_bar(alpha, cfg.sigma);
    std::vector<SpectralFn> fs;
    for (const auto& spec : cfg.functions) fs.push_back(from_monomial(spec.poly, params.sigma_a()));

    for (int rep = 0; rep < cfg.outer_repeats; ++rep) {
      const std::uint64_t base =
          (static_cast<std::uint64_t>(ai) * static_cast<std::uint64_t>(cfg.outer_repeats) +
           static_cast<std::uint64_t>(rep)) * reps;
      // sums[r][i][g] = M_{G_g}(f_i) for replica r
      std::vector<std::vector<std::vector<double>>> sums(reps);
      parallel_for(reps, cfg.threads, [&](std::size_t r) {
        sums[r] = generation_sums(cfg.nu, params, cfg.n_max, master.replica(base + r), fs);
      });

      for (std::size_t i = 0; i < n_funcs; ++i) {
        for (Target target : cfg.targets) {
          SlopeResult row;
          row.alpha = alpha;
          row.n_min = cfg.n_min;
          row.n_max = cfg.n_max;
          row.replicas = cfg.replicas;
          row.target = target;
          row.f_label = cfg.functions[i].label;
          row.outer_repeat = rep;

          std::vector<double> sizes, vars, stat(reps);
          for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
            const double size = target == Target::generation
                                    ? std::ldexp(1.0, n)
                                    : static_cast<double>(TreeIndex::tree_size(n));
            for (std::size_t r = 0; r < reps; ++r) {
              double m = 0.0;
              if (target == Target::generation) {
                m = sums[r][i][n];
              } else {
                for (int g = 0; g <= n; ++g) m += sums[r][i][g];
              }
              stat[r] = m / size;
            }
            const double v = sample_variance(stat);
            if (!(v > 0.0) || !std::isfinite(v)) {
              row.omitted.push_back(n);
              continue;
            }
            sizes.push_back(size);
            vars.push_back(v);
          }
          if (sizes.size() >= 2) {
            const LinearFit fit = fit_log_slope(sizes, vars);
            row.slope = fit.slope;
            row.stderr_ = fit.slope_stderr;
          } else {
            row.slope = std::numeric_limits<double>::quiet_NaN();
            row.stderr_ = std::numeric_limits<double>::quiet_NaN();
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

std::vector<SlopeSummary> summarize_slopes(const std::vector<SlopeResult>& rows) {
  std::vector<SlopeSummary> out;
  std::map<std::tuple<double, std::string, int>, std::size_t> index;
  std::vector<std::vector<double>> values;
  for (const auto& row : rows) {
    const auto key = std::make_tuple(row.alpha, row.f_label, static_cast<int>(row.target));
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, out.size()).first;
      out.push_back(SlopeSummary{row.alpha, row.target, row.f_label, 0.0, 0.0, 0});
      values.emplace_back();
    }
    if (std::isfinite(row.slope)) values[it->second].push_back(row.slope);
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    const SampleMoments m = sample_moments(values[k]);
    out[k].mean = values[k].empty() ? std::numeric_limits<double>::quiet_NaN() : m.mean;
    out[k].sd = std::sqrt(m.variance);
    out[k].count = static_cast<int>(values[k].size());
  }
  return out;
}

}  // namespace bmc
