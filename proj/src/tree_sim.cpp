#include "bmc/tree_sim.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "bmc/errors.hpp"
#include "bmc/parallel.hpp"

namespace bmc {

FunctionalSeq FunctionalSeq::single(SpectralFn f) {
  FunctionalSeq s;
  s.shape_ = SeqShape::single;
  s.funcs_.push_back(std::move(f));
  return s;
}

FunctionalSeq FunctionalSeq::tree(SpectralFn f) {
  FunctionalSeq s;
  s.shape_ = SeqShape::tree;
  s.funcs_.push_back(std::move(f));
  return s;
}

FunctionalSeq FunctionalSeq::custom(std::vector<SpectralFn> fs) {
  FunctionalSeq s;
  s.shape_ = SeqShape::custom;
  s.funcs_ = std::move(fs);
  return s;
}

int FunctionalSeq::index_of(int ell) const {
  if (ell < 0) return -1;
  switch (shape_) {
    case SeqShape::single: return ell == 0 ? 0 : -1;
    case SeqShape::tree: return 0;
    case SeqShape::custom: return ell < static_cast<int>(funcs_.size()) ? ell : -1;
  }
  return -1;
}

const SpectralFn* FunctionalSeq::term(int ell) const {
  const int i = index_of(ell);
  return i < 0 ? nullptr : &funcs_[i];
}

int FunctionalSeq::support() const {
  switch (shape_) {
    case SeqShape::single: return 1;
    case SeqShape::tree: return -1;
    case SeqShape::custom: return static_cast<int>(funcs_.size());
  }
  return 0;
}

InitialLaw InitialLaw::gaussian(double mean, double var) {
  if (!(var > 0.0) || !std::isfinite(var) || !std::isfinite(mean)) {
    throw ConfigError("gaussian initial law needs a finite mean and var > 0");
  }
  return {Kind::gaussian, 0.0, mean, var};
}

double InitialLaw::sample(const BarParams& params, RandomStream& rng) const {
  switch (kind) {
    case Kind::dirac:
      return x0;
    case Kind::stationary: {
      if (params.a0 != params.a1 || params.b0 != params.b1) {
        throw NumericRejection("stationary initial law needs a0 = a1 and b0 = b1");
      }
      const double a = params.a0;
      const double sd = params.sigma / std::sqrt(1.0 - a * a);
      return params.b0 / (1.0 - a) + sd * rng.next_normal();
    }
    case Kind::gaussian:
      return mean + std::sqrt(var) * rng.next_normal();
  }
  return 0.0;
}

std::uint64_t full_tree_bytes(int n) {
  return TreeIndex::tree_size(static_cast<std::uint32_t>(n)) * sizeof(double);
}

namespace {

void check_depth(int n) {
  if (n < 0) throw ConfigError("tree depth must be non-negative");
  if (n > kMaxDepth) {
    throw ResourceCap("depth " + std::to_string(n) + " exceeds the cap " +
                      std::to_string(kMaxDepth) + " (full storage would need " +
                      std::to_string(full_tree_bytes(n) >> 20) + " MiB)");
  }
}

GenerationBuffer root_generation(const InitialLaw& nu, const BarParams& params,
                                 const RandomStream& stream) {
  RandomStream init = stream.initial();
  return GenerationBuffer{0, {nu.sample(params, init)}};
}

template <class Eval>
double pairwise_sum(const double* v, std::size_t n, const Eval& eval) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += eval(v[i]);
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half, eval) + pairwise_sum(v + half, n - half, eval);
}

}  // namespace

void next_generation(const GenerationBuffer& parent, const BarParams& params,
                     const RandomStream& stream, GenerationBuffer& child) {
  child.gen = parent.gen + 1;
  child.values.resize(parent.values.size() * 2);
  const auto gen = static_cast<std::uint32_t>(parent.gen);
  for (std::size_t k = 0; k < parent.values.size(); ++k) {
    RandomStream node = stream.node(gen, k);
    const auto [y, z] = sample_children(parent.values[k], params, node);
    child.values[2 * k] = y;
    child.values[2 * k + 1] = z;
  }
}

std::vector<GenerationBuffer> simulate(const InitialLaw& nu, const BarParams& params, int n,
                                       const RandomStream& stream) {
  params.validate();
  check_depth(n);
  std::vector<GenerationBuffer> gens;
  gens.reserve(static_cast<std::size_t>(n) + 1);
  gens.push_back(root_generation(nu, params, stream));
  for (int g = 1; g <= n; ++g) {
    GenerationBuffer next;
    next_generation(gens.back(), params, stream, next);
    gens.push_back(std::move(next));
  }
  return gens;
}

void simulate_streaming(const InitialLaw& nu, const BarParams& params, int n,
                        const RandomStream& stream, const GenerationVisitor& visit) {
  params.validate();
  check_depth(n);
  GenerationBuffer cur = root_generation(nu, params, stream);
  GenerationBuffer next;
  next.values.reserve(std::size_t{1} << n);
  cur.values.reserve(std::size_t{1} << n);
  visit(cur);
  for (int g = 1; g <= n; ++g) {
    next_generation(cur, params, stream, next);
    std::swap(cur, next);
    visit(cur);
  }
}

double m_sum(std::span<const double> values, const SpectralFn& f) {
  return pairwise_sum(values.data(), values.size(), f);
}

double m_sum(const GenerationBuffer& buf, const SpectralFn& f) {
  return m_sum(std::span<const double>(buf.values), f);
}

double n_statistic(std::span<const GenerationBuffer> gens, const FunctionalSeq& fseq, int n) {
  if (n < 0 || static_cast<std::size_t>(n) >= gens.size()) {
    throw ConfigError("n_statistic: generations 0..n are not all available");
  }
  std::vector<SpectralFn> centered;
  for (const auto& f : fseq.funcs()) centered.push_back(center(f));
  double total = 0.0;
  for (int ell = 0; ell <= n; ++ell) {
    const int i = fseq.index_of(ell);
    if (i < 0) continue;
    total += m_sum(gens[n - ell], centered[i]);
  }
  return total / std::sqrt(std::ldexp(1.0, n));
}

double n_statistic_from_sums(const FunctionalSeq& fseq, int n,
                             const std::function<double(int, int)>& sums_of) {
  double total = 0.0;
  for (int ell = 0; ell <= n; ++ell) {
    const int i = fseq.index_of(ell);
    if (i < 0) continue;
    total += sums_of(i, n - ell);
  }
  return total / std::sqrt(std::ldexp(1.0, n));
}

std::vector<std::vector<double>> generation_sums(const InitialLaw& nu, const BarParams& params,
                                                 int n, const RandomStream& stream,
                                                 std::span<const SpectralFn> fs) {
  std::vector<std::vector<double>> sums(fs.size(), std::vector<double>(n + 1, 0.0));
  simulate_streaming(nu, params, n, stream, [&](const GenerationBuffer& buf) {
    for (std::size_t i = 0; i < fs.size(); ++i) sums[i][buf.gen] = m_sum(buf, fs[i]);
  });
  return sums;
}

const char* to_string(Target t) { return t == Target::generation ? "Gn" : "Tn"; }

void ExperimentConfig::validate() const {
  params.validate();
  if (n < 3) throw ConfigError("experiments need depth n >= 3");
  if (n > kMaxDepth) {
    throw ResourceCap("depth " + std::to_string(n) + " exceeds the cap " +
                      std::to_string(kMaxDepth));
  }
  if (replicas < 2) throw ConfigError("experiments need at least two replicas");
  if (nu.kind == InitialLaw::Kind::gaussian && !(nu.var > 0.0)) {
    throw ConfigError("gaussian initial law needs var > 0");
  }
}

SpectralFn ExperimentConfig::test_function() const {
  const double scale = params.symmetric() ? params.sigma_a() : params.sigma;
  return from_monomial(f_poly, scale);
}

double replica_statistic(const ExperimentConfig& cfg, std::uint64_t replica) {
  cfg.validate();
  const RandomStream stream = RandomStream(cfg.master_seed).replica(replica);
  const SpectralFn f = cfg.test_function();
  const int n = cfg.n;
  const double gen_size = std::ldexp(1.0, n);
  const double size = cfg.target == Target::generation
                          ? gen_size
                          : static_cast<double>(TreeIndex::tree_size(n));

  auto aggregate = [&](const std::vector<double>& per_gen) {
    if (cfg.target == Target::generation) return per_gen[n];
    double s = 0.0;
    for (double v : per_gen) s += v;
    return s;
  };

  if (cfg.normalization == Normalization::mean) {
    const SpectralFn fs[] = {f};
    return aggregate(generation_sums(cfg.nu, cfg.params, n, stream, fs)[0]) / size;
  }

  const double a = cfg.params.a();
  const SpectralFn fs[] = {center(f)};
  const double m = aggregate(generation_sums(cfg.nu, cfg.params, n, stream, fs)[0]);
  switch (classify_regime(a).regime) {
    case Regime::subcritical: return m / std::sqrt(size);
    case Regime::critical: return m / std::sqrt(static_cast<double>(n) * size);
    case Regime::supercritical: return m / std::pow(2.0 * std::abs(a), n);
  }
  return m;
}

std::vector<double> replicate(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.normalization == Normalization::regime) cfg.params.a();
  std::vector<double> out(static_cast<std::size_t>(cfg.replicas), 0.0);
  parallel_for(out.size(), cfg.threads,
               [&](std::size_t r) { out[r] = replica_statistic(cfg, r); });
  return out;
}

}  // namespace bmc
