#pragma once

// Generation-by-generation simulation of a BAR process on the complete
// binary tree, plus the additive functionals built on it. Node (g, k) has
// children (g+1, 2k) and (g+1, 2k+1); generation g is stored in level order.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bmc/kernels.hpp"
#include "bmc/random.hpp"
#include "bmc/spectral.hpp"

namespace bmc {

inline constexpr int kMaxDepth = 22;

struct TreeIndex {
  std::uint32_t gen = 0;
  std::uint64_t pos = 0;

  static TreeIndex root() { return {}; }
  TreeIndex child(int side) const { return {gen + 1, 2 * pos + static_cast<std::uint64_t>(side)}; }
  TreeIndex parent() const { return {gen - 1, pos / 2}; }
  static std::uint64_t generation_size(std::uint32_t g) { return std::uint64_t{1} << g; }
  static std::uint64_t tree_size(std::uint32_t g) { return (std::uint64_t{2} << g) - 1; }
  friend bool operator==(const TreeIndex&, const TreeIndex&) = default;
};

struct GenerationBuffer {
  int gen = 0;
  std::vector<double> values;  // exactly 2^gen entries
};

enum class SeqShape { single, tree, custom };

// A sequence (f_0, f_1, ...) of test functions: (f, 0, 0, ...), (f, f, ...),
// or an explicit finite prefix followed by zeros.
class FunctionalSeq {
 public:
  static FunctionalSeq single(SpectralFn f);
  static FunctionalSeq tree(SpectralFn f);
  static FunctionalSeq custom(std::vector<SpectralFn> fs);

  SeqShape shape() const { return shape_; }
  std::span<const SpectralFn> funcs() const { return funcs_; }
  // f_ell, or nullptr where the sequence is zero.
  const SpectralFn* term(int ell) const;
  // Index into funcs() of f_ell, or -1 where the sequence is zero.
  int index_of(int ell) const;
  // Number of leading terms that can be nonzero; -1 for the infinite tree
  // shape.
  int support() const;

 private:
  SeqShape shape_ = SeqShape::single;
  std::vector<SpectralFn> funcs_;
};

struct InitialLaw {
  enum class Kind { dirac, stationary, gaussian };
  Kind kind = Kind::stationary;
  double x0 = 0.0;
  double mean = 0.0;
  double var = 1.0;

  static InitialLaw dirac(double x) { return {Kind::dirac, x, 0.0, 1.0}; }
  static InitialLaw stationary() { return {}; }
  // Throws ConfigError unless var > 0.
  static InitialLaw gaussian(double mean, double var);

  // Stationary draws need a0 = a1 and b0 = b1.
  double sample(const BarParams& params, RandomStream& rng) const;
};

using GenerationVisitor = std::function<void(const GenerationBuffer&)>;

// Memory estimate, in bytes, for full-mode storage up to depth n.
std::uint64_t full_tree_bytes(int n);

// All generations 0..n. Throws ResourceCap when n > kMaxDepth.
std::vector<GenerationBuffer> simulate(const InitialLaw& nu, const BarParams& params, int n,
                                       const RandomStream& stream);

// Keeps only the current generation and hands each one to visit, in order.
void simulate_streaming(const InitialLaw& nu, const BarParams& params, int n,
                        const RandomStream& stream, const GenerationVisitor& visit);

// Children of one generation; node streams are keyed by (gen, pos).
void next_generation(const GenerationBuffer& parent, const BarParams& params,
                     const RandomStream& stream, GenerationBuffer& child);

// M_A(f) over one generation, by pairwise summation.
double m_sum(const GenerationBuffer& buf, const SpectralFn& f);
double m_sum(std::span<const double> values, const SpectralFn& f);

// |G_n|^{-1/2} sum_{l=0}^{n} M_{G_{n-l}}(f_l - <mu, f_l>).
double n_statistic(std::span<const GenerationBuffer> gens, const FunctionalSeq& fseq, int n);

// sums[i][g] = M_{G_g}(fs[i]) for g = 0..n, computed in streaming mode.
std::vector<std::vector<double>> generation_sums(const InitialLaw& nu, const BarParams& params,
                                                 int n, const RandomStream& stream,
                                                 std::span<const SpectralFn> fs);

// Same statistic as n_statistic, from per-generation sums: sums_of(i, g)
// must return M_{G_g}(center(fseq.funcs()[i])).
double n_statistic_from_sums(const FunctionalSeq& fseq, int n,
                             const std::function<double(int, int)>& sums_of);

enum class Target { generation, tree };
enum class Normalization {
  regime,  // centered sum scaled per the regime of a (symmetric kernels)
  mean,    // |A_n|^{-1} M_{A_n}(f)
};

const char* to_string(Target t);

struct ExperimentConfig {
  BarParams params;
  InitialLaw nu;
  std::vector<double> f_poly{0.0, 1.0};  // monomial coefficients of f
  int n = 10;
  int replicas = 100;
  std::uint64_t master_seed = 1;
  Target target = Target::generation;
  Normalization normalization = Normalization::regime;
  int threads = 0;

  void validate() const;
  // f in the Hermite basis (scale sigma_a when symmetric, sigma otherwise).
  SpectralFn test_function() const;
};

// Statistic of one replica: for Normalization::regime,
//   sub:   |A_n|^{-1/2} M_{A_n}(f~)
//   crit:  (n |A_n|)^{-1/2} M_{A_n}(f~)
//   super: (2 alpha)^{-n} M_{A_n}(f~)
double replica_statistic(const ExperimentConfig& cfg, std::uint64_t replica);

// One statistic per replica, ordered by replica index.
std::vector<double> replicate(const ExperimentConfig& cfg);

}  // namespace bmc
