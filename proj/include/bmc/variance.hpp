#pragma once

// Limiting variances of N_{n,root}(f) for the symmetric BAR, evaluated as
// truncated spectral series with explicit geometric tail bounds, and the
// martingales driving the super-critical regime.

#include <span>
#include <vector>

#include "bmc/kernels.hpp"
#include "bmc/spectral.hpp"
#include "bmc/tree_sim.hpp"

namespace bmc {

struct Truncation {
  int k_max = 0;  // largest generation gap k - l kept (critical: largest k)
  int l_max = 0;  // largest l kept
  int r_max = 0;  // largest power of Q kept in the inner geometric sums
};

struct VarianceReport {
  double value = 0.0;  // sigma1 + 2 sigma2
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  Truncation truncation;
  double tail_bound = 0.0;  // |exact - value| <= tail_bound
  bool converged = true;    // tail_bound <= tol |value| was reached
  RegimeTag regime;
};

inline constexpr double kDefaultVarianceTol = 1e-10;

// Throws NumericRejection unless 2a^2 < 1.
VarianceReport sigma_sub(const BarSpectrum& q, const FunctionalSeq& fseq,
                         double tol = kDefaultVarianceTol);

// Throws NumericRejection unless 2a^2 = 1 (within kRegimeEps).
VarianceReport sigma_crit(const BarSpectrum& q, const FunctionalSeq& fseq,
                          double tol = kDefaultVarianceTol);

// M_n = (2a)^{-n} M_{G_n}(R f) for every available generation.
// Throws NumericRejection when a = 0.
std::vector<double> martingale_path(const BarSpectrum& q, const SpectralFn& f,
                                    std::span<const GenerationBuffer> gens);
// Same, from r_sums[g] = M_{G_g}(R f).
std::vector<double> martingale_path_from_sums(const BarSpectrum& q,
                                              std::span<const double> r_sums);

struct SupercriticalLimits {
  double generation = 0.0;  // (2 alpha)^{-n} M_{G_n}(f~)
  double tree = 0.0;        // (2 alpha)^{-n} M_{T_n}(f~)
};

// At the deepest available generation. Throws NumericRejection unless
// 2a^2 > 1 and a > 0.
SupercriticalLimits supercritical_limits(const BarSpectrum& q, const SpectralFn& f,
                                         std::span<const GenerationBuffer> gens);
// Same, from centered_sums[g] = M_{G_g}(f~).
SupercriticalLimits supercritical_limits_from_sums(const BarSpectrum& q,
                                                   std::span<const double> centered_sums);

}  // namespace bmc
