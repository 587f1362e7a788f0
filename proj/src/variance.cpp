#include "bmc/variance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bmc/errors.hpp"

namespace bmc {

namespace {

constexpr int kMaxPower = 1 << 15;
constexpr int kMaxL = 256;
constexpr int kMaxGap = 1 << 12;

struct SubTerms {
  double s1 = 0.0;
  double s2 = 0.0;
  double tail_r = 0.0;  // from truncating the powers of Q
  double tail_l = 0.0;  // from truncating l (tree shape only)
  double tail_d = 0.0;  // from truncating k - l (tree shape only)
};

// Sums over l < l_count, 1 <= k - l <= gap (or up to the finite support),
// powers of Q up to r_max.
SubTerms sub_series(const BarSpectrum& q, const FunctionalSeq& fseq,
                    const std::vector<SpectralFn>& ft, double lam, int l_count,
                    int gap, int r_max) {
  SubTerms t;
  const int support = fseq.support();
  const bool finite = support >= 0;
  const double lam2 = lam * lam;
  // sum_{k > r_max} 2^k lam^{2k+2}
  const double g_tail = lam2 * std::pow(2.0 * lam2, r_max + 1) / (1.0 - 2.0 * lam2);

  for (int ell = 0; ell < l_count; ++ell) {
    const int i = fseq.index_of(ell);
    if (i < 0) continue;
    const SpectralFn& fl = ft[i];
    const double w = std::ldexp(1.0, -ell);
    const double nl = std::sqrt(fl.norm_sq());
    t.s1 += w * fl.norm_sq();
    for (int k = 0; k <= r_max; ++k) {
      t.s1 += std::ldexp(w, k) * q.mu_inner_q(fl, k + 1, fl, k + 1);
    }
    t.tail_r += w * nl * nl * g_tail;

    const int dmax = finite ? support - 1 - ell : gap;
    for (int d = 1; d <= dmax; ++d) {
      const int j = fseq.index_of(ell + d);
      if (j < 0) continue;
      const SpectralFn& fk = ft[j];
      double inner = q.mu_inner_q(fk, 0, fl, d);
      for (int r = 0; r <= r_max; ++r) {
        inner += std::ldexp(1.0, r) * q.mu_inner_q(fk, r + 1, fl, d + r + 1);
      }
      t.s2 += w * inner;
      t.tail_r += 2.0 * w * std::pow(lam, d) * std::sqrt(fk.norm_sq()) * nl * g_tail;
    }
  }

  if (!finite) {
    // Every f_l equals f, so ||f_l|| = ||f|| throughout.
    const double f2 = ft[0].norm_sq();
    const double s_r = lam2 / (1.0 - 2.0 * lam2);
    const double s_d = lam / (1.0 - lam);
    const double beyond_l = std::ldexp(1.0, -(l_count - 1));  // sum_{l >= l_count} 2^{-l}
    t.tail_l = beyond_l * f2 * (1.0 + s_r) + 2.0 * beyond_l * f2 * s_d * (1.0 + s_r);
    t.tail_d = 2.0 * 2.0 * f2 * std::pow(lam, gap + 1) / (1.0 - lam) * (1.0 + s_r);
  }
  return t;
}

}  // namespace

VarianceReport sigma_sub(const BarSpectrum& q, const FunctionalSeq& fseq, double tol) {
  VarianceReport rep;
  rep.regime = classify_regime(q.a());
  if (rep.regime.regime != Regime::subcritical) {
    throw NumericRejection(std::string("sigma_sub needs the subcritical regime 2a^2 < 1; a = ") +
                           std::to_string(q.a()) + " is " + to_string(rep.regime.regime) +
                           " (use sigma_crit or the martingale limits)");
  }
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");

  std::vector<SpectralFn> ft;
  int m = -1;
  for (const auto& f : fseq.funcs()) {
    ft.push_back(center(f));
    const int mi = ft.back().min_nonconstant_index();
    if (mi > 0) m = m < 0 ? mi : std::min(m, mi);
  }
  if (m < 0) return rep;  // every centered term vanishes
  const double lam = std::pow(std::abs(q.a()), m);

  const bool finite = fseq.support() >= 0;
  int l_count = finite ? fseq.support() : 16;
  int gap = 16;
  int r_max = 16;
  for (;;) {
    const SubTerms t = sub_series(q, fseq, ft, lam, l_count, gap, r_max);
    rep.sigma1 = t.s1;
    rep.sigma2 = t.s2;
    rep.value = t.s1 + 2.0 * t.s2;
    rep.tail_bound = t.tail_r + t.tail_l + t.tail_d;
    rep.truncation = {finite ? std::max(0, l_count - 1) : gap, l_count - 1, r_max};
    const double budget = tol * std::abs(rep.value) / 3.0;
    if (rep.tail_bound <= tol * std::abs(rep.value)) break;
    bool grew = false;
    if (t.tail_r > budget && r_max < kMaxPower) {
      r_max *= 2;
      grew = true;
    }
    if (!finite && t.tail_l > budget && l_count <= kMaxL) {
      l_count *= 2;
      grew = true;
    }
    if (!finite && t.tail_d > budget && gap < kMaxGap) {
      gap *= 2;
      grew = true;
    }
    if (!grew) {
      rep.converged = false;
      break;
    }
  }
  return rep;
}

VarianceReport sigma_crit(const BarSpectrum& q, const FunctionalSeq& fseq, double tol) {
  VarianceReport rep;
  rep.regime = classify_regime(q.a());
  if (rep.regime.regime != Regime::critical) {
    throw NumericRejection(std::string("sigma_crit needs the critical regime 2a^2 = 1; a = ") +
                           std::to_string(q.a()) + " is " + to_string(rep.regime.regime));
  }
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");

  std::vector<SpectralFn> rf;
  double fr2 = 0.0;
  for (const auto& f : fseq.funcs()) {
    rf.push_back(project_r(f));
    fr2 = std::max(fr2, rf.back().norm_sq());
  }
  const SpectralFn one = SpectralFn::constant(1.0, q.sigma_a());
  auto p_term = [&](const SpectralFn& u, const SpectralFn& v) {
    return mu_inner(one, q.p_apply(u, v));
  };

  const int support = fseq.support();
  const bool finite = support >= 0;
  const double s = std::sqrt(0.5);
  const double bound = q.a() * q.a() * fr2;
  int k_count = finite ? support : 32;
  for (;;) {
    double s1 = 0.0;
    double s2 = 0.0;
    for (int k = 0; k < k_count; ++k) {
      const int i = fseq.index_of(k);
      if (i < 0) continue;
      s1 += std::ldexp(1.0, -k) * p_term(rf[i], rf[i]);
      for (int ell = 0; ell < k; ++ell) {
        const int j = fseq.index_of(ell);
        if (j < 0) continue;
        s2 += std::pow(2.0, -0.5 * (k + ell)) * p_term(rf[i], rf[j]);
      }
    }
    rep.sigma1 = s1;
    rep.sigma2 = s2;
    rep.value = s1 + 2.0 * s2;
    rep.truncation = {k_count - 1, k_count - 1, 0};
    rep.tail_bound =
        finite ? 0.0
               : bound * (std::ldexp(1.0, 1 - k_count) +
                          2.0 * std::pow(s, k_count) / ((1.0 - s) * (1.0 - s)));
    if (rep.tail_bound <= tol * std::abs(rep.value)) break;
    if (k_count >= 1 << 12) {
      rep.converged = false;
      break;
    }
    k_count *= 2;
  }
  return rep;
}

std::vector<double> martingale_path_from_sums(const BarSpectrum& q,
                                              std::span<const double> r_sums) {
  if (q.a() == 0.0) throw NumericRejection("martingale needs a nonzero eigenvalue a");
  std::vector<double> path(r_sums.size());
  for (std::size_t n = 0; n < r_sums.size(); ++n) {
    path[n] = r_sums[n] / std::pow(2.0 * q.a(), static_cast<double>(n));
  }
  return path;
}

std::vector<double> martingale_path(const BarSpectrum& q, const SpectralFn& f,
                                    std::span<const GenerationBuffer> gens) {
  if (q.a() == 0.0) throw NumericRejection("martingale needs a nonzero eigenvalue a");
  const SpectralFn rf = project_r(f);
  std::vector<double> sums;
  sums.reserve(gens.size());
  for (const auto& g : gens) sums.push_back(m_sum(g, rf));
  return martingale_path_from_sums(q, sums);
}

SupercriticalLimits supercritical_limits_from_sums(const BarSpectrum& q,
                                                   std::span<const double> centered_sums) {
  const RegimeTag tag = classify_regime(q.a());
  if (tag.regime != Regime::supercritical) {
    throw NumericRejection(std::string("supercritical limits need 2a^2 > 1; regime is ") +
                           to_string(tag.regime));
  }
  if (q.a() < 0.0) {
    throw NumericRejection("supercritical limits need the positive eigenvalue a = alpha");
  }
  if (centered_sums.empty()) throw ConfigError("no generations available");
  const int n = static_cast<int>(centered_sums.size()) - 1;
  const double scale = std::pow(2.0 * tag.alpha, n);
  double tree = 0.0;
  for (double v : centered_sums) tree += v;
  return {centered_sums[n] / scale, tree / scale};
}

SupercriticalLimits supercritical_limits(const BarSpectrum& q, const SpectralFn& f,
                                         std::span<const GenerationBuffer> gens) {
  const SpectralFn ft = center(f);
  std::vector<double> sums;
  sums.reserve(gens.size());
  for (const auto& g : gens) sums.push_back(m_sum(g, ft));
  return supercritical_limits_from_sums(q, sums);
}

}  // namespace bmc
