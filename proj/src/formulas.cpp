#include "formulas.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "parallel.hpp"
#include "power.hpp"

namespace qcoh {

namespace {

// t log2(t) with the 0 log 0 = 0 convention (exact zero only).
double xlog(double t) {
  if (t == 0.0) return 0.0;
  return t * std::log2(t);
}

// coeff * log2(arg); a term whose coefficient is exactly 0 contributes 0, and
// a non-positive argument under a nonzero coefficient marks the whole
// expression divergent.
std::optional<double> clog(double coeff, double arg) {
  if (coeff == 0.0) return 0.0;
  if (arg <= 0.0) return std::nullopt;
  return coeff * std::log2(arg);
}

// Relative-entropy coherence of a Bell-diagonal state straight from its
// coefficients: diagonal entropy of the (1 +- c3)/4 pattern minus the
// entropy of the (1 -+ c1 -+ c2 -+ c3)/4 eigenvalues.
double bell_re_from_coeffs(const BellDiagonalParams& c) {
  const double diag[4] = {(1 + c.c3) / 4, (1 - c.c3) / 4, (1 - c.c3) / 4,
                          (1 + c.c3) / 4};
  const double eigs[4] = {
      (1 - c.c1 - c.c2 - c.c3) / 4, (1 - c.c1 + c.c2 + c.c3) / 4,
      (1 + c.c1 - c.c2 + c.c3) / 4, (1 + c.c1 + c.c2 - c.c3) / 4};
  double s = 0.0;
  for (double x : eigs) s += xlog(std::max(x, 0.0));
  for (double x : diag) s -= xlog(std::max(x, 0.0));
  return s;
}

}  // namespace

std::array<FormulaId, kFormulaCount> all_formulas() {
  std::array<FormulaId, kFormulaCount> ids{};
  for (int i = 0; i < kFormulaCount; ++i) ids[static_cast<std::size_t>(i)] = static_cast<FormulaId>(i);
  return ids;
}

const char* formula_name(FormulaId id) {
  switch (id) {
    case FormulaId::AdCoeffs: return "ad-coeffs";
    case FormulaId::AdL1: return "ad-l1";
    case FormulaId::AdL1Limit: return "ad-l1-limit";
    case FormulaId::AdReLimit: return "ad-re-limit";
    case FormulaId::PdCoeffs: return "pd-coeffs";
    case FormulaId::PdL1: return "pd-l1";
    case FormulaId::PdRe: return "pd-re";
    case FormulaId::PdL1Limit: return "pd-l1-limit";
    case FormulaId::PdReLimit: return "pd-re-limit";
    case FormulaId::DepCoeffs: return "dep-coeffs";
    case FormulaId::DepL1: return "dep-l1";
    case FormulaId::DepRe: return "dep-re";
    case FormulaId::DpAdL1: return "dp-ad-l1";
    case FormulaId::DpPdL1: return "dp-pd-l1";
    case FormulaId::DpPdRe: return "dp-pd-re";
    case FormulaId::DpDepL1: return "dp-dep-l1";
    case FormulaId::DpDepRe: return "dp-dep-re";
  }
  return "?";
}

std::optional<FormulaId> formula_from_name(std::string_view name) {
  for (FormulaId id : all_formulas())
    if (name == formula_name(id)) return id;
  return std::nullopt;
}

ChannelKind formula_channel(FormulaId id) {
  switch (id) {
    case FormulaId::AdCoeffs:
    case FormulaId::AdL1:
    case FormulaId::AdL1Limit:
    case FormulaId::AdReLimit:
    case FormulaId::DpAdL1:
      return ChannelKind::AmplitudeDamping;
    case FormulaId::PdCoeffs:
    case FormulaId::PdL1:
    case FormulaId::PdRe:
    case FormulaId::PdL1Limit:
    case FormulaId::PdReLimit:
    case FormulaId::DpPdL1:
    case FormulaId::DpPdRe:
      return ChannelKind::PhaseDamping;
    default:
      return ChannelKind::Depolarizing;
  }
}

// ---- amplitude damping ------------------------------------------------------

double ad_a3_printed(double p, double mu, double c3) {
  return 0.5 * (-2.0 - mu * (1.0 - c3)) * p;
}

double ad_a3_corrected(double p, double mu, double c3) {
  return 0.5 * (-2.0 + mu * (1.0 - c3)) * p;
}

CorrelationCoefficients ad_coeffs_printed(double p, double mu,
                                          const BellDiagonalParams& c) {
  const double mu0 = (1.0 - std::sqrt(1.0 - p)) * mu;
  CorrelationCoefficients out;
  out.c1 = 0.5 * (c.c2 * mu0 + c.c1 * (2.0 - 2.0 * p * (1.0 - mu) - mu0));
  out.c2 = 0.5 * (c.c1 * mu0 + c.c2 * (2.0 - 2.0 * p * (1.0 - mu) - mu0));
  out.c3 = c.c3 * (1.0 - (2.0 - p) * p * (1.0 - mu)) + p * p * (1.0 - mu);
  out.a3 = ad_a3_printed(p, mu, c.c3);
  out.b3 = out.a3;
  return out;
}

double ad_l1_formula(double p, double mu, const BellDiagonalParams& c) {
  return 0.5 * (std::abs(c.c1 - c.c2) *
                    (1.0 - p * (1.0 - mu) - (1.0 - std::sqrt(1.0 - p)) * mu) +
                std::abs(c.c1 + c.c2) * (1.0 - p * (1.0 - mu)));
}

double ad_l1_limit_formula(double mu, const BellDiagonalParams& c) {
  return 0.5 * std::abs(c.c1 + c.c2) * mu;
}

double ad_re_limit_formula(double mu, const BellDiagonalParams& c) {
  return 0.25 * (xlog(mu * (1.0 + c.c1 + c.c2 - c.c3)) +
                 xlog(mu * (1.0 - c.c1 - c.c2 - c.c3)) -
                 2.0 * xlog(mu * (1.0 - c.c3)));
}

// ---- phase damping ----------------------------------------------------------

BellDiagonalParams pd_coeffs_formula(double p, double mu,
                                     const BellDiagonalParams& c) {
  const double f = 1.0 + (p - 2.0) * p * (1.0 - mu);
  return {c.c1 * f, c.c2 * f, c.c3};
}

double pd_l1_formula(double p, double mu, const BellDiagonalParams& c) {
  return 0.5 * (std::abs(c.c1 - c.c2) + std::abs(c.c1 + c.c2)) *
         (1.0 - (2.0 - p) * p * (1.0 - mu));
}

double pd_re_formula(double p, double mu, const BellDiagonalParams& c) {
  return bell_re_from_coeffs(pd_coeffs_formula(p, mu, c));
}

double pd_l1_limit_formula(double mu, const BellDiagonalParams& c) {
  return 0.5 * mu * (std::abs(c.c1 + c.c2) + std::abs(c.c1 - c.c2));
}

double pd_re_limit_formula(double mu, const BellDiagonalParams& c) {
  // As printed: the same mu(c1 - c2) combination enters all four
  // eigenvalue-like terms.
  const double d = mu * (c.c1 - c.c2);
  const double t[4] = {d + 1.0 + c.c3, -d + 1.0 + c.c3, -d + 1.0 - c.c3,
                       d + 1.0 - c.c3};
  // Diagonal part; coefficients vanish exactly at c3 = +-1, where the
  // 0 log 0 convention applies.
  double s = clog(2.0 * (c.c3 - 1.0), (1.0 - c.c3) / 4.0).value_or(0.0) -
             clog(2.0 * (1.0 + c.c3), (1.0 + c.c3) / 4.0).value_or(0.0);
  for (double x : t) s += 4.0 * xlog(std::max(x, 0.0) / 4.0);
  return 0.25 * s;
}

// ---- depolarizing -----------------------------------------------------------

BellDiagonalParams dep_coeffs_formula(double p, double mu,
                                      const BellDiagonalParams& c) {
  const double f = (9.0 + 8.0 * p * (2.0 * p - 3.0) * (1.0 - mu)) / 9.0;
  return {c.c1 * f, c.c2 * f, c.c3 * f};
}

double dep_l1_formula(double p, double mu, const BellDiagonalParams& c) {
  return (std::abs(c.c1 - c.c2) + std::abs(c.c1 + c.c2)) *
         (9.0 * mu + (3.0 - 4.0 * p) * (3.0 - 4.0 * p) * (1.0 - mu)) / 18.0;
}

double dep_re_formula(double p, double mu, const BellDiagonalParams& c) {
  return bell_re_from_coeffs(dep_coeffs_formula(p, mu, c));
}

// ---- decohering powers --------------------------------------------------------

std::optional<double> dp_ad_l1_formula(double p, double mu) {
  const double s = std::sqrt(1.0 - p);
  return 3.0 - 0.5 * (2.0 + 3.0 * s - (2.0 + s) * p * (1.0 - mu) + mu);
}

std::optional<double> dp_pd_l1_formula(double p, double mu) {
  return 3.0 - (1.0 - p * p * (1.0 - mu) - 2.0 * p * mu);
}

std::optional<double> dp_pd_re_formula(double p, double mu) {
  const auto t1 = clog((p - 2.0) * (2.0 - p + p * mu),
                       0.25 * (2.0 - p) * (2.0 - p + p * mu));
  const auto t2 =
      clog((p - 2.0) * 2.0 * p * (1.0 - mu), 0.25 * (2.0 - p) * p * (1.0 - mu));
  const auto t3 = clog(-(p * p * (1.0 - mu) + 2.0 * mu),
                       0.25 * p * (p + 2.0 * mu - p * mu));
  if (!t1 || !t2 || !t3) return std::nullopt;
  return 0.25 * (*t1 + *t2 + *t3);
}

std::optional<double> dp_dep_l1_formula(double p, double mu) {
  return 3.0 -
         (9.0 - 4.0 * (3.0 - p) * p * (1.0 - mu) +
          3.0 * (std::abs(3.0 - 4.0 * p) +
                 std::abs(3.0 - 4.0 * p * (2.0 - p - mu + p * mu)))) /
             9.0;
}

std::optional<double> dp_dep_re_formula(double p, double mu) {
  const auto t1 =
      clog(2.0 * p * (p - p * mu - 3.0), p * (3.0 - p * (1.0 - mu)) / 9.0);
  const auto t2 = clog(-(3.0 - 2.0 * p) * (3.0 - 2.0 * p + 2.0 * p * mu),
                       (3.0 - 2.0 * p) * (3.0 - 2.0 * p + 2.0 * p * mu) / 9.0);
  if (!t1 || !t2) return std::nullopt;
  double t3 = 0.0;
  const double c3 = 2.0 * p * (1.0 - mu) * (3.0 - 2.0 * p);
  if (c3 != 0.0) {
    const double arg = p * (3.0 - 2.0 * p) * (1.0 - mu);
    if (arg <= 0.0) return std::nullopt;
    t3 = c3 * (std::log2(4.5) - std::log2(arg));
  }
  double t4 = 0.0;
  const double c4 = 2.0 * p * (1.0 - mu) * p;
  if (c4 != 0.0) {
    const double arg = (2.0 / 9.0) * p * p * (1.0 - mu);
    if (arg <= 0.0) return std::nullopt;
    t4 = -c4 * std::log2(arg);
  }
  return (*t1 + *t2 + t3 + t4) / 9.0;
}

ClosedFormResult decohering_closed_form(ChannelKind kind, MeasureKind measure,
                                        double p, double mu) {
  if (!(p >= 0.0 && p <= 1.0) || !(mu >= 0.0 && mu <= 1.0))
    throw std::invalid_argument(
        "decohering_closed_form: p and mu must be in [0,1]");
  std::optional<double> v;
  switch (kind) {
    case ChannelKind::AmplitudeDamping:
      if (measure == MeasureKind::RelativeEntropy) return {};  // no printed form
      v = dp_ad_l1_formula(p, mu);
      break;
    case ChannelKind::PhaseDamping:
      v = measure == MeasureKind::L1Norm ? dp_pd_l1_formula(p, mu)
                                         : dp_pd_re_formula(p, mu);
      break;
    case ChannelKind::Depolarizing:
      v = measure == MeasureKind::L1Norm ? dp_dep_l1_formula(p, mu)
                                         : dp_dep_re_formula(p, mu);
      break;
  }
  ClosedFormResult r;
  r.available = true;
  if (v) {
    r.value = *v;
  } else {
    r.divergent = true;
  }
  return r;
}

// ---- cross-validation -----------------------------------------------------

namespace {

double numeric_coherence(ChannelKind kind, double p, double mu,
                         const BellDiagonalParams& c, MeasureKind measure,
                         bool literal) {
  return coherence(apply(build_channel(kind, p, mu, literal), bell_diagonal(c)),
                   measure);
}

double coeff_deviation(ChannelKind kind, double p, double mu,
                       const BellDiagonalParams& c, bool literal) {
  const CorrelationCoefficients m = extract_correlation_coeffs(
      apply(build_channel(kind, p, mu, literal), bell_diagonal(c)));
  if (kind == ChannelKind::AmplitudeDamping) {
    const CorrelationCoefficients f = ad_coeffs_printed(p, mu, c);
    double d = 0.0;
    d = std::max(d, std::abs(m.c1 - f.c1));
    d = std::max(d, std::abs(m.c2 - f.c2));
    d = std::max(d, std::abs(m.c3 - f.c3));
    d = std::max(d, std::abs(m.a3 - f.a3));
    d = std::max(d, std::abs(m.b3 - f.b3));
    return d;
  }
  const BellDiagonalParams f = kind == ChannelKind::PhaseDamping
                                   ? pd_coeffs_formula(p, mu, c)
                                   : dep_coeffs_formula(p, mu, c);
  double d = 0.0;
  d = std::max(d, std::abs(m.c1 - f.c1));
  d = std::max(d, std::abs(m.c2 - f.c2));
  d = std::max(d, std::abs(m.c3 - f.c3));
  d = std::max(d, std::abs(m.a3));
  d = std::max(d, std::abs(m.b3));
  return d;
}

double numeric_decohering(ChannelKind kind, double p, double mu,
                          MeasureKind measure, bool literal) {
  return decohering_power(build_channel(kind, p, mu, literal), measure).value;
}

enum class GridShape { PMu, MuAtP1, DecoherPMu };

struct ValidationPlan {
  GridShape shape;
  // Absolute formula-vs-machinery deviation at a grid point; nullopt marks a
  // divergent point (excluded from the maximum, counted separately).
  std::function<std::optional<double>(double p, double mu)> deviation;
};

ValidationPlan plan_for(FormulaId id, const CrossValidateOptions& opt) {
  const BellDiagonalParams c = opt.c;
  const bool lit = opt.literal_text_probs;
  const auto coh = [c, lit](ChannelKind kind, MeasureKind m, double p,
                            double mu) {
    return numeric_coherence(kind, p, mu, c, m, lit);
  };
  using CK = ChannelKind;
  using MK = MeasureKind;
  switch (id) {
    case FormulaId::AdCoeffs:
      return {GridShape::PMu, [c, lit](double p, double mu) {
                return coeff_deviation(CK::AmplitudeDamping, p, mu, c, lit);
              }};
    case FormulaId::AdL1:
      return {GridShape::PMu, [c, coh](double p, double mu) {
                return std::abs(ad_l1_formula(p, mu, c) -
                                coh(CK::AmplitudeDamping, MK::L1Norm, p, mu));
              }};
    case FormulaId::AdL1Limit:
      return {GridShape::MuAtP1, [c, coh](double, double mu) {
                return std::abs(ad_l1_limit_formula(mu, c) -
                                coh(CK::AmplitudeDamping, MK::L1Norm, 1.0, mu));
              }};
    case FormulaId::AdReLimit:
      return {GridShape::MuAtP1, [c, coh](double, double mu) {
                return std::abs(
                    ad_re_limit_formula(mu, c) -
                    coh(CK::AmplitudeDamping, MK::RelativeEntropy, 1.0, mu));
              }};
    case FormulaId::PdCoeffs:
      return {GridShape::PMu, [c, lit](double p, double mu) {
                return coeff_deviation(CK::PhaseDamping, p, mu, c, lit);
              }};
    case FormulaId::PdL1:
      return {GridShape::PMu, [c, coh](double p, double mu) {
                return std::abs(pd_l1_formula(p, mu, c) -
                                coh(CK::PhaseDamping, MK::L1Norm, p, mu));
              }};
    case FormulaId::PdRe:
      return {GridShape::PMu, [c, coh](double p, double mu) {
                return std::abs(
                    pd_re_formula(p, mu, c) -
                    coh(CK::PhaseDamping, MK::RelativeEntropy, p, mu));
              }};
    case FormulaId::PdL1Limit:
      return {GridShape::MuAtP1, [c, coh](double, double mu) {
                return std::abs(pd_l1_limit_formula(mu, c) -
                                coh(CK::PhaseDamping, MK::L1Norm, 1.0, mu));
              }};
    case FormulaId::PdReLimit:
      return {GridShape::MuAtP1, [c, coh](double, double mu) {
                return std::abs(
                    pd_re_limit_formula(mu, c) -
                    coh(CK::PhaseDamping, MK::RelativeEntropy, 1.0, mu));
              }};
    case FormulaId::DepCoeffs:
      return {GridShape::PMu, [c, lit](double p, double mu) {
                return coeff_deviation(CK::Depolarizing, p, mu, c, lit);
              }};
    case FormulaId::DepL1:
      return {GridShape::PMu, [c, coh](double p, double mu) {
                return std::abs(dep_l1_formula(p, mu, c) -
                                coh(CK::Depolarizing, MK::L1Norm, p, mu));
              }};
    case FormulaId::DepRe:
      return {GridShape::PMu, [c, coh](double p, double mu) {
                return std::abs(
                    dep_re_formula(p, mu, c) -
                    coh(CK::Depolarizing, MK::RelativeEntropy, p, mu));
              }};
    case FormulaId::DpAdL1:
      return {GridShape::DecoherPMu, [lit](double p, double mu) {
                return std::abs(
                    *dp_ad_l1_formula(p, mu) -
                    numeric_decohering(CK::AmplitudeDamping, p, mu, MK::L1Norm,
                                       lit));
              }};
    case FormulaId::DpPdL1:
      return {GridShape::DecoherPMu, [lit](double p, double mu) {
                return std::abs(*dp_pd_l1_formula(p, mu) -
                                numeric_decohering(CK::PhaseDamping, p, mu,
                                                   MK::L1Norm, lit));
              }};
    case FormulaId::DpPdRe:
      return {GridShape::DecoherPMu,
              [lit](double p, double mu) -> std::optional<double> {
                const auto f = dp_pd_re_formula(p, mu);
                if (!f) return std::nullopt;
                return std::abs(*f - numeric_decohering(CK::PhaseDamping, p, mu,
                                                        MK::RelativeEntropy,
                                                        lit));
              }};
    case FormulaId::DpDepL1:
      return {GridShape::DecoherPMu, [lit](double p, double mu) {
                return std::abs(*dp_dep_l1_formula(p, mu) -
                                numeric_decohering(CK::Depolarizing, p, mu,
                                                   MK::L1Norm, lit));
              }};
    case FormulaId::DpDepRe:
      return {GridShape::DecoherPMu,
              [lit](double p, double mu) -> std::optional<double> {
                const auto f = dp_dep_re_formula(p, mu);
                if (!f) return std::nullopt;
                return std::abs(*f - numeric_decohering(CK::Depolarizing, p, mu,
                                                        MK::RelativeEntropy,
                                                        lit));
              }};
  }
  throw std::invalid_argument("cross_validate: unknown formula id");
}

}  // namespace

DiscrepancyReport cross_validate(FormulaId id, const CrossValidateOptions& opt) {
  if (opt.grid_n < 11)
    throw std::invalid_argument("cross_validate: grid_n must be >= 11");
  if (opt.dp_grid_n < 2)
    throw std::invalid_argument("cross_validate: dp_grid_n must be >= 2");
  bell_diagonal(opt.c);  // validates the input state

  const ValidationPlan plan = plan_for(id, opt);

  std::vector<std::pair<double, double>> points;  // (p, mu), row-major in p
  DiscrepancyReport rep;
  rep.id = id;
  if (plan.shape == GridShape::MuAtP1) {
    const int n = opt.grid_n;
    rep.grid = "mu-" + std::to_string(n) + "@p=1";
    points.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      points.emplace_back(1.0, static_cast<double>(j) / (n - 1));
  } else {
    const int n =
        plan.shape == GridShape::DecoherPMu ? opt.dp_grid_n : opt.grid_n;
    rep.grid = std::to_string(n) + "x" + std::to_string(n);
    points.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        points.emplace_back(static_cast<double>(i) / (n - 1),
                            static_cast<double>(j) / (n - 1));
  }

  std::vector<std::optional<double>> devs(points.size());
  parallel_for(points.size(), opt.workers, [&](std::size_t i) {
    devs[i] = plan.deviation(points[i].first, points[i].second);
  });

  double best = -1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!devs[i]) {
      ++rep.divergent_points;
      continue;
    }
    if (*devs[i] > best) {
      best = *devs[i];
      rep.at_p = points[i].first;
      rep.at_mu = points[i].second;
    }
  }
  rep.max_abs_deviation = std::max(best, 0.0);
  rep.match = rep.max_abs_deviation <= kMatchTol;
  return rep;
}

std::vector<DiscrepancyReport> cross_validate_all(
    const CrossValidateOptions& opt) {
  std::vector<DiscrepancyReport> out;
  out.reserve(kFormulaCount);
  for (FormulaId id : all_formulas()) out.push_back(cross_validate(id, opt));
  return out;
}

std::vector<FormulaId> documented_errata() {
  return {FormulaId::AdCoeffs, FormulaId::PdReLimit, FormulaId::DpAdL1,
          FormulaId::DpPdL1,   FormulaId::DpPdRe,    FormulaId::DpDepL1,
          FormulaId::DpDepRe};
}

AdSignFit ad_sign_fit(const CrossValidateOptions& opt) {
  if (opt.grid_n < 11)
    throw std::invalid_argument("ad_sign_fit: grid_n must be >= 11");
  AdSignFit fit;
  const int n = opt.grid_n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double p = static_cast<double>(i) / (n - 1);
      const double mu = static_cast<double>(j) / (n - 1);
      const CorrelationCoefficients m = extract_correlation_coeffs(apply(
          build_channel(ChannelKind::AmplitudeDamping, p, mu), bell_diagonal(opt.c)));
      const double printed = ad_a3_printed(p, mu, opt.c.c3);
      const double corrected = ad_a3_corrected(p, mu, opt.c.c3);
      fit.printed_residual =
          std::max({fit.printed_residual, std::abs(m.a3 - printed),
                    std::abs(m.b3 - printed)});
      fit.corrected_residual =
          std::max({fit.corrected_residual, std::abs(m.a3 - corrected),
                    std::abs(m.b3 - corrected)});
      // Duplicate reading: both printed terms multiply s3(x)I, leaving the
      // I(x)s3 coefficient at 0.
      fit.corrected_dup_residual =
          std::max({fit.corrected_dup_residual,
                    std::abs(m.a3 - 2.0 * corrected), std::abs(m.b3)});
    }
  }
  fit.corrected_fits =
      fit.corrected_residual <= 1e-10 && fit.printed_residual >= 0.1;
  return fit;
}

}  // namespace qcoh
