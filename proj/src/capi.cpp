// C interface: opaque handles over the core types, exception-to-status
// mapping, and the assembled sweep/verification reports.
#include "qcoh/qcoh.h"

#include <algorithm>
#include <cstring>
#include <iomanip>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "channels.hpp"
#include "errors.hpp"
#include "formulas.hpp"
#include "measures.hpp"
#include "power.hpp"
#include "states.hpp"
#include "sweep.hpp"

struct qcoh_state {
  qcoh::DensityMatrix rho;
};

struct qcoh_channel {
  qcoh::MemoryChannel ch;
};

namespace {

thread_local std::string t_last_error;

qcoh_status fail(qcoh_status st, const char* msg) {
  t_last_error = msg;
  return st;
}

template <typename Fn>
qcoh_status wrap(Fn&& fn) {
  try {
    fn();
    return QCOH_OK;
  } catch (const qcoh::NotHermitianError& e) {
    t_last_error = e.what();
    return QCOH_ERROR_NOT_HERMITIAN;
  } catch (const qcoh::NoConvergenceError& e) {
    t_last_error = e.what();
    return QCOH_ERROR_NO_CONVERGENCE;
  } catch (const qcoh::InvalidStateError& e) {
    t_last_error = e.what();
    return QCOH_ERROR_INVALID_STATE;
  } catch (const std::invalid_argument& e) {
    t_last_error = e.what();
    return QCOH_ERROR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return QCOH_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return QCOH_ERROR_INTERNAL;
  }
}

qcoh::ChannelKind to_kind(qcoh_channel_kind kind) {
  switch (kind) {
    case QCOH_CHANNEL_AMPLITUDE_DAMPING: return qcoh::ChannelKind::AmplitudeDamping;
    case QCOH_CHANNEL_PHASE_DAMPING: return qcoh::ChannelKind::PhaseDamping;
    case QCOH_CHANNEL_DEPOLARIZING: return qcoh::ChannelKind::Depolarizing;
  }
  throw std::invalid_argument("unknown channel kind");
}

qcoh::MeasureKind to_measure(qcoh_measure_kind measure) {
  switch (measure) {
    case QCOH_MEASURE_L1: return qcoh::MeasureKind::L1Norm;
    case QCOH_MEASURE_RELATIVE_ENTROPY: return qcoh::MeasureKind::RelativeEntropy;
  }
  throw std::invalid_argument("unknown measure kind");
}

char* copy_out(const std::string& s) {
  char* buf = new char[s.size() + 1];
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return buf;
}

std::string verify_csv(const std::vector<qcoh::DiscrepancyReport>& reports) {
  std::string csv =
      "formula,channel,grid,max_abs_deviation,at_p,at_mu,divergent_points,"
      "verdict\n";
  for (const auto& r : reports) {
    csv += qcoh::formula_name(r.id);
    csv += ',';
    csv += qcoh::channel_name(qcoh::formula_channel(r.id));
    csv += ',';
    csv += r.grid;
    csv += ',';
    csv += qcoh::format_double(r.max_abs_deviation);
    csv += ',';
    csv += qcoh::format_double(r.at_p);
    csv += ',';
    csv += qcoh::format_double(r.at_mu);
    csv += ',';
    csv += std::to_string(r.divergent_points);
    csv += ',';
    csv += r.match ? "MATCH" : "MISMATCH";
    csv += '\n';
  }
  return csv;
}

std::string verify_text(const std::vector<qcoh::DiscrepancyReport>& reports,
                        const qcoh::CrossValidateOptions& cv, bool include_ad,
                        bool mismatch_changed) {
  std::ostringstream os;
  os << "closed-form verification  state c=(" << qcoh::format_double(cv.c.c1)
     << "," << qcoh::format_double(cv.c.c2) << ","
     << qcoh::format_double(cv.c.c3) << ")  grid " << cv.grid_n << "x"
     << cv.grid_n << "  power grid " << cv.dp_grid_n << "x" << cv.dp_grid_n;
  if (cv.literal_text_probs) os << "  [literal-text probabilities, q=p]";
  os << "\n";
  for (const auto& r : reports) {
    os << "  " << std::left << std::setw(13) << qcoh::formula_name(r.id)
       << std::setw(9) << (r.match ? "MATCH" : "MISMATCH")
       << " max|dev|=" << std::setw(13)
       << qcoh::format_double(r.max_abs_deviation) << " at (p="
       << qcoh::format_double(r.at_p) << ", mu=" << qcoh::format_double(r.at_mu)
       << ")  grid " << r.grid;
    if (r.divergent_points > 0)
      os << "  [" << r.divergent_points << " divergent points excluded]";
    os << "\n";
  }
  if (include_ad) {
    const qcoh::AdSignFit fit = qcoh::ad_sign_fit(cv);
    os << "amplitude-damping a3'/b3' coefficient fit:\n"
       << "  printed sign (1/2)[-2 - mu(1-c3)]p, b3' on I(x)s3       residual "
       << qcoh::format_double(fit.printed_residual) << "\n"
       << "  corrected sign (1/2)[-2 + mu(1-c3)]p, b3' on I(x)s3     residual "
       << qcoh::format_double(fit.corrected_residual)
       << (fit.corrected_fits ? "  <- fits" : "") << "\n"
       << "  corrected sign, b3' duplicated onto s3(x)I              residual "
       << qcoh::format_double(fit.corrected_dup_residual) << "\n";
  }
  os << "mismatching formulas:";
  bool any = false;
  for (const auto& r : reports)
    if (!r.match) {
      os << " " << qcoh::formula_name(r.id);
      any = true;
    }
  if (!any) os << " none";
  os << "\n";
  os << (mismatch_changed
             ? "mismatch set DIFFERS from the documented one\n"
             : "mismatch set matches the documented one\n");
  return os.str();
}

}  // namespace

extern "C" {

const char* qcoh_version(void) { return "1.0.0"; }

const char* qcoh_last_error(void) { return t_last_error.c_str(); }

/* ---- states ------------------------------------------------------------ */

qcoh_status qcoh_state_bell_diagonal(double c1, double c2, double c3,
                                     qcoh_state** out) {
  if (!out) return fail(QCOH_ERROR_NULL_POINTER, "out is NULL");
  return wrap([&] { *out = new qcoh_state{qcoh::bell_diagonal({c1, c2, c3})}; });
}

qcoh_status qcoh_state_basis(int k, qcoh_state** out) {
  if (!out) return fail(QCOH_ERROR_NULL_POINTER, "out is NULL");
  return wrap([&] { *out = new qcoh_state{qcoh::basis_state(k)}; });
}

qcoh_status qcoh_state_max_coherent_product(double alpha, double beta,
                                            double theta, double phi,
                                            qcoh_state** out) {
  if (!out) return fail(QCOH_ERROR_NULL_POINTER, "out is NULL");
  return wrap([&] {
    *out = new qcoh_state{
        qcoh::max_coherent_product({alpha, beta, theta, phi})};
  });
}

void qcoh_state_free(qcoh_state* s) { delete s; }

qcoh_status qcoh_state_get(const qcoh_state* s, double* re, double* im) {
  if (!s) return fail(QCOH_ERROR_NULL_POINTER, "state is NULL");
  for (std::size_t i = 0; i < 16; ++i) {
    if (re) re[i] = s->rho.mat.e[i].real();
    if (im) im[i] = s->rho.mat.e[i].imag();
  }
  return QCOH_OK;
}

qcoh_status qcoh_state_eigenvalues(const qcoh_state* s, double out[4]) {
  if (!s || !out) return fail(QCOH_ERROR_NULL_POINTER, "state or out is NULL");
  return wrap([&] {
    const auto eig = qcoh::hermitian_eigenvalues(s->rho.mat);
    std::copy(eig.begin(), eig.end(), out);
  });
}

qcoh_status qcoh_state_l1_coherence(const qcoh_state* s, double* out) {
  if (!s || !out) return fail(QCOH_ERROR_NULL_POINTER, "state or out is NULL");
  return wrap([&] { *out = qcoh::l1_coherence(s->rho); });
}

qcoh_status qcoh_state_relative_entropy_coherence(const qcoh_state* s,
                                                  double* out) {
  if (!s || !out) return fail(QCOH_ERROR_NULL_POINTER, "state or out is NULL");
  return wrap([&] { *out = qcoh::relative_entropy_coherence(s->rho); });
}

qcoh_status qcoh_state_correlation_coeffs(const qcoh_state* s, double out[5]) {
  if (!s || !out) return fail(QCOH_ERROR_NULL_POINTER, "state or out is NULL");
  return wrap([&] {
    const auto cc = qcoh::extract_correlation_coeffs(s->rho);
    out[0] = cc.c1;
    out[1] = cc.c2;
    out[2] = cc.c3;
    out[3] = cc.a3;
    out[4] = cc.b3;
  });
}

qcoh_status qcoh_p_of_t(double gamma, double t, double* out) {
  if (!out) return fail(QCOH_ERROR_NULL_POINTER, "out is NULL");
  return wrap([&] { *out = qcoh::p_of_t(gamma, t); });
}

/* ---- channels ----------------------------------------------------------- */

qcoh_status qcoh_channel_create(qcoh_channel_kind kind, double p, double mu,
                                int literal_text_probs, qcoh_channel** out) {
  if (!out) return fail(QCOH_ERROR_NULL_POINTER, "out is NULL");
  return wrap([&] {
    *out = new qcoh_channel{
        qcoh::build_channel(to_kind(kind), p, mu, literal_text_probs != 0)};
  });
}

void qcoh_channel_free(qcoh_channel* c) { delete c; }

qcoh_status qcoh_channel_apply(const qcoh_channel* c, const qcoh_state* in,
                               qcoh_state** out) {
  if (!c || !in || !out)
    return fail(QCOH_ERROR_NULL_POINTER, "channel, in or out is NULL");
  return wrap([&] { *out = new qcoh_state{qcoh::apply(c->ch, in->rho)}; });
}

qcoh_status qcoh_channel_cptp_deviation(const qcoh_channel* c, double* out) {
  if (!c || !out)
    return fail(QCOH_ERROR_NULL_POINTER, "channel or out is NULL");
  return wrap([&] { *out = qcoh::cptp_deviation(c->ch); });
}

/* ---- channel power ------------------------------------------------------ */

qcoh_status qcoh_cohering_power(const qcoh_channel* c,
                                qcoh_measure_kind measure, int bell_basis,
                                double* value, int* argmax_index,
                                long* evaluations) {
  if (!c || !value)
    return fail(QCOH_ERROR_NULL_POINTER, "channel or value is NULL");
  return wrap([&] {
    const qcoh::PowerResult r =
        qcoh::cohering_power(c->ch, to_measure(measure), bell_basis != 0);
    *value = r.value;
    if (argmax_index) *argmax_index = r.argmax_index;
    if (evaluations) *evaluations = static_cast<long>(r.evaluations);
  });
}

qcoh_status qcoh_decohering_power(const qcoh_channel* c,
                                  qcoh_measure_kind measure, double* value,
                                  double argmax[4], long* evaluations) {
  if (!c || !value)
    return fail(QCOH_ERROR_NULL_POINTER, "channel or value is NULL");
  return wrap([&] {
    const qcoh::PowerResult r =
        qcoh::decohering_power(c->ch, to_measure(measure));
    *value = r.value;
    if (argmax) {
      argmax[0] = r.argmax_phases.alpha;
      argmax[1] = r.argmax_phases.beta;
      argmax[2] = r.argmax_phases.theta;
      argmax[3] = r.argmax_phases.phi;
    }
    if (evaluations) *evaluations = static_cast<long>(r.evaluations);
  });
}

qcoh_status qcoh_decohering_closed_form(qcoh_channel_kind kind,
                                        qcoh_measure_kind measure, double p,
                                        double mu, double* value,
                                        int* available, int* divergent) {
  if (!value) return fail(QCOH_ERROR_NULL_POINTER, "value is NULL");
  return wrap([&] {
    const qcoh::ClosedFormResult r =
        qcoh::decohering_closed_form(to_kind(kind), to_measure(measure), p, mu);
    *value = r.value;
    if (available) *available = r.available ? 1 : 0;
    if (divergent) *divergent = r.divergent ? 1 : 0;
  });
}

/* ---- sweeps and verification -------------------------------------------- */

qcoh_status qcoh_sweep_csv(const qcoh_sweep_options* opt, char** out) {
  if (!opt || !out)
    return fail(QCOH_ERROR_NULL_POINTER, "options or out is NULL");
  return wrap([&] {
    qcoh::SweepSpec spec;
    spec.channel = to_kind(opt->channel);
    switch (opt->measure) {
      case 0: spec.measure = qcoh::SweepMeasure::L1Only; break;
      case 1: spec.measure = qcoh::SweepMeasure::RelativeEntropyOnly; break;
      case 2: spec.measure = qcoh::SweepMeasure::Both; break;
      default:
        throw std::invalid_argument("sweep: measure must be 0 (l1), 1 (re) or 2 (both)");
    }
    spec.c = {opt->c1, opt->c2, opt->c3};
    if (!opt->mu_list || opt->mu_count <= 0)
      throw std::invalid_argument("sweep: mu_list must be non-empty");
    spec.mu_list.assign(opt->mu_list, opt->mu_list + opt->mu_count);
    spec.p_start = opt->p_start;
    spec.p_stop = opt->p_stop;
    spec.p_count = opt->p_count;
    if (opt->p_list) {
      if (opt->p_list_count <= 0)
        throw std::invalid_argument("sweep: p_list_count must be positive");
      spec.p_list.assign(opt->p_list, opt->p_list + opt->p_list_count);
    }
    spec.literal_text_probs = opt->literal_text_probs != 0;
    const unsigned workers =
        opt->workers > 0 ? static_cast<unsigned>(opt->workers) : 0;
    *out = copy_out(qcoh::run_sweep_csv(spec, workers));
  });
}

qcoh_status qcoh_verify_run(const qcoh_verify_options* opt, char** csv_out,
                            char** text_out, int* mismatch_changed) {
  if (!opt) return fail(QCOH_ERROR_NULL_POINTER, "options is NULL");
  return wrap([&] {
    if (opt->channel != -1)
      to_kind(static_cast<qcoh_channel_kind>(opt->channel));  // validates
    qcoh::CrossValidateOptions cv;
    cv.c = {opt->c1, opt->c2, opt->c3};
    cv.grid_n = opt->grid_n;
    cv.dp_grid_n = opt->dp_grid_n;
    cv.literal_text_probs = opt->literal_text_probs != 0;
    cv.workers = opt->workers > 0 ? static_cast<unsigned>(opt->workers) : 0;

    std::vector<qcoh::FormulaId> selected;
    for (qcoh::FormulaId id : qcoh::all_formulas())
      if (opt->channel == -1 ||
          qcoh::formula_channel(id) ==
              to_kind(static_cast<qcoh_channel_kind>(opt->channel)))
        selected.push_back(id);

    std::vector<qcoh::DiscrepancyReport> reports;
    reports.reserve(selected.size());
    for (qcoh::FormulaId id : selected)
      reports.push_back(qcoh::cross_validate(id, cv));

    const std::vector<qcoh::FormulaId> documented = qcoh::documented_errata();
    bool changed = false;
    for (const auto& r : reports) {
      const bool expect_mismatch =
          std::find(documented.begin(), documented.end(), r.id) !=
          documented.end();
      if (!r.match != expect_mismatch) changed = true;
    }

    const bool include_ad =
        opt->channel == -1 ||
        to_kind(static_cast<qcoh_channel_kind>(opt->channel)) ==
            qcoh::ChannelKind::AmplitudeDamping;
    if (csv_out) *csv_out = copy_out(verify_csv(reports));
    if (text_out)
      *text_out = copy_out(verify_text(reports, cv, include_ad, changed));
    if (mismatch_changed) *mismatch_changed = changed ? 1 : 0;
  });
}

void qcoh_string_free(char* s) { delete[] s; }

} /* extern "C" */
