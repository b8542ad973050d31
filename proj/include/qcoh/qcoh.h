/* qcoh — two-qubit coherence under correlated (memory) noisy channels.
 *
 * C interface to the simulator core: Bell-diagonal and maximally coherent
 * states, two-consecutive-use channels with a memory coefficient (amplitude
 * damping, phase damping, depolarizing), l1-norm and relative-entropy
 * coherence, cohering/decohering power, parameter sweeps, and closed-form
 * verification reports.
 *
 * Conventions:
 *   - All handles are opaque; every constructor has a matching _free.
 *   - Functions return QCOH_OK on success; on failure qcoh_last_error()
 *     describes the problem for the calling thread.
 *   - Density matrices are 4x4, row-major, basis order |00>,|01>,|10>,|11>.
 */
#ifndef QCOH_H
#define QCOH_H

#include <stddef.h>

#if defined(_WIN32)
#  define QCOH_API __declspec(dllexport)
#else
#  define QCOH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qcoh_status {
  QCOH_OK = 0,
  QCOH_ERROR_INVALID_ARGUMENT = 1,
  QCOH_ERROR_NOT_HERMITIAN = 2,
  QCOH_ERROR_NO_CONVERGENCE = 3,
  QCOH_ERROR_INVALID_STATE = 4,
  QCOH_ERROR_NULL_POINTER = 5,
  QCOH_ERROR_INTERNAL = 6
} qcoh_status;

typedef enum qcoh_channel_kind {
  QCOH_CHANNEL_AMPLITUDE_DAMPING = 0,
  QCOH_CHANNEL_PHASE_DAMPING = 1,
  QCOH_CHANNEL_DEPOLARIZING = 2
} qcoh_channel_kind;

typedef enum qcoh_measure_kind {
  QCOH_MEASURE_L1 = 0,
  QCOH_MEASURE_RELATIVE_ENTROPY = 1
} qcoh_measure_kind;

typedef struct qcoh_state qcoh_state;
typedef struct qcoh_channel qcoh_channel;

/* Library version string, e.g. "1.0.0". */
QCOH_API const char* qcoh_version(void);

/* Message for the last error raised on the calling thread ("" if none). */
QCOH_API const char* qcoh_last_error(void);

/* ---- states ------------------------------------------------------------ */

/* Bell-diagonal state (I(x)I + c1 s1(x)s1 + c2 s2(x)s2 + c3 s3(x)s3)/4.
 * Fails with QCOH_ERROR_INVALID_STATE if any eigenvalue (1 +- c1 -+ c2 +- c3)/4
 * is below -1e-12; the message names the violated expression. */
QCOH_API qcoh_status qcoh_state_bell_diagonal(double c1, double c2, double c3,
                                              qcoh_state** out);

/* Computational-basis projector |k><k|, k in 0..3. */
QCOH_API qcoh_status qcoh_state_basis(int k, qcoh_state** out);

/* Product of two maximally coherent qubits with the given phases (radians). */
QCOH_API qcoh_status qcoh_state_max_coherent_product(double alpha, double beta,
                                                     double theta, double phi,
                                                     qcoh_state** out);

QCOH_API void qcoh_state_free(qcoh_state* s);

/* Copy the 4x4 matrix into re[16]/im[16], row-major. Either may be NULL. */
QCOH_API qcoh_status qcoh_state_get(const qcoh_state* s, double* re, double* im);

/* Eigenvalues, ascending. */
QCOH_API qcoh_status qcoh_state_eigenvalues(const qcoh_state* s, double out[4]);

/* Coherence in the computational basis. */
QCOH_API qcoh_status qcoh_state_l1_coherence(const qcoh_state* s, double* out);
QCOH_API qcoh_status qcoh_state_relative_entropy_coherence(const qcoh_state* s,
                                                           double* out);

/* Pauli correlation description: out = {c1, c2, c3, a3, b3} where a3 and b3
 * are the s3(x)I and I(x)s3 coefficients. */
QCOH_API qcoh_status qcoh_state_correlation_coeffs(const qcoh_state* s,
                                                   double out[5]);

/* Damping parameter from a rate and a time: p = 1 - exp(-gamma t). */
QCOH_API qcoh_status qcoh_p_of_t(double gamma, double t, double* out);

/* ---- channels ----------------------------------------------------------- */

/* Two-consecutive-use channel at damping p and memory coefficient mu, both in
 * [0,1]. literal_text_probs selects the q = p (instead of q = p/2) per-use
 * flip probability for the phase-damping channel; ignored for other kinds. */
QCOH_API qcoh_status qcoh_channel_create(qcoh_channel_kind kind, double p,
                                         double mu, int literal_text_probs,
                                         qcoh_channel** out);

QCOH_API void qcoh_channel_free(qcoh_channel* c);

QCOH_API qcoh_status qcoh_channel_apply(const qcoh_channel* c,
                                        const qcoh_state* in, qcoh_state** out);

/* Max entrywise deviation of sum E^dag E from the identity. */
QCOH_API qcoh_status qcoh_channel_cptp_deviation(const qcoh_channel* c,
                                                 double* out);

/* ---- channel power ------------------------------------------------------ */

/* Max output coherence over the four basis projectors (Bell projectors and
 * the Bell reference basis when bell_basis is nonzero). Ties break toward
 * the lowest index. */
QCOH_API qcoh_status qcoh_cohering_power(const qcoh_channel* c,
                                         qcoh_measure_kind measure,
                                         int bell_basis, double* value,
                                         int* argmax_index, long* evaluations);

/* Max coherence loss over product maximally coherent states; coarse 12^4
 * phase grid plus cyclic coordinate descent. argmax receives the optimal
 * phases (alpha, beta, theta, phi) in [0, 2pi). */
QCOH_API qcoh_status qcoh_decohering_power(const qcoh_channel* c,
                                           qcoh_measure_kind measure,
                                           double* value, double argmax[4],
                                           long* evaluations);

/* Literal printed closed form for the decohering power. *available is 0 when
 * no closed form exists (amplitude damping + relative entropy); *divergent is
 * 1 when the expression hits log(0) with a nonzero coefficient at (p, mu). */
QCOH_API qcoh_status qcoh_decohering_closed_form(qcoh_channel_kind kind,
                                                 qcoh_measure_kind measure,
                                                 double p, double mu,
                                                 double* value, int* available,
                                                 int* divergent);

/* ---- sweeps and verification -------------------------------------------- */

typedef struct qcoh_sweep_options {
  qcoh_channel_kind channel;
  int measure;            /* 0 = l1, 1 = re, 2 = both */
  double c1, c2, c3;
  const double* mu_list;  /* non-empty, values in [0,1] */
  int mu_count;
  double p_start, p_stop; /* inside [0,1] */
  int p_count;            /* 2..10001 */
  const double* p_list;   /* optional: explicit nondecreasing p values inside
                             [0,1] (e.g. mapped from a time grid); overrides
                             p_start/p_stop/p_count when non-NULL */
  int p_list_count;       /* 2..10001 when p_list is non-NULL */
  int literal_text_probs;
  int workers;            /* <= 0 selects the hardware default */
} qcoh_sweep_options;

/* CSV with header channel,measure,c1,c2,c3,mu,p,value; rows ordered by
 * (mu asc, p asc, measure asc); byte-identical for any worker count.
 * Free the result with qcoh_string_free. */
QCOH_API qcoh_status qcoh_sweep_csv(const qcoh_sweep_options* opt, char** out);

typedef struct qcoh_verify_options {
  int channel;            /* -1 = all, else a qcoh_channel_kind */
  int grid_n;             /* coherence-formula grid (n x n), >= 11 */
  int dp_grid_n;          /* decohering-power grid, >= 2 */
  int literal_text_probs;
  int workers;
  double c1, c2, c3;      /* input state for coherence formulas */
} qcoh_verify_options;

/* Cross-validate every closed-form expression against the numeric machinery.
 * csv_out: one row per formula; text_out: human-readable report including the
 * amplitude-damping a3'/b3' sign fit. mismatch_changed is set to 1 when the
 * observed mismatch set differs from the documented one. Any output pointer
 * may be NULL. Free strings with qcoh_string_free. */
QCOH_API qcoh_status qcoh_verify_run(const qcoh_verify_options* opt,
                                     char** csv_out, char** text_out,
                                     int* mismatch_changed);

QCOH_API void qcoh_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QCOH_H */
