// Black-box tests of the shared-library interface; includes only the public
// header and links only the shared library.
#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "qcoh/qcoh.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  qcoh_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and clean error slate") {
  CHECK(std::string(qcoh_version()) == "1.0.0");
  CHECK(qcoh_last_error() != nullptr);
}

TEST_CASE("bell-diagonal state lifecycle and anchors") {
  qcoh_state* s = nullptr;
  REQUIRE(qcoh_state_bell_diagonal(0.1, 0.4, 0.5, &s) == QCOH_OK);
  REQUIRE(s != nullptr);

  double re[16], im[16];
  REQUIRE(qcoh_state_get(s, re, im) == QCOH_OK);
  CHECK(re[0] == doctest::Approx(0.375));        // (0,0)
  CHECK(re[1 * 4 + 2] == doctest::Approx(0.125));  // (1,2) = (c1+c2)/4
  CHECK(re[0 * 4 + 3] == doctest::Approx(-0.075));
  CHECK(im[1 * 4 + 2] == doctest::Approx(0.0));

  double eig[4];
  REQUIRE(qcoh_state_eigenvalues(s, eig) == QCOH_OK);
  CHECK(eig[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(eig[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(eig[2] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(eig[3] == doctest::Approx(0.45).epsilon(1e-12));

  double l1 = 0.0, cr = 0.0;
  REQUIRE(qcoh_state_l1_coherence(s, &l1) == QCOH_OK);
  REQUIRE(qcoh_state_relative_entropy_coherence(s, &cr) == QCOH_OK);
  CHECK(l1 == doctest::Approx(0.4).epsilon(1e-13));
  CHECK(cr == doctest::Approx(0.271787054159).epsilon(1e-10));

  double coeffs[5];
  REQUIRE(qcoh_state_correlation_coeffs(s, coeffs) == QCOH_OK);
  CHECK(coeffs[0] == doctest::Approx(0.1));
  CHECK(coeffs[1] == doctest::Approx(0.4));
  CHECK(coeffs[2] == doctest::Approx(0.5));
  CHECK(coeffs[3] == doctest::Approx(0.0));
  CHECK(coeffs[4] == doctest::Approx(0.0));

  qcoh_state_free(s);
}

TEST_CASE("invalid parameters surface typed status codes and messages") {
  qcoh_state* s = nullptr;
  CHECK(qcoh_state_bell_diagonal(0.9, 0.9, 0.9, &s) ==
        QCOH_ERROR_INVALID_STATE);
  CHECK(s == nullptr);
  CHECK(std::string(qcoh_last_error()).find("(1 - c1 - c2 - c3)/4") !=
        std::string::npos);

  CHECK(qcoh_state_bell_diagonal(0.1, 0.4, 0.5, nullptr) ==
        QCOH_ERROR_NULL_POINTER);
  CHECK(qcoh_state_basis(7, &s) == QCOH_ERROR_INVALID_ARGUMENT);

  qcoh_channel* ch = nullptr;
  CHECK(qcoh_channel_create(QCOH_CHANNEL_DEPOLARIZING, 1.5, 0.0, 0, &ch) ==
        QCOH_ERROR_INVALID_ARGUMENT);
  CHECK(ch == nullptr);
  CHECK(qcoh_channel_create(static_cast<qcoh_channel_kind>(9), 0.5, 0.5, 0,
                            &ch) == QCOH_ERROR_INVALID_ARGUMENT);
  CHECK(qcoh_channel_cptp_deviation(nullptr, nullptr) ==
        QCOH_ERROR_NULL_POINTER);

  double out = 0.0;
  CHECK(qcoh_p_of_t(-1.0, 1.0, &out) == QCOH_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("channel application anchor") {
  qcoh_state* in = nullptr;
  REQUIRE(qcoh_state_bell_diagonal(0.1, 0.4, 0.5, &in) == QCOH_OK);
  qcoh_channel* ch = nullptr;
  REQUIRE(qcoh_channel_create(QCOH_CHANNEL_AMPLITUDE_DAMPING, 1.0, 1.0, 0,
                              &ch) == QCOH_OK);

  double dev = 0.0;
  REQUIRE(qcoh_channel_cptp_deviation(ch, &dev) == QCOH_OK);
  CHECK(dev <= 1e-12);

  qcoh_state* out = nullptr;
  REQUIRE(qcoh_channel_apply(ch, in, &out) == QCOH_OK);
  double re[16];
  REQUIRE(qcoh_state_get(out, re, nullptr) == QCOH_OK);
  CHECK(re[0] == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(re[15] == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(re[1 * 4 + 2] == doctest::Approx(0.125).epsilon(1e-13));
  double l1 = 0.0;
  REQUIRE(qcoh_state_l1_coherence(out, &l1) == QCOH_OK);
  CHECK(l1 == doctest::Approx(0.25).epsilon(1e-12));

  qcoh_state_free(out);
  qcoh_state_free(in);
  qcoh_channel_free(ch);
}

TEST_CASE("time-to-damping map") {
  double p = -1.0;
  REQUIRE(qcoh_p_of_t(1.0, 0.0, &p) == QCOH_OK);
  CHECK(p == doctest::Approx(0.0));
  REQUIRE(qcoh_p_of_t(1.0, std::log(2.0), &p) == QCOH_OK);
  CHECK(p == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("power entry points") {
  qcoh_channel* ch = nullptr;
  REQUIRE(qcoh_channel_create(QCOH_CHANNEL_PHASE_DAMPING, 0.5, 0.0, 0, &ch) ==
          QCOH_OK);

  double value = -1.0;
  int argmax = -1;
  long evals = 0;
  REQUIRE(qcoh_cohering_power(ch, QCOH_MEASURE_L1, 0, &value, &argmax,
                              &evals) == QCOH_OK);
  CHECK(value <= 1e-12);
  CHECK(argmax == 0);
  CHECK(evals == 4);

  double phases[4];
  REQUIRE(qcoh_decohering_power(ch, QCOH_MEASURE_L1, &value, phases, &evals) ==
          QCOH_OK);
  CHECK(value == doctest::Approx(1.75).epsilon(1e-9));  // (1-mu)p(4-p)+2pmu
  CHECK(evals >= 20736);

  double fv = 0.0;
  int avail = 0, div = 0;
  REQUIRE(qcoh_decohering_closed_form(QCOH_CHANNEL_PHASE_DAMPING,
                                      QCOH_MEASURE_L1, 0.5, 0.0, &fv, &avail,
                                      &div) == QCOH_OK);
  CHECK(avail == 1);
  CHECK(div == 0);
  CHECK(fv == doctest::Approx(2.25).epsilon(1e-12));  // 3 - (1 - p^2)

  REQUIRE(qcoh_decohering_closed_form(QCOH_CHANNEL_AMPLITUDE_DAMPING,
                                      QCOH_MEASURE_RELATIVE_ENTROPY, 0.5, 0.5,
                                      &fv, &avail, &div) == QCOH_OK);
  CHECK(avail == 0);

  REQUIRE(qcoh_decohering_closed_form(QCOH_CHANNEL_PHASE_DAMPING,
                                      QCOH_MEASURE_RELATIVE_ENTROPY, 0.0, 0.5,
                                      &fv, &avail, &div) == QCOH_OK);
  CHECK(avail == 1);
  CHECK(div == 1);

  qcoh_channel_free(ch);
}

TEST_CASE("sweep csv: shape and worker determinism") {
  const double mus[2] = {0.0, 1.0};
  qcoh_sweep_options o{};
  o.channel = QCOH_CHANNEL_AMPLITUDE_DAMPING;
  o.measure = 2;
  o.c1 = 0.1;
  o.c2 = 0.4;
  o.c3 = 0.5;
  o.mu_list = mus;
  o.mu_count = 2;
  o.p_start = 0.0;
  o.p_stop = 1.0;
  o.p_count = 21;
  o.workers = 1;

  char* csv1 = nullptr;
  REQUIRE(qcoh_sweep_csv(&o, &csv1) == QCOH_OK);
  const std::string one = take(csv1);
  CHECK(one.rfind("channel,measure,c1,c2,c3,mu,p,value\n", 0) == 0);
  CHECK(one.find("ad,l1,0.1,0.4,0.5,0,0,0.4\n") != std::string::npos);

  o.workers = 5;
  char* csv5 = nullptr;
  REQUIRE(qcoh_sweep_csv(&o, &csv5) == QCOH_OK);
  CHECK(take(csv5) == one);

  // Explicit p list.
  const double ps[3] = {0.0, 0.5, 1.0};
  o.p_list = ps;
  o.p_list_count = 3;
  char* csv_list = nullptr;
  REQUIRE(qcoh_sweep_csv(&o, &csv_list) == QCOH_OK);
  const std::string listed = take(csv_list);
  CHECK(listed.find(",0,0.5,") != std::string::npos);

  // Malformed options are rejected.
  o.p_list_count = 1;
  char* bad = nullptr;
  CHECK(qcoh_sweep_csv(&o, &bad) == QCOH_ERROR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(qcoh_sweep_csv(nullptr, &bad) == QCOH_ERROR_NULL_POINTER);
}

TEST_CASE("verification run over the phase-damping formulas") {
  qcoh_verify_options o{};
  o.channel = QCOH_CHANNEL_PHASE_DAMPING;
  o.grid_n = 11;
  o.dp_grid_n = 3;
  o.c1 = 0.1;
  o.c2 = 0.4;
  o.c3 = 0.5;

  char* csv = nullptr;
  char* text = nullptr;
  int changed = -1;
  REQUIRE(qcoh_verify_run(&o, &csv, &text, &changed) == QCOH_OK);
  const std::string csv_s = take(csv);
  const std::string text_s = take(text);

  CHECK(csv_s.rfind(
            "formula,channel,grid,max_abs_deviation,at_p,at_mu,"
            "divergent_points,verdict\n",
            0) == 0);
  // Seven phase-damping formulas, one row each plus the header.
  int rows = 0;
  for (char c : csv_s)
    if (c == '\n') ++rows;
  CHECK(rows == 8);
  CHECK(csv_s.find("pd-l1,pd,") != std::string::npos);
  CHECK(csv_s.find("MATCH") != std::string::npos);
  CHECK(csv_s.find("MISMATCH") != std::string::npos);
  CHECK(text_s.find("mismatching formulas:") != std::string::npos);
  CHECK(changed == 0);  // observed mismatches are exactly the documented ones

  // The literal q = p parametrization breaks formulas that were fine,
  // changing the mismatch set.
  o.literal_text_probs = 1;
  changed = -1;
  REQUIRE(qcoh_verify_run(&o, nullptr, nullptr, &changed) == QCOH_OK);
  CHECK(changed == 1);

  // Undersized grids are rejected.
  o.literal_text_probs = 0;
  o.grid_n = 5;
  CHECK(qcoh_verify_run(&o, nullptr, nullptr, &changed) ==
        QCOH_ERROR_INVALID_ARGUMENT);
}
