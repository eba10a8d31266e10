/* Exercises the C interface from plain C. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "nvranging/nvranging.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  nvr_config* cfg = NULL;
  char* text = NULL;
  double plus = 0, minus = 0, t = 0, rho = 0, eta = 0, acc = 0, dist = 0, resid = 0;
  long long n = 0;
  uint64_t seed = 0;
  nvr_detection_record rec;
  const int ns[] = {1, 4};
  const double samples[] = {1, -1, 1, -1, 1, -1, 1, -1};
  const double taus[] = {1.0, 1.5};
  double sigma[2];

  EXPECT(strcmp(nvr_version(), "1.0.0") == 0);
  EXPECT(nvr_config_new_default(&cfg) == NVR_OK);
  EXPECT(nvr_config_get_seed(cfg, &seed) == NVR_OK && seed == 20231019u);
  EXPECT(nvr_config_set_seed(cfg, 5) == NVR_OK);

  EXPECT(nvr_resonance_frequencies(cfg, &plus, &minus) == NVR_OK);
  EXPECT(fabs(plus - 2.885e9) < 1.0 && fabs(minus - 2.855e9) < 1.0);

  EXPECT(nvr_n_pi_duration(1, 39e-9, 7.6e3, 2.8e10, &t) == NVR_OK);
  EXPECT(fabs(t - 30.1234e-9) < 1e-12);
  EXPECT(nvr_n_pi_duration(0, 39e-9, 7.6e3, 2.8e10, &t) == NVR_ERR_DOMAIN);
  EXPECT(strlen(nvr_last_error()) > 0);

  EXPECT(nvr_rabi_population(1.0, 0.0, 460e-9, &rho) == NVR_OK && rho == 1.0);
  EXPECT(nvr_field_sensitivity(0.0014, 0.27, 1.1e7, &eta) == NVR_OK && fabs(eta - 66.13e-12) < 0.1e-12);
  EXPECT(nvr_ranging_accuracy(0.00077, 26.0, &acc) == NVR_OK && fabs(acc - 29.615e-6) < 0.01e-6);
  EXPECT(nvr_simulate_measurement(cfg, 2.0, 9, 0, &rec) == NVR_OK && rec.rng_seed == 9u);
  EXPECT(rec.reference_counts > 0.0);

  EXPECT(nvr_cmd_ambiguity(cfg, 1.234, 0.0, &text) == NVR_OK);
  EXPECT(text != NULL && strstr(text, "\"n\": 23") != NULL);
  nvr_string_free(text);
  EXPECT(nvr_cmd_ambiguity(cfg, 6.0, 0.0, &text) == NVR_ERR_AMBIGUITY);

  EXPECT(nvr_cmd_metrics(cfg, ns, 2, &text) == NVR_OK);
  nvr_string_free(text);
  EXPECT(nvr_cmd_metrics(cfg, ns, 0, &text) == NVR_ERR_USAGE);
  EXPECT(nvr_cmd_scan(cfg, 1, NAN, NAN, 5, 0, 1, &text) == NVR_OK);
  EXPECT(strncmp(text, "distance_m,normalized_signal\n", 29) == 0);
  nvr_string_free(text);

  {
    const double two_pi = 6.283185307179586, c = 299792458.0, l = 1.234;
    const double pp = fmod(2.0 * two_pi * l * 2.885e9 / c, two_pi);
    const double pm = fmod(2.0 * two_pi * l * 2.855e9 / c, two_pi);
    EXPECT(nvr_resolve_ambiguity(pp, pm, 2.885e9, 2.855e9, &dist, &n, &resid) == NVR_OK);
    EXPECT(n == 23 && fabs(dist - l) < 1e-9);
    EXPECT(nvr_resolve_ambiguity(1.0, 0.5, 2.885e9, 2.855e9, &dist, &n, &resid) == NVR_ERR_AMBIGUITY);
  }
  EXPECT(nvr_allan_deviation(samples, 8, 1.0, taus, 2, sigma) == NVR_OK);
  EXPECT(fabs(sigma[0] - sqrt(2.0)) < 1e-12 && isnan(sigma[1]));

  {
    nvr_config* other = NULL;
    EXPECT(nvr_config_parse("{\"bogus\": 1}", &other) == NVR_ERR_USAGE && other == NULL);
  }
  EXPECT(nvr_config_new_default(NULL) == NVR_ERR_USAGE);

  nvr_config_free(cfg);
  if (failures == 0) printf("c api smoke: ok\n");
  return failures == 0 ? 0 : 1;
}
