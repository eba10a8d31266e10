#ifndef NVRANGING_NVRANGING_H
#define NVRANGING_NVRANGING_H

/*
 * C interface to the nvranging simulator.
 *
 * All functions return an nvr_status. On failure a human readable message is
 * available from nvr_last_error() until the next call on the same thread.
 * Strings returned through char** out-parameters are heap allocated and must
 * be released with nvr_string_free().
 *
 * Units are SI throughout (Hz, T, s, m, rad).
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NVRANGING_BUILDING)
#    define NVR_API __declspec(dllexport)
#  else
#    define NVR_API __declspec(dllimport)
#  endif
#else
#  define NVR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum nvr_status {
  NVR_OK = 0,
  NVR_ERR_USAGE = 2,     /* bad arguments or configuration */
  NVR_ERR_DOMAIN = 3,    /* physical precondition violated */
  NVR_ERR_AMBIGUITY = 4, /* integer ambiguity could not be resolved */
  NVR_ERR_INTERNAL = 70
} nvr_status;

typedef struct nvr_config nvr_config;

typedef struct nvr_detection_record {
  double reference_counts;
  double signal_counts;
  double normalized_signal;
  uint64_t rng_seed;
} nvr_detection_record;

NVR_API const char* nvr_last_error(void);
NVR_API const char* nvr_version(void);
NVR_API void nvr_string_free(char* text);

/* ---- configuration handle ---- */

NVR_API nvr_status nvr_config_new_default(nvr_config** out);
NVR_API nvr_status nvr_config_load_file(const char* path, nvr_config** out);
NVR_API nvr_status nvr_config_parse(const char* json_text, nvr_config** out);
NVR_API void nvr_config_free(nvr_config* config);
NVR_API nvr_status nvr_config_set_seed(nvr_config* config, uint64_t seed);
NVR_API nvr_status nvr_config_get_seed(const nvr_config* config, uint64_t* seed);
/* Configured output paths; empty string when unset. Caller frees. */
NVR_API nvr_status nvr_config_output_paths(const nvr_config* config, char** path, char** allan_path);
NVR_API nvr_status nvr_config_to_json(const nvr_config* config, char** json_out);

/* ---- commands (CSV / JSON documents) ---- */

NVR_API nvr_status nvr_cmd_odmr(const nvr_config* config, double f_min, double f_max, size_t points,
                                char** csv_out);
NVR_API nvr_status nvr_cmd_rabi(const nvr_config* config, double t_max, size_t points, char** csv_out);
/* n_pi = 0 keeps the configured N. NaN center/span and repeats = 0 select defaults. */
NVR_API nvr_status nvr_cmd_scan(const nvr_config* config, int n_pi, double l_center, double l_span,
                                size_t points, uint64_t repeats, int noise_free, char** csv_out);
NVR_API nvr_status nvr_cmd_metrics(const nvr_config* config, const int* n_list, size_t n_count,
                                   char** json_out);
NVR_API nvr_status nvr_cmd_track(const nvr_config* config, double duration, double sample_interval,
                                 int noise_free, char** csv_out, char** allan_json_out);
NVR_API nvr_status nvr_cmd_ambiguity(const nvr_config* config, double l_true, double phase_noise,
                                     char** json_out);

/* ---- model primitives ---- */

NVR_API nvr_status nvr_resonance_frequencies(const nvr_config* config, double* omega_plus,
                                             double* omega_minus);
NVR_API nvr_status nvr_rabi_population(double rabi_rad_per_s, double time_s, double decay_time_s,
                                       double* population);
NVR_API nvr_status nvr_n_pi_duration(int n_pi, double b1, double conversion_gain, double gyromagnetic_ratio,
                                     double* duration_s);
NVR_API nvr_status nvr_simulate_measurement(const nvr_config* config, double distance_m, uint64_t seed,
                                            int noise_free, nvr_detection_record* out);
NVR_API nvr_status nvr_field_sensitivity(double noise_sigma, double measurement_time_s, double response_per_t,
                                         double* eta_t);
NVR_API nvr_status nvr_ranging_accuracy(double noise_sigma, double response_per_m, double* accuracy_m);
NVR_API nvr_status nvr_resolve_ambiguity(double phase_plus, double phase_minus, double omega_plus,
                                         double omega_minus, double* distance_m, long long* integer,
                                         double* residual_m);
/* Invalid taus produce NaN in sigma_out; the call still succeeds. */
NVR_API nvr_status nvr_allan_deviation(const double* samples, size_t count, double sample_interval,
                                       const double* taus, size_t tau_count, double* sigma_out);

#ifdef __cplusplus
}
#endif

#endif /* NVRANGING_NVRANGING_H */
