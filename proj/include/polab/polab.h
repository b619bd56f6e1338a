/* polab: two-mode quantum polarization laboratory.
 *
 * C interface to the polarization calculus library: classical Stokes and
 * Mueller analysis, truncated two-mode Fock states, quantum channels,
 * Fisher-information estimation scenarios, and the simulated photon-counting
 * polarimeter.
 *
 * Conventions: every structured input and output is a JSON document (UTF-8
 * string).  Heavyweight objects (states, channels) are opaque handles.
 * Strings returned through `char **` out-parameters are heap allocated and
 * must be released with polab_string_free(); handles with the matching
 * *_free() function.  All functions return POLAB_OK (0) on success; on
 * failure the out-parameters are untouched and polab_last_error() gives a
 * message for the calling thread.
 */

#ifndef POLAB_H
#define POLAB_H

#include <stdint.h>

#if defined(_WIN32)
#define POLAB_API __declspec(dllexport)
#else
#define POLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct polab_state polab_state;     /* two-mode Fock state */
typedef struct polab_channel polab_channel; /* CPTP map on Fock states */

typedef enum polab_status {
  POLAB_OK = 0,
  POLAB_ERR_PHYSICAL = 1, /* input violates a physical constraint */
  POLAB_ERR_SCHEMA = 2,   /* malformed input / JSON schema violation */
  POLAB_ERR_ARGUMENT = 3, /* parameter out of range or inconsistent */
  POLAB_ERR_INTERNAL = 4
} polab_status;

POLAB_API const char *polab_version(void);

/* Message for the last failure on this thread; valid until the next
 * failing call. */
POLAB_API const char *polab_last_error(void);

POLAB_API void polab_string_free(char *s);
POLAB_API void polab_state_free(polab_state *state);
POLAB_API void polab_channel_free(polab_channel *channel);

/* ---- classical layer: JSON in, JSON out --------------------------------- */

/* Accepts {"type":"stokes"|"jones_vector"|"coherency"} and returns the full
 * classical analysis: Stokes vector, validity report, degree of
 * polarization, and polarized/unpolarized split. */
POLAB_API polab_status polab_stokes_analyze(const char *input_json, double tol,
                                            char **result_json);

/* {"type":"jones"} or {"type":"jones_mixture","weights":[...],
 * "matrices":[...]} -> {"type":"mueller"}. */
POLAB_API polab_status polab_mueller_from_jones(const char *input_json,
                                                char **result_json);

/* {"type":"mueller"} -> validity report (trace bound, transmittances,
 * coherency eigenvalues). */
POLAB_API polab_status polab_mueller_validate(const char *mueller_json,
                                              double tol, char **result_json);

/* {"type":"mueller"} -> rotation/diattenuation/depolarizer factors;
 * {"type":"jones"} -> scale factor and polar (rotation/boost) factors. */
POLAB_API polab_status polab_mueller_decompose(const char *input_json,
                                               double tol, char **result_json);

/* ---- states -------------------------------------------------------------- */

/* Builds a state from a short spec, e.g. "su2:n=4,theta=0.3,phi=0",
 * "noon:n=4", "tetrahedron", "fock:m=1,n=1",
 * "coherent:alpha=2,theta=1.5708,phi=0", "tmsv:zeta=0.88,phase=0",
 * "isotropic:mean=1.5", "noon_inspired:m=2,n=3,theta=0,phi=0". */
POLAB_API polab_status polab_state_make(const char *spec, int n_max,
                                        double leakage_threshold,
                                        polab_state **state);

POLAB_API polab_status polab_state_from_json(const char *json,
                                             polab_state **state);
POLAB_API polab_status polab_state_to_json(const polab_state *state,
                                           char **result_json);

/* Stokes vector, degree of polarization, second moments, purity, layer
 * weights, uncertainty diagnostics, perfect-polarization check. */
POLAB_API polab_status polab_state_info(const polab_state *state, double tol,
                                        char **result_json);

/* Stellar representation of a pure fixed-N state. */
POLAB_API polab_status polab_state_stars(const polab_state *state,
                                         char **result_json);

POLAB_API polab_status polab_state_rotate(const polab_state *state,
                                          double theta, const double axis[3],
                                          polab_state **rotated);

/* ---- channels ------------------------------------------------------------ */

/* Channel specs: "attenuation:q=0.9,mode=a", "diattenuation:q=.64,r=.25",
 * "diattenuation:q=.64,r=.25,nx=1,ny=0,nz=0", "rotation:theta=1.2,nx=...",
 * "depolarizer", "lossless_polarizer:theta=0,phi=0", "kerr:chi=0.3". */
POLAB_API polab_status polab_channel_make(const char *spec, int n_max,
                                          polab_channel **channel);

POLAB_API polab_status polab_channel_from_json(const char *json,
                                               polab_channel **channel);
POLAB_API polab_status polab_channel_to_json(const polab_channel *channel,
                                             char **result_json);

POLAB_API polab_status polab_channel_apply(const polab_channel *channel,
                                           const polab_state *state,
                                           polab_state **output);

/* Least-squares Mueller matrix over single-photon probes (plus coherent
 * probes when include_coherent_probes is nonzero), with the fit residual
 * and a physical-validity report of the induced matrix. */
POLAB_API polab_status polab_channel_mueller(const polab_channel *channel,
                                             int include_coherent_probes,
                                             char **result_json);

/* ---- estimation ----------------------------------------------------------- */

/* Request: {"scenario":"phase"|"loss"|"diattenuation"|"rotation"|
 *           "phase-loss", "state":"<spec>", "n_max":N, ...scenario params}.
 * Response: {"qfim":[[...]],"commutativity_residuals":[[...]],...}. */
POLAB_API polab_status polab_qfim(const char *request_json,
                                  char **result_json);

/* ---- simulation and experiments ------------------------------------------- */

/* Config: {"setting":"S1"|"S2"|"S3"} or {"theta":t,"axis":[x,y,z]}, plus
 * {"shots":n,"seed":s}.  Returns count statistics and histogram. */
POLAB_API polab_status polab_simulate_gadget(const polab_state *state,
                                             const char *config_json,
                                             char **result_json);

POLAB_API polab_status polab_estimate_stokes(const polab_state *state,
                                             uint64_t shots, uint64_t seed,
                                             char **result_json);

/* name: "subset-trace", "anisotropy", "decompositions", "higher-order",
 * "attenuated-isotropic"; params_json may be NULL or "{}" for defaults. */
POLAB_API polab_status polab_run_experiment(const char *name,
                                            const char *params_json,
                                            char **result_json);

#ifdef __cplusplus
}
#endif

#endif /* POLAB_H */
