/* C interface to the P-CSS code library.
 *
 * All functions return a pcss_status; outputs are passed back through
 * pointers. Objects are opaque handles released with their _free function.
 * Strings returned through char** are heap-allocated and must be released
 * with pcss_string_free. On failure the thread-local message from
 * pcss_last_error() describes what went wrong.
 */
#ifndef PCSS_CAPI_H
#define PCSS_CAPI_H

#include <stdint.h>

#if defined(_WIN32)
#define PCSS_API __declspec(dllexport)
#else
#define PCSS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pcss_status {
    PCSS_OK = 0,
    PCSS_ERR_INVALID_ARGUMENT = 1,
    PCSS_ERR_DIMENSION_MISMATCH = 2,
    PCSS_ERR_RANK_DEFICIENT = 3,
    PCSS_ERR_TOO_LARGE = 4,
    PCSS_ERR_PARSE = 5,
    PCSS_ERR_INTERNAL = 6
} pcss_status;

typedef struct pcss_code pcss_code;       /* classical [n, k] linear code */
typedef struct pcss_hash pcss_hash;       /* affine hash realization */
typedef struct pcss_qcode pcss_qcode;     /* constructed P-CSS quantum code */
typedef struct pcss_channel pcss_channel; /* i.i.d. Pauli channel */

PCSS_API const char* pcss_status_name(pcss_status status);
PCSS_API const char* pcss_last_error(void);
PCSS_API void pcss_string_free(char* str);

/* --- classical codes ------------------------------------------------- */

/* text: "rows cols" header then '0'/'1' row strings (generator is n x k) */
PCSS_API pcss_status pcss_code_from_generator(const char* text, pcss_code** out);
PCSS_API pcss_status pcss_code_from_parity(const char* text, pcss_code** out);
PCSS_API pcss_status pcss_code_from_alist(const char* text, pcss_code** out);
PCSS_API pcss_status pcss_code_hamming7(pcss_code** out);
PCSS_API void pcss_code_free(pcss_code* code);
PCSS_API int pcss_code_n(const pcss_code* code);
PCSS_API int pcss_code_k(const pcss_code* code);

/* decoder: "leader" or "bp" (bp_max_iters ignored for "leader") */
PCSS_API pcss_status pcss_code_epsilon_exact(const pcss_code* code, double flip_prob,
                                             const char* decoder, int bp_max_iters,
                                             int include_detected, char** json_out);
PCSS_API pcss_status pcss_code_epsilon_monte_carlo(const pcss_code* code, double flip_prob,
                                                   const char* decoder, int bp_max_iters,
                                                   int include_detected, uint64_t trials,
                                                   uint64_t seed, int threads,
                                                   char** json_out);

/* --- hash realizations ------------------------------------------------ */

/* field_spec: "k:bits" (modulus coefficients low-degree first) or "k" for
 * the default modulus; a_text: "zeta", "zeta^P", "1", or k coefficient bits */
PCSS_API pcss_status pcss_hash_from_field(const char* field_spec, const char* a_text,
                                          const char* b_text, int m, pcss_hash** out);
PCSS_API pcss_status pcss_hash_sample(const char* field_spec, int m, uint64_t seed,
                                      pcss_hash** out);
PCSS_API pcss_status pcss_hash_from_json(const char* json_text, pcss_hash** out);
PCSS_API pcss_status pcss_hash_to_json(const pcss_hash* hash, char** json_out);
PCSS_API void pcss_hash_free(pcss_hash* hash);

/* --- P-CSS construction ------------------------------------------------ */

PCSS_API pcss_status pcss_qcode_construct(const pcss_code* code, const pcss_hash* hash,
                                          pcss_qcode** out);
PCSS_API void pcss_qcode_free(pcss_qcode* qcode);
/* newline-separated operator strings, Z rows then X rows */
PCSS_API pcss_status pcss_qcode_stabilizers(const pcss_qcode* qcode, int canonical,
                                            char** text_out);
PCSS_API pcss_status pcss_qcode_to_json(const pcss_qcode* qcode, char** json_out);
PCSS_API pcss_status pcss_qcode_verify(const pcss_qcode* qcode, char** json_out);
PCSS_API pcss_status pcss_qcode_distance(const pcss_qcode* qcode, char** json_out);

/* --- channels ----------------------------------------------------------- */

PCSS_API pcss_status pcss_channel_create(double p_i, double p_x, double p_y, double p_z,
                                         int n, pcss_channel** out);
PCSS_API pcss_status pcss_channel_depolarizing(double p, int n, pcss_channel** out);
PCSS_API void pcss_channel_free(pcss_channel* channel);
PCSS_API pcss_status pcss_channel_entropies(const pcss_channel* channel, char** json_out);

/* --- bounds -------------------------------------------------------------- */

/* mode: "exact", "asymptotic", or "smooth" (delta used by "smooth" only) */
PCSS_API pcss_status pcss_bounds_point(const pcss_channel* channel, int n, int k, int m,
                                       double epsilon, const char* mode, double delta,
                                       char** json_out);
/* CSV with header r_q,eta,epsilon_prime,mode over `points` rates in (0, k/n] */
PCSS_API pcss_status pcss_rate_curve(const pcss_channel* channel, int n, int k,
                                     double epsilon, const char* mode, double delta,
                                     int points, char** csv_out);

/* --- simulation ----------------------------------------------------------- */

/* bounds_mode may be NULL to skip the eta comparison in the report */
PCSS_API pcss_status pcss_simulate_exhaustive(const pcss_qcode* qcode,
                                              const pcss_channel* channel,
                                              double classical_epsilon,
                                              const char* bounds_mode, char** json_out);
PCSS_API pcss_status pcss_simulate_monte_carlo(const pcss_qcode* qcode,
                                               const pcss_channel* channel, uint64_t trials,
                                               uint64_t seed, int threads,
                                               double classical_epsilon,
                                               const char* bounds_mode, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* PCSS_CAPI_H */
