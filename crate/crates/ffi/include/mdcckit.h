#ifndef MDCCKIT_H
#define MDCCKIT_H

#include <stdbool.h>
#include <stdint.h>

typedef enum MdccStatus {
  MDCC_STATUS_OK = 0,
  MDCC_STATUS_NULL_POINTER = 1,
  MDCC_STATUS_INVALID_ARGUMENT = 2,
  MDCC_STATUS_NUMERICAL = 3,
  MDCC_STATUS_PANIC = 4,
} MdccStatus;

// Opaque three-qubit pure state.
typedef struct MdccState MdccState;

// All per-state measures. `discord_score` is NaN when discord was not
// requested; `best_receiver` is 0, 1, 2 for A, B, C and -1 when there is no
// advantage.
typedef struct MdccMeasures {
  double s_a;
  double s_b;
  double s_c;
  double ggm;
  double tangle;
  double discord_score;
  double c_adv;
  double ggm_slack;
  double tangle_slack;
  int32_t best_receiver;
} MdccMeasures;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Description of the last failure on this thread; empty after a success.
// The pointer stays valid until the next call into this library.
const char *mdcc_last_error(void);

// Library version as a static NUL-terminated string.
const char *mdcc_version(void);

// Build a state from 8 amplitudes in basis order `|abc>` (index `4a+2b+c`).
// `im` may be null for real amplitudes. The state is renormalized.
//
// # Safety
// `re` (and `im` when non-null) must point to 8 readable doubles; `out` must
// be writable.
enum MdccStatus mdcc_state_from_amplitudes(const double *re,
                                           const double *im,
                                           struct MdccState **out);

// `|000> + |111> + α(|101> + |010>)`, normalized.
//
// # Safety
// `out` must be writable.
enum MdccStatus mdcc_state_mdcc(double alpha, struct MdccState **out);

// One of `ghz`, `w`, `product000`, `bell_ab_times_0`.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum MdccStatus mdcc_state_named(const char *name, struct MdccState **out);

// Release a state. Null is ignored.
//
// # Safety
// `state` must come from an `mdcc_state_*` constructor and not be freed twice.
void mdcc_state_free(struct MdccState *state);

// Copy the normalized amplitudes into `re[8]` and `im[8]`.
//
// # Safety
// `state` must be a live handle; `re` and `im` must point to 8 writable doubles.
enum MdccStatus mdcc_state_amplitudes(const struct MdccState *state, double *re, double *im);

// Compute every measure with `sender` (0, 1, 2 for A, B, C) as the dense-coding
// sender and discord hub. Discord is optional since it dominates the cost;
// `measure_first` selects which qubit of each pair is measured.
//
// # Safety
// `state` must be a live handle; `out` must be writable.
enum MdccStatus mdcc_state_measures(const struct MdccState *state,
                                    uint32_t sender,
                                    bool with_discord,
                                    bool measure_first,
                                    struct MdccMeasures *out);

// Margin by which the GGM-matched MDCC state dominates `state` in dense-coding
// advantage (sender A); non-negative up to round-off.
//
// # Safety
// `state` must be a live handle; `out` must be writable.
enum MdccStatus mdcc_state_theorem_margin(const struct MdccState *state, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MDCCKIT_H */
