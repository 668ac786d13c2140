/* pfmaps - spectral analysis of positive maps and quantum channels.
 *
 * C interface of the shared library. All heavyweight objects live behind
 * opaque handles; reports and parameters travel as JSON text (UTF-8,
 * nul-terminated). Every function that can fail returns a pfm_status;
 * pfm_last_error() describes the most recent failure on the calling thread.
 *
 * Strings returned through char** out-parameters are owned by the caller
 * and must be released with pfm_string_free().
 */

#ifndef PFMAPS_H
#define PFMAPS_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pfm_status {
  PFM_OK = 0,
  PFM_ERR_PARSE = 2,        /* malformed JSON or schema violation */
  PFM_ERR_DIM_LIMIT = 3,    /* dimension above the supported cap (16) */
  PFM_ERR_INVALID_ARG = 4,  /* invalid parameters (weights, groups, ...) */
  PFM_ERR_PRECONDITION = 5, /* operation precondition failed */
  PFM_ERR_NUMERIC = 6,      /* iteration did not converge / overflow */
  PFM_ERR_INTERNAL = 7
} pfm_status;

/* A map on d x d matrices: either a Kraus family or a transfer matrix. */
typedef struct pfm_channel pfm_channel;

/* --- lifecycle ---------------------------------------------------------- */

/* Parse {"dim": d, "kraus": [matrix...]} or {"dim": d, "transfer": matrix}.
 * Matrices are {"dim": d, "re": [d*d], "im": [d*d]} in row-major order. */
pfm_status pfm_channel_from_json(const char* json_text, pfm_channel** out);

/* Build one of the named constructions. `params_json` holds
 *   {"kind": "pinned" | "weighted" | "local" | "projective" | "group"
 *            | "random", ...kind-specific fields...}
 * pinned:     {"rho": matrix | {"diag": [...]}}
 * weighted:   {"dim": d, "c": [d*d row-major]} or {"ci": [d]} for c_ik = c_i
 * local:      {"diag": [...]}
 * projective: {"dim": d, "ranks": [r1, r2, ...]} or {"projections": [matrix...]}
 * group:      {"unitaries": [matrix...]} or {"preset": "pauli"|"iz"|"trivial",
 *              "dim": d}
 * random:     {"dim": d, "kraus": k, "seed": n}
 */
pfm_status pfm_channel_construct(const char* params_json, pfm_channel** out);

void pfm_channel_free(pfm_channel* ch);

int pfm_channel_dim(const pfm_channel* ch);
/* Number of Kraus operators; 0 when only a transfer matrix is held. */
int pfm_channel_kraus_count(const pfm_channel* ch);

/* Canonical JSON form (byte-stable for a fixed input and library version). */
pfm_status pfm_channel_to_json(const pfm_channel* ch, char** out_json);

/* --- analysis ----------------------------------------------------------- */

/* Classification + spectral report.
 * options: {"trials": n, "seed": n, "tol": x}; seed is required. */
pfm_status pfm_analyze(const pfm_channel* ch, const char* options_json,
                       char** out_json);

/* Spectral report only (eigenvalues, radius, gap, fixed point). */
pfm_status pfm_spectrum(const pfm_channel* ch, const char* options_json,
                        char** out_json);

/* Trajectory of a discrete iteration or of the shifted semigroup.
 * options: {"mode": "discrete"|"semigroup", "initial": matrix,
 *           "steps": n (discrete), "t_grid": [...] (semigroup)} */
pfm_status pfm_evolve(const pfm_channel* ch, const char* options_json,
                      char** out_json);

/* Inequality suite over seeded random corpora.
 * options: {"properties": ["name", ...] or "all", "trials": n, "seed": n,
 *           "dims": [..], "probes": bool}
 * The report lists violations per property; `ok` is true when no asserted
 * property was violated. */
pfm_status pfm_verify(const char* options_json, char** out_json);

/* --- utilities ---------------------------------------------------------- */

void pfm_string_free(char* text);

/* Message for the last failure on this thread; empty string if none. */
const char* pfm_last_error(void);

const char* pfm_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PFMAPS_H */
