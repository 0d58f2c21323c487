/*
 * C interface to the ncinv library: exact inversion of matrices with
 * noncommuting entries.
 *
 * Matrices cross the boundary as opaque handles built from, and rendered
 * to, UTF-8 JSON documents of the form
 *
 *   {"ring": "quaternion", "entries": [[a, b], [c, d]]}
 *
 * Every function returns an ncinv_status. On failure the message of the most
 * recent error on the calling thread is available from ncinv_last_error().
 * Strings returned through char** out-parameters are owned by the caller and
 * must be released with ncinv_string_free().
 */
#ifndef NCINV_H
#define NCINV_H

#include <stddef.h>

#if defined(NCINV_BUILDING_LIBRARY)
#define NCINV_API __attribute__((visibility("default")))
#else
#define NCINV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ncinv_status {
  NCINV_OK = 0,
  NCINV_ERR_PARSE = 1,
  NCINV_ERR_NOT_INVERTIBLE = 2,
  NCINV_ERR_BAD_DIMENSION = 3,
  NCINV_ERR_MIXED_RING_KINDS = 4,
  NCINV_ERR_REGIME_VIOLATION = 5,
  NCINV_ERR_SAMPLING_EXHAUSTED = 6,
  NCINV_ERR_BLOCK_SINGULAR = 7,
  NCINV_ERR_BAD_INPUT = 8,
  NCINV_ERR_INVALID_ARGUMENT = 9,
  NCINV_ERR_INTERNAL = 10
} ncinv_status;

typedef struct ncinv_matrix ncinv_matrix;

NCINV_API const char* ncinv_version(void);
NCINV_API const char* ncinv_status_name(ncinv_status status);
/* Message of the last failure on this thread; empty when none. */
NCINV_API const char* ncinv_last_error(void);
NCINV_API void ncinv_string_free(char* s);

/* ---- matrices ---------------------------------------------------------- */

NCINV_API ncinv_status ncinv_matrix_parse(const char* json, ncinv_matrix** out);
NCINV_API void ncinv_matrix_free(ncinv_matrix* m);
NCINV_API ncinv_status ncinv_matrix_to_json(const ncinv_matrix* m, char** out_json);
NCINV_API ncinv_status ncinv_matrix_size(const ncinv_matrix* m, size_t* out_n);
NCINV_API ncinv_status ncinv_matrix_multiply(const ncinv_matrix* x, const ncinv_matrix* y,
                                             ncinv_matrix** out);
NCINV_API ncinv_status ncinv_matrix_is_identity(const ncinv_matrix* m, int* out_flag);

/*
 * Inverts m. method is one of "left", "right", "left-prime", "right-prime",
 * "gelfand", "triangular" (2x2 only) or "block" (any 2^n size); NULL picks
 * "gelfand" for 2x2 and "block" otherwise. ordering is "acb" or "abc"
 * (NULL = "acb") and selects the determinant for "left"/"right"; the prime
 * methods always use "abc".
 *
 * out_inverse (optional) receives the inverse as a handle. out_json
 * (optional) receives a document with the inverse and, where the method
 * defines them, the commutative inverse, residue, decomposition and pivot
 * trace.
 */
NCINV_API ncinv_status ncinv_invert(const ncinv_matrix* m, const char* method, const char* ordering,
                                    ncinv_matrix** out_inverse, char** out_json);

/*
 * Order-by-order inverse of a 2x2 matrix of truncated series. order is the
 * truncation to apply (negative = keep the document's order). side is
 * "left" or "right". Writes {"orders": [...], "residue_order": r, ...}.
 */
NCINV_API ncinv_status ncinv_expand(const ncinv_matrix* m, int order, const char* side,
                                    const char* ordering, char** out_json);

/*
 * Runs a verification campaign described by a JSON spec:
 *   {"identities": "five-way,two-sided", "ring": "quaternion",
 *    "trials": 1000, "seed": 42, "bound": 5, "block_size": 4,
 *    "fail_fast": false}
 * "seed" is mandatory. out_failures receives the failure count; the report
 * includes "duration_ms" unless include_duration is 0.
 */
NCINV_API ncinv_status ncinv_verify(const char* spec_json, int include_duration, char** out_report,
                                    size_t* out_failures);

#ifdef __cplusplus
}
#endif

#endif /* NCINV_H */
