/* C interface for the trihopf library.
 *
 * Conventions:
 *   - Opaque handles are created and freed by this library.
 *   - Structured payloads are JSON strings with exact rational number
 *     encodings (identical to the trihopf CLI formats).
 *   - Status codes mirror the CLI exit codes:
 *       0  ok
 *       1  check failed (a verification suite reported a failure)
 *       2  invalid input (schema violations; see trihopf_last_error_message)
 *       3  unsupported (guardrail limits)
 *       4  null pointer / encoding error / internal panic
 *   - Strings returned through `char **out` parameters are owned by the
 *     caller and must be released with trihopf_string_free.
 */

#ifndef TRIHOPF_H
#define TRIHOPF_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define TRIHOPF_OK 0
#define TRIHOPF_CHECK_FAILED 1
#define TRIHOPF_INVALID_INPUT 2
#define TRIHOPF_UNSUPPORTED 3
#define TRIHOPF_NULL_OR_ENCODING 4

/* Bitmask for trihopf_algebra_check. */
#define TRIHOPF_SUITE_AXIOMS 1u
#define TRIHOPF_SUITE_TRIANGULAR 2u
#define TRIHOPF_SUITE_CHEVALLEY 4u
#define TRIHOPF_SUITE_MINIMAL 8u

typedef struct TrihopfSeptuple TrihopfSeptuple;
typedef struct TrihopfAlgebra TrihopfAlgebra;

/* Last error message recorded on this thread, or NULL. Caller frees. */
char *trihopf_last_error_message(void);

/* Frees any string returned by this library. */
void trihopf_string_free(char *s);

/* Septuple lifecycle. */
int trihopf_septuple_parse(const char *json, TrihopfSeptuple **out);
void trihopf_septuple_free(TrihopfSeptuple *h);
int trihopf_septuple_to_json(const TrihopfSeptuple *h, char **out);

/* Validation report (JSON array of named conditions). Returns 0 when
 * every condition passes, 1 otherwise. out_report may be NULL. */
int trihopf_septuple_validate(const TrihopfSeptuple *h, char **out_report);

/* Construction pipeline. The result is fully verified before return. */
int trihopf_build(const TrihopfSeptuple *h, TrihopfAlgebra **out);
void trihopf_algebra_free(TrihopfAlgebra *h);
size_t trihopf_algebra_dim(const TrihopfAlgebra *h);

/* Build output: algebra dump + R-matrix + Drinfeld element + flags. */
int trihopf_algebra_to_json(const TrihopfAlgebra *h, char **out);

/* Verification suites (bitmask of TRIHOPF_SUITE_*). Returns 0 when all
 * selected suites pass, 1 on a failed check. out_report may be NULL. */
int trihopf_algebra_check(const TrihopfAlgebra *h, uint32_t suites,
                          char **out_report);

/* Septuple isomorphism with a witness payload. Returns 0 when
 * isomorphic, 1 when not, 3 when unsupported. out_witness may be NULL. */
int trihopf_septuple_isomorphic(const TrihopfSeptuple *h1,
                                const TrihopfSeptuple *h2,
                                char **out_witness);

/* Minimal-pointed data conversions on JSON payloads. */
int trihopf_convert_t1_to_t2(const char *json, char **out);
int trihopf_convert_t2_to_t1(const char *json, char **out);

/* Enumeration of minimal pointed data for the abelian group with the
 * given invariant factors (each >= 2); writes a JSON array. */
int trihopf_enumerate(const uint64_t *invariants, size_t len, uint64_t max_n,
                      char **out);

#ifdef __cplusplus
}
#endif

#endif /* TRIHOPF_H */
