#ifndef ULTIMATE_H
#define ULTIMATE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. The first five match the exit codes of the command-line tool.
typedef enum UltStatus {
  ULT_STATUS_OK = 0,
  ULT_STATUS_USAGE = 1,
  ULT_STATUS_PARSE = 2,
  ULT_STATUS_RESOURCE = 3,
  ULT_STATUS_MISMATCH = 4,
  ULT_STATUS_NULL_POINTER = 5,
  ULT_STATUS_INTERNAL = 6,
} UltStatus;

typedef enum UltMethod {
  ULT_METHOD_KK = 0,
  ULT_METHOD_WF = 1,
  ULT_METHOD_STABLE = 2,
  ULT_METHOD_SUPPORTED = 3,
  ULT_METHOD_ULTIMATE_KK = 4,
  ULT_METHOD_ULTIMATE_WF = 5,
  ULT_METHOD_ULTIMATE_STABLE = 6,
  ULT_METHOD_ALL = 7,
} UltMethod;

typedef enum UltTruth {
  ULT_TRUTH_FALSE = 0,
  ULT_TRUTH_TRUE = 1,
  ULT_TRUTH_UNKNOWN = 2,
} UltTruth;

// A parsed program in normal form.
typedef struct UltProgram UltProgram;

// The outcome of [`ult_solve`].
typedef struct UltSolution UltSolution;

// Enumeration caps. Pass a null pointer wherever one is accepted to use
// [`ult_limits_default`].
typedef struct UltLimits {
  uint32_t max_taut_vars;
  uint32_t max_enum_atoms;
  uint32_t max_pair_sweep;
} UltLimits;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The default caps: 20 tautology variables, 20 enumerated atoms and 12 atoms
// for consistent-pair sweeps.
struct UltLimits ult_limits_default(void);

// Message describing the last failure on this thread, or an empty string.
// The pointer stays valid until the next call into the library on this thread.
const char *ult_last_error(void);

// Parses a NUL-terminated UTF-8 program text.
//
// # Safety
// `text` must be null or a valid C string; `out` must be null or writable.
enum UltStatus ult_program_parse(const char *text, struct UltProgram **out);

// # Safety
// `program` must be null or a handle from [`ult_program_parse`] not yet freed.
void ult_program_free(struct UltProgram *program);

// Number of atoms in the program's universe, or 0 for a null handle.
//
// # Safety
// `program` must be null or a live handle.
size_t ult_program_atom_count(const struct UltProgram *program);

// Name of atom `index` (atoms are sorted by name). Free the result with
// [`ult_string_free`].
//
// # Safety
// `program` must be a live handle; `out` must be writable.
enum UltStatus ult_program_atom_name(const struct UltProgram *program, size_t index, char **out);

// Whether every atom satisfies one of the tractability conditions for `k`.
//
// # Safety
// `program` must be a live handle; `member` must be writable.
enum UltStatus ult_classify(const struct UltProgram *program, size_t k, bool *member);

// Computes a semantics. `limits` may be null.
//
// # Safety
// `program` must be a live handle; `limits` null or valid; `out` writable.
enum UltStatus ult_solve(const struct UltProgram *program,
                         enum UltMethod method,
                         const struct UltLimits *limits,
                         struct UltSolution **out);

// Runs the oracle cross-checks. Returns [`UltStatus::Mismatch`] when a fast
// procedure disagrees with its brute-force reference; the witness is then
// available from [`ult_last_error`].
//
// # Safety
// `program` must be a live handle; `limits` null or valid.
enum UltStatus ult_oracle_check(const struct UltProgram *program, const struct UltLimits *limits);

// # Safety
// `solution` must be null or a handle from [`ult_solve`] not yet freed.
void ult_solution_free(struct UltSolution *solution);

// Truth value of atom `index` in a pair-valued solution (`kk`, `wf` and
// their ultimate variants).
//
// # Safety
// `solution` must be a live handle; `out` writable.
enum UltStatus ult_solution_truth(const struct UltSolution *solution,
                                  size_t index,
                                  enum UltTruth *out);

// Number of models in a model-valued solution (`stable`, `supported`,
// `ultimate-stable`).
//
// # Safety
// `solution` must be a live handle; `out` writable.
enum UltStatus ult_solution_model_count(const struct UltSolution *solution, size_t *out);

// Whether model `model` contains atom `index`.
//
// # Safety
// `solution` must be a live handle; `out` writable.
enum UltStatus ult_solution_model_contains(const struct UltSolution *solution,
                                           size_t model,
                                           size_t index,
                                           bool *out);

// The solution as a JSON document. Free the result with [`ult_string_free`].
//
// # Safety
// `solution` must be a live handle; `out` writable.
enum UltStatus ult_solution_to_json(const struct UltSolution *solution, char **out);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void ult_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ULTIMATE_H */
