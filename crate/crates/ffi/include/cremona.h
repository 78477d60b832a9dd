#ifndef CREMONA_H
#define CREMONA_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CremonaStatus {
  CREMONA_STATUS_OK = 0,
  CREMONA_STATUS_NULL_POINTER = 1,
  CREMONA_STATUS_INVALID_UTF8 = 2,
  CREMONA_STATUS_PARSE = 3,
  CREMONA_STATUS_INVALID_ARGUMENT = 4,
  CREMONA_STATUS_VERIFICATION_FAILED = 5,
  CREMONA_STATUS_CAP_EXCEEDED = 6,
  CREMONA_STATUS_MATH_ERROR = 7,
  CREMONA_STATUS_BUFFER_TOO_SMALL = 8,
  CREMONA_STATUS_PANIC = 9,
} CremonaStatus;

// A class in the Picard-Manin space.
typedef struct CremonaClass CremonaClass;

// A birational map of projective space.
typedef struct CremonaMap CremonaMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer
// stays valid until the next call into the library from the same thread.
const char *cremona_last_error(void);

// Library version as a static string.
const char *cremona_version(void);

// # Safety
// `s` must be null or a string returned by this library.
void cremona_string_free(char *s);

// Parses `[f0 : f1 : ...]`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum CremonaStatus cremona_map_parse(const char *text, struct CremonaMap **out);

// # Safety
// `map` must be null or a handle from this library, freed at most once.
void cremona_map_free(struct CremonaMap *map);

// # Safety
// `map` must be a live handle and `out` a valid pointer.
enum CremonaStatus cremona_map_degree(const struct CremonaMap *map, uint32_t *out);

// Canonical text of the map.
//
// # Safety
// `map` must be a live handle and `out` a valid pointer.
enum CremonaStatus cremona_map_to_string(const struct CremonaMap *map, char **out);

// `f ∘ g`.
//
// # Safety
// `f`, `g` must be live handles and `out` a valid pointer.
enum CremonaStatus cremona_map_compose(const struct CremonaMap *f,
                                       const struct CremonaMap *g,
                                       struct CremonaMap **out);

// Writes `deg f, …, deg f^n` into `buf` and the count into `len`. Stops
// early when an iterate exceeds `degree_cap`; `truncated` reports it.
//
// # Safety
// `buf` must hold `capacity` values; `len` and `truncated` must be valid.
enum CremonaStatus cremona_map_iterate_degrees(const struct CremonaMap *map,
                                               uintptr_t n,
                                               uint64_t degree_cap,
                                               uint64_t *buf,
                                               uintptr_t capacity,
                                               uintptr_t *len,
                                               bool *truncated);

// Logarithmic height `h(f)`; the exact `H(f)` goes to `big_h` as a decimal
// string when `big_h` is not null.
//
// # Safety
// `map` must be a live handle and `h` a valid pointer.
enum CremonaStatus cremona_map_height(const struct CremonaMap *map, double *h, char **big_h);

// Parses `{"e0":"5","exc":{"q1":"3","q2":"4"}}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum CremonaStatus cremona_class_from_json(const char *json, struct CremonaClass **out);

// # Safety
// `class` must be null or a handle from this library, freed at most once.
void cremona_class_free(struct CremonaClass *class_);

// Self-intersection as a decimal string.
//
// # Safety
// `class` must be a live handle and `out` a valid pointer.
enum CremonaStatus cremona_class_self_intersection(const struct CremonaClass *class_, char **out);

// Sets `certified` when `H_w(ε)` and `H_hw(ε)` are certified disjoint, for
// `w` the reference class of `family` (`'J'` or `'H'`).
//
// # Safety
// `hw` must be a live handle and `certified` a valid pointer.
enum CremonaStatus cremona_horoball_certificate(const struct CremonaClass *hw,
                                                char family,
                                                double epsilon,
                                                bool *certified);

// `ε_J` and `ε_H` in double precision.
//
// # Safety
// `epsilon_j` and `epsilon_h` must be valid pointers.
enum CremonaStatus cremona_epsilon_constants(double *epsilon_j, double *epsilon_h);

// Builds and verifies a witness word and returns it as JSON. `kind` is one
// of `sl2`, `jordan3` (uses `k`), `nilpotent` (uses `k` as the depth) or
// `bs` (uses `k` and `l = 2`).
//
// # Safety
// `kind` must be a NUL-terminated string and `out` a valid pointer.
enum CremonaStatus cremona_witness_json(const char *kind, int64_t k, uint32_t n, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CREMONA_H */
