#ifndef RADOHORN_H
#define RADOHORN_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define RH_FLAG_RENDER 1

#define RH_FLAG_ASCII_ONLY 2

#define RH_FLAG_TRACE 4

typedef enum RhStatus {
  RH_STATUS_OK = 0,
  RH_STATUS_NULL_POINTER = 1,
  RH_STATUS_INVALID_INPUT = 2,
  /**
   * The family contains a zero vector.
   */
  RH_STATUS_DEGENERATE = 3,
  RH_STATUS_BUDGET_EXCEEDED = 4,
  /**
   * The family does not split into the requested number of sets.
   */
  RH_STATUS_INFEASIBLE = 5,
  RH_STATUS_INTERNAL = 6,
  RH_STATUS_PANIC = 7,
} RhStatus;

/**
 * A family of rational vectors.
 */
typedef struct RhFamily RhFamily;

/**
 * An ordered partition of a family into independent blocks.
 */
typedef struct RhPartition RhPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *rh_last_error_message(void);

/**
 * Parses a JSON family document.
 */
enum RhStatus rh_family_from_json(const char *json, struct RhFamily **out);

/**
 * Builds a family of `count` integer vectors from `coords`, stored row by
 * row with `dimension` entries per vector.
 */
enum RhStatus rh_family_from_i64(size_t dimension,
                                 size_t count,
                                 const int64_t *coords,
                                 struct RhFamily **out);

void rh_family_free(struct RhFamily *family);

/**
 * Number of vectors, or 0 for a null handle.
 */
size_t rh_family_len(const struct RhFamily *family);

enum RhStatus rh_family_rank(const struct RhFamily *family, size_t *out);

/**
 * The fundamental partition of `family`.
 */
enum RhStatus rh_fundamental_partition(const struct RhFamily *family, struct RhPartition **out);

/**
 * A partition into at most `k` independent sets, or `RH_STATUS_INFEASIBLE`.
 */
enum RhStatus rh_partition_into_k(const struct RhFamily *family,
                                  size_t k,
                                  struct RhPartition **out);

void rh_partition_free(struct RhPartition *partition);

/**
 * Number of blocks, or 0 for a null handle.
 */
size_t rh_partition_block_count(const struct RhPartition *partition);

/**
 * Copies block `block` (1-based) into `indices`.
 *
 * `len` always receives the block size. If `capacity` is smaller, only
 * `capacity` indices are written and `RH_STATUS_INVALID_INPUT` is returned.
 */
enum RhStatus rh_partition_block(const struct RhPartition *partition,
                                 size_t block,
                                 size_t *indices,
                                 size_t capacity,
                                 size_t *len);

/**
 * Runs a CLI command on a JSON family and returns the JSON report.
 *
 * `command` is one of `partition`, `analyze`, `construct`, `witness`,
 * `remove` or `oracle`; `k` and `l` are ignored where unused. `flags`
 * combines the `RH_FLAG_*` bits. On `RH_STATUS_OK`, `report` receives a
 * string to release with [`rh_string_free`] and `exit_code` the exit code
 * the command line tool would use.
 */
enum RhStatus rh_run_command_json(const char *family_json,
                                  const char *command,
                                  size_t k,
                                  size_t l,
                                  uint32_t flags,
                                  char **report,
                                  uint8_t *exit_code);

void rh_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RADOHORN_H */
