#ifndef SHADOW_MARKOFF_H
#define SHADOW_MARKOFF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SmStatus {
  SM_STATUS_OK = 0,
  SM_STATUS_NULL_POINTER = 1,
  SM_STATUS_INVALID_UTF8 = 2,
  SM_STATUS_PARSE_ERROR = 3,
  SM_STATUS_DIVISION_BY_ZERO = 4,
  SM_STATUS_DEPTH_LIMIT = 5,
  SM_STATUS_PRECONDITION = 6,
  SM_STATUS_INTERNAL = 7,
} SmStatus;

/**
 * Opaque set of positivity half-planes to a fixed depth.
 */
typedef struct SmConstraintSet SmConstraintSet;

/**
 * Opaque shadow tree.
 */
typedef struct SmTree SmTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread; empty after success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *sm_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void sm_string_free(char *s);

/**
 * Builds the tree of `height` levels below the prefix node for the root
 * shadows `root` (`"alpha,beta,gamma"`).
 *
 * # Safety
 * `root` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SmStatus sm_tree_build(const char *root, size_t height, struct SmTree **out);

/**
 * # Safety
 * `tree` must be null or a handle from [`sm_tree_build`], not yet freed.
 */
void sm_tree_free(struct SmTree *tree);

/**
 * Number of nodes, or 0 for a null handle.
 *
 * # Safety
 * `tree` must be null or a live handle.
 */
size_t sm_tree_node_count(const struct SmTree *tree);

/**
 * Nested-list text of the tree, indented one space per level.
 *
 * # Safety
 * `tree` must be a live handle and `out` a valid pointer.
 */
enum SmStatus sm_tree_to_sage(const struct SmTree *tree, char **out);

/**
 * JSON nested list with rationals as `"p/q"` strings.
 *
 * # Safety
 * `tree` must be a live handle and `out` a valid pointer.
 */
enum SmStatus sm_tree_to_json(const struct SmTree *tree, char **out);

/**
 * Rows visited from `root` along `r`, `l`, then `word`, one row per line.
 *
 * # Safety
 * `root` and `word` must be NUL-terminated strings and `out` a valid pointer.
 */
enum SmStatus sm_path(const char *root, const char *word, char **out);

/**
 * Breadth-first search for a negative shadow from the chart point
 * `"alpha,beta"`. Sets `*found` to 1 and `*description` to a text such as
 * `word="lr" row=4 field=gamma value=-3` when one exists, otherwise `*found`
 * is 0 and `*description` null.
 *
 * # Safety
 * `point` must be a NUL-terminated string; `found` and `description` valid
 * pointers.
 */
enum SmStatus sm_find_witness(const char *point, size_t max_depth, int *found, char **description);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum SmStatus sm_constraint_set_build(size_t depth, struct SmConstraintSet **out);

/**
 * # Safety
 * `set` must be null or a handle from [`sm_constraint_set_build`], not yet
 * freed.
 */
void sm_constraint_set_free(struct SmConstraintSet *set);

/**
 * Number of distinct half-planes, or 0 for a null handle.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
size_t sm_constraint_set_len(const struct SmConstraintSet *set);

/**
 * Sets `*positive` to 1 when the chart point satisfies every half-plane.
 * Otherwise `*positive` is 0 and, if `witness_word` is non-null, it receives
 * the word of the first violated half-plane.
 *
 * # Safety
 * `set` must be a live handle, `point` a NUL-terminated string, `positive`
 * valid; `witness_word` may be null.
 */
enum SmStatus sm_constraint_set_classify(const struct SmConstraintSet *set,
                                         const char *point,
                                         int *positive,
                                         char **witness_word);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHADOW_MARKOFF_H */
