#ifndef SCOREGAME_H
#define SCOREGAME_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SgStatus {
  SG_STATUS_OK = 0,
  SG_STATUS_NULL_POINTER = 1,
  SG_STATUS_INVALID_UTF8 = 2,
  SG_STATUS_PARSE_ERROR = 3,
  SG_STATUS_INVALID_ARGUMENT = 4,
  SG_STATUS_UNIVERSE_ERROR = 5,
  SG_STATUS_PANIC = 6,
} SgStatus;

typedef enum SgStyle {
  SG_STYLE_COMPACT = 0,
  SG_STYLE_FULL = 1,
} SgStyle;

typedef enum SgOutcome {
  SG_OUTCOME_LEFT = 0,
  SG_OUTCOME_RIGHT = 1,
  SG_OUTCOME_NEXT = 2,
  SG_OUTCOME_PREVIOUS = 3,
  SG_OUTCOME_TIE = 4,
} SgOutcome;

typedef enum SgRelation {
  SG_RELATION_GREATER_EQUAL = 0,
  SG_RELATION_LESS_EQUAL = 1,
  SG_RELATION_EQUAL = 2,
} SgRelation;

typedef enum SgVerdict {
  SG_VERDICT_PROVED = 0,
  SG_VERDICT_REFUTED = 1,
  SG_VERDICT_UNREFUTED = 2,
} SgVerdict;

typedef enum SgMode {
  SG_MODE_SOUND = 0,
  SG_MODE_CONJECTURAL = 1,
} SgMode;

/*
 A game term.
 */
typedef struct SgGame SgGame;

/*
 A universe of contexts together with its comparison cache.
 */
typedef struct SgUniverse SgUniverse;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread, or null. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *sg_last_error(void);

/*
 Library version as a static string.
 */
const char *sg_version(void);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void sg_string_free(char *s);

/*
 Parses bracket notation such as `{1|0|0}`.

 # Safety
 `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum SgStatus sg_game_parse(const char *text_ptr, struct SgGame **out);

/*
 A game with no options and the given score, e.g. `"-3/2"`.

 # Safety
 `score` must be a nul-terminated string and `out` a valid pointer.
 */
enum SgStatus sg_game_leaf(const char *score, struct SgGame **out);

/*
 # Safety
 `g` must be null or a game returned by this library, not yet freed.
 */
void sg_game_free(struct SgGame *g);

/*
 # Safety
 `g` must be a live game handle and `out` a valid pointer.
 */
enum SgStatus sg_game_clone(const struct SgGame *g, struct SgGame **out);

/*
 # Safety
 `g` must be a live game handle and `out` a valid pointer.
 */
enum SgStatus sg_game_print(const struct SgGame *g, enum SgStyle style, char **out);

/*
 Left and Right final scores as exact decimal strings such as `-1` or `3/4`.

 # Safety
 `g` must be a live game handle; both outputs must be valid pointers.
 */
enum SgStatus sg_game_final_scores(const struct SgGame *g, char **out_left, char **out_right);

/*
 # Safety
 `g` must be a live game handle and `out` a valid pointer.
 */
enum SgStatus sg_game_outcome(const struct SgGame *g, enum SgOutcome *out);

/*
 Long-rule disjunctive sum.

 # Safety
 `g` and `h` must be live game handles and `out` a valid pointer.
 */
enum SgStatus sg_game_sum(const struct SgGame *g, const struct SgGame *h, struct SgGame **out);

/*
 # Safety
 `g` must be a live game handle and `out` a valid pointer.
 */
enum SgStatus sg_game_negate(const struct SgGame *g, struct SgGame **out);

/*
 # Safety
 `g` and `h` must be live game handles and `out` a valid pointer.
 */
enum SgStatus sg_game_identical(const struct SgGame *g, const struct SgGame *h, bool *out);

/*
 # Safety
 `g` and `h` must be live game handles and `out` a valid pointer.
 */
enum SgStatus sg_game_equivalent(const struct SgGame *g, const struct SgGame *h, bool *out);

/*
 Compiles a Toads-and-Frogs strip over `T`, `F`, `B`.

 # Safety
 `position` must be a nul-terminated string and `out` a valid pointer.
 */
enum SgStatus sg_tf_to_game(const char *position, struct SgGame **out);

/*
 The default universe: depth 2, width 2, scores -2..2, at most 3 vertices.

 # Safety
 `out` must be a valid pointer.
 */
enum SgStatus sg_universe_default(struct SgUniverse **out);

/*
 A universe of games with the given depth and width bounds, scores from
 the comma-separated list, and at most `max_nodes` vertices (0 for no
 bound).

 # Safety
 `scores` must be a nul-terminated string and `out` a valid pointer.
 */
enum SgStatus sg_universe_new(uint32_t max_depth,
                              uint32_t max_width,
                              const char *scores,
                              uint64_t max_nodes,
                              struct SgUniverse **out);

/*
 # Safety
 `u` must be null or a universe returned by this library, not yet freed.
 */
void sg_universe_free(struct SgUniverse *u);

/*
 # Safety
 `u` must be a live universe handle and `out` a valid pointer.
 */
enum SgStatus sg_universe_size(const struct SgUniverse *u, size_t *out);

/*
 Decides or searches `g REL h` over the universe.

 `out_text` receives the verdict in words. When refuted and `out_witness`
 is not null, it receives the refuting context; otherwise it is set to
 null.

 # Safety
 Handles must be live; `out_verdict` and `out_text` must be valid pointers;
 `out_witness` may be null.
 */
enum SgStatus sg_compare(const struct SgUniverse *u,
                         enum SgRelation relation,
                         const struct SgGame *g,
                         const struct SgGame *h,
                         enum SgVerdict *out_verdict,
                         char **out_text,
                         struct SgGame **out_witness);

/*
 Canonical form of `g`. `order_seed` 0 is the default reduction order;
 `out_steps` may be null.

 # Safety
 Handles must be live; `out` must be a valid pointer; `out_steps` may be
 null.
 */
enum SgStatus sg_canonicalize(const struct SgUniverse *u,
                              const struct SgGame *g,
                              enum SgMode mode,
                              uint64_t order_seed,
                              struct SgGame **out,
                              size_t *out_steps);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCOREGAME_H */
