#ifndef SLIDEWIN_H
#define SLIDEWIN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a C API call.
 */
typedef enum {
  SW_STATUS_OK = 0,
  SW_STATUS_NULL_POINTER = 1,
  SW_STATUS_INVALID_UTF8 = 2,
  SW_STATUS_PARSE = 3,
  SW_STATUS_INVALID_INPUT = 4,
  SW_STATUS_UNKNOWN_SYMBOL = 5,
  SW_STATUS_BUDGET = 6,
  SW_STATUS_TRIVIAL_LANGUAGE = 7,
  SW_STATUS_PRECONDITION = 8,
  SW_STATUS_INTERNAL = 9,
  SW_STATUS_PANIC = 10,
} SwStatus;

typedef enum {
  SW_FIXED_CLASS_CONSTANT = 0,
  SW_FIXED_CLASS_LOGARITHMIC = 1,
  SW_FIXED_CLASS_LINEAR = 2,
} SwFixedClass;

typedef enum {
  SW_VARIABLE_CLASS_TRIVIAL_CONSTANT = 0,
  SW_VARIABLE_CLASS_LOGARITHMIC = 1,
  SW_VARIABLE_CLASS_LINEAR = 2,
} SwVariableClass;

typedef enum {
  SW_PROBLEM_DFA1 = 0,
  SW_PROBLEM_DFA_LOG = 1,
  SW_PROBLEM_NFA1 = 2,
  SW_PROBLEM_NFA_LOG = 3,
} SwProblem;

/**
 * A parsed DFA or NFA.
 */
typedef struct SwAutomaton SwAutomaton;

/**
 * A streaming algorithm together with its current state.
 */
typedef struct SwStream SwStream;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on this thread.
 */
const char *sw_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer returned by this library and not yet freed.
 */
void sw_string_free(char *s);

/**
 * Parses an automaton in text or JSON form.
 *
 * # Safety
 * `src` must be a nul-terminated string and `out` a writable pointer.
 */
SwStatus sw_automaton_parse(const char *src, SwAutomaton **out);

/**
 * # Safety
 * `a` must be null or a handle from [`sw_automaton_parse`] not yet freed.
 */
void sw_automaton_free(SwAutomaton *a);

/**
 * Number of symbols in the automaton's alphabet.
 *
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
SwStatus sw_automaton_alphabet_len(const SwAutomaton *a, size_t *out);

/**
 * Index of the symbol spelled `token`.
 *
 * # Safety
 * `a` must be a live handle, `token` nul-terminated, `out` writable.
 */
SwStatus sw_automaton_symbol(const SwAutomaton *a, const char *token, size_t *out);

/**
 * Membership of a whitespace-separated word (single-character alphabets
 * may also be written without spaces).
 *
 * # Safety
 * `a` must be a live handle, `word` nul-terminated, `out` writable.
 */
SwStatus sw_automaton_accepts(const SwAutomaton *a, const char *word, bool *out);

/**
 * Space class in the fixed-size and variable-size window models.
 *
 * # Safety
 * `a` must be a live handle; both outputs writable.
 */
SwStatus sw_classify(const SwAutomaton *a, SwFixedClass *fixed, SwVariableClass *variable);

/**
 * Classification report with witnesses as a JSON string; release it with
 * [`sw_string_free`].
 *
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
SwStatus sw_classify_json(const SwAutomaton *a, char **out);

/**
 * Answers one of the four decision problems; `answer` is true when the
 * language lies in the class.
 *
 * # Safety
 * `a` must be a live handle and `answer` writable.
 */
SwStatus sw_decide(const SwAutomaton *a, SwProblem problem, bool *answer);

/**
 * Exact fixed-size space `F(n)` in bits.
 *
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
SwStatus sw_exact_fixed_space(const SwAutomaton *a, size_t n, size_t *out);

/**
 * Exact variable-size space `V(n)` in bits.
 *
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
SwStatus sw_exact_variable_space(const SwAutomaton *a, size_t n, size_t *out);

/**
 * Space-optimal variable-size window algorithm for a non-trivial language.
 *
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
SwStatus sw_stream_new_variable(const SwAutomaton *a, SwStream **out);

/**
 * Fixed-size window algorithm for window length `n`; the window starts
 * filled with symbol 0.
 *
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
SwStatus sw_stream_new_fixed(const SwAutomaton *a, size_t n, SwStream **out);

/**
 * # Safety
 * `s` must be null or a live stream handle.
 */
void sw_stream_free(SwStream *s);

/**
 * Feeds symbol index `symbol`.
 *
 * # Safety
 * `s` must be a live stream handle.
 */
SwStatus sw_stream_push(SwStream *s, size_t symbol);

/**
 * Expires the oldest symbol; ignored by fixed-size streams.
 *
 * # Safety
 * `s` must be a live stream handle.
 */
SwStatus sw_stream_pop(SwStream *s);

/**
 * Whether the current window belongs to the language.
 *
 * # Safety
 * `s` must be a live stream handle and `out` writable.
 */
SwStatus sw_stream_accepts(const SwStream *s, bool *out);

/**
 * Length in bits of the current state's encoding.
 *
 * # Safety
 * `s` must be a live stream handle and `out` writable.
 */
SwStatus sw_stream_state_bits(const SwStream *s, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SLIDEWIN_H */
