#ifndef SEMICLIQUE_H
#define SEMICLIQUE_H

#include <stddef.h>
#include <stdint.h>

typedef enum ScStatus {
  SC_STATUS_OK = 0,
  SC_STATUS_NULL_POINTER = 1,
  SC_STATUS_INVALID_ARGUMENT = 2,
  SC_STATUS_CONFIG = 3,
  SC_STATUS_IO = 4,
  SC_STATUS_FORMAT = 5,
  SC_STATUS_VALIDATION = 6,
  SC_STATUS_BUFFER_TOO_SMALL = 7,
  SC_STATUS_PANIC = 8,
} ScStatus;

/*
 Candidate cliques returned by a solver.
 */
typedef struct ScCandidateList ScCandidateList;

/*
 Signed adjacency matrix.
 */
typedef struct ScGraph ScGraph;

/*
 Graph plus planted set and generation parameters.
 */
typedef struct ScInstance ScInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or null. Valid until the
 next call into this library on the same thread.
 */
const char *sc_last_error(void);

/*
 Generates an instance. `adversary` uses the textual form, e.g.
 `"sign_match:victims=4,pool=1024"`.

 # Safety
 `adversary` must be a valid C string and `out` a valid pointer.
 */
enum ScStatus sc_instance_generate(size_t n,
                                   size_t k,
                                   uint64_t seed,
                                   const char *adversary,
                                   struct ScInstance **out);

/*
 Loads `<stem>.spc1` and `<stem>.meta`, validating the planted set.

 # Safety
 `stem` must be a valid C string and `out` a valid pointer.
 */
enum ScStatus sc_instance_load(const char *stem, struct ScInstance **out);

/*
 # Safety
 `instance` must be a live handle and `stem` a valid C string.
 */
enum ScStatus sc_instance_save(const struct ScInstance *instance, const char *stem);

/*
 Copies the instance's graph into a new handle.

 # Safety
 `instance` must be a live handle and `out` a valid pointer.
 */
enum ScStatus sc_instance_graph(const struct ScInstance *instance, struct ScGraph **out);

/*
 Writes the planted set, sorted, into `buf`. `len` receives the set size
 even when `cap` is too small.

 # Safety
 `instance` must be a live handle, `len` a valid pointer and `buf` valid
 for `cap` writes (may be null when `cap` is 0).
 */
enum ScStatus sc_instance_planted(const struct ScInstance *instance,
                                  size_t *buf,
                                  size_t cap,
                                  size_t *len);

/*
 # Safety
 `instance` must be null or a handle not yet freed.
 */
void sc_instance_free(struct ScInstance *instance);

/*
 Reads an SPC1 graph file.

 # Safety
 `path` must be a valid C string and `out` a valid pointer.
 */
enum ScStatus sc_graph_load(const char *path, struct ScGraph **out);

/*
 # Safety
 `graph` must be a live handle and `path` a valid C string.
 */
enum ScStatus sc_graph_save(const struct ScGraph *graph, const char *path);

/*
 Vertex count, or 0 for a null handle.

 # Safety
 `graph` must be null or a live handle.
 */
size_t sc_graph_n(const struct ScGraph *graph);

/*
 Inner product of columns `u` and `v` of the signed matrix.

 # Safety
 `graph` must be a live handle and `out` a valid pointer.
 */
enum ScStatus sc_graph_inner(const struct ScGraph *graph, size_t u, size_t v, int64_t *out);

/*
 # Safety
 `graph` must be a live handle and `out` a valid pointer.
 */
enum ScStatus sc_graph_degree(const struct ScGraph *graph, size_t v, size_t *out);

/*
 # Safety
 `graph` must be null or a handle not yet freed.
 */
void sc_graph_free(struct ScGraph *graph);

/*
 Runs the triple-sampling solver with default settings. A negative
 `budget` selects the default number of sampled triples.

 # Safety
 `graph` must be a live handle and `out` a valid pointer.
 */
enum ScStatus sc_solve_semirandom(const struct ScGraph *graph,
                                  size_t k,
                                  uint64_t seed,
                                  int64_t budget,
                                  struct ScCandidateList **out);

/*
 Number of candidates, or 0 for a null handle.

 # Safety
 `list` must be null or a live handle.
 */
size_t sc_list_len(const struct ScCandidateList *list);

/*
 Writes candidate `index` into `buf`; `len` receives its size even when
 `cap` is too small.

 # Safety
 `list` must be a live handle, `len` a valid pointer and `buf` valid for
 `cap` writes (may be null when `cap` is 0).
 */
enum ScStatus sc_list_get(const struct ScCandidateList *list,
                          size_t index,
                          size_t *buf,
                          size_t cap,
                          size_t *len);

/*
 # Safety
 `list` must be null or a handle not yet freed.
 */
void sc_list_free(struct ScCandidateList *list);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEMICLIQUE_H */
