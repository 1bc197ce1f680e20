#ifndef UNETS_H
#define UNETS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#pragma GCC visibility push(default)
#endif

typedef enum {
    UNETS_OK = 0,
    UNETS_E_PARSE = 1,     /* malformed text; see unets_last_error_line/column */
    UNETS_E_INVALID = 2,   /* not a proper network, or wrong kind of graph */
    UNETS_E_ARGUMENT = 3,  /* bad argument (null pointer, leaf sets differ, unknown name) */
    UNETS_E_BUDGET = 4,    /* search budget exhausted */
    UNETS_E_IO = 5,
    UNETS_E_INTERNAL = 6
} unets_status;

typedef enum { UNETS_TBR = 0, UNETS_PR = 1, UNETS_REPLUG = 2, UNETS_AD = 3, UNETS_EAD = 4 } unets_metric;

/* Message, line and column of the last failure on this thread. */
const char* unets_last_error(void);
size_t unets_last_error_line(void);
size_t unets_last_error_column(void);

void unets_string_free(char* s);

/* A leaf-labelled multigraph. Handles from unets_network_parse are
   validated networks; the others may be arbitrary graphs. */
typedef struct unets_graph unets_graph;

unets_status unets_graph_parse(const char* text, unets_graph** out);
unets_status unets_graph_read(const char* path, unets_graph** out);
/* Parses and validates. */
unets_status unets_network_parse(const char* text, unets_graph** out);
unets_status unets_network_read(const char* path, unets_graph** out);
void unets_graph_free(unets_graph* g);

typedef struct {
    int valid;
    const char* clause;   /* violated clause when not valid */
    int64_t witness_edge; /* offending edge id or -1 */
    size_t leaves;
    size_t tier;
} unets_validation;

/* The clause string stays valid for the life of the program. */
unets_status unets_validate(const unets_graph* g, unets_validation* out);
int unets_graph_is_network(const unets_graph* g);
size_t unets_graph_leaves(const unets_graph* g);
size_t unets_graph_tier(const unets_graph* g);
unets_status unets_graph_serialize(const unets_graph* g, char** out);
unets_status unets_graph_code(const unets_graph* g, char** hex);
unets_status unets_graph_dot(const unets_graph* g, char** out);

/* A list of graphs, each with a note (a move description or a code). */
typedef struct unets_graph_list unets_graph_list;
size_t unets_list_size(const unets_graph_list* l);
const unets_graph* unets_list_graph(const unets_graph_list* l, size_t i);
const char* unets_list_note(const unets_graph_list* l, size_t i);
void unets_list_free(unets_graph_list* l);

/* op: "tbr0", "tbr+", "tbr-", "pr0" or "replug". */
unets_status unets_neighbors(const unets_graph* net, const char* op, unets_graph_list** out);
unets_status unets_enumerate(size_t n, size_t tier, unets_graph_list** out);
/* Random leaf-insertion tree plus `tier` random TBR+ moves. */
unets_status unets_generate(size_t n, size_t tier, uint64_t seed, size_t index, unets_graph** out);

typedef struct {
    size_t distance;
    int stable;      /* BFS metrics: same value at slack + 1 */
    size_t wider;    /* value at slack + 1 */
    long window_lo;
    long window_hi;
    int witness_ok;  /* witness replayed from a to b (TBR, PR, replug) */
} unets_distance_info;

/* slack < 0 keeps the default. */
unets_status unets_distance(const unets_graph* a, const unets_graph* b, unets_metric metric, long slack,
                            unets_distance_info* out);

typedef struct {
    size_t distance;
    size_t components;
} unets_maf_info;

unets_status unets_maf(const unets_graph* a, const unets_graph* b, unets_maf_info* out);

typedef struct unets_mag unets_mag;

unets_status unets_mag_compute(const unets_graph* a, const unets_graph* b, unets_mag** out);
size_t unets_mag_distance(const unets_mag* m);
size_t unets_mag_subgraphs(const unets_mag* m);
/* Both embeddings pass the embedding and ordering checks. */
int unets_mag_certified(const unets_mag* m);
/* which = 0: the agreement graph, 1: host a, 2: host b (disagreement paths
   highlighted). */
unets_status unets_mag_dot(const unets_mag* m, int which, char** out);
/* TBR sequence from a to b built from the agreement graph. */
unets_status unets_mag_sequence(const unets_mag* m, unets_graph_list** out);
void unets_mag_free(unets_mag* m);

typedef struct {
    size_t n;
    size_t tier_lo;
    size_t tier_hi;
    size_t count; /* 0: full enumeration */
    uint64_t seed;
    const char* claims; /* comma separated, NULL for all */
} unets_verify_spec;

/* report receives key=value lines; *ok is 1 when every claim held. */
unets_status unets_verify(const unets_verify_spec* spec, char** report, int* ok);

#if defined(__GNUC__)
#pragma GCC visibility pop
#endif

#ifdef __cplusplus
}
#endif

#endif
