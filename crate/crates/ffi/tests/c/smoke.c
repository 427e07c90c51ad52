#include <stdio.h>
#include <string.h>

#include "semiclique.h"

#define CHECK(call)                                                      \
    do {                                                                 \
        ScStatus s_ = (call);                                            \
        if (s_ != SC_STATUS_OK) {                                        \
            fprintf(stderr, "%s -> %d: %s\n", #call, (int)s_,            \
                    sc_last_error() ? sc_last_error() : "(none)");       \
            return 1;                                                    \
        }                                                                \
    } while (0)

int main(void) {
    ScInstance *inst = NULL;
    ScGraph *graph = NULL;
    ScCandidateList *list = NULL;
    size_t planted[64], got[64], len = 0, glen = 0;

    CHECK(sc_instance_generate(128, 40, 7, "random", &inst));
    CHECK(sc_instance_graph(inst, &graph));
    CHECK(sc_instance_planted(inst, planted, 64, &len));
    if (sc_graph_n(graph) != 128 || len != 40) return 2;

    CHECK(sc_solve_semirandom(graph, 40, 1, -1, &list));
    int found = 0;
    for (size_t i = 0; i < sc_list_len(list); i++) {
        CHECK(sc_list_get(list, i, got, 64, &glen));
        if (glen == len && memcmp(got, planted, len * sizeof(size_t)) == 0) found = 1;
    }
    if (!found) return 3;

    if (sc_instance_generate(8, 9, 1, "random", &inst) != SC_STATUS_INVALID_ARGUMENT) return 4;
    if (sc_last_error() == NULL) return 5;

    sc_list_free(list);
    sc_graph_free(graph);
    sc_instance_free(inst);
    printf("ok\n");
    return 0;
}
