/* Enumerates the genus-1 maps of K4 through the C interface. */
#include <stdio.h>
#include <string.h>

#include "mapgen.h"

int main(void) {
    MapgenGraph *graph = NULL;
    if (mapgen_graph_from_graph6("C~", &graph) != MAPGEN_STATUS_OK) {
        fprintf(stderr, "parse failed: %s\n", mapgen_last_error_message());
        return 1;
    }
    MapgenResult *result = NULL;
    MapgenStatus status =
        mapgen_enumerate(graph, MAPGEN_TARGET_KIND_GENUS, 1, MAPGEN_MODE_FINAL, 0, &result);
    if (status != MAPGEN_STATUS_OK) {
        fprintf(stderr, "enumerate failed: %s\n", mapgen_last_error_message());
        mapgen_graph_free(graph);
        return 1;
    }
    size_t count = mapgen_result_count(result);
    printf("%zu\n", count);
    for (size_t i = 0; i < count; i++) {
        fputs(mapgen_result_record(result, i), stdout);
    }
    char *total = NULL;
    if (mapgen_total_embedding_count(graph, &total) == MAPGEN_STATUS_OK) {
        printf("total %s\n", total);
        mapgen_string_free(total);
    }
    if (mapgen_enumerate(graph, 7, 0, MAPGEN_MODE_FINAL, 0, &result) != MAPGEN_STATUS_DOMAIN) {
        return 1;
    }
    mapgen_result_free(result);
    mapgen_graph_free(graph);
    return 0;
}
