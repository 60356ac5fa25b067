/* Counts k-cliques in an edge list: count <path> <k> */
#include <stdio.h>
#include <stdlib.h>

#include "kclique.h"

int main(int argc, char **argv) {
  if (argc != 3) {
    fprintf(stderr, "usage: %s <path> <k>\n", argv[0]);
    return 2;
  }
  KcGraph *graph = NULL;
  KcStatus status = kc_graph_load(argv[1], &graph);
  if (status != KC_STATUS_OK) {
    fprintf(stderr, "load failed (%d): %s\n", status, kc_last_error_message());
    return 1;
  }
  KcConfig config = kc_config_default();
  config.k = (uint32_t)strtoul(argv[2], NULL, 10);
  config.instrument = 1;
  uint64_t count = 0;
  KcStats stats;
  status = kc_count(graph, &config, &count, &stats);
  kc_graph_free(graph);
  if (status != KC_STATUS_OK) {
    fprintf(stderr, "count failed (%d): %s\n", status, kc_last_error_message());
    return 1;
  }
  printf("cliques=%llu work_model=%llu\n", (unsigned long long)count, (unsigned long long)stats.work_model);
  return 0;
}
