/* Minimal C client: load a built-in fan, query quantum and symplectic
 * cohomology dimensions, print a report. Build against include/qtoric.h
 * and link with -lqtoric_ffi. */

#include "qtoric.h"
#include <stdio.h>

int main(void) {
  qtoric_fan *fan = NULL;
  qtoric_status st = qtoric_fan_example("blp-cxp1", 0, 0, &fan);
  if (st != QTORIC_OK) {
    fprintf(stderr, "example: %s\n", qtoric_last_error_message());
    return 1;
  }

  size_t qdim = 0;
  st = qtoric_quantum_dim(fan, &qdim);
  if (st != QTORIC_OK) {
    fprintf(stderr, "quantum: %s\n", qtoric_last_error_message());
    qtoric_fan_free(fan);
    return 1;
  }
  printf("quantum dim = %zu\n", qdim);

  int64_t v[2] = {1, 1};
  size_t sdim = 0;
  st = qtoric_symplectic_dim(fan, v, 2, &sdim);
  if (st != QTORIC_OK) {
    fprintf(stderr, "symplectic: %s\n", qtoric_last_error_message());
    qtoric_fan_free(fan);
    return 1;
  }
  printf("symplectic dim = %zu\n", sdim);

  char *report = NULL;
  st = qtoric_report(fan, "{\"command\":\"core\"}", &report);
  if (st == QTORIC_OK) {
    printf("%s\n", report);
    qtoric_string_free(report);
  }

  qtoric_fan_free(fan);
  return 0;
}
