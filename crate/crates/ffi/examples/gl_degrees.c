/* Prints the degree/count table of GL_2 over Z_3 and a zeta slice.
 *
 *   cargo build -p regzeta-ffi --release
 *   cc crates/ffi/examples/gl_degrees.c -Icrates/ffi/include \
 *      -Ltarget/release -lregzeta_ffi -o gl_degrees
 *   LD_LIBRARY_PATH=target/release ./gl_degrees
 */
#include <stdio.h>
#include <stdlib.h>

#include "regzeta.h"

static int fail(RzStatus status) {
    char msg[256];
    size_t needed;
    rz_last_error(msg, sizeof msg, &needed);
    fprintf(stderr, "error %d: %s\n", (int)status, msg);
    return 1;
}

int main(void) {
    RzTable *table = NULL;
    RzStatus st = rz_table_new(RZ_FORM_GL, 2, 3, 1, &table);
    if (st != RZ_STATUS_OK) return fail(st);

    size_t len = 0;
    rz_table_len(table, &len);
    for (size_t i = 0; i < len; i++) {
        char degree[64], count[64];
        uint32_t triples[3 * 8];
        size_t needed, ntriples;
        rz_table_degree(table, i, degree, sizeof degree, &needed);
        rz_table_count(table, i, count, sizeof count, &needed);
        rz_table_type(table, i, triples, 8, &ntriples);
        printf("{");
        for (size_t k = 0; k < ntriples; k++)
            printf("%s(%u,%u):%u", k ? ", " : "", triples[3 * k], triples[3 * k + 1], triples[3 * k + 2]);
        printf("}  degree %s  count %s\n", degree, count);
    }
    rz_table_free(table);

    RzZeta *zeta = NULL;
    if ((st = rz_zeta_new(RZ_FORM_GL, 2, 3, &zeta)) != RZ_STATUS_OK) return fail(st);
    size_t needed = 0;
    rz_zeta_truncate_json(zeta, "100", NULL, 0, &needed);
    char *json = (char *)malloc(needed);
    if ((st = rz_zeta_truncate_json(zeta, "100", json, needed, &needed)) != RZ_STATUS_OK) return fail(st);
    printf("%s\n", json);
    free(json);

    double value;
    if (rz_zeta_evaluate(zeta, 1.0, &value) == RZ_STATUS_DIVERGES) printf("diverges at s = 1\n");
    rz_zeta_free(zeta);
    printf("regzeta %s\n", rz_version());
    return 0;
}
