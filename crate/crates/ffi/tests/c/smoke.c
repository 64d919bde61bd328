#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "ribbon.h"

#define CHECK(cond)                                                       \
    do {                                                                  \
        if (!(cond)) {                                                    \
            const char *e = ribbon_last_error();                          \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond, \
                    e ? e : "no error");                                  \
            return 1;                                                     \
        }                                                                 \
    } while (0)

static char *slurp(const char *path) {
    FILE *f = fopen(path, "rb");
    if (!f) return NULL;
    fseek(f, 0, SEEK_END);
    long n = ftell(f);
    fseek(f, 0, SEEK_SET);
    char *buf = malloc((size_t)n + 1);
    if (fread(buf, 1, (size_t)n, f) != (size_t)n) {
        fclose(f);
        free(buf);
        return NULL;
    }
    buf[n] = '\0';
    fclose(f);
    return buf;
}

int main(int argc, char **argv) {
    CHECK(argc == 2);
    char *json = slurp(argv[1]);
    CHECK(json != NULL);

    RibbonDocument *doc = NULL;
    CHECK(ribbon_document_parse(json, &doc) == RIBBON_STATUS_OK);

    bool valid = false;
    CHECK(ribbon_document_validate(doc, &valid) == RIBBON_STATUS_OK && valid);

    uint64_t rb = 0;
    CHECK(ribbon_betti_rb(doc, "rbE", &rb) == RIBBON_STATUS_OK && rb == 6);

    RibbonBettiTriple t;
    CHECK(ribbon_betti_triple(doc, "rbE", &t) == RIBBON_STATUS_OK && t.b0 == 1 && t.b2 == 3);

    bool near = false;
    CHECK(ribbon_dx_near(doc, "rbE", "rbE", "b2_holes,b0_filaments", "1/2", &near) == RIBBON_STATUS_OK && near);

    CHECK(ribbon_betti_rb(doc, "missing", &rb) == RIBBON_STATUS_SCHEMA);
    CHECK(ribbon_last_error() != NULL);

    char *svg = NULL;
    CHECK(ribbon_render_svg(doc, "rbE", &svg) == RIBBON_STATUS_OK);
    CHECK(strncmp(svg, "<?xml", 5) == 0);
    ribbon_string_free(svg);

    char *canon = NULL;
    CHECK(ribbon_document_serialize(doc, &canon) == RIBBON_STATUS_OK && strcmp(canon, json) == 0);
    ribbon_string_free(canon);

    ribbon_document_free(doc);
    free(json);
    puts("ok");
    return 0;
}
