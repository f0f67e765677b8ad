#include <stdio.h>
#include <string.h>
#include "heckekernel.h"

#define CHECK(x) do { int32_t rc_ = (x); if (rc_ != HK_OK) { fprintf(stderr, "%s -> %d: %s\n", #x, rc_, hk_last_error()); return 1; } } while (0)

int main(void) {
    HkAlgebra *alg = NULL;
    HkElement *s = NULL, *sq = NULL;
    char *json = NULL;
    CHECK(hk_algebra_new_preset("A1-sc", NULL, &alg));
    CHECK(hk_element_parse(alg, "[{w:\"s1\"}]", &s));
    CHECK(hk_element_mul(alg, s, s, &sq));
    CHECK(hk_element_to_json(alg, sq, &json));
    printf("%s\n", json);
    hk_string_free(json);
    if (hk_algebra_new_preset("E8", NULL, &alg) != HK_ERR_INVALID) return 2;
    printf("error: %s\n", hk_last_error());
    hk_element_free(sq);
    hk_element_free(s);
    hk_algebra_free(alg);
    return 0;
}
