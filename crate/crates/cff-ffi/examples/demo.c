/* Demo consumer of the C API: parse, evaluate, emit, and factor. */
#include <stdio.h>
#include <string.h>

#include "cff.h"

static int check(enum CffStatus status, const char *what) {
    if (status != CFF_STATUS_OK) {
        fprintf(stderr, "%s failed: %s\n", what, cff_last_error_message());
        return 1;
    }
    return 0;
}

int main(void) {
    struct CffTerm *term = NULL;
    if (check(cff_term_parse("gcd(n, factorial(floor_root(2, n)))", &term), "parse"))
        return 1;

    char *rendered = NULL;
    if (check(cff_term_render(term, &rendered), "render"))
        return 1;
    printf("term: %s\n", rendered);
    cff_string_free(rendered);

    const char *names[] = {"n"};
    const char *values[] = {"50"};
    char *result = NULL;
    if (check(cff_term_eval(term, names, values, 1, &result), "eval"))
        return 1;
    printf("value at n=50: %s\n", result);
    if (strcmp(result, "10") != 0)
        return 1;
    cff_string_free(result);
    cff_term_free(term);

    struct CffFactorReport report;
    if (check(cff_factor(50, CFF_METHOD_T, CFF_BACKEND_NATIVE, &report), "factor"))
        return 1;
    printf("T(50) = %llu * %llu (chi=%llu omega=%llu root=%llu proper=%d)\n",
           (unsigned long long)report.divisor, (unsigned long long)report.cofactor,
           (unsigned long long)report.chi, (unsigned long long)report.omega,
           (unsigned long long)report.root, (int)report.proper);
    if (report.divisor != 10 || !report.proper)
        return 1;

    uint64_t chi = 0;
    if (check(cff_chi(16, CFF_BACKEND_FULL_TERM, &chi), "chi"))
        return 1;
    printf("chi(16) = %llu\n", (unsigned long long)chi);
    return chi == 4 ? 0 : 1;
}
