#include <stdio.h>
#include <string.h>
#include "psl.h"

int main(void) {
    PslPrimeTable *t = NULL;
    if (psl_prime_table_new(100000, &t) != PSL_STATUS_OK) return 1;
    uint64_t pi = 0;
    psl_prime_table_pi(t, 1000000, &pi);
    printf("pi(1e6) = %llu\n", (unsigned long long)pi);

    int32_t is_prime = -1;
    psl_is_prime("31380813002879", &is_prime);
    printf("31380813002879 prime: %d\n", is_prime);

    char buf[64];
    psl_sum_term(t, "plain", 7, buf, sizeof buf);
    printf("S_7 = %s\n", buf);

    uint64_t count = 0;
    psl_scan_count(t, "plain", 1000, 0, &count);
    printf("pi_1000 = %llu\n", (unsigned long long)count);

    double mk = 0, res = 0;
    psl_solve_mk(23, "109147", &mk, &res);
    printf("M_23 = %.6f\n", mk);

    double v = 0;
    psl_li(1e6, &v);
    printf("li(1e6) = %.3f\n", v);

    PslStatus st = psl_is_prime("not a number", &is_prime);
    if (st != PSL_STATUS_OK) {
        char err[128];
        psl_last_error(err, sizeof err);
        printf("expected failure: %s\n", err);
    }
    psl_prime_table_free(t);
    return 0;
}
