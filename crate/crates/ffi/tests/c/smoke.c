#include <stdio.h>
#include <string.h>

#include "qldpc.h"

static const char *FIVE =
    "QPC v1 n=5 m=4\n0w 1W 2W 3w\n1w 2W 3W 4w\n0w 2w 3W 4W\n0W 1w 3w 4W\n";

int main(void) {
    QldpcCode *code = NULL;
    if (qldpc_code_from_qpc(FIVE, &code) != QLDPC_STATUS_OK) {
        fprintf(stderr, "load: %s\n", qldpc_last_error());
        return 1;
    }
    size_t k = 0;
    if (qldpc_code_k(code, &k) != QLDPC_STATUS_OK || k != 1) return 2;

    uint8_t e[5] = {0, 0, 2, 0, 0};
    uint8_t s[4], est[5], s2[4];
    if (qldpc_code_syndrome(code, e, 5, s, 4) != QLDPC_STATUS_OK) return 3;
    bool converged = false;
    size_t iters = 0;
    if (qldpc_decode(code, s, 4, 0.05, QLDPC_ALGORITHM_SUM_PRODUCT, 50, est, 5, &converged, &iters)
        != QLDPC_STATUS_OK)
        return 4;
    qldpc_code_syndrome(code, est, 5, s2, 4);
    if (converged && memcmp(s, s2, 4) != 0) return 5;

    if (qldpc_code_syndrome(code, e, 3, s, 4) != QLDPC_STATUS_INVALID_ARGUMENT) return 6;
    if (strlen(qldpc_last_error()) == 0) return 7;

    QldpcStats st;
    if (qldpc_simulate(code, 0.1, 50, 7, QLDPC_ALGORITHM_MIN_SUM, 20, 1, &st) != QLDPC_STATUS_OK)
        return 8;
    if (st.trials != 50 || st.successes + st.logical_errors + st.detected_failures != 50) return 9;

    qldpc_code_free(code);
    printf("ok k=%zu\n", k);
    return 0;
}
