#include <stdio.h>
#include <string.h>
#include "lambda_skeletons.h"

int main(void) {
    LsTerm *t = NULL, *c = NULL;
    if (ls_term_parse(LS_FAMILY_CLOSABLE, LS_REPR_BASE, "l(a(v,l(v)))", &t) != LS_STATUS_OK) return 1;
    if (ls_term_convert(t, -1, &c) != LS_STATUS_OK) return 2;
    char *s = ls_term_to_string(c);
    printf("%s\n", s);
    int bad = strcmp(s, "cl(a(v,l(v)))") != 0;
    ls_string_free(s);
    ls_term_free(c);
    ls_term_free(t);

    if (ls_term_parse(LS_FAMILY_CLOSABLE, LS_REPR_BASE, "a(l(v),v)", &t) != LS_STATUS_OK) return 3;
    if (ls_term_convert(t, -1, &c) != LS_STATUS_NOT_IN_FAMILY) return 4;
    printf("%s\n", ls_last_error());
    ls_term_free(t);

    char *n = NULL;
    if (ls_count(LS_FAMILY_MOTZKIN, 8, -1, &n) != LS_STATUS_OK) return 5;
    printf("%s\n", n);
    bad |= strcmp(n, "127") != 0;
    ls_string_free(n);
    return bad;
}
