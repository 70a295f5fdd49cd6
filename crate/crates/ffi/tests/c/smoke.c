#include <stdio.h>
#include <string.h>

#include "ffh.h"

int main(void) {
    FfhTransform *t = NULL;
    if (ffh_transform_new("z^4", 3, 3, 0, 0, true, &t) != FFH_STATUS_OK) {
        fprintf(stderr, "transform failed: %s\n", ffh_last_error());
        return 1;
    }
    FfhClassKind kind;
    uint32_t degree;
    ffh_transform_classification(t, &kind, &degree);
    char *text = NULL;
    ffh_transform_to_string(t, &text);
    bool passed = false;
    ffh_transform_verify(t, &passed);
    printf("%d %u %s %d\n", (int)kind, degree, text, (int)passed);
    ffh_string_free(text);
    ffh_transform_free(t);

    if (ffh_transform_new("z^-1", 3, 3, 0, 0, true, &t) != FFH_STATUS_PARSE) {
        return 2;
    }
    printf("%s\n", ffh_last_error());
    return 0;
}
