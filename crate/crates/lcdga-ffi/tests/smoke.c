#include <stdio.h>
#include <string.h>
#include "lcdga.h"

int main(void) {
    LcdgaSpec *spec = NULL;
    if (lcdga_spec_from_family("d4", &spec) != LCDGA_STATUS_OK) return 10;
    uintptr_t strands = 0, crossings = 0, components = 0;
    lcdga_spec_sizes(spec, &strands, &crossings, &components);
    if (strands != 4 || crossings != 20 || components != 4) return 11;
    LcdgaFilling *fill = NULL;
    if (lcdga_fill(spec, "a9,a10,a11,a12,a13,a14,a15,a16", &fill) != LCDGA_STATUS_OK) return 12;
    char *t1 = NULL;
    lcdga_filling_value(fill, "t1", &t1);
    if (strcmp(t1, "-s11*s15") != 0) return 13;
    lcdga_string_free(t1);
    LcdgaCertificate *cert = NULL;
    if (lcdga_certify(fill, "a11", "a9", 10, &cert) != LCDGA_STATUS_OK) return 14;
    char *e10 = NULL;
    lcdga_certificate_e(cert, 10, &e10);
    if (strcmp(e10, "38613965") != 0) return 15;
    lcdga_string_free(e10);
    if (lcdga_fill(spec, "a1", &fill) == LCDGA_STATUS_OK) return 16;
    if (strlen(lcdga_last_error()) == 0) return 17;
    lcdga_certificate_free(cert);
    lcdga_filling_free(fill);
    lcdga_spec_free(spec);
    printf("ok\n");
    return 0;
}
