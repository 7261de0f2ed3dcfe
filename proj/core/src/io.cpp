#include "mvdecay/io.hpp"

#include <cstdio>

namespace mvdecay {

std::string format_real(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string format_complex(std::complex<double> z) {
    return format_real(z.real()) + "," + format_real(z.imag());
}

uint64_t fingerprint(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fingerprint_hex(const std::string& s) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fingerprint(s));
    return buf;
}

} // namespace mvdecay
