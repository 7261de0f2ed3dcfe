#pragma once
#include <complex>
#include <cstdint>
#include <string>

namespace mvdecay {

// 12 significant digits, '.' decimal separator — the pinned file format.
std::string format_real(double x);
std::string format_complex(std::complex<double> z); // "re+imj" style pair "a,b" callers place

// FNV-1a over the canonical textual form of a config; used to key golden
// entries and report contexts.
uint64_t fingerprint(const std::string& s);
std::string fingerprint_hex(const std::string& s);

} // namespace mvdecay
