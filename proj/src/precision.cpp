#include "skforge/precision.hpp"

#include <algorithm>
#include <cmath>

namespace skforge::prec {

namespace {
unsigned digits10_for(unsigned bits) {
    // mpfr backends size themselves in decimal digits; round up so the
    // effective mantissa is at least `bits` wide.
    return static_cast<unsigned>(bits * 0.30103) + 3;
}

struct ThreadBits {
    unsigned value = 128;
    // Keep the backend's default in sync from the start, so Reals created
    // before any explicit set_bits already carry the nominal precision.
    ThreadBits() { Real::default_precision(digits10_for(value)); }
};
thread_local ThreadBits g_bits;
}  // namespace

unsigned bits() { return g_bits.value; }

void set_bits(unsigned b) {
    g_bits.value = b;
    Real::default_precision(digits10_for(b));
}

Real tol(int k) {
    Real t(1);
    return ldexp(t, k - static_cast<int>(g_bits.value));
}

unsigned for_target(int n) {
    return std::max(128u, static_cast<unsigned>(4 * std::max(n, 0) + 64));
}

}  // namespace skforge::prec
