#pragma once

#include <boost/multiprecision/mpfr.hpp>

namespace skforge {

/// Configurable-precision real scalar. The mantissa width is a per-thread
/// context parameter; see prec::set_bits.
using Real = boost::multiprecision::mpfr_float;

namespace prec {

/// Nominal mantissa precision (bits) of the calling thread.
unsigned bits();

/// Sets the thread's working precision. The underlying backend is given at
/// least `b` bits; tolerances are expressed against the nominal value.
void set_bits(unsigned b);

/// 2^(k - bits()), the spec tolerances' common shape.
Real tol(int k);

/// Working precision for a synthesis target of 2^-n: max(128, 4n + 64).
unsigned for_target(int n);

struct Scoped {
    explicit Scoped(unsigned b) : prev_(bits()) { set_bits(b); }
    ~Scoped() { set_bits(prev_); }
    Scoped(const Scoped&) = delete;
    Scoped& operator=(const Scoped&) = delete;

  private:
    unsigned prev_;
};

}  // namespace prec
}  // namespace skforge
