#include "skforge/quat.hpp"

namespace skforge {

Quatd from_unitary(const std::array<std::complex<double>, 4>& m) {
    using C = std::complex<double>;
    C det = m[0] * m[3] - m[1] * m[2];
    if (std::abs(std::abs(det) - 1.0) > 1e-8)
        throw DegenerateInput("from_unitary: determinant not of unit modulus");
    C s = std::sqrt(det);
    C m00 = m[0] / s, m01 = m[1] / s, m10 = m[2] / s, m11 = m[3] / s;
    // M = aI + i b X + i c Y + i d Z
    Quatd q;
    q.a = 0.5 * (m00.real() + m11.real());
    q.d = 0.5 * (m00.imag() - m11.imag());
    q.c = 0.5 * (m01.real() - m10.real());
    q.b = 0.5 * (m01.imag() + m10.imag());
    // unitarity check: the remaining components must vanish
    double ra = 0.5 * (m00.real() - m11.real());
    double rb = 0.5 * (m01.imag() - m10.imag());
    double rc = 0.5 * (m01.real() + m10.real());
    double rd = 0.5 * (m00.imag() + m11.imag());
    if (ra * ra + rb * rb + rc * rc + rd * rd > 1e-12)
        throw DegenerateInput("from_unitary: matrix is not special unitary");
    return q.renormalized().canonical();
}

}  // namespace skforge
