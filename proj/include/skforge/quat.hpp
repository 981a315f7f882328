#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "skforge/errors.hpp"
#include "skforge/precision.hpp"

namespace skforge {

/// Angle in radians, clamped to [0, pi].
template <class T>
struct Angle {
    T radians;
};

template <class T>
struct Vec3 {
    T x, y, z;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(const T& s) const { return {x * s, y * s, z * s}; }
    T dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    T norm() const {
        using std::sqrt;
        return sqrt(dot(*this));
    }
    Vec3 normalized() const {
        T n = norm();
        return {x / n, y / n, z / n};
    }
};

/// Unit quaternion a + b iX + c iY + d iZ, identified with an element of
/// SU(2) via the Pauli basis. Note (iX)(iY) = -iZ in this basis, so the
/// triple (iX, iY, iZ) multiplies anti-cyclically.
template <class T>
struct Quat {
    T a{}, b{}, c{}, d{};

    static Quat identity() { return {T(1), T(0), T(0), T(0)}; }
    static Quat minus_identity() { return {T(-1), T(0), T(0), T(0)}; }

    T norm() const {
        using std::sqrt;
        return sqrt(a * a + b * b + c * c + d * d);
    }

    Quat inverse() const { return {a, -b, -c, -d}; }

    Quat renormalized() const {
        T n = norm();
        return {a / n, b / n, c / n, d / n};
    }

    Quat negated() const { return {-a, -b, -c, -d}; }

    /// Projective sign representative: first nonzero coordinate positive.
    Quat canonical() const {
        if (a != 0) return a > 0 ? *this : negated();
        if (b != 0) return b > 0 ? *this : negated();
        if (c != 0) return c > 0 ? *this : negated();
        return d >= 0 ? *this : negated();
    }

    Vec3<T> axis_vector() const { return {b, c, d}; }
};

using QuatR = Quat<Real>;
using Quatd = Quat<double>;

template <class T>
Quat<T> mul(const Quat<T>& x, const Quat<T>& y) {
    // Anti-cyclic basis: e1 e2 = -e3 etc., so the cross term enters with a
    // minus sign relative to textbook ijk quaternions.
    Quat<T> r;
    r.a = x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d;
    r.b = x.a * y.b + y.a * x.b - (x.c * y.d - x.d * y.c);
    r.c = x.a * y.c + y.a * x.c - (x.d * y.b - x.b * y.d);
    r.d = x.a * y.d + y.a * x.d - (x.b * y.c - x.c * y.b);
    return r.renormalized();
}

template <class T>
T clamp_unit(T v) {
    if (v > T(1)) return T(1);
    if (v < T(-1)) return T(-1);
    return v;
}

/// Bi-invariant distance on SU(2), computed in the chordal form
/// 2 asin(|g - h| / 2), which keeps full relative accuracy near 0.
template <class T>
Angle<T> distance(const Quat<T>& g, const Quat<T>& h) {
    using std::asin;
    T da = g.a - h.a, db = g.b - h.b, dc = g.c - h.c, dd = g.d - h.d;
    using std::sqrt;
    T chord = sqrt(da * da + db * db + dc * dc + dd * dd);
    T half = chord / 2;
    return {2 * asin(clamp_unit(half))};
}

/// Distance on PU(2): min over the sign ambiguity of the lift.
template <class T>
Angle<T> proj_distance(const Quat<T>& g, const Quat<T>& h) {
    T d1 = distance(g, h).radians;
    T d2 = distance(g.negated(), h).radians;
    return {d1 < d2 ? d1 : d2};
}

template <class T>
Angle<T> distance_to_identity(const Quat<T>& g) {
    return distance(g, Quat<T>::identity());
}

/// Corner angle at 1 of the spherical triangle (1, g, h): the angle between
/// the rotation axes of g and h.
template <class T>
Angle<T> angle_between(const Quat<T>& g, const Quat<T>& h) {
    using std::acos;
    T tolerance = prec::tol(16);
    if (distance_to_identity(g).radians < tolerance ||
        distance_to_identity(h).radians < tolerance)
        throw DegenerateInput("angle_between: argument too close to 1");
    Vec3<T> u = g.axis_vector().normalized();
    Vec3<T> v = h.axis_vector().normalized();
    return {acos(clamp_unit(u.dot(v)))};
}

/// g^u = u g u^-1 (the paper's conjugation convention).
template <class T>
Quat<T> conj_elem(const Quat<T>& g, const Quat<T>& u) {
    return mul(mul(u, g), u.inverse());
}

template <class T>
Quat<T> commutator(const Quat<T>& g, const Quat<T>& h) {
    return mul(mul(g, h), mul(g.inverse(), h.inverse()));
}

/// Closed-form commutator distance 2 asin(sin^2(psi) sin(theta)) for
/// conjugate g, h at distance psi from 1 and corner angle theta.
template <class T>
Angle<T> comm_distance(Angle<T> psi, Angle<T> theta) {
    using std::asin;
    using std::sin;
    T s = sin(psi.radians);
    T arg = s * s * sin(theta.radians);
    return {2 * asin(clamp_unit(arg))};
}

template <class T>
Quat<T> exp_axis(const Vec3<T>& axis, const T& angle) {
    using std::cos;
    using std::sin;
    Vec3<T> n = axis.normalized();
    T s = sin(angle);
    return {cos(angle), s * n.x, s * n.y, s * n.z};
}

template <class T>
struct AxisAngle {
    Vec3<T> axis;
    Angle<T> angle;
};

template <class T>
AxisAngle<T> log_elem(const Quat<T>& g) {
    using std::acos;
    Vec3<T> v = g.axis_vector();
    T vn = v.norm();
    if (vn < prec::tol(16)) {
        // +-1: axis is undefined; report z-hat with angle 0 or pi.
        T angle = g.a > 0 ? T(0) : acos(T(-1));
        return {{T(0), T(0), T(1)}, {angle}};
    }
    T angle = acos(clamp_unit(g.a));
    return {{v.x / vn, v.y / vn, v.z / vn}, {angle}};
}

template <class T>
Vec3<T> perpendicular_axis(const Vec3<T>& v) {
    using std::fabs;
    Vec3<T> n = v.normalized();
    Vec3<T> probe = fabs(n.x) < T(0.9) ? Vec3<T>{T(1), T(0), T(0)}
                                       : Vec3<T>{T(0), T(1), T(0)};
    return n.cross(probe).normalized();
}

/// A rotation element r with conj_elem(exp_axis(from, t), r) = exp_axis(to, t):
/// transports one rotation axis onto another.
template <class T>
Quat<T> axis_transport(const Vec3<T>& from, const Vec3<T>& to) {
    using std::acos;
    using std::sqrt;
    Vec3<T> f = from.normalized(), t = to.normalized();
    T c = clamp_unit(f.dot(t));
    Vec3<T> w = f.cross(t);
    T wn = w.norm();
    if (wn < prec::tol(24)) {
        if (c > 0) return Quat<T>::identity();
        // Antipodal: rotate by pi about any perpendicular axis.
        Vec3<T> p = perpendicular_axis(f);
        return exp_axis(p, acos(T(-1)) / 2);
    }
    T eta = acos(c);
    // Conjugation by exp_axis(w, s) rotates vectors by -2s about w.
    Vec3<T> wh{w.x / wn, w.y / wn, w.z / wn};
    T half = -eta / 2;
    return exp_axis(wh, half);
}

/// Divides a 2x2 unitary by a square root of its determinant and returns the
/// canonical-sign unit quaternion. Throws DegenerateInput when the matrix is
/// not (close to) unitary.
Quatd from_unitary(const std::array<std::complex<double>, 4>& m);

template <class T, class U>
Quat<T> convert(const Quat<U>& q) {
    return Quat<T>{T(q.a), T(q.b), T(q.c), T(q.d)}.renormalized();
}

}  // namespace skforge
