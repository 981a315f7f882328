#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "skforge/precision.hpp"
#include "skforge/quat.hpp"

using namespace skforge;

namespace {

std::mt19937_64 rng(42);

double urand() { return (rng() >> 11) * 0x1p-53; }
double srand1() { return 2 * urand() - 1; }

Quatd random_quat() {
    while (true) {
        Quatd q{srand1(), srand1(), srand1(), srand1()};
        double n = (double)q.norm();
        if (n > 0.1) return q.renormalized();
    }
}

using C = std::complex<double>;
using Mat = std::array<C, 4>;  // row-major 2x2

// aI + b iX + c iY + d iZ in the Pauli basis.
Mat to_matrix(const Quatd& q) {
    C i(0, 1);
    return {q.a + i * q.d, q.c + i * q.b, -q.c + i * q.b, q.a - i * q.d};
}

Mat matmul(const Mat& x, const Mat& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

double mat_dist(const Mat& x, const Mat& y) {
    double s = 0;
    for (int k = 0; k < 4; ++k) s += std::norm(x[k] - y[k]);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("quaternion product matches the 2x2 complex matrix oracle") {
    // The specific pair exp(i pi X / 4) * exp(i pi Y / 4).
    Quatd gx = exp_axis(Vec3<double>{1, 0, 0}, std::acos(-1.0) / 4);
    Quatd gy = exp_axis(Vec3<double>{0, 1, 0}, std::acos(-1.0) / 4);
    CHECK(mat_dist(to_matrix(mul(gx, gy)), matmul(to_matrix(gx), to_matrix(gy)))
          < 1e-14);

    for (int t = 0; t < 100; ++t) {
        Quatd a = random_quat(), b = random_quat();
        CHECK(mat_dist(to_matrix(mul(a, b)), matmul(to_matrix(a), to_matrix(b)))
              < 1e-13);
    }
}

TEST_CASE("identity and inverse cases of mul") {
    Quatd q = random_quat();
    CHECK((double)distance(mul(Quatd::identity(), q), q).radians < 1e-15);
    CHECK((double)distance(mul(q, q.inverse()), Quatd::identity()).radians <
          1e-15);
}

TEST_CASE("distance examples") {
    Quatd q = random_quat();
    CHECK((double)distance(q, q).radians == 0.0);
    double pi = std::acos(-1.0);
    CHECK((double)distance(Quatd::identity(), Quatd::minus_identity()).radians
          == doctest::Approx(pi));
    Quatd g = exp_axis(Vec3<double>{0, 0, 1}, 0.3);
    CHECK((double)distance(g, Quatd::identity()).radians ==
          doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("distance is accurate near zero (chordal form)") {
    double psi = 1e-12;
    Quatd g = exp_axis(Vec3<double>{0, 0, 1}, psi);
    double d = (double)distance(g, Quatd::identity()).radians;
    CHECK(std::fabs(d - psi) < 1e-26);
}

TEST_CASE("angle_between examples and degenerate input") {
    Quatd gz = exp_axis(Vec3<double>{0, 0, 1}, 0.4);
    Quatd gy = exp_axis(Vec3<double>{0, 1, 0}, 0.4);
    Quatd gzm = exp_axis(Vec3<double>{0, 0, 1}, -0.4);
    double pi = std::acos(-1.0);
    CHECK((double)angle_between(gz, gz).radians == doctest::Approx(0.0));
    CHECK((double)angle_between(gz, gy).radians == doctest::Approx(pi / 2));
    CHECK((double)angle_between(gz, gzm).radians == doctest::Approx(pi));
    CHECK_THROWS_AS(angle_between(Quatd::identity(), gz), DegenerateInput);
}

TEST_CASE("conjugation: convention, bi-invariance, conjugacy criterion") {
    Quatd g = random_quat(), u = random_quat();
    // g^u = u g u^-1.
    CHECK((double)distance(conj_elem(g, u), mul(mul(u, g), u.inverse()))
              .radians < 1e-14);
    CHECK((double)distance(conj_elem(g, Quatd::identity()), g).radians < 1e-14);
    CHECK((double)distance(conj_elem(Quatd::identity(), u), Quatd::identity())
              .radians < 1e-14);

    for (int t = 0; t < 1000; ++t) {
        Quatd a = random_quat(), b = random_quat(), c = random_quat();
        double d0 = (double)distance(a, b).radians;
        CHECK(std::fabs((double)distance(mul(a, c), mul(b, c)).radians - d0) <
              1e-12);
        CHECK(std::fabs((double)distance(mul(c, a), mul(c, b)).radians - d0) <
              1e-12);
        CHECK(std::fabs((double)distance(conj_elem(a, c), Quatd::identity())
                            .radians -
                        (double)distance(a, Quatd::identity()).radians) <
              1e-12);
    }
}

TEST_CASE("commutator basics") {
    Quatd g = random_quat(), h = random_quat();
    CHECK((double)distance(commutator(g, g), Quatd::identity()).radians <
          1e-13);
    CHECK((double)distance(commutator(g, Quatd::identity()), Quatd::identity())
              .radians < 1e-13);
    CHECK((double)distance(commutator(g, h),
                           mul(mul(g, h), mul(g.inverse(), h.inverse())))
              .radians < 1e-14);
}

TEST_CASE("commutator distance closed form, 1000 random (psi, theta)") {
    prec::Scoped scope(128);
    Real tol = prec::tol(24);
    double pi = std::acos(-1.0);
    for (int t = 0; t < 1000; ++t) {
        Real psi = Real(urand()) * (pi / 2 - 1e-3) + Real(1e-3);
        Real theta = Real(urand()) * (pi - 2e-3) + Real(1e-3);
        // Conjugate pair at distance psi from 1 with corner angle theta.
        QuatR g = exp_axis(Vec3<Real>{Real(0), Real(0), Real(1)}, psi);
        using boost::multiprecision::cos;
        using boost::multiprecision::sin;
        Real st = sin(theta), ct = cos(theta);
        QuatR h = exp_axis(Vec3<Real>{st, Real(0), ct}, psi);
        Real direct = distance(commutator(g, h), QuatR::identity()).radians;
        Real closed = comm_distance(Angle<Real>{psi}, Angle<Real>{theta})
                          .radians;
        CHECK((double)abs(direct - closed) < (double)tol);
    }
}

TEST_CASE("commutator distance small-psi asymptotic") {
    prec::Scoped scope(128);
    double theta = 1.1;
    Real worst(0);
    for (int k = 5; k <= 15; ++k) {
        Real psi = boost::multiprecision::ldexp(Real(1), -k);
        Real closed = comm_distance(Angle<Real>{psi}, Angle<Real>{Real(theta)})
                          .radians;
        using boost::multiprecision::sin;
        Real err = abs(closed - 2 * psi * psi * sin(Real(theta)));
        Real ratio = err / (psi * psi * psi);
        if (ratio > worst) worst = ratio;
    }
    // |d - 2 psi^2 sin(theta)| <= K psi^3 with one constant K.
    CHECK((double)worst < 4.0);
}

TEST_CASE("triangle inequality on 1000 random triples") {
    for (int t = 0; t < 1000; ++t) {
        Quatd a = random_quat(), b = random_quat(), c = random_quat();
        double ab = (double)distance(a, b).radians;
        double bc = (double)distance(b, c).radians;
        double ac = (double)distance(a, c).radians;
        CHECK(ac <= ab + bc + 1e-12);
    }
}

TEST_CASE("exp/log round trip and special values") {
    Vec3<double> n{0.48, -0.64, 0.6};
    Quatd g = exp_axis(n, 0.7);
    auto [axis, ang] = log_elem(g);
    CHECK((double)ang.radians == doctest::Approx(0.7));
    CHECK(axis.x == doctest::Approx(n.normalized().x));
    CHECK(axis.z == doctest::Approx(n.normalized().z));

    CHECK((double)distance(exp_axis(Vec3<double>{0, 0, 1}, 0.0),
                           Quatd::identity()).radians < 1e-15);
    double pi = std::acos(-1.0);
    CHECK((double)distance(exp_axis(Vec3<double>{0, 0, 1}, pi),
                           Quatd::minus_identity()).radians < 1e-14);
}

TEST_CASE("axis_transport moves rotation axes") {
    for (int t = 0; t < 100; ++t) {
        Quatd a = random_quat(), b = random_quat();
        Vec3<double> from = log_elem(a).axis, to = log_elem(b).axis;
        Quatd r = axis_transport(from, to);
        Quatd moved = conj_elem(exp_axis(from, 0.3), r);
        CHECK((double)distance(moved, exp_axis(to, 0.3)).radians < 1e-12);
    }
}

TEST_CASE("from_unitary normalizes and canonicalizes") {
    double s = 1.0 / std::sqrt(2.0);
    Mat h_mat{C(s), C(s), C(s), C(-s)};
    Quatd h = from_unitary(h_mat);
    CHECK((double)h.norm() == doctest::Approx(1.0));
    CHECK(h.a >= 0);
    // H is an involution distinct from +-1.
    CHECK((double)proj_distance(mul(h, h), Quatd::identity()).radians < 1e-12);
    CHECK((double)proj_distance(h, Quatd::identity()).radians > 0.5);

    Mat bad{C(2), C(0), C(0), C(2)};
    CHECK_THROWS_AS(from_unitary(bad), DegenerateInput);
}

TEST_CASE("precision context controls tolerances") {
    CHECK(prec::for_target(25) == 164);
    CHECK(prec::for_target(4) == 128);
    prec::Scoped scope(256);
    CHECK(prec::bits() == 256);
    CHECK((double)prec::tol(32) == doctest::Approx(std::ldexp(1.0, -224)));
}
