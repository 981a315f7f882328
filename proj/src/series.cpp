#include "skforge/series.hpp"

#include <algorithm>

#include "skforge/elkasapy.hpp"
#include "skforge/errors.hpp"

namespace skforge {

RationalMat2 RationalMat2::identity() {
    RationalMat2 m;
    m.m00 = GaussRational(Rational(1));
    m.m11 = GaussRational(Rational(1));
    return m;
}

RationalMat2 RationalMat2::ix_half() {
    // i/2 * [[0,1],[1,0]]
    RationalMat2 m;
    m.m01 = GaussRational(Rational(0), Rational(1, 2));
    m.m10 = GaussRational(Rational(0), Rational(1, 2));
    return m;
}

RationalMat2 RationalMat2::iy_half() {
    // i/2 * [[0,-i],[i,0]] = [[0,1/2],[-1/2,0]]... careful: i*(-i) = 1
    RationalMat2 m;
    m.m01 = GaussRational(Rational(1, 2));
    m.m10 = GaussRational(Rational(-1, 2));
    return m;
}

RationalMat2 RationalMat2::iz_half() {
    RationalMat2 m;
    m.m00 = GaussRational(Rational(0), Rational(1, 2));
    m.m11 = GaussRational(Rational(0), Rational(-1, 2));
    return m;
}

RationalMat2 RationalMat2::operator+(const RationalMat2& o) const {
    return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
}

RationalMat2 RationalMat2::operator-(const RationalMat2& o) const {
    return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
}

RationalMat2 RationalMat2::operator*(const RationalMat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
}

RationalMat2 RationalMat2::scaled(const GaussRational& s) const {
    return {m00 * s, m01 * s, m10 * s, m11 * s};
}

RationalMat2 RationalMat2::adjoint() const {
    return {m00.conjugate(), m10.conjugate(), m01.conjugate(),
            m11.conjugate()};
}

RationalMat2 RationalQuat::matrix() const {
    // (aI + i b X + i c Y + i d Z) / r
    RationalMat2 m;
    m.m00 = GaussRational(Rational(a, r), Rational(d, r));
    m.m01 = GaussRational(Rational(c, r), Rational(b, r));
    m.m10 = GaussRational(Rational(-c, r), Rational(b, r));
    m.m11 = GaussRational(Rational(a, r), Rational(-d, r));
    return m;
}

RationalMat2 RationalQuat::inverse_matrix() const {
    RationalQuat inv{a, -b, -c, -d, r};
    return inv.matrix();
}

std::span<const RationalQuat> rational_conjugators() {
    static const RationalQuat pool[] = {
        {1, 2, 2, 0, 3},  {3, 4, 0, 0, 5},   {2, 3, 6, 0, 7},
        {1, 4, 8, 0, 9},  {1, 2, 4, 10, 11}, {2, 6, 9, 0, 11},
        {1, 2, 2, 4, 5},  {2, 5, 14, 0, 15},
    };
    return pool;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    TruncatedSeries r(order());
    for (int k = 0; k <= order(); ++k) r.c_[k] = c_[k] + o.c_[k];
    return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
    TruncatedSeries r(order());
    for (int k = 0; k <= order(); ++k) r.c_[k] = c_[k] - o.c_[k];
    return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    const int n = order();
    TruncatedSeries r(n);
    for (int i = 0; i <= n; ++i) {
        if (c_[i].is_zero()) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (o.c_[j].is_zero()) continue;
            r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
        }
    }
    return r;
}

bool TruncatedSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(),
                       [](const GaussRational& g) { return g.is_zero(); });
}

SeriesMatrix::SeriesMatrix(int order) {
    for (auto& e : e_) e = TruncatedSeries(order);
}

SeriesMatrix SeriesMatrix::identity(int order) {
    SeriesMatrix m(order);
    m.entry(0, 0)[0] = GaussRational(Rational(1));
    m.entry(1, 1)[0] = GaussRational(Rational(1));
    return m;
}

RationalMat2 SeriesMatrix::coefficient(int k) const {
    return {entry(0, 0)[k], entry(0, 1)[k], entry(1, 0)[k], entry(1, 1)[k]};
}

void SeriesMatrix::set_coefficient(int k, const RationalMat2& m) {
    entry(0, 0)[k] = m.m00;
    entry(0, 1)[k] = m.m01;
    entry(1, 0)[k] = m.m10;
    entry(1, 1)[k] = m.m11;
}

bool SeriesMatrix::constant_term_is_identity() const {
    return coefficient(0) == RationalMat2::identity();
}

SeriesMatrix SeriesMatrix::operator*(const SeriesMatrix& o) const {
    SeriesMatrix r(order());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.entry(i, j) = entry(i, 0) * o.entry(0, j) +
                            entry(i, 1) * o.entry(1, j);
    return r;
}

SeriesMatrix SeriesMatrix::inverse() const {
    if (!constant_term_is_identity())
        throw Error("SeriesMatrix::inverse: constant term must be identity");
    const int n = order();
    SeriesMatrix neg_s(n);  // -(M - I)
    for (int k = 1; k <= n; ++k)
        neg_s.set_coefficient(k, RationalMat2::zero() - coefficient(k));
    SeriesMatrix out = SeriesMatrix::identity(n);
    SeriesMatrix term = SeriesMatrix::identity(n);
    for (int k = 1; k <= n; ++k) {
        term = term * neg_s;
        bool all_zero = true;
        for (int d = 0; d <= n && all_zero; ++d)
            all_zero = term.coefficient(d).is_zero();
        if (all_zero) break;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out.entry(i, j) = out.entry(i, j) + term.entry(i, j);
    }
    return out;
}

SeriesMatrix SeriesMatrix::conjugated(const RationalQuat& u) const {
    const RationalMat2 um = u.matrix();
    const RationalMat2 ui = u.inverse_matrix();
    SeriesMatrix r(order());
    for (int k = 0; k <= order(); ++k)
        r.set_coefficient(k, um * coefficient(k) * ui);
    return r;
}

TruncatedSeries SeriesMatrix::determinant() const {
    return entry(0, 0) * entry(1, 1) - entry(0, 1) * entry(1, 0);
}

SeriesMatrix SeriesMatrix::adjoint() const {
    SeriesMatrix r(order());
    for (int k = 0; k <= order(); ++k)
        r.set_coefficient(k, coefficient(k).adjoint());
    return r;
}

SeriesMatrix series_exp(const RationalMat2& x, int order) {
    SeriesMatrix r = SeriesMatrix::identity(order);
    RationalMat2 power = RationalMat2::identity();
    Rational factorial(1);
    for (int k = 1; k <= order; ++k) {
        power = power * x;
        factorial *= k;
        r.set_coefficient(k, power.scaled(GaussRational(1 / factorial)));
    }
    return r;
}

SeriesMatrix eval_word_series(const Word& w,
                              std::span<const SeriesMatrix> assignment) {
    std::vector<std::optional<SeriesMatrix>> inverses(assignment.size());
    int order = assignment.empty() ? 0 : assignment[0].order();
    SeriesMatrix acc = SeriesMatrix::identity(order);
    for (const Letter& l : w.letters()) {
        if (l.sign > 0) {
            acc = acc * assignment[l.gen];
        } else {
            if (!inverses[l.gen])
                inverses[l.gen] = assignment[l.gen].inverse();
            acc = acc * *inverses[l.gen];
        }
    }
    return acc;
}

LeadingTerm leading_term(const Word& w,
                         std::span<const SeriesMatrix> assignment) {
    SeriesMatrix m = eval_word_series(w, assignment);
    for (int k = 1; k <= m.order(); ++k) {
        RationalMat2 c = m.coefficient(k);
        if (!c.is_zero()) return {k, c};
    }
    return {std::nullopt, RationalMat2::zero()};
}

std::optional<int> leading_degree(const Word& w,
                                  std::span<const SeriesMatrix> assignment) {
    return leading_term(w, assignment).degree;
}

NilFibReport verify_nilfib(int n) {
    NilFibReport report;
    report.n = n;
    report.fib = fibonacci(n);
    const int order = static_cast<int>(report.fib) + 2;

    const Word omega = elkasapy_pair(n).omega;
    std::vector<SeriesMatrix> assignment;
    assignment.push_back(series_exp(RationalMat2::iz_half(), order));  // g
    assignment.push_back(series_exp(RationalMat2::iy_half(), order));  // h

    LeadingTerm lead = leading_term(omega, assignment);
    report.degree = lead.degree;

    RationalMat2 expected;
    switch (((n % 3) + 3) % 3) {
        case 1: expected = RationalMat2::iz_half(); report.pauli = 'Z'; break;
        case 2: expected = RationalMat2::iy_half(); report.pauli = 'Y'; break;
        default: expected = RationalMat2::ix_half(); report.pauli = 'X'; break;
    }
    if (lead.degree) {
        if (lead.coefficient == expected)
            report.sign = 1;
        else if (lead.coefficient == RationalMat2::zero() - expected)
            report.sign = -1;
    }
    report.pass = lead.degree && *lead.degree == report.fib && report.sign != 0;
    return report;
}

std::optional<int> ccan_witness(const Word& w, int trials, int order) {
    const int k = static_cast<int>(w.alphabet_size());
    if (k < 1 || k > 3) throw Error("ccan_witness: word must use 1-3 generators");
    auto pool = rational_conjugators();
    const SeriesMatrix base = series_exp(RationalMat2::iz_half(), order);

    std::optional<int> best;
    int tried = 0;
    auto run = [&](std::span<const SeriesMatrix> assignment) {
        auto degree = leading_degree(w, assignment);
        if (degree && (!best || *degree < *best)) best = *degree;
        ++tried;
    };

    if (k == 1) {
        std::vector<SeriesMatrix> a{base};
        run(a);
        return best;
    }
    if (k == 2) {
        for (std::size_t i = 0; i < pool.size() && tried < trials; ++i) {
            std::vector<SeriesMatrix> a{base, base.conjugated(pool[i])};
            run(a);
        }
        return best;
    }
    for (std::size_t i = 0; i < pool.size() && tried < trials; ++i) {
        for (std::size_t j = 0; j < pool.size() && tried < trials; ++j) {
            if (i == j) continue;
            std::vector<SeriesMatrix> a{base, base.conjugated(pool[i]),
                                        base.conjugated(pool[j])};
            run(a);
        }
    }
    return best;
}

}  // namespace skforge
