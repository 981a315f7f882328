#include "skforge/zigzag.hpp"

#include <chrono>
#include <cmath>

#include "skforge/errors.hpp"

namespace skforge {

namespace {

Real pow2r(int e) { return boost::multiprecision::ldexp(Real(1), e); }

double now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch())
        .count();
}

}  // namespace

SynthParams SynthParams::for_alpha(double alpha) {
    SynthParams p;
    p.alpha = alpha;
    p.b = std::pow(4.0, 1.0 / (1.0 - alpha));
    return p;
}

int precision_budget(int n, const SynthParams& params) {
    return static_cast<int>(std::ceil(params.b * n - 1e-9)) + params.c_k;
}

std::pair<QuatR, QuatR> solve_two_conjugate(const QuatR& t, const QuatR& s) {
    using std::sqrt;
    QuatR tc = (t.a >= 0 ? t : t.negated()).renormalized();
    QuatR sc = (s.a >= 0 ? s : s.negated()).renormalized();

    Real sin_psi = sc.axis_vector().norm();
    Real cos_psi = sc.a;
    if (sin_psi < prec::tol(24))
        throw DegenerateInput("solve_two_conjugate: s too close to +-1");
    Real psi = distance(sc, QuatR::identity()).radians;
    Real tau = distance(tc, QuatR::identity()).radians;
    // The boundary tau = 2 psi (t = s^2) is solvable with cosb clamped to 1;
    // only genuinely out-of-range targets indicate broken caller bookkeeping.
    if (tau > 2 * psi * (1 + Real(1e-9)))
        throw Unsolvable("solve_two_conjugate: d(t,1) > 2 d(s,1)");

    // Chordal half-angle of t, fully accurate near 0.
    Real da = tc.a - 1;
    Vec3<Real> tv = tc.axis_vector();
    Real sin_half_tau = sqrt(da * da + tv.dot(tv)) / 2;

    Real cosb = clamp_unit(Real(sin_half_tau / sin_psi));
    // At the boundary tau = 2 psi the ratio is 1 up to rounding noise; a
    // spurious tiny sinb would tilt the frame first-order in the noise, so
    // snap exact-boundary inputs (e.g. t = s^2) to b = 0.
    if (cosb > 1 - prec::tol(58)) cosb = 1;
    Real sinb = sqrt(Real(1) - cosb * cosb);
    Real A = 2 * cos_psi * sin_half_tau;
    Real B3 = 2 * sin_psi * sin_half_tau * sinb;

    Vec3<Real> that{Real(0), Real(0), Real(1)};
    if (tau > prec::tol(40)) that = tc.axis_vector().normalized();
    Vec3<Real> phat = perpendicular_axis(that);

    Real r = sqrt(A * A + B3 * B3);  // = sin(tau)
    Real coschi(1), sinchi(0);
    if (r > prec::tol(40)) {
        coschi = A / r;
        sinchi = -B3 / r;
    }
    Vec3<Real> e1 = that * coschi + phat * sinchi;
    Vec3<Real> e3 = that * (-sinchi) + phat * coschi;
    Vec3<Real> shat = sc.axis_vector().normalized();

    std::pair<QuatR, QuatR> best;
    Real best_resid(-1);
    for (int orient : {1, -1}) {
        Vec3<Real> e3o = e3 * Real(orient);
        Vec3<Real> e2 = e3o.cross(e1);
        Vec3<Real> m1 = e1 * cosb + e2 * sinb;
        Vec3<Real> m2 = e1 * cosb - e2 * sinb;
        QuatR gu = axis_transport(shat, m1);
        QuatR gv = axis_transport(shat, m2);
        QuatR prod = mul(conj_elem(sc, gu), conj_elem(sc, gv));
        Real resid = proj_distance(prod, tc).radians;
        if (best_resid < 0 || resid < best_resid) {
            best_resid = resid;
            best = {gu, gv};
        }
    }
    if (best_resid > prec::tol(32))
        throw Unsolvable("solve_two_conjugate: residual above tolerance");
    return best;
}

Synthesizer::Synthesizer(const Net& net, StepGenerator& steps,
                         SynthParams params)
    : net_(net), steps_(steps), params_(params) {}

Synthesizer::Node Synthesizer::base_or_bridge(const QuatR& g, int n,
                                              SynthStats& stats) {
    (void)stats;
    const double eps = std::ldexp(1.0, -n);
    Quatd gd = convert<double>(g);

    if (eps > 1.2 * net_.covering_estimate()) {
        Word w = net_.base_approx(gd, eps);
        QuatR elem = net_.gateset().value_of<Real>(w);
        if (proj_distance(elem, g).radians < pow2r(-n)) return {std::move(w), std::move(elem)};
    }

    // Dawson-Nielsen bridge for base accuracies below the net resolution.
    for (int depth = 0; depth <= params_.dn_max_depth; ++depth) {
        DnNode node = dn_rec(gd, depth);
        if (proj_distance(node.element, gd).radians < 0.9 * eps) {
            QuatR elem = net_.gateset().value_of<Real>(node.word);
            if (proj_distance(elem, g).radians < pow2r(-n))
                return {std::move(node.word), std::move(elem)};
        }
    }
    throw TargetUnreachable(
        "base synthesis failed at n=" + std::to_string(n) +
        " (covering estimate " + std::to_string(net_.covering_estimate()) + ")");
}

Synthesizer::Node Synthesizer::synth_rec(const QuatR& g, int n, int depth,
                                         SynthStats& stats) {
    stats.depth = std::max(stats.depth, depth);
    int m = static_cast<int>(std::ceil((1.0 - params_.b) * n - 1e-9));
    if (m >= n) return base_or_bridge(g, n, stats);
    int k0 = precision_budget(n, params_);
    if (k0 >= n) return base_or_bridge(g, n, stats);

    Node wm = synth_rec(g, m, depth + 1, stats);
    QuatR t = mul(wm.element.inverse(), g);

    std::string failure = "no step index admitted a solution";
    for (int mi : {m, m - 1}) {
        if (mi < 1) continue;
        const StepEntry* s = nullptr;
        try {
            ++stats.step_requests;
            s = &steps_.step(mi);
        } catch (const StepUnreachable& e) {
            failure = e.what();
            continue;
        }
        std::pair<QuatR, QuatR> ideal;
        try {
            ideal = solve_two_conjugate(t, s->element);
        } catch (const Unsolvable& e) {
            failure = e.what();
            continue;
        }
        for (int k = k0; k < n && k <= k0 + params_.max_k_bumps; ++k) {
            Node u = synth_rec(ideal.first, k, depth + 1, stats);
            Node v = synth_rec(ideal.second, k, depth + 1, stats);
            Word w = wm.word;
            w.append(conjugate_word(s->word, u.word));
            w.append(conjugate_word(s->word, v.word));
            QuatR elem = mul(wm.element,
                             mul(conj_elem(s->element, u.element),
                                 conj_elem(s->element, v.element)));
            if (proj_distance(elem, g).radians < pow2r(-n))
                return {std::move(w), std::move(elem)};
        }
        failure = "conjugator precision bumps exhausted at n=" +
                  std::to_string(n);
    }
    throw TargetUnreachable("synthesize failed at n=" + std::to_string(n) +
                            ": " + failure);
}

SynthResult Synthesizer::synthesize(const QuatR& g, int n) {
    if (n < 1) throw DegenerateInput("synthesize: n must be >= 1");
    unsigned p = prec::for_target(n);
    for (int attempt = 0; attempt < 2; ++attempt) {
        prec::Scoped scope(p << attempt);
        QuatR gw = convert<Real>(g);
        SynthStats stats;
        double t0 = now_ms();
        Node node = synth_rec(gw, n, 0, stats);
        // Independent re-verification: evaluate the word letter by letter.
        QuatR elem = net_.gateset().value_of<Real>(node.word);
        Real achieved = proj_distance(elem, gw).radians;
        stats.wall_ms = now_ms() - t0;
        if (achieved < pow2r(-n))
            return {std::move(node.word), std::move(achieved), n, stats};
    }
    throw PrecisionShortfall(
        "synthesize: post-verification failed even at doubled precision (n=" +
        std::to_string(n) + ")");
}

Synthesizer::DnNode Synthesizer::dn_rec(const Quatd& g, int depth) {
    if (depth == 0) {
        Net::Hit hit = net_.nearest(g);
        const NetEntry& e = net_.entry(hit.index);
        return {e.word, e.element};
    }
    DnNode prev = dn_rec(g, depth - 1);
    Quatd delta = mul(g, prev.element.inverse());
    if (delta.a < 0) delta = delta.negated();
    double dd = distance(delta, Quatd::identity()).radians;
    if (dd < 1e-15) return prev;  // already at double-precision noise floor

    double phi = std::asin(std::sqrt(std::sin(dd / 2)));
    Quatd v0 = exp_axis(Vec3<double>{1, 0, 0}, phi);
    Quatd w0 = exp_axis(Vec3<double>{0, 1, 0}, phi);
    Quatd c0 = commutator(v0, w0);
    Quatd rot = axis_transport(log_elem(c0).axis, log_elem(delta).axis);
    Quatd vt = conj_elem(v0, rot);
    Quatd wt = conj_elem(w0, rot);

    DnNode vn = dn_rec(vt, depth - 1);
    DnNode wn = dn_rec(wt, depth - 1);
    Word word = commutator_word(vn.word, wn.word);
    word.append(prev.word);
    Quatd elem = mul(commutator(vn.element, wn.element), prev.element);
    return {std::move(word), elem};
}

SynthResult Synthesizer::dn_synthesize(const Quatd& g, int depth) {
    if (depth < 0) throw DegenerateInput("dn_synthesize: depth must be >= 0");
    double t0 = now_ms();
    DnNode node = dn_rec(g, depth);
    double eps = proj_distance(node.element, g).radians;
    SynthStats stats;
    stats.depth = depth;
    stats.wall_ms = now_ms() - t0;
    int n = eps > 0 ? static_cast<int>(std::floor(-std::log2(eps))) : 52;
    return {std::move(node.word), Real(eps), n, stats};
}

std::vector<Synthesizer::DnRow> Synthesizer::dn_trajectory(const Quatd& g,
                                                           int max_depth) {
    std::vector<DnRow> rows;
    double prev_eps = 4.0;
    int stalls = 0;
    for (int depth = 0; depth <= max_depth; ++depth) {
        double t0 = now_ms();
        DnNode node = dn_rec(g, depth);
        double eps = proj_distance(node.element, g).radians;
        rows.push_back({depth, node.word.length(), eps, now_ms() - t0});
        if (depth >= 1 && eps >= prev_eps) {
            if (++stalls >= 2)
                throw ConvergenceFailure(
                    "dn_trajectory: accuracy stopped improving at depth " +
                    std::to_string(depth));
        } else {
            stalls = 0;
        }
        prev_eps = eps;
        if (eps < std::ldexp(1.0, -46) || node.word.length() > 20000000) break;
    }
    return rows;
}

}  // namespace skforge
