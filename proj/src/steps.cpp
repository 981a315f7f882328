#include "skforge/steps.hpp"

#include <cmath>

#include "skforge/elkasapy.hpp"
#include "skforge/errors.hpp"

namespace skforge {

namespace {

Real pow2(int e) {
    return boost::multiprecision::ldexp(Real(1), e);
}

bool in_window(const Real& d, int n) {
    return d > pow2(-n) && d < pow2(1 - n);
}

}  // namespace

StepParams comm_step_params() {
    StepParams p;
    p.word = commutator_word(abstract_g(), abstract_h());
    p.ell = 4;
    p.c = 2;
    p.alpha = 2.0;
    p.name = "comm";
    return p;
}

StepParams elkasapy_step_params(int n) {
    if (n < 3) throw DegenerateInput("elkasapy_step_params: n must be >= 3");
    StepParams p;
    p.word = elkasapy_pair(n).omega;
    p.ell = static_cast<int>(elkasapy_length(n));
    p.c = static_cast<int>(fibonacci(n));
    p.alpha = std::log(static_cast<double>(p.ell)) /
              std::log(static_cast<double>(p.c));
    p.name = "elk" + std::to_string(n);
    return p;
}

StepParams step_params_by_name(const std::string& name) {
    if (name == "comm") return comm_step_params();
    if (name.size() == 4 && name.rfind("elk", 0) == 0 && name[3] >= '3' &&
        name[3] <= '9')
        return elkasapy_step_params(name[3] - '0');
    throw DegenerateInput("unknown step template: " + name);
}

StepGenerator::StepGenerator(const Net& net, StepParams params)
    : net_(net), params_(std::move(params)) {
    if (params_.c < 2 || params_.ell < 4 || params_.alpha <= 1.0)
        throw DegenerateInput("StepGenerator: need c >= 2, ell >= 4, alpha > 1");
}

const std::vector<Conjugator>& StepGenerator::conjugator_pool() {
    if (!pool_built_) {
        // The net is already length-ordered, so the primary (short) pool is
        // a prefix and the rest of the net acts as a fallback pool.
        for (const NetEntry& e : net_.entries())
            pool_.push_back({e.word, e.element});
        primary_pool_ = net_.entries_up_to_length(params_.conj_len).size();
        pool_built_ = true;
    }
    return pool_;
}

const StepEntry& StepGenerator::step(int n) {
    if (n < 1) throw DegenerateInput("step: n must be >= 1");
    auto it = cache_.find(n);
    if (it != cache_.end()) {
        // A hit from a lower-precision run keeps the word but must refresh
        // the element, or downstream residual checks see a stale mantissa.
        if (it->second.bits < prec::bits()) {
            it->second.element = net_.gateset().value_of<Real>(it->second.word);
            it->second.bits = prec::bits();
        }
        return it->second;
    }
    StepEntry e = compute(n);
    e.bits = prec::bits();
    return cache_.emplace(n, std::move(e)).first->second;
}

bool StepGenerator::base_feasible(int n) const {
    return 1.5 * std::ldexp(1.0, -n) >= 2.0 * net_.covering_estimate();
}

std::size_t StepGenerator::tune_angle(const QuatR& s, int n) {
    const auto& pool = conjugator_pool();
    const Quatd sd = convert<double>(s);
    const double lo = std::ldexp(1.0, -n), hi = std::ldexp(1.0, 1 - n);

    // Cheap double-precision prescan; candidates are confirmed at working
    // precision. The short-word pool is scanned first, then the whole net.
    auto scan = [&](std::size_t begin, std::size_t end) -> std::size_t {
        for (std::size_t i = begin; i < end; ++i) {
            Quatd sud = conj_elem(sd, pool[i].element);
            std::array<Quatd, 2> ad{sd, sud};
            Quatd vd = evaluate<double>(params_.word, ad);
            double d = proj_distance(vd, Quatd::identity()).radians;
            if (d <= lo * 0.98 || d >= hi * 1.02) continue;
            QuatR u = convert<Real>(pool[i].element);
            QuatR su = conj_elem(s, u);
            std::array<QuatR, 2> assignment{s, su};
            QuatR val = evaluate<Real>(params_.word, assignment);
            if (in_window(proj_distance(val, QuatR::identity()).radians, n))
                return i;
        }
        return pool.size();
    };
    std::size_t hit = scan(0, primary_pool_);
    if (hit == pool.size()) hit = scan(primary_pool_, pool.size());
    if (hit < pool.size()) return hit;
    throw NoConjugatorFound("tune_angle: no pool conjugator lands in (2^-" +
                            std::to_string(n) + ", 2^" +
                            std::to_string(1 - n) + "); pool size " +
                            std::to_string(pool.size()));
}

StepEntry StepGenerator::base_case(int n) {
    static const Vec3<double> axes[] = {
        {0, 0, 1},          {1, 0, 0},          {0, 1, 0},
        {0.577350269189626, 0.577350269189626, 0.577350269189626},
        {0.707106781186548, 0.707106781186548, 0},
        {0.707106781186548, 0, 0.707106781186548},
        {0, 0.707106781186548, 0.707106781186548},
        {0.707106781186548, -0.707106781186548, 0}};
    static const double scales[] = {1.5, 1.25, 1.75};

    for (double scale : scales) {
        for (const Vec3<double>& axis : axes) {
            Quatd target = exp_axis(axis, scale * std::ldexp(1.0, -n));
            Net::Hit hit = net_.nearest(target);
            const Word& w = net_.entry(hit.index).word;
            QuatR elem = net_.gateset().value_of<Real>(w);
            Real d = proj_distance(elem, QuatR::identity()).radians;
            if (in_window(d, n)) return {w, std::move(elem)};
        }
    }
    // Deterministic fallback: first (shortest) net entry inside the window.
    for (const NetEntry& e : net_.entries()) {
        double d = proj_distance(e.element, Quatd::identity()).radians;
        if (d > std::ldexp(1.0, -n) * 1.0000001 &&
            d < std::ldexp(1.0, 1 - n) * 0.9999999) {
            QuatR elem = net_.gateset().value_of<Real>(e.word);
            Real dr = proj_distance(elem, QuatR::identity()).radians;
            if (in_window(dr, n)) return {e.word, std::move(elem)};
        }
    }
    throw StepUnreachable("step base case: no net word in the window for n=" +
                          std::to_string(n) + " (covering estimate " +
                          std::to_string(net_.covering_estimate()) + ")");
}

StepEntry StepGenerator::compute(int n) {
    // While 2^-n is above the net resolution the base case applies directly.
    if (base_feasible(n)) {
        try {
            return base_case(n);
        } catch (const StepUnreachable&) {
            // fall through to the recursion
        }
    }

    // Candidate m values, smallest first: floor(n/c) - window + 1 .. floor(n/c).
    // Isolated indices where no candidate reaches the window surface as
    // StepUnreachable; synthesis falls back to the neighboring step index.
    std::vector<int> candidates;
    int m0 = n / params_.c;
    for (int j = static_cast<int>(params_.window) - 1; j >= 0; --j) {
        int m = m0 - j;
        if (m >= 1 && m < n) candidates.push_back(m);
    }

    std::string failures;
    for (int m : candidates) {
        try {
            const StepEntry& sm = step(m);
            std::size_t ui = tune_angle(sm.element, n);
            const Conjugator& u = conjugator_pool()[ui];
            std::array<Word, 2> values{sm.word,
                                       conjugate_word(sm.word, u.word)};
            Word w = substitute(params_.word, values);
            QuatR elem = net_.gateset().value_of<Real>(w);
            Real d = proj_distance(elem, QuatR::identity()).radians;
            if (!in_window(d, n))
                throw NoConjugatorFound(
                    "substituted word drifted out of the window");
            return {std::move(w), std::move(elem)};
        } catch (const NoConjugatorFound& e) {
            failures += std::string(failures.empty() ? "" : "; ") + "m=" +
                        std::to_string(m) + ": " + e.what();
        } catch (const StepUnreachable& e) {
            failures += std::string(failures.empty() ? "" : "; ") + "m=" +
                        std::to_string(m) + ": " + e.what();
        }
    }

    // Last resort even below the nominal resolution: the worst-case covering
    // estimate does not preclude net entries this close to the identity.
    try {
        return base_case(n);
    } catch (const StepUnreachable&) {
    }
    throw StepUnreachable("step(" + std::to_string(n) +
                          "): recursion failed and base case is below the "
                          "net resolution [" +
                          failures + "]");
}

}  // namespace skforge
