#pragma once

#include <utility>
#include <vector>

#include "skforge/net.hpp"
#include "skforge/steps.hpp"

namespace skforge {

/// Zigzag-golf parameters: branching fraction b = 4^(1/(1-alpha)) (1/4 for
/// the commutator template's alpha = 2) and the precision-budget slack c_k.
struct SynthParams {
    double alpha = 2.0;
    double b = 0.25;
    int c_k = 3;
    int max_k_bumps = 8;
    int dn_max_depth = 14;

    static SynthParams for_alpha(double alpha);
};

struct SynthStats {
    int depth = 0;
    int step_requests = 0;
    double wall_ms = 0;
};

struct SynthResult {
    Word word;
    Real achieved;  // projective distance to the target, radians
    int target_n = 0;
    SynthStats stats;
};

/// k = ceil(b*n) + c_k.
int precision_budget(int n, const SynthParams& params);

/// Solves s^{g_u} s^{g_v} = t in closed form for unit quaternions g_u, g_v.
/// Requires d(t,1) <= 2 d(s,1) (throws Unsolvable otherwise) and s != +-1.
std::pair<QuatR, QuatR> solve_two_conjugate(const QuatR& t, const QuatR& s);

class Synthesizer {
  public:
    Synthesizer(const Net& net, StepGenerator& steps, SynthParams params);

    /// Full zigzag synthesis of a word within 2^-n of g, re-verified by an
    /// independent evaluation at precision max(128, 4n+64).
    SynthResult synthesize(const QuatR& g, int n);

    /// Dawson-Nielsen balanced-commutator baseline at a fixed depth.
    SynthResult dn_synthesize(const Quatd& g, int depth);
    /// (depth, word length, achieved distance) for depths 0..max_depth;
    /// throws ConvergenceFailure if the accuracy stops improving early.
    struct DnRow {
        int depth;
        std::size_t len;
        double eps;
        double wall_ms;
    };
    std::vector<DnRow> dn_trajectory(const Quatd& g, int max_depth);

    const SynthParams& params() const { return params_; }

  private:
    struct Node {
        Word word;
        QuatR element;
    };
    struct DnNode {
        Word word;
        Quatd element;
    };

    Node synth_rec(const QuatR& g, int n, int depth, SynthStats& stats);
    Node base_or_bridge(const QuatR& g, int n, SynthStats& stats);
    DnNode dn_rec(const Quatd& g, int depth);

    const Net& net_;
    StepGenerator& steps_;
    SynthParams params_;
};

}  // namespace skforge
