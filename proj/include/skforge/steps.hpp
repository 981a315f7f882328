#pragma once

#include <map>
#include <string>
#include <vector>

#include "skforge/net.hpp"
#include "skforge/quat.hpp"
#include "skforge/word.hpp"

namespace skforge {

/// Parameters of the roughly-exponential step recursion: the template word
/// omega over {g, h}, its length ell, its conjugate cancellation degree c,
/// the m-candidate search width, and the conjugator pool word-length cap.
struct StepParams {
    Word word;
    int ell = 0;
    int c = 0;
    double alpha = 0;  // log(ell) / log(c)
    unsigned window = 3;
    unsigned conj_len = 8;
    std::string name;
};

/// The commutator template [g,h]: ell = 4, c = 2, alpha = 2.
StepParams comm_step_params();
/// The n-th recursive commutator-word template: ell from the closed form,
/// c = fibonacci(n), alpha = log ell / log c. Requires n >= 3.
StepParams elkasapy_step_params(int n);
/// Parses "comm" or "elkN" (3 <= N <= 9).
StepParams step_params_by_name(const std::string& name);

struct StepEntry {
    Word word;
    QuatR element;
    /// Working precision (bits) at which `element` was evaluated; the cache
    /// re-evaluates the word when queried at a higher precision.
    unsigned bits = 0;
};

struct Conjugator {
    Word word;
    Quatd element;
};

/// Memoized generator of steps s_n with 2^-n < d(s_n, 1) < 2^(1-n):
/// recursion s_n = omega(s_m, s_m^u) over candidate m values with a
/// numerically tuned conjugator u from the net's short-word pool, base case
/// from the net while 2^-n is above its resolution.
class StepGenerator {
  public:
    StepGenerator(const Net& net, StepParams params);

    const StepEntry& step(int n);
    const StepParams& params() const { return params_; }
    const std::vector<Conjugator>& conjugator_pool();
    const std::map<int, StepEntry>& cache() const { return cache_; }

  private:
    StepEntry compute(int n);
    StepEntry base_case(int n);
    bool base_feasible(int n) const;
    /// First pool conjugator placing omega(s, s^u) inside the window for n;
    /// returns the pool index or throws NoConjugatorFound.
    std::size_t tune_angle(const QuatR& s, int n);

    const Net& net_;
    StepParams params_;
    /// Length-ordered: the first primary_pool_ entries have word length
    /// <= conj_len; the rest of the net serves as a fallback pool.
    std::vector<Conjugator> pool_;
    std::size_t primary_pool_ = 0;
    bool pool_built_ = false;
    std::map<int, StepEntry> cache_;
};

}  // namespace skforge
