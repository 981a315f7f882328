#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "skforge/quat.hpp"

namespace skforge {

struct Letter {
    std::uint16_t gen = 0;
    std::int8_t sign = 1;

    Letter inverse() const { return {gen, static_cast<std::int8_t>(-sign)}; }
    bool operator==(const Letter&) const = default;
};

/// Freely reduced word over a signed alphabet. Generators flagged in the
/// involution mask are their own inverses (self-inverse gates); their letters
/// are canonicalized to sign +1 and cancel pairwise.
class Word {
  public:
    Word() = default;
    explicit Word(unsigned alphabet_size, std::uint64_t involution_mask = 0)
        : alphabet_size_(alphabet_size), involution_mask_(involution_mask) {}

    static Word single(Letter l, unsigned alphabet_size,
                       std::uint64_t involution_mask = 0) {
        Word w(alphabet_size, involution_mask);
        w.push(l);
        return w;
    }

    bool involutive(std::uint16_t gen) const {
        return gen < 64 && (involution_mask_ >> gen) & 1u;
    }

    /// Appends one letter, cancelling against the tail. O(1) amortized.
    void push(Letter l) {
        if (involutive(l.gen)) l.sign = 1;
        if (!letters_.empty()) {
            const Letter& last = letters_.back();
            if (last.gen == l.gen &&
                (last.sign == -l.sign || involutive(l.gen))) {
                letters_.pop_back();
                return;
            }
        }
        letters_.push_back(l);
    }

    void append(const Word& w) {
        for (const Letter& l : w.letters_) push(l);
    }

    void append_inverse(const Word& w) {
        for (auto it = w.letters_.rbegin(); it != w.letters_.rend(); ++it)
            push(it->inverse());
    }

    std::span<const Letter> letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    unsigned alphabet_size() const { return alphabet_size_; }
    std::uint64_t involution_mask() const { return involution_mask_; }

    bool operator==(const Word&) const = default;

  private:
    std::vector<Letter> letters_;
    unsigned alphabet_size_ = 0;
    std::uint64_t involution_mask_ = 0;
};

Word reduce(std::span<const Letter> letters, unsigned alphabet_size,
            std::uint64_t involution_mask = 0);
Word invert(const Word& w);
Word concat(const Word& w1, const Word& w2);
/// u w u^-1, freely reduced.
Word conjugate_word(const Word& w, const Word& u);
/// w1 w2 w1^-1 w2^-1.
Word commutator_word(const Word& w1, const Word& w2);

/// Replaces each generator of `templ` by the corresponding word in `values`
/// (inverting where the template letter is inverted) and freely reduces.
Word substitute(const Word& templ, std::span<const Word> values);

/// Left-to-right product of the assigned group elements.
template <class T>
Quat<T> evaluate(const Word& w, std::span<const Quat<T>> assignment) {
    Quat<T> acc = Quat<T>::identity();
    for (const Letter& l : w.letters()) {
        const Quat<T>& v = assignment[l.gen];
        acc = mul(acc, l.sign > 0 ? v : v.inverse());
    }
    return acc;
}

/// Whitespace-separated tokens; an inverse letter is the generator name
/// followed by a prime, e.g. "g h' g".
std::string to_string(const Word& w, std::span<const std::string> names);
std::string to_string(const Word& w);  // default names: g,h / f,g,h / x0..
Word parse_word(const std::string& text, std::span<const std::string> names,
                std::uint64_t involution_mask = 0);

std::vector<std::string> default_generator_names(unsigned alphabet_size);

}  // namespace skforge
