#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skforge/digest.hpp"
#include "skforge/quat.hpp"
#include "skforge/word.hpp"

namespace skforge {

struct Gate {
    std::string name;
    Quatd element;           // canonical-sign unit quaternion
    std::size_t inverse = 0; // index of the paired inverse gate (self if involutive)
    bool is_identity = false;
    int generator = -1;      // -1 for the identity gate
    std::int8_t sign = 1;    // which side of its generator this gate is
};

/// Finite symmetric gate set loaded from a JSON file. Non-identity gates are
/// paired into signed generators; projectively self-inverse gates become
/// involutive generators (flagged in the involution mask so their words
/// reduce correctly).
class GateSet {
  public:
    static GateSet load(const std::string& path);
    static GateSet from_json(const std::string& json_text);

    std::size_t size() const { return gates_.size(); }
    const Gate& gate(std::size_t i) const { return gates_.at(i); }
    const std::vector<Gate>& gates() const { return gates_; }

    unsigned alphabet_size() const {
        return static_cast<unsigned>(gen_to_gate_.size());
    }
    std::uint64_t involution_mask() const { return involution_mask_; }

    /// An empty word over this gate alphabet (carries the involution mask).
    Word empty_word() const { return Word(alphabet_size(), involution_mask_); }
    Word single_letter(Letter l) const {
        return Word::single(l, alphabet_size(), involution_mask_);
    }

    /// Gate index realizing a signed letter.
    std::size_t gate_for(Letter l) const;
    /// Letter realizing a non-identity gate.
    Letter letter_for(std::size_t gate_index) const;

    /// One element per generator (the sign +1 representative), at the
    /// requested precision (exact double-to-T embedding, renormalized).
    template <class T>
    std::vector<Quat<T>> generator_values() const {
        std::vector<Quat<T>> v;
        v.reserve(gen_to_gate_.size());
        for (std::size_t gi : gen_to_gate_)
            v.push_back(convert<T>(gates_[gi].element));
        return v;
    }

    template <class T>
    Quat<T> value_of(const Word& w) const {
        std::vector<Quat<T>> gens = generator_values<T>();
        return evaluate<T>(w, gens);
    }

    /// SHA-256 over the gate names and canonical coordinates, in file order.
    const Digest& hash() const { return hash_; }

    /// Gate-name rendering of a gate word (one token per letter).
    std::string word_to_string(const Word& w) const;
    Word parse_word(const std::string& text) const;

  private:
    std::vector<Gate> gates_;
    std::vector<std::size_t> gen_to_gate_;
    std::uint64_t involution_mask_ = 0;
    Digest hash_{};
};

}  // namespace skforge
