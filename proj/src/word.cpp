#include "skforge/word.hpp"

#include <sstream>

#include "skforge/errors.hpp"

namespace skforge {

Word reduce(std::span<const Letter> letters, unsigned alphabet_size,
            std::uint64_t involution_mask) {
    Word w(alphabet_size, involution_mask);
    for (const Letter& l : letters) w.push(l);
    return w;
}

Word invert(const Word& w) {
    Word r(w.alphabet_size(), w.involution_mask());
    r.append_inverse(w);
    return r;
}

Word concat(const Word& w1, const Word& w2) {
    Word r = w1;
    r.append(w2);
    return r;
}

Word conjugate_word(const Word& w, const Word& u) {
    Word r = u;
    r.append(w);
    r.append_inverse(u);
    return r;
}

Word commutator_word(const Word& w1, const Word& w2) {
    Word r = w1;
    r.append(w2);
    r.append_inverse(w1);
    r.append_inverse(w2);
    return r;
}

Word substitute(const Word& templ, std::span<const Word> values) {
    unsigned alphabet = 0;
    std::uint64_t mask = 0;
    if (!values.empty()) {
        alphabet = values[0].alphabet_size();
        mask = values[0].involution_mask();
    }
    Word r(alphabet, mask);
    for (const Letter& l : templ.letters()) {
        const Word& v = values[l.gen];
        if (l.sign > 0)
            r.append(v);
        else
            r.append_inverse(v);
    }
    return r;
}

std::vector<std::string> default_generator_names(unsigned alphabet_size) {
    if (alphabet_size == 2) return {"g", "h"};
    if (alphabet_size == 3) return {"f", "g", "h"};
    std::vector<std::string> names;
    for (unsigned i = 0; i < alphabet_size; ++i)
        names.push_back("x" + std::to_string(i));
    return names;
}

std::string to_string(const Word& w, std::span<const std::string> names) {
    std::string out;
    for (const Letter& l : w.letters()) {
        if (!out.empty()) out += ' ';
        out += names[l.gen];
        if (l.sign < 0) out += '\'';
    }
    return out;
}

std::string to_string(const Word& w) {
    auto names = default_generator_names(w.alphabet_size());
    return to_string(w, names);
}

Word parse_word(const std::string& text, std::span<const std::string> names,
                std::uint64_t involution_mask) {
    Word w(static_cast<unsigned>(names.size()), involution_mask);
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::int8_t sign = 1;
        if (tok.size() > 1 && tok.back() == '\'') {
            sign = -1;
            tok.pop_back();
        }
        bool found = false;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == tok) {
                w.push({static_cast<std::uint16_t>(i), sign});
                found = true;
                break;
            }
        }
        if (!found) throw Error("parse_word: unknown token '" + tok + "'");
    }
    return w;
}

}  // namespace skforge
