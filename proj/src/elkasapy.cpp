#include "skforge/elkasapy.hpp"

#include <stdexcept>

#include "skforge/errors.hpp"

namespace skforge {

namespace {
constexpr std::uint16_t G = 0, H = 1;

Word letter_word(std::uint16_t gen, std::int8_t sign = 1) {
    return Word::single({gen, sign}, 2);
}
}  // namespace

Word abstract_g() { return letter_word(G); }
Word abstract_h() { return letter_word(H); }

ElkasapyPair elkasapy_pair(int n) {
    if (n < 1) throw Error("elkasapy_pair: n must be >= 1");
    Word omega = letter_word(G);
    Word zeta = concat(letter_word(H, -1), letter_word(G, -1));
    for (int i = 1; i < n; ++i) {
        Word next_omega = concat(invert(omega), invert(zeta));
        Word next_zeta = concat(omega, zeta);
        omega = std::move(next_omega);
        zeta = std::move(next_zeta);
    }
    return {std::move(omega), std::move(zeta), n};
}

std::int64_t elkasapy_length(int n) {
    if (n < 2) throw Error("elkasapy_length: n must be >= 2");
    std::int64_t p = std::int64_t(13) << (n - 2);
    switch (n % 3) {
        case 0: return (p + 2) / 7;
        case 1: return (p + 4) / 7;
        default: return (p - 6) / 7;
    }
}

std::int64_t elkasapy_zeta_length(int n) {
    if (n < 2) throw Error("elkasapy_zeta_length: n must be >= 2");
    std::int64_t p = std::int64_t(13) << (n - 2);
    switch (n % 3) {
        case 0: return (p + 2) / 7;
        case 1: return (p + 4) / 7;
        default: return (p + 8) / 7;
    }
}

std::int64_t fibonacci(int n) {
    if (n < 1) throw Error("fibonacci: n must be >= 1");
    std::int64_t a = 1, b = 1;  // f_1, f_2
    for (int i = 2; i < n; ++i) {
        std::int64_t c = a + b;
        a = b;
        b = c;
    }
    return n == 1 ? a : b;
}

Endpoints endpoints(int n) {
    if (n < 2) throw Error("endpoints: n must be >= 2");
    switch (n % 3) {
        case 0:  // omega = h^-1 ... h g^-1 ; zeta = h ... h^-1 g^-1
            return {{H, -1}, {G, -1}, {H, 1}, {G, -1}};
        case 1:  // omega = g h^-1 ... h^-1 ; zeta = h^-1 ... h^-1 g^-1
            return {{G, 1}, {H, -1}, {H, -1}, {G, -1}};
        default:  // omega = h ... h ; zeta = g h^-1 ... h^-1 g^-1
            return {{H, 1}, {H, 1}, {G, 1}, {G, -1}};
    }
}

Word nested_comm_fggh() {
    Word f = Word::single({0, 1}, 3);
    Word g = Word::single({1, 1}, 3);
    Word h = Word::single({2, 1}, 3);
    return commutator_word(commutator_word(f, g), commutator_word(g, h));
}

Word nested_comm_ghhg() {
    Word g = abstract_g();
    Word h = abstract_h();
    return commutator_word(commutator_word(g, h),
                           commutator_word(h, invert(g)));
}

}  // namespace skforge
