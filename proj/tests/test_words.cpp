#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "skforge/elkasapy.hpp"
#include "skforge/quat.hpp"
#include "skforge/word.hpp"

using namespace skforge;

namespace {

std::mt19937_64 rng(7);

Quatd random_quat() {
    auto s1 = [] { return 2.0 * ((rng() >> 11) * 0x1p-53) - 1.0; };
    while (true) {
        Quatd q{s1(), s1(), s1(), s1()};
        if ((double)q.norm() > 0.1) return q.renormalized();
    }
}

Word random_word(std::size_t len) {
    Word w(2);
    for (std::size_t i = 0; i < len; ++i)
        w.push({static_cast<std::uint16_t>(rng() % 2),
                static_cast<std::int8_t>(rng() % 2 ? 1 : -1)});
    return w;
}

// The omega recurrence: omega_1 = g, omega_2 = h,
// omega_{n+2} = [omega_{n+1}^-1, omega_n].
std::vector<Word> omega_by_second_recurrence(int n_max) {
    std::vector<Word> om{Word(2), abstract_g(), abstract_h()};
    for (int n = 3; n <= n_max; ++n)
        om.push_back(commutator_word(invert(om[n - 1]), om[n - 2]));
    return om;
}

}  // namespace

TEST_CASE("free reduction basics") {
    Word g = abstract_g(), h = abstract_h();
    Word w = concat(concat(g, invert(g)), h);
    CHECK(w == h);
    CHECK(invert(invert(w)) == w);
    CHECK(concat(w, invert(w)).empty());
    CHECK(commutator_word(g, g).empty());
    CHECK(commutator_word(g, h).length() == 4);
}

TEST_CASE("involutive generators cancel without signs") {
    Word w(2, /*involution_mask=*/0b01);
    w.push({0, 1});
    w.push({0, -1});  // same generator, involutive: cancels regardless of sign
    CHECK(w.empty());
}

TEST_CASE("elkasapy pair small cases") {
    ElkasapyPair p1 = elkasapy_pair(1);
    CHECK(p1.omega == abstract_g());
    Word z1 = concat(invert(abstract_h()), invert(abstract_g()));
    CHECK(p1.zeta == z1);

    ElkasapyPair p2 = elkasapy_pair(2);
    CHECK(p2.omega == abstract_h());
    Word z2 = conjugate_word(invert(abstract_h()), abstract_g());
    CHECK(p2.zeta == z2);

    // omega_3 = h^-1 g h g^-1, length 4.
    ElkasapyPair p3 = elkasapy_pair(3);
    Word w3 = commutator_word(invert(abstract_h()), abstract_g());
    CHECK(p3.omega == w3);
    CHECK(p3.omega.length() == 4);
}

TEST_CASE("both recurrences agree letter-for-letter up to n = 24") {
    auto om = omega_by_second_recurrence(24);
    for (int n = 1; n <= 24; ++n) CHECK(elkasapy_pair(n).omega == om[n]);
}

TEST_CASE("closed-form lengths match free reduction, 2 <= n <= 24") {
    CHECK(elkasapy_length(2) == 1);
    CHECK(elkasapy_length(5) == 14);
    CHECK(elkasapy_length(6) == 30);
    for (int n = 2; n <= 24; ++n) {
        ElkasapyPair p = elkasapy_pair(n);
        CHECK((std::int64_t)p.omega.length() == elkasapy_length(n));
        CHECK((std::int64_t)p.zeta.length() == elkasapy_zeta_length(n));
    }
}

TEST_CASE("fibonacci standard indexing") {
    CHECK(fibonacci(1) == 1);
    CHECK(fibonacci(2) == 1);
    CHECK(fibonacci(5) == 5);
    CHECK(fibonacci(9) == 34);
}

TEST_CASE("endpoint patterns, 2 <= n <= 24") {
    for (int n = 2; n <= 24; ++n) {
        ElkasapyPair p = elkasapy_pair(n);
        Endpoints e = endpoints(n);
        CHECK(p.omega.letters().front() == e.omega_first);
        CHECK(p.omega.letters().back() == e.omega_last);
        CHECK(p.zeta.letters().front() == e.zeta_first);
        CHECK(p.zeta.letters().back() == e.zeta_last);
    }
}

TEST_CASE("substitute basics") {
    Word g = abstract_g(), h = abstract_h();
    Word w = random_word(9), v = random_word(7);
    std::array<Word, 2> values{w, v};
    CHECK(substitute(concat(g, h), values) == concat(w, v));
    std::array<Word, 2> same{w, w};
    CHECK(substitute(commutator_word(g, h), same).empty());

    // Length bound before reduction.
    Word u = random_word(4);
    Word omega = elkasapy_pair(5).omega;
    std::array<Word, 2> conj_vals{w, conjugate_word(w, u)};
    std::size_t h_count = 0;
    for (const Letter& l : omega.letters())
        if (l.gen == 1) ++h_count;
    CHECK(substitute(omega, conj_vals).length() <=
          omega.length() * w.length() + h_count * 2 * u.length());
}

TEST_CASE("evaluate is a homomorphism and respects substitution") {
    std::array<Quatd, 2> vals{random_quat(), random_quat()};
    CHECK((double)distance(evaluate<double>(Word(2), vals), Quatd::identity())
              .radians < 1e-15);

    for (int t = 0; t < 50; ++t) {
        Word w1 = random_word(12), w2 = random_word(12);
        Quatd lhs = evaluate<double>(concat(w1, w2), vals);
        Quatd rhs = mul(evaluate<double>(w1, vals), evaluate<double>(w2, vals));
        CHECK((double)distance(lhs, rhs).radians < 1e-12);
    }

    // evaluate(omega_3, g -> A, h -> B) = B^-1 A B A^-1.
    Quatd A = random_quat(), B = random_quat();
    std::array<Quatd, 2> ab{A, B};
    Quatd direct = mul(mul(B.inverse(), A), mul(B, A.inverse()));
    CHECK((double)distance(evaluate<double>(elkasapy_pair(3).omega, ab), direct)
              .radians < 1e-13);

    // substitute/evaluate compatibility on random templates.
    for (int t = 0; t < 25; ++t) {
        Word templ = random_word(8);
        Word vg = random_word(6), vh = random_word(6);
        std::array<Word, 2> values{vg, vh};
        std::array<Quatd, 2> sub_vals{evaluate<double>(vg, vals),
                                      evaluate<double>(vh, vals)};
        Quatd lhs = evaluate<double>(substitute(templ, values), vals);
        Quatd rhs = evaluate<double>(templ, sub_vals);
        CHECK((double)distance(lhs, rhs).radians < 1e-11);
    }
}

TEST_CASE("witness words") {
    CHECK(nested_comm_fggh().length() == 14);
    CHECK(nested_comm_fggh().alphabet_size() == 3);
    CHECK(nested_comm_ghhg().length() == 14);
    CHECK(nested_comm_ghhg().alphabet_size() == 2);
}

TEST_CASE("text round trip") {
    Word w = random_word(20);
    std::string text = to_string(w);
    auto names = default_generator_names(2);
    CHECK(parse_word(text, names) == w);
    CHECK(to_string(commutator_word(abstract_g(), abstract_h())) ==
          "g h g' h'");
}
