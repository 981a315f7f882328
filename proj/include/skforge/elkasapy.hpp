#pragma once

#include <cstdint>

#include "skforge/word.hpp"

namespace skforge {

/// The recursively defined commutator-word pair (omega_n, zeta_n) over the
/// abstract alphabet {g, h}. Built by the zeta recurrence
///   (omega_1, zeta_1) = (g, h^-1 g^-1)
///   (omega_{n+1}, zeta_{n+1}) = (omega_n^-1 zeta_n^-1, omega_n zeta_n);
/// the omega component equally satisfies
///   omega_1 = g, omega_2 = h, omega_{n+2} = [omega_{n+1}^-1, omega_n].
struct ElkasapyPair {
    Word omega;
    Word zeta;
    int index = 0;
};

ElkasapyPair elkasapy_pair(int n);

/// Closed-form len(omega_n), by residue of n mod 3. Requires n >= 2.
std::int64_t elkasapy_length(int n);

/// Closed-form len(zeta_n). Requires n >= 2.
std::int64_t elkasapy_zeta_length(int n);

/// f_1 = f_2 = 1, f_{n+2} = f_{n+1} + f_n.
std::int64_t fibonacci(int n);

/// First/last letters of omega_n and zeta_n, as fixed by the endpoint lemma.
struct Endpoints {
    Letter omega_first, omega_last;
    Letter zeta_first, zeta_last;
};
Endpoints endpoints(int n);  // n >= 2; depends only on n mod 3

/// Abstract two-letter alphabet helpers.
Word abstract_g();
Word abstract_h();

/// [[f,g],[g,h]], the length-14 higher commutator over three generators.
Word nested_comm_fggh();

/// [[g,h],[h,g^-1]], length 14 with nilpotence degree 5.
Word nested_comm_ghhg();

}  // namespace skforge
