#include "skforge/gateset.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "skforge/errors.hpp"

namespace skforge {

namespace {

constexpr double kPairTol = 1e-9;

std::complex<double> read_complex(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2)
        throw CorruptFile("gate set: matrix entries must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::array<std::complex<double>, 4> read_matrix(const nlohmann::json& j) {
    std::array<std::complex<double>, 4> m;
    if (j.is_array() && j.size() == 2 && j[0].is_array() && j[0].size() == 2 &&
        j[0][0].is_array()) {
        // Nested 2x2 of [re, im].
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) m[2 * r + c] = read_complex(j[r][c]);
        return m;
    }
    if (j.is_array() && j.size() == 4) {
        // Flat row-major list of [re, im].
        for (int k = 0; k < 4; ++k) m[k] = read_complex(j[k]);
        return m;
    }
    throw CorruptFile("gate set: matrix must be 2x2 of [re, im]");
}

void append_f64(std::vector<std::uint8_t>& buf, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int k = 0; k < 8; ++k)
        buf.push_back(static_cast<std::uint8_t>(bits >> (8 * k)));
}

}  // namespace

GateSet GateSet::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorruptFile("cannot open gate set file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

GateSet GateSet::from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw CorruptFile(std::string("gate set: invalid JSON: ") + e.what());
    }
    const nlohmann::json* arr = &doc;
    if (doc.is_object() && doc.contains("gates")) arr = &doc["gates"];
    if (!arr->is_array() || arr->empty())
        throw EmptyGateSet("gate set: no gates");

    GateSet gs;
    std::vector<std::string> inverse_of(arr->size());
    for (const auto& item : *arr) {
        Gate g;
        g.name = item.at("name").get<std::string>();
        g.element = from_unitary(read_matrix(item.at("matrix")));
        if (item.contains("inverse_of"))
            inverse_of[gs.gates_.size()] = item["inverse_of"].get<std::string>();
        g.is_identity =
            proj_distance(g.element, Quatd::identity()).radians < kPairTol;
        gs.gates_.push_back(std::move(g));
    }

    auto find_by_name = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < gs.gates_.size(); ++i)
            if (gs.gates_[i].name == name) return i;
        throw NonSymmetricGateSet("gate set: unknown gate name: " + name);
    };

    // Pair every non-identity gate with its projective inverse.
    for (std::size_t i = 0; i < gs.gates_.size(); ++i) {
        Gate& g = gs.gates_[i];
        g.inverse = i;
        if (g.is_identity) continue;
        Quatd inv = g.element.inverse();
        std::size_t partner = gs.gates_.size();
        for (std::size_t j = 0; j < gs.gates_.size(); ++j) {
            if (gs.gates_[j].is_identity) continue;
            if (proj_distance(inv, gs.gates_[j].element).radians < kPairTol) {
                partner = j;
                break;
            }
        }
        if (partner == gs.gates_.size())
            throw NonSymmetricGateSet("gate set: no inverse present for gate " +
                                      g.name);
        if (!inverse_of[i].empty() && find_by_name(inverse_of[i]) != partner)
            throw NonSymmetricGateSet(
                "gate set: declared inverse_of disagrees with the elements "
                "for gate " +
                g.name);
        g.inverse = partner;
    }

    // Assign generators: each inverse pair becomes one signed generator;
    // projectively self-inverse gates become involutive generators.
    for (std::size_t i = 0; i < gs.gates_.size(); ++i) {
        Gate& g = gs.gates_[i];
        if (g.is_identity || g.generator >= 0) continue;
        int gen = static_cast<int>(gs.gen_to_gate_.size());
        if (gen >= 64)
            throw NonSymmetricGateSet("gate set: more than 64 generators");
        g.generator = gen;
        g.sign = 1;
        gs.gen_to_gate_.push_back(i);
        if (g.inverse == i) {
            gs.involution_mask_ |= std::uint64_t(1) << gen;
        } else {
            Gate& partner = gs.gates_[g.inverse];
            partner.generator = gen;
            partner.sign = -1;
        }
    }
    // An identity-only set is degenerate but allowed: it builds a one-entry
    // net whose covering estimate spans the whole space.

    std::vector<std::uint8_t> buf;
    for (const Gate& g : gs.gates_) {
        buf.insert(buf.end(), g.name.begin(), g.name.end());
        buf.push_back(0);
        append_f64(buf, g.element.a);
        append_f64(buf, g.element.b);
        append_f64(buf, g.element.c);
        append_f64(buf, g.element.d);
    }
    gs.hash_ = sha256(buf);
    return gs;
}

std::size_t GateSet::gate_for(Letter l) const {
    std::size_t base = gen_to_gate_.at(l.gen);
    if (l.sign > 0 || gates_[base].inverse == base) return base;
    return gates_[base].inverse;
}

Letter GateSet::letter_for(std::size_t gate_index) const {
    const Gate& g = gates_.at(gate_index);
    if (g.generator < 0)
        throw DegenerateInput("letter_for: identity gate has no letter");
    return {static_cast<std::uint16_t>(g.generator), g.sign};
}

std::string GateSet::word_to_string(const Word& w) const {
    std::string out;
    for (const Letter& l : w.letters()) {
        if (!out.empty()) out += ' ';
        out += gates_[gate_for(l)].name;
    }
    return out;
}

Word GateSet::parse_word(const std::string& text) const {
    Word w = empty_word();
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        bool found = false;
        for (std::size_t i = 0; i < gates_.size() && !found; ++i) {
            if (gates_[i].name == tok) {
                if (!gates_[i].is_identity) w.push(letter_for(i));
                found = true;
            }
        }
        if (!found) throw CorruptFile("unknown gate name in word: " + tok);
    }
    return w;
}

}  // namespace skforge
