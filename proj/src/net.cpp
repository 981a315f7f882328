#include "skforge/net.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "skforge/digest.hpp"
#include "skforge/errors.hpp"

namespace skforge {

namespace {

constexpr char kMagic[6] = {'S', 'K', 'N', 'E', 'T', '1'};
constexpr double kPi = 3.14159265358979323846;

double chord(const Quatd& x, const Quatd& y) {
    double da = x.a - y.a, db = x.b - y.b, dc = x.c - y.c, dd = x.d - y.d;
    return std::sqrt(da * da + db * db + dc * dc + dd * dd);
}

double proj_chord(const Quatd& x, const Quatd& y) {
    return std::min(chord(x, y), chord(x.negated(), y));
}

double chord_to_angle(double c) {
    return 2 * std::asin(std::min(1.0, c / 2));
}

/// Bucket grid over canonical quaternion 4-vectors in [-1,1]^4.
struct GridDims {
    double cell;
    unsigned n;

    explicit GridDims(double cell_width)
        : cell(cell_width),
          n(static_cast<unsigned>(std::ceil(2.0 / cell_width))) {}

    unsigned index1(double v) const {
        double t = (v + 1.0) / cell;
        long k = static_cast<long>(std::floor(t));
        if (k < 0) k = 0;
        if (k >= static_cast<long>(n)) k = n - 1;
        return static_cast<unsigned>(k);
    }
    std::array<unsigned, 4> cell_of(const Quatd& q) const {
        return {index1(q.a), index1(q.b), index1(q.c), index1(q.d)};
    }
    std::uint64_t key(const std::array<unsigned, 4>& c) const {
        return ((static_cast<std::uint64_t>(c[0]) * n + c[1]) * n + c[2]) * n +
               c[3];
    }
};

}  // namespace

Quatd probe_point(std::size_t i) {
    // R3 Kronecker sequence (plastic-constant rotations), mapped to S^3 by
    // the standard uniform cylinder construction.
    constexpr double g = 1.22074408460575947536;
    constexpr double a1 = 1.0 / g;
    constexpr double a2 = 1.0 / (g * g);
    constexpr double a3 = 1.0 / (g * g * g);
    auto frac = [](double v) { return v - std::floor(v); };
    double u1 = frac(0.5 + a1 * static_cast<double>(i + 1));
    double u2 = frac(0.5 + a2 * static_cast<double>(i + 1));
    double u3 = frac(0.5 + a3 * static_cast<double>(i + 1));
    double r1 = std::sqrt(1.0 - u3), r2 = std::sqrt(u3);
    double th = 2 * kPi * u1, ph = 2 * kPi * u2;
    return Quatd{r1 * std::cos(th), r1 * std::sin(th), r2 * std::cos(ph),
                 r2 * std::sin(ph)};
}

void Net::index_entries() {
    GridDims dims(cell_);
    cells_per_dim_ = dims.n;
    grid_.clear();
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        std::uint64_t k = dims.key(dims.cell_of(entries_[i].element));
        grid_[k].push_back(static_cast<std::uint32_t>(i));
    }
}

Net::Hit Net::nearest_linear(const Quatd& target) const {
    if (entries_.empty()) throw EmptyGateSet("nearest: empty net");
    Hit best{0, chord_to_angle(proj_chord(entries_[0].element, target))};
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        double d = chord_to_angle(proj_chord(entries_[i].element, target));
        if (d < best.distance) {
            best = {i, d};
        }
    }
    return best;
}

Net::Hit Net::nearest(const Quatd& target) const {
    if (entries_.empty()) throw EmptyGateSet("nearest: empty net");
    // For sparse nets the ring search degenerates into a scan of the whole
    // grid; the plain scan is cheaper and trivially exact.
    if (entries_.size() <= 256) return nearest_linear(target);
    GridDims dims(cell_);
    const Quatd centers[2] = {target, target.negated()};
    std::array<unsigned, 4> cc[2] = {dims.cell_of(centers[0]),
                                     dims.cell_of(centers[1])};

    double best_chord = 1e300;
    std::size_t best_index = 0;
    auto consider_bucket = [&](std::uint64_t key) {
        auto it = grid_.find(key);
        if (it == grid_.end()) return;
        for (std::uint32_t i : it->second) {
            double c = proj_chord(entries_[i].element, target);
            if (c < best_chord || (c == best_chord && i < best_index)) {
                best_chord = c;
                best_index = i;
            }
        }
    };

    const long n = static_cast<long>(dims.n);
    for (unsigned r = 0; r <= dims.n; ++r) {
        for (const auto& c : cc) {
            const long rl = static_cast<long>(r);
            for (long d0 = -rl; d0 <= rl; ++d0)
                for (long d1 = -rl; d1 <= rl; ++d1)
                    for (long d2 = -rl; d2 <= rl; ++d2)
                        for (long d3 = -rl; d3 <= rl; ++d3) {
                            long m = std::max({std::labs(d0), std::labs(d1),
                                               std::labs(d2), std::labs(d3)});
                            if (m != rl) continue;
                            long i0 = c[0] + d0, i1 = c[1] + d1, i2 = c[2] + d2,
                                 i3 = c[3] + d3;
                            if (i0 < 0 || i1 < 0 || i2 < 0 || i3 < 0 ||
                                i0 >= n || i1 >= n || i2 >= n || i3 >= n)
                                continue;
                            consider_bucket(dims.key(
                                {static_cast<unsigned>(i0),
                                 static_cast<unsigned>(i1),
                                 static_cast<unsigned>(i2),
                                 static_cast<unsigned>(i3)}));
                        }
        }
        // Entries outside ring r of both centers are at chordal distance
        // > r*cell from the target and its antipode.
        if (best_chord <= static_cast<double>(r) * cell_) break;
    }
    return {best_index, chord_to_angle(best_chord)};
}

double Net::estimate_covering(std::size_t probes, bool parallel) const {
    double worst = 0;
    if (parallel) {
#pragma omp parallel for reduction(max : worst) schedule(static)
        for (long long i = 0; i < static_cast<long long>(probes); ++i) {
            double d = nearest(probe_point(static_cast<std::size_t>(i))).distance;
            if (d > worst) worst = d;
        }
    } else {
        for (std::size_t i = 0; i < probes; ++i)
            worst = std::max(worst, nearest(probe_point(i)).distance);
    }
    return worst;
}

double Net::covering_estimate_serial(std::size_t probes) const {
    return estimate_covering(probes, false);
}

double Net::covering_estimate_parallel(std::size_t probes) const {
    return estimate_covering(probes, true);
}

Word Net::base_approx(const Quatd& target, double eps0) const {
    if (eps0 < covering_) throw NetTooCoarse("base_approx: eps0 below the covering estimate");
    Hit h = nearest(target);
    if (h.distance >= eps0)
        throw NetTooCoarse("base_approx: nearest entry misses eps0");
    return entries_[h.index].word;
}

std::vector<std::size_t> Net::entries_up_to_length(unsigned max_len) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].word.length() <= max_len) out.push_back(i);
    return out;
}

Net build_net(const GateSet& gs, const NetParams& params) {
    if (gs.size() == 0) throw EmptyGateSet("build_net: empty gate set");
    if (params.max_len < 1)
        throw DegenerateInput("build_net: max_len must be >= 1");

    Net net;
    net.gs_ = gs;
    net.params_ = params;

    // Dedupe grid at the dedupe radius (finer than the query grid).
    GridDims dd(std::max(params.dedupe_radius, 1e-6));
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> seen;

    auto duplicate_of = [&](const Quatd& q) -> bool {
        for (const Quatd& rep : {q, q.negated()}) {
            std::array<unsigned, 4> c = dd.cell_of(rep);
            for (long d0 = -1; d0 <= 1; ++d0)
                for (long d1 = -1; d1 <= 1; ++d1)
                    for (long d2 = -1; d2 <= 1; ++d2)
                        for (long d3 = -1; d3 <= 1; ++d3) {
                            long i0 = c[0] + d0, i1 = c[1] + d1, i2 = c[2] + d2,
                                 i3 = c[3] + d3;
                            if (i0 < 0 || i1 < 0 || i2 < 0 || i3 < 0 ||
                                i0 >= dd.n || i1 >= dd.n || i2 >= dd.n ||
                                i3 >= dd.n)
                                continue;
                            auto it = seen.find(dd.key(
                                {static_cast<unsigned>(i0),
                                 static_cast<unsigned>(i1),
                                 static_cast<unsigned>(i2),
                                 static_cast<unsigned>(i3)}));
                            if (it == seen.end()) continue;
                            for (std::uint32_t j : it->second)
                                if (chord_to_angle(proj_chord(
                                        net.entries_[j].element, q)) <
                                    params.dedupe_radius)
                                    return true;
                        }
        }
        return false;
    };
    auto keep = [&](Word w, const Quatd& q) {
        std::uint32_t idx = static_cast<std::uint32_t>(net.entries_.size());
        seen[dd.key(dd.cell_of(q))].push_back(idx);
        net.entries_.push_back({std::move(w), q});
    };

    std::vector<Quatd> gens = gs.generator_values<double>();
    keep(gs.empty_word(), Quatd::identity());

    // Letters in deterministic order: generator ascending, +1 before -1.
    std::vector<Letter> alphabet;
    for (std::uint16_t g = 0; g < gs.alphabet_size(); ++g) {
        alphabet.push_back({g, 1});
        Word probe(gs.alphabet_size(), gs.involution_mask());
        if (!probe.involutive(g)) alphabet.push_back({g, -1});
    }

    struct Frontier {
        Word word;
        Quatd element;  // true (non-canonical) running product
    };
    std::vector<Frontier> frontier{{gs.empty_word(), Quatd::identity()}};
    for (unsigned level = 1; level <= params.max_len && !frontier.empty();
         ++level) {
        std::vector<Frontier> next;
        for (const Frontier& f : frontier) {
            for (const Letter& l : alphabet) {
                Word w = f.word;
                w.push(l);
                if (w.length() != f.word.length() + 1) continue;  // cancelled
                Quatd val = l.sign > 0 ? gens[l.gen] : gens[l.gen].inverse();
                Quatd q = mul(f.element, val);
                Quatd canon = q.canonical();
                if (duplicate_of(canon)) continue;  // prune revisited elements
                keep(w, canon);
                next.push_back({std::move(w), q});
            }
        }
        frontier = std::move(next);
    }

    net.index_entries();
    net.covering_ = net.estimate_covering(20000, true);
    return net;
}

namespace {

void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
    for (int k = 0; k < 4; ++k)
        b.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}
void put_u64(std::vector<std::uint8_t>& b, std::uint64_t v) {
    for (int k = 0; k < 8; ++k)
        b.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}
void put_f64(std::vector<std::uint8_t>& b, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_u64(b, bits);
}

struct Reader {
    const std::vector<std::uint8_t>& b;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > b.size()) throw CorruptFile("net file truncated");
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(b[pos] | (b[pos + 1] << 8));
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int k = 3; k >= 0; --k) v = (v << 8) | b[pos + k];
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int k = 7; k >= 0; --k) v = (v << 8) | b[pos + k];
        pos += 8;
        return v;
    }
    double f64() {
        std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }
};

}  // namespace

void save_net(const Net& net, const std::string& path) {
    std::vector<std::uint8_t> body;
    const Digest& h = net.gateset().hash();
    body.insert(body.end(), h.begin(), h.end());
    put_u64(body, net.entries().size());
    for (const NetEntry& e : net.entries()) {
        put_u32(body, static_cast<std::uint32_t>(e.word.length()));
        for (const Letter& l : e.word.letters()) {
            std::uint16_t gi =
                static_cast<std::uint16_t>(net.gateset().gate_for(l));
            body.push_back(static_cast<std::uint8_t>(gi & 0xff));
            body.push_back(static_cast<std::uint8_t>(gi >> 8));
        }
        put_f64(body, e.element.a);
        put_f64(body, e.element.b);
        put_f64(body, e.element.c);
        put_f64(body, e.element.d);
    }
    Digest checksum = sha256(body);

    std::string tmp = path + ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CorruptFile("cannot open for writing: " + tmp);
    out.write(kMagic, sizeof kMagic);
    out.write(reinterpret_cast<const char*>(body.data()),
              static_cast<std::streamsize>(body.size()));
    out.write(reinterpret_cast<const char*>(checksum.data()),
              static_cast<std::streamsize>(checksum.size()));
    out.close();
    if (!out) throw CorruptFile("write failed: " + tmp);
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw CorruptFile("rename failed: " + path);
}

Net load_net(const std::string& path, const GateSet& gs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorruptFile("cannot open net file: " + path);
    std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
    if (raw.size() < sizeof kMagic + 32 + 8 + 32)
        throw CorruptFile("net file truncated");
    if (std::memcmp(raw.data(), kMagic, sizeof kMagic) != 0)
        throw VersionMismatch("net file: bad magic");

    std::vector<std::uint8_t> body(raw.begin() + sizeof kMagic,
                                   raw.end() - 32);
    Digest stored;
    std::copy(raw.end() - 32, raw.end(), stored.begin());
    if (sha256(body) != stored) throw CorruptFile("net file: checksum mismatch");

    Reader r{body};
    Digest gshash;
    r.need(32);
    std::copy(body.begin(), body.begin() + 32, gshash.begin());
    r.pos = 32;
    if (gshash != gs.hash())
        throw VersionMismatch("net file was built for a different gate set");

    Net net;
    net.gs_ = gs;
    std::uint64_t count = r.u64();
    net.entries_.reserve(count);
    unsigned max_len = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint32_t len = r.u32();
        Word w = gs.empty_word();
        for (std::uint32_t k = 0; k < len; ++k) {
            std::uint16_t gi = r.u16();
            if (gi >= gs.size()) throw CorruptFile("net file: bad gate index");
            w.push(gs.letter_for(gi));
        }
        if (w.length() != len)
            throw CorruptFile("net file: stored word is not reduced");
        Quatd q{r.f64(), r.f64(), r.f64(), r.f64()};
        max_len = std::max(max_len, len);
        net.entries_.push_back({std::move(w), q});
    }
    if (r.pos != body.size()) throw CorruptFile("net file: trailing bytes");

    // Spot-check stored elements against re-evaluation (1%).
    std::vector<Quatd> gens = gs.generator_values<double>();
    std::size_t stride = std::max<std::size_t>(1, net.entries_.size() / 100);
    for (std::size_t i = 0; i < net.entries_.size(); i += stride) {
        Quatd v = evaluate<double>(net.entries_[i].word, gens).canonical();
        if (proj_chord(v, net.entries_[i].element) > 9.1e-13)  // 2^-40
            throw CorruptFile("net file: stored element disagrees with word");
    }

    net.params_.max_len = max_len;
    net.index_entries();
    net.covering_ = net.estimate_covering(20000, true);
    return net;
}

}  // namespace skforge
