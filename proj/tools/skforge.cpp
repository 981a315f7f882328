// skforge: command-line front end for the gate-synthesis library.
//
// Subcommands:
//   net-build  build a base net from a gate set and save it
//   synth      synthesize one target to 2^-n and print the gate word
//   bench      scaling benchmark, CSV output plus fitted slopes
//   verify     exact verification suites (elkasapy-lengths | nilfib |
//              cross | endpoints)

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "skforge/elkasapy.hpp"
#include "skforge/errors.hpp"
#include "skforge/net.hpp"
#include "skforge/series.hpp"
#include "skforge/steps.hpp"
#include "skforge/zigzag.hpp"

namespace fs = std::filesystem;
using namespace skforge;

namespace {

constexpr const char* kVersion = "1.0.0";

#ifndef SKFORGE_DATA_DIR
#define SKFORGE_DATA_DIR "data"
#endif

std::string default_gates_path() {
    return std::string(SKFORGE_DATA_DIR) + "/gates_ht.json";
}

// Exit codes fixed by the interface contract.
enum ExitCode {
    kOk = 0,
    kMismatch = 1,
    kNonSymmetric = 2,
    kIo = 3,
    kUnreachable = 4,
    kShortfall = 5,
};

struct NetOptions {
    std::string gates = default_gates_path();
    std::string net_path;  // explicit net file; empty = cache or build
    unsigned max_len = 16;
    double dedupe = 1e-4;
};

void add_net_options(CLI::App* cmd, NetOptions& o) {
    cmd->add_option("--gates", o.gates, "Gate set JSON file");
    cmd->add_option("--net", o.net_path, "Pre-built net file to load");
    cmd->add_option("--max-len", o.max_len, "Net build word-length cap L0");
    cmd->add_option("--dedupe", o.dedupe, "Net dedupe radius");
}

struct SynthOptions {
    std::string tmpl = "comm";
    unsigned precision_bits = 0;  // 0 = automatic
    std::uint64_t seed = 1;
    unsigned window = 3;
    unsigned conj_len = 8;
    int ck = 3;
};

void add_synth_options(CLI::App* cmd, SynthOptions& o) {
    cmd->add_option("--template", o.tmpl,
                    "Step template: comm or elk3..elk9");
    cmd->add_option("--precision-bits", o.precision_bits,
                    "Working precision floor in bits (0 = automatic)");
    cmd->add_option("--seed", o.seed, "Random seed for generated targets");
    cmd->add_option("--window", o.window, "Step m-candidate search width");
    cmd->add_option("--conj-len", o.conj_len,
                    "Conjugator pool word-length cap");
    cmd->add_option("--ck", o.ck, "Precision-budget slack c_k");
}

StepParams make_step_params(const SynthOptions& o) {
    StepParams p = step_params_by_name(o.tmpl);
    p.window = o.window;
    p.conj_len = o.conj_len;
    return p;
}

SynthParams make_synth_params(const StepParams& sp, const SynthOptions& o) {
    SynthParams p = SynthParams::for_alpha(sp.alpha);
    p.c_k = o.ck;
    return p;
}

Net acquire_net(const NetOptions& o, const GateSet& gs) {
    if (!o.net_path.empty()) return load_net(o.net_path, gs);
    const char* cache = std::getenv("SKFORGE_NET_CACHE");
    std::string cache_file;
    if (cache && *cache) {
        cache_file = std::string(cache) + "/" + hex(gs.hash()).substr(0, 16) +
                     "_L" + std::to_string(o.max_len) + ".sknet";
        if (fs::exists(cache_file)) {
            try {
                return load_net(cache_file, gs);
            } catch (const Error&) {
                // Stale or corrupt cache entry: rebuild below.
            }
        }
    }
    NetParams np;
    np.max_len = o.max_len;
    np.dedupe_radius = o.dedupe;
    Net net = build_net(gs, np);
    if (!cache_file.empty()) {
        fs::create_directories(cache);
        std::string tmp = cache_file + ".tmp";
        save_net(net, tmp);
        fs::rename(tmp, cache_file);
    }
    return net;
}

void print_manifest(const GateSet& gs, const Net& net, const StepParams& sp,
                    const SynthParams& zp, unsigned precision,
                    std::uint64_t seed) {
    std::cout << "manifest:\n"
              << "  tool_version:      " << kVersion << "\n"
              << "  gate_set_hash:     " << hex(gs.hash()) << "\n"
              << "  net_max_len:       " << net.params().max_len << "\n"
              << "  net_dedupe:        " << net.params().dedupe_radius << "\n"
              << "  net_entries:       " << net.entries().size() << "\n"
              << "  covering_estimate: " << net.covering_estimate() << "\n"
              << "  step_template:     " << sp.name << " (ell=" << sp.ell
              << ", c=" << sp.c << ", alpha=" << sp.alpha << ")\n"
              << "  step_window:       " << sp.window << "\n"
              << "  step_conj_len:     " << sp.conj_len << "\n"
              << "  synth_b:           " << zp.b << "\n"
              << "  synth_ck:          " << zp.c_k << "\n"
              << "  precision_bits:    " << precision << "\n"
              << "  seed:              " << seed << "\n";
}

Quatd random_target(std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Quatd q{nd(rng), nd(rng), nd(rng), nd(rng)};
    while (q.norm() < 1e-6) q = {nd(rng), nd(rng), nd(rng), nd(rng)};
    return q.renormalized().canonical();
}

// "a,b,c,d" | probeK | gate name | identity
Quatd parse_target(const std::string& text, const GateSet& gs,
                   std::mt19937_64& rng) {
    if (text.find(',') != std::string::npos) {
        std::istringstream in(text);
        double v[4];
        char sep;
        if (!(in >> v[0] >> sep >> v[1] >> sep >> v[2] >> sep >> v[3]))
            throw DegenerateInput("target: expected four comma-separated reals");
        Quatd q{v[0], v[1], v[2], v[3]};
        if (q.norm() < 1e-12)
            throw DegenerateInput("target: zero quaternion");
        return q.renormalized().canonical();
    }
    if (text.rfind("probe", 0) == 0)
        return probe_point(std::stoul(text.substr(5)));
    if (text == "random") return random_target(rng);
    if (text == "identity" || text == "1") return Quatd::identity();
    for (const Gate& g : gs.gates())
        if (g.name == text) return g.element;
    throw DegenerateInput("target: unknown gate name or format: " + text);
}

double fit_slope(const std::vector<std::pair<double, double>>& xy) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : xy) sx += x, sy += y, sxx += x * x, sxy += x * y;
    double n = static_cast<double>(xy.size());
    double den = n * sxx - sx * sx;
    return den != 0 ? (n * sxy - sx * sy) / den : 0.0;
}

int cmd_net_build(const NetOptions& no, const std::string& out) {
    GateSet gs = GateSet::load(no.gates);
    NetParams np;
    np.max_len = no.max_len;
    np.dedupe_radius = no.dedupe;
    Net net = build_net(gs, np);
    std::cout << "entries: " << net.entries().size() << "\n"
              << "covering_estimate: " << net.covering_estimate() << "\n";
    if (!out.empty()) {
        std::string tmp = out + ".tmp";
        save_net(net, tmp);
        fs::rename(tmp, out);
        std::cout << "written: " << out << "\n";
    }
    return kOk;
}

int cmd_synth(const NetOptions& no, const SynthOptions& so,
              const std::string& target_text, int n,
              const std::string& out) {
    GateSet gs = GateSet::load(no.gates);
    Net net = acquire_net(no, gs);
    StepParams sp = make_step_params(so);
    SynthParams zp = make_synth_params(sp, so);
    StepGenerator steps(net, sp);
    Synthesizer synth(net, steps, zp);

    std::mt19937_64 rng(so.seed);
    Quatd target = parse_target(target_text, gs, rng);
    unsigned p = std::max<unsigned>(so.precision_bits, prec::for_target(n));
    print_manifest(gs, net, sp, zp, p, so.seed);
    prec::Scoped scope(p);

    SynthResult r;
    // Targets the net already hits exactly (gates, the identity) get their
    // stored short word directly instead of a full refinement run.
    Net::Hit hit = net.nearest(target);
    Real hit_dist = proj_distance(
        net.gateset().value_of<Real>(net.entry(hit.index).word),
        convert<Real>(target)).radians;
    if (hit_dist < boost::multiprecision::ldexp(Real(1), -n)) {
        r.word = net.entry(hit.index).word;
        r.achieved = hit_dist;
        r.target_n = n;
    } else {
        r = synth.synthesize(convert<Real>(target), n);
    }
    double eps = static_cast<double>(r.achieved);
    double bits = eps > 0 ? -std::log2(eps)
                          : static_cast<double>(prec::bits());
    std::cout << "word: " << gs.word_to_string(r.word) << "\n"
              << "length: " << r.word.length() << "\n"
              << "achieved_distance_radians: " << eps << "\n"
              << "achieved_distance_bits: " << bits << "\n"
              << "wall_ms: " << r.stats.wall_ms << "\n";
    if (!out.empty()) {
        std::string tmp = out + ".tmp";
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw CorruptFile("cannot open output file: " + out);
        f << gs.word_to_string(r.word) << "\n";
        f.close();
        fs::rename(tmp, out);
    }
    return kOk;
}

struct BenchRow {
    int n = 0;
    int target = 0;
    std::string tmpl;
    std::string algo;
    double eps_target = 0;
    double eps_achieved = 0;
    std::size_t len = 0;
    double wall_ms = 0;
    bool ok = false;
};

int cmd_bench(const NetOptions& no, const SynthOptions& so, int n_min,
              int n_max, int targets, const std::vector<std::string>& tmpls,
              const std::string& out) {
    if (n_min < 1 || n_max < n_min)
        throw DegenerateInput("bench: require 1 <= n_min <= n_max");
    GateSet gs = GateSet::load(no.gates);
    Net net = acquire_net(no, gs);

    std::mt19937_64 rng(so.seed);
    std::vector<Quatd> pool;
    for (int t = 0; t < targets; ++t) pool.push_back(random_target(rng));

    std::vector<BenchRow> rows;
    for (const std::string& name : tmpls) {
        SynthOptions to = so;
        to.tmpl = name;
        StepParams sp = make_step_params(to);
        SynthParams zp = make_synth_params(sp, to);
        StepGenerator steps(net, sp);
        Synthesizer synth(net, steps, zp);
        if (name == tmpls.front())
            print_manifest(gs, net, sp, zp, so.precision_bits, so.seed);
        for (int n = n_min; n <= n_max; ++n) {
            for (int t = 0; t < targets; ++t) {
                BenchRow row;
                row.n = n;
                row.target = t;
                row.tmpl = name;
                row.algo = "zgqb";
                row.eps_target = std::ldexp(1.0, -n);
                try {
                    SynthResult r =
                        synth.synthesize(convert<Real>(pool[t]), n);
                    row.eps_achieved = static_cast<double>(r.achieved);
                    row.len = r.word.length();
                    row.wall_ms = r.stats.wall_ms;
                    row.ok = true;
                } catch (const Error&) {
                    row.ok = false;
                }
                rows.push_back(row);
            }
        }
    }

    // Dawson-Nielsen baseline: one trajectory per target, rows matched to
    // the same 2^-n accuracy ladder.
    {
        StepParams sp = comm_step_params();
        StepGenerator steps(net, sp);
        Synthesizer synth(net, steps, SynthParams::for_alpha(2.0));
        for (int t = 0; t < targets; ++t) {
            std::vector<Synthesizer::DnRow> traj;
            try {
                traj = synth.dn_trajectory(pool[t], 12);
            } catch (const Error&) {
            }
            for (int n = n_min; n <= n_max; ++n) {
                BenchRow row;
                row.n = n;
                row.target = t;
                row.tmpl = "dn";
                row.algo = "dn";
                row.eps_target = std::ldexp(1.0, -n);
                for (const auto& d : traj) {
                    if (d.eps < row.eps_target) {
                        row.eps_achieved = d.eps;
                        row.len = d.len;
                        row.wall_ms = d.wall_ms;
                        row.ok = true;
                        break;
                    }
                }
                rows.push_back(row);
            }
        }
    }

    // Ordered CSV assembly, temp-file + rename so failures leave no partial
    // output.
    std::ostringstream csv;
    csv << "n,eps_target,eps_achieved,len,template,algo,wall_ms,status\n";
    std::size_t ok_count = 0;
    for (const BenchRow& r : rows) {
        ok_count += r.ok;
        char line[256];
        std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%zu,%s,%s,%.3f,%s\n",
                      r.n, r.eps_target, r.ok ? r.eps_achieved : 0.0, r.len,
                      r.tmpl.c_str(), r.algo.c_str(), r.wall_ms,
                      r.ok ? "ok" : "fail");
        csv << line;
    }
    if (!out.empty()) {
        std::string tmp = out + ".tmp";
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw CorruptFile("cannot open output file: " + out);
        f << csv.str();
        f.close();
        fs::rename(tmp, out);
        std::cout << "csv: " << out << "\n";
    } else {
        std::cout << csv.str();
    }

    auto print_slope = [&](const std::string& label,
                           const std::vector<std::pair<double, double>>& xy) {
        std::cout << "slope " << label << ": ";
        if (n_min == n_max || xy.size() < 2)
            std::cout << "n/a\n";
        else
            std::cout << fit_slope(xy) << "\n";
    };
    for (const std::string& name : tmpls) {
        std::vector<std::pair<double, double>> xy;
        for (const BenchRow& r : rows)
            if (r.ok && r.algo == "zgqb" && r.tmpl == name)
                xy.push_back({std::log(static_cast<double>(r.n)),
                              std::log(static_cast<double>(r.len))});
        print_slope(name + " (log len vs log n)", xy);
    }
    {
        std::vector<std::pair<double, double>> xy;
        for (const BenchRow& r : rows)
            if (r.ok && r.algo == "dn" && r.eps_achieved > 0)
                xy.push_back(
                    {std::log(std::log(1.0 / r.eps_achieved)),
                     std::log(static_cast<double>(r.len))});
        print_slope("dn (log len vs log log 1/eps)", xy);
    }

    double frac =
        rows.empty() ? 0.0
                     : static_cast<double>(ok_count) /
                           static_cast<double>(rows.size());
    std::cout << "rows: " << rows.size() << " ok: " << ok_count << "\n";
    return frac >= 0.9 ? kOk : kMismatch;
}

int cmd_verify(const std::string& what, int n_max, std::uint64_t seed) {
    int failures = 0;
    auto report = [&](const std::string& label, bool pass) {
        std::cout << (pass ? "  pass  " : "  FAIL  ") << label << "\n";
        if (!pass) ++failures;
    };

    if (what == "elkasapy-lengths") {
        if (n_max < 2) n_max = 24;
        Word g = abstract_g(), h = abstract_h();
        std::vector<Word> om(n_max + 1);
        if (n_max >= 1) om[1] = g;
        if (n_max >= 2) om[2] = h;
        for (int n = 3; n <= n_max; ++n)
            om[n] = commutator_word(invert(om[n - 1]), om[n - 2]);
        for (int n = 2; n <= n_max; ++n) {
            ElkasapyPair p = elkasapy_pair(n);
            bool pass =
                static_cast<std::int64_t>(p.omega.length()) ==
                    elkasapy_length(n) &&
                static_cast<std::int64_t>(p.zeta.length()) ==
                    elkasapy_zeta_length(n) &&
                p.omega == om[n];
            std::ostringstream label;
            label << "n=" << n << " len(omega)=" << p.omega.length()
                  << " closed-form=" << elkasapy_length(n)
                  << " recurrences-agree=" << (p.omega == om[n] ? "yes" : "no");
            report(label.str(), pass);
        }
    } else if (what == "nilfib") {
        if (n_max < 1) n_max = 9;
        for (int n = 1; n <= n_max; ++n) {
            NilFibReport r = verify_nilfib(n);
            std::ostringstream label;
            label << "n=" << n << " f_n=" << r.fib << " degree="
                  << (r.degree ? std::to_string(*r.degree) : "none")
                  << " axis=" << r.pauli << " sign=" << r.sign;
            report(label.str(), r.pass);
        }
    } else if (what == "cross") {
        prec::Scoped scope(128);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> ud(0.0, 1.0);
        Real pi = acos(Real(-1));
        Real tolerance = prec::tol(24);
        int good = 0;
        const int trials = 1000;
        for (int i = 0; i < trials; ++i) {
            Real psi = Real(0.02 + 0.45 * ud(rng)) * pi;
            Real theta = Real(0.02 + 0.96 * ud(rng)) * pi;
            std::normal_distribution<double> nd;
            Vec3<Real> axis{Real(nd(rng)), Real(nd(rng)), Real(nd(rng))};
            QuatR gq = exp_axis(axis, psi);
            // h conjugate to g at corner angle theta about a transported axis.
            Vec3<Real> n0 = axis.normalized();
            Vec3<Real> perp = perpendicular_axis(n0);
            using boost::multiprecision::cos;
            using boost::multiprecision::sin;
            Vec3<Real> axis2 = n0 * cos(theta) + perp * sin(theta);
            QuatR hq = exp_axis(axis2, psi);
            Real direct =
                distance(commutator(gq, hq), QuatR::identity()).radians;
            Real closed = comm_distance(Angle<Real>{psi},
                                        Angle<Real>{theta}).radians;
            if (abs(direct - closed) < tolerance) ++good;
        }
        std::ostringstream label;
        label << good << "/" << trials << " within 2^(24-128)";
        report(label.str(), good == trials);
    } else if (what == "endpoints") {
        if (n_max < 2) n_max = 24;
        for (int n = 2; n <= n_max; ++n) {
            ElkasapyPair p = elkasapy_pair(n);
            Endpoints e = endpoints(n);
            auto first = [](const Word& w) { return w.letters().front(); };
            auto last = [](const Word& w) { return w.letters().back(); };
            bool pass = first(p.omega) == e.omega_first &&
                        last(p.omega) == e.omega_last &&
                        first(p.zeta) == e.zeta_first &&
                        last(p.zeta) == e.zeta_last;
            report("n=" + std::to_string(n) + " endpoints", pass);
        }
    } else {
        throw DegenerateInput(
            "verify: expected elkasapy-lengths | nilfib | cross | endpoints");
    }
    std::cout << (failures ? "FAIL" : "PASS") << " (" << failures
              << " mismatches)\n";
    return failures ? kMismatch : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skforge: SU(2) gate synthesis via zigzag refinement"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    NetOptions net_opts;
    SynthOptions synth_opts;
    std::string out_path, target_text = "probe0", verify_what;
    int n = 20, n_min = 10, n_max = 24, targets = 3, verify_n = 0;
    std::vector<std::string> templates{"comm"};

    CLI::App* net_build = app.add_subcommand(
        "net-build", "Build a base net and print its covering estimate");
    add_net_options(net_build, net_opts);
    net_build->add_option("--out", out_path, "Net output file");

    CLI::App* synth = app.add_subcommand(
        "synth", "Synthesize a gate word within 2^-n of a target");
    add_net_options(synth, net_opts);
    add_synth_options(synth, synth_opts);
    synth->add_option("--target", target_text,
                      "\"a,b,c,d\" | probeK | random | gate name | identity");
    synth->add_option("-n,--accuracy", n, "Target accuracy exponent n");
    synth->add_option("--out", out_path, "Write the word to this file");

    CLI::App* bench = app.add_subcommand(
        "bench", "Scaling benchmark: CSV rows plus fitted slopes");
    add_net_options(bench, net_opts);
    add_synth_options(bench, synth_opts);
    bench->add_option("--n-min", n_min, "Smallest accuracy exponent");
    bench->add_option("--n-max", n_max, "Largest accuracy exponent");
    bench->add_option("--targets", targets, "Seeded random targets per n");
    bench->add_option("--templates", templates,
                      "Step templates (comm, elk3..elk9)")
        ->delimiter(',');
    bench->add_option("--out", out_path, "CSV output file");

    CLI::App* verify = app.add_subcommand(
        "verify", "Exact verification suites, pass/fail table");
    verify->add_option("what", verify_what,
                       "elkasapy-lengths | nilfib | cross | endpoints")
        ->required();
    verify->add_option("--n-max", verify_n, "Upper index (suite default)");
    verify->add_option("--seed", synth_opts.seed, "Seed for sampled suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (net_build->parsed()) return cmd_net_build(net_opts, out_path);
        if (synth->parsed())
            return cmd_synth(net_opts, synth_opts, target_text, n, out_path);
        if (bench->parsed())
            return cmd_bench(net_opts, synth_opts, n_min, n_max, targets,
                             templates, out_path);
        if (verify->parsed())
            return cmd_verify(verify_what, verify_n, synth_opts.seed);
    } catch (const NonSymmetricGateSet& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNonSymmetric;
    } catch (const EmptyGateSet& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNonSymmetric;
    } catch (const TargetUnreachable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnreachable;
    } catch (const PrecisionShortfall& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kShortfall;
    } catch (const CorruptFile& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const VersionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMismatch;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    return kOk;
}
