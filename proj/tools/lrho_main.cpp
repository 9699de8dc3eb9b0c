#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "lrho/invariants.hpp"
#include "lrho/registry.hpp"
#include "lrho/report.hpp"
#include "lrho/rng.hpp"

namespace {

using namespace lrho;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnstable = 2;

Eigen::Vector4d parse_at(const std::string& s) {
    Eigen::Vector4d x;
    std::stringstream ss(s);
    std::string tok;
    int i = 0;
    while (std::getline(ss, tok, ',') && i < 4) x[i++] = std::stod(tok);
    if (i != 4) throw LrhoError("--at wants four comma-separated reals");
    return x;
}

Eigen::Vector3d parse_value(const std::string& s) {
    if (s == "i") return {1, 0, 0};
    if (s == "-i") return {-1, 0, 0};
    Eigen::Vector3d p;
    std::stringstream ss(s);
    std::string tok;
    int i = 0;
    while (std::getline(ss, tok, ',') && i < 3) p[i++] = std::stod(tok);
    if (i != 3) throw LrhoError("value wants i, -i, or three comma-separated reals");
    if (p.norm() < 1e-12) throw LrhoError("value must be a nonzero direction");
    return p.normalized();
}

double parse_eps(const std::string& s) {
    if (s == "auto") return -1.0;
    const double e = std::stod(s);
    if (e <= 0) throw LrhoError("--eps must be positive or auto");
    return e;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw LrhoError("cannot open output file " + path);
    f << text;
}

struct CommonArgs {
    std::string map, field, at{"0,0,0,0"}, eps{"auto"}, p{"i"}, q{"-i"};
    std::string side{"l"}, out, dump, suite, entry, value{"i"};
    std::uint64_t seed{0};
};

std::optional<long> compute_mu_oracle(const MapExpr& m, const Eigen::Vector4d& x,
                                      std::uint64_t seed) {
    if (!m.analytic()) return std::nullopt;
    return milnor_oracle(m, x, seed);
}

int cmd_compute(const CommonArgs& a) {
    const MapExpr m = MapExpr::parse(a.map);
    const Eigen::Vector4d x = parse_at(a.at);
    LambdaRhoOptions opt;
    opt.seed = a.seed;
    opt.eps = parse_eps(a.eps);
    opt.p = parse_value(a.p);
    opt.q = parse_value(a.q);
    opt.trace.seed = a.seed;
    InvariantReport rep = lambda_rho(m, x, opt);
    rep.mu_oracle = compute_mu_oracle(m, x, a.seed);
    write_out(a.out, format_report(a.map, x, rep));
    return kExitOk;
}

FieldPtr field_for(const CommonArgs& a, Side side) {
    if (!a.field.empty()) return make_builtin_field(a.field, side);
    if (a.map.empty()) throw LrhoError("need --map or --field");
    return make_map_field(MapExpr::parse(a.map), side);
}

int cmd_hopf(const CommonArgs& a) {
    const Side side = a.side == "r" ? Side::R : Side::L;
    const FieldPtr f = field_for(a, side);
    Eigen::Vector4d x = Eigen::Vector4d::Zero();
    double eps = 1.0;
    if (a.field.empty()) {
        x = parse_at(a.at);
        const double e = parse_eps(a.eps);
        eps = e > 0 ? e : 0.25;
    }
    HopfOptions opt;
    opt.seed = a.seed;
    opt.p = parse_value(a.p);
    opt.q = parse_value(a.q);
    const long h = hopf_invariant(f, x, eps, opt);
    std::ostringstream os;
    os << h << "\n";
    write_out(a.out, os.str());
    return kExitOk;
}

int cmd_trace(const CommonArgs& a) {
    const Side side = a.side == "r" ? Side::R : Side::L;
    const FieldPtr f = field_for(a, side);
    Eigen::Vector4d x = Eigen::Vector4d::Zero();
    double eps = 1.0;
    if (a.field.empty()) {
        x = parse_at(a.at);
        const double e = parse_eps(a.eps);
        eps = e > 0 ? e : 0.25;
    }
    TraceParams par;
    par.seed = a.seed;
    SphereTracer tracer(f, x, eps, par);
    const auto comps = tracer.preimage_components(parse_value(a.value));
    if (comps.empty()) {
        std::cerr << "warning: empty preimage\n";
    }
    std::ostringstream os;
    dump_curves(os, comps);
    if (!a.dump.empty()) {
        std::ofstream df(a.dump);
        if (!df) throw LrhoError("cannot open dump file " + a.dump);
        df << os.str();
    } else {
        std::cout << os.str();
    }
    return kExitOk;
}

struct VerifyRow {
    std::string name;
    std::string status;
    std::string detail;
    bool pass{false};
};

VerifyRow verify_entry(const RegistryEntry& e, std::uint64_t seed) {
    VerifyRow row;
    row.name = e.name;
    const Eigen::Vector4d x(e.point[0], e.point[1], e.point[2], e.point[3]);
    const MapExpr m = MapExpr::parse(e.map_src);

    if (!e.invariants_run) {
        const auto probe = isolatedness_probe(m, x, 0.5, seed);
        row.pass = probe.pass == e.expect_probe_pass;
        std::ostringstream os;
        os << "probe " << (probe.pass ? "pass" : "fail") << " (min residual "
           << probe.min_residual << ")";
        row.detail = os.str();
        row.status = row.pass ? "PASS" : "FAIL";
        return row;
    }

    LambdaRhoOptions opt;
    opt.seed = seed;
    opt.trace.seed = seed;
    const InvariantReport rep = lambda_rho(m, x, opt);
    const auto mu_or = entry_mu_oracle(e, seed);
    const auto l_or = oracle_value(e.lambda_oracle, x, seed);
    const auto r_or = oracle_value(e.rho_oracle, x, seed);

    bool ok = true;
    if (e.expected_lambda && rep.lambda != *e.expected_lambda) ok = false;
    if (e.expected_rho && rep.rho != *e.expected_rho) ok = false;
    if (e.expected_mu && rep.mu_from_sum != *e.expected_mu) ok = false;
    if (mu_or && rep.mu_from_sum != *mu_or) ok = false;
    if (l_or && rep.lambda != *l_or) ok = false;
    if (r_or && rep.rho != *r_or) ok = false;

    std::ostringstream os;
    os << "lambda=" << rep.lambda << " rho=" << rep.rho << " mu_sum=" << rep.mu_from_sum
       << " mu_oracle=" << (mu_or ? std::to_string(*mu_or) : "n/a") << " expected=";
    if (e.expected_lambda) {
        os << "(" << *e.expected_lambda << "," << *e.expected_rho << ","
           << (e.expected_mu ? std::to_string(*e.expected_mu) : "?") << ")";
    } else {
        os << "n/a";
    }
    row.detail = os.str();
    row.pass = ok;
    row.status = ok ? "PASS" : "FAIL";
    return row;
}

int run_paper_examples(const CommonArgs& a) {
    bool all = true;
    std::ostringstream out;
    for (const auto& e : registry()) {
        if (!a.entry.empty() && e.name != a.entry) continue;
        const VerifyRow row = verify_entry(e, a.seed);
        all = all && row.pass;
        out << row.name << "  " << row.detail << "  " << row.status << "\n";
    }
    write_out(a.out, out.str());
    return all ? kExitOk : kExitUnstable;
}

int run_identities(const CommonArgs& a) {
    bool all = true;
    std::ostringstream out;
    auto check = [&](const std::string& name, bool ok, const std::string& detail) {
        all = all && ok;
        out << name << "  " << detail << "  " << (ok ? "PASS" : "FAIL") << "\n";
    };

    // H(l o T) = 0 and H(r o T) = 1 for the tangent frame field T = <jQ, kQ>.
    {
        HopfOptions opt;
        opt.seed = a.seed;
        const long hl = hopf_invariant(make_tangent_jk_field(Side::L),
                                       Eigen::Vector4d::Zero(), 1.0, opt);
        const long hr = hopf_invariant(make_tangent_jk_field(Side::R),
                                       Eigen::Vector4d::Zero(), 1.0, opt);
        check("tangent-frame", hl == 0 && hr == 1 + hl,
              "H(l)=" + std::to_string(hl) + " H(r)=" + std::to_string(hr));
    }

    // Antipodal invariance of the Hopf invariant.
    {
        HopfOptions opt;
        opt.seed = a.seed;
        const long h1 = hopf_invariant(make_hopf_field(), Eigen::Vector4d::Zero(), 1.0, opt);
        const long h2 = hopf_invariant(make_builtin_field("antipodal-hopf", Side::L),
                                       Eigen::Vector4d::Zero(), 1.0, opt);
        const MapExpr m = MapExpr::parse(find_entry("mixed-cusp-product")->map_src);
        const FieldPtr lf = make_map_field(m, Side::L);
        const long h3 = hopf_invariant(lf, Eigen::Vector4d::Zero(), 0.25, opt);
        const long h4 = hopf_invariant(make_antipodal_field(lf), Eigen::Vector4d::Zero(),
                                       0.25, opt);
        check("antipodal", h1 == h2 && h3 == h4,
              "H(hopf)=" + std::to_string(h1) + " H(-hopf)=" + std::to_string(h2) +
                  " H(l)=" + std::to_string(h3) + " H(-l)=" + std::to_string(h4));
    }

    // Mirror duality swaps lambda and rho on every registry map.
    for (const auto& e : registry()) {
        if (!e.invariants_run) continue;
        const Eigen::Vector4d x(e.point[0], e.point[1], e.point[2], e.point[3]);
        LambdaRhoOptions opt;
        opt.seed = a.seed;
        opt.trace.seed = a.seed;
        opt.eps = 0.25;
        const InvariantReport orig = lambda_rho(MapExpr::parse(e.map_src), x, opt);
        const InvariantReport mir = lambda_rho(mirror_map(MapExpr::parse(e.map_src)), x, opt);
        check("mirror-" + e.name, mir.lambda == orig.rho && mir.rho == orig.lambda,
              "orig=(" + std::to_string(orig.lambda) + "," + std::to_string(orig.rho) +
                  ") mirror=(" + std::to_string(mir.lambda) + "," +
                  std::to_string(mir.rho) + ")");
    }

    // Regular-value independence on two entries.
    for (const char* name : {"trefoil", "mixed-cusp-product"}) {
        const RegistryEntry* e = find_entry(name);
        const Eigen::Vector4d x(e->point[0], e->point[1], e->point[2], e->point[3]);
        LambdaRhoOptions base;
        base.seed = a.seed;
        base.trace.seed = a.seed;
        base.eps = 0.25;
        const InvariantReport ref = lambda_rho(MapExpr::parse(e->map_src), x, base);
        Rng rng(Rng::sub_seed(a.seed, 0x9a12));
        bool ok = true;
        std::ostringstream det;
        det << "ref=(" << ref.lambda << "," << ref.rho << ")";
        for (int k = 0; k < 3; ++k) {
            LambdaRhoOptions opt = base;
            opt.p = rng.unit3();
            do {
                opt.q = rng.unit3();
            } while ((opt.q - opt.p).norm() < 0.5);
            const InvariantReport rep = lambda_rho(MapExpr::parse(e->map_src), x, opt);
            ok = ok && rep.lambda == ref.lambda && rep.rho == ref.rho;
            det << " pair" << k << "=(" << rep.lambda << "," << rep.rho << ")";
        }
        check(std::string("regular-values-") + name, ok, det.str());
    }

    write_out(a.out, out.str());
    return all ? kExitOk : kExitUnstable;
}

int cmd_verify(const CommonArgs& a) {
    if (a.suite == "paper-examples" || a.suite.empty()) return run_paper_examples(a);
    if (a.suite == "identities") return run_identities(a);
    throw LrhoError("unknown suite " + a.suite + " (want paper-examples or identities)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lambda/rho invariants of isolated critical points of maps R^4 -> R^2"};
    app.require_subcommand(1);

    CommonArgs a;

    auto add_common = [&](CLI::App* c, bool with_field) {
        c->add_option("--map", a.map, "polynomial in z, zb, w, wb");
        if (with_field) {
            c->add_option("--field", a.field, "builtin field: hopf|antipodal-hopf|tangent-jk");
        }
        c->add_option("--at", a.at, "critical point x1,x2,x3,x4")->capture_default_str();
        c->add_option("--eps", a.eps, "sphere radius or auto")->capture_default_str();
        c->add_option("--p", a.p, "first regular value (i, -i, or px,py,pz)")
            ->capture_default_str();
        c->add_option("--q", a.q, "second regular value")->capture_default_str();
        c->add_option("--seed", a.seed, "RNG seed")->capture_default_str();
        c->add_option("--out", a.out, "write the result to a file");
    };

    CLI::App* compute = app.add_subcommand("compute", "lambda and rho of a map");
    add_common(compute, false);

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify, false);
    verify->add_option("--suite", a.suite, "paper-examples|identities");
    verify->add_option("--entry", a.entry, "restrict to one registry entry");

    CLI::App* hopf = app.add_subcommand("hopf", "Hopf invariant of a field");
    add_common(hopf, true);
    hopf->add_option("--side", a.side, "l|r for map or tangent-jk fields")
        ->capture_default_str();

    CLI::App* trace = app.add_subcommand("trace", "trace preimage curves of one value");
    add_common(trace, true);
    trace->add_option("--side", a.side, "l|r")->capture_default_str();
    trace->add_option("--value", a.value, "target value (i, -i, or px,py,pz)")
        ->capture_default_str();
    trace->add_option("--dump", a.dump, "curve dump file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (compute->parsed()) {
            if (a.map.empty()) throw LrhoError("compute needs --map");
            return cmd_compute(a);
        }
        if (verify->parsed()) return cmd_verify(a);
        if (hopf->parsed()) return cmd_hopf(a);
        if (trace->parsed()) return cmd_trace(a);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const EpsilonUnstable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnstable;
    } catch (const NonIntegerLinking& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnstable;
    } catch (const UnstableCount& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnstable;
    } catch (const CriticalPoint& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnstable;
    } catch (const NotRegular& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnstable;
    } catch (const Diverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnstable;
    } catch (const LrhoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
