// wep: command-line front end for the weighted inverse and EP analyses.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "wep/epcheck.hpp"
#include "wep/factor.hpp"
#include "wep/fuzz.hpp"
#include "wep/hermitian.hpp"
#include "wep/matrix_io.hpp"
#include "wep/report.hpp"
#include "wep/wmp.hpp"

namespace {

using namespace wep;

constexpr int kExitError = 3;

struct Options {
    std::string input;
    std::string e_file;
    std::string f_file;
    std::string h_file;
    std::string norm = "l2";
    std::optional<double> tol;
    std::uint64_t seed = 42;
    std::size_t trials = 100;
    std::size_t dim = 0;
    std::string mode = "fullrank";
    bool synthesize = false;
    std::string output;
    std::size_t range_samples = 0;
};

Tolerance effective_tolerance(const Options& o, std::string& source) {
    Tolerance tol;
    source = "default";
    if (const char* env = std::getenv("WEP_TOL"); env && *env) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0') throw ShapeError(std::string("WEP_TOL is not a number: ") + env);
        tol.residual_rel = v;
        source = "WEP_TOL";
    }
    if (o.tol) {
        tol.residual_rel = *o.tol;
        source = "--tol";
    }
    tol.validate();
    return tol;
}

CMatrix load_input(const Options& o) {
    if (o.input.empty()) throw ShapeError("missing -i/--input");
    return read_matrix(o.input);
}

Weight load_weight(const std::string& file, std::size_t n, const NormContext& ctx, const Tolerance& tol,
                   const char* name, Report& rep) {
    if (file.empty()) {
        rep.add(std::string("weight.") + name, "identity");
        return Weight::identity(n);
    }
    CMatrix u = read_matrix(file);
    if (u.rows() != n || u.cols() != n) {
        throw ShapeError(std::string("weight ") + name + " is " + shape_str(u) + ", expected " + std::to_string(n) +
                         "x" + std::to_string(n));
    }
    const PositivityVerdict pv = check_positive(u, ctx, tol);
    const std::string key = std::string("weight.") + name;
    rep.add(key, file);
    rep.add(key + ".hermitian", pv.hermitian.hermitian);
    rep.add(key + ".min_eigenvalue", pv.min_real);
    rep.add(key + ".positive", pv.positive);
    return Weight::make(std::move(u), ctx, tol);
}

void add_wmp_fields(Report& rep, const WmpResult& w) {
    rep.add("status", to_string(w.status));
    rep.add("res_aba", w.res_aba);
    rep.add("res_bab", w.res_bab);
    rep.add("herm_left_dev", w.herm_left_dev);
    rep.add("herm_right_dev", w.herm_right_dev);
}

// Matrix goes to -o when given, otherwise to stdout with the report on stderr.
int emit_matrix_and_report(const Options& o, const CMatrix& m, const Report& rep, int code) {
    if (o.output.empty()) {
        std::cout << format_matrix(m);
        std::cerr << rep.str();
    } else {
        write_matrix(o.output, m);
        std::cout << rep.str();
    }
    return code;
}

int cmd_pinv(const Options& o, const Tolerance& tol, Report& rep) {
    const CMatrix a = load_input(o);
    rep.add("command", "pinv");
    rep.add("shape", shape_str(a));
    const WmpResult w = verify_wmp(a, mp_inverse(a, tol), Weight::identity(a.rows()), Weight::identity(a.cols()), tol);
    rep.add("rank", rank(a, tol));
    add_wmp_fields(rep, w);
    if (!o.output.empty()) rep.add("output", o.output);
    return emit_matrix_and_report(o, w.pinv, rep, w.valid() ? 0 : 1);
}

int cmd_wpinv(const Options& o, const Tolerance& tol, const NormContext& ctx, Report& rep) {
    const CMatrix a = load_input(o);
    rep.add("command", "wpinv");
    rep.add("shape", shape_str(a));
    const Weight e = load_weight(o.e_file, a.rows(), ctx, tol, "E", rep);
    const Weight f = load_weight(o.f_file, a.cols(), ctx, tol, "F", rep);
    const WmpResult w = wmp_inverse(a, e, f, tol, ctx);
    add_wmp_fields(rep, w);
    if (!o.output.empty()) rep.add("output", o.output);
    if (w.status == WmpStatus::Undetermined) rep.comment("sampled hermitian test failed; existence is undetermined");
    return emit_matrix_and_report(o, w.pinv, rep, w.valid() ? 0 : 1);
}

int cmd_ep_check(const Options& o, const Tolerance& tol, const NormContext& ctx, Report& rep) {
    if (ctx.kind != NormKind::L2) throw ShapeError("ep-check supports --norm l2 only");
    rep.add("command", "ep-check");
    CMatrix a;
    std::optional<Weight> e, f;
    if (o.synthesize) {
        const std::size_t n = o.dim ? o.dim : 4;
        const Instance inst = generate_instance(n, n / 2, true, o.seed, NonEpKind::Auto, tol);
        a = inst.a;
        e = inst.e;
        f = inst.f;
        rep.add("synthesized", true);
        rep.add("seed", std::to_string(o.seed));
        rep.add("core_rank", n / 2);
        if (!o.output.empty()) {
            write_matrix(o.output + ".a.json", inst.a);
            write_matrix(o.output + ".E.json", inst.e.u());
            write_matrix(o.output + ".F.json", inst.f.u());
        }
    } else {
        a = load_input(o);
        require_square(a, "ep-check");
        e = load_weight(o.e_file, a.rows(), ctx, tol, "E", rep);
        f = load_weight(o.f_file, a.cols(), ctx, tol, "F", rep);
    }
    rep.add("shape", shape_str(a));
    std::optional<Weight> mid;
    if (!o.h_file.empty()) mid = load_weight(o.h_file, rank(a, tol), ctx, tol, "H", rep);

    const EpReport ep = ep_check_all(a, *e, *f, mid, tol);
    rep.add("direct", ep.direct);
    rep.add("direct_residual", ep.direct_residual);
    std::size_t agree = 0;
    for (const auto& s : ep.statements) {
        rep.add("statement." + s.id, s.verdict);
        rep.add("statement." + s.id + ".residual", s.residual);
        if (s.verdict == ep.direct) ++agree;
    }
    rep.add("statements", ep.statements.size());
    rep.add("agreeing", agree);
    rep.add("consistent", ep.consistent);
    for (const auto& s : ep.statements)
        if (!s.note.empty()) rep.comment(s.id + ": " + s.note);
    std::cout << rep.str();
    if (!ep.consistent) return 2;
    return ep.direct ? 0 : 1;
}

int cmd_factorize(const Options& o, const Tolerance& tol, const NormContext& ctx, Report& rep) {
    const CMatrix a = load_input(o);
    rep.add("command", "factorize");
    rep.add("mode", o.mode);
    rep.add("shape", shape_str(a));
    auto out = [&](const char* name, const CMatrix& m) {
        if (o.output.empty()) return;
        const std::string path = o.output + "." + name + ".json";
        write_matrix(path, m);
        rep.add(std::string("output.") + name, path);
    };

    if (o.mode == "fullrank") {
        const Weight e = load_weight(o.e_file, a.rows(), ctx, tol, "E", rep);
        const Weight h = load_weight(o.f_file, a.cols(), ctx, tol, "F", rep);
        const FullRankFactorization fr = full_rank_factorize(a, tol);
        const Weight mid = load_weight(o.h_file, fr.r, ctx, tol, "H", rep);
        rep.add("rank", fr.r);
        const double res = rel_diff(fr.b * fr.c, a);
        rep.add("res_reconstruct", res);
        const FactorParts parts = factor_parts_wmp(a, fr, e, mid, h, tol);
        const ReverseOrderReport ro = reverse_order_wmp(a, fr, parts, tol);
        rep.add("res_b_dag_b", parts.res_left_identity);
        rep.add("res_c_c_dag", parts.res_right_identity);
        rep.add("reverse_order.holds", ro.holds);
        rep.add("reverse_order.residual", ro.res_direct);
        out("b", fr.b);
        out("c", fr.c);
        out("b_dag", parts.b_dag);
        out("c_dag", parts.c_dag);
        std::cout << rep.str();
        return res <= tol.residual_rel && ro.holds ? 0 : 1;
    }

    require_square(a, "factorize");
    const Weight e = load_weight(o.e_file, a.rows(), ctx, tol, "E", rep);
    const Weight f = load_weight(o.f_file, a.cols(), ctx, tol, "F", rep);
    try {
        if (o.mode == "block") {
            const EpBlockDecomposition d = ep_block_decomposition(a, e, f, tol);
            rep.add("rank", d.t1.rows());
            rep.add("res_reconstruct", d.res_reconstruct);
            rep.add("res_pinv", d.res_pinv);
            rep.add("t1_invertible", d.t1_invertible);
            rep.add("herm_q1_dev", d.herm_q1_dev);
            rep.add("herm_q2_dev", d.herm_q2_dev);
            rep.add("verified", d.verified);
            out("j", d.j);
            out("t1", d.t1);
            std::cout << rep.str();
            return d.verified ? 0 : 1;
        }
        if (o.mode == "canonical") {
            const EpDecomposition d = canonical_ep_decomposition(a, e, f, tol);
            rep.add("res_idempotent", d.res_idempotent);
            rep.add("res_reconstruct", d.res_reconstruct);
            rep.add("herm_e_dev", d.herm_e_dev);
            rep.add("herm_f_dev", d.herm_f_dev);
            rep.add("res_corner", d.res_corner);
            rep.add("degenerate", d.degenerate);
            rep.add("verified", d.verified);
            out("c", d.c);
            out("p", d.p);
            out("core", d.core);
            out("core_inv", d.core_inv);
            std::cout << rep.str();
            return d.verified ? 0 : 1;
        }
    } catch (const NotWeightedEpError& err) {
        rep.add("weighted_ep", false);
        rep.comment(err.what());
        std::cout << rep.str();
        std::cerr << "wep: " << err.what() << "\n";
        return 1;
    }
    throw ShapeError("unknown --mode " + o.mode);
}

int cmd_hermitian_check(const Options& o, const Tolerance& tol, const NormContext& ctx, Report& rep) {
    const CMatrix a = load_input(o);
    require_square(a, "hermitian-check");
    rep.add("command", "hermitian-check");
    rep.add("shape", shape_str(a));
    if (!o.e_file.empty()) {
        const Weight w = load_weight(o.e_file, a.rows(), ctx, tol, "E", rep);
        const WeightedHermitianVerdict v = is_hermitian_weighted(a, w, ctx, tol);
        rep.add("weighted_hermitian", v.hermitian);
        rep.add("weighted_deviation", v.deviation);
        if (ctx.kind == NormKind::L2) {
            rep.add("congruence_deviation", v.congruence_deviation);
            rep.add("routes_agree", v.routes_agree);
        }
    }
    const PositivityVerdict pv = check_positive(a, ctx, tol);
    rep.add("hermitian", pv.hermitian.hermitian);
    rep.add("deviation", pv.hermitian.deviation);
    rep.add("sampled_deviation", sampled_hermitian_deviation(a, ctx));
    rep.add("positive", pv.positive);
    if (!pv.positive) rep.add("failed_criterion", pv.failed_criterion);
    const auto pts = o.range_samples ? numerical_range(a, o.range_samples) : std::vector<cplx>{};
    for (std::size_t k = 0; k < pts.size(); ++k) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.6e %.6e", pts[k].real(), pts[k].imag());
        rep.add("numerical_range." + std::to_string(k), std::string_view(buf));
    }
    std::cout << rep.str();
    return 0;
}

int cmd_fuzz(const Options& o, const Tolerance& tol) {
    FuzzConfig cfg;
    cfg.seed = o.seed;
    cfg.trials = o.trials;
    cfg.dim = o.dim;
    cfg.tol = tol;
    const FuzzSummary s = run_fuzz(cfg);
    const std::string text = format_summary(cfg, s);
    std::cout << text;
    if (!o.output.empty()) {
        std::ofstream out(o.output, std::ios::binary);
        out << text;
        if (!out) throw Error(o.output + ": write failed");
    }
    return s.ok() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted Moore-Penrose inverses and weighted-EP checks for dense complex matrices"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--norm", o.norm, "Ambient norm")->check(CLI::IsMember({"l1", "l2", "linf"}));
        sub->add_option("--tol", o.tol, "Residual tolerance (overrides WEP_TOL)")->check(CLI::PositiveNumber);
    };
    auto add_io = [&](CLI::App* sub) {
        sub->add_option("-i,--input", o.input, "Input matrix file");
        sub->add_option("-o,--output", o.output, "Output file or prefix");
    };
    auto add_weights = [&](CLI::App* sub) {
        sub->add_option("-E", o.e_file, "Codomain weight file");
        sub->add_option("-F", o.f_file, "Domain weight file");
        sub->add_option("-H", o.h_file, "Middle weight for factorization chains (rank x rank)");
    };

    auto* pinv = app.add_subcommand("pinv", "Moore-Penrose inverse");
    add_io(pinv);
    add_common(pinv);
    auto* wpinv = app.add_subcommand("wpinv", "Weighted Moore-Penrose inverse");
    add_io(wpinv);
    add_weights(wpinv);
    add_common(wpinv);
    auto* ep = app.add_subcommand("ep-check", "Weighted-EP decision with every characterization");
    add_io(ep);
    add_weights(ep);
    add_common(ep);
    ep->add_flag("--synthesize", o.synthesize, "Check a generated EP instance instead of -i");
    ep->add_option("--seed", o.seed, "Seed for --synthesize");
    ep->add_option("--dim", o.dim, "Size for --synthesize")->check(CLI::PositiveNumber);
    auto* fac = app.add_subcommand("factorize", "Full-rank, block or canonical factorization");
    add_io(fac);
    add_weights(fac);
    add_common(fac);
    fac->add_option("--mode", o.mode, "fullrank | block | canonical")
        ->check(CLI::IsMember({"fullrank", "block", "canonical"}));
    auto* herm = app.add_subcommand("hermitian-check", "Hermitian and positivity verdicts");
    add_io(herm);
    herm->add_option("-E", o.e_file, "Weight defining the algebra A^E");
    herm->add_option("--range-samples", o.range_samples, "Numerical range boundary samples");
    add_common(herm);
    auto* fuzz = app.add_subcommand("fuzz", "Randomized cross-check of every EP suite");
    fuzz->add_option("--seed", o.seed, "Base seed");
    fuzz->add_option("--trials", o.trials, "Number of instances")->check(CLI::PositiveNumber);
    fuzz->add_option("--dim", o.dim, "Fixed size n (default: drawn from 2..8)")->check(CLI::PositiveNumber);
    fuzz->add_option("-o,--output", o.output, "Also write the summary here");
    add_common(fuzz);

    CLI11_PARSE(app, argc, argv);

    try {
        std::string tol_source;
        const Tolerance tol = effective_tolerance(o, tol_source);
        const NormContext ctx = NormContext::with(parse_norm_kind(o.norm));
        Report rep;
        rep.add("norm", o.norm);
        rep.add_tolerance(tol);
        rep.add("tol.source", tol_source);

        if (*pinv) return cmd_pinv(o, tol, rep);
        if (*wpinv) return cmd_wpinv(o, tol, ctx, rep);
        if (*ep) return cmd_ep_check(o, tol, ctx, rep);
        if (*fac) return cmd_factorize(o, tol, ctx, rep);
        if (*herm) return cmd_hermitian_check(o, tol, ctx, rep);
        if (*fuzz) return cmd_fuzz(o, tol);
    } catch (const std::exception& err) {
        std::cerr << "wep: error: " << err.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
