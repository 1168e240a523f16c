#include "wep/fuzz.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <limits>

#include "wep/epcheck.hpp"
#include "wep/factor.hpp"
#include "wep/random.hpp"
#include "wep/wmp.hpp"

namespace wep {

namespace {

std::size_t pick_rank(std::size_t n, bool ep, Rng& rng) {
    if (ep) return uniform_index(rng, 0, n);
    std::vector<std::size_t> feasible;
    for (std::size_t r = 0; r < n; ++r)
        if (r > 0 || n - r >= 2) feasible.push_back(r);
    return feasible[uniform_index(rng, 0, feasible.size() - 1)];
}

void run_trial(const FuzzConfig& cfg, std::size_t trial, FuzzSummary& s) {
    const std::uint64_t seed = derive_seed(cfg.seed, trial);
    const Tolerance& tol = cfg.tol;
    Rng rng(seed);
    const bool ep = trial % 2 == 0;
    const std::size_t n = cfg.dim ? cfg.dim : uniform_index(rng, 2, 8);
    if (!ep && n < 2) {
        ++s.skipped;
        return;
    }
    const std::size_t r = pick_rank(n, ep, rng);
    auto fail = [&](std::string what) { s.failures.push_back({trial, seed, std::move(what)}); };

    const Instance inst = generate_instance(n, r, ep, derive_seed(seed, 1), NonEpKind::Auto, tol);
    (ep ? s.ep_instances : s.non_ep_instances) += 1;

    const FullRankFactorization fr = full_rank_factorize(inst.a, tol);
    const Weight mid = random_weight(fr.r, rng);
    const EpReport rep = ep_check_all(inst.a, inst.e, inst.f, mid, tol);
    s.statements_checked += rep.statements.size();

    if (rep.direct != inst.ep) {
        ++s.label_mismatches;
        fail("direct verdict " + std::string(rep.direct ? "EP" : "non-EP") + " on a generated " +
             (inst.ep ? "EP" : "non-EP") + " instance");
    }
    if (!rep.consistent) {
        ++s.inconsistencies;
        std::string ids;
        for (const auto& st : rep.statements) {
            if (st.verdict == rep.direct) continue;
            ++s.disagreements[st.id];
            ids += (ids.empty() ? "" : ",") + st.id;
        }
        fail("statements disagree with direct: " + ids);
    }
    if (rep.direct) {
        for (const auto& st : rep.statements) s.worst_ep_statement = std::max(s.worst_ep_statement, st.residual);
    } else {
        s.min_non_ep_direct = std::min(s.min_non_ep_direct, rep.direct_residual);
    }

    const WmpResult w = wmp_inverse(inst.a, inst.e, inst.f, tol);
    s.worst_wmp = std::max(s.worst_wmp, w.worst_residual());
    if (!w.valid()) fail("weighted inverse failed verification");

    const DoubleDaggerResult dd = double_dagger_check(inst.a, inst.e, inst.f, tol);
    s.worst_double_dagger = std::max(s.worst_double_dagger, dd.residual);
    if (!dd.holds) fail("double dagger");

    const FactorParts parts = factor_parts_wmp(inst.a, fr, inst.e, mid, inst.f, tol);
    const ReverseOrderReport ro = reverse_order_wmp(inst.a, fr, parts, tol);
    s.worst_reverse_order = std::max(s.worst_reverse_order, ro.res_direct);
    if (!ro.holds) fail("reverse order law");

    const bool group = is_group_invertible(inst.a, tol);
    if (!group) ++s.nilpotent_instances;
    if (inst.ep) {
        if (!group) {
            fail("EP instance without group inverse");
        } else {
            const double g = rel_diff(group_inverse(inst.a, tol), w.pinv);
            s.worst_group_inverse = std::max(s.worst_group_inverse, g);
            if (g > tol.residual_rel) fail("group inverse differs from weighted inverse");
        }
        const EpBlockDecomposition blk = ep_block_decomposition(inst.a, inst.e, inst.f, tol);
        s.worst_block = std::max({s.worst_block, blk.res_reconstruct, blk.res_pinv});
        if (!blk.verified) fail("block decomposition not verified");
    } else if (!group) {
        const bool any_true = std::any_of(rep.statements.begin(), rep.statements.end(),
                                          [](const Statement& st) { return st.verdict; });
        if (any_true || rep.direct) fail("statement true on a matrix without group inverse");
    }
}

}  // namespace

FuzzSummary run_fuzz(const FuzzConfig& cfg) {
    if (cfg.trials == 0) throw ShapeError("fuzz: trials must be at least 1");
    cfg.tol.validate();
    FuzzSummary s;
    s.trials = cfg.trials;
    s.min_non_ep_direct = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        const std::size_t before = s.failures.size();
        try {
            run_trial(cfg, t, s);
        } catch (const Error& e) {
            ++s.errors;
            s.failures.push_back({t, derive_seed(cfg.seed, t), std::string("error: ") + e.what()});
        }
        (void)before;
    }
    if (s.non_ep_instances == 0) s.min_non_ep_direct = 0.0;
    return s;
}

std::string format_summary(const FuzzConfig& cfg, const FuzzSummary& s) {
    std::string out;
    char buf[256];
    auto line = [&](const char* key, const char* fmt, auto v) {
        std::snprintf(buf, sizeof buf, fmt, v);
        out += key;
        out += ": ";
        out += buf;
        out += '\n';
    };
    line("seed", "%" PRIu64, cfg.seed);
    line("trials", "%zu", s.trials);
    line("dim", "%s", cfg.dim ? std::to_string(cfg.dim).c_str() : "2..8");
    line("residual_rel", "%.6e", cfg.tol.residual_rel);
    line("rank_rel", "%.6e", cfg.tol.rank_rel);
    line("ep_instances", "%zu", s.ep_instances);
    line("non_ep_instances", "%zu", s.non_ep_instances);
    line("without_group_inverse", "%zu", s.nilpotent_instances);
    line("skipped", "%zu", s.skipped);
    line("statements_checked", "%zu", s.statements_checked);
    line("inconsistencies", "%zu", s.inconsistencies);
    line("label_mismatches", "%zu", s.label_mismatches);
    line("errors", "%zu", s.errors);
    line("worst_wmp_residual", "%.6e", s.worst_wmp);
    line("worst_double_dagger", "%.6e", s.worst_double_dagger);
    line("worst_reverse_order", "%.6e", s.worst_reverse_order);
    line("worst_group_inverse", "%.6e", s.worst_group_inverse);
    line("worst_block", "%.6e", s.worst_block);
    line("worst_ep_statement", "%.6e", s.worst_ep_statement);
    line("min_non_ep_direct", "%.6e", s.min_non_ep_direct);
    for (const auto& [id, count] : s.disagreements) {
        std::snprintf(buf, sizeof buf, "disagreement.%s: %zu\n", id.c_str(), count);
        out += buf;
    }
    for (const auto& f : s.failures) {
        std::snprintf(buf, sizeof buf, "failure: trial=%zu seed=%" PRIu64 " ", f.trial, f.seed);
        out += buf;
        out += f.what;
        out += '\n';
    }
    line("status", "%s", s.ok() ? "ok" : "FAIL");
    return out;
}

}  // namespace wep
