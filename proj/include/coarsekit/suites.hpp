#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "coarsekit/asymptotic.hpp"
#include "coarsekit/boxspace.hpp"
#include "coarsekit/coarse.hpp"
#include "coarsekit/host.hpp"
#include "coarsekit/io.hpp"
#include "coarsekit/kernel.hpp"
#include "coarsekit/rep.hpp"
#include "coarsekit/treelift.hpp"

namespace coarsekit::suites {

struct SuiteResult {
    bool pass = true;
    json report;

    void fail(const std::string& what) {
        pass = false;
        report["failures"].push_back(what);
    }
};

// ---------------------------------------------------------------------------

/// Exact tree embedding identity over random trees and basepoints.
inline SuiteResult tree_suite(int trees, int max_vertices, std::uint64_t seed) {
    SuiteResult res;
    res.report = {{"suite", "tree"}, {"seed", seed}, {"failures", json::array()}};
    Rng rng(seed);
    json cases = json::array();
    for (int i = 0; i < trees; ++i) {
        const int n = 3 + static_cast<int>(rng.uniform_int(0, max_vertices - 3));
        const FiniteGraph t = random_tree(n, rng.next_u64());
        const int base = static_cast<int>(rng.uniform_int(0, n - 1));
        const EmbeddingProof proof = verify_embedding_identity(t, base);
        cases.push_back({{"vertices", n},
                         {"basepoint", base},
                         {"pairs_checked", proof.pairs_checked},
                         {"exact", proof.ok}});
        if (!proof.ok)
            res.fail("embedding identity failed on tree " + std::to_string(i) + " pair (" +
                     std::to_string(proof.failure->first) + "," +
                     std::to_string(proof.failure->second) + ")");
    }
    res.report["cases"] = cases;
    return res;
}

// ---------------------------------------------------------------------------

/// Every radius-r ball of each generated large-girth cubic graph certified
/// CND both constructively (lift + exact Gram identity) and by the
/// projected eigenvalue.
inline SuiteResult girth_ball_suite(const std::vector<std::pair<int, std::uint64_t>>& instances,
                                    int girth_target, int radius, double eig_tol) {
    SuiteResult res;
    res.report = {{"suite", "girth-cnd"},
                  {"girth_target", girth_target},
                  {"radius", radius},
                  {"failures", json::array()}};
    json cases = json::array();
    for (const auto& [n, seed] : instances) {
        const FiniteGraph g = random_regular_with_girth(3, n, girth_target, seed);
        const auto gir = girth(g);
        if (gir && *gir < girth_target)
            res.fail("instance n=" + std::to_string(n) + ": generated girth " +
                     std::to_string(*gir) + " below target");
        double worst = -1e300;
        int constructive = 0, eigen_ok = 0;
        std::vector<double> worst_per_center(static_cast<std::size_t>(n), 0.0);
        std::vector<char> cons(static_cast<std::size_t>(n), 0), eig(static_cast<std::size_t>(n), 0);
        parallel_for(static_cast<std::size_t>(n), [&](std::size_t c) {
            const auto cert = ball_cnd_certificate(g, static_cast<int>(c), radius);
            cons[c] = cert.constructive ? 1 : 0;
            eig[c] = (cert.eigen.is_cnd() && cert.eigen.max_eigenvalue <= eig_tol) ? 1 : 0;
            worst_per_center[c] = cert.eigen.max_eigenvalue;
        });
        for (int c = 0; c < n; ++c) {
            constructive += cons[static_cast<std::size_t>(c)];
            eigen_ok += eig[static_cast<std::size_t>(c)];
            worst = std::max(worst, worst_per_center[static_cast<std::size_t>(c)]);
        }
        cases.push_back({{"vertices", n},
                         {"seed", seed},
                         {"girth", gir ? *gir : -1},
                         {"balls", n},
                         {"constructive_ok", constructive},
                         {"eigen_ok", eigen_ok},
                         {"worst_projected_eigenvalue", quantize(worst)}});
        if (constructive != n)
            res.fail("instance n=" + std::to_string(n) + ": constructive certificate failed on " +
                     std::to_string(n - constructive) + " balls");
        if (eigen_ok != n)
            res.fail("instance n=" + std::to_string(n) + ": eigenvalue check failed on " +
                     std::to_string(n - eigen_ok) + " balls");
    }
    res.report["cases"] = cases;
    return res;
}

// ---------------------------------------------------------------------------

/// K_{2,3} negative control: NOT_CND with an independently recomputed
/// positive witness by every route, including the exact rational one.
inline SuiteResult negative_control_suite(double min_witness_value) {
    SuiteResult res;
    res.report = {{"suite", "negative-control"}, {"failures", json::array()}};
    const Kernel k = Kernel::from_metric(shortest_path_metric(complete_bipartite(2, 3)));

    const CndVerdict proj = is_cnd_projected(k);
    const CndVerdict schoen = is_cnd_schoenberg(k, 0);
    const auto exact = is_cnd_exact_integer(k);

    res.report["projected"] = verdict_to_json(proj);
    res.report["schoenberg_verdict"] = schoen.is_cnd() ? "CND" : "NOT_CND";
    res.report["exact_rational_verdict"] = (exact && !*exact) ? "NOT_CND" : "CND";

    if (proj.is_cnd()) res.fail("projected checker called K_{2,3} CND");
    if (schoen.is_cnd()) res.fail("Schoenberg checker called K_{2,3} CND");
    if (!exact || *exact) res.fail("exact rational checker called K_{2,3} CND");
    if (proj.witness.empty()) {
        res.fail("no witness returned");
    } else {
        const double recomputed = quadratic_form(k, proj.witness);
        res.report["witness_recomputed_value"] = quantize(recomputed);
        double sum = 0.0;
        for (double t : proj.witness) sum += t;
        if (std::abs(sum) > 1e-12) res.fail("witness does not sum to zero");
        if (recomputed <= min_witness_value)
            res.fail("witness value " + std::to_string(recomputed) + " below " +
                     std::to_string(min_witness_value));
    }
    return res;
}

// ---------------------------------------------------------------------------

/// Projected-eigenvalue, Schoenberg, Monte Carlo (and, on integer kernels,
/// exact rational) checkers must agree; Monte Carlo may only under-report
/// NOT_CND.
inline SuiteResult oracle_equivalence_suite(int kernels, int max_points, int mc_samples,
                                            std::uint64_t seed) {
    SuiteResult res;
    res.report = {{"suite", "oracle-equivalence"},
                  {"seed", seed},
                  {"kernels", kernels},
                  {"mc_samples", mc_samples},
                  {"failures", json::array()}};
    Rng rng(seed);
    int not_cnd = 0, mc_hits = 0, exact_checked = 0;
    for (int trial = 0; trial < kernels; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_int(0, max_points - 2));
        const bool integer = trial % 4 == 0;
        Kernel k(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j)
                k.set(i, j, integer ? static_cast<double>(rng.uniform_int(-4, 9))
                                    : rng.uniform(-1.0, 1.0));

        const CndVerdict proj = is_cnd_projected(k);
        const CndVerdict schoen = is_cnd_schoenberg(k, 0);
        const CndVerdict mc = is_cnd_monte_carlo(k, mc_samples, rng.next_u64());

        if (proj.is_cnd() != schoen.is_cnd())
            res.fail("trial " + std::to_string(trial) + ": projected and Schoenberg disagree");
        if (!mc.is_cnd()) {
            ++mc_hits;
            if (proj.is_cnd())
                res.fail("trial " + std::to_string(trial) +
                         ": Monte Carlo found a positive direction on a projected-CND kernel");
        }
        if (integer) {
            ++exact_checked;
            const auto exact = is_cnd_exact_integer(k);
            if (!exact || *exact != proj.is_cnd())
                res.fail("trial " + std::to_string(trial) + ": exact rational verdict disagrees");
        }
        if (!proj.is_cnd()) {
            ++not_cnd;
            if (proj.witness_value <= default_cnd_tolerance(k))
                res.fail("trial " + std::to_string(trial) + ": witness value below tolerance");
        }
    }
    res.report["not_cnd_seen"] = not_cnd;
    res.report["mc_not_cnd_seen"] = mc_hits;
    res.report["exact_rational_checked"] = exact_checked;
    if (not_cnd == 0) res.fail("sample never produced a NOT_CND kernel; vacuous run");
    return res;
}

// ---------------------------------------------------------------------------

/// Pullbacks of CND kernels along arbitrary point maps stay CND.
inline SuiteResult pullback_suite(int trials, int max_points, std::uint64_t seed) {
    SuiteResult res;
    res.report = {{"suite", "pullback"},
                  {"seed", seed},
                  {"trials", trials},
                  {"failures", json::array()}};
    Rng rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const int tn = 4 + static_cast<int>(rng.uniform_int(0, max_points - 4));
        const int sn = 2 + static_cast<int>(rng.uniform_int(0, max_points - 2));

        Kernel k(tn);
        if (trial % 2 == 0) {
            // squared Euclidean distances of random points
            const int dim = 1 + static_cast<int>(rng.uniform_int(0, 2));
            std::vector<std::vector<double>> pts(static_cast<std::size_t>(tn),
                                                 std::vector<double>(static_cast<std::size_t>(dim)));
            for (auto& p : pts)
                for (auto& c : p) c = rng.uniform(-3.0, 3.0);
            for (int i = 0; i < tn; ++i)
                for (int j = 0; j < i; ++j) {
                    double s = 0.0;
                    for (int d = 0; d < dim; ++d)
                        s += (pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] -
                              pts[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)]) *
                             (pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] -
                              pts[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)]);
                    k.set(i, j, s);
                }
        } else {
            // tree metric
            k = Kernel::from_metric(shortest_path_metric(random_tree(tn, rng.next_u64())));
        }
        if (!is_cnd_projected(k).is_cnd()) {
            res.fail("trial " + std::to_string(trial) + ": generated target kernel is not CND");
            continue;
        }
        std::vector<int> f(static_cast<std::size_t>(sn));
        for (auto& v : f) v = static_cast<int>(rng.uniform_int(0, tn - 1));
        const CndVerdict verdict = is_cnd_projected(pullback_kernel(f, k, sn));
        if (!verdict.is_cnd())
            res.fail("trial " + std::to_string(trial) + ": pullback lost CND (max eig " +
                     std::to_string(verdict.max_eigenvalue) + ")");
    }
    res.report["checked"] = trials;
    return res;
}

// ---------------------------------------------------------------------------

/// Retraction families and extended kernels on random padded box hosts:
/// identity on Z, extension, displacement bounds, and exact nesting.
inline SuiteResult glem_suite(int hosts, int r_max, std::uint64_t seed) {
    SuiteResult res;
    res.report = {{"suite", "glem"},
                  {"seed", seed},
                  {"hosts", hosts},
                  {"r_max", r_max},
                  {"failures", json::array()}};
    Rng rng(seed);
    json cases = json::array();
    for (int h = 0; h < hosts; ++h) {
        std::vector<FiniteGraph> pieces;
        const int piece_count = 2 + static_cast<int>(rng.uniform_int(0, 2));
        for (int p = 0; p < piece_count; ++p) {
            if (rng.next_u64() & 1U)
                pieces.push_back(cycle_graph(4 + 2 * static_cast<int>(rng.uniform_int(0, 4))));
            else
                pieces.push_back(random_tree(4 + static_cast<int>(rng.uniform_int(0, 8)),
                                             rng.next_u64()));
        }
        const BoxSpace box = BoxSpace::assemble_default(std::move(pieces));
        std::vector<int> padding(static_cast<std::size_t>(box.total_points()));
        for (auto& p : padding) p = static_cast<int>(rng.uniform_int(0, r_max + 2));
        const HostSpace host = host_from_box_with_padding(box, padding);
        const RetractionFamily rf = neighborhood_retraction(host, r_max);

        bool ok = true;
        // identity on Z, for every R
        for (int z : host.z)
            for (int r = 0; r <= r_max; ++r)
                if (rf.p[static_cast<std::size_t>(r)][static_cast<std::size_t>(z)] != z) ok = false;
        // extension + displacement
        for (int r = 1; r <= r_max && ok; ++r)
            for (int x = 0; x < host.metric.point_count(); ++x) {
                const int prev = rf.p[static_cast<std::size_t>(r) - 1][static_cast<std::size_t>(x)];
                const int cur = rf.p[static_cast<std::size_t>(r)][static_cast<std::size_t>(x)];
                if (prev >= 0 && cur != prev) ok = false;
                if (cur >= 0 && host.metric.at(cur, x) > r) ok = false;
                if (host.dist_to_z(x) <= r && cur < 0) ok = false;
            }
        if (!ok) res.fail("host " + std::to_string(h) + ": retraction family invariant violated");

        // exact extended-kernel nesting
        std::vector<int> inc(static_cast<std::size_t>(box.total_points()));
        for (std::size_t i = 0; i < inc.size(); ++i) inc[i] = static_cast<int>(i);
        const CoarseMap c =
            control_envelopes(inc, host.metric.restrict(host.z), box.realized());
        std::vector<ExtendedKernel> eks;
        for (int r = 0; r <= r_max; ++r) eks.push_back(extended_kernel(host, c, box, rf, r));
        bool nested = true;
        for (int s = 0; s <= r_max; ++s)
            for (int r = s + 1; r <= r_max; ++r)
                if (!extended_kernels_nested(eks[static_cast<std::size_t>(s)],
                                             eks[static_cast<std::size_t>(r)]))
                    nested = false;
        if (!nested) res.fail("host " + std::to_string(h) + ": extended kernels failed to nest");

        cases.push_back({{"pieces", piece_count},
                         {"host_points", host.metric.point_count()},
                         {"retractions_ok", ok},
                         {"nesting_ok", nested}});
    }
    res.report["cases"] = cases;
    return res;
}

// ---------------------------------------------------------------------------

/// Finite-stage action checks on a large-girth cycle box host: exact
/// symmetry of the orbit kernel, negativity of sum-zero forms outside the
/// certified prefix, and the properness profile dominating rho_-(l - R).
inline SuiteResult action_suite(int configs, int radius, std::uint64_t seed) {
    SuiteResult res;
    res.report = {{"suite", "action"},
                  {"seed", seed},
                  {"configs", configs},
                  {"radius", radius},
                  {"failures", json::array()}};

    const int big_r = 2;
    const HostSystem sys = synthetic_cycle_host_system({10, 14, 18, 22}, big_r + 1, big_r);
    const ExtendedKernel ek = extended_kernel(sys.host, sys.c, sys.box, sys.retractions, big_r);
    const AsymptoticCndReport acnd =
        extended_kernel_acnd(sys.host, ek, sys.box, sys.retractions, radius);
    res.report["excluded_prefix"] = acnd.excluded_prefix;
    res.report["balls_certified"] = acnd.certified;
    if (!acnd.certified) res.fail("extended-kernel ball certificate failed");

    const ActionPropernessProfile prof = action_properness_profile(sys, ek);
    {
        json p = json::array();
        for (std::size_t i = 0; i < prof.lengths.size(); ++i)
            p.push_back({{"length", prof.lengths[i]},
                         {"min_value", quantize(prof.min_value[i])},
                         {"envelope", quantize(prof.lower_envelope[i])},
                         {"rho_minus_bound",
                          quantize(sys.c.eval_rho_minus(static_cast<double>(prof.lengths[i]) -
                                                        ek.radius))}});
        res.report["properness_profile"] = p;
    }
    if (!prof.dominates_rho_minus) res.fail("properness profile fails to dominate rho_-(l - R)");

    Rng rng(seed);
    int done = 0, symmetry_checked = 0;
    double worst_value = -1e300;
    int guard = 0;
    while (done < configs && guard < configs * 100) {
        ++guard;
        const int x = ek.points[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(ek.points.size()) - 1))];

        // small-diameter configuration: shifts of length <= radius/2
        const int count = 2 + static_cast<int>(rng.uniform_int(0, 3));
        std::vector<int> gs;
        std::vector<double> ts;
        for (int i = 0; i < count; ++i) {
            int g;
            int tries = 0;
            do {
                g = static_cast<int>(
                    rng.uniform_int(0, static_cast<int>(sys.patch.elems.size()) - 1));
            } while (sys.patch.elems[static_cast<std::size_t>(g)].length > radius / 2 &&
                     ++tries < 200);
            gs.push_back(g);
            ts.push_back(rng.uniform(-1.0, 1.0));
        }
        double mean = 0.0;
        for (double t : ts) mean += t;
        mean /= static_cast<double>(ts.size());
        for (double& t : ts) t -= mean;

        const auto neg = verify_action_negativity(sys, ek, x, gs, ts, acnd.excluded_prefix);
        if (neg.status != ActionCheckStatus::Ok) continue;

        if (neg.value > 1e-9) {
            res.fail("configuration " + std::to_string(done) + ": form value " +
                     std::to_string(neg.value) + " > 1e-9");
        }
        worst_value = std::max(worst_value, neg.value);

        // exact symmetry at each translate used
        for (int g : gs) {
            const auto fwd = orbit_kernel(sys, ek, x, g);
            if (!fwd) continue;
            const int xg = sys.patch.apply(g, x);
            const auto back =
                orbit_kernel(sys, ek, xg, sys.patch.elems[static_cast<std::size_t>(g)].inverse);
            if (!back) continue;
            ++symmetry_checked;
            if (*fwd != *back)
                res.fail("orbit kernel symmetry violated at x=" + std::to_string(x) +
                         " g=" + sys.patch.elems[static_cast<std::size_t>(g)].name);
        }
        ++done;
    }
    res.report["configs_evaluated"] = done;
    res.report["symmetry_pairs_checked"] = symmetry_checked;
    res.report["worst_form_value"] = quantize(worst_value);
    if (done < configs) res.fail("only " + std::to_string(done) + " configurations evaluated");
    return res;
}

// ---------------------------------------------------------------------------

/// Congruence representation suite: exact representation property,
/// numerical C*-identity, and the pushforward isometry at a sufficient
/// modulus for every sampled pair.
inline SuiteResult congruence_suite(int elements, std::uint64_t seed, int modulus_cap = kSl2ModulusCap) {
    SuiteResult res;
    res.report = {{"suite", "rep"},
                  {"seed", seed},
                  {"elements", elements},
                  {"modulus_cap", modulus_cap},
                  {"failures", json::array()}};
    Rng rng(seed);
    const SL2WordBall ball = sl2_word_ball(3);
    std::vector<int> candidates;
    for (std::size_t i = 0; i < ball.elems.size(); ++i)
        if (ball.length[i] <= 3) candidates.push_back(static_cast<int>(i));

    auto random_element = [&](int max_terms) {
        GroupAlgebraElement x;
        const int terms = 1 + static_cast<int>(rng.uniform_int(0, max_terms - 1));
        for (int t = 0; t < terms; ++t) {
            const int pick = candidates[static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<int>(candidates.size()) - 1))];
            x.add(ball.elems[static_cast<std::size_t>(pick)],
                  Rational(rng.uniform_int(-8, 8), 1 + rng.uniform_int(0, 3)));
        }
        if (x.empty()) x.add(sl2_identity(), Rational(1));
        return x;
    };

    const std::vector<int> rep_moduli = {3, 4, 5};
    std::vector<PermutationRep> reps;
    reps.reserve(rep_moduli.size());
    for (int n : rep_moduli) reps.emplace_back(n);

    int pushforward_ok = 0;
    double worst_cstar = 0.0;
    for (int e = 0; e < elements; ++e) {
        const GroupAlgebraElement x = random_element(5);
        const GroupAlgebraElement y = random_element(5);
        PermutationRep& rep = reps[static_cast<std::size_t>(e) % reps.size()];

        if (!representation_property_exact(rep, x, y))
            res.fail("element " + std::to_string(e) + ": representation property violated at n=" +
                     std::to_string(rep.quotient().modulus()));

        const double defect = c_star_identity_defect(rep, x, seed + static_cast<std::uint64_t>(e));
        worst_cstar = std::max(worst_cstar, defect);
        if (defect > 1e-9)
            res.fail("element " + std::to_string(e) + ": C*-identity defect " + fmt_fixed(defect));

        const GroupAlgebraElement xi = random_element(5);
        const auto n = first_injective_modulus(x, xi, modulus_cap);
        if (!n) {
            res.fail("element " + std::to_string(e) + ": no injective modulus <= " +
                     std::to_string(modulus_cap));
            continue;
        }
        const auto check = pushforward_isometry_check(x, xi, *n);
        if (!check.injective || !check.norms_equal)
            res.fail("element " + std::to_string(e) + ": pushforward isometry failed at n=" +
                     std::to_string(*n));
        else
            ++pushforward_ok;
    }
    res.report["pushforward_ok"] = pushforward_ok;
    res.report["worst_cstar_defect"] = quantize(worst_cstar);
    return res;
}

// ---------------------------------------------------------------------------

/// Isolation gap across moduli plus Kazhdan decay tables.
inline SuiteResult isolation_suite(const std::vector<int>& moduli,
                                   const std::vector<int>& decay_moduli, int k_max,
                                   std::uint64_t seed, double decay_tol = 1e-8) {
    SuiteResult res;
    res.report = {{"suite", "isolation"},
                  {"seed", seed},
                  {"k_max", k_max},
                  {"failures", json::array()}};
    const GapReport gap = trivial_isolation_gap(moduli, seed);
    json table = json::array();
    for (const auto& e : gap.entries) {
        table.push_back({{"modulus", e.modulus},
                         {"dim", e.dim},
                         {"lambda2", quantize(e.lambda2)},
                         {"lambda_min", quantize(e.lambda_min)},
                         {"lambda2_star", quantize(e.lambda2_star)}});
        if (e.lambda2 >= 1.0 - 1e-12)
            res.fail("modulus " + std::to_string(e.modulus) + ": no gap (lambda2 = " +
                     std::to_string(e.lambda2) + ")");
        if (e.lambda2 < -1.0 - 1e-9 || e.lambda_min < -1.0 - 1e-9 || e.lambda2 > 1.0 + 1e-9)
            res.fail("modulus " + std::to_string(e.modulus) + ": eigenvalue outside [-1,1]");
    }
    res.report["gap_table"] = table;
    res.report["epsilon"] = quantize(gap.epsilon);
    if (gap.epsilon <= 0.0) res.fail("uniform gap is not positive");

    json decays = json::array();
    for (int n : decay_moduli) {
        const KazhdanDecay decay = kazhdan_projection_decay(n, k_max, seed);
        json rows = json::array();
        double worst = 0.0;
        for (const auto& row : decay.table) {
            rows.push_back({{"k", row.k}, {"norm", quantize(row.norm)}, {"bound", quantize(row.bound)}});
            worst = std::max(worst, row.norm - row.bound);
            if (row.norm > row.bound + decay_tol)
                res.fail("decay at n=" + std::to_string(n) + ", k=" + std::to_string(row.k) +
                         ": norm " + std::to_string(row.norm) + " exceeds bound " +
                         std::to_string(row.bound));
        }
        decays.push_back({{"modulus", n},
                          {"lambda2_star", quantize(decay.lambda2_star)},
                          {"worst_excess", quantize(worst)},
                          {"table", rows}});
    }
    res.report["decay"] = decays;
    return res;
}

} // namespace coarsekit::suites
