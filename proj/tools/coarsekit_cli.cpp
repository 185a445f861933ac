// coarsekit command line: generation, verification suites, and report
// emission. All randomness is seed-fixed and all numeric output goes
// through fixed-precision formatting, so identical invocations produce
// byte-identical files.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coarsekit/coarsekit.hpp"
#include "coarsekit/suites.hpp"

using namespace coarsekit;

namespace {

void emit(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-")
        std::cout << content;
    else
        write_file(out, content);
}

void write_manifest(const std::string& out, const std::string& command, const json& params,
                    std::uint64_t seed) {
    if (out.empty() || out == "-") return;
    json manifest{{"command", command}, {"params", params}, {"seed", seed}, {"output", out}};
    write_file(out + ".manifest.json", manifest.dump(2) + "\n");
}

FiniteGraph build_piece(const json& spec, Rng& rng) {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "cycle") return cycle_graph(spec.at("n").get<int>());
    if (kind == "path") return path_graph(spec.at("n").get<int>());
    if (kind == "complete") return complete_graph(spec.at("n").get<int>());
    if (kind == "petersen") return petersen_graph();
    if (kind == "tree") return random_tree(spec.at("n").get<int>(), rng.next_u64());
    if (kind == "cayley-sl2") return cayley_graph_sl2(spec.at("mod").get<int>());
    if (kind == "regular-girth")
        return random_regular_with_girth(spec.at("degree").get<int>(), spec.at("size").get<int>(),
                                         spec.at("girth").get<int>(), rng.next_u64());
    if (kind == "file") return load_graph(spec.at("path").get<std::string>());
    throw Error("unknown piece kind '" + kind + "'");
}

json box_to_json(const BoxSpace& box) {
    json pieces = json::array();
    json spacing = json::array();
    json girths = json::array();
    for (int p = 0; p < box.piece_count(); ++p) {
        pieces.push_back(graph_to_json(box.piece(p)));
        spacing.push_back(box.spacing(p));
        const auto g = box.piece_girth(p);
        girths.push_back(g ? json(*g) : json("infinity"));
    }
    return json{{"pieces", pieces}, {"spacing", spacing}, {"girths", girths}};
}

BoxSpace box_from_json(const json& j) {
    std::vector<FiniteGraph> pieces;
    for (const auto& pj : j.at("pieces")) pieces.push_back(graph_from_json(pj));
    std::vector<long long> spacing;
    if (j.contains("spacing"))
        for (const auto& s : j.at("spacing")) spacing.push_back(s.get<long long>());
    if (spacing.empty()) return BoxSpace::assemble_default(std::move(pieces));
    return BoxSpace::assemble(std::move(pieces), spacing);
}

int finish_verify(const suites::SuiteResult& res, const std::string& out) {
    emit(out, res.report.dump(2) + "\n");
    if (!res.pass && !(out.empty() || out == "-"))
        for (const auto& f : res.report.at("failures"))
            std::cerr << "failure: " << f.get<std::string>() << "\n";
    return res.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coarsekit: finite-stage coarse geometry and congruence spectra toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    double tol = -1.0; // negative = per-operation default
    int cap = kSl2ModulusCap;
    std::string out;
    std::string format = "json";
    app.add_option("--seed", seed, "random seed recorded in every output")->capture_default_str();
    app.add_option("--tol", tol, "override the CND tolerance");
    app.add_option("--cap", cap, "modulus cap for congruence computations")->capture_default_str();
    app.add_option("--out", out, "output path ('-' or empty = stdout)");
    app.add_option("--format", format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto tol_opt = [&]() -> std::optional<double> {
        if (tol > 0) return tol;
        return std::nullopt;
    };

    // global options may follow the subcommand name
    app.fallthrough();

    // ---------------------------------------------------------------- gen
    auto* gen = app.add_subcommand("gen", "generate graphs and box spaces");
    gen->require_subcommand(1);
    gen->fallthrough();

    int cyc_n = 8;
    auto* gen_cycle = gen->add_subcommand("cycle", "cycle graph C_n");
    gen_cycle->fallthrough();
    gen_cycle->add_option("--n", cyc_n, "number of vertices")->required();

    int rg_degree = 3, rg_size = 60, rg_girth = 6;
    auto* gen_rg = gen->add_subcommand("regular-girth", "random regular graph with girth floor");
    gen_rg->fallthrough();
    gen_rg->add_option("--degree", rg_degree)->required();
    gen_rg->add_option("--size", rg_size)->required();
    gen_rg->add_option("--girth", rg_girth)->required();

    int cay_mod = 5;
    auto* gen_cay = gen->add_subcommand("cayley-sl2", "Cayley graph of SL(2,Z/n), generators T,S");
    gen_cay->fallthrough();
    gen_cay->add_option("--mod", cay_mod)->required();

    std::string pieces_path;
    auto* gen_box = gen->add_subcommand("boxspace", "assemble a box space from a pieces spec");
    gen_box->fallthrough();
    gen_box->add_option("--pieces", pieces_path, "JSON pieces spec")->required();

    // ------------------------------------------------------------- verify
    auto* verify = app.add_subcommand("verify", "run a verification suite (exit 0 iff it passes)");
    verify->require_subcommand(1);
    verify->fallthrough();

    int v_trees = 50, v_maxverts = 500;
    auto* v_tree = verify->add_subcommand("tree", "exact tree embedding identity");
    v_tree->fallthrough();
    v_tree->add_option("--trees", v_trees)->capture_default_str();
    v_tree->add_option("--max-vertices", v_maxverts)->capture_default_str();

    std::string v_box_path;
    int v_radius = 3, v_girth = 8;
    std::string v_instances = "150:11,200:12,250:13,300:14,350:15";
    auto* v_girthcnd = verify->add_subcommand(
        "girth-cnd", "ball CND certificates (generated instances, or --box for a box-space file)");
    v_girthcnd->fallthrough();
    v_girthcnd->add_option("--box", v_box_path, "box space file; certify its distance kernel");
    v_girthcnd->add_option("--radius", v_radius)->capture_default_str();
    v_girthcnd->add_option("--girth", v_girth, "girth target for generated instances")
        ->capture_default_str();
    v_girthcnd->add_option("--instances", v_instances, "size:seed list for generated instances")
        ->capture_default_str();

    int v_trials = 200, v_maxpts = 40;
    auto* v_pullback = verify->add_subcommand("pullback", "pullbacks of CND kernels stay CND");
    v_pullback->fallthrough();
    v_pullback->add_option("--trials", v_trials)->capture_default_str();
    v_pullback->add_option("--max-points", v_maxpts)->capture_default_str();

    int v_hosts = 10, v_rmax = 5;
    std::string v_host_path;
    auto* v_glem = verify->add_subcommand("glem", "retraction families and extended kernels");
    v_glem->fallthrough();
    v_glem->add_option("--hosts", v_hosts, "number of synthetic hosts")->capture_default_str();
    v_glem->add_option("--rmax", v_rmax)->capture_default_str();
    v_glem->add_option("--host", v_host_path, "host-space JSON file to check instead");

    int v_configs = 1000, v_act_radius = 3;
    std::string v_batch;
    auto* v_action = verify->add_subcommand("action", "finite-stage action kernel checks");
    v_action->fallthrough();
    v_action->add_option("--configs", v_configs)->capture_default_str();
    v_action->add_option("--radius", v_act_radius)->capture_default_str();
    v_action->add_option("--batch", v_batch, "JSONL of {x, gs, ts} configurations to evaluate");

    int v_elements = 100;
    auto* v_rep = verify->add_subcommand("rep", "congruence representation suite");
    v_rep->fallthrough();
    v_rep->add_option("--elements", v_elements)->capture_default_str();
    v_rep->add_option("--max-mod", cap, "largest modulus used")->capture_default_str();

    // ------------------------------------------------------------- report
    auto* report_cmd = app.add_subcommand("report", "emit plot data (CSV or JSON)");
    report_cmd->require_subcommand(1);
    report_cmd->fallthrough();

    std::string r_graph;
    int r_bins = 16;
    auto* r_eig = report_cmd->add_subcommand("eighist", "eigenvalue histograms of a graph");
    r_eig->fallthrough();
    r_eig->add_option("--graph", r_graph, "graph file")->required();
    r_eig->add_option("--bins", r_bins)->capture_default_str();

    std::string r_kernel, r_metric;
    auto* r_prop = report_cmd->add_subcommand("properness", "properness profile of a kernel");
    r_prop->fallthrough();
    r_prop->add_option("--kernel", r_kernel, "kernel CSV")->required();
    r_prop->add_option("--metric", r_metric, "metric CSV")->required();

    int r_mod = 5, r_kmax = 30;
    auto* r_decay = report_cmd->add_subcommand("decay", "Kazhdan projection decay curve");
    r_decay->fallthrough();
    r_decay->add_option("--mod", r_mod)->capture_default_str();
    r_decay->add_option("--kmax", r_kmax)->capture_default_str();

    std::string r_metric_graph;
    auto* r_metric_cmd = report_cmd->add_subcommand("metric", "shortest-path metric CSV of a graph");
    r_metric_cmd->fallthrough();
    r_metric_cmd->add_option("--graph", r_metric_graph, "graph file")->required();

    std::string r_tree;
    int r_basepoint = 0;
    auto* r_embed = report_cmd->add_subcommand("embedding", "edge-path embedding of a tree");
    r_embed->fallthrough();
    r_embed->add_option("--tree", r_tree, "tree graph file")->required();
    r_embed->add_option("--basepoint", r_basepoint)->capture_default_str();

    std::string r_element;
    auto* r_norms = report_cmd->add_subcommand("norms", "congruence norms of a group algebra element");
    r_norms->fallthrough();
    r_norms->add_option("--element", r_element, "element JSON ({terms:[{word,coeff},...]})")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        // ------------------------------------------------------------ gen
        if (gen_cycle->parsed()) {
            const auto g = cycle_graph(cyc_n);
            emit(out, graph_to_json(g).dump(2) + "\n");
            write_manifest(out, "gen cycle", {{"n", cyc_n}}, seed);
            return 0;
        }
        if (gen_rg->parsed()) {
            const auto g = random_regular_with_girth(rg_degree, rg_size, rg_girth, seed);
            emit(out, graph_to_json(g).dump(2) + "\n");
            write_manifest(out, "gen regular-girth",
                           {{"degree", rg_degree}, {"size", rg_size}, {"girth", rg_girth}}, seed);
            return 0;
        }
        if (gen_cay->parsed()) {
            const auto g = cayley_graph_sl2(cay_mod);
            emit(out, graph_to_json(g).dump(2) + "\n");
            write_manifest(out, "gen cayley-sl2", {{"mod", cay_mod}}, seed);
            return 0;
        }
        if (gen_box->parsed()) {
            const json spec = json::parse(read_file(pieces_path));
            Rng rng(seed);
            std::vector<FiniteGraph> pieces;
            for (const auto& pj : spec.at("pieces")) pieces.push_back(build_piece(pj, rng));
            BoxSpace box = [&] {
                if (spec.contains("spacing")) {
                    std::vector<long long> spacing;
                    for (const auto& s : spec.at("spacing")) spacing.push_back(s.get<long long>());
                    return BoxSpace::assemble(std::move(pieces), spacing);
                }
                return BoxSpace::assemble_default(std::move(pieces));
            }();
            emit(out, box_to_json(box).dump(2) + "\n");
            write_manifest(out, "gen boxspace", {{"pieces", pieces_path}}, seed);
            return 0;
        }

        // --------------------------------------------------------- verify
        if (v_tree->parsed())
            return finish_verify(suites::tree_suite(v_trees, v_maxverts, seed), out);

        if (v_girthcnd->parsed()) {
            if (!v_box_path.empty()) {
                const BoxSpace box = box_from_json(json::parse(read_file(v_box_path)));
                const Kernel k = Kernel::from_metric(box.realized());
                const auto rep = asymptotic_cnd_check(box, k, v_radius, tol_opt());
                json j{{"suite", "girth-cnd"},
                       {"box", v_box_path},
                       {"radius", v_radius},
                       {"excluded_prefix", rep.excluded_prefix},
                       {"certified", rep.certified},
                       {"failures", json::array()}};
                if (rep.failing_piece >= 0) {
                    j["failing_piece"] = rep.failing_piece;
                    j["failures"].push_back("no valid excluded prefix: piece " +
                                            std::to_string(rep.failing_piece) +
                                            " violates the girth or separation condition");
                }
                json balls = json::array();
                for (const auto& b : rep.balls) {
                    balls.push_back({{"piece", b.piece},
                                     {"center", b.center},
                                     {"verdict", b.cnd ? "CND" : "NOT_CND"},
                                     {"max_eig", quantize(b.max_eigenvalue)}});
                    if (!b.cnd)
                        j["failures"].push_back("ball at center " + std::to_string(b.center) +
                                                " in piece " + std::to_string(b.piece) +
                                                " is NOT_CND");
                }
                j["per_ball"] = balls;
                emit(out, j.dump(2) + "\n");
                return rep.certified ? 0 : 1;
            }
            std::vector<std::pair<int, std::uint64_t>> instances;
            std::stringstream ss(v_instances);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                const auto colon = tok.find(':');
                if (colon == std::string::npos)
                    throw Error("bad --instances entry '" + tok + "', expected size:seed");
                instances.emplace_back(std::stoi(tok.substr(0, colon)),
                                       std::stoull(tok.substr(colon + 1)));
            }
            return finish_verify(
                suites::girth_ball_suite(instances, v_girth, v_radius, tol > 0 ? tol : 1e-9), out);
        }

        if (v_pullback->parsed())
            return finish_verify(suites::pullback_suite(v_trials, v_maxpts, seed), out);

        if (v_glem->parsed()) {
            if (v_host_path.empty())
                return finish_verify(suites::glem_suite(v_hosts, v_rmax, seed), out);

            // loaded host: retraction invariants plus exact nesting of the
            // kernels k_R(x,y) = d_Z(p_R x, p_R y)
            const auto slash = v_host_path.find_last_of('/');
            const std::string base =
                slash == std::string::npos ? "." : v_host_path.substr(0, slash);
            const HostSpace host = host_space_from_json(json::parse(read_file(v_host_path)), base);
            const RetractionFamily rf = neighborhood_retraction(host, v_rmax);
            json j{{"suite", "glem"},
                   {"host", v_host_path},
                   {"r_max", v_rmax},
                   {"failures", json::array()}};
            bool ok = true;
            for (int z : host.z)
                for (int r = 0; r <= v_rmax; ++r)
                    if (rf.p[static_cast<std::size_t>(r)][static_cast<std::size_t>(z)] != z) ok = false;
            if (!ok) j["failures"].push_back("p_R is not the identity on Z");
            for (int r = 1; r <= v_rmax; ++r)
                for (int x = 0; x < host.metric.point_count(); ++x) {
                    const int prev = rf.p[static_cast<std::size_t>(r) - 1][static_cast<std::size_t>(x)];
                    const int cur = rf.p[static_cast<std::size_t>(r)][static_cast<std::size_t>(x)];
                    if (prev >= 0 && cur != prev) {
                        ok = false;
                        j["failures"].push_back("p_" + std::to_string(r) + " does not extend p_" +
                                                std::to_string(r - 1) + " at point " +
                                                std::to_string(x));
                    }
                    if (cur >= 0 && host.metric.at(cur, x) > r) {
                        ok = false;
                        j["failures"].push_back("displacement of point " + std::to_string(x) +
                                                " exceeds " + std::to_string(r));
                    }
                }
            auto kernel_at = [&](int r) {
                const auto pts = host.neighborhood(r);
                Kernel k(static_cast<int>(pts.size()));
                for (std::size_t i = 0; i < pts.size(); ++i)
                    for (std::size_t jx = 0; jx <= i; ++jx)
                        k.set(static_cast<int>(i), static_cast<int>(jx),
                              host.metric.at(
                                  rf.p[static_cast<std::size_t>(r)][static_cast<std::size_t>(pts[i])],
                                  rf.p[static_cast<std::size_t>(r)][static_cast<std::size_t>(pts[jx])]));
                return std::make_pair(pts, k);
            };
            for (int s = 0; s < v_rmax; ++s) {
                const auto [spts, sk] = kernel_at(s);
                for (int r = s + 1; r <= v_rmax; ++r) {
                    const auto [rpts, rk] = kernel_at(r);
                    for (std::size_t i = 0; i < spts.size(); ++i)
                        for (std::size_t jx = 0; jx < spts.size(); ++jx) {
                            const auto li = std::lower_bound(rpts.begin(), rpts.end(), spts[i]) -
                                            rpts.begin();
                            const auto lj = std::lower_bound(rpts.begin(), rpts.end(), spts[jx]) -
                                            rpts.begin();
                            if (sk.at(static_cast<int>(i), static_cast<int>(jx)) !=
                                rk.at(static_cast<int>(li), static_cast<int>(lj))) {
                                ok = false;
                                j["failures"].push_back(
                                    "k_" + std::to_string(r) + " restricted to N_" +
                                    std::to_string(s) + " differs at (" + std::to_string(spts[i]) +
                                    "," + std::to_string(spts[jx]) + ")");
                            }
                        }
                }
            }
            j["pass"] = ok;
            emit(out, j.dump(2) + "\n");
            return ok ? 0 : 1;
        }

        if (v_action->parsed()) {
            if (v_batch.empty())
                return finish_verify(suites::action_suite(v_configs, v_act_radius, seed), out);
            // evaluate stored configurations against the standard cycle host
            const HostSystem sys = synthetic_cycle_host_system({10, 14, 18, 22}, 3, 2);
            const ExtendedKernel ek = extended_kernel(sys.host, sys.c, sys.box, sys.retractions, 2);
            const auto acnd =
                extended_kernel_acnd(sys.host, ek, sys.box, sys.retractions, v_act_radius);
            std::ifstream in(v_batch);
            if (!in) throw Error("cannot open batch file " + v_batch);
            json results = json::array();
            bool ok = true;
            std::string line;
            while (std::getline(in, line)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                const json cfg = json::parse(line);
                std::vector<int> gs;
                std::vector<double> ts;
                for (const auto& g : cfg.at("gs")) gs.push_back(g.get<int>());
                for (const auto& t : cfg.at("ts")) ts.push_back(t.get<double>());
                const auto r =
                    verify_action_negativity(sys, ek, cfg.at("x").get<int>(), gs, ts,
                                             acnd.excluded_prefix, tol_opt().value_or(1e-9));
                json rj{{"x", cfg.at("x")},
                        {"status", r.status == ActionCheckStatus::Ok ? "OK" : "NOT_APPLICABLE"}};
                if (r.status == ActionCheckStatus::Ok) {
                    rj["value"] = quantize(r.value);
                    rj["nonpositive"] = r.nonpositive;
                    if (!r.nonpositive) ok = false;
                } else {
                    rj["reason"] = r.reason;
                }
                results.push_back(rj);
            }
            json j{{"suite", "action-batch"},
                   {"batch", v_batch},
                   {"seed", seed},
                   {"excluded_prefix", acnd.excluded_prefix},
                   {"results", results}};
            emit(out, j.dump(2) + "\n");
            return ok ? 0 : 1;
        }

        if (v_rep->parsed())
            return finish_verify(suites::congruence_suite(v_elements, seed, cap), out);

        // --------------------------------------------------------- report
        if (r_eig->parsed()) {
            const std::string text = read_file(r_graph);
            if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
                emit(out, "spectrum,bin_lo,bin_hi,count\n");
                return 0;
            }
            const FiniteGraph g = load_graph(r_graph);
            const auto rep = spectral_profile(g);
            auto histogram = [&](const std::vector<double>& vals) {
                std::vector<int> counts(static_cast<std::size_t>(r_bins), 0);
                const double lo = vals.front(), hi = vals.back();
                const double width = (hi - lo) / r_bins;
                for (double v : vals) {
                    int b = width > 0 ? static_cast<int>((v - lo) / width) : 0;
                    if (b >= r_bins) b = r_bins - 1;
                    if (b < 0) b = 0;
                    ++counts[static_cast<std::size_t>(b)];
                }
                return std::make_tuple(lo, width, counts);
            };
            if (format == "csv") {
                std::ostringstream os;
                os << "spectrum,bin_lo,bin_hi,count\n";
                for (const auto& [name, vals] :
                     {std::make_pair(std::string("adjacency"), rep.adjacency_eigenvalues),
                      std::make_pair(std::string("laplacian"), rep.laplacian_eigenvalues)}) {
                    const auto [lo, width, counts] = histogram(vals);
                    for (int b = 0; b < r_bins; ++b)
                        os << name << "," << fmt_fixed(lo + b * width) << ","
                           << fmt_fixed(lo + (b + 1) * width) << ","
                           << counts[static_cast<std::size_t>(b)] << "\n";
                }
                emit(out, os.str());
            } else {
                json j{{"graph", r_graph}, {"bins", r_bins}};
                json adj = json::array(), lap = json::array();
                for (double v : rep.adjacency_eigenvalues) adj.push_back(quantize(v));
                for (double v : rep.laplacian_eigenvalues) lap.push_back(quantize(v));
                j["adjacency_eigenvalues"] = adj;
                j["laplacian_eigenvalues"] = lap;
                j["laplacian_gap"] = quantize(rep.laplacian_gap);
                emit(out, j.dump(2) + "\n");
            }
            return 0;
        }

        if (r_prop->parsed()) {
            const std::string ktext = read_file(r_kernel);
            if (ktext.find_first_not_of(" \t\r\n,") == std::string::npos) {
                emit(out, "r,upper,lower\n");
                return 0;
            }
            const Kernel k = kernel_from_csv(ktext);
            const FiniteMetricSpace m = metric_from_csv(read_file(r_metric));
            const auto p = properness_profile(k, m);
            if (format == "csv") {
                std::ostringstream os;
                os << "r,upper,lower\n";
                for (std::size_t r = 0; r < p.upper.size(); ++r)
                    os << r << "," << fmt_fixed(p.upper[r]) << "," << fmt_fixed(p.lower[r]) << "\n";
                emit(out, os.str());
            } else {
                json up = json::array(), lo = json::array();
                for (double v : p.upper) up.push_back(quantize(v));
                for (double v : p.lower) lo.push_back(quantize(v));
                emit(out,
                     json{{"upper", up}, {"lower", lo}, {"degenerate", p.degenerate}}.dump(2) +
                         "\n");
            }
            return 0;
        }

        if (r_metric_cmd->parsed()) {
            emit(out, metric_to_csv(shortest_path_metric(load_graph(r_metric_graph))));
            return 0;
        }

        if (r_embed->parsed()) {
            const FiniteGraph t = load_graph(r_tree);
            emit(out, embedding_to_json(tree_embedding(t, r_basepoint)).dump(2) + "\n");
            return 0;
        }

        if (r_norms->parsed()) {
            const GroupAlgebraElement x = element_from_json(json::parse(read_file(r_element)));
            std::vector<int> moduli;
            for (int n = 2; n <= cap; ++n) moduli.push_back(n);
            const CongruenceNorms norms = congruence_norm(x, moduli, seed);
            if (format == "csv") {
                std::ostringstream os;
                os << "modulus,norm\n";
                for (const auto& [n, v] : norms.per_modulus) os << n << "," << fmt_fixed(v) << "\n";
                emit(out, os.str());
            } else {
                json table;
                for (const auto& [n, v] : norms.per_modulus)
                    table[std::to_string(n)] = quantize(v);
                emit(out, json{{"element", r_element},
                               {"per_modulus", table},
                               {"sup", quantize(norms.sup)}}
                                  .dump(2) +
                              "\n");
            }
            return 0;
        }

        if (r_decay->parsed()) {
            const auto decay = kazhdan_projection_decay(r_mod, r_kmax, seed);
            if (format == "csv") {
                std::ostringstream os;
                os << "k,norm,bound\n";
                for (const auto& row : decay.table)
                    os << row.k << "," << fmt_fixed(row.norm) << "," << fmt_fixed(row.bound)
                       << "\n";
                emit(out, os.str());
            } else {
                json rows = json::array();
                for (const auto& row : decay.table)
                    rows.push_back({{"k", row.k},
                                    {"norm", quantize(row.norm)},
                                    {"bound", quantize(row.bound)}});
                emit(out, json{{"modulus", r_mod},
                               {"lambda2_star", quantize(decay.lambda2_star)},
                               {"table", rows}}
                                  .dump(2) +
                              "\n");
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::cerr << "no subcommand executed\n";
    return 2;
}
