// Acceptance gate: eight numbered criteria, one PASS/FAIL line each.
// Run with no arguments for the full gate, or with a single number 1..8
// to run one criterion. Exit status 0 iff every executed criterion passed.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "coarse/embed.hpp"
#include "coarse/errors.hpp"
#include "coarse/expander.hpp"
#include "coarse/game.hpp"
#include "coarse/graph.hpp"
#include "coarse/json_io.hpp"
#include "coarse/metric_space.hpp"
#include "coarse/obstruction.hpp"
#include "coarse/point_cloud.hpp"
#include "coarse/rng.hpp"
#include "coarse/simplex.hpp"

#include "../oracles.hpp"

namespace {

namespace fs = std::filesystem;
using namespace coarse;

using Errors = std::vector<std::string>;

void check(Errors& errs, bool ok, const std::string& msg) {
    if (!ok) errs.push_back(msg);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Exact small-graph ground truth and the two-sided Cheeger inequality.
// ---------------------------------------------------------------------------

void criterion1(Errors& errs) {
    const auto k4 = cheeger_exact(complete_graph(4));
    check(errs, k4.h_num == 2 && k4.h_den == 1,
          "h(K4) != 2/1 exactly (got " + std::to_string(k4.h_num) + "/" +
              std::to_string(k4.h_den) + ")");
    const auto c4 = cheeger_exact(cycle_graph(4));
    check(errs, c4.h_num == 1 && c4.h_den == 1, "h(C4) != 1/1 exactly");
    const auto c6 = cheeger_exact(cycle_graph(6));
    check(errs, c6.h_num == 2 && c6.h_den == 3, "h(C6) != 2/3 exactly");

    check(errs, std::abs(spectral_gap(complete_graph(4)).lambda2 + 1.0) <= 1e-9,
          "lambda2(K4) != -1 within 1e-9");
    check(errs, std::abs(spectral_gap(cycle_graph(4)).lambda2) <= 1e-9,
          "lambda2(C4) != 0 within 1e-9");
    check(errs, std::abs(spectral_gap(petersen_graph()).lambda2 - 1.0) <= 1e-9,
          "lambda2(Petersen) != 1 within 1e-9");

    int made = 0;
    std::uint64_t trial = 0;
    while (made < 50 && trial < 5000) {
        SplitMix64 pick(derive_seed(101010, trial++));
        const int n = 8 + 2 * static_cast<int>(pick.next_below(9)); // 8..24 even
        const RegularGraph g = random_regular_graph(n, 3, pick.next());
        if (!g.graph().is_connected()) continue;
        const auto cert = certify_expansion(g);
        if (cert.method != ExpansionCertificate::Method::Exact) {
            errs.push_back("n = " + std::to_string(n) + " did not use the exact method");
            continue;
        }
        const double h = cert.h_value();
        const double lower = cert.gap / 2.0;
        const double upper = std::sqrt(2.0 * 3.0 * cert.gap);
        check(errs, h >= lower - 1e-9 && h <= upper + 1e-9,
              fmt("two-sided Cheeger violated: lower %.12g, h %.12g, upper %.12g",
                  lower, h, upper));
        ++made;
    }
    check(errs, made == 50,
          "only certified " + std::to_string(made) + "/50 random cubic graphs");
}

// ---------------------------------------------------------------------------
// 2. Poincare bound on 1000 random Euclidean maps, with equality instances.
// ---------------------------------------------------------------------------

void criterion2(Errors& errs) {
    {
        const RegularGraph k4 = complete_graph(4);
        const PointCloud tetra({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}, 2.0);
        const auto rep = poincare_ratio(k4, tetra);
        check(errs, std::abs(rep.ratio - rep.bound) <= 1e-9,
              fmt("K4 tetrahedron not tight: ratio %.12g vs bound %.12g", rep.ratio,
                  rep.bound));
    }
    {
        const RegularGraph c4 = cycle_graph(4);
        const PointCloud square({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 2.0);
        const auto rep = poincare_ratio(c4, square);
        check(errs, std::abs(rep.ratio - rep.bound) <= 1e-9,
              fmt("C4 square not tight: ratio %.12g vs bound %.12g", rep.ratio,
                  rep.bound));
    }

    int made = 0, maps = 0;
    std::uint64_t trial = 0;
    while (made < 100 && trial < 5000) {
        SplitMix64 pick(derive_seed(202020, trial++));
        const int n = 8 + 2 * static_cast<int>(pick.next_below(29)); // 8..64 even
        const RegularGraph g = random_regular_graph(n, 3, pick.next());
        if (!g.graph().is_connected()) continue;
        const auto cert = certify_expansion(g);
        for (int m = 0; m < 10; ++m) {
            const int d = 1 + static_cast<int>(pick.next_below(8));
            std::vector<std::vector<double>> pts(n, std::vector<double>(d));
            for (auto& p : pts)
                for (double& x : p) x = pick.next_gaussian();
            const auto rep = poincare_ratio(g, cert.lambda2, PointCloud(pts, 2.0));
            if (!rep.degenerate) {
                check(errs, rep.ratio <= rep.bound + 1e-9 && !rep.violates_bound,
                      fmt("Poincare bound violated: ratio %.12g vs bound %.12g on "
                          "n = %.0f",
                          rep.ratio, rep.bound, static_cast<double>(n)));
            }
            ++maps;
        }
        ++made;
    }
    check(errs, maps == 1000, "ran " + std::to_string(maps) + "/1000 maps");
}

// ---------------------------------------------------------------------------
// 3. LP engine against a vertex-enumeration oracle; strong duality gaps.
// ---------------------------------------------------------------------------

void check_solution_feasible(Errors& errs, const LinearProgram& lp,
                             const std::vector<double>& x) {
    const std::size_t rows = lp.constraints.size();
    for (std::size_t i = 0; i < rows; ++i) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) lhs += lp.constraints[i][j] * x[j];
        const double tol = 1e-7 * (1.0 + std::abs(lp.rhs[i]));
        bool ok = true;
        switch (lp.senses[i]) {
        case ConstraintSense::LessEq: ok = lhs <= lp.rhs[i] + tol; break;
        case ConstraintSense::GreaterEq: ok = lhs >= lp.rhs[i] - tol; break;
        case ConstraintSense::Equal: ok = std::abs(lhs - lp.rhs[i]) <= tol; break;
        }
        check(errs, ok, fmt("solver point infeasible in row: lhs %.12g vs rhs %.12g",
                            lhs, lp.rhs[i]));
    }
    for (double v : x)
        check(errs, v >= -1e-9, fmt("negative component %.12g in solver point", v));
}

void criterion3(Errors& errs) {
    SplitMix64 rng(33330001u);
    for (int round = 0; round < 200; ++round) {
        const bool force_infeasible = round >= 170;
        const LinearProgram lp = oracles::random_bounded_lp(rng, force_infeasible);
        const oracles::OracleLP truth = oracles::vertex_enum_solve(lp);
        const SimplexSolution got = simplex_solve(lp);

        if (!truth.feasible) {
            check(errs, got.status == SolveStatus::Infeasible,
                  "oracle says infeasible, solver disagrees (round " +
                      std::to_string(round) + ")");
            continue;
        }
        if (got.status != SolveStatus::Optimal) {
            errs.push_back("oracle says optimal, solver status differs (round " +
                           std::to_string(round) + ")");
            continue;
        }
        const double tol = 1e-7 * (1.0 + std::abs(truth.objective));
        check(errs, std::abs(got.objective - truth.objective) <= tol,
              fmt("objective %.12g vs oracle %.12g", got.objective, truth.objective));
        check_solution_feasible(errs, lp, got.x);
        double dual = 0.0;
        for (std::size_t i = 0; i < lp.rhs.size(); ++i) dual += got.duals[i] * lp.rhs[i];
        check(errs, std::abs(dual - got.objective) <= tol,
              fmt("dual value %.12g vs objective %.12g", dual, got.objective));
    }

    const struct { const char* name; FiniteMetricSpace space; double t; } games[] = {
        {"P11/3", graph_metric(path_graph(11)), 3.0},
        {"P7/2", graph_metric(path_graph(7)), 2.0},
        {"C5/2", graph_metric(cycle_graph(5)), 2.0},
        {"C7/2", graph_metric(cycle_graph(7)), 2.0},
        {"C9/3", graph_metric(cycle_graph(9)), 3.0},
    };
    for (const auto& g : games) {
        const auto res = minimax_measure(g.space, g.t);
        check(errs, res.duality_gap <= 1e-7,
              fmt("duality gap %.3g exceeds 1e-7", res.duality_gap) + " on " + g.name);
    }
}

// ---------------------------------------------------------------------------
// 4. Far-pair game anchors and 1000 random 1-Lipschitz maps per certificate.
// ---------------------------------------------------------------------------

void criterion4(Errors& errs) {
    const FiniteMetricSpace p11 = graph_metric(path_graph(11));
    const MinimaxResult path = minimax_measure(p11, 3.0);
    check(errs, std::abs(path.certificate.value - 3.0) <= 1e-7,
          fmt("P11 game value %.12g != 3 within 1e-7", path.certificate.value));
    for (std::size_t i = 0; i < path.certificate.mu.size(); ++i)
        if (path.certificate.mu[i] > 1e-9) {
            const auto [u, v] = path.certificate.pairs[i];
            check(errs, p11.distance(u, v) == 3.0,
                  "P11 optimal measure puts weight on a pair at distance " +
                      std::to_string(p11.distance(u, v)));
        }

    const FiniteMetricSpace c5 = graph_metric(cycle_graph(5));
    {
        std::vector<std::pair<int, int>> far;
        for (int u = 0; u < 5; ++u)
            for (int v = u + 1; v < 5; ++v)
                if (c5.distance(u, v) >= 2.0) far.emplace_back(u, v);
        const std::vector<double> uniform(far.size(), 1.0 / static_cast<double>(far.size()));
        const auto avg = max_l1_average(c5, far, uniform);
        check(errs, std::abs(avg.value - 2.0) <= 1e-7,
              fmt("C5 uniform far-pair average %.12g != 2 within 1e-7", avg.value));
    }
    const MinimaxResult cyc = minimax_measure(c5, 2.0);

    const struct { const FiniteMetricSpace* space; const MeasureCertificate* cert;
                   std::uint64_t seed; const char* name; } runs[] = {
        {&p11, &path.certificate, 444401u, "P11"},
        {&c5, &cyc.certificate, 444402u, "C5"},
    };
    for (const auto& run : runs) {
        const auto maps = cut_sample_maps(*run.space, 1000, run.seed);
        for (const auto& images : maps) {
            const auto ca = certificate_average(images, *run.cert, *run.space);
            check(errs, ca.lip <= 1.0 + 1e-9,
                  fmt("sampled map is not 1-Lipschitz: lip %.12g", ca.lip));
            check(errs, ca.average <= run.cert->value + 1e-7,
                  fmt("mu-average %.12g exceeds D %.12g on ", ca.average,
                      run.cert->value) + run.name);
        }
    }
}

// ---------------------------------------------------------------------------
// 5. Shell interpolation embedding: boundary gluing, case bounds, distortion.
// ---------------------------------------------------------------------------

void criterion5(Errors& errs) {
    for (int inst = 0; inst < 20; ++inst) {
        SplitMix64 rng(derive_seed(505050, inst));
        std::vector<std::vector<double>> pts;
        pts.push_back({0, 0, 0, 0, 0});
        pts.push_back({1, 0, 0, 0, 0}); // unit anchor keeps the rescale exactly 1
        for (int i = 1; i <= 10; ++i)
            for (int j = 0; j < 5; ++j) {
                std::vector<double> p(5, 0.0);
                p[j] = std::ldexp(1.0, i);
                pts.push_back(p);
            }
        while (static_cast<int>(pts.size()) < 200) {
            const double radius = std::exp2(10.0 * rng.next_double());
            std::vector<double> dir(5);
            double norm = 0.0;
            for (double& x : dir) {
                x = rng.next_gaussian();
                norm += x * x;
            }
            norm = std::sqrt(norm);
            for (double& x : dir) x *= radius / norm;
            pts.push_back(dir);
        }
        const double target_p = inst % 2 == 0 ? 1.0 : 2.0;
        const auto res = shell_embedding(PointCloud(pts, 2.0), target_p);

        check(errs, res.decomposition.scale == 1.0,
              fmt("instance rescaled by %.17g, constructed boundaries lost",
                  res.decomposition.scale));

        int boundary = 0;
        double agreement = 0.0;
        for (int idx = 2; idx < 52; ++idx) {
            const double r = res.decomposition.norms[idx];
            const int s = res.decomposition.shell_of(r);
            if (r != std::ldexp(1.0, s)) continue;
            ++boundary;
            const auto a = res.decomposition.evaluate(idx, s);
            const auto b = res.decomposition.evaluate(idx, s + 1);
            for (std::size_t t = 0; t < a.size(); ++t)
                agreement = std::max(agreement, std::abs(a[t] - b[t]));
        }
        check(errs, boundary == 50,
              std::to_string(boundary) + "/50 points landed on shell boundaries");
        check(errs, agreement <= 1e-12,
              fmt("boundary gluing disagreement %.3g > 1e-12", agreement));

        const auto cb = case_breakdown(res);
        check(errs, cb.violations == 0,
              std::to_string(cb.violations) + " case-bound violations (instance " +
                  std::to_string(inst) + ")");
        for (const auto& pc : cb.pairs)
            check(errs,
                  pc.image_distance >= pc.lower - 1e-9 &&
                      pc.image_distance <= pc.upper + 1e-9,
                  fmt("pair bound broken: image %.12g outside [%.12g, %.12g]",
                      pc.image_distance, pc.lower, pc.upper));
        check(errs, res.map.distortion() <= 70.0,
              fmt("distortion %.6g exceeds 70", res.map.distortion()));
    }
}

// ---------------------------------------------------------------------------
// 6. Schoenberg square-root embedding of random l1 clouds.
// ---------------------------------------------------------------------------

void criterion6(Errors& errs) {
    for (int inst = 0; inst < 20; ++inst) {
        SplitMix64 rng(derive_seed(606060, inst));
        std::vector<std::vector<double>> pts(50, std::vector<double>(10));
        for (auto& p : pts)
            for (double& x : p) x = 2.0 * rng.next_gaussian();
        const auto res = schoenberg_l1_to_l2(PointCloud(pts, 1.0));
        check(errs, res.max_pair_error <= 1e-9,
              fmt("squared-distance identity error %.3g > 1e-9 (instance %.0f)",
                  res.max_pair_error, static_cast<double>(inst)));
        check(errs, res.min_eigenvalue >= -1e-9,
              fmt("Gram minimum eigenvalue %.3g < -1e-9", res.min_eigenvalue));
    }
}

// ---------------------------------------------------------------------------
// 7. Gaussian-kernel map, Mazur map, and the assembled coarse embedding.
// ---------------------------------------------------------------------------

void criterion7(Errors& errs) {
    {
        const FiniteMetricSpace p5 = graph_metric(path_graph(5));
        const auto g = gaussian_dg_map(p5, 2.0, 1.0);
        check(errs, g.max_identity_error <= 1e-9,
              fmt("displacement identity error %.3g > 1e-9", g.max_identity_error));
        for (int u = 0; u < 5; ++u)
            for (int v = u + 1; v < 5; ++v) {
                const double d = p5.distance(u, v);
                const double want = 2.0 - 2.0 * std::exp(-d * d / g.t);
                const double img = g.sphere.distance(u, v);
                check(errs, std::abs(img * img - want) <= 1e-9,
                      fmt("kernel identity broken at d = %.0f: %.12g vs %.12g", d,
                          img * img, want));
            }
    }
    {
        const FiniteMetricSpace two({"a", "b"}, {{0.0, 3.0}, {3.0, 0.0}});
        const auto g = gaussian_dg_map(two, 3.0, 0.9);
        check(errs, std::abs(g.sphere.distance(0, 1) - 0.9) <= 1e-9,
              fmt("||dz|| at d = R is %.12g, want eps = 0.9", g.sphere.distance(0, 1)));
    }
    {
        SplitMix64 rng(77700111u);
        for (int round = 0; round < 25; ++round) {
            std::vector<double> x(6);
            double norm = 0.0;
            for (double& c : x) {
                c = rng.next_gaussian();
                norm += c * c;
            }
            norm = std::sqrt(norm);
            for (double& c : x) c /= norm;
            for (double p : {1.0, 1.5, 3.0, 7.5}) {
                const auto y = mazur_map(x, p);
                check(errs, std::abs(pnorm(y, p) - 1.0) <= 1e-12,
                      fmt("Mazur image p-norm %.15g != 1 (p = %.1f)", pnorm(y, p), p));
            }
            check(errs, mazur_map(x, 2.0) == x, "Mazur map at p = 2 is not the identity");
        }
    }
    {
        SplitMix64 rng(derive_seed(707070, 0));
        std::vector<std::vector<double>> pts;
        for (int c = 0; c < 3; ++c) {
            const double cx = 8.0 * c;
            for (int i = 0; i < (c == 2 ? 16 : 17); ++i) {
                std::vector<double> off(3);
                do {
                    for (double& x : off) x = 0.2 * rng.next_double() - 0.1;
                } while (off[0] * off[0] + off[1] * off[1] + off[2] * off[2] > 0.01);
                pts.push_back({cx + off[0], off[1], off[2]});
            }
        }
        const FiniteMetricSpace space = pnorm_metric(PointCloud(pts, 2.0));
        const auto res = assemble_coarse_embedding(space, 2.0, {2.0, 3.0, 4.0}, 12);
        for (std::size_t b = 0; b < res.blocks.size(); ++b) {
            const double need = static_cast<double>(b + 1) * (1.0 - 1e-9);
            check(errs, res.blocks[b].rho1_at_threshold >= need,
                  fmt("rho1 at t_%.0f is %.12g, need >= %.12g",
                      static_cast<double>(b + 1), res.blocks[b].rho1_at_threshold, need));
        }
        for (int u = 0; u < space.size(); ++u)
            for (int v = u + 1; v < space.size(); ++v) {
                const double img = res.map.image_distance(u, v);
                const double cap = res.rho2_formula(space.distance(u, v));
                check(errs, img <= cap + 1e-9,
                      fmt("rho2 certificate broken: image %.12g > formula %.12g at "
                          "d = %.6g",
                          img, cap, space.distance(u, v)));
            }
    }
}

// ---------------------------------------------------------------------------
// 8. Byte-determinism of the full pipeline at seed 7.
// ---------------------------------------------------------------------------

int run_cli(const std::string& args) {
    const std::string cmd = std::string(COARSE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

void run_pipeline(Errors& errs, const fs::path& dir) {
    const std::string d = dir.string();
    const std::string steps[] = {
        "gen-expander --sizes 8,12 --k 3 --eps 0.2 --seed 7 --out " + d + "/family",
        "obstruct --family " + d + "/family --L 1 --t 3 --dim 4 --seed 7 --out " + d +
            "/obstruct",
        "metric --graph " + d + "/family/graph_12.json --seed 7 --out " + d,
        "certificate --space " + d + "/space.json --threshold 3 --seed 7 --out " + d,
        "embed --kind shell --cloud " + d + "/obstruct/images_12.json --seed 7 --out " + d,
        "plot --csv " + d + "/moduli.csv --seed 7 --out " + d,
    };
    for (const auto& step : steps) {
        const int rc = run_cli(step);
        check(errs, rc == 0,
              "pipeline step exited with " + std::to_string(rc) + ": " + step);
        if (rc != 0) return;
    }
}

void criterion8(Errors& errs) {
    const fs::path base = fs::temp_directory_path() / "coarse_acceptance_pipeline";
    fs::remove_all(base);
    fs::create_directories(base);

    run_pipeline(errs, base / "a");
    run_pipeline(errs, base / "b");
    if (!errs.empty()) return;

    std::map<std::string, std::string> a, b;
    for (auto* side : {&a, &b}) {
        const fs::path root = base / (side == &a ? "a" : "b");
        for (const auto& entry : fs::recursive_directory_iterator(root))
            if (entry.is_regular_file())
                (*side)[fs::relative(entry.path(), root).string()] =
                    read_text_file(entry.path().string());
    }
    check(errs, a.size() == b.size() && !a.empty(),
          "runs produced different artifact sets (" + std::to_string(a.size()) +
              " vs " + std::to_string(b.size()) + ")");
    for (const auto& [rel, bytes] : a) {
        const auto it = b.find(rel);
        if (it == b.end()) {
            errs.push_back("artifact " + rel + " missing from the second run");
            continue;
        }
        check(errs, it->second == bytes, "artifact " + rel + " differs between runs");
    }
    check(errs, a.count("measure_certificate.json") == 1 && a.count("chart.svg") == 1 &&
                    a.count("embedding.json") == 1,
          "pipeline did not produce the expected artifact names");
    fs::remove_all(base);
}

// ---------------------------------------------------------------------------

struct Criterion {
    int number;
    const char* label;
    void (*fn)(Errors&);
    double cap_seconds; // 0 = no stated cap
};

const Criterion kCriteria[] = {
    {1, "exact Cheeger constants, spectra, two-sided bounds", criterion1, 60.0},
    {2, "Poincare bound on 1000 random Euclidean maps", criterion2, 120.0},
    {3, "simplex vs vertex-enumeration oracle, duality gaps", criterion3, 0.0},
    {4, "far-pair game anchors and sampled 1-Lipschitz maps", criterion4, 120.0},
    {5, "shell embedding: gluing, case bounds, distortion", criterion5, 60.0},
    {6, "Schoenberg square-root embedding of l1 clouds", criterion6, 0.0},
    {7, "Gaussian kernel, Mazur map, assembled embedding", criterion7, 0.0},
    {8, "byte-determinism of the seeded pipeline", criterion8, 0.0},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc == 2) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > 8) {
            std::fprintf(stderr, "usage: %s [1..8]\n", argv[0]);
            return 2;
        }
    } else if (argc > 2) {
        std::fprintf(stderr, "usage: %s [1..8]\n", argv[0]);
        return 2;
    }

    bool all_ok = true;
    for (const auto& crit : kCriteria) {
        if (only != 0 && crit.number != only) continue;
        Errors errs;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            crit.fn(errs);
        } catch (const std::exception& e) {
            errs.push_back(std::string("unexpected exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (crit.cap_seconds > 0.0 && elapsed >= crit.cap_seconds)
            errs.push_back(fmt("runtime %.1fs exceeds the %.0fs cap", elapsed,
                               crit.cap_seconds));

        const bool ok = errs.empty();
        all_ok = all_ok && ok;
        std::printf("criterion %d: %s (%.1fs) %s\n", crit.number, ok ? "PASS" : "FAIL",
                    elapsed, crit.label);
        std::size_t shown = 0;
        for (const auto& msg : errs) {
            if (shown++ == 8) {
                std::printf("    ... and %zu more\n", errs.size() - 8);
                break;
            }
            std::printf("    %s\n", msg.c_str());
        }
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
