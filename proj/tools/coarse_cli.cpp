// coarse -- batch front end for the embeddability laboratory.
//
// Subcommands: gen-expander, metric, cheeger, certificate, embed, moduli,
// obstruct, plot. Every run is deterministic in (flags, config, seed); the
// artifacts it writes are byte-identical across repeated runs.
//
// Exit codes: 0 success, 1 internal invariant violation, 2 bad domain
// parameters (including command-line errors), 3 I/O failure.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

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
#include "coarse/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// Flags shared by every subcommand; a config file fills in whatever the
// command line leaves unset (the file must carry "seed").
struct Common {
    std::uint64_t seed = 0;
    std::string out = ".";
    double tol = 1e-12;
    std::string config;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* tol_opt = nullptr;
};

void add_common(CLI::App* sub, Common& c) {
    c.seed_opt = sub->add_option("--seed", c.seed, "RNG seed (default 0)");
    c.out_opt = sub->add_option("--out", c.out, "output directory (default .)");
    c.tol_opt = sub->add_option("--tol", c.tol, "metric validation tolerance");
    sub->add_option("--config", c.config, "JSON config file; flags override it");
}

void finalize(Common& c) {
    if (c.config.empty()) return;
    coarse::RunConfig cfg = coarse::config_from_json(coarse::read_text_file(c.config));
    if (c.seed_opt->count() == 0) c.seed = cfg.seed;
    if (c.out_opt->count() == 0 && cfg.has_out) c.out = cfg.out_dir;
    if (c.tol_opt->count() == 0 && cfg.has_tolerance) c.tol = cfg.tolerance;
}

fs::path prepare_out(const std::string& out) {
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw coarse::IoError("cannot create output directory " + out + ": " + ec.message());
    return dir;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void write_artifact(const fs::path& dir, const std::string& name, const std::string& bytes) {
    coarse::write_text_file((dir / name).string(), bytes);
    std::cout << "wrote " << (dir / name).string() << "\n";
}

// ---------------------------------------------------------------------------

struct GenExpanderArgs {
    Common common;
    std::vector<int> sizes;
    int k = 3;
    double eps = coarse::kDefaultFamilyEpsilon;
};

void cmd_gen_expander(const GenExpanderArgs& a) {
    const fs::path dir = prepare_out(a.common.out);
    const std::vector<coarse::CertifiedGraph> family =
        coarse::expander_family(a.sizes, a.k, a.eps, a.common.seed);
    for (const coarse::CertifiedGraph& member : family) {
        const int n = member.graph.vertex_count();
        write_artifact(dir, "graph_" + std::to_string(n) + ".json",
                       coarse::graph_to_json(member.graph.graph()));
        write_artifact(dir, "certificate_" + std::to_string(n) + ".json",
                       coarse::expansion_to_json(member.certificate));
        std::cout << "n=" << n << " k=" << a.k << " h>=" << member.certificate.h_num << "/"
                  << member.certificate.h_den << " gap=" << member.certificate.gap
                  << (member.certificate.method == coarse::ExpansionCertificate::Method::Exact
                          ? " (exact)"
                          : " (spectral)")
                  << "\n";
    }
}

struct FileArgs {
    Common common;
    std::string input;
    std::string name;
};

void cmd_metric(const FileArgs& a) {
    const fs::path dir = prepare_out(a.common.out);
    const coarse::SimpleGraph g =
        coarse::graph_from_json(coarse::read_text_file(a.input));
    const coarse::FiniteMetricSpace space = coarse::graph_metric(g);
    write_artifact(dir, a.name.empty() ? "space.json" : a.name,
                   coarse::space_to_json(space));
    std::cout << "n=" << space.size() << " diameter=" << space.diameter() << "\n";
}

void cmd_cheeger(const FileArgs& a) {
    const fs::path dir = prepare_out(a.common.out);
    const coarse::RegularGraph g = coarse::RegularGraph::from_graph(
        coarse::graph_from_json(coarse::read_text_file(a.input)));
    const coarse::ExpansionCertificate cert = coarse::certify_expansion(g);
    write_artifact(dir, a.name.empty() ? "expansion_certificate.json" : a.name,
                   coarse::expansion_to_json(cert));
    std::cout << "h" << (cert.method == coarse::ExpansionCertificate::Method::Exact ? "=" : "<=")
              << cert.h_num << "/" << cert.h_den << " lambda2=" << cert.lambda2
              << " certified_bound=" << cert.cheeger_lower_bound() << "\n";
}

struct CertificateArgs {
    Common common;
    std::string space_file;
    double threshold = 0.0;
    std::string name;
};

void cmd_certificate(const CertificateArgs& a) {
    const fs::path dir = prepare_out(a.common.out);
    const coarse::FiniteMetricSpace space =
        coarse::space_from_json(coarse::read_text_file(a.space_file), a.common.tol);
    const coarse::MinimaxResult res = coarse::minimax_measure(space, a.threshold);
    write_artifact(dir, a.name.empty() ? "measure_certificate.json" : a.name,
                   coarse::measure_to_json(res.certificate));
    int support = 0;
    for (double w : res.certificate.mu)
        if (w > 1e-12) ++support;
    std::cout << "threshold " << a.threshold << ": value D = " << res.certificate.value
              << " over " << res.certificate.pairs.size() << " far pairs (support " << support
              << ", duality gap " << res.duality_gap << ")\n"
              << "every 1-Lipschitz map into L1 moves the mu-average by at most D\n";
}

struct EmbedArgs {
    Common common;
    std::string kind;
    std::string cloud_file;
    std::string space_file;
    double target_p = 2.0;
    std::vector<double> thresholds;
    int bins = 16;
};

void cmd_embed(const EmbedArgs& a) {
    const fs::path dir = prepare_out(a.common.out);
    if (a.kind == "shell") {
        if (a.cloud_file.empty())
            throw coarse::DomainError("embed --kind shell requires --cloud");
        const coarse::PointCloud cloud =
            coarse::cloud_from_json(coarse::read_text_file(a.cloud_file));
        const coarse::ShellEmbeddingResult res = coarse::shell_embedding(cloud, a.target_p);
        const coarse::CaseBreakdown cases = coarse::case_breakdown(res);
        write_artifact(dir, "embedding.json", coarse::embedding_to_json(res.map));
        write_artifact(dir, "moduli.csv",
                       coarse::moduli_to_csv(coarse::empirical_moduli(res.map, a.bins)));
        std::cout << "shell embedding: distortion=" << res.map.distortion()
                  << " pairs same=" << cases.count_same
                  << " consecutive=" << cases.count_consecutive
                  << " distant=" << cases.count_distant << " origin=" << cases.count_origin
                  << " bound_violations=" << cases.violations << "\n";
    } else if (a.kind == "schoenberg") {
        if (a.cloud_file.empty())
            throw coarse::DomainError("embed --kind schoenberg requires --cloud");
        const coarse::PointCloud cloud =
            coarse::cloud_from_json(coarse::read_text_file(a.cloud_file));
        const coarse::SchoenbergResult res = coarse::schoenberg_l1_to_l2(cloud);
        write_artifact(dir, "embedding.json", coarse::embedding_to_json(res.map));
        write_artifact(dir, "moduli.csv",
                       coarse::moduli_to_csv(coarse::empirical_moduli(res.map, a.bins)));
        std::cout << "schoenberg: min_eigenvalue=" << res.min_eigenvalue
                  << " max_pair_error=" << res.max_pair_error
                  << " distortion=" << res.map.distortion() << "\n";
    } else if (a.kind == "coarse") {
        if (a.space_file.empty())
            throw coarse::DomainError("embed --kind coarse requires --space");
        if (a.thresholds.empty())
            throw coarse::DomainError("embed --kind coarse requires --thresholds");
        const coarse::FiniteMetricSpace space =
            coarse::space_from_json(coarse::read_text_file(a.space_file), a.common.tol);
        const coarse::CoarseEmbeddingResult res =
            coarse::assemble_coarse_embedding(space, a.target_p, a.thresholds, a.bins);
        write_artifact(dir, "embedding.json", coarse::embedding_to_json(res.map));
        write_artifact(dir, "moduli.csv", coarse::moduli_to_csv(res.moduli));
        for (std::size_t i = 0; i < res.blocks.size(); ++i) {
            const coarse::BlockInfo& b = res.blocks[i];
            std::cout << "block " << (i + 1) << ": t=" << b.threshold << " eps=" << b.eps
                      << " delta=" << b.delta << " rho1(t)=" << b.rho1_at_threshold << "\n";
        }
    } else {
        throw coarse::DomainError("embed --kind must be shell, schoenberg, or coarse");
    }
}

struct ModuliArgs {
    Common common;
    std::string embedding_file;
    int bins = 16;
    std::string name;
};

void cmd_moduli(const ModuliArgs& a) {
    const fs::path dir = prepare_out(a.common.out);
    const coarse::EmbeddingMap map =
        coarse::embedding_from_json(coarse::read_text_file(a.embedding_file));
    write_artifact(dir, a.name.empty() ? "moduli.csv" : a.name,
                   coarse::moduli_to_csv(coarse::empirical_moduli(map, a.bins)));
}

struct ObstructArgs {
    Common common;
    std::string family_dir;
    double L = 1.0;
    double t = 3.0;
    int dim = 4;
};

void cmd_obstruct(const ObstructArgs& a) {
    const fs::path dir = prepare_out(a.common.out);
    if (!fs::is_directory(a.family_dir))
        throw coarse::IoError("family directory " + a.family_dir + " does not exist");

    // Collect graph_<n>.json + certificate_<n>.json pairs, ordered by n.
    std::vector<std::pair<int, fs::path>> found;
    for (const fs::directory_entry& entry : fs::directory_iterator(a.family_dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("graph_", 0) != 0 || name.size() <= 11 ||
            name.substr(name.size() - 5) != ".json")
            continue;
        const std::string digits = name.substr(6, name.size() - 11);
        if (digits.empty() ||
            digits.find_first_not_of("0123456789") != std::string::npos)
            continue;
        found.emplace_back(std::stoi(digits), entry.path());
    }
    std::sort(found.begin(), found.end());
    if (found.empty())
        throw coarse::IoError("no graph_<n>.json files in " + a.family_dir);

    std::vector<coarse::CertifiedGraph> family;
    for (const auto& [n, graph_path] : found) {
        const fs::path cert_path =
            graph_path.parent_path() / ("certificate_" + std::to_string(n) + ".json");
        family.push_back(coarse::CertifiedGraph{
            coarse::RegularGraph::from_graph(
                coarse::graph_from_json(coarse::read_text_file(graph_path.string()))),
            coarse::expansion_from_json(coarse::read_text_file(cert_path.string())), 0});
    }

    const std::vector<coarse::ModuliConstraint> constraints =
        coarse::moduli_cap(family, a.L, a.t);
    write_artifact(dir, "constraints.csv", coarse::constraints_to_csv(constraints));

    // Poincaré reports on seeded Gaussian images, one per member; the image
    // clouds are artifacts in their own right (inputs for `embed`).
    ordered_json reports = ordered_json::array();
    for (std::size_t i = 0; i < family.size(); ++i) {
        const coarse::RegularGraph& g = family[i].graph;
        coarse::SplitMix64 rng(coarse::derive_seed(a.common.seed, static_cast<std::uint64_t>(i)));
        std::vector<std::vector<double>> pts(g.vertex_count(), std::vector<double>(a.dim));
        for (auto& row : pts)
            for (double& x : row) x = rng.next_gaussian();
        const coarse::PointCloud cloud(std::move(pts), 2.0);
        write_artifact(dir, "images_" + std::to_string(g.vertex_count()) + ".json",
                       coarse::cloud_to_json(cloud));
        const coarse::PoincareReport rep =
            coarse::poincare_ratio(g, family[i].certificate.lambda2, cloud);
        ordered_json j;
        j["n"] = g.vertex_count();
        j["mean_pair_sq"] = rep.mean_pair_sq;
        j["mean_edge_sq"] = rep.mean_edge_sq;
        j["ratio"] = rep.ratio;
        j["bound"] = rep.bound;
        j["degenerate"] = rep.degenerate;
        j["violates_bound"] = rep.violates_bound;
        reports.push_back(std::move(j));
    }
    write_artifact(dir, "poincare.json", dump(reports));
    for (const coarse::ModuliConstraint& c : constraints)
        std::cout << "n=" << c.n << " far_fraction=" << c.far_fraction
                  << (c.vacuous ? " (vacuous)" : " rho1_cap=" + std::to_string(c.rho1_cap))
                  << "\n";
}

struct PlotArgs {
    Common common;
    std::string csv_file;
    std::string name;
};

void cmd_plot(const PlotArgs& a) {
    const fs::path dir = prepare_out(a.common.out);
    write_artifact(dir, a.name.empty() ? "chart.svg" : a.name,
                   coarse::csv_to_svg_chart(coarse::read_text_file(a.csv_file)));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coarse/Lipschitz embeddability laboratory"};
    app.require_subcommand(1);

    GenExpanderArgs gen;
    CLI::App* sub_gen = app.add_subcommand(
        "gen-expander", "generate certified expander graphs (pairing model)");
    sub_gen->add_option("--sizes", gen.sizes, "vertex counts, e.g. 12,16")
        ->required()
        ->delimiter(',');
    sub_gen->add_option("--k", gen.k, "regular degree (default 3)");
    sub_gen->add_option("--eps", gen.eps, "required certified Cheeger bound");
    add_common(sub_gen, gen.common);

    FileArgs metric;
    CLI::App* sub_metric = app.add_subcommand("metric", "shortest-path metric of a graph");
    sub_metric->add_option("--graph", metric.input, "graph JSON file")->required();
    sub_metric->add_option("--name", metric.name, "output filename (default space.json)");
    add_common(sub_metric, metric.common);

    FileArgs cheeger;
    CLI::App* sub_cheeger =
        app.add_subcommand("cheeger", "expansion certificate of a regular graph");
    sub_cheeger->add_option("--graph", cheeger.input, "graph JSON file")->required();
    sub_cheeger->add_option("--name", cheeger.name,
                            "output filename (default expansion_certificate.json)");
    add_common(sub_cheeger, cheeger.common);

    CertificateArgs cert;
    CLI::App* sub_cert = app.add_subcommand(
        "certificate", "optimal far-pair measure certificate (LP over the cut cone)");
    sub_cert->add_option("--space", cert.space_file, "metric space JSON file")->required();
    sub_cert->add_option("--threshold", cert.threshold, "far-pair distance threshold")
        ->required();
    sub_cert->add_option("--name", cert.name,
                         "output filename (default measure_certificate.json)");
    add_common(sub_cert, cert.common);

    EmbedArgs embed;
    CLI::App* sub_embed =
        app.add_subcommand("embed", "explicit embeddings (shell, schoenberg, coarse)");
    sub_embed->add_option("--kind", embed.kind, "shell | schoenberg | coarse")->required();
    sub_embed->add_option("--cloud", embed.cloud_file, "point cloud JSON (shell, schoenberg)");
    sub_embed->add_option("--space", embed.space_file, "metric space JSON (coarse)");
    sub_embed->add_option("--target-p", embed.target_p, "target norm exponent (default 2)");
    sub_embed->add_option("--thresholds", embed.thresholds, "far thresholds t_1<t_2<...")
        ->delimiter(',');
    sub_embed->add_option("--bins", embed.bins, "moduli histogram bins (default 16)");
    add_common(sub_embed, embed.common);

    ModuliArgs moduli;
    CLI::App* sub_moduli =
        app.add_subcommand("moduli", "empirical moduli table of a stored embedding");
    sub_moduli->add_option("--embedding", moduli.embedding_file, "embedding JSON file")
        ->required();
    sub_moduli->add_option("--bins", moduli.bins, "histogram bins (default 16)");
    sub_moduli->add_option("--name", moduli.name, "output filename (default moduli.csv)");
    add_common(sub_moduli, moduli.common);

    ObstructArgs obstruct;
    CLI::App* sub_obstruct = app.add_subcommand(
        "obstruct", "Poincaré obstruction caps for a certified expander family");
    sub_obstruct->add_option("--family", obstruct.family_dir, "directory with graph/certificate files")
        ->required();
    sub_obstruct->add_option("--L", obstruct.L, "assumed Lipschitz constant (default 1)");
    sub_obstruct->add_option("--t", obstruct.t, "distance threshold (default 3)");
    sub_obstruct->add_option("--dim", obstruct.dim, "Gaussian image dimension (default 4)");
    add_common(sub_obstruct, obstruct.common);

    PlotArgs plot;
    CLI::App* sub_plot = app.add_subcommand("plot", "render a CSV table as an SVG chart");
    sub_plot->add_option("--csv", plot.csv_file, "input CSV file")->required();
    sub_plot->add_option("--name", plot.name, "output filename (default chart.svg)");
    add_common(sub_plot, plot.common);

    try {
        app.parse(argc, argv);
        // Callbacks are not used: dispatch explicitly so common flags can be
        // merged with the config file before any work happens.
        if (sub_gen->parsed()) {
            finalize(gen.common);
            cmd_gen_expander(gen);
        } else if (sub_metric->parsed()) {
            finalize(metric.common);
            cmd_metric(metric);
        } else if (sub_cheeger->parsed()) {
            finalize(cheeger.common);
            cmd_cheeger(cheeger);
        } else if (sub_cert->parsed()) {
            finalize(cert.common);
            cmd_certificate(cert);
        } else if (sub_embed->parsed()) {
            finalize(embed.common);
            cmd_embed(embed);
        } else if (sub_moduli->parsed()) {
            finalize(moduli.common);
            cmd_moduli(moduli);
        } else if (sub_obstruct->parsed()) {
            finalize(obstruct.common);
            cmd_obstruct(obstruct);
        } else if (sub_plot->parsed()) {
            finalize(plot.common);
            cmd_plot(plot);
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the diagnostic
        return 2;    // command-line misuse is a parameter error
    } catch (const coarse::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const coarse::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
