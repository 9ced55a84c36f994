#include "coarse/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string render(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json parse(const std::string& text, const char* what) {
    try {
        return ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw IoError(std::string(what) + ": " + e.what());
    }
}

const ordered_json& field(const ordered_json& j, const char* key, const char* what) {
    if (!j.is_object())
        throw IoError(std::string(what) + ": expected a JSON object");
    auto it = j.find(key);
    if (it == j.end())
        throw IoError(std::string(what) + ": missing field \"" + key + "\"");
    return *it;
}

double as_number(const ordered_json& j, const std::string& what) {
    if (!j.is_number()) throw IoError(what + ": expected a number");
    return j.get<double>();
}

long long as_integer(const ordered_json& j, const std::string& what) {
    if (!j.is_number_integer()) throw IoError(what + ": expected an integer");
    return j.get<long long>();
}

const ordered_json& as_array(const ordered_json& j, const std::string& what) {
    if (!j.is_array()) throw IoError(what + ": expected an array");
    return j;
}

std::vector<double> number_row(const ordered_json& j, const std::string& what) {
    as_array(j, what);
    std::vector<double> row;
    row.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k)
        row.push_back(as_number(j[k], what + "[" + std::to_string(k) + "]"));
    return row;
}

// Value-level readers shared by the standalone and embedded forms.

FiniteMetricSpace space_from_value(const ordered_json& j, const std::string& what,
                                   double tolerance = 1e-12) {
    const ordered_json& jlabels = field(j, "labels", what.c_str());
    as_array(jlabels, what + ".labels");
    std::vector<std::string> labels;
    labels.reserve(jlabels.size());
    for (std::size_t i = 0; i < jlabels.size(); ++i) {
        if (!jlabels[i].is_string())
            throw IoError(what + ".labels[" + std::to_string(i) + "]: expected a string");
        labels.push_back(jlabels[i].get<std::string>());
    }
    const ordered_json& jdist = field(j, "dist", what.c_str());
    as_array(jdist, what + ".dist");
    if (jdist.size() != labels.size())
        throw IoError(what + ".dist: " + std::to_string(jdist.size()) + " rows for " +
                      std::to_string(labels.size()) + " labels");
    std::vector<std::vector<double>> dist;
    dist.reserve(jdist.size());
    for (std::size_t i = 0; i < jdist.size(); ++i) {
        dist.push_back(number_row(jdist[i], what + ".dist[" + std::to_string(i) + "]"));
        if (dist.back().size() != labels.size())
            throw IoError(what + ".dist[" + std::to_string(i) + "]: row length " +
                          std::to_string(dist.back().size()) + " in a " +
                          std::to_string(labels.size()) + "-point space");
    }
    return FiniteMetricSpace(std::move(labels), dist, tolerance);
}

PointCloud cloud_from_value(const ordered_json& j, const std::string& what) {
    const ordered_json& jp = field(j, "p", what.c_str());
    double p;
    if (jp.is_string()) {
        if (jp.get<std::string>() != "inf")
            throw IoError(what + ".p: the only string form is \"inf\"");
        p = std::numeric_limits<double>::infinity();
    } else {
        p = as_number(jp, what + ".p");
    }
    const ordered_json& jpoints = field(j, "points", what.c_str());
    as_array(jpoints, what + ".points");
    std::vector<std::vector<double>> points;
    points.reserve(jpoints.size());
    for (std::size_t i = 0; i < jpoints.size(); ++i)
        points.push_back(number_row(jpoints[i], what + ".points[" + std::to_string(i) + "]"));
    return PointCloud(std::move(points), p);
}

ordered_json space_to_value(const FiniteMetricSpace& space) {
    ordered_json j;
    j["labels"] = space.labels();
    j["dist"] = space.matrix();
    return j;
}

ordered_json cloud_to_value(const PointCloud& cloud) {
    ordered_json j;
    if (std::isinf(cloud.p()))
        j["p"] = "inf";
    else
        j["p"] = cloud.p();
    j["points"] = cloud.points();
    return j;
}

// Deterministic shortest-round-trip rendering for CSV cells, shared with the
// JSON writer so the two artifact families agree on number texture.
std::string csv_number(double x) { return ordered_json(x).dump(); }

} // namespace

std::string space_to_json(const FiniteMetricSpace& space) {
    return render(space_to_value(space));
}

FiniteMetricSpace space_from_json(const std::string& text, double tolerance) {
    return space_from_value(parse(text, "space"), "space", tolerance);
}

std::string graph_to_json(const SimpleGraph& g) {
    ordered_json j;
    j["n"] = g.vertex_count();
    ordered_json edges = ordered_json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return render(j);
}

SimpleGraph graph_from_json(const std::string& text) {
    const ordered_json j = parse(text, "graph");
    const long long n = as_integer(field(j, "n", "graph"), "graph.n");
    if (n < 1 || n > 1000000) throw IoError("graph.n: out of range");
    const ordered_json& jedges = field(j, "edges", "graph");
    as_array(jedges, "graph.edges");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(jedges.size());
    for (std::size_t e = 0; e < jedges.size(); ++e) {
        const std::string what = "graph.edges[" + std::to_string(e) + "]";
        as_array(jedges[e], what);
        if (jedges[e].size() != 2) throw IoError(what + ": expected [u, v]");
        edges.emplace_back(static_cast<int>(as_integer(jedges[e][0], what + "[0]")),
                           static_cast<int>(as_integer(jedges[e][1], what + "[1]")));
    }
    return SimpleGraph::from_edges(static_cast<int>(n), std::move(edges));
}

std::string cloud_to_json(const PointCloud& cloud) {
    return render(cloud_to_value(cloud));
}

PointCloud cloud_from_json(const std::string& text) {
    return cloud_from_value(parse(text, "cloud"), "cloud");
}

std::string expansion_to_json(const ExpansionCertificate& cert) {
    ordered_json j;
    j["h_num"] = cert.h_num;
    j["h_den"] = cert.h_den;
    j["witness"] = cert.witness;
    j["lambda2"] = cert.lambda2;
    j["gap"] = cert.gap;
    j["method"] = cert.method == ExpansionCertificate::Method::Exact ? "exact" : "spectral";
    return render(j);
}

ExpansionCertificate expansion_from_json(const std::string& text) {
    const ordered_json j = parse(text, "certificate");
    ExpansionCertificate cert;
    cert.h_num = as_integer(field(j, "h_num", "certificate"), "certificate.h_num");
    cert.h_den = as_integer(field(j, "h_den", "certificate"), "certificate.h_den");
    if (cert.h_den <= 0) throw IoError("certificate.h_den: must be positive");
    const ordered_json& jw = field(j, "witness", "certificate");
    as_array(jw, "certificate.witness");
    for (std::size_t i = 0; i < jw.size(); ++i)
        cert.witness.push_back(static_cast<int>(
            as_integer(jw[i], "certificate.witness[" + std::to_string(i) + "]")));
    cert.lambda2 = as_number(field(j, "lambda2", "certificate"), "certificate.lambda2");
    cert.gap = as_number(field(j, "gap", "certificate"), "certificate.gap");
    const ordered_json& jm = field(j, "method", "certificate");
    if (!jm.is_string()) throw IoError("certificate.method: expected a string");
    const std::string method = jm.get<std::string>();
    if (method == "exact")
        cert.method = ExpansionCertificate::Method::Exact;
    else if (method == "spectral")
        cert.method = ExpansionCertificate::Method::Spectral;
    else
        throw IoError("certificate.method: expected \"exact\" or \"spectral\"");
    return cert;
}

std::string measure_to_json(const MeasureCertificate& cert) {
    ordered_json j;
    j["threshold"] = cert.threshold;
    ordered_json pairs = ordered_json::array();
    for (const auto& [u, v] : cert.pairs) pairs.push_back({u, v});
    j["pairs"] = std::move(pairs);
    j["mu"] = cert.mu;
    j["value"] = cert.value;
    return render(j);
}

MeasureCertificate measure_from_json(const std::string& text) {
    const ordered_json j = parse(text, "measure");
    MeasureCertificate cert;
    cert.threshold = as_number(field(j, "threshold", "measure"), "measure.threshold");
    const ordered_json& jp = field(j, "pairs", "measure");
    as_array(jp, "measure.pairs");
    for (std::size_t e = 0; e < jp.size(); ++e) {
        const std::string what = "measure.pairs[" + std::to_string(e) + "]";
        as_array(jp[e], what);
        if (jp[e].size() != 2) throw IoError(what + ": expected [i, j]");
        cert.pairs.emplace_back(static_cast<int>(as_integer(jp[e][0], what + "[0]")),
                                static_cast<int>(as_integer(jp[e][1], what + "[1]")));
    }
    cert.mu = number_row(field(j, "mu", "measure"), "measure.mu");
    if (cert.mu.size() != cert.pairs.size())
        throw IoError("measure.mu: " + std::to_string(cert.mu.size()) + " weights for " +
                      std::to_string(cert.pairs.size()) + " pairs");
    cert.value = as_number(field(j, "value", "measure"), "measure.value");
    return cert;
}

std::string embedding_to_json(const EmbeddingMap& map) {
    ordered_json j;
    j["source"] = space_to_value(map.source);
    j["image"] = cloud_to_value(map.image);
    j["lip"] = map.lip;
    j["colip"] = map.colip;
    if (!map.block_dims.empty()) j["block_dims"] = map.block_dims;
    return render(j);
}

EmbeddingMap embedding_from_json(const std::string& text) {
    const ordered_json j = parse(text, "embedding");
    FiniteMetricSpace source =
        space_from_value(field(j, "source", "embedding"), "embedding.source");
    PointCloud image = cloud_from_value(field(j, "image", "embedding"), "embedding.image");
    if (source.size() != image.size())
        throw IoError("embedding: source has " + std::to_string(source.size()) +
                      " points, image has " + std::to_string(image.size()));
    std::vector<int> block_dims;
    if (j.contains("block_dims")) {
        const ordered_json& jb = j["block_dims"];
        as_array(jb, "embedding.block_dims");
        int total = 0;
        for (std::size_t i = 0; i < jb.size(); ++i) {
            const int w = static_cast<int>(
                as_integer(jb[i], "embedding.block_dims[" + std::to_string(i) + "]"));
            if (w < 0) throw IoError("embedding.block_dims: negative width");
            block_dims.push_back(w);
            total += w;
        }
        if (total != image.dimension())
            throw IoError("embedding.block_dims: widths sum to " + std::to_string(total) +
                          ", image dimension is " + std::to_string(image.dimension()));
    }
    const double lip = as_number(field(j, "lip", "embedding"), "embedding.lip");
    const double colip = as_number(field(j, "colip", "embedding"), "embedding.colip");
    return EmbeddingMap{std::move(source), std::move(image), std::move(block_dims), lip,
                        colip};
}

std::string moduli_to_csv(const ModuliEstimate& est) {
    std::string out = "bin_lo,bin_hi,count,rho1,rho2\n";
    for (std::size_t b = 0; b < est.bin_lo.size(); ++b) {
        out += csv_number(est.bin_lo[b]);
        out += ',';
        out += csv_number(est.bin_hi[b]);
        out += ',';
        out += std::to_string(est.count[b]);
        out += ',';
        out += est.count[b] == 0 ? "NA" : csv_number(est.rho1[b]);
        out += ',';
        out += est.count[b] == 0 ? "NA" : csv_number(est.rho2[b]);
        out += '\n';
    }
    return out;
}

std::string constraints_to_csv(const std::vector<ModuliConstraint>& rows) {
    std::string out = "n,t,far_fraction,bound,rho1_cap\n";
    for (const ModuliConstraint& c : rows) {
        out += std::to_string(c.n);
        out += ',';
        out += csv_number(c.t);
        out += ',';
        out += csv_number(c.far_fraction);
        out += ',';
        out += csv_number(c.bound);
        out += ',';
        out += c.vacuous ? "NA" : csv_number(c.rho1_cap);
        out += '\n';
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed on " + path);
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out.good()) throw IoError("write failed on " + path);
}

RunConfig config_from_json(const std::string& text) {
    const ordered_json j = parse(text, "config");
    if (!j.is_object()) throw IoError("config: expected a JSON object");
    RunConfig cfg;
    bool has_seed = false;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "seed") {
            // Non-negative JSON integers always parse as unsigned.
            if (!it->is_number_unsigned())
                throw DomainError("config.seed: expected a nonnegative integer");
            cfg.seed = it->get<std::uint64_t>();
            has_seed = true;
        } else if (key == "out") {
            if (!it->is_string()) throw DomainError("config.out: expected a string");
            cfg.out_dir = it->get<std::string>();
            cfg.has_out = true;
        } else if (key == "tol") {
            if (!it->is_number()) throw DomainError("config.tol: expected a number");
            cfg.tolerance = it->get<double>();
            cfg.has_tolerance = true;
        } else {
            throw DomainError("config: unknown key \"" + key + "\"");
        }
    }
    if (!has_seed)
        throw DomainError("config: \"seed\" is required (no silent nondeterminism)");
    return cfg;
}

} // namespace coarse
