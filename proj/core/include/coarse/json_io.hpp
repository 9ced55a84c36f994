#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coarse/embed.hpp"
#include "coarse/expander.hpp"
#include "coarse/game.hpp"
#include "coarse/graph.hpp"
#include "coarse/metric_space.hpp"
#include "coarse/obstruction.hpp"
#include "coarse/point_cloud.hpp"

namespace coarse {

// JSON artifact formats (2-space indent, trailing newline):
//   space        {"labels": [string], "dist": [[number]]}
//   graph        {"n": int, "edges": [[u, v]]}   u < v, each edge once
//   cloud        {"p": number | "inf", "points": [[number]]}
//   expansion    {"h_num": int, "h_den": int, "witness": [int],
//                 "lambda2": number, "gap": number,
//                 "method": "exact" | "spectral"}
//   measure      {"threshold": number, "pairs": [[i, j]], "mu": [number],
//                 "value": number}
//   embedding    {"source": <space>, "image": <cloud>, "lip": number,
//                 "colip": number, "block_dims": [int]?}   block_dims only
//                 when the image metric is a p-sum of Euclidean blocks
//
// Readers throw IoError naming the offending field for structural problems
// (missing key, wrong type, ragged matrix); semantic violations (say, a
// distance table that is not a metric) surface as DomainError from the
// domain constructors.
std::string space_to_json(const FiniteMetricSpace& space);
FiniteMetricSpace space_from_json(const std::string& text, double tolerance = 1e-12);

std::string graph_to_json(const SimpleGraph& g);
SimpleGraph graph_from_json(const std::string& text);

std::string cloud_to_json(const PointCloud& cloud);
PointCloud cloud_from_json(const std::string& text);

std::string expansion_to_json(const ExpansionCertificate& cert);
ExpansionCertificate expansion_from_json(const std::string& text);

std::string measure_to_json(const MeasureCertificate& cert);
MeasureCertificate measure_from_json(const std::string& text);

std::string embedding_to_json(const EmbeddingMap& map);
EmbeddingMap embedding_from_json(const std::string& text);

// CSV exports. Headers exactly:
//   moduli       bin_lo,bin_hi,count,rho1,rho2     (empty bins: "NA" moduli)
//   constraints  n,t,far_fraction,bound,rho1_cap   (vacuous rows: "NA" cap)
std::string moduli_to_csv(const ModuliEstimate& est);
std::string constraints_to_csv(const std::vector<ModuliConstraint>& rows);

// Raw transport; IoError with the path on failure. Writes are binary-exact
// (no newline translation), which the byte-determinism contract relies on.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// CLI run configuration: {"seed": uint64, "out": string?, "tol": number?}.
// `seed` is mandatory (no silent nondeterminism) and unknown keys are
// rejected, both as DomainError; unparseable JSON is IoError. Command-line
// flags override whatever the file supplies.
struct RunConfig {
    std::uint64_t seed = 0;
    std::string out_dir;   // empty = not supplied
    double tolerance = 0.0;
    bool has_out = false;
    bool has_tolerance = false;
};

RunConfig config_from_json(const std::string& text);

} // namespace coarse
