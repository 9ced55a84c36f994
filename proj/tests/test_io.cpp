#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "coarse/embed.hpp"
#include "coarse/errors.hpp"
#include "coarse/expander.hpp"
#include "coarse/game.hpp"
#include "coarse/graph.hpp"
#include "coarse/json_io.hpp"
#include "coarse/metric_space.hpp"
#include "coarse/point_cloud.hpp"
#include "coarse/svg.hpp"

namespace {

const double kInf = std::numeric_limits<double>::infinity();

std::string temp_path(const char* name) {
    return std::string("/tmp/coarse_io_test_") + name;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("space JSON renders deterministically and round-trips") {
    const coarse::FiniteMetricSpace space({"a", "b"}, {{0, 1}, {1, 0}});
    const std::string text = coarse::space_to_json(space);
    CHECK(text ==
          "{\n"
          "  \"labels\": [\n"
          "    \"a\",\n"
          "    \"b\"\n"
          "  ],\n"
          "  \"dist\": [\n"
          "    [\n"
          "      0.0,\n"
          "      1.0\n"
          "    ],\n"
          "    [\n"
          "      1.0,\n"
          "      0.0\n"
          "    ]\n"
          "  ]\n"
          "}\n");

    const auto back = coarse::space_from_json(text);
    CHECK(back.labels() == space.labels());
    CHECK(back.matrix() == space.matrix());

    // Doubles survive the shortest-roundtrip rendering exactly.
    const coarse::FiniteMetricSpace odd({"x", "y"}, {{0, 0.1}, {0.1, 0}});
    const auto odd_back = coarse::space_from_json(coarse::space_to_json(odd));
    CHECK(odd_back.distance(0, 1) == 0.1);
}

TEST_CASE("space JSON failure modes") {
    CHECK_THROWS_AS(coarse::space_from_json("{"), coarse::IoError);
    CHECK_THROWS_AS(coarse::space_from_json("[1,2]"), coarse::IoError);
    try {
        coarse::space_from_json("{\"dist\": []}");
        FAIL("expected IoError");
    } catch (const coarse::IoError& e) {
        CHECK(std::string(e.what()).find("missing field \"labels\"") !=
              std::string::npos);
    }
    CHECK_THROWS_AS(coarse::space_from_json("{\"labels\": [\"a\"], \"dist\": []}"),
                    coarse::IoError);
    CHECK_THROWS_AS(
        coarse::space_from_json(
            "{\"labels\": [\"a\", \"b\"], \"dist\": [[0, 1], [1]]}"),
        coarse::IoError);
    CHECK_THROWS_AS(
        coarse::space_from_json(
            "{\"labels\": [\"a\", \"b\"], \"dist\": [[0, \"x\"], [1, 0]]}"),
        coarse::IoError);
    CHECK_THROWS_AS(
        coarse::space_from_json("{\"labels\": [1], \"dist\": [[0]]}"),
        coarse::IoError);

    // Structurally sound but non-metric data is a domain problem, not IO.
    CHECK_THROWS_AS(
        coarse::space_from_json(
            "{\"labels\": [\"a\", \"b\", \"c\"], "
            "\"dist\": [[0, 1, 3], [1, 0, 1], [3, 1, 0]]}"),
        coarse::DomainError);

    // The caller-supplied tolerance reaches the metric validation.
    const std::string wobbly =
        "{\"labels\": [\"a\", \"b\"], \"dist\": [[0, 1.0], [1.0001, 0]]}";
    CHECK_THROWS_AS(coarse::space_from_json(wobbly), coarse::DomainError);
    const auto forgiving = coarse::space_from_json(wobbly, 1e-3);
    CHECK(forgiving.size() == 2);
}

TEST_CASE("graph JSON round-trips and validates") {
    const auto g = coarse::petersen_graph().graph();
    const auto back = coarse::graph_from_json(coarse::graph_to_json(g));
    CHECK(back.vertex_count() == 10);
    CHECK(back.edges() == g.edges());

    CHECK_THROWS_AS(coarse::graph_from_json("{\"edges\": []}"), coarse::IoError);
    CHECK_THROWS_AS(coarse::graph_from_json("{\"n\": 2.5, \"edges\": []}"),
                    coarse::IoError);
    CHECK_THROWS_AS(coarse::graph_from_json("{\"n\": 3, \"edges\": [[0]]}"),
                    coarse::IoError);
    CHECK_THROWS_AS(coarse::graph_from_json("{\"n\": 3, \"edges\": [[0, 0]]}"),
                    coarse::DomainError);
    CHECK_THROWS_AS(coarse::graph_from_json("{\"n\": 3, \"edges\": [[0, 7]]}"),
                    coarse::DomainError);
}

TEST_CASE("cloud JSON handles finite p and the sup norm") {
    const coarse::PointCloud cloud({{0.25, -1.5}, {3, 4}}, 1.5);
    const auto back = coarse::cloud_from_json(coarse::cloud_to_json(cloud));
    CHECK(back.p() == 1.5);
    CHECK(back.points() == cloud.points());

    const coarse::PointCloud sup({{1, 2}, {3, 4}}, kInf);
    const std::string text = coarse::cloud_to_json(sup);
    CHECK(text.find("\"inf\"") != std::string::npos);
    const auto sup_back = coarse::cloud_from_json(text);
    CHECK(std::isinf(sup_back.p()));

    CHECK_THROWS_AS(coarse::cloud_from_json("{\"p\": \"two\", \"points\": [[1]]}"),
                    coarse::IoError);
    CHECK_THROWS_AS(coarse::cloud_from_json("{\"p\": 2}"), coarse::IoError);
    CHECK_THROWS_AS(coarse::cloud_from_json("{\"p\": 2, \"points\": [[1], [1, 2]]}"),
                    coarse::DomainError);
    CHECK_THROWS_AS(coarse::cloud_from_json("{\"p\": 0.5, \"points\": [[1]]}"),
                    coarse::DomainError);
}

TEST_CASE("expansion certificate JSON round-trips both methods") {
    const auto exact = coarse::cheeger_exact(coarse::petersen_graph());
    const auto back = coarse::expansion_from_json(coarse::expansion_to_json(exact));
    CHECK(back.h_num == exact.h_num);
    CHECK(back.h_den == exact.h_den);
    CHECK(back.witness == exact.witness);
    CHECK(back.lambda2 == exact.lambda2);
    CHECK(back.gap == exact.gap);
    CHECK(back.method == coarse::ExpansionCertificate::Method::Exact);

    coarse::ExpansionCertificate spectral;
    spectral.h_num = 3;
    spectral.h_den = 7;
    spectral.witness = {1, 4, 6};
    spectral.lambda2 = 2.25;
    spectral.gap = 0.75;
    spectral.method = coarse::ExpansionCertificate::Method::Spectral;
    const std::string text = coarse::expansion_to_json(spectral);
    CHECK(text.find("\"spectral\"") != std::string::npos);
    const auto spec_back = coarse::expansion_from_json(text);
    CHECK(spec_back.method == coarse::ExpansionCertificate::Method::Spectral);
    CHECK(spec_back.h_value() == doctest::Approx(3.0 / 7.0));

    CHECK_THROWS_AS(coarse::expansion_from_json("{}"), coarse::IoError);
    std::string bad = text;
    const auto pos = bad.find("spectral");
    bad.replace(pos, 8, "guessed!");
    CHECK_THROWS_AS(coarse::expansion_from_json(bad), coarse::IoError);
}

TEST_CASE("measure certificate JSON round-trips exactly") {
    const auto space = coarse::graph_metric(coarse::cycle_graph(5));
    const auto res = coarse::minimax_measure(space, 2.0);
    const auto back = coarse::measure_from_json(coarse::measure_to_json(res.certificate));
    CHECK(back.threshold == res.certificate.threshold);
    CHECK(back.pairs == res.certificate.pairs);
    CHECK(back.mu == res.certificate.mu);
    CHECK(back.value == res.certificate.value);

    CHECK_THROWS_AS(coarse::measure_from_json("{\"threshold\": 1}"), coarse::IoError);
    CHECK_THROWS_AS(
        coarse::measure_from_json(
            "{\"threshold\": 1, \"pairs\": [[0, 1, 2]], \"mu\": [1.0], \"value\": 1}"),
        coarse::IoError);
}

TEST_CASE("embedding JSON keeps blocks and measured data") {
    const coarse::PointCloud cloud({{1, 0, 0}, {2, 0, 0}, {4, 0, 0}}, 2.0);
    const auto shell = coarse::shell_embedding(cloud, 2.0);
    const std::string text = coarse::embedding_to_json(shell.map);
    CHECK(text.find("block_dims") != std::string::npos);

    const auto back = coarse::embedding_from_json(text);
    CHECK(back.block_dims == shell.map.block_dims);
    CHECK(back.lip == shell.map.lip);
    CHECK(back.colip == shell.map.colip);
    CHECK(back.image.points() == shell.map.image.points());
    CHECK(back.source.matrix() == shell.map.source.matrix());
    CHECK(back.image_distance(0, 2) ==
          doctest::Approx(shell.map.image_distance(0, 2)).epsilon(1e-15));

    // Block-free maps omit the key entirely.
    const auto source = coarse::graph_metric(coarse::path_graph(2));
    const coarse::PointCloud image({{0}, {1}}, 2.0);
    const auto plain = coarse::EmbeddingMap::measured(source, image);
    const std::string plain_text = coarse::embedding_to_json(plain);
    CHECK(plain_text.find("block_dims") == std::string::npos);
    const auto plain_back = coarse::embedding_from_json(plain_text);
    CHECK(plain_back.block_dims.empty());

    CHECK_THROWS_AS(coarse::embedding_from_json("{}"), coarse::IoError);

    // Mismatched block widths are rejected at parse time.
    std::string bad = text;
    const auto pos = bad.find("\"block_dims\"");
    REQUIRE(pos != std::string::npos);
    bad.replace(bad.find('[', pos), 1, "[9, ");
    CHECK_THROWS_AS(coarse::embedding_from_json(bad), coarse::IoError);
}

TEST_CASE("moduli CSV renders counts and NA bins") {
    coarse::ModuliEstimate est;
    est.bin_lo = {0.0, 1.0};
    est.bin_hi = {1.0, 2.0};
    est.count = {2, 0};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    est.rho1 = {0.5, nan};
    est.rho2 = {1.5, nan};
    CHECK(coarse::moduli_to_csv(est) ==
          "bin_lo,bin_hi,count,rho1,rho2\n"
          "0.0,1.0,2,0.5,1.5\n"
          "1.0,2.0,0,NA,NA\n");
}

TEST_CASE("constraints CSV renders vacuous rows as NA") {
    coarse::ModuliConstraint c1;
    c1.n = 12;
    c1.t = 3.0;
    c1.far_fraction = 1.0 / 6.0;
    c1.bound = 2.0;
    c1.rho1_cap = 3.4641016151377544;
    coarse::ModuliConstraint c2;
    c2.n = 4;
    c2.t = 2.0;
    c2.far_fraction = 0.0;
    c2.bound = 0.75;
    c2.vacuous = true;
    CHECK(coarse::constraints_to_csv({c1, c2}) ==
          "n,t,far_fraction,bound,rho1_cap\n"
          "12,3.0,0.16666666666666666,2.0,3.4641016151377544\n"
          "4,2.0,0.0,0.75,NA\n");
}

TEST_CASE("run configuration parsing") {
    const auto minimal = coarse::config_from_json("{\"seed\": 7}");
    CHECK(minimal.seed == 7);
    CHECK_FALSE(minimal.has_out);
    CHECK_FALSE(minimal.has_tolerance);

    const auto full =
        coarse::config_from_json("{\"seed\": 1, \"out\": \"runs\", \"tol\": 1e-9}");
    CHECK(full.seed == 1);
    CHECK(full.has_out);
    CHECK(full.out_dir == "runs");
    CHECK(full.has_tolerance);
    CHECK(full.tolerance == 1e-9);

    CHECK_THROWS_AS(coarse::config_from_json("{}"), coarse::DomainError);
    CHECK_THROWS_AS(coarse::config_from_json("{\"seed\": -1}"), coarse::DomainError);
    CHECK_THROWS_AS(coarse::config_from_json("{\"seed\": 1.5}"), coarse::DomainError);
    CHECK_THROWS_AS(coarse::config_from_json("{\"seed\": 1, \"mystery\": 0}"),
                    coarse::DomainError);
    CHECK_THROWS_AS(coarse::config_from_json("{\"seed\": 1, \"out\": 3}"),
                    coarse::DomainError);
    CHECK_THROWS_AS(coarse::config_from_json("not json"), coarse::IoError);
    CHECK_THROWS_AS(coarse::config_from_json("[]"), coarse::IoError);
}

TEST_CASE("text file transport is binary exact") {
    const std::string path = temp_path("payload.txt");
    const std::string content = "line one\nline two without trailing newline";
    coarse::write_text_file(path, content);
    CHECK(coarse::read_text_file(path) == content);
    std::remove(path.c_str());

    CHECK_THROWS_AS(coarse::read_text_file("/tmp/definitely/not/here.json"),
                    coarse::IoError);
    CHECK_THROWS_AS(coarse::write_text_file("/tmp/definitely/not/here.json", "x"),
                    coarse::IoError);
}

TEST_CASE("SVG chart rendering") {
    const std::string csv = "x,alpha,beta\n0,1,2\n1,NA,3\n2,2,4\n";
    const std::string svg = coarse::csv_to_svg_chart(csv);

    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
                   "height=\"600\"") == 0);
    CHECK(svg.find("alpha") != std::string::npos);
    CHECK(svg.find("beta") != std::string::npos);

    auto count = [&](const std::string& hay, const char* needle) {
        int c = 0;
        for (std::size_t pos = hay.find(needle); pos != std::string::npos;
             pos = hay.find(needle, pos + 1))
            ++c;
        return c;
    };
    // beta has a full 3-point run; alpha's NA gap leaves two lone markers.
    CHECK(count(svg, "<polyline") == 1);
    CHECK(count(svg, "<circle") == 5);

    CHECK(coarse::csv_to_svg_chart(csv) == svg);

    SUBCASE("degenerate tables still render") {
        CHECK(coarse::csv_to_svg_chart("x,y\n").find("<svg") == 0);
        const std::string one = coarse::csv_to_svg_chart("x,y\n1,2\n");
        CHECK(count(one, "<circle") == 1);
    }
    SUBCASE("ragged rows are transport errors") {
        CHECK_THROWS_AS(coarse::csv_to_svg_chart("x,y\n1,2,3\n"), coarse::IoError);
    }
    SUBCASE("non-numeric cells are treated as missing") {
        const std::string weird = coarse::csv_to_svg_chart("x,y\n0,huh\n1,2\n");
        CHECK(count(weird, "<circle") == 1);
    }
}

} // TEST_SUITE("io")
