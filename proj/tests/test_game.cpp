#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "coarse/errors.hpp"
#include "coarse/game.hpp"
#include "coarse/graph.hpp"
#include "coarse/metric_space.hpp"
#include "coarse/obstruction.hpp"
#include "coarse/point_cloud.hpp"

namespace {

// Cut-cone semimetric induced by a weight vector over the CutSystem.
double cut_distance(const coarse::CutSystem& cs, const std::vector<double>& weights,
                    int u, int v) {
    double d = 0.0;
    for (int idx = 0; idx < cs.count(); ++idx)
        if (coarse::CutSystem::separates(cs.mask(idx), u, v))
            d += weights[static_cast<std::size_t>(idx)];
    return d;
}

double measured_lip(const coarse::PointCloud& images,
                    const coarse::FiniteMetricSpace& source) {
    double lip = 0.0;
    for (int u = 0; u < source.size(); ++u)
        for (int v = u + 1; v < source.size(); ++v)
            lip = std::max(lip, images.distance(u, v) / source.distance(u, v));
    return lip;
}

} // namespace

TEST_SUITE("game") {

TEST_CASE("CutSystem enumerates one representative per bipartition") {
    const coarse::CutSystem cs(4);
    CHECK(cs.ground_size() == 4);
    CHECK(cs.count() == 7);
    for (int idx = 0; idx < cs.count(); ++idx) {
        const std::uint32_t mask = cs.mask(idx);
        CHECK(mask == static_cast<std::uint32_t>(idx) + 1);
        // The canonical side never contains the last point.
        CHECK(((mask >> 3) & 1u) == 0);
    }
    // Hand check: mask 0b001 = {0} separates 0 from everyone else only.
    CHECK(coarse::CutSystem::separates(1, 0, 1));
    CHECK(coarse::CutSystem::separates(1, 0, 3));
    CHECK_FALSE(coarse::CutSystem::separates(1, 1, 2));
    // mask 0b011 = {0,1}.
    CHECK_FALSE(coarse::CutSystem::separates(3, 0, 1));
    CHECK(coarse::CutSystem::separates(3, 1, 2));

    CHECK_THROWS_AS(coarse::CutSystem(1), coarse::DomainError);
    CHECK_THROWS_AS(coarse::CutSystem(17), coarse::DomainError);
    CHECK(coarse::CutSystem(16).count() == 32767);
}

TEST_CASE("every cut semimetric is dominated and achieves the LP value") {
    // On the 4-path the single far pair (0,3) at threshold 3 is moved by the
    // identity embedding of the path into R^1 (an L1 isometry), value 3.
    const auto space = coarse::graph_metric(coarse::path_graph(4));
    const auto res = coarse::max_l1_average(space, {{0, 3}}, {1.0});
    CHECK(res.value == doctest::Approx(3.0).epsilon(1e-9));

    const coarse::CutSystem cs(4);
    REQUIRE(static_cast<int>(res.cut_weights.size()) == cs.count());
    double moved = 0.0;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) {
            const double dprime = cut_distance(cs, res.cut_weights, u, v);
            CHECK(dprime <= space.distance(u, v) + 1e-7);
            if (u == 0 && v == 3) moved = dprime;
        }
    CHECK(moved == doctest::Approx(3.0).epsilon(1e-7));
    for (double w : res.cut_weights) CHECK(w >= 0.0);
}

TEST_CASE("uniform far measure on the five-cycle is moved by 2") {
    const auto space = coarse::graph_metric(coarse::cycle_graph(5));
    std::vector<std::pair<int, int>> far;
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v)
            if (space.distance(u, v) >= 2.0) far.emplace_back(u, v);
    REQUIRE(far.size() == 5);
    const std::vector<double> mu(5, 0.2);
    const auto res = coarse::max_l1_average(space, far, mu);
    CHECK(res.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("max_l1_average validates") {
    const auto space = coarse::graph_metric(coarse::path_graph(4));
    CHECK_THROWS_AS(coarse::max_l1_average(space, {{0, 3}}, {1.0, 0.0}),
                    coarse::DomainError);
    CHECK_THROWS_AS(coarse::max_l1_average(space, {{0, 3}}, {-1.0}),
                    coarse::DomainError);
    CHECK_THROWS_AS(coarse::max_l1_average(space, {{0, 4}}, {1.0}),
                    coarse::DomainError);
    const auto big = coarse::graph_metric(coarse::path_graph(17));
    CHECK_THROWS_AS(coarse::max_l1_average(big, {{0, 1}}, {1.0}),
                    coarse::DomainError);
}

TEST_CASE("minimax_measure on the 11-path at threshold 3") {
    const auto space = coarse::graph_metric(coarse::path_graph(11));
    const auto res = coarse::minimax_measure(space, 3.0);
    const auto& cert = res.certificate;

    CHECK(cert.threshold == 3.0);
    CHECK(cert.value == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(res.duality_gap <= 1e-7);

    double total = 0.0;
    for (std::size_t q = 0; q < cert.pairs.size(); ++q) {
        const auto [u, v] = cert.pairs[q];
        CHECK(u < v);
        CHECK(space.distance(u, v) >= 3.0);
        CHECK(cert.mu[q] >= 0.0);
        total += cert.mu[q];
        // The optimal measure cannot afford pairs farther than the cheapest
        // far distance: every supported pair sits exactly at distance 3.
        if (cert.mu[q] > 1e-12) CHECK(space.distance(u, v) == 3.0);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

    // Cross-check optimality: the certificate measure cannot be moved by
    // more than the value (up to LP tolerance).
    const auto replay = coarse::max_l1_average(space, cert.pairs, cert.mu);
    CHECK(std::abs(replay.value - cert.value) <= 1e-7);
}

TEST_CASE("minimax_measure on the five-cycle at threshold 2") {
    const auto space = coarse::graph_metric(coarse::cycle_graph(5));
    const auto res = coarse::minimax_measure(space, 2.0);
    CHECK(res.certificate.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(res.duality_gap <= 1e-7);
    CHECK(res.certificate.value >= 0.0);
    CHECK(res.certificate.value <= space.diameter() + 1e-12);

    // The worst-case map's cut weights form a dominated semimetric whose far
    // pairs are all moved by at least the value.
    const coarse::CutSystem cs(5);
    REQUIRE(static_cast<int>(res.cut_weights.size()) == cs.count());
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) {
            const double dprime = cut_distance(cs, res.cut_weights, u, v);
            CHECK(dprime <= space.distance(u, v) + 1e-7);
            if (space.distance(u, v) >= 2.0)
                CHECK(dprime >= res.certificate.value - 1e-7);
        }
}

TEST_CASE("minimax_measure threshold and size guards") {
    const auto space = coarse::graph_metric(coarse::path_graph(4));
    CHECK_THROWS_AS(coarse::minimax_measure(space, 4.0), coarse::DomainError);
    const auto big = coarse::graph_metric(coarse::path_graph(15));
    CHECK_THROWS_AS(coarse::minimax_measure(big, 3.0), coarse::DomainError);
}

TEST_CASE("minimax value weakly increases with the threshold") {
    const auto space = coarse::graph_metric(coarse::cycle_graph(9));
    double prev = 0.0;
    for (double t : {1.0, 2.0, 3.0, 4.0}) {
        const auto res = coarse::minimax_measure(space, t);
        CHECK(res.certificate.value >= prev - 1e-9);
        CHECK(res.certificate.value >= t - 1e-9); // cycles embed in L1 isometrically
        prev = res.certificate.value;
    }
}

TEST_CASE("cut_sample_maps emits deterministic unit-Lipschitz L1 maps") {
    const auto space = coarse::graph_metric(coarse::cycle_graph(5));
    const auto maps = coarse::cut_sample_maps(space, 8, 99);
    REQUIRE(maps.size() == 8);

    const auto again = coarse::cut_sample_maps(space, 8, 99);
    for (std::size_t i = 0; i < maps.size(); ++i)
        CHECK(maps[i].points() == again[i].points());

    const auto other = coarse::cut_sample_maps(space, 8, 100);
    bool any_differ = false;
    for (std::size_t i = 0; i < maps.size(); ++i)
        if (maps[i].points() != other[i].points()) any_differ = true;
    CHECK(any_differ);

    for (const auto& cloud : maps) {
        CHECK(cloud.size() == 5);
        CHECK(cloud.p() == 1.0);
        CHECK(cloud.dimension() == 10); // 2n sampled cuts
        CHECK(measured_lip(cloud, space) == doctest::Approx(1.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(coarse::cut_sample_maps(space, 0, 1), coarse::DomainError);
}

TEST_CASE("sampled maps respect the certificate value") {
    const auto space = coarse::graph_metric(coarse::cycle_graph(5));
    const auto res = coarse::minimax_measure(space, 2.0);
    for (const auto& cloud : coarse::cut_sample_maps(space, 64, 7)) {
        const auto avg = coarse::certificate_average(cloud, res.certificate, space);
        CHECK(avg.lip == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(avg.average <= res.certificate.value + 1e-7);
        CHECK(avg.ratio <= res.certificate.value + 1e-7);
    }
}

} // TEST_SUITE("game")
