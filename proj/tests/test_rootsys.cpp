#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "weylforge/error.hpp"
#include "weylforge/rootsys.hpp"

using namespace weylforge;

namespace {

oracle::Mat cartan_of(const RootSystem& sys) {
    oracle::Mat a(sys.rank(), oracle::Vec(sys.rank()));
    for (int i = 0; i < sys.rank(); ++i)
        for (int j = 0; j < sys.rank(); ++j) a[i][j] = sys.cartan(i, j);
    return a;
}

const std::vector<std::pair<Family, int>> kAllTypes = {
    {Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::A, 5}, {Family::B, 2}, {Family::B, 3},
    {Family::B, 4}, {Family::B, 6}, {Family::C, 2}, {Family::C, 3}, {Family::C, 5}, {Family::D, 4},
    {Family::D, 5}, {Family::D, 6}, {Family::E, 6}, {Family::E, 7}, {Family::E, 8}, {Family::F, 4},
    {Family::G, 2}};

}  // namespace

TEST_CASE("small root counts") {
    CHECK(build_root_system(Family::A, 1)->positive_roots().size() == 1);
    CHECK(build_root_system(Family::B, 3)->positive_roots().size() == 9);
    auto g2 = build_root_system(Family::G, 2);
    CHECK(g2->positive_roots().size() == 6);
    CHECK(g2->coxeter_number() == 6);
    CHECK(g2->pairing(g2->rho(), g2->highest_short_root()) == 5);
}

TEST_CASE("hand-entered Cartan matrices") {
    CHECK(cartan_of(*build_root_system(Family::G, 2)) == oracle::Mat{{2, -3}, {-1, 2}});
    CHECK(cartan_of(*build_root_system(Family::B, 3)) == oracle::Mat{{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}});
    CHECK(cartan_of(*build_root_system(Family::C, 3)) == oracle::Mat{{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}});
    CHECK(cartan_of(*build_root_system(Family::F, 4)) ==
          oracle::Mat{{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}});
}

TEST_CASE("positive roots match reflection closure for every type") {
    for (auto [f, n] : kAllTypes) {
        auto sys = build_root_system(f, n);
        CAPTURE(sys->name());
        CHECK(sys->positive_roots().size() == oracle::positive_root_count(cartan_of(*sys)));
        for (const Root& r : sys->positive_roots())
            for (int i = 0; i < n; ++i) CHECK(r.simple[i] >= 0);
        for (int i = 0; i < n; ++i) {
            CHECK(sys->cartan(i, i) == 2);
            CHECK(sys->pairing(sys->rho(), sys->simple_root(i)) == 1);
            for (int j = 0; j < n; ++j)
                if (i != j) CHECK(sys->cartan(i, j) <= 0);
        }
    }
}

TEST_CASE("Coxeter numbers and Weyl group orders") {
    const std::map<std::string, std::pair<int, std::int64_t>> expected = {
        {"A1", {2, 2}},      {"A3", {4, 24}},       {"B3", {6, 48}},          {"C3", {6, 48}},
        {"D4", {6, 192}},    {"E6", {12, 51840}},   {"E7", {18, 2903040}},    {"E8", {30, 696729600}},
        {"F4", {12, 1152}},  {"G2", {6, 12}},       {"B6", {12, 46080}},
    };
    for (const auto& [name, hw] : expected) {
        auto sys = parse_system(name);
        CAPTURE(name);
        CHECK(sys->coxeter_number() == hw.first);
        CHECK(sys->weyl_group_order() == hw.second);
        // |Phi| = n h
        CHECK(2 * sys->positive_roots().size() == static_cast<std::size_t>(sys->rank() * hw.first));
    }
}

TEST_CASE("invalid types are rejected") {
    for (auto [f, n] : std::vector<std::pair<Family, int>>{
             {Family::D, 3}, {Family::D, 2}, {Family::B, 1}, {Family::E, 5}, {Family::F, 3}, {Family::G, 3}, {Family::A, 0}}) {
        try {
            build_root_system(f, n);
            FAIL("accepted an invalid type");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::InvalidFamilyRank);
        }
    }
    CHECK_THROWS_AS(parse_system("X3"), Error);
    CHECK_THROWS_AS(parse_system("B"), Error);
}

TEST_CASE("pairing examples and mismatch") {
    auto b3 = build_root_system(Family::B, 3);
    CHECK(b3->pairing(b3->weight({0, 2, 0}), b3->simple_root(1)) == 2);
    auto c3 = build_root_system(Family::C, 3);
    CHECK_THROWS_AS(b3->pairing(c3->rho(), b3->simple_root(0)), Error);
    CHECK_THROWS_AS(b3->rho() + c3->rho(), Error);
}

TEST_CASE("pairing is additive") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coord(-6, 6);
    for (auto [f, n] : kAllTypes) {
        auto sys = build_root_system(f, n);
        for (int t = 0; t < 20; ++t) {
            Weight a = sys->zero(), b = sys->zero();
            for (int i = 0; i < n; ++i) {
                a[i] = coord(rng);
                b[i] = coord(rng);
            }
            const Root& r = sys->positive_roots()[rng() % sys->positive_roots().size()];
            CHECK(sys->pairing(a + b, r) == sys->pairing(a, r) + sys->pairing(b, r));
        }
    }
}

TEST_CASE("coroot pairing of a root with itself is 2") {
    for (auto [f, n] : kAllTypes) {
        auto sys = build_root_system(f, n);
        for (const Root& r : sys->positive_roots()) CHECK(sys->pairing(r.weight, r) == 2);
    }
}

TEST_CASE("epsilon coordinates") {
    auto b3 = build_root_system(Family::B, 3);
    Weight lam = b3->rho().scaled(2) - b3->fundamental(0);
    CHECK(omega_to_epsilon(*b3, lam).doubled == std::vector<std::int64_t>{8, 6, 2});
    CHECK(omega_to_epsilon(*b3, b3->fundamental(2)).doubled == std::vector<std::int64_t>{1, 1, 1});
    CHECK(epsilon_to_omega(*b3, EpsilonCoords{{0, 0, 0}}) == b3->zero());
    CHECK_THROWS_AS(omega_to_epsilon(*parse_system("A3"), parse_system("A3")->rho()), Error);
    CHECK_THROWS_AS(epsilon_to_omega(*b3, EpsilonCoords{{1, 0, 0}}), Error);
    for (int n = 3; n <= 6; ++n) {
        auto sys = build_root_system(Family::B, n);
        Weight l = sys->rho().scaled(2) - sys->fundamental(0);
        std::vector<std::int64_t> expect{2 * (2 * n - 2)};
        for (int s = 2; s <= n; ++s) expect.push_back(2 * (2 * (n - s) + 1));
        CHECK(omega_to_epsilon(*sys, l).doubled == expect);
    }
}

TEST_CASE("epsilon round trip and simple roots in epsilon form") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coord(-9, 9);
    int cases = 0;
    for (Family f : {Family::B, Family::C, Family::D}) {
        for (int n = (f == Family::D ? 4 : 2); n <= 8; ++n) {
            auto sys = build_root_system(f, n);
            for (int t = 0; t < 60; ++t, ++cases) {
                Weight w = sys->zero();
                for (int i = 0; i < n; ++i) w[i] = coord(rng);
                CHECK(epsilon_to_omega(*sys, omega_to_epsilon(*sys, w)) == w);
            }
            // alpha_i = e_i - e_{i+1} for i < n in all three families
            for (int i = 0; i + 1 < n; ++i) {
                auto e = omega_to_epsilon(*sys, sys->simple_root(i).weight).doubled;
                std::vector<std::int64_t> expect(n, 0);
                expect[i] = 2;
                expect[i + 1] = -2;
                if (f == Family::D && i == n - 2) continue;
                CHECK(e == expect);
            }
            std::vector<std::int64_t> last(n, 0);
            if (f == Family::B) last[n - 1] = 2;
            if (f == Family::C) last[n - 1] = 4;
            if (f == Family::D) last[n - 2] = last[n - 1] = 2;
            CHECK(omega_to_epsilon(*sys, sys->simple_root(n - 1).weight).doubled == last);
        }
    }
    CHECK(cases >= 1000);
}

TEST_CASE("dominant weights below") {
    auto b3 = build_root_system(Family::B, 3);
    std::vector<Weight> expect = {b3->weight({0, 2, 0}), b3->weight({1, 0, 2}), b3->weight({1, 1, 0}),
                                  b3->weight({0, 0, 2}), b3->weight({2, 0, 0}), b3->weight({0, 1, 0}),
                                  b3->weight({1, 0, 0}), b3->weight({0, 0, 0})};
    CHECK(dominant_weights_below(*b3, b3->weight({0, 2, 0})) == expect);
    CHECK(dominant_weights_below(*b3, b3->zero()) == std::vector<Weight>{b3->zero()});
    auto a1 = build_root_system(Family::A, 1);
    CHECK(dominant_weights_below(*a1, a1->weight({2})) == std::vector<Weight>{a1->weight({2}), a1->zero()});
    CHECK_THROWS_AS(dominant_weights_below(*b3, b3->weight({-1, 0, 0})), Error);
}

TEST_CASE("dominant weights below agrees with a window scan") {
    for (auto name : {"B3", "C3", "G2", "A3", "D4"}) {
        auto sys = parse_system(name);
        const int n = sys->rank();
        const Weight top = sys->rho().scaled(2);
        auto listed = dominant_weights_below(*sys, top);
        // Every dominant weight with coordinates up to the window size and in the
        // right coset, checked by solving for simple-root coordinates directly.
        std::set<Weight> scan;
        std::vector<std::int64_t> c(n, 0);
        const int bound = 12;
        while (true) {
            Weight w = sys->weight(std::span<const std::int64_t>(c.data(), n));
            auto rc = sys->root_coordinates(top - w);
            if (rc && std::all_of(rc->begin(), rc->begin() + n, [](std::int64_t x) { return x >= 0; }))
                scan.insert(w);
            int k = 0;
            while (k < n && ++c[k] > bound) c[k++] = 0;
            if (k == n) break;
        }
        CHECK(std::set<Weight>(listed.begin(), listed.end()) == scan);
        for (std::size_t i = 1; i < listed.size(); ++i)
            CHECK_FALSE(sys->dominated_by(listed[i - 1], listed[i]));
    }
}

TEST_CASE("restricted weights") {
    auto b3 = build_root_system(Family::B, 3);
    auto c3 = build_root_system(Family::C, 3);
    CHECK(is_restricted(b3->weight({1, 1, 1}), 2, 1));
    CHECK(is_restricted(c3->weight({2, 1, 2}), 3, 1));
    CHECK_FALSE(is_restricted(c3->weight({0, 3, 0}), 3, 1));
    CHECK(is_restricted(c3->weight({0, 3, 0}), 3, 2));
}

TEST_CASE("checked arithmetic overflows loudly") {
    auto a1 = build_root_system(Family::A, 1);
    Weight big = a1->weight({std::numeric_limits<std::int64_t>::max()});
    CHECK_THROWS_AS(big + a1->weight({1}), Error);
    CHECK_THROWS_AS(big.scaled(2), Error);
}
