// SPDX-License-Identifier: Apache-2.0
#include "isacaf/constellation.hpp"

#include "support.hpp"

#include <filesystem>
#include <fstream>

using namespace isacaf;
using testing::rel_err;

TEST_CASE("QPSK points are the four axis points") {
    const auto c = make_psk(4);
    REQUIRE(c.size() == 4);
    const cplx expect[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(c.points()[i] - expect[i]) == 0.0);
    CHECK(c.name() == "QPSK");
}

TEST_CASE("PSK kurtosis is one") {
    for (int m : {2, 3, 4, 8, 16, 64}) {
        CAPTURE(m);
        const auto c = make_psk(m);
        const auto r = moments(c);
        CHECK(std::abs(r.kurtosis - 1.0) < 1e-12);
        CHECK(std::abs(r.fourth_moment - 1.0) < 1e-12);
        for (const auto& p : c.points()) CHECK(std::abs(std::abs(p) - 1.0) < 1e-15);
    }
}

TEST_CASE("BPSK violates the zero pseudo-variance assumption") {
    const auto r = moments(make_psk(2));
    CHECK(std::abs(r.pseudo_variance - cplx(1.0, 0.0)) < 1e-15);
    CHECK_FALSE(r.assumption1_ok);
    CHECK(make_psk(2).name() == "BPSK");
}

TEST_CASE("PSK order below two is rejected") {
    CHECK_THROWS_CODE(make_psk(1), ErrorCode::InvalidOrder);
    CHECK_THROWS_CODE(make_psk(0), ErrorCode::InvalidOrder);
    CHECK_THROWS_CODE(make_psk(-4), ErrorCode::InvalidOrder);
}

TEST_CASE("QAM moments") {
    SUBCASE("4-QAM matches QPSK") {
        const auto a = moments(make_qam(4));
        const auto b = moments(make_psk(4));
        CHECK(std::abs(a.kurtosis - b.kurtosis) < 1e-12);
        CHECK(std::abs(a.power - 1.0) < 1e-12);
        CHECK(a.assumption1_ok);
    }
    SUBCASE("16-QAM") {
        const auto c = make_qam(16);
        const auto r = moments(c);
        CHECK(std::abs(r.kurtosis - 1.32) < 1e-12);
        CHECK(std::abs(r.mean) < 1e-15);
        CHECK(std::abs(r.pseudo_variance) < 1e-15);
        CHECK(std::abs(r.power - 1.0) < 1e-12);
        CHECK(r.assumption1_ok);
        // odd-integer grid scaled by 1/sqrt(10)
        CHECK(std::abs(c.points()[0] - cplx(-3.0, -3.0) / std::sqrt(10.0)) < 1e-15);
    }
    SUBCASE("64-QAM and 256-QAM") {
        CHECK(std::abs(moments(make_qam(64)).kurtosis - 1.380952380952381) < 1e-12);
        CHECK(std::abs(moments(make_qam(256)).kurtosis - 1.3953) < 1e-4);
    }
}

TEST_CASE("QAM order must be a square of at least four") {
    for (int m : {0, 1, 2, 8, 32, 15, -16}) {
        CAPTURE(m);
        CHECK_THROWS_CODE(make_qam(m), ErrorCode::UnsupportedOrder);
    }
}

TEST_CASE("QPSK moment report") {
    const auto r = moments(make_psk(4), 1e-9);
    CHECK(std::abs(r.mean) < 1e-15);
    CHECK(std::abs(r.power - 1.0) < 1e-15);
    CHECK(std::abs(r.pseudo_variance) < 1e-15);
    CHECK(std::abs(r.kurtosis - 1.0) < 1e-15);
    CHECK(r.assumption1_ok);
    CHECK(r.tolerance == 1e-9);
}

TEST_CASE("kurtosis is at least one for zero-mean unit-power alphabets") {
    isacaf::SplitMix64 g(99);
    for (int trial = 0; trial < 50; ++trial) {
        // random symmetric alphabet {+-p_i, +-j p_i} has zero mean and zero pseudo-variance
        std::vector<cplx> pts;
        const int base = 1 + static_cast<int>(g.bounded(4));
        for (int i = 0; i < base; ++i) {
            const cplx p(g.uniform() + 0.1, g.uniform());
            for (int r = 0; r < 4; ++r) pts.push_back(p * std::pow(cplx(0, 1), r));
        }
        const auto c = Constellation(pts, "rand").normalized();
        const auto m = moments(c);
        CAPTURE(trial);
        CHECK(m.assumption1_ok);
        CHECK(m.kurtosis >= 1.0 - 1e-12);
    }
}

TEST_CASE("QAM kurtosis stays inside [1, 2]") {
    for (int m : {4, 16, 64}) {
        const double k = moments(make_qam(m)).kurtosis;
        CHECK(k >= 1.0);
        CHECK(k <= 2.0);
    }
}

TEST_CASE("moments are invariant under a global phase rotation") {
    for (const auto& c : {make_qam(16), make_psk(8), make_psk(2)}) {
        for (double theta : {0.3, 1.1, 2.9}) {
            const cplx rot = std::polar(1.0, theta);
            std::vector<cplx> pts;
            for (const auto& p : c.points()) pts.push_back(p * rot);
            const auto a = moments(c);
            const auto b = moments(Constellation(pts, "rot"));
            CHECK(std::abs(std::abs(a.mean) - std::abs(b.mean)) < 1e-12);
            CHECK(std::abs(a.power - b.power) < 1e-12);
            CHECK(std::abs(a.kurtosis - b.kurtosis) < 1e-12);
            CHECK(std::abs(std::abs(a.pseudo_variance) - std::abs(b.pseudo_variance)) < 1e-12);
        }
    }
}

TEST_CASE("construction rejects bad point sets") {
    CHECK_THROWS_CODE(Constellation({}, "empty"), ErrorCode::InvalidArgument);
    CHECK_THROWS_CODE(Constellation({{1, 0}, {1, 0}}, "dup"), ErrorCode::InvalidArgument);
    CHECK_THROWS_CODE(Constellation({{NAN, 0}}, "nan"), ErrorCode::InvalidArgument);
}

TEST_CASE("non-normalized alphabets are reported, not rejected") {
    const Constellation c({{2, 0}, {-2, 0}, {0, 2}, {0, -2}}, "big");
    const auto r = moments(c);
    CHECK(std::abs(r.power - 4.0) < 1e-12);
    CHECK_FALSE(r.assumption1_ok);
    CHECK(std::abs(r.kurtosis - 1.0) < 1e-12);
    CHECK(moments(c.normalized()).assumption1_ok);
}

TEST_CASE("sample_symbols is deterministic") {
    const auto c = make_psk(4);
    const auto a = sample_symbols(c, 8, 1);
    const auto b = sample_symbols(c, 8, 1);
    CHECK(a == b);
    CHECK(a != sample_symbols(c, 8, 2));
    for (const auto& s : a)
        CHECK(std::find(c.points().begin(), c.points().end(), s) != c.points().end());
}

TEST_CASE("sample statistics") {
    SUBCASE("QPSK mean") {
        const auto s = sample_symbols(make_psk(4), 100000, 7);
        cplx mean{};
        for (const auto& v : s) mean += v;
        mean /= static_cast<double>(s.size());
        CHECK(std::abs(mean) <= 0.02);
    }
    SUBCASE("16-QAM fourth moment") {
        const auto s = sample_symbols(make_qam(16), 100000, 7);
        double m4 = 0.0;
        for (const auto& v : s) m4 += std::norm(v) * std::norm(v);
        m4 /= static_cast<double>(s.size());
        CHECK(std::abs(m4 - 1.32) <= 0.03);
    }
    SUBCASE("every point is drawn near 1/M of the time") {
        const auto c = make_qam(16);
        const auto s = sample_symbols(c, 160000, 3);
        for (const auto& p : c.points()) {
            const auto cnt = std::count(s.begin(), s.end(), p);
            CHECK(std::abs(static_cast<double>(cnt) - 10000.0) < 500.0);
        }
    }
}

TEST_CASE("constellation names") {
    CHECK(constellation_from_name("qpsk").size() == 4);
    CHECK(constellation_from_name("BPSK").size() == 2);
    CHECK(constellation_from_name("16qam").size() == 16);
    CHECK(constellation_from_name("16-QAM").size() == 16);
    CHECK(constellation_from_name("qam64").size() == 64);
    CHECK(constellation_from_name("16psk").size() == 16);
    CHECK(constellation_from_name("psk:8").size() == 8);
    CHECK(std::abs(moments(constellation_from_name("16psk")).kurtosis - 1.0) < 1e-12);
    CHECK_THROWS_CODE(constellation_from_name("ask4"), ErrorCode::InvalidArgument);
    CHECK_THROWS_CODE(constellation_from_name("8qam"), ErrorCode::UnsupportedOrder);
}

TEST_CASE("constellation import") {
    const auto dir = std::filesystem::temp_directory_path() / "isacaf_test_const";
    std::filesystem::create_directories(dir);
    const auto path = dir / "pts.txt";
    {
        std::ofstream f(path);
        f << "# four points\n2 0\n0 2\n-2 0  # comment\n0 -2\n\n";
    }
    const auto raw = load_constellation(path, false);
    CHECK(raw.size() == 4);
    CHECK(std::abs(moments(raw).power - 4.0) < 1e-12);
    CHECK(std::abs(moments(load_constellation(path, true)).power - 1.0) < 1e-12);

    {
        std::ofstream f(path);
        f << "1 0\nnot a number\n";
    }
    CHECK_THROWS_CODE(load_constellation(path, false), ErrorCode::Parse);
    CHECK_THROWS_CODE(load_constellation(dir / "missing.txt", false), ErrorCode::Io);
    std::filesystem::remove_all(dir);
}
