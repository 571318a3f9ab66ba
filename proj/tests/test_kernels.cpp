#include <doctest.h>

#include <random>
#include <vector>

#include "gsp/kernels.hpp"

using namespace gsp;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::vector<double> v(n);
    for (double& x : v) x = uni(rng);
    return v;
}

}  // namespace

TEST_CASE("scalar kernels: known values") {
    const auto& k = kernels::scalar();
    const std::vector<double> x{1, 2, 3}, y{4, 5, 6};
    CHECK(k.dot(x.data(), y.data(), 3) == doctest::Approx(32.0));

    std::vector<double> z = y;
    k.axpy(3, 2.0, x.data(), z.data());
    CHECK(z[0] == doctest::Approx(6.0));
    CHECK(z[2] == doctest::Approx(12.0));

    std::vector<double> s = x;
    k.scal(3, -0.5, s.data());
    CHECK(s[1] == doctest::Approx(-1.0));
}

TEST_CASE("plane rotation preserves norms") {
    const auto& k = kernels::scalar();
    std::mt19937_64 rng(7);
    auto x = random_vec(17, rng), y = random_vec(17, rng);
    const double before =
        k.dot(x.data(), x.data(), 17) + k.dot(y.data(), y.data(), 17);
    const double c = std::cos(0.3), s = std::sin(0.3);
    k.plane_rot(17, x.data(), y.data(), c, s);
    const double after =
        k.dot(x.data(), x.data(), 17) + k.dot(y.data(), y.data(), 17);
    CHECK(after == doctest::Approx(before).epsilon(1e-13));
}

TEST_CASE("avx2 variants match scalar reference") {
    if (!kernels::avx2_available()) return;
    const auto& sk = kernels::scalar();
    const auto& vk = kernels::avx2();
    std::mt19937_64 rng(42);
    // lengths straddling all remainder cases
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 33u, 100u, 1024u}) {
        auto x = random_vec(n, rng), y = random_vec(n, rng);
        const double tol = 1e-13 * (1.0 + n);

        CHECK(vk.dot(x.data(), y.data(), n) ==
              doctest::Approx(sk.dot(x.data(), y.data(), n)).epsilon(tol));

        auto ys = y, yv = y;
        sk.axpy(n, 1.7, x.data(), ys.data());
        vk.axpy(n, 1.7, x.data(), yv.data());
        for (std::size_t i = 0; i < n; ++i)
            CHECK(yv[i] == doctest::Approx(ys[i]).epsilon(1e-14));

        auto xs = x, xv = x;
        sk.scal(n, -2.3, xs.data());
        vk.scal(n, -2.3, xv.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(xv[i] == xs[i]);

        auto xrs = x, yrs = y, xrv = x, yrv = y;
        const double c = 0.8, s2 = 0.6;
        sk.plane_rot(n, xrs.data(), yrs.data(), c, s2);
        vk.plane_rot(n, xrv.data(), yrv.data(), c, s2);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(xrv[i] == doctest::Approx(xrs[i]).epsilon(1e-14));
            CHECK(yrv[i] == doctest::Approx(yrs[i]).epsilon(1e-14));
        }
    }
}

TEST_CASE("active kernels are one of the known variants") {
    const auto& k = kernels::active();
    const bool known = std::string(k.name) == "scalar" || std::string(k.name) == "avx2";
    CHECK(known);
}
