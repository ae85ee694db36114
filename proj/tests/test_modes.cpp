// SPDX-License-Identifier: Apache-2.0
//
// swarray - spherical-wave array models, Fisher information and placement
// Copyright (C) 2026 The swarray authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "swarray/modes.hpp"
#include "test_util.hpp"

using namespace swarray;
using test_util::rel;

namespace
{
    // Normalized P(n, m)(x) from the Rodrigues polynomial in long double
    long double rodrigues(int n, int m, long double x)
    {
        // P_n(x) = 2^-n sum_k (-1)^k C(n,k) C(2n-2k, n) x^(n-2k)
        std::vector<long double> c(n + 1, 0.0L);
        auto binom = [](int a, int b)
        {
            long double r = 1.0L;
            for (int i = 1; i <= b; ++i)
                r = r * (a - b + i) / i;
            return r;
        };
        for (int k = 0; 2 * k <= n; ++k)
            c[n - 2 * k] = ((k & 1) ? -1.0L : 1.0L) * binom(n, k) * binom(2 * n - 2 * k, n) / std::pow(2.0L, n);
        for (int d = 0; d < m; ++d)
            for (int i = 0; i < n; ++i)
                c[i] = c[i + 1] * (i + 1), c[i + 1] = 0.0L;
        long double v = 0.0L;
        for (int i = n; i >= 0; --i)
            v = v * x + c[i];
        long double fr = 1.0L;
        for (int i = n - m + 1; i <= n + m; ++i)
            fr /= i;
        return std::sqrt((2 * n + 1) / 2.0L * fr) * std::pow(1.0L - x * x, m / 2.0L) * v;
    }

    double fd(double (*f)(int, int, double), int n, int m, double t, double h)
    {
        return (-f(n, m, t + 2 * h) + 8 * f(n, m, t + h) - 8 * f(n, m, t - h) + f(n, m, t - 2 * h)) / (12.0 * h);
    }

    double p_of(int n, int m, double t) { return legendre_bundle(n, m, t).p; }
    double dp_of(int n, int m, double t) { return legendre_bundle(n, m, t).dp; }
    double q_of(int n, int m, double t) { return legendre_bundle(n, m, t).p_over_sin; }

    cdouble closed_form(int c, int n, double x)
    {
        const double s = std::sin(x), co = std::cos(x);
        const double j = n == 0 ? s / x : s / (x * x) - co / x;
        const double y = n == 0 ? -co / x : -co / (x * x) - s / x;
        if (c == 1)
            return j;
        return c == 3 ? cdouble(j, y) : cdouble(j, -y);
    }
} // namespace

TEST_CASE("mode index examples")
{
    CHECK(mode_index_from_triple(1, -1, 1) == 1);
    CHECK(mode_index_from_triple(2, 0, 1) == 4);
    CHECK(triple_from_mode_index(1) == ModeIndex{1, -1, 1});
    CHECK(triple_from_mode_index(4) == ModeIndex{2, 0, 1});
    CHECK(mode_count(25) == 1350);
    CHECK(conjugate_m_index(5) == 1);
    CHECK(conjugate_m_index(4) == 4);
}

TEST_CASE("mode index bijection and involution over N = 25")
{
    const int J = mode_count(25);
    std::vector<char> hit(J + 1, 0);
    for (int n = 1; n <= 25; ++n)
        for (int m = -n; m <= n; ++m)
            for (int s = 1; s <= 2; ++s)
            {
                const int j = mode_index_from_triple(s, m, n);
                REQUIRE(j >= 1);
                REQUIRE(j <= J);
                CHECK(!hit[j]);
                hit[j] = 1;
            }
    for (int j = 1; j <= J; ++j)
    {
        const ModeIndex t = triple_from_mode_index(j);
        CHECK(mode_index_from_triple(t) == j);
        const int jh = conjugate_m_index(j);
        CHECK(conjugate_m_index(jh) == j);
        const ModeIndex th = triple_from_mode_index(jh);
        CHECK(th.s == t.s);
        CHECK(th.n == t.n);
        CHECK(th.m == -t.m);
    }
}

TEST_CASE("invalid mode triples are rejected")
{
    CHECK_THROWS_AS(mode_index_from_triple(1, 2, 1), DomainError);
    CHECK_THROWS_AS(mode_index_from_triple(3, 0, 1), DomainError);
    CHECK_THROWS_AS(mode_index_from_triple(1, 0, 0), DomainError);
    CHECK_THROWS_AS(mode_count(0), DomainError);
}

TEST_CASE("signs")
{
    CHECK(hansen_sign(0) == 1.0);
    CHECK(hansen_sign(1) == -1.0);
    CHECK(hansen_sign(2) == 1.0);
    CHECK(hansen_sign(-1) == 1.0);
    CHECK(hansen_sign(-3) == 1.0);
    CHECK(parity_sign(-3) == -1.0);
}

TEST_CASE("Legendre values match the Rodrigues formula")
{
    for (int n = 1; n <= 18; ++n)
        for (int m = 0; m <= n; ++m)
            for (double t : {0.013, 0.3, 1.0, 1.5707963, 2.2, 3.1})
            {
                const double ref = (double)rodrigues(n, m, std::cos((long double)t));
                const double v = legendre_bundle(n, m, t).p;
                CHECK(std::abs(v - ref) < 1e-11 * std::max(1.0, std::abs(ref)));
            }
}

TEST_CASE("Legendre normalization integrates to one")
{
    // Gauss-Legendre with 40 nodes integrates degree-36 polynomials in cos(theta) exactly
    std::vector<double> x, w;
    {
        const int K = 40;
        for (int i = 0; i < K; ++i)
        {
            double z = std::cos(pi * (i + 0.75) / (K + 0.5));
            for (int it = 0; it < 100; ++it)
            {
                double p0 = 1, p1 = z;
                for (int k = 2; k <= K; ++k)
                {
                    const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                    p0 = p1, p1 = p2;
                }
                const double dp = K * (z * p1 - p0) / (z * z - 1);
                z -= p1 / dp;
            }
            double p0 = 1, p1 = z;
            for (int k = 2; k <= K; ++k)
            {
                const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1, p1 = p2;
            }
            const double dp = K * (z * p1 - p0) / (z * z - 1);
            x.push_back(z), w.push_back(2.0 / ((1 - z * z) * dp * dp));
        }
    }
    for (int n = 1; n <= 15; ++n)
        for (int m = 0; m <= n; ++m)
        {
            double s = 0;
            for (size_t i = 0; i < x.size(); ++i)
            {
                const double p = legendre_bundle(n, m, std::acos(x[i])).p;
                s += w[i] * p * p;
            }
            CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("Legendre derivatives match central differences")
{
    const double h = 1e-4;
    for (int n = 1; n <= 12; ++n)
        for (int m = -n; m <= n; ++m)
            for (double t : {0.2, 0.9, 1.7, 2.8})
            {
                const LegendreBundle b = legendre_bundle(n, m, t);
                CHECK(rel(b.dp, fd(p_of, n, m, t, h), 1.0) < 1e-9);
                CHECK(rel(b.d2p, fd(dp_of, n, m, t, h), 1.0) < 1e-9);
                CHECK(rel(b.d_p_over_sin, fd(q_of, n, m, t, h), 1.0) < 1e-9);
                CHECK(rel(b.p_over_sin, m * b.p / std::sin(t), 1.0) < 1e-12);
            }
}

TEST_CASE("Legendre bundles are finite at the poles and continuous into them")
{
    for (int n = 1; n <= 20; ++n)
        for (int m = -n; m <= n; ++m)
            for (double pole : {0.0, pi})
            {
                const LegendreBundle b = legendre_bundle(n, m, pole);
                for (double v : {b.p, b.dp, b.d2p, b.p_over_sin, b.d_p_over_sin})
                    CHECK(std::isfinite(v));
                const double t = pole == 0.0 ? 1e-7 : pi - 1e-7;
                const LegendreBundle c = legendre_bundle(n, m, t);
                CHECK(std::abs(b.p - c.p) < 1e-5 * std::max(1.0, std::abs(b.p)) * n * n);
                CHECK(std::abs(b.p_over_sin - c.p_over_sin) < 1e-5 * std::max(1.0, std::abs(b.p_over_sin)) * n * n);
                CHECK(std::abs(b.d_p_over_sin - c.d_p_over_sin) < 1e-4 * std::max(1.0, std::abs(b.d_p_over_sin)) * n * n);
            }
    CHECK_THROWS_AS(legendre_bundle(2, 1, -0.1), DomainError);
    CHECK_THROWS_AS(legendre_bundle(2, 1, 3.2), DomainError);
}

TEST_CASE("Legendre table agrees with single evaluations")
{
    for (double t : {0.0, 0.4, 1.3, pi})
    {
        const LegendreTable tab(15, t);
        for (int n = 1; n <= 15; ++n)
            for (int m = -n; m <= n; ++m)
            {
                const LegendreBundle a = tab(n, m), b = legendre_bundle(n, m, t);
                CHECK(a.p == doctest::Approx(b.p).epsilon(1e-13));
                CHECK(a.dp == doctest::Approx(b.dp).epsilon(1e-13));
                CHECK(a.d2p == doctest::Approx(b.d2p).epsilon(1e-13));
                CHECK(a.p_over_sin == doctest::Approx(b.p_over_sin).epsilon(1e-13));
                CHECK(a.d_p_over_sin == doctest::Approx(b.d_p_over_sin).epsilon(1e-13));
            }
    }
}

TEST_CASE("radial functions match closed forms and the derivative identity")
{
    for (double x : {0.3, 1.0, 4.5, 17.0})
        for (int c : {1, 3, 4})
        {
            for (int n : {0, 1})
                CHECK(rel(radial_function(c, n, x), closed_form(c, n, x)) < 1e-13);
            for (int n = 1; n <= 10; ++n)
            {
                const RadialValues r = radial_functions(c, n, x);
                const double h = 1e-5 * x;
                const cdouble d = ((x + h) * radial_function(c, n, x + h) - (x - h) * radial_function(c, n, x - h)) / (2.0 * h) / x;
                CHECK(rel(r.r2, d, 1e-3) < 1e-7);
                CHECK(rel(r.r1_over_kr, r.r1 / x) < 1e-14);
            }
        }
    CHECK_THROWS_AS(radial_function(2, 1, 1.0), DomainError);
}
