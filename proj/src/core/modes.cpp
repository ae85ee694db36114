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

#include <cmath>
#include <string>

#include "swarray/error.hpp"
#include "swarray/modes.hpp"

namespace swarray
{
    bool is_valid_mode(int s, int m, int n) noexcept
    {
        return (s == 1 || s == 2) && n >= 1 && m >= -n && m <= n;
    }

    int mode_index_from_triple(int s, int m, int n)
    {
        if (!is_valid_mode(s, m, n))
            throw DomainError("invalid mode triple (s=" + std::to_string(s) + ", m=" + std::to_string(m) +
                              ", n=" + std::to_string(n) + ")");
        return 2 * (n * (n + 1) + m - 1) + s;
    }

    ModeIndex triple_from_mode_index(int j)
    {
        if (j < 1)
            throw DomainError("mode index must be >= 1, got " + std::to_string(j));
        ModeIndex t;
        t.s = (j & 1) ? 1 : 2;
        int h = (j - t.s) / 2 + 1; // n(n+1) + m
        int n = (int)std::sqrt((double)h);
        // Guard the floating-point square root against off-by-one at perfect squares
        while (n * n > h)
            --n;
        while ((n + 1) * (n + 1) <= h)
            ++n;
        t.n = n;
        t.m = h - n * (n + 1);
        return t;
    }

    int conjugate_m_index(int j)
    {
        return j - 4 * triple_from_mode_index(j).m;
    }

    int mode_count(int N)
    {
        if (N < 1)
            throw DomainError("truncation order must be >= 1, got " + std::to_string(N));
        return 2 * N * (N + 2);
    }

    // ------------------------------------------------------------------------
    // Legendre functions
    //
    // The recurrences run on G(n,a) = P(n,a) / sin^a(theta), a polynomial in x = cos(theta),
    // together with its first and second x-derivatives. All quantities are then assembled
    // from G with explicit powers of sin(theta), so nothing is divided by sin(theta).

    namespace
    {
        void check_theta(double theta)
        {
            if (!(theta >= 0.0 && theta <= pi))
                throw DomainError("theta must lie in [0, pi], got " + std::to_string(theta));
        }

        inline double ipow(double v, int e)
        {
            double r = 1.0;
            for (int i = 0; i < e; ++i)
                r *= v;
            return r;
        }

        LegendreBundle assemble(int a, int m_signed, double x, double s, double G, double G1, double G2)
        {
            LegendreBundle b;
            const double sa = ipow(s, a);
            b.p = sa * G;

            if (a == 0)
            {
                b.dp = -s * G1;
                b.d2p = -x * G1 + s * s * G2;
            }
            else
            {
                const double sa1 = ipow(s, a - 1);
                b.dp = a * sa1 * x * G - sa * s * G1;
                double t = -a * sa * G - (2 * a + 1) * sa * x * G1 + sa * s * s * G2;
                if (a >= 2)
                    t += a * (a - 1) * ipow(s, a - 2) * x * x * G;
                b.d2p = t;
            }

            if (m_signed != 0)
            {
                const double mm = (double)m_signed;
                b.p_over_sin = mm * ipow(s, a - 1) * G;
                double t = -sa * G1;
                if (a >= 2)
                    t += (a - 1) * ipow(s, a - 2) * x * G;
                b.d_p_over_sin = mm * t;
            }
            return b;
        }

        // Seed c(a) = G(a,a) = sqrt((2a+1)/2 / (2a)!) (2a-1)!!
        double seed(int a)
        {
            double c = std::sqrt(0.5);
            for (int k = 1; k <= a; ++k)
                c *= std::sqrt((2.0 * k + 1.0) / (2.0 * k));
            return c;
        }

        // Runs the upward recurrence for fixed a from n = a to n = N and calls f(n, G, G', G'')
        template <typename Fn>
        void recur(int a, int N, double x, Fn &&f)
        {
            double g0 = 0.0, g1 = 0.0, g2 = 0.0;           // n - 2
            double h0 = seed(a), h1 = 0.0, h2 = 0.0;       // n - 1, starts at n = a
            f(a, h0, h1, h2);
            const double aa = (double)a * a;
            for (int n = a + 1; n <= N; ++n)
            {
                const double nn = (double)n * n;
                const double an = std::sqrt((4.0 * nn - 1.0) / (nn - aa));
                const double bn = std::sqrt((2.0 * n + 1.0) * ((n - 1.0) * (n - 1.0) - aa) / ((2.0 * n - 3.0) * (nn - aa)));
                const double v0 = an * x * h0 - bn * g0;
                const double v1 = an * (h0 + x * h1) - bn * g1;
                const double v2 = an * (2.0 * h1 + x * h2) - bn * g2;
                g0 = h0, g1 = h1, g2 = h2;
                h0 = v0, h1 = v1, h2 = v2;
                f(n, h0, h1, h2);
            }
        }
    } // namespace

    LegendreBundle legendre_bundle(int n, int m, double theta)
    {
        if (n < 0 || m < -n || m > n)
            throw DomainError("invalid Legendre degree/order (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
        check_theta(theta);
        const int a = std::abs(m);
        const double x = std::cos(theta), s = std::sin(theta);
        LegendreBundle out;
        recur(a, n, x, [&](int k, double G, double G1, double G2)
              { if (k == n) out = assemble(a, m, x, s, G, G1, G2); });
        return out;
    }

    LegendreTable::LegendreTable(int N, double theta) : N_(N), theta_(theta)
    {
        if (N < 0)
            throw DomainError("Legendre table order must be >= 0");
        check_theta(theta);
        const double x = std::cos(theta), s = std::sin(theta);
        data_.resize((size_t)(N + 1) * (N + 2) / 2);
        for (int a = 0; a <= N; ++a)
            recur(a, N, x, [&](int n, double G, double G1, double G2)
                  { data_[(size_t)n * (n + 1) / 2 + a] = assemble(a, a, x, s, G, G1, G2); });
    }

    LegendreBundle LegendreTable::operator()(int n, int m) const
    {
        const int a = std::abs(m);
        LegendreBundle b = data_[(size_t)n * (n + 1) / 2 + a];
        if (m < 0)
            b.p_over_sin = -b.p_over_sin, b.d_p_over_sin = -b.d_p_over_sin;
        return b;
    }

    // ------------------------------------------------------------------------
    // Radial functions

    namespace
    {
        cdouble zfun(int c, int n, double x)
        {
            const double j = std::sph_bessel((unsigned)n, x);
            if (c == 1)
                return {j, 0.0};
            const double y = std::sph_neumann((unsigned)n, x);
            return c == 3 ? cdouble(j, y) : cdouble(j, -y);
        }

        void check_radial(int c, int n, double kr)
        {
            if (c != 1 && c != 3 && c != 4)
                throw DomainError("radial function kind must be 1, 3 or 4, got " + std::to_string(c));
            if (n < 0)
                throw DomainError("radial function degree must be >= 0");
            if (!(kr > 0.0) || !std::isfinite(kr))
                throw DomainError("radial argument kr must be positive, got " + std::to_string(kr));
        }
    } // namespace

    cdouble radial_function(int c, int n, double kr)
    {
        check_radial(c, n, kr);
        return zfun(c, n, kr);
    }

    RadialValues radial_functions(int c, int n, double kr)
    {
        check_radial(c, n, kr);
        if (n < 1)
            throw DomainError("radial derivative term requires n >= 1");
        RadialValues v;
        v.r1 = zfun(c, n, kr);
        v.r1_over_kr = v.r1 / kr;
        v.r2 = zfun(c, n - 1, kr) - (double)n * v.r1_over_kr;
        return v;
    }

} // namespace swarray
