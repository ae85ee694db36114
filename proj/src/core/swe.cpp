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
#include "swarray/swe.hpp"

namespace swarray
{
    namespace
    {
        // (-i)^n
        cdouble minus_i_pow(int n)
        {
            switch (((n % 4) + 4) % 4)
            {
            case 0:
                return {1.0, 0.0};
            case 1:
                return {0.0, -1.0};
            case 2:
                return {-1.0, 0.0};
            default:
                return {0.0, 1.0};
            }
        }

        void check_mode(const ModeIndex &t)
        {
            mode_index_from_triple(t.s, t.m, t.n); // throws on invalid triples
        }

        void check_theta(double theta)
        {
            if (!(theta >= 0.0 && theta <= pi))
                throw DomainError("theta must lie in [0, pi], got " + std::to_string(theta));
        }

        // K without the exp(i m phi) factor, from a Legendre bundle; derivative selects dK/dtheta
        void far_field_from_bundle(int s, int m, int n, const LegendreBundle &b, bool derivative, cdouble &kt, cdouble &kp)
        {
            const double nn = (double)n * (n + 1);
            const double pre = std::sqrt(2.0 / nn) * hansen_sign(m);
            const double q = derivative ? b.d_p_over_sin : b.p_over_sin;
            const double d = derivative ? b.d2p : b.dp;
            if (s == 1)
            {
                const cdouble f = pre * minus_i_pow(n + 1);
                kt = f * cdouble(0.0, q);
                kp = -f * d;
            }
            else
            {
                const cdouble f = pre * minus_i_pow(n);
                kt = f * d;
                kp = f * cdouble(0.0, q);
            }
        }

        inline cdouble expi(double a) { return {std::cos(a), std::sin(a)}; }

        // Field prefactor k / sqrt(eta) of the spherical wave expansion
        double expansion_prefactor(double k) { return k / std::sqrt(free_space_admittance); }
    } // namespace

    SphericalVec far_field_K(const ModeIndex &mode, double theta, double phi)
    {
        check_mode(mode);
        check_theta(theta);
        const LegendreBundle b = legendre_bundle(mode.n, mode.m, theta);
        SphericalVec v;
        far_field_from_bundle(mode.s, mode.m, mode.n, b, false, v.theta, v.phi);
        const cdouble e = expi(mode.m * phi);
        v.theta *= e, v.phi *= e;
        return v;
    }

    SphericalVec far_field_K_dphi(const ModeIndex &mode, double theta, double phi)
    {
        SphericalVec v = far_field_K(mode, theta, phi);
        const cdouble f(0.0, (double)mode.m);
        v.theta *= f, v.phi *= f;
        return v;
    }

    SphericalVec far_field_K_dtheta(const ModeIndex &mode, double theta, double phi)
    {
        check_mode(mode);
        check_theta(theta);
        const LegendreBundle b = legendre_bundle(mode.n, mode.m, theta);
        SphericalVec v;
        far_field_from_bundle(mode.s, mode.m, mode.n, b, true, v.theta, v.phi);
        const cdouble e = expi(mode.m * phi);
        v.theta *= e, v.phi *= e;
        return v;
    }

    SphericalVec vswf_F(int c, const ModeIndex &mode, double kr, double theta, double phi)
    {
        check_mode(mode);
        check_theta(theta);
        const RadialValues rv = radial_functions(c, mode.n, kr);
        const LegendreBundle b = legendre_bundle(mode.n, mode.m, theta);
        const double nn = (double)mode.n * (mode.n + 1);
        const cdouble pre = expi(mode.m * phi) * (hansen_sign(mode.m) / std::sqrt(2.0 * pi * nn));
        SphericalVec v;
        if (mode.s == 1)
        {
            v.theta = pre * rv.r1 * cdouble(0.0, b.p_over_sin);
            v.phi = -pre * rv.r1 * b.dp;
        }
        else
        {
            v.r = pre * nn * rv.r1_over_kr * b.p;
            v.theta = pre * rv.r2 * b.dp;
            v.phi = pre * rv.r2 * cdouble(0.0, b.p_over_sin);
        }
        return v;
    }

    FarFieldSet far_field_all(int N, double theta, double phi)
    {
        check_theta(theta);
        const int J = mode_count(N);
        FarFieldSet out;
        out.order = N;
        out.k_theta.resize(J), out.k_phi.resize(J), out.dk_theta.resize(J), out.dk_phi.resize(J), out.m.resize(J);
        const LegendreTable tab(N, theta);
        for (int n = 1; n <= N; ++n)
            for (int m = -n; m <= n; ++m)
            {
                const LegendreBundle b = tab(n, m);
                const cdouble e = expi(m * phi);
                for (int s = 1; s <= 2; ++s)
                {
                    const int j = 2 * (n * (n + 1) + m - 1) + s - 1;
                    cdouble kt, kp;
                    far_field_from_bundle(s, m, n, b, false, kt, kp);
                    out.k_theta[j] = kt * e, out.k_phi[j] = kp * e;
                    far_field_from_bundle(s, m, n, b, true, kt, kp);
                    out.dk_theta[j] = kt * e, out.dk_phi[j] = kp * e;
                    out.m[j] = m;
                }
            }
        return out;
    }

    const char *role_name(CoefficientRole role)
    {
        switch (role)
        {
        case CoefficientRole::transmission:
            return "T";
        case CoefficientRole::reception:
            return "R";
        case CoefficientRole::incident:
            return "a";
        default:
            return "b";
        }
    }

    // ------------------------------------------------------------------------
    // Synthesis and extraction

    namespace
    {
        // Theta-dependent part of F3_smn (no exp(i m phi)), including the 1/sqrt(2 pi n(n+1)) prefactor
        struct ThetaPart
        {
            cdouble r, t, p;
        };

        ThetaPart theta_part(int s, int m, int n, const LegendreBundle &b, const RadialValues &rv)
        {
            const double nn = (double)n * (n + 1);
            const double pre = hansen_sign(m) / std::sqrt(2.0 * pi * nn);
            ThetaPart out{};
            if (s == 1)
            {
                out.t = pre * rv.r1 * cdouble(0.0, b.p_over_sin);
                out.p = -pre * rv.r1 * b.dp;
            }
            else
            {
                out.r = pre * nn * rv.r1_over_kr * b.p;
                out.t = pre * rv.r2 * b.dp;
                out.p = pre * rv.r2 * cdouble(0.0, b.p_over_sin);
            }
            return out;
        }

        void check_radius_omega(double radius, double omega)
        {
            if (!(radius > 0.0) || !std::isfinite(radius))
                throw DomainError("sphere radius must be positive");
            if (!(omega > 0.0) || !std::isfinite(omega))
                throw DomainError("angular frequency must be positive");
        }
    } // namespace

    FieldBlock synthesize_field(const CoefficientSet &T, const SphereGrid &grid, double radius)
    {
        check_radius_omega(radius, T.omega);
        const int N = T.order;
        const int J = mode_count(N);
        if ((int)T.values.size() != J)
            throw ValidationError("coefficient set length does not match 2N(N+2)");
        const double k = T.omega / speed_of_light;
        const double kr = k * radius;
        const double c = expansion_prefactor(k);

        std::vector<RadialValues> rad(N + 1);
        for (int n = 1; n <= N; ++n)
            rad[n] = radial_functions(3, n, kr);

        const size_t nt = grid.n_theta(), np = grid.n_phi();
        FieldBlock out;
        out.resize(nt * np);

        // Per theta ring: accumulate the m-harmonics, then sum over phi
        std::vector<cdouble> hr(2 * N + 1), ht(2 * N + 1), hp(2 * N + 1);
        for (size_t i = 0; i < nt; ++i)
        {
            const LegendreTable tab(N, grid.theta_nodes[i]);
            std::fill(hr.begin(), hr.end(), 0.0), std::fill(ht.begin(), ht.end(), 0.0), std::fill(hp.begin(), hp.end(), 0.0);
            for (int n = 1; n <= N; ++n)
                for (int m = -n; m <= n; ++m)
                {
                    const LegendreBundle b = tab(n, m);
                    for (int s = 1; s <= 2; ++s)
                    {
                        const cdouble t = T.values[2 * (n * (n + 1) + m - 1) + s - 1];
                        if (t == 0.0)
                            continue;
                        const ThetaPart f = theta_part(s, m, n, b, rad[n]);
                        hr[m + N] += t * f.r, ht[m + N] += t * f.t, hp[m + N] += t * f.p;
                    }
                }
            for (size_t q = 0; q < np; ++q)
            {
                cdouble er = 0.0, et = 0.0, ep = 0.0;
                for (int m = -N; m <= N; ++m)
                {
                    const cdouble e = expi(m * grid.phi_nodes[q]);
                    er += hr[m + N] * e, et += ht[m + N] * e, ep += hp[m + N] * e;
                }
                const size_t idx = i * np + q;
                out.r[idx] = c * er, out.theta[idx] = c * et, out.phi[idx] = c * ep;
            }
        }
        return out;
    }

    CoefficientSet extract_transmission(const FieldBlock &field, const SphereGrid &grid, double radius, double omega, int N,
                                        int port)
    {
        check_radius_omega(radius, omega);
        const int J = mode_count(N);
        check_grid_density(grid, N);
        const size_t nt = grid.n_theta(), np = grid.n_phi();
        if (field.size() != nt * np || field.r.size() != nt * np || field.phi.size() != nt * np)
            throw ValidationError("field block size does not match the sphere grid");

        const double k = omega / speed_of_light;
        const double kr = k * radius;
        const double dphi = grid.phi_step();

        // exp(-i m phi_q) dphi for m = -N..N
        std::vector<cdouble> ex((size_t)(2 * N + 1) * np);
        for (int m = -N; m <= N; ++m)
            for (size_t q = 0; q < np; ++q)
                ex[(size_t)(m + N) * np + q] = expi(-m * grid.phi_nodes[q]) * dphi;

        std::vector<RadialValues> rad(N + 1);
        for (int n = 1; n <= N; ++n)
            rad[n] = radial_functions(3, n, kr);

        std::vector<cdouble> num(J, 0.0);
        std::vector<cdouble> ar(2 * N + 1), at(2 * N + 1), ap(2 * N + 1);
        for (size_t i = 0; i < nt; ++i)
        {
            // phi harmonics of the three field components on this ring
            for (int m = -N; m <= N; ++m)
            {
                cdouble sr = 0.0, st = 0.0, sp = 0.0;
                const cdouble *e = &ex[(size_t)(m + N) * np];
                const size_t base = i * np;
                for (size_t q = 0; q < np; ++q)
                {
                    sr += field.r[base + q] * e[q];
                    st += field.theta[base + q] * e[q];
                    sp += field.phi[base + q] * e[q];
                }
                ar[m + N] = sr, at[m + N] = st, ap[m + N] = sp;
            }

            const double w = grid.theta_weights[i];
            const LegendreTable tab(N, grid.theta_nodes[i]);
            for (int n = 1; n <= N; ++n)
                for (int m = -n; m <= n; ++m)
                {
                    // Project on F3_{s,-m,n}, whose exp(-i m phi) picks harmonic m of the field
                    const LegendreBundle b = tab(n, -m);
                    for (int s = 1; s <= 2; ++s)
                    {
                        const ThetaPart f = theta_part(s, -m, n, b, rad[n]);
                        num[2 * (n * (n + 1) + m - 1) + s - 1] += w * (ar[m + N] * f.r + at[m + N] * f.t + ap[m + N] * f.p);
                    }
                }
        }

        CoefficientSet T;
        T.order = N;
        T.role = CoefficientRole::transmission;
        T.omega = omega;
        T.port = port;
        T.values.resize(J);
        const double c = expansion_prefactor(k);
        for (int j = 1; j <= J; ++j)
        {
            const ModeIndex t = triple_from_mode_index(j);
            const RadialValues &rv = rad[t.n];
            cdouble d = (t.s == 1) ? rv.r1 * rv.r1 : rv.r2 * rv.r2 + (double)t.n * (t.n + 1) * rv.r1_over_kr * rv.r1_over_kr;
            d *= c * parity_sign(t.m);
            T.values[j - 1] = num[j - 1] / d;
        }
        return T;
    }

    CoefficientSet extract_transmission(const FieldSampleSet &fields, size_t port, size_t freq, int N)
    {
        if (port >= fields.n_ports() || freq >= fields.n_freqs())
            throw DomainError("port or frequency index out of range");
        return extract_transmission(fields.block(port, freq), fields.grid, fields.radius, fields.frequencies[freq], N, (int)port);
    }

    CoefficientSet reception_from_transmission(const CoefficientSet &T)
    {
        if (T.role != CoefficientRole::transmission && T.role != CoefficientRole::reception)
            throw ValidationError(std::string("reciprocity map needs transmission or reception coefficients, got role ") +
                                  role_name(T.role));
        const int J = mode_count(T.order);
        if ((int)T.values.size() != J)
            throw ValidationError("coefficient set length does not match 2N(N+2)");
        CoefficientSet R = T;
        R.role = (T.role == CoefficientRole::transmission) ? CoefficientRole::reception : CoefficientRole::transmission;
        for (int j = 1; j <= J; ++j)
        {
            const ModeIndex t = triple_from_mode_index(j);
            R.values[j - 1] = parity_sign(t.m) * T.values[conjugate_m_index(j) - 1];
        }
        return R;
    }

    int default_truncation(double k, double r)
    {
        if (!(k > 0.0) || !(r >= 0.0))
            throw DomainError("default truncation needs k > 0 and r >= 0");
        return (int)std::ceil(k * r) + 10;
    }

} // namespace swarray
