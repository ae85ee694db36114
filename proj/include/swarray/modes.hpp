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

#ifndef SWARRAY_MODES_HPP
#define SWARRAY_MODES_HPP

#include <vector>

#include "swarray/constants.hpp"

namespace swarray
{
    // Spherical mode (s, m, n): s in {1, 2} selects TE/TM type, |m| <= n, n >= 1
    struct ModeIndex
    {
        int s = 1;
        int m = 0;
        int n = 1;
        bool operator==(const ModeIndex &) const = default;
    };

    bool is_valid_mode(int s, int m, int n) noexcept;

    // Joined index j = 2[n(n+1) + m - 1] + s, 1-based
    int mode_index_from_triple(int s, int m, int n);
    inline int mode_index_from_triple(const ModeIndex &t) { return mode_index_from_triple(t.s, t.m, t.n); }

    // Inverse of mode_index_from_triple, requires j >= 1
    ModeIndex triple_from_mode_index(int j);

    // Index of the mode (s, -m, n), i.e. j - 4 m[j]
    int conjugate_m_index(int j);

    // Number of modes J = 2N(N+2) up to order N
    int mode_count(int N);

    // (-m/|m|)^m, which is (-1)^m for m > 0 and 1 for m <= 0
    inline double hansen_sign(int m) noexcept { return (m > 0 && (m & 1)) ? -1.0 : 1.0; }

    // (-1)^m
    inline double parity_sign(int m) noexcept { return (m & 1) ? -1.0 : 1.0; }

    // Normalized associated Legendre function and its theta-derivatives at cos(theta).
    // Normalization: P(n,|m|) = sqrt((2n+1)/2 (n-|m|)!/(n+|m|)!) P_n^|m| without the Condon-Shortley phase,
    // so that the integral of P^2 sin(theta) over [0, pi] is 1.
    struct LegendreBundle
    {
        double p = 0.0;           // P(n,|m|)
        double dp = 0.0;          // dP/dtheta
        double d2p = 0.0;         // d2P/dtheta2
        double p_over_sin = 0.0;  // m P / sin(theta), signed m, exact limit at the poles
        double d_p_over_sin = 0.0; // d/dtheta of p_over_sin
    };

    // Single evaluation, theta in [0, pi]
    LegendreBundle legendre_bundle(int n, int m, double theta);

    // All bundles for 1 <= n <= N, 0 <= m <= n at one theta. Entries for negative m follow from
    // the m >= 0 entry by flipping the sign of the two quotient fields.
    class LegendreTable
    {
    public:
        LegendreTable() = default;
        LegendreTable(int N, double theta);

        int order() const noexcept { return N_; }
        double theta() const noexcept { return theta_; }

        // Bundle for (n, m) with signed m; |m| <= n <= N
        LegendreBundle operator()(int n, int m) const;

    private:
        int N_ = 0;
        double theta_ = 0.0;
        std::vector<LegendreBundle> data_; // packed over (n, |m|), n from 0
    };

    // Spherical radial functions of kind c: 1 = j_n, 3 = h_n^(1) (outgoing), 4 = h_n^(2) (incoming)
    struct RadialValues
    {
        cdouble r1;         // z_n(kr)
        cdouble r2;         // (1/kr) d/d(kr) [kr z_n(kr)] = z_{n-1} - n z_n / kr
        cdouble r1_over_kr; // z_n(kr) / kr, auxiliary term of the s = 2 radial field
    };

    cdouble radial_function(int c, int n, double kr);
    RadialValues radial_functions(int c, int n, double kr);

} // namespace swarray

#endif
