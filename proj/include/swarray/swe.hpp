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

#ifndef SWARRAY_SWE_HPP
#define SWARRAY_SWE_HPP

#include <string>
#include <vector>

#include "swarray/constants.hpp"
#include "swarray/field_io.hpp"
#include "swarray/modes.hpp"
#include "swarray/quadrature.hpp"

namespace swarray
{
    // Vector in the local spherical basis (i_r, i_theta, i_phi)
    struct SphericalVec
    {
        cdouble r{}, theta{}, phi{};
    };

    // Far-field function K_smn(theta, phi), the kr -> inf limit of sqrt(4 pi) kr exp(-ikr) F3_smn
    SphericalVec far_field_K(const ModeIndex &mode, double theta, double phi);

    // dK/dphi = i m K
    SphericalVec far_field_K_dphi(const ModeIndex &mode, double theta, double phi);

    // dK/dtheta, finite at the poles
    SphericalVec far_field_K_dtheta(const ModeIndex &mode, double theta, double phi);

    // Hansen vector spherical wave function of kind c (3 = outgoing, 4 = incoming, 1 = regular)
    SphericalVec vswf_F(int c, const ModeIndex &mode, double kr, double theta, double phi);

    // Far-field functions and their theta-derivatives for all modes j = 1..J at one direction,
    // stored 0-based (entry j-1). Only the theta and phi components are kept.
    struct FarFieldSet
    {
        int order = 0;
        std::vector<cdouble> k_theta, k_phi;   // K_j
        std::vector<cdouble> dk_theta, dk_phi; // dK_j / dtheta
        std::vector<int> m;                    // m[j-1]
    };

    FarFieldSet far_field_all(int N, double theta, double phi);

    enum class CoefficientRole
    {
        transmission, // T
        reception,    // R
        incident,     // a
        radiated      // b
    };

    const char *role_name(CoefficientRole role);

    struct CoefficientSet
    {
        int order = 0;
        CoefficientRole role = CoefficientRole::transmission;
        double omega = 0.0; // rad/s
        int port = 0;
        std::vector<cdouble> values; // entry j-1, length 2N(N+2)
    };

    // Radiated field E = k/sqrt(eta) sum_j T_j F3_j(kr, theta, phi) on a sphere of the given radius
    FieldBlock synthesize_field(const CoefficientSet &T, const SphereGrid &grid, double radius);

    // Transmission coefficients of order N from one field block sampled at radius r and frequency omega
    CoefficientSet extract_transmission(const FieldBlock &field, const SphereGrid &grid, double radius, double omega, int N,
                                        int port = 0);

    // Convenience overload over a FieldSampleSet entry
    CoefficientSet extract_transmission(const FieldSampleSet &fields, size_t port, size_t freq, int N);

    // R_smn = (-1)^m T_s(-m)n. Also maps R back to T.
    CoefficientSet reception_from_transmission(const CoefficientSet &T);

    // Default truncation N = ceil(k r) + 10 for sources inside radius r
    int default_truncation(double k, double r);

} // namespace swarray

#endif
