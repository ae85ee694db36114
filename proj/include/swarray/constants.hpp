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

#ifndef SWARRAY_CONSTANTS_HPP
#define SWARRAY_CONSTANTS_HPP

#include <complex>
#include <numbers>

namespace swarray
{
    using cdouble = std::complex<double>;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr double speed_of_light = 299792458.0;      // c0 in m/s
    inline constexpr double vacuum_permeability = 1.25663706212e-6; // mu0 in H/m
    inline constexpr double free_space_impedance = vacuum_permeability * speed_of_light; // Z0 in Ohm
    inline constexpr double vacuum_permittivity = 1.0 / (vacuum_permeability * speed_of_light * speed_of_light);

    // Medium admittance eta = 1/Z0 used in the k/sqrt(eta) prefactor of the spherical wave expansion
    inline constexpr double free_space_admittance = 1.0 / free_space_impedance;

    inline constexpr cdouble I{0.0, 1.0};
} // namespace swarray

#endif
