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

#ifndef SWARRAY_QUADRATURE_HPP
#define SWARRAY_QUADRATURE_HPP

#include <vector>

namespace swarray
{
    // Gauss-Legendre rule on [-1, 1], nodes ascending
    struct GaussRule
    {
        std::vector<double> nodes;
        std::vector<double> weights;
    };

    GaussRule gauss_legendre(int count);

    // Sampling grid on a sphere: Gauss-Legendre in cos(theta), uniform trapezoid in phi.
    // theta_weights integrate f(theta) sin(theta) dtheta; the phi weight is 2 pi / phi_nodes.size().
    struct SphereGrid
    {
        std::vector<double> theta_nodes;   // ascending, inside (0, pi)
        std::vector<double> theta_weights; // sum = 2
        std::vector<double> phi_nodes;     // k 2 pi / n_phi

        size_t n_theta() const noexcept { return theta_nodes.size(); }
        size_t n_phi() const noexcept { return phi_nodes.size(); }
        size_t size() const noexcept { return theta_nodes.size() * phi_nodes.size(); }
        double phi_step() const;
    };

    // Grid resolving band-limited fields up to order L: n_theta = L + 1, n_phi = 2L + 2
    SphereGrid make_sphere_grid(int L);
    SphereGrid make_sphere_grid(int n_theta, int n_phi);

    // Throws ValidationError unless n_theta >= N + 1 and n_phi >= 2N + 2
    void check_grid_density(const SphereGrid &grid, int N);

    // Structural checks: ascending theta in (0, pi), positive weights, uniform phi starting at 0
    void validate_grid(const SphereGrid &grid);

} // namespace swarray

#endif
