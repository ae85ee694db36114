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

#include "swarray/constants.hpp"
#include "swarray/error.hpp"
#include "swarray/quadrature.hpp"

namespace swarray
{
    GaussRule gauss_legendre(int count)
    {
        if (count < 1)
            throw DomainError("Gauss-Legendre rule needs at least one node");
        GaussRule r;
        r.nodes.resize(count);
        r.weights.resize(count);
        const int half = (count + 1) / 2;
        for (int i = 0; i < half; ++i)
        {
            // Tricomi initial guess, then Newton on P_count
            double x = std::cos(pi * (i + 0.75) / (count + 0.5));
            double dp = 1.0;
            for (int it = 0; it < 100; ++it)
            {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= count; ++k)
                {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1, p1 = p2;
                }
                dp = count * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            // Recompute the derivative at the converged node
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= count; ++k)
            {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1, p1 = p2;
            }
            dp = count * (x * p1 - p0) / (x * x - 1.0);
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            r.nodes[i] = -x, r.weights[i] = w;
            r.nodes[count - 1 - i] = x, r.weights[count - 1 - i] = w;
        }
        if (count & 1)
            r.nodes[count / 2] = 0.0;
        return r;
    }

    double SphereGrid::phi_step() const
    {
        return phi_nodes.empty() ? 0.0 : 2.0 * pi / (double)phi_nodes.size();
    }

    SphereGrid make_sphere_grid(int n_theta, int n_phi)
    {
        if (n_theta < 1 || n_phi < 1)
            throw DomainError("sphere grid needs positive node counts");
        SphereGrid g;
        GaussRule r = gauss_legendre(n_theta);
        g.theta_nodes.resize(n_theta);
        g.theta_weights.resize(n_theta);
        // theta ascending means cos(theta) descending
        for (int i = 0; i < n_theta; ++i)
        {
            g.theta_nodes[i] = std::acos(r.nodes[n_theta - 1 - i]);
            g.theta_weights[i] = r.weights[n_theta - 1 - i];
        }
        g.phi_nodes.resize(n_phi);
        for (int k = 0; k < n_phi; ++k)
            g.phi_nodes[k] = 2.0 * pi * k / n_phi;
        return g;
    }

    SphereGrid make_sphere_grid(int L)
    {
        if (L < 1)
            throw DomainError("grid order must be >= 1");
        return make_sphere_grid(L + 1, 2 * L + 2);
    }

    void check_grid_density(const SphereGrid &grid, int N)
    {
        if ((int)grid.n_theta() < N + 1 || (int)grid.n_phi() < 2 * N + 2)
            throw ValidationError("sphere grid too coarse for order N=" + std::to_string(N) + ": have " +
                                  std::to_string(grid.n_theta()) + " theta and " + std::to_string(grid.n_phi()) +
                                  " phi nodes, need N_theta >= N+1 = " + std::to_string(N + 1) +
                                  " and N_phi >= 2N+2 = " + std::to_string(2 * N + 2));
    }

    void validate_grid(const SphereGrid &grid)
    {
        if (grid.theta_nodes.empty() || grid.phi_nodes.empty())
            throw ValidationError("sphere grid is empty");
        if (grid.theta_weights.size() != grid.theta_nodes.size())
            throw ValidationError("theta weights and nodes differ in length");
        for (size_t i = 0; i < grid.n_theta(); ++i)
        {
            const double t = grid.theta_nodes[i];
            if (!(t > 0.0 && t < pi))
                throw ValidationError("theta node " + std::to_string(i) + " outside (0, pi)");
            if (i > 0 && !(t > grid.theta_nodes[i - 1]))
                throw ValidationError("theta nodes must be strictly increasing");
            if (!(grid.theta_weights[i] > 0.0))
                throw ValidationError("theta weights must be positive");
        }
        const double dphi = grid.phi_step();
        for (size_t k = 0; k < grid.n_phi(); ++k)
            if (std::abs(grid.phi_nodes[k] - dphi * (double)k) > 1e-9)
                throw ValidationError("phi nodes must be uniform, starting at 0: node " + std::to_string(k) + " is off");
    }

} // namespace swarray
