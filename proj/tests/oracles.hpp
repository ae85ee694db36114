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

// Independent numerical oracles shared by the unit tests and the acceptance binary

#ifndef SWARRAY_ORACLES_HPP
#define SWARRAY_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "swarray/fisher.hpp"

namespace oracles
{
    using swarray::cdouble;

    // Signal vector for arbitrary (not necessarily unit-norm) polarization amplitudes, built from two
    // unit-norm evaluations by linearity in P
    inline Eigen::VectorXcd signal_any_pol(const std::vector<double> &th, const swarray::ReceptionModel &m,
                                           const swarray::PulseSpectrum &S)
    {
        swarray::SignalParams a = swarray::SignalParams::from_vector(th), b = a;
        a.p_theta = 1.0, a.p_phi = 0.0, a.phase_theta = 0.0;
        b.p_theta = 0.0, b.p_phi = 1.0, b.phase_phi = 0.0;
        const Eigen::VectorXcd wt = swarray::assemble_signal_vector(a, m, S);
        const Eigen::VectorXcd wp = swarray::assemble_signal_vector(b, m, S);
        return std::polar(th[3], th[5]) * wt + std::polar(th[4], th[6]) * wp;
    }

    // Five-point central difference of a vector-valued function of one parameter
    template <class Fn>
    Eigen::VectorXcd central_difference(Fn &&f, double x, double h)
    {
        return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
    }

    // Step sizes per parameter [tau, theta0, phi0, P_theta, P_phi, phase_theta, phase_phi]
    inline double step(int k, const swarray::ReceptionModel &m)
    {
        return k == 0 ? 1e-3 / m.omega0 : 1e-4;
    }

    inline Eigen::MatrixXcd fd_gradient(const swarray::SignalParams &p, const swarray::ReceptionModel &m,
                                        const swarray::PulseSpectrum &S)
    {
        const std::vector<double> th = p.as_vector();
        Eigen::MatrixXcd G(m.L * m.P, 7);
        for (int k = 0; k < 7; ++k)
        {
            auto f = [&](double x)
            {
                std::vector<double> v = th;
                v[k] = x;
                return signal_any_pol(v, m, S);
            };
            G.col(k) = central_difference(f, th[k], step(k, m));
        }
        return G;
    }

    // Gradient in eta = [tau, theta0, phi0, alpha] by differences of the linear-polarization model
    inline Eigen::MatrixXcd fd_gradient_linear(const swarray::LinearSignalParams &p, const swarray::ReceptionModel &m,
                                               const swarray::PulseSpectrum &S)
    {
        const double eta[4] = {p.tau, p.theta0, p.phi0, p.alpha};
        Eigen::MatrixXcd G(m.L * m.P, 4);
        for (int k = 0; k < 4; ++k)
        {
            auto f = [&](double x)
            {
                double e[4] = {eta[0], eta[1], eta[2], eta[3]};
                e[k] = x;
                return swarray::assemble_signal_vector(swarray::LinearSignalParams{e[0], e[1], e[2], e[3]}.to_full(), m, S);
            };
            G.col(k) = central_difference(f, eta[k], step(k, m));
        }
        return G;
    }

    struct DelayMonteCarlo
    {
        double variance = 0.0; // s^2, about the true delay
        double crlb = 0.0;     // s^2
        double sigma2 = 0.0;
        int trials = 0;
    };

    // Maximum-likelihood delay estimation with everything but the delay known. The likelihood is
    // Re{w(tau)^H y}, searched on a fine grid over [0, tau_max) and refined by golden sections.
    inline DelayMonteCarlo ml_delay_monte_carlo(const swarray::ReceptionModel &m, const swarray::SignalParams &truth,
                                                double snr_db, int trials, unsigned seed)
    {
        const swarray::PulseSpectrum S = swarray::PulseSpectrum::flat(m.P);
        const Eigen::VectorXcd w0 = swarray::assemble_signal_vector(truth, m, S);
        const int n = (int)w0.size();
        DelayMonteCarlo out;
        out.sigma2 = w0.squaredNorm() / n / std::pow(10.0, snr_db / 10.0);
        out.trials = trials;

        // Direction part without the delay factor
        swarray::SignalParams at0 = truth;
        at0.tau = 0.0;
        const Eigen::VectorXcd u = swarray::assemble_signal_vector(at0, m, S);
        std::vector<double> omega(n);
        for (int l = 0; l < m.L; ++l)
            for (int i = 0; i < m.P; ++i)
                omega[l * m.P + i] = m.omega0 + m.bin(i) * m.delta_omega;

        // Delay-only Fisher information (2 / sigma^2) sum |omega u|^2
        double F = 0.0;
        for (int r = 0; r < n; ++r)
            F += omega[r] * omega[r] * std::norm(u[r]);
        out.crlb = 1.0 / (2.0 / out.sigma2 * F);

        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g(0.0, std::sqrt(out.sigma2 / 2.0));
        const double tmax = swarray::tau_max(m.delta_omega);
        const double grid = 0.1 * 2.0 * swarray::pi / (m.omega0 + (m.P / 2) * m.delta_omega); // a tenth of a carrier period
        double acc = 0.0;
        for (int t = 0; t < trials; ++t)
        {
            Eigen::VectorXcd y = w0;
            for (int r = 0; r < n; ++r)
                y[r] += cdouble(g(rng), g(rng));
            const Eigen::VectorXcd v = u.conjugate().cwiseProduct(y);
            auto like = [&](double tau)
            {
                cdouble s = 0.0;
                for (int r = 0; r < n; ++r)
                    s += v[r] * std::exp(cdouble(0.0, omega[r] * tau));
                return s.real();
            };
            // Local maxima of the grid, then golden-section refinement of the strongest few
            std::vector<std::pair<double, double>> peaks;
            double prev2 = -1e300, prev = -1e300;
            for (double tau = 0.0; tau < tmax + grid; tau += grid)
            {
                const double L = like(tau);
                if (prev > prev2 && prev >= L)
                    peaks.emplace_back(prev, tau - grid);
                prev2 = prev, prev = L;
            }
            std::sort(peaks.begin(), peaks.end(), [](auto &x, auto &y) { return x.first > y.first; });
            double est = 0.0, bv = -1e300;
            for (size_t q = 0; q < std::min<size_t>(peaks.size(), 16); ++q)
            {
                double a = peaks[q].second - grid, b = peaks[q].second + grid;
                const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
                double c = b - gr * (b - a), d = a + gr * (b - a);
                for (int it = 0; it < 80; ++it)
                {
                    if (like(c) > like(d))
                        b = d;
                    else
                        a = c;
                    c = b - gr * (b - a), d = a + gr * (b - a);
                }
                const double t = 0.5 * (a + b), L = like(t);
                if (L > bv)
                    bv = L, est = t;
            }
            acc += (est - truth.tau) * (est - truth.tau);
        }
        out.variance = acc / trials;
        return out;
    }

    // Lower acceptance bound for a sample variance of an efficient estimator: three standard
    // deviations of the chi-square sample variance below the bound itself
    inline double variance_floor(const DelayMonteCarlo &mc)
    {
        return mc.crlb * (1.0 - 3.0 * std::sqrt(2.0 / mc.trials));
    }
} // namespace oracles

#endif
