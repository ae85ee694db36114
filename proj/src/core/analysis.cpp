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
#include <limits>

#include <Eigen/SVD>

#include "parallel.hpp"
#include "swarray/analysis.hpp"

namespace swarray
{
    Eigen::VectorXcd array_manifold(const SignalParams &params, const ReceptionModel &model)
    {
        return assemble_signal_vector(params, model, PulseSpectrum::flat(model.P));
    }

    namespace
    {
        // Manifold norms at or below this fraction of |R|_F are round-off, e.g. in a pattern null
        constexpr double null_fraction = 1e-12;

        bool vanishes(const Eigen::VectorXcd &a, const ReceptionModel &model)
        {
            return !(a.norm() > null_fraction * model.R.norm());
        }

        // Manifold at the true direction; throws if it vanishes
        Eigen::VectorXcd true_manifold(const SignalParams &params, const ReceptionModel &model)
        {
            Eigen::VectorXcd a = array_manifold(params, model);
            if (vanishes(a, model))
                throw DomainError("array manifold vanishes at the true direction, the beam pattern is undefined");
            return a;
        }

        // A probe direction in a null of the array matches nothing
        double normalized_overlap(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b, const ReceptionModel &model)
        {
            if (vanishes(a, model))
                return 0.0;
            return std::min(1.0, std::abs(a.dot(b)) / (a.norm() * b.norm()));
        }

        SignalParams probe(const SignalParams &params, double theta, double phi)
        {
            SignalParams p = params;
            p.theta0 = theta;
            p.phi0 = phi;
            return p;
        }

        double angular_distance(double t1, double p1, double t2, double p2)
        {
            const double c = std::cos(t1) * std::cos(t2) + std::sin(t1) * std::sin(t2) * std::cos(p1 - p2);
            return std::acos(std::clamp(c, -1.0, 1.0));
        }
    } // namespace

    double beam_pattern(double theta_probe, double phi_probe, const SignalParams &params, const ReceptionModel &model)
    {
        const Eigen::VectorXcd a = array_manifold(probe(params, theta_probe, phi_probe), model);
        if (vanishes(a, model))
            throw DomainError("array manifold vanishes at the probe direction, the beam pattern is undefined");
        return normalized_overlap(a, true_manifold(params, model), model);
    }

    BeamPatternGrid beam_pattern_grid(const SignalParams &params, const ReceptionModel &model, const std::vector<double> &theta,
                                      const std::vector<double> &phi, unsigned threads)
    {
        if (theta.empty() || phi.empty())
            throw DomainError("beam pattern grid axes must not be empty");
        BeamPatternGrid g;
        g.theta = theta;
        g.phi = phi;
        g.truth = params;
        const size_t nt = theta.size(), np = phi.size();
        g.values.assign(nt * np, 0.0);
        const Eigen::VectorXcd a0 = true_manifold(params, model);
        detail::parallel_for(nt * np, threads, [&](size_t idx)
                             {
            const size_t i = idx / np, k = idx % np;
            g.values[idx] = normalized_overlap(array_manifold(probe(params, theta[i], phi[k]), model), a0, model); });

        // phi wraps around when the axis is a uniform cover of the circle
        const bool wrap = np > 2 && std::abs(phi[np - 1] + (phi[1] - phi[0]) - phi[0] - 2.0 * pi) < 1e-9;
        auto neighbours = [&](size_t i, size_t k, auto &&fn)
        {
            for (int di = -1; di <= 1; ++di)
                for (int dk = -1; dk <= 1; ++dk)
                {
                    if (!di && !dk)
                        continue;
                    const long ii = (long)i + di;
                    long kk = (long)k + dk;
                    if (ii < 0 || ii >= (long)nt)
                        continue;
                    if (wrap)
                        kk = (kk + (long)np) % (long)np;
                    else if (kk < 0 || kk >= (long)np)
                        continue;
                    fn((size_t)ii, (size_t)kk);
                }
        };

        // Hill-climb from the probe nearest to the true direction to find the main-lobe peak
        size_t ci = 0, ck = 0;
        double best = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < nt; ++i)
            for (size_t k = 0; k < np; ++k)
            {
                const double d = angular_distance(theta[i], phi[k], params.theta0, params.phi0);
                if (d < best)
                    best = d, ci = i, ck = k;
            }
        for (bool moved = true; moved;)
        {
            moved = false;
            size_t bi = ci, bk = ck;
            neighbours(ci, ck, [&](size_t ii, size_t kk)
                       { if (g.at(ii, kk) > g.at(bi, bk)) bi = ii, bk = kk; });
            if (bi != ci || bk != ck)
                ci = bi, ck = bk, moved = true;
        }

        for (size_t i = 0; i < nt; ++i)
            for (size_t k = 0; k < np; ++k)
            {
                if (i == ci && k == ck)
                    continue;
                const double v = g.at(i, k);
                bool peak = true;
                neighbours(i, k, [&](size_t ii, size_t kk)
                           { if (g.at(ii, kk) > v) peak = false; });
                // on a pole row every phi is the same direction as the main peak
                if (peak && v > g.max_sidelobe && angular_distance(theta[i], phi[k], theta[ci], phi[ck]) > 1e-9)
                {
                    g.max_sidelobe = v;
                    g.sidelobe_theta = theta[i];
                    g.sidelobe_phi = phi[k];
                }
            }
        return g;
    }

    BeamCut elevation_cut(const SignalParams &params, const ReceptionModel &model, int points)
    {
        if (points < 2)
            throw DomainError("a beam pattern cut needs at least two points");
        BeamCut c;
        const Eigen::VectorXcd a0 = true_manifold(params, model);
        for (int i = 0; i < points; ++i)
        {
            const double s = -pi + 2.0 * pi * i / (points - 1);
            const double th = std::abs(s);
            const double ph = s < 0.0 ? std::fmod(params.phi0 + pi, 2.0 * pi) : params.phi0;
            c.angle.push_back(s);
            c.theta.push_back(th);
            c.phi.push_back(ph);
            c.values.push_back(normalized_overlap(array_manifold(probe(params, th, ph), model), a0, model));
        }
        return c;
    }

    BeamCut azimuth_cut(const SignalParams &params, const ReceptionModel &model, int points)
    {
        if (points < 2)
            throw DomainError("a beam pattern cut needs at least two points");
        BeamCut c;
        const Eigen::VectorXcd a0 = true_manifold(params, model);
        for (int i = 0; i < points; ++i)
        {
            const double ph = 2.0 * pi * i / (points - 1);
            c.angle.push_back(ph);
            c.theta.push_back(params.theta0);
            c.phi.push_back(ph);
            c.values.push_back(normalized_overlap(array_manifold(probe(params, params.theta0, ph), model), a0, model));
        }
        return c;
    }

    namespace
    {
        void rank_of(const Eigen::MatrixXcd &A, int &rank, double &smin, double &smax)
        {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
            const Eigen::VectorXd &s = svd.singularValues();
            smax = s.size() ? s[0] : 0.0;
            smin = s.size() ? s[s.size() - 1] : 0.0;
            const double tol = (double)std::max(A.rows(), A.cols()) * std::numeric_limits<double>::epsilon() * smax;
            rank = 0;
            for (Eigen::Index i = 0; i < s.size(); ++i)
                if (s[i] > tol)
                    ++rank;
        }
    } // namespace

    RankReport manifold_rank_check(const ReceptionModel &model)
    {
        model.validate();
        RankReport r;
        rank_of(model.R, r.rank, r.smallest_singular_value, r.largest_singular_value);
        r.full_rank = true;
        const int need = std::min(model.L, model.J);
        for (int i = 0; i < model.P; ++i)
        {
            Eigen::MatrixXcd B(model.L, model.J);
            for (int l = 0; l < model.L; ++l)
                B.row(l) = model.R.row(l * model.P + i);
            int rk;
            double smin, smax;
            rank_of(B, rk, smin, smax);
            r.bin_ranks.push_back(rk);
            r.bin_smallest_singular_values.push_back(smin);
            if (rk < need)
                r.full_rank = false;
        }
        return r;
    }

    std::vector<CrlbMapRow> crlb_map(const ReceptionModel &model, const PulseSpectrum &pulse, const NoiseModel &noise,
                                     const std::vector<double> &alpha, const std::vector<double> &theta,
                                     const std::vector<double> &phi, double tau, unsigned threads)
    {
        if (alpha.empty() || theta.empty() || phi.empty())
            throw DomainError("CRLB map needs non-empty slant and direction lists");
        const size_t na = alpha.size(), nt = theta.size(), np = phi.size();
        std::vector<CrlbMapRow> rows(na * nt * np);
        detail::parallel_for(nt * np, threads, [&](size_t d)
                             {
            const size_t i = d / np, k = d % np;
            const DirectionResponse resp = direction_response(model, theta[i], phi[k], true);
            for (size_t a = 0; a < na; ++a)
            {
                CrlbMapRow &row = rows[(a * nt + i) * np + k];
                row.alpha = alpha[a], row.theta0 = theta[i], row.phi0 = phi[k];
                const SignalParams sp = LinearSignalParams{tau, theta[i], phi[k], alpha[a]}.to_full();
                const FimResult F = reparameterize_linear(fim(sp, resp, model, pulse, noise), alpha[a]);
                row.singular = F.report.singular;
                if (F.report.scaled_lambda_max > 0.0)
                    row.scaled_lambda_min = F.report.scaled_lambda_min / F.report.scaled_lambda_max;
                if (row.singular)
                    continue;
                const Eigen::MatrixXd C = crlb_matrix(F);
                row.b_theta0 = C(1, 1);
                row.b_phi0 = C(2, 2);
            } });
        return rows;
    }

} // namespace swarray
