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

#ifndef SWARRAY_ANALYSIS_HPP
#define SWARRAY_ANALYSIS_HPP

#include <vector>

#include <Eigen/Dense>

#include "swarray/fisher.hpp"
#include "swarray/sigmodel.hpp"

namespace swarray
{
    // a = (1_L kron tau(tau)) .* (R M K^H P), the signal vector without the pulse
    Eigen::VectorXcd array_manifold(const SignalParams &params, const ReceptionModel &model);

    // |a^H(probe) a(true)| / (|a(probe)| |a(true)|), delay and polarization from params.
    // Throws DomainError if either manifold vector vanishes (norm below 1e-12 |R|_F). Grids and cuts
    // give 0 for probes in a null and throw only for the true direction.
    double beam_pattern(double theta_probe, double phi_probe, const SignalParams &params, const ReceptionModel &model);

    struct BeamPatternGrid
    {
        std::vector<double> theta, phi; // probe axes in rad
        std::vector<double> values;     // theta-major, values[i * phi.size() + k]
        SignalParams truth;             // true direction, delay and polarization
        double max_sidelobe = 0.0;      // largest local maximum outside the main lobe, 0 if none
        double sidelobe_theta = 0.0, sidelobe_phi = 0.0;

        double at(size_t i, size_t k) const { return values[i * phi.size() + k]; }
    };

    BeamPatternGrid beam_pattern_grid(const SignalParams &params, const ReceptionModel &model, const std::vector<double> &theta,
                                      const std::vector<double> &phi, unsigned threads = 1);

    // Line cut through the true direction. The elevation cut runs over a signed theta in [-pi, pi]; a
    // negative theta is the direction (|theta|, phi0 + pi). The azimuth cut runs over phi at theta0.
    struct BeamCut
    {
        std::vector<double> angle; // signed theta or phi in rad
        std::vector<double> theta, phi;
        std::vector<double> values;
    };

    BeamCut elevation_cut(const SignalParams &params, const ReceptionModel &model, int points);
    BeamCut azimuth_cut(const SignalParams &params, const ReceptionModel &model, int points);

    struct RankReport
    {
        int rank = 0;                       // stacked (L P) x J matrix
        double smallest_singular_value = 0; // stacked
        double largest_singular_value = 0;  // stacked
        std::vector<int> bin_ranks;         // per-frequency L x J blocks
        std::vector<double> bin_smallest_singular_values;
        bool full_rank = false; // every per-frequency block has rank min(L, J)
    };

    // Numerical rank with tolerance max(rows, cols) eps sigma_max
    RankReport manifold_rank_check(const ReceptionModel &model);

    struct CrlbMapRow
    {
        double alpha = 0.0, theta0 = 0.0, phi0 = 0.0; // rad
        double b_theta0 = 0.0, b_phi0 = 0.0;          // rad^2, 0 when singular
        bool singular = false;
        double scaled_lambda_min = 0.0; // relative smallest eigenvalue of the scaled FIM
    };

    // Linear-polarization CRLBs of theta0 and phi0 on the grid alpha x theta x phi (alpha-major)
    std::vector<CrlbMapRow> crlb_map(const ReceptionModel &model, const PulseSpectrum &pulse, const NoiseModel &noise,
                                     const std::vector<double> &alpha, const std::vector<double> &theta,
                                     const std::vector<double> &phi, double tau = 0.0, unsigned threads = 1);

} // namespace swarray

#endif
