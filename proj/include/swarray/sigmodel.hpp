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

#ifndef SWARRAY_SIGMODEL_HPP
#define SWARRAY_SIGMODEL_HPP

#include <vector>

#include <Eigen/Dense>

#include "swarray/elements.hpp"
#include "swarray/swe.hpp"

namespace swarray
{
    // theta = [tau, theta0, phi0, P_theta, P_phi, phase_theta, phase_phi]
    struct SignalParams
    {
        double tau = 0.0;         // s
        double theta0 = 0.0;      // rad, elevation of the source
        double phi0 = 0.0;        // rad, azimuth of the source
        double p_theta = 1.0;     // polarization magnitudes
        double p_phi = 0.0;
        double phase_theta = 0.0; // rad
        double phase_phi = 0.0;   // rad

        std::vector<double> as_vector() const;
        static SignalParams from_vector(const std::vector<double> &v);
    };

    // eta = [tau, theta0, phi0, alpha], P = sin(alpha) i_theta + cos(alpha) i_phi
    struct LinearSignalParams
    {
        double tau = 0.0;
        double theta0 = 0.0;
        double phi0 = 0.0;
        double alpha = 0.0; // slant in [0, pi]

        SignalParams to_full() const;
    };

    // Transmit spectrum samples S[p] with the amplitude prefactor -A / (2 r0 sqrt(pi Zc)) folded in
    struct PulseSpectrum
    {
        std::vector<cdouble> samples; // length P, bins p = -(P-1)/2 .. (P-1)/2

        int size() const noexcept { return (int)samples.size(); }

        // S = 1_P, the normalized flat spectrum of a sinc pulse
        static PulseSpectrum flat(int P);

        // Raw spectrum samples scaled by -A / (2 r0 sqrt(pi Zc))
        static PulseSpectrum from_spectrum(const std::vector<cdouble> &spectrum, double A, double r0, double Zc);
    };

    using SignalVector = Eigen::VectorXcd;

    // P = P_theta exp(i phase_theta) i_theta + P_phi exp(i phase_phi) i_phi. Throws if |P| deviates from 1 by more than 1e-9.
    SphericalVec polarization_vector(const SignalParams &params);

    // Passband plane-wave SWCs a_smn = -A (-1)^m exp(-i omega tau) / (2 r0 sqrt(pi Zc)) S P^H K_s(-m)n(theta0, phi0)
    CoefficientSet plane_wave_swcs(int N, double omega, double theta0, double phi0, const SphericalVec &P, double tau,
                                   double A, double r0, cdouble S, double Zc);

    // Largest unambiguous delay 2 pi / delta_omega
    double tau_max(double delta_omega);

    // Entries exp(-i (p delta_omega + omega0) tau); rejects tau outside [0, tau_max)
    Eigen::VectorXcd tau_vector(double tau, int P, double delta_omega, double omega0);

    // Direction-dependent part of the signal model: R M K^H applied to i_theta and i_phi,
    // optionally with its theta0 and phi0 derivatives. Each vector has L P entries.
    struct DirectionResponse
    {
        double theta0 = 0.0, phi0 = 0.0;
        Eigen::VectorXcd u_theta, u_phi;
        Eigen::VectorXcd du_theta_dtheta, du_phi_dtheta;
        Eigen::VectorXcd du_theta_dphi, du_phi_dphi;
        bool has_derivatives = false;
    };

    DirectionResponse direction_response(const ReceptionModel &model, double theta0, double phi0, bool derivatives = true);

    // w = (1_L kron tau(tau)) .* (R M K^H P) .* (1_L kron S)
    SignalVector assemble_signal_vector(const SignalParams &params, const ReceptionModel &model, const PulseSpectrum &pulse);

    // Same from a precomputed direction response
    SignalVector assemble_signal_vector(const SignalParams &params, const DirectionResponse &resp, const ReceptionModel &model,
                                        const PulseSpectrum &pulse);

    // Throws ValidationError if pulse length differs from the model's bin count
    void check_pulse(const ReceptionModel &model, const PulseSpectrum &pulse);

} // namespace swarray

#endif
