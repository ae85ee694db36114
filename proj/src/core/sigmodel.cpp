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
#include "swarray/sigmodel.hpp"

namespace swarray
{
    std::vector<double> SignalParams::as_vector() const
    {
        return {tau, theta0, phi0, p_theta, p_phi, phase_theta, phase_phi};
    }

    SignalParams SignalParams::from_vector(const std::vector<double> &v)
    {
        if (v.size() != 7)
            throw DomainError("signal parameter vector needs 7 entries");
        return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
    }

    SignalParams LinearSignalParams::to_full() const
    {
        return {tau, theta0, phi0, std::sin(alpha), std::cos(alpha), 0.0, 0.0};
    }

    PulseSpectrum PulseSpectrum::flat(int P)
    {
        if (P < 1 || (P % 2) == 0)
            throw DomainError("pulse length must be odd, got " + std::to_string(P));
        PulseSpectrum s;
        s.samples.assign(P, cdouble(1.0, 0.0));
        return s;
    }

    PulseSpectrum PulseSpectrum::from_spectrum(const std::vector<cdouble> &spectrum, double A, double r0, double Zc)
    {
        if (spectrum.empty() || (spectrum.size() % 2) == 0)
            throw DomainError("pulse length must be odd");
        if (!(r0 > 0.0) || !(Zc > 0.0))
            throw DomainError("source distance and characteristic impedance must be positive");
        const double f = -A / (2.0 * r0 * std::sqrt(pi * Zc));
        PulseSpectrum s;
        s.samples.resize(spectrum.size());
        for (size_t i = 0; i < spectrum.size(); ++i)
            s.samples[i] = f * spectrum[i];
        return s;
    }

    SphericalVec polarization_vector(const SignalParams &p)
    {
        const double norm = std::sqrt(p.p_theta * p.p_theta + p.p_phi * p.p_phi);
        if (std::abs(norm - 1.0) > 1e-9)
            throw DomainError("polarization must have unit norm, got " + std::to_string(norm));
        SphericalVec v;
        v.theta = std::polar(p.p_theta, p.phase_theta);
        v.phi = std::polar(p.p_phi, p.phase_phi);
        return v;
    }

    CoefficientSet plane_wave_swcs(int N, double omega, double theta0, double phi0, const SphericalVec &P, double tau,
                                   double A, double r0, cdouble S, double Zc)
    {
        if (!(omega > 0.0) || !(r0 > 0.0) || !(Zc > 0.0))
            throw DomainError("plane-wave SWCs need positive omega, r0 and Zc");
        const int J = mode_count(N);
        const FarFieldSet ff = far_field_all(N, theta0, phi0);
        const cdouble pre = -A * std::exp(cdouble(0.0, -omega * tau)) / (2.0 * r0 * std::sqrt(pi * Zc)) * S;
        CoefficientSet a;
        a.order = N;
        a.role = CoefficientRole::incident;
        a.omega = omega;
        a.values.resize(J);
        for (int j = 1; j <= J; ++j)
        {
            const int jh = conjugate_m_index(j) - 1;
            const cdouble pk = std::conj(P.theta) * ff.k_theta[jh] + std::conj(P.phi) * ff.k_phi[jh];
            a.values[j - 1] = pre * parity_sign(ff.m[j - 1]) * pk;
        }
        return a;
    }

    double tau_max(double delta_omega)
    {
        if (!(delta_omega > 0.0))
            throw DomainError("bin spacing must be positive");
        return 2.0 * pi / delta_omega;
    }

    Eigen::VectorXcd tau_vector(double tau, int P, double delta_omega, double omega0)
    {
        const double tmax = tau_max(delta_omega);
        if (!(tau >= 0.0 && tau < tmax))
            throw DomainError("delay " + std::to_string(tau) + " s outside the unambiguous range [0, " + std::to_string(tmax) +
                              ") s set by 2 pi / delta_omega");
        if (P < 1 || (P % 2) == 0)
            throw DomainError("number of bins must be odd");
        Eigen::VectorXcd v(P);
        for (int i = 0; i < P; ++i)
            v[i] = std::exp(cdouble(0.0, -((i - (P - 1) / 2) * delta_omega + omega0) * tau));
        return v;
    }

    DirectionResponse direction_response(const ReceptionModel &model, double theta0, double phi0, bool derivatives)
    {
        model.validate();
        const FarFieldSet ff = far_field_all(model.N, theta0, phi0);
        const int J = model.J;
        Eigen::VectorXcd gt(J), gp(J);
        Eigen::VectorXcd dtt, dtp, dpt, dpp;
        if (derivatives)
            dtt.resize(J), dtp.resize(J), dpt.resize(J), dpp.resize(J);
        for (int j = 0; j < J; ++j)
        {
            const int jh = conjugate_m_index(j + 1) - 1;
            const double sgn = parity_sign(ff.m[j]);
            gt[j] = sgn * std::conj(ff.k_theta[jh]);
            gp[j] = sgn * std::conj(ff.k_phi[jh]);
            if (derivatives)
            {
                dtt[j] = sgn * std::conj(ff.dk_theta[jh]);
                dtp[j] = sgn * std::conj(ff.dk_phi[jh]);
                // d/dphi0 conj(K_jh) = conj(i m_jh K_jh) = i m_j conj(K_jh)
                const cdouble im(0.0, (double)ff.m[j]);
                dpt[j] = im * gt[j];
                dpp[j] = im * gp[j];
            }
        }
        DirectionResponse r;
        r.theta0 = theta0, r.phi0 = phi0;
        r.u_theta = model.R * gt;
        r.u_phi = model.R * gp;
        if (derivatives)
        {
            r.du_theta_dtheta = model.R * dtt;
            r.du_phi_dtheta = model.R * dtp;
            r.du_theta_dphi = model.R * dpt;
            r.du_phi_dphi = model.R * dpp;
            r.has_derivatives = true;
        }
        return r;
    }

    void check_pulse(const ReceptionModel &model, const PulseSpectrum &pulse)
    {
        if (pulse.size() != model.P)
            throw ValidationError("pulse spectrum has " + std::to_string(pulse.size()) + " bins, model has " + std::to_string(model.P));
    }

    SignalVector assemble_signal_vector(const SignalParams &params, const DirectionResponse &resp, const ReceptionModel &model,
                                        const PulseSpectrum &pulse)
    {
        check_pulse(model, pulse);
        const SphericalVec P = polarization_vector(params);
        const Eigen::VectorXcd tv = tau_vector(params.tau, model.P, model.delta_omega, model.omega0);
        SignalVector w = P.theta * resp.u_theta + P.phi * resp.u_phi;
        for (int l = 0; l < model.L; ++l)
            for (int i = 0; i < model.P; ++i)
                w[l * model.P + i] *= tv[i] * pulse.samples[i];
        return w;
    }

    SignalVector assemble_signal_vector(const SignalParams &params, const ReceptionModel &model, const PulseSpectrum &pulse)
    {
        return assemble_signal_vector(params, direction_response(model, params.theta0, params.phi0, false), model, pulse);
    }

} // namespace swarray
