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

#ifndef SWARRAY_FISHER_HPP
#define SWARRAY_FISHER_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swarray/error.hpp"
#include "swarray/sigmodel.hpp"

namespace swarray
{
    struct NoiseModel
    {
        enum class Kind
        {
            white,
            general
        };
        Kind kind = Kind::white;
        double sigma2 = 0.01;  // white noise variance
        Eigen::MatrixXcd C;    // general covariance, (L P) x (L P), Hermitian positive definite

        static NoiseModel white(double sigma2 = 0.01);
        static NoiseModel general(const Eigen::MatrixXcd &C);
    };

    enum class Parameterization
    {
        full,  // [tau, theta0, phi0, P_theta, P_phi, phase_theta, phase_phi]
        linear // [tau, theta0, phi0, alpha]
    };

    // Eigenvalue extremes of the FIM and of its unit-diagonal scaling D^-1/2 F D^-1/2
    struct ConditioningReport
    {
        double lambda_min = 0.0, lambda_max = 0.0;               // raw F
        double scaled_lambda_min = 0.0, scaled_lambda_max = 0.0; // scaled F
        bool singular = false;

        std::string describe() const;
    };

    struct FimResult
    {
        Eigen::MatrixXd F;
        Parameterization param = Parameterization::full;
        ConditioningReport report;
        double delay_scale = 0.0; // carrier in rad/s when entry 0 is the delay, else 0

    };

    class SingularFimError : public Error
    {
    public:
        SingularFimError(const std::string &what, const ConditioningReport &r) : Error(ErrorCode::singular, what), report_(r) {}
        const ConditioningReport &report() const noexcept { return report_; }

    private:
        ConditioningReport report_;
    };

    // Relative eigenvalue floor of the scaled FIM below which it counts as singular
    inline constexpr double singular_floor = 1e-12;

    // Smallest diagonal entry, relative to the largest, of a FIM with dimensionless parameters
    // (delay as carrier phase) that still counts as information rather than round-off
    inline constexpr double zero_column_floor = 1e-20;

    // delay_scale > 0 converts entry 0 from a delay to carrier phase for the round-off test
    ConditioningReport conditioning(const Eigen::MatrixXd &F, double delay_scale = 0.0);

    // Columns d w / d theta_k, k = 0..6, size (L P) x 7
    Eigen::MatrixXcd signal_gradient(const SignalParams &params, const ReceptionModel &model, const PulseSpectrum &pulse);
    Eigen::MatrixXcd signal_gradient(const SignalParams &params, const DirectionResponse &resp, const ReceptionModel &model,
                                     const PulseSpectrum &pulse);

    // Columns d w / d eta_k for the linear-polarization parameters, size (L P) x 4
    Eigen::MatrixXcd signal_gradient_linear(const LinearSignalParams &params, const DirectionResponse &resp,
                                            const ReceptionModel &model, const PulseSpectrum &pulse);

    // F = 2 Re{G^H C^-1 G}
    Eigen::MatrixXd fim_from_gradient(const Eigen::MatrixXcd &G, const NoiseModel &noise);

    FimResult fim(const SignalParams &params, const ReceptionModel &model, const PulseSpectrum &pulse, const NoiseModel &noise);
    FimResult fim(const SignalParams &params, const DirectionResponse &resp, const ReceptionModel &model,
                  const PulseSpectrum &pulse, const NoiseModel &noise);

    // 4 x 4 FIM built directly from the linear-polarization gradient
    FimResult fim_linear(const LinearSignalParams &params, const DirectionResponse &resp, const ReceptionModel &model,
                         const PulseSpectrum &pulse, const NoiseModel &noise);
    FimResult fim_linear(const LinearSignalParams &params, const ReceptionModel &model, const PulseSpectrum &pulse,
                         const NoiseModel &noise);

    // Jacobian d theta / d eta at slant alpha, 7 x 4
    Eigen::MatrixXd linear_jacobian(double alpha);

    // F_eta = I^T F I
    FimResult reparameterize_linear(const FimResult &F, double alpha);

    // F^-1 through the scaled eigendecomposition; throws SingularFimError below the floor
    Eigen::MatrixXd crlb_matrix(const FimResult &F);

    // [F^-1]_kk
    double crlb(const FimResult &F, int k);

    // Direction quadrature for averages over theta0 in (0, pi), phi0 in [0, 2 pi) with measure dtheta dphi.
    // Gauss-Legendre in theta (never hits the poles) and midpoint nodes in phi; weights sum to 2 pi^2.
    struct DirectionQuadrature
    {
        std::vector<double> theta, phi, weight; // one entry per node
    };

    DirectionQuadrature average_quadrature(int n_theta, int n_phi);

    struct AverageCrlb
    {
        double b_phi0 = 0.0;   // rad^2
        double b_theta0 = 0.0; // rad^2
        size_t nodes = 0;
        size_t singular_nodes = 0;
        double min_scaled_eigenvalue = 0.0; // smallest relative eigenvalue seen over the valid nodes
    };

    // Weighted average of the linear-polarization CRLBs of theta0 and phi0. Singular nodes are
    // skipped and counted, and the remaining weights renormalized.
    AverageCrlb average_crlb(const ReceptionModel &model, const PulseSpectrum &pulse, const NoiseModel &noise, double alpha,
                             const DirectionQuadrature &grid, double tau = 0.0, unsigned threads = 1);

} // namespace swarray

#endif
