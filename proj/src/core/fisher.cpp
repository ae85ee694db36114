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
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "parallel.hpp"
#include "swarray/fisher.hpp"
#include "swarray/quadrature.hpp"

namespace swarray
{
    NoiseModel NoiseModel::white(double sigma2)
    {
        if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
            throw DomainError("noise variance must be positive");
        NoiseModel n;
        n.kind = Kind::white;
        n.sigma2 = sigma2;
        return n;
    }

    NoiseModel NoiseModel::general(const Eigen::MatrixXcd &C)
    {
        if (C.rows() != C.cols() || C.rows() == 0)
            throw DomainError("noise covariance must be square and non-empty");
        if (!C.isApprox(C.adjoint(), 1e-12))
            throw DomainError("noise covariance must be Hermitian");
        Eigen::LLT<Eigen::MatrixXcd> llt(C);
        if (llt.info() != Eigen::Success)
            throw DomainError("noise covariance is not positive definite");
        NoiseModel n;
        n.kind = Kind::general;
        n.C = C;
        return n;
    }

    std::string ConditioningReport::describe() const
    {
        std::ostringstream os;
        os << "eigenvalues of F in [" << lambda_min << ", " << lambda_max << "], of the unit-diagonal scaled F in ["
           << scaled_lambda_min << ", " << scaled_lambda_max << "]";
        return os.str();
    }

    ConditioningReport conditioning(const Eigen::MatrixXd &F, double delay_scale)
    {
        ConditioningReport r;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> raw(F, Eigen::EigenvaluesOnly);
        r.lambda_min = raw.eigenvalues().minCoeff();
        r.lambda_max = raw.eigenvalues().maxCoeff();
        const Eigen::VectorXd d = F.diagonal();
        if ((d.array() <= 0.0).any() || !d.allFinite())
        {
            r.singular = true;
            return r;
        }

        // Columns at round-off level survive the diagonal scaling below as unit entries, so they are
        // caught here, with the delay entry expressed as carrier phase
        Eigen::VectorXd u = d;
        if (delay_scale > 0.0)
            u[0] /= delay_scale * delay_scale;
        if (u.minCoeff() <= zero_column_floor * u.maxCoeff())
        {
            r.singular = true;
            return r;
        }
        const Eigen::VectorXd s = d.cwiseSqrt().cwiseInverse();
        const Eigen::MatrixXd Fs = s.asDiagonal() * F * s.asDiagonal();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sc(Fs, Eigen::EigenvaluesOnly);
        r.scaled_lambda_min = sc.eigenvalues().minCoeff();
        r.scaled_lambda_max = sc.eigenvalues().maxCoeff();
        r.singular = !(r.scaled_lambda_min > singular_floor * r.scaled_lambda_max);
        return r;
    }

    // ------------------------------------------------------------------------
    // Gradients

    namespace
    {
        // Per-row factor tau[p] S[p]
        Eigen::VectorXcd delay_pulse(const SignalParams &params, const ReceptionModel &model, const PulseSpectrum &pulse)
        {
            check_pulse(model, pulse);
            const Eigen::VectorXcd tv = tau_vector(params.tau, model.P, model.delta_omega, model.omega0);
            Eigen::VectorXcd ts((Eigen::Index)model.L * model.P);
            for (int l = 0; l < model.L; ++l)
                for (int i = 0; i < model.P; ++i)
                    ts[l * model.P + i] = tv[i] * pulse.samples[i];
            return ts;
        }

        Eigen::VectorXcd angular_frequencies(const ReceptionModel &model)
        {
            Eigen::VectorXcd w((Eigen::Index)model.L * model.P);
            for (int l = 0; l < model.L; ++l)
                for (int i = 0; i < model.P; ++i)
                    w[l * model.P + i] = cdouble(0.0, -(model.bin(i) * model.delta_omega + model.omega0));
            return w;
        }

        void require_derivatives(const DirectionResponse &resp)
        {
            if (!resp.has_derivatives)
                throw DomainError("direction response was computed without derivatives");
        }
    } // namespace

    Eigen::MatrixXcd signal_gradient(const SignalParams &params, const DirectionResponse &resp, const ReceptionModel &model,
                                     const PulseSpectrum &pulse)
    {
        require_derivatives(resp);
        const SphericalVec P = polarization_vector(params);
        const Eigen::VectorXcd ts = delay_pulse(params, model, pulse);
        const cdouble et = std::polar(1.0, params.phase_theta), ep = std::polar(1.0, params.phase_phi);
        const cdouble I1(0.0, 1.0);

        Eigen::MatrixXcd G(ts.size(), 7);
        const Eigen::VectorXcd w = ts.cwiseProduct(P.theta * resp.u_theta + P.phi * resp.u_phi);
        G.col(0) = angular_frequencies(model).cwiseProduct(w);
        G.col(1) = ts.cwiseProduct(P.theta * resp.du_theta_dtheta + P.phi * resp.du_phi_dtheta);
        G.col(2) = ts.cwiseProduct(P.theta * resp.du_theta_dphi + P.phi * resp.du_phi_dphi);
        G.col(3) = ts.cwiseProduct(et * resp.u_theta);
        G.col(4) = ts.cwiseProduct(ep * resp.u_phi);
        G.col(5) = ts.cwiseProduct(I1 * P.theta * resp.u_theta);
        G.col(6) = ts.cwiseProduct(I1 * P.phi * resp.u_phi);
        return G;
    }

    Eigen::MatrixXcd signal_gradient(const SignalParams &params, const ReceptionModel &model, const PulseSpectrum &pulse)
    {
        return signal_gradient(params, direction_response(model, params.theta0, params.phi0, true), model, pulse);
    }

    Eigen::MatrixXcd signal_gradient_linear(const LinearSignalParams &params, const DirectionResponse &resp,
                                            const ReceptionModel &model, const PulseSpectrum &pulse)
    {
        require_derivatives(resp);
        const SignalParams full = params.to_full();
        const Eigen::VectorXcd ts = delay_pulse(full, model, pulse);
        const double sa = std::sin(params.alpha), ca = std::cos(params.alpha);
        Eigen::MatrixXcd G(ts.size(), 4);
        const Eigen::VectorXcd w = ts.cwiseProduct(sa * resp.u_theta + ca * resp.u_phi);
        G.col(0) = angular_frequencies(model).cwiseProduct(w);
        G.col(1) = ts.cwiseProduct(sa * resp.du_theta_dtheta + ca * resp.du_phi_dtheta);
        G.col(2) = ts.cwiseProduct(sa * resp.du_theta_dphi + ca * resp.du_phi_dphi);
        G.col(3) = ts.cwiseProduct(ca * resp.u_theta - sa * resp.u_phi);
        return G;
    }

    // ------------------------------------------------------------------------
    // Fisher information

    Eigen::MatrixXd fim_from_gradient(const Eigen::MatrixXcd &G, const NoiseModel &noise)
    {
        if (noise.kind == NoiseModel::Kind::white)
        {
            if (!(noise.sigma2 > 0.0))
                throw DomainError("noise variance must be positive");
            return (2.0 / noise.sigma2) * (G.adjoint() * G).real();
        }
        if (noise.C.rows() != G.rows() || noise.C.cols() != G.rows())
            throw ValidationError("noise covariance size does not match the signal vector");
        Eigen::LLT<Eigen::MatrixXcd> llt(noise.C);
        if (llt.info() != Eigen::Success)
            throw DomainError("noise covariance is not positive definite");
        const Eigen::MatrixXcd W = llt.matrixL().solve(G);
        Eigen::MatrixXd F = 2.0 * (W.adjoint() * W).real();
        return 0.5 * (F + F.transpose());
    }

    namespace
    {
        FimResult make_result(Eigen::MatrixXd F, Parameterization param, double delay_scale)
        {
            FimResult r;
            r.F = 0.5 * (F + F.transpose());
            r.param = param;
            r.delay_scale = delay_scale;
            r.report = conditioning(r.F, delay_scale);
            return r;
        }
    } // namespace

    FimResult fim(const SignalParams &params, const DirectionResponse &resp, const ReceptionModel &model,
                  const PulseSpectrum &pulse, const NoiseModel &noise)
    {
        return make_result(fim_from_gradient(signal_gradient(params, resp, model, pulse), noise), Parameterization::full,
                           model.omega0);
    }

    FimResult fim(const SignalParams &params, const ReceptionModel &model, const PulseSpectrum &pulse, const NoiseModel &noise)
    {
        return fim(params, direction_response(model, params.theta0, params.phi0, true), model, pulse, noise);
    }

    FimResult fim_linear(const LinearSignalParams &params, const DirectionResponse &resp, const ReceptionModel &model,
                         const PulseSpectrum &pulse, const NoiseModel &noise)
    {
        return make_result(fim_from_gradient(signal_gradient_linear(params, resp, model, pulse), noise),
                           Parameterization::linear, model.omega0);
    }

    FimResult fim_linear(const LinearSignalParams &params, const ReceptionModel &model, const PulseSpectrum &pulse,
                         const NoiseModel &noise)
    {
        return fim_linear(params, direction_response(model, params.theta0, params.phi0, true), model, pulse, noise);
    }

    Eigen::MatrixXd linear_jacobian(double alpha)
    {
        Eigen::MatrixXd I = Eigen::MatrixXd::Zero(7, 4);
        I(0, 0) = I(1, 1) = I(2, 2) = 1.0;
        I(3, 3) = std::cos(alpha);  // d P_theta / d alpha
        I(4, 3) = -std::sin(alpha); // d P_phi / d alpha
        return I;
    }

    FimResult reparameterize_linear(const FimResult &F, double alpha)
    {
        if (F.param != Parameterization::full || F.F.rows() != 7 || F.F.cols() != 7)
            throw DomainError("reparameterization needs a 7 x 7 full-parameter FIM");
        const Eigen::MatrixXd I = linear_jacobian(alpha);
        return make_result(I.transpose() * F.F * I, Parameterization::linear, F.delay_scale);
    }

    Eigen::MatrixXd crlb_matrix(const FimResult &F)
    {
        const ConditioningReport rep = conditioning(F.F, F.delay_scale);
        if (rep.singular)
            throw SingularFimError("Fisher information matrix is singular: " + rep.describe(), rep);
        const Eigen::VectorXd s = F.F.diagonal().cwiseSqrt().cwiseInverse();
        const Eigen::MatrixXd Fs = s.asDiagonal() * F.F * s.asDiagonal();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Fs);
        const Eigen::MatrixXd &V = es.eigenvectors();
        const Eigen::MatrixXd inv = V * es.eigenvalues().cwiseInverse().asDiagonal() * V.transpose();
        return s.asDiagonal() * inv * s.asDiagonal();
    }

    double crlb(const FimResult &F, int k)
    {
        if (k < 0 || k >= F.F.rows())
            throw DomainError("CRLB index out of range");
        return crlb_matrix(F)(k, k);
    }

    // ------------------------------------------------------------------------
    // Averages

    DirectionQuadrature average_quadrature(int n_theta, int n_phi)
    {
        if (n_theta < 1 || n_phi < 1)
            throw DomainError("average quadrature needs positive node counts");
        const GaussRule g = gauss_legendre(n_theta);
        DirectionQuadrature q;
        for (int i = 0; i < n_theta; ++i)
            for (int k = 0; k < n_phi; ++k)
            {
                q.theta.push_back(0.5 * pi * (g.nodes[i] + 1.0));
                q.phi.push_back((k + 0.5) * 2.0 * pi / n_phi);
                q.weight.push_back(0.5 * pi * g.weights[i] * 2.0 * pi / n_phi);
            }
        return q;
    }

    AverageCrlb average_crlb(const ReceptionModel &model, const PulseSpectrum &pulse, const NoiseModel &noise, double alpha,
                             const DirectionQuadrature &grid, double tau, unsigned threads)
    {
        const size_t n = grid.theta.size();
        if (n == 0 || grid.phi.size() != n || grid.weight.size() != n)
            throw DomainError("direction quadrature is empty or inconsistent");
        std::vector<double> bt(n), bp(n), ev(n);
        std::vector<char> ok(n, 0);
        detail::parallel_for(n, threads, [&](size_t i)
                             {
            const DirectionResponse resp = direction_response(model, grid.theta[i], grid.phi[i], true);
            const FimResult F = fim_linear({tau, grid.theta[i], grid.phi[i], alpha}, resp, model, pulse, noise);
            if (F.report.singular)
                return;
            const Eigen::MatrixXd C = crlb_matrix(F);
            bt[i] = C(1, 1), bp[i] = C(2, 2);
            ev[i] = F.report.scaled_lambda_min / F.report.scaled_lambda_max;
            ok[i] = 1; });

        AverageCrlb out;
        out.nodes = n;
        double wsum = 0.0;
        out.min_scaled_eigenvalue = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < n; ++i)
        {
            if (!ok[i])
            {
                ++out.singular_nodes;
                continue;
            }
            wsum += grid.weight[i];
            out.b_theta0 += grid.weight[i] * bt[i];
            out.b_phi0 += grid.weight[i] * bp[i];
            out.min_scaled_eigenvalue = std::min(out.min_scaled_eigenvalue, ev[i]);
        }
        if (out.singular_nodes == n)
            throw SingularFimError("Fisher information matrix is singular at every direction node", ConditioningReport{});
        out.b_theta0 /= wsum;
        out.b_phi0 /= wsum;
        return out;
    }

} // namespace swarray
