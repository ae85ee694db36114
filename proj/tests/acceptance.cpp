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
// Acceptance checks: one PASS/FAIL line per criterion, exit status 0 only if all pass.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "swarray/analysis.hpp"
#include "swarray/config.hpp"
#include "swarray/swe.hpp"
#include "test_util.hpp"

using namespace swarray;
using test_util::rel;

namespace
{
    constexpr double deg = pi / 180.0;

    struct Outcome
    {
        bool pass = true;
        std::ostringstream detail;

        void require(bool ok, const std::string &what)
        {
            if (!ok)
            {
                pass = false;
                detail << " [failed: " << what << "]";
            }
        }
    };

    double scaled_diff(const Eigen::MatrixXd &A, const Eigen::MatrixXd &B)
    {
        double e = 0.0;
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            for (Eigen::Index j = 0; j < A.cols(); ++j)
                e = std::max(e, std::abs(A(i, j) - B(i, j)) / std::sqrt(std::abs(A(i, i) * A(j, j))));
        return e;
    }

    double median(std::vector<double> v)
    {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    }

    void index_algebra(Outcome &o)
    {
        const int J = mode_count(25);
        o.require(J == 1350, "J(25) = 1350");
        std::vector<char> hit(J + 1, 0);
        int bad = 0;
        for (int n = 1; n <= 25; ++n)
            for (int m = -n; m <= n; ++m)
                for (int s = 1; s <= 2; ++s)
                {
                    const int j = mode_index_from_triple(s, m, n);
                    if (j < 1 || j > J || hit[j])
                        ++bad;
                    else
                        hit[j] = 1;
                }
        for (int j = 1; j <= J; ++j)
        {
            const ModeIndex t = triple_from_mode_index(j);
            const ModeIndex h = triple_from_mode_index(conjugate_m_index(j));
            if (mode_index_from_triple(t) != j || conjugate_m_index(conjugate_m_index(j)) != j || h.s != t.s ||
                h.n != t.n || h.m != -t.m)
                ++bad;
        }
        o.require(bad == 0, "bijection and involution");
        o.detail << "J(25) = " << J << ", violations " << bad;
    }

    void swc_round_trip(Outcome &o)
    {
        const int N = 8;
        const double omega = 2.0 * pi * 3e9, k = omega / speed_of_light, radius = 5.0 / k;
        std::mt19937_64 rng(5);
        std::normal_distribution<double> g;
        CoefficientSet T;
        T.order = N;
        T.omega = omega;
        T.values.resize(mode_count(N));
        for (auto &v : T.values)
            v = {g(rng), g(rng)};
        const SphereGrid grid = make_sphere_grid(N);
        const CoefficientSet X = extract_transmission(synthesize_field(T, grid, radius), grid, radius, omega, N);
        double worst = 0.0;
        for (size_t j = 0; j < T.values.size(); ++j)
            worst = std::max(worst, rel(X.values[j], T.values[j]));
        o.require(worst < 1e-8, "round trip");

        const ElementSpec z = test_util::dipole(0, 0, DipoleAxis::z);
        const double wz = 2.0 * pi * 8e9;
        const ExpansionSphere sph{{0, 0, 0}, 0.02};
        const SphereGrid gz = make_sphere_grid(12);
        const CoefficientSet D = extract_transmission(dipole_field(z, gz, sph, wz)[0], gz, sph.radius, wz, 6);
        const int j0 = mode_index_from_triple(2, 0, 1);
        double others = 0.0;
        for (size_t j = 0; j < D.values.size(); ++j)
            if ((int)j != j0 - 1)
                others = std::max(others, std::abs(D.values[j]));
        others /= std::abs(D.values[j0 - 1]);
        o.require(others < 1e-10, "z-dipole single mode");
        o.detail << "round-trip max rel error " << worst << ", z-dipole largest other mode " << others;
    }

    void orthogonality(Outcome &o)
    {
        const int N = 6;
        double worst = 0.0;
        for (double kr : {0.8, 3.7, 9.0})
        {
            const SphereGrid grid = make_sphere_grid(2 * N + 2);
            const int J = mode_count(N);
            std::vector<std::vector<SphericalVec>> F(J);
            for (int j = 1; j <= J; ++j)
                for (size_t i = 0; i < grid.n_theta(); ++i)
                    for (size_t k = 0; k < grid.n_phi(); ++k)
                        F[j - 1].push_back(vswf_F(3, triple_from_mode_index(j), kr, grid.theta_nodes[i], grid.phi_nodes[k]));
            std::vector<std::vector<cdouble>> rows;
            for (int a = 1; a <= J; ++a)
            {
                std::vector<cdouble> row(J);
                for (int b = 1; b <= J; ++b)
                {
                    const int bh = conjugate_m_index(b);
                    cdouble s = 0;
                    size_t idx = 0;
                    for (size_t i = 0; i < grid.n_theta(); ++i)
                        for (size_t k = 0; k < grid.n_phi(); ++k, ++idx)
                        {
                            const SphericalVec &u = F[a - 1][idx], &v = F[bh - 1][idx];
                            s += grid.theta_weights[i] * grid.phi_step() * (u.r * v.r + u.theta * v.theta + u.phi * v.phi);
                        }
                    row[b - 1] = s;
                }
                rows.push_back(std::move(row));
            }
            for (int a = 1; a <= J; ++a)
                for (int b = 1; b <= J; ++b)
                    if (b != a)
                        worst = std::max(worst, std::abs(rows[a - 1][b - 1]) /
                                                    std::sqrt(std::abs(rows[a - 1][a - 1]) * std::abs(rows[b - 1][b - 1])));
        }
        o.require(worst < 1e-10, "off-diagonal / diagonal");
        o.detail << "N = 6, kr in {0.8, 3.7, 9}: max |G_ab| / sqrt(G_aa G_bb) " << worst;
    }

    void gradient_suite(Outcome &o)
    {
        const ReceptionModel m = test_util::model(test_util::dipole_triplet(), 6, 8.0, 25.0, 21);
        const PulseSpectrum S = PulseSpectrum::flat(21);
        o.require(m.L == 3 && m.P == 21 && m.N == 6, "L = 3, P = 21, N = 6");
        std::mt19937_64 rng(2718);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        double worst = 0.0;
        for (int draw = 0; draw < 50; ++draw)
        {
            SignalParams p;
            p.tau = (0.05 + 0.9 * U(rng)) * tau_max(m.delta_omega);
            p.theta0 = 0.2 + 2.7 * U(rng);
            p.phi0 = 2.0 * pi * U(rng);
            const double a = 0.1 + 1.3 * U(rng);
            p.p_theta = std::sin(a), p.p_phi = std::cos(a);
            p.phase_theta = 2.0 * pi * U(rng), p.phase_phi = 2.0 * pi * U(rng);
            const Eigen::MatrixXcd G = signal_gradient(p, m, S);
            const Eigen::MatrixXcd R = oracles::fd_gradient(p, m, S);
            for (int k = 0; k < 7; ++k)
                worst = std::max(worst, (G.col(k) - R.col(k)).norm() / R.col(k).norm());
        }
        o.require(worst < 1e-6, "relative error < 1e-6");
        o.detail << "50 draws x 7 columns: max relative error " << worst;
    }

    void fim_structure(Outcome &o)
    {
        const ReceptionModel m = test_util::model(test_util::dipole_triplet(), 6, 8.0, 25.0, 21);
        const PulseSpectrum S = PulseSpectrum::flat(21);
        const NoiseModel noise = NoiseModel::white(0.01);
        SignalParams p;
        p.theta0 = 1.2, p.phi0 = 0.5, p.p_theta = 0.6, p.p_phi = 0.8, p.phase_phi = 0.4, p.tau = 2e-9;
        const FimResult F1 = fim(p, m, S, noise);
        p.tau = 31e-9;
        const FimResult F2 = fim(p, m, S, noise);

        const double asym = (F1.F - F1.F.transpose()).norm();
        const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(F1.F).eigenvalues().minCoeff();
        o.require(asym == 0.0, "symmetry");
        o.require(min_eig >= -1e-10 * F1.F.trace(), "PSD");
        const double tau_dev = scaled_diff(F1.F, F2.F);
        o.require(tau_dev < 1e-9, "tau invariance");

        PulseSpectrum Sc = S;
        const cdouble c(0.3, -1.7);
        for (auto &s : Sc.samples)
            s *= c;
        const double pulse_dev = scaled_diff(fim(p, m, Sc, noise).F, std::norm(c) * F2.F);
        o.require(pulse_dev < 1e-12, "pulse scaling");

        double reparam_dev = 0.0;
        for (double alpha : {0.2, 1.0, 2.4})
        {
            const LinearSignalParams q{12e-9, 1.4, 2.1, alpha};
            const Eigen::MatrixXcd G = oracles::fd_gradient_linear(q, m, S);
            const Eigen::MatrixXd ref = 2.0 / noise.sigma2 * (G.adjoint() * G).real();
            reparam_dev = std::max(reparam_dev, scaled_diff(reparameterize_linear(fim(q.to_full(), m, S, noise), alpha).F, ref));
        }
        o.require(reparam_dev < 1e-6, "reparameterized FIM");
        o.detail << "asymmetry " << asym << ", min eigenvalue / trace " << min_eig / F1.F.trace() << ", tau deviation "
                 << tau_dev << ", pulse-scaling deviation " << pulse_dev << ", reparameterization deviation " << reparam_dev;
    }

    void estimator_sanity(Outcome &o)
    {
        const ReceptionModel m = test_util::model({test_util::dipole(0, 0)}, 4, 8.0, 25.0, 21);
        o.require(m.L == 1, "single port");
        const SignalParams truth = LinearSignalParams{17.3e-9, 1.3, 0.2, 0.3}.to_full();
        const oracles::DelayMonteCarlo mc = oracles::ml_delay_monte_carlo(m, truth, 20.0, 500, 2024);
        const double floor = oracles::variance_floor(mc);
        o.require(mc.variance >= floor, "variance >= CRLB within sampling error");
        o.require(mc.variance <= 3.0 * mc.crlb, "variance <= 3 CRLB");
        o.detail << "500 trials at 20 dB: variance / CRLB = " << mc.variance / mc.crlb << " (sampling floor "
                 << floor / mc.crlb << ", ceiling 3)";
    }

    const ReceptionModel &triplet()
    {
        static const ReceptionModel m = test_util::model(test_util::dipole_triplet(), 0, 8.0, 25.0, 21);
        return m;
    }

    void beam_pattern_check(Outcome &o)
    {
        const ReceptionModel m = test_util::model(test_util::raised_triplet(), 0, 8.0, 25.0, 21);
        const SignalParams p = LinearSignalParams{0.0, 30 * deg, 60 * deg, 45 * deg}.to_full();
        const double at_truth = beam_pattern(p.theta0, p.phi0, p, m);
        o.require(std::abs(at_truth - 1.0) < 1e-12, "S = 1 at the true direction");
        std::vector<double> th, ph;
        for (int i = 0; i <= 90; ++i)
            th.push_back(i * 2 * deg);
        for (int k = 0; k < 180; ++k)
            ph.push_back(k * 2 * deg);
        const BeamPatternGrid g = beam_pattern_grid(p, m, th, ph, 4);
        const double peak = *std::max_element(g.values.begin(), g.values.end());
        o.require(peak <= 1.0 + 1e-12, "S <= 1");
        o.require(g.max_sidelobe > 0.0 && g.max_sidelobe < 1.0, "0 < peak sidelobe < 1");
        o.detail << std::setprecision(8) << "raised triplet, N = " << m.N << ", |S(truth) - 1| = " << std::abs(at_truth - 1.0) << ", grid max " << peak
                 << ", peak sidelobe " << g.max_sidelobe << " at (" << g.sidelobe_theta / deg << ", "
                 << g.sidelobe_phi / deg << ") deg";
    }

    void crlb_structure(Outcome &o)
    {
        const PulseSpectrum S = PulseSpectrum::flat(21);
        const NoiseModel noise = NoiseModel::white(0.01);

        const double beta = 10 * deg;
        const ReceptionModel tilted = test_util::model({test_util::dipole(0, 0, DipoleAxis::y, beta),
                                                        test_util::dipole(70, 0, DipoleAxis::y, beta),
                                                        test_util::dipole(0, 70, DipoleAxis::y, beta)},
                                                       0, 8.0, 25.0, 21);
        std::vector<double> theta;
        for (int i = 10; i <= 170; i += 10)
            if (i != 90)
                theta.push_back(i * deg);
        double co = 0.0, cross = 0.0;
        for (const CrlbMapRow &r : crlb_map(tilted, S, noise, {0.0, 90 * deg}, theta, {0.0}))
        {
            o.require(!r.singular, "finite CRLB along the cut");
            (r.alpha == 0.0 ? co : cross) += r.b_theta0;
        }
        const double ratio = cross / co;
        o.require(ratio >= 10.0, "cross / co >= 10");

        const ReceptionModel &m = triplet();
        std::vector<double> mid;
        for (int i = 45; i <= 135; i += 5)
            mid.push_back(i * deg);
        std::vector<double> b;
        for (const CrlbMapRow &r : crlb_map(m, S, noise, {45 * deg}, mid, {30 * deg}))
            b.push_back(r.b_phi0);
        double pole_ratio = 0.0;
        std::ostringstream growth;
        for (double t : {5.0, 2.0, 0.5})
        {
            const double v = crlb_map(m, S, noise, {45 * deg}, {t * deg}, {30 * deg})[0].b_phi0 / median(b);
            growth << " " << t << " deg: " << v;
            pole_ratio = v;
        }
        o.require(pole_ratio >= 100.0, "B_phi0 pole divergence");
        o.detail << "mean B_theta0 cross / co on the phi0 = 0 cut " << ratio << "; B_phi0 / mid-elevation median:"
                 << growth.str();
    }

    void optimization(Outcome &o)
    {
        const RunConfig cfg = load_run_config(std::filesystem::path(SWARRAY_SOURCE_DIR) / "configs" /
                                              "crossed_dipoles_optimize.json");
        OptimizeRun run;
        run.scenario = cfg.scenario();
        run.criterion = Criterion::D;
        run.de = cfg.optimize.de;
        run.de.parallel = 4;
        run.domain = make_domain(cfg.optimize.mode, cfg.optimize.resolution, run.scenario.noise, run.scenario.delta_omega);
        o.require(run.scenario.elements.size() == 3 && run.scenario.N == 6, "3 crossed dipoles, N = 6");
        o.require(run.de.population == 8 && run.de.generations == 10, "population 8, 10 generations");
        const auto t0 = std::chrono::steady_clock::now();
        const OptimizationResult r = optimize_array(run);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool monotone = true;
        for (size_t g = 1; g < r.trace.size(); ++g)
            monotone = monotone && r.trace[g].best <= r.trace[g - 1].best;
        o.require(secs < 600.0, "under 10 min");
        o.require(monotone, "non-increasing trace");
        o.require(r.best_objective < r.initial_objective, "improves on the initial geometry");
        o.detail << "seed " << run.de.seed << ", " << r.evaluations << " evaluations in " << secs
                 << " s on 4 threads, objective " << r.initial_objective << " -> " << r.best_objective;
    }

    void delay_bound(Outcome &o)
    {
        const double dw = 2.0 * pi * 25e6, w0 = 2.0 * pi * 8e9;
        const double tm = tau_max(dw);
        o.require(std::abs(tm - 40e-9) < 1e-20, "tau_max = 40 ns");
        bool below = true, at = false, above = false;
        try
        {
            tau_vector(0.999999 * tm, 21, dw, w0);
        }
        catch (const DomainError &)
        {
            below = false;
        }
        for (auto [t, flag] : {std::pair<double, bool *>{tm, &at}, {1.5 * tm, &above}})
            try
            {
                tau_vector(t, 21, dw, w0);
            }
            catch (const DomainError &)
            {
                *flag = true;
            }
        const ReceptionModel m = test_util::model(test_util::dipole_triplet(), 4, 8.0, 25.0, 21);
        bool signal_rejects = false;
        try
        {
            assemble_signal_vector(LinearSignalParams{tm, 1.0, 1.0, 0.3}.to_full(), m, PulseSpectrum::flat(21));
        }
        catch (const DomainError &)
        {
            signal_rejects = true;
        }
        o.require(below, "tau just below tau_max accepted");
        o.require(at && above && signal_rejects, "tau >= tau_max rejected");
        o.detail << "tau_max = " << tm * 1e9 << " ns; tau = tau_max rejected by the delay vector and the signal model";
    }
} // namespace

int main()
{
    struct Criterion
    {
        const char *name;
        std::function<void(Outcome &)> run;
    };
    const std::vector<Criterion> criteria = {
        {"index algebra", index_algebra},
        {"SWC round trip", swc_round_trip},
        {"VSWF orthogonality", orthogonality},
        {"gradient suite", gradient_suite},
        {"FIM structure", fim_structure},
        {"estimator sanity", estimator_sanity},
        {"beam pattern", beam_pattern_check},
        {"CRLB qualitative structure", crlb_structure},
        {"end-to-end optimization", optimization},
        {"delay ambiguity bound", delay_bound},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i)
    {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try
        {
            criteria[i].run(o);
        }
        catch (const std::exception &e)
        {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += o.pass ? 0 : 1;
        std::printf("%s  %2zu  %-28s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
