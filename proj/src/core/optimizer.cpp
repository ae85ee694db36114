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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "parallel.hpp"
#include "swarray/optimizer.hpp"
#include "swarray/quadrature.hpp"

namespace swarray
{
    namespace
    {
        constexpr double inf = std::numeric_limits<double>::infinity();

        double median(std::vector<double> v)
        {
            const size_t h = v.size() / 2;
            std::nth_element(v.begin(), v.begin() + (std::ptrdiff_t)h, v.end());
            if (v.size() % 2)
                return v[h];
            const double hi = v[h];
            return 0.5 * (hi + *std::max_element(v.begin(), v.begin() + (std::ptrdiff_t)h));
        }
    } // namespace

    // ------------------------------------------------------------------------
    // Domain

    void ParameterDomain::validate() const
    {
        if (theta.empty() || polarization.empty() || tau.empty())
            throw ValidationError("parameter domain needs direction, polarization and delay nodes");
        if (phi.size() != theta.size() || direction_weight.size() != theta.size() || tau_weight.size() != tau.size())
            throw ValidationError("parameter domain node and weight lists differ in length");
        for (size_t i = 0; i < theta.size(); ++i)
        {
            if (!(theta[i] > 0.0 && theta[i] < pi))
                throw ValidationError("direction node on or beyond a pole: theta0 = " + std::to_string(theta[i]));
            if (!(direction_weight[i] > 0.0))
                throw ValidationError("direction weights must be positive");
        }
        for (const auto &p : polarization)
            if (!(p.weight > 0.0))
                throw ValidationError("polarization weights must be positive");
        for (double w : tau_weight)
            if (!(w > 0.0))
                throw ValidationError("delay weights must be positive");
    }

    ParameterDomain make_domain(Parameterization mode, const DomainResolution &res, const NoiseModel &noise, double delta_omega)
    {
        if (res.theta_nodes < 1 || res.phi_nodes < 1 || res.alpha_nodes < 1 || res.phase_nodes < 1 || res.tau_nodes < 1)
            throw ValidationError("domain node counts must be positive");
        ParameterDomain d;
        d.mode = mode;

        // Gauss-Legendre in cos(theta); dividing by sin(theta) turns d(cos theta) into dtheta
        const GaussRule g = gauss_legendre(res.theta_nodes);
        const double dphi = 2.0 * pi / res.phi_nodes;
        for (int i = 0; i < res.theta_nodes; ++i)
        {
            const double th = std::acos(g.nodes[i]);
            for (int k = 0; k < res.phi_nodes; ++k)
            {
                d.theta.push_back(th);
                d.phi.push_back(k * dphi);
                d.direction_weight.push_back(g.weights[i] / std::sin(th) * dphi);
            }
        }

        if (mode == Parameterization::linear)
        {
            const double da = pi / res.alpha_nodes;
            for (int a = 0; a < res.alpha_nodes; ++a)
                d.polarization.push_back({(a + 0.5) * da, 0.0, da});
        }
        else
        {
            const double da = 0.5 * pi / res.alpha_nodes, dd = 2.0 * pi / res.phase_nodes;
            for (int a = 0; a < res.alpha_nodes; ++a)
                for (int q = 0; q < res.phase_nodes; ++q)
                    d.polarization.push_back({(a + 0.5) * da, (q + 0.5) * dd, da * dd * 2.0 * pi});
        }

        const double tmax = tau_max(delta_omega);
        d.tau_invariant = noise.kind == NoiseModel::Kind::white;
        if (d.tau_invariant)
        {
            d.tau = {0.0};
            d.tau_weight = {tmax};
        }
        else
            for (int t = 0; t < res.tau_nodes; ++t)
            {
                d.tau.push_back((t + 0.5) * tmax / res.tau_nodes);
                d.tau_weight.push_back(tmax / res.tau_nodes);
            }
        return d;
    }

    ParameterDomain single_node_domain(Parameterization mode, double theta0, double phi0, double alpha, double phase_diff,
                                       double tau)
    {
        ParameterDomain d;
        d.mode = mode;
        d.theta = {theta0};
        d.phi = {phi0};
        d.direction_weight = {1.0};
        d.polarization = {{alpha, phase_diff, 1.0}};
        d.tau_invariant = false;
        d.tau = {tau};
        d.tau_weight = {1.0};
        return d;
    }

    Criterion parse_criterion(const std::string &s)
    {
        if (s == "A" || s == "a")
            return Criterion::A;
        if (s == "D" || s == "d")
            return Criterion::D;
        throw ValidationError("criterion must be A or D, got '" + s + "'");
    }

    const char *criterion_name(Criterion c) { return c == Criterion::A ? "A" : "D"; }

    // ------------------------------------------------------------------------
    // Objectives

    ObjectiveValue evaluate_objective(Criterion c, const ReceptionModel &model, const ParameterDomain &domain,
                                      const PulseSpectrum &pulse, const NoiseModel &noise, unsigned threads)
    {
        domain.validate();
        check_pulse(model, pulse);
        const size_t nd = domain.theta.size(), np = domain.polarization.size(), nt = domain.tau.size();
        const size_t per_dir = np * nt;

        // Node value and a singular flag, ordered as (direction, polarization, delay)
        std::vector<double> val(nd * per_dir, 0.0);
        std::vector<char> sing(nd * per_dir, 0);

        detail::parallel_for(nd, threads, [&](size_t i)
                             {
            const DirectionResponse resp = direction_response(model, domain.theta[i], domain.phi[i], true);
            for (size_t p = 0; p < np; ++p)
                for (size_t t = 0; t < nt; ++t)
                {
                    const auto &pol = domain.polarization[p];
                    FimResult F;
                    if (domain.mode == Parameterization::linear)
                        F = fim_linear({domain.tau[t], domain.theta[i], domain.phi[i], pol.alpha}, resp, model, pulse, noise);
                    else
                    {
                        SignalParams sp;
                        sp.tau = domain.tau[t];
                        sp.theta0 = domain.theta[i];
                        sp.phi0 = domain.phi[i];
                        sp.p_theta = std::sin(pol.alpha);
                        sp.p_phi = std::cos(pol.alpha);
                        sp.phase_theta = pol.phase_diff;
                        sp.phase_phi = 0.0;
                        F = fim(sp, resp, model, pulse, noise);
                    }
                    const size_t idx = (i * np + p) * nt + t;
                    if (c == Criterion::D)
                        val[idx] = F.F.determinant();
                    else if (F.report.singular)
                        sing[idx] = 1;
                    else
                    {
                        try
                        {
                            val[idx] = crlb_matrix(F).trace();
                        }
                        catch (const SingularFimError &)
                        {
                            sing[idx] = 1;
                        }
                    }
                } });

        ObjectiveValue out;
        out.nodes = val.size();
        double penalty = 0.0;
        if (c == Criterion::A)
        {
            std::vector<double> finite;
            for (size_t k = 0; k < val.size(); ++k)
                if (!sing[k])
                    finite.push_back(val[k]);
            out.singular_nodes = val.size() - finite.size();
            if (finite.empty())
            {
                out.value = inf;
                out.feasible = false;
                out.message = "Fisher information matrix is singular at every domain node";
                return out;
            }
            if (out.singular_nodes)
                penalty = singular_penalty_factor * median(finite);
        }

        double sum = 0.0;
        for (size_t i = 0; i < nd; ++i)
            for (size_t p = 0; p < np; ++p)
                for (size_t t = 0; t < nt; ++t)
                {
                    const size_t idx = (i * np + p) * nt + t;
                    const double w = domain.direction_weight[i] * domain.polarization[p].weight * domain.tau_weight[t];
                    sum += w * (sing[idx] ? penalty : val[idx]);
                }
        out.value = c == Criterion::D ? -sum : sum;
        return out;
    }

    void Scenario::prepare()
    {
        if (elements.empty())
            throw ValidationError("scenario has no elements");
        if (N < 0)
            throw ValidationError("truncation order cannot be negative");
        if (!(omega0 > 0.0) || !(delta_omega > 0.0))
            throw ValidationError("carrier and bin spacing must be positive");
        if (P < 1 || P % 2 == 0)
            throw ValidationError("number of frequency bins must be odd");
        if (omega0 - (P - 1) / 2 * delta_omega <= 0.0)
            throw ValidationError("lowest bin frequency must be positive");
        if (pulse.size() != P)
            throw ValidationError("pulse has " + std::to_string(pulse.size()) + " samples, expected " + std::to_string(P));
        if (geometry.initial.size() != geometry.map.size())
            throw ValidationError("geometry initial vector does not match the parameter map");
        for (size_t i = 0; i < geometry.map.size(); ++i)
        {
            const GeometryParam &g = geometry.map[i];
            if (!std::isfinite(g.lower) || !std::isfinite(g.upper) || g.lower > g.upper)
                throw ValidationError("geometry bounds of '" + g.name + "' are not a finite interval");
            if (g.element >= elements.size())
                throw ValidationError("geometry entry '" + g.name + "' refers to a missing element");
            if (elements[g.element].kind == ElementKind::imported)
                throw ValidationError("geometry entry '" + g.name + "' targets an imported element, which cannot move");
        }
        geometry.check(geometry.initial);

        const FieldSampleSet *imp = nullptr;
        for (const auto &e : elements)
            if (e.kind == ElementKind::imported)
            {
                if (!e.imported)
                    throw ValidationError("imported element '" + e.name + "' has no field data");
                if (!imp)
                    imp = e.imported.get();
            }

        const double w_max = omega0 + (P - 1) / 2 * delta_omega;
        const double k_max = w_max / speed_of_light;
        if (imp)
        {
            if (sphere.radius <= 0.0)
                sphere.radius = imp->radius;
            // The file's grid caps the order it can resolve
            const int grid_max = std::min((int)imp->grid.n_theta() - 1, ((int)imp->grid.n_phi() - 2) / 2);
            if (N == 0)
                N = std::max(1, std::min(recommended_order(k_max, sphere.radius), grid_max));
            if (grid_order == 0)
                grid_order = imp->grid.n_theta() - 1;
        }
        const std::vector<PositionBox> boxes = geometry.position_boxes(elements);
        if (sphere.radius <= 0.0)
            sphere = default_sphere(boxes, 0.25 * 2.0 * pi / k_max);
        if (N == 0)
            N = recommended_order(k_max, sphere.radius);
        if (grid_order == 0)
        {
            double off = 0.0;
            for (const auto &b : boxes)
                for (int corner = 0; corner < 8; ++corner)
                {
                    double d2 = 0.0;
                    for (int a = 0; a < 3; ++a)
                    {
                        const double v = ((corner >> a) & 1) ? b.upper[a] : b.lower[a];
                        d2 += (v - sphere.center[a]) * (v - sphere.center[a]);
                    }
                    off = std::max(off, std::sqrt(d2));
                }
            grid_order = default_grid_order(N, k_max, sphere.radius, off);
        }
        if (grid_order < N)
            throw ValidationError("grid order " + std::to_string(grid_order) + " cannot resolve truncation order " +
                                  std::to_string(N));
    }

    std::string Scenario::truncation_note() const
    {
        return truncation_warning(N, (omega0 + (P - 1) / 2 * delta_omega) / speed_of_light, sphere.radius);
    }

    SphereGrid Scenario::grid() const
    {
        for (const auto &e : elements)
            if (e.kind == ElementKind::imported && e.imported)
                return e.imported->grid;
        return make_sphere_grid(grid_order);
    }

    ReceptionModel build_candidate_model(const Scenario &scenario, const std::vector<double> &gamma, unsigned threads)
    {
        const std::vector<ElementSpec> el = scenario.geometry.apply(scenario.elements, gamma);
        const FieldSampleSet fields =
            synthesize_array_fields(el, scenario.sphere, scenario.grid(), scenario.frequencies(), scenario.min_spacing);
        return build_reception_model(fields, scenario.N, scenario.omega0, scenario.delta_omega, scenario.P, threads);
    }

    namespace
    {
        ObjectiveValue objective(Criterion c, const std::vector<double> &gamma, const ParameterDomain &domain,
                                 const Scenario &scenario, unsigned threads)
        {
            try
            {
                const ReceptionModel model = build_candidate_model(scenario, gamma, threads);
                return evaluate_objective(c, model, domain, scenario.pulse, scenario.noise, threads);
            }
            catch (const Error &e)
            {
                ObjectiveValue v;
                v.value = inf;
                v.feasible = false;
                v.message = e.what();
                return v;
            }
        }
    } // namespace

    ObjectiveValue objective_A(const std::vector<double> &gamma, const ParameterDomain &domain, const Scenario &scenario,
                               unsigned threads)
    {
        return objective(Criterion::A, gamma, domain, scenario, threads);
    }

    ObjectiveValue objective_D(const std::vector<double> &gamma, const ParameterDomain &domain, const Scenario &scenario,
                               unsigned threads)
    {
        return objective(Criterion::D, gamma, domain, scenario, threads);
    }

    // ------------------------------------------------------------------------
    // Differential evolution

    void DeConfig::validate() const
    {
        if (population < 4)
            throw ValidationError("population must be at least 4");
        if (generations < 0)
            throw ValidationError("number of generations cannot be negative");
        if (!(mutation > 0.0 && mutation < 2.0))
            throw ValidationError("mutation factor must lie in (0, 2)");
        if (!(mutation_upper < 2.0) || std::isnan(mutation_upper))
            throw ValidationError("upper mutation factor must lie below 2");
        if (!(crossover >= 0.0 && crossover <= 1.0))
            throw ValidationError("crossover rate must lie in [0, 1]");
    }

    DeStrategy parse_de_strategy(const std::string &s)
    {
        if (s == "best1bin")
            return DeStrategy::best1bin;
        if (s == "rand1bin")
            return DeStrategy::rand1bin;
        throw ValidationError("DE strategy must be best1bin or rand1bin, got '" + s + "'");
    }

    const char *de_strategy_name(DeStrategy s) { return s == DeStrategy::best1bin ? "best1bin" : "rand1bin"; }

    DeUpdating parse_de_updating(const std::string &s)
    {
        if (s == "immediate")
            return DeUpdating::immediate;
        if (s == "deferred")
            return DeUpdating::deferred;
        throw ValidationError("DE updating must be immediate or deferred, got '" + s + "'");
    }

    const char *de_updating_name(DeUpdating u) { return u == DeUpdating::immediate ? "immediate" : "deferred"; }

    OptimizationResult differential_evolution(const ObjectiveFn &objective, const std::vector<double> &lower,
                                              const std::vector<double> &upper, const DeConfig &config,
                                              const std::vector<double> &initial)
    {
        config.validate();
        const size_t D = lower.size();
        if (upper.size() != D)
            throw ValidationError("lower and upper bounds differ in length");
        for (size_t k = 0; k < D; ++k)
            if (!std::isfinite(lower[k]) || !std::isfinite(upper[k]) || lower[k] > upper[k])
                throw ValidationError("bounds must be finite with lower <= upper");
        if (!initial.empty() && initial.size() != D)
            throw ValidationError("initial vector does not match the bounds");
        for (size_t k = 0; k < initial.size(); ++k)
            if (!(initial[k] >= lower[k] && initial[k] <= upper[k]))
                throw ValidationError("initial vector entry " + std::to_string(k) + " lies outside its bounds");

        const auto t0 = std::chrono::steady_clock::now();
        std::mt19937_64 rng(config.seed);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        const size_t NP = (size_t)config.population;

        auto clip = [&](std::vector<double> &x)
        {
            for (size_t k = 0; k < D; ++k)
                x[k] = std::clamp(x[k], lower[k], upper[k]);
        };
        auto safe_eval = [&](const std::vector<double> &x)
        {
            double f;
            try
            {
                f = objective(x);
            }
            catch (const std::exception &)
            {
                f = inf;
            }
            return std::isnan(f) ? inf : f;
        };
        auto eval_all = [&](const std::vector<std::vector<double>> &xs, std::vector<double> &fs)
        {
            fs.assign(xs.size(), inf);
            const unsigned width = config.updating == DeUpdating::deferred ? config.parallel : 1u;
            detail::parallel_for(xs.size(), width, [&](size_t i)
                                 { fs[i] = safe_eval(xs[i]); });
        };

        std::vector<std::vector<double>> pop(NP, std::vector<double>(D));
        for (auto &x : pop)
            for (size_t k = 0; k < D; ++k)
                x[k] = lower[k] + (upper[k] - lower[k]) * u01(rng);
        if (!initial.empty())
        {
            pop[0] = initial;
        }
        std::vector<double> fit;
        eval_all(pop, fit);

        OptimizationResult res;
        res.evaluations = NP;
        if (!initial.empty())
        {
            res.initial_gamma = pop[0];
            res.initial_objective = fit[0];
        }
        auto record = [&](int g)
        {
            GenerationRecord r;
            r.generation = g;
            r.best = *std::min_element(fit.begin(), fit.end());
            double s = 0.0;
            size_t n = 0;
            for (double f : fit)
                if (std::isfinite(f))
                    s += f, ++n;
            r.mean = n ? s / (double)n : inf;
            r.infeasible = NP - n;
            r.evaluations = res.evaluations;
            res.trace.push_back(r);
        };
        record(0);

        std::uniform_int_distribution<size_t> pick(0, NP - 1);
        std::uniform_int_distribution<size_t> pick_dim(0, D ? D - 1 : 0);
        std::vector<std::vector<double>> trial(NP, std::vector<double>(D));
        std::vector<double> trial_fit;
        size_t best = (size_t)(std::min_element(fit.begin(), fit.end()) - fit.begin());

        // Mutant and binomial crossover for member i; draws from rng in a fixed order
        auto make_trial = [&](size_t i, double F, std::vector<double> &t)
        {
            size_t r1, r2, r3;
            do
                r1 = pick(rng);
            while (r1 == i);
            do
                r2 = pick(rng);
            while (r2 == i || r2 == r1);
            do
                r3 = pick(rng);
            while (r3 == i || r3 == r1 || r3 == r2);
            const size_t base = config.strategy == DeStrategy::best1bin ? best : r3;
            const size_t jrand = pick_dim(rng);
            for (size_t k = 0; k < D; ++k)
            {
                const bool cross = u01(rng) < config.crossover || k == jrand;
                t[k] = cross ? pop[base][k] + F * (pop[r1][k] - pop[r2][k]) : pop[i][k];
            }
            clip(t);
        };

        for (int g = 1; g <= config.generations; ++g)
        {
            const double F = config.mutation_upper > config.mutation
                                 ? config.mutation + (config.mutation_upper - config.mutation) * u01(rng)
                                 : config.mutation;
            if (config.updating == DeUpdating::immediate)
            {
                // Each accepted trial is visible to the next one, including as the new best
                for (size_t i = 0; i < NP; ++i)
                {
                    make_trial(i, F, trial[i]);
                    const double f = safe_eval(trial[i]);
                    if (f <= fit[i])
                    {
                        pop[i] = trial[i];
                        fit[i] = f;
                        if (f < fit[best])
                            best = i;
                    }
                }
            }
            else
            {
                for (size_t i = 0; i < NP; ++i)
                    make_trial(i, F, trial[i]);
                eval_all(trial, trial_fit);
                for (size_t i = 0; i < NP; ++i)
                    if (trial_fit[i] <= fit[i])
                    {
                        pop[i] = trial[i];
                        fit[i] = trial_fit[i];
                    }
                best = (size_t)(std::min_element(fit.begin(), fit.end()) - fit.begin());
            }
            res.evaluations += NP;
            record(g);
        }

        best = (size_t)(std::min_element(fit.begin(), fit.end()) - fit.begin());
        res.best_gamma = pop[best];
        res.best_objective = fit[best];
        res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return res;
    }

    OptimizationResult optimize_array(OptimizeRun run)
    {
        run.scenario.prepare();
        run.domain.validate();
        run.de.validate();

        const Scenario &sc = run.scenario;
        const ParameterDomain &dom = run.domain;
        const Criterion crit = run.criterion;
        // Threads go to the candidates under deferred updating, else into each objective evaluation
        const unsigned inner = run.de.updating == DeUpdating::deferred ? 1u : run.de.parallel;
        auto f = [&](const std::vector<double> &gamma)
        { return objective(crit, gamma, dom, sc, inner).value; };

        OptimizationResult res = differential_evolution(f, sc.geometry.lower(), sc.geometry.upper(), run.de, sc.geometry.initial);
        res.notes.push_back(std::string("criterion ") + criterion_name(crit) + ", " + std::to_string(dom.size()) +
                            " domain nodes per candidate");
        if (dom.tau_invariant)
            res.notes.push_back("white noise: the FIM does not depend on the delay, so a single delay node of weight tau_max is used");
        if (!std::isfinite(res.initial_objective))
            res.notes.push_back("the initial arrangement is infeasible");
        if (!sc.truncation_note().empty())
            res.notes.push_back(sc.truncation_note());
        return res;
    }

} // namespace swarray
