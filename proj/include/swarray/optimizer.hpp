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

#ifndef SWARRAY_OPTIMIZER_HPP
#define SWARRAY_OPTIMIZER_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "swarray/elements.hpp"
#include "swarray/fisher.hpp"
#include "swarray/sigmodel.hpp"

namespace swarray
{
    // Quadrature over the signal-parameter domain.
    // Directions: Gauss-Legendre in cos(theta0) re-weighted to the measure dtheta0 dphi0, uniform in phi0.
    // Linear mode: midpoint nodes in the slant alpha over [0, pi].
    // Full mode: midpoint nodes in the slant over [0, pi/2] (P_theta = sin, P_phi = cos) and in the phase
    // difference phase_theta - phase_phi over [0, 2 pi). The FIM does not depend on the common phase, so
    // its integral is carried as a factor 2 pi in the weights.
    struct ParameterDomain
    {
        Parameterization mode = Parameterization::linear;

        std::vector<double> theta, phi, direction_weight; // one entry per direction node

        struct PolarizationNode
        {
            double alpha = 0.0;      // slant
            double phase_diff = 0.0; // phase_theta - phase_phi, full mode only
            double weight = 1.0;
        };
        std::vector<PolarizationNode> polarization;

        // Single fixed delay when the FIM is delay-invariant (white noise), else nodes over [0, tau_max)
        bool tau_invariant = true;
        std::vector<double> tau, tau_weight;

        size_t size() const noexcept { return theta.size() * polarization.size() * tau.size(); }

        // Throws ValidationError on empty node lists, non-positive weights or directions on a pole
        void validate() const;
    };

    struct DomainResolution
    {
        int theta_nodes = 16;
        int phi_nodes = 32;
        int alpha_nodes = 8;
        int phase_nodes = 8; // full mode
        int tau_nodes = 4;   // general noise only
    };

    // White noise gives a single delay node of weight tau_max; otherwise tau_nodes midpoint nodes
    ParameterDomain make_domain(Parameterization mode, const DomainResolution &res, const NoiseModel &noise, double delta_omega);

    // Domain of one point
    ParameterDomain single_node_domain(Parameterization mode, double theta0, double phi0, double alpha, double phase_diff = 0.0,
                                       double tau = 0.0);

    enum class Criterion
    {
        A, // sum of CRLBs, minimize integral of tr F^-1
        D  // minimize -integral of det F
    };

    Criterion parse_criterion(const std::string &s);
    const char *criterion_name(Criterion c);

    struct ObjectiveValue
    {
        double value = 0.0;
        size_t nodes = 0;
        size_t singular_nodes = 0; // criterion A only
        bool feasible = true;
        std::string message; // reason for infeasibility
    };

    // Penalty multiplier for singular FIM nodes under criterion A, applied to the median finite node value
    inline constexpr double singular_penalty_factor = 1e12;

    // Objectives for a built reception model
    ObjectiveValue evaluate_objective(Criterion c, const ReceptionModel &model, const ParameterDomain &domain,
                                      const PulseSpectrum &pulse, const NoiseModel &noise, unsigned threads = 1);

    // Everything a candidate geometry needs to become a reception model
    struct Scenario
    {
        std::vector<ElementSpec> elements; // initial arrangement
        GeometryParams geometry;
        int N = 0; // 0 selects recommended_order for the sphere
        double omega0 = 0.0;      // rad/s
        double delta_omega = 0.0; // rad/s
        int P = 1;
        PulseSpectrum pulse;
        NoiseModel noise;
        ExpansionSphere sphere; // radius 0 selects default_sphere
        int grid_order = 0;     // 0 selects default_grid_order
        double min_spacing = 0.0;

        // Fills sphere, truncation and grid order if unset and checks the consistency of all parts
        void prepare();

        // truncation_warning for the prepared sphere, empty if N suffices
        std::string truncation_note() const;

        std::vector<double> frequencies() const { return bin_frequencies(omega0, delta_omega, P); }
        SphereGrid grid() const;
    };

    // update geometry, synthesize or import fields, extract T, apply reciprocity
    ReceptionModel build_candidate_model(const Scenario &scenario, const std::vector<double> &gamma, unsigned threads = 1);

    // Pipeline failures (overlap, extraction) give an infeasible value of +inf
    ObjectiveValue objective_A(const std::vector<double> &gamma, const ParameterDomain &domain, const Scenario &scenario,
                               unsigned threads = 1);
    ObjectiveValue objective_D(const std::vector<double> &gamma, const ParameterDomain &domain, const Scenario &scenario,
                               unsigned threads = 1);

    enum class DeStrategy
    {
        best1bin, // mutant from the current best member
        rand1bin  // mutant from a random member
    };

    DeStrategy parse_de_strategy(const std::string &s);
    const char *de_strategy_name(DeStrategy s);

    enum class DeUpdating
    {
        immediate, // an accepted trial replaces its parent at once; evaluations run one after another
        deferred   // a generation's trials are evaluated together, concurrently, then selected
    };

    DeUpdating parse_de_updating(const std::string &s);
    const char *de_updating_name(DeUpdating u);

    // Defaults follow SciPy's differential_evolution: best/1/bin, mutation dithered per generation
    // over [0.5, 1), crossover 0.7, immediate updating
    struct DeConfig
    {
        int population = 18;
        int generations = 40;
        DeStrategy strategy = DeStrategy::best1bin;
        double mutation = 0.5;       // F in (0, 2)
        double mutation_upper = 1.0; // if larger than mutation, F is drawn from [mutation, mutation_upper) each generation
        double crossover = 0.7;      // CR in [0, 1]
        DeUpdating updating = DeUpdating::immediate;
        std::uint64_t seed = 1;
        unsigned parallel = 1; // threads: across trials when deferred, inside each objective when immediate

        void validate() const;
    };

    struct GenerationRecord
    {
        int generation = 0; // 0 is the initial population
        double best = 0.0;  // best so far
        double mean = 0.0;  // mean over the finite members
        size_t evaluations = 0;
        size_t infeasible = 0; // members with +inf
    };

    struct OptimizationResult
    {
        std::vector<double> best_gamma;
        double best_objective = 0.0;
        std::vector<double> initial_gamma;
        double initial_objective = 0.0;
        std::vector<GenerationRecord> trace;
        size_t evaluations = 0;
        double wall_time = 0.0; // s
        std::vector<std::string> notes;
    };

    using ObjectiveFn = std::function<double(const std::vector<double> &)>;

    // Differential evolution with binomial crossover, bound clipping and greedy selection. Random draws
    // come from one seeded generator in a fixed order, so the result does not depend on the thread count.
    // If initial is non-empty it replaces the first population member.
    OptimizationResult differential_evolution(const ObjectiveFn &objective, const std::vector<double> &lower,
                                              const std::vector<double> &upper, const DeConfig &config,
                                              const std::vector<double> &initial = {});

    struct OptimizeRun
    {
        Scenario scenario;
        ParameterDomain domain;
        Criterion criterion = Criterion::D;
        DeConfig de;
    };

    // The flow-chart loop over candidate geometries; starts from the scenario's initial arrangement
    OptimizationResult optimize_array(OptimizeRun run);

} // namespace swarray

#endif
