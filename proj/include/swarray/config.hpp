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

#ifndef SWARRAY_CONFIG_HPP
#define SWARRAY_CONFIG_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "swarray/analysis.hpp"
#include "swarray/optimizer.hpp"

namespace swarray
{
    inline constexpr const char *config_format = "swarray-config";
    inline constexpr int config_version = 1;

    // Run configuration with every quantity converted to SI units at load time.
    // Keys carry their unit (_mm, _deg, _ghz, _mhz, _ns); unknown keys are rejected.
    struct RunConfig
    {
        std::filesystem::path base_dir; // relative paths resolve against this

        double omega0 = 0.0;      // rad/s
        double delta_omega = 0.0; // rad/s
        int P = 1;
        int order = 0; // 0 selects the recommended order

        std::vector<ElementSpec> elements;
        ExpansionSphere sphere; // radius 0 selects the default sphere
        int grid_order = 0;     // 0 selects the default order
        double min_spacing = 0.0;

        // White noise with one variance, or independent noise with one variance per signal entry
        bool noise_white = true;
        double noise_variance = 0.01;
        std::vector<double> noise_variances;

        PulseSpectrum pulse;

        struct Crlb
        {
            bool present = false;
            std::vector<double> alpha, theta, phi; // rad
            double tau = 0.0;                      // s
            int average_theta_nodes = 16, average_phi_nodes = 32;
        } crlb;

        struct Beam
        {
            bool present = false;
            double theta0 = 0.0, phi0 = 0.0, alpha = 0.0, tau = 0.0;
            int theta_count = 91, phi_count = 181, cut_points = 361;
        } beam;

        struct Optimize
        {
            bool present = false;
            Criterion criterion = Criterion::D;
            GeometryParams geometry;
            Parameterization mode = Parameterization::linear;
            DomainResolution resolution;
            DeConfig de;
        } optimize;

        std::filesystem::path output_dir = "swarray_out";

        // Noise model sized for the configured ports and bins
        NoiseModel noise_model(int L) const;

        // Scenario of the configured array (geometry empty unless an optimize section is present)
        Scenario scenario() const;
    };

    // Throws ValidationError for schema violations and IoError if the file (or an imported field file) cannot be read
    RunConfig load_run_config(const std::filesystem::path &path);
    RunConfig parse_run_config(const std::string &text, const std::filesystem::path &base_dir);

} // namespace swarray

#endif
