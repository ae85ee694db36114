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

#ifndef SWARRAY_COMMANDS_HPP
#define SWARRAY_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swarray/optimizer.hpp"

namespace swarray
{
    struct CommandOptions
    {
        unsigned parallel = 1;
        std::optional<std::uint64_t> seed;        // overrides optimize.de.seed
        std::optional<Criterion> criterion;       // overrides optimize.criterion
        std::string output_dir;                   // overrides output.directory when non-empty
    };

    struct CommandResult
    {
        std::string summary;            // human-readable report
        std::vector<std::string> files; // written artifacts
    };

    // T and R coefficient sets of every port and frequency of a field file
    CommandResult run_extract(const std::string &fields_path, int order, const std::string &out_path);

    // Field file of the configured array at the configured bins
    CommandResult run_synthesize(const std::string &config_path, const std::string &out_path, bool binary_sidecar);

    // crlb_map.csv, crlb_average.csv, crlb_summary.json
    CommandResult run_crlb(const std::string &config_path, const CommandOptions &opt);

    // beam_grid.csv, beam_cut_elevation.csv, beam_cut_azimuth.csv, beam_summary.json
    CommandResult run_beampattern(const std::string &config_path, const CommandOptions &opt);

    // result.json, trace.csv, trace.json, geometry.json
    CommandResult run_optimize(const std::string &config_path, const CommandOptions &opt);

} // namespace swarray

#endif
