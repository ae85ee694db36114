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

#ifndef SWARRAY_FIELD_IO_HPP
#define SWARRAY_FIELD_IO_HPP

#include <string>
#include <vector>

#include "swarray/constants.hpp"
#include "swarray/quadrature.hpp"

namespace swarray
{
    // Complex E-field samples of one port at one frequency, theta-major, phi-minor
    struct FieldBlock
    {
        std::vector<cdouble> r, theta, phi;

        void resize(size_t n)
        {
            r.assign(n, 0.0), theta.assign(n, 0.0), phi.assign(n, 0.0);
        }
        size_t size() const noexcept { return theta.size(); }
    };

    // Sampled radiated fields of an array on a sphere, one block per (port, frequency).
    // Phasors follow the exp(-i omega t) convention of the spherical wave functions.
    struct FieldSampleSet
    {
        double radius = 0.0;              // sphere radius in m
        SphereGrid grid;                  // shared by all ports and frequencies
        std::vector<double> frequencies;  // angular frequencies in rad/s, strictly increasing
        std::vector<std::string> ports;   // port names
        std::vector<FieldBlock> blocks;   // index port * frequencies.size() + freq

        size_t n_ports() const noexcept { return ports.size(); }
        size_t n_freqs() const noexcept { return frequencies.size(); }
        FieldBlock &block(size_t port, size_t freq) { return blocks[port * frequencies.size() + freq]; }
        const FieldBlock &block(size_t port, size_t freq) const { return blocks[port * frequencies.size() + freq]; }

        // Throws ValidationError on any structural inconsistency
        void validate() const;
    };

    inline constexpr const char *field_file_format = "swarray-fields";
    inline constexpr int field_file_version = 1;
    inline constexpr const char *field_file_excitation = "unit forward voltage wave, matched loads";

    // Writes the JSON container. With binary_sidecar set, samples go to "<path>.bin" as
    // little-endian float64 in port-major, frequency-major, theta-major, phi-minor order.
    void save_field_samples(const FieldSampleSet &fields, const std::string &path, bool binary_sidecar = false);

    // Reads and validates a field file. With N > 0 the grid density is checked against order N.
    FieldSampleSet load_field_samples(const std::string &path, int N = 0);

} // namespace swarray

#endif
