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

#ifndef SWARRAY_ELEMENTS_HPP
#define SWARRAY_ELEMENTS_HPP

#include <array>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swarray/field_io.hpp"
#include "swarray/swe.hpp"

namespace swarray
{
    using Vec3 = std::array<double, 3>;

    enum class ElementKind
    {
        hertzian_dipole, // one port, moment along a local axis
        crossed_dipole,  // two ports, moments along local x and local y
        imported         // per-port fields read from a field file, fixed in place
    };

    enum class DipoleAxis
    {
        x,
        y,
        z
    };

    struct ElementSpec
    {
        ElementKind kind = ElementKind::hertzian_dipole;
        std::string name;
        Vec3 position{0.0, 0.0, 0.0}; // m, in array coordinates
        double beta = 0.0;            // rotation about z in rad
        DipoleAxis axis = DipoleAxis::z;
        std::shared_ptr<const FieldSampleSet> imported; // kind == imported only

        int n_ports() const;
    };

    // Port names of an element, e.g. "e2" or "e2.x", "e2.y"
    std::vector<std::string> element_port_names(const ElementSpec &e, size_t index);

    // Sphere on which fields are sampled and expanded
    struct ExpansionSphere
    {
        Vec3 center{0.0, 0.0, 0.0}; // m
        double radius = 0.0;        // m
    };

    // Axis-aligned box of positions an element may take
    struct PositionBox
    {
        Vec3 lower{}, upper{};
    };

    // Center at the midpoint of the bounding box of all boxes, radius 1.5 times the largest
    // corner distance. min_radius keeps the sphere usable for arrays collapsed to a point.
    ExpansionSphere default_sphere(const std::vector<PositionBox> &boxes, double min_radius);

    // One entry of the geometry vector gamma
    struct GeometryParam
    {
        enum class Field
        {
            x,
            y,
            z,
            beta
        };
        size_t element = 0;
        Field field = Field::x;
        double lower = 0.0, upper = 0.0; // SI units
        std::string name;
    };

    struct GeometryParams
    {
        std::vector<GeometryParam> map;
        std::vector<double> initial; // SI units

        size_t size() const noexcept { return map.size(); }
        std::vector<double> lower() const;
        std::vector<double> upper() const;

        // Throws DomainError if gamma has the wrong length or leaves the bounds
        void check(const std::vector<double> &gamma) const;

        // Copy of the elements with gamma written into the mapped fields
        std::vector<ElementSpec> apply(const std::vector<ElementSpec> &elements, const std::vector<double> &gamma) const;

        // Per-element reachable position boxes
        std::vector<PositionBox> position_boxes(const std::vector<ElementSpec> &elements) const;
    };

    // Closed-form Hertzian dipole fields (near and far terms) of one element, one block per port.
    // The dipole moment is scaled to radiate 1/2 W, so a unit forward voltage wave gives sum |T|^2 = 1.
    std::vector<FieldBlock> dipole_field(const ElementSpec &spec, const SphereGrid &grid, const ExpansionSphere &sphere,
                                         double omega);

    // Per-port fields of an array with one port driven at a time, no mutual coupling.
    // min_spacing > 0 rejects element pairs closer than that distance.
    FieldSampleSet synthesize_array_fields(const std::vector<ElementSpec> &elements, const ExpansionSphere &sphere,
                                           const SphereGrid &grid, const std::vector<double> &frequencies,
                                           double min_spacing = 0.0);

    // Baseband reception coefficients of an array over P frequency bins
    struct ReceptionModel
    {
        int L = 0;                 // ports
        int P = 0;                 // bins, odd
        int N = 0;                 // truncation order
        int J = 0;                 // 2N(N+2)
        double delta_omega = 0.0;  // bin spacing in rad/s
        double omega0 = 0.0;       // carrier in rad/s
        Eigen::MatrixXcd R;        // (L P) x J, row l P + (p + (P-1)/2)
        std::vector<std::string> ports;

        // Bin offset p of row-block index i in [0, P)
        int bin(int i) const noexcept { return i - (P - 1) / 2; }

        // Throws ValidationError if dimensions are inconsistent
        void validate() const;
    };

    // Truncation order ceil(k_max r) + 10 for sources inside a sphere of radius r
    int recommended_order(double k_max, double radius);

    // Non-empty when N < k_max r, where the expansion cannot represent the sources' fields
    std::string truncation_warning(int N, double k_max, double radius);

    // Grid order that resolves the field of sources inside the sphere, for truncation order N:
    // max(N, ceil(k_max r)) plus enough orders for the evanescent tail to fall below 1e-10.
    int default_grid_order(int N, double k_max, double radius, double max_offset);

    // Extracts T per port and bin, maps to R by reciprocity and converts to baseband.
    // Every bin frequency omega0 + p delta_omega must be present in fields.
    ReceptionModel build_reception_model(const FieldSampleSet &fields, int N, double omega0, double delta_omega, int P,
                                         unsigned threads = 1);

    // Bin frequencies omega0 + p delta_omega, p = -(P-1)/2 .. (P-1)/2
    std::vector<double> bin_frequencies(double omega0, double delta_omega, int P);

} // namespace swarray

#endif
