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
#include <cmath>
#include <cstdio>
#include <string>

#include "parallel.hpp"
#include "swarray/elements.hpp"
#include "swarray/error.hpp"

namespace swarray
{
    int ElementSpec::n_ports() const
    {
        switch (kind)
        {
        case ElementKind::hertzian_dipole:
            return 1;
        case ElementKind::crossed_dipole:
            return 2;
        default:
            return imported ? (int)imported->n_ports() : 0;
        }
    }

    std::vector<std::string> element_port_names(const ElementSpec &e, size_t index)
    {
        const std::string base = e.name.empty() ? "e" + std::to_string(index + 1) : e.name;
        switch (e.kind)
        {
        case ElementKind::hertzian_dipole:
            return {base};
        case ElementKind::crossed_dipole:
            return {base + ".x", base + ".y"};
        default:
        {
            std::vector<std::string> out;
            if (e.imported)
                for (const auto &p : e.imported->ports)
                    out.push_back(base + "." + p);
            return out;
        }
        }
    }

    ExpansionSphere default_sphere(const std::vector<PositionBox> &boxes, double min_radius)
    {
        if (boxes.empty())
            throw DomainError("cannot size an expansion sphere without elements");
        Vec3 lo = boxes[0].lower, hi = boxes[0].upper;
        for (const auto &b : boxes)
            for (int a = 0; a < 3; ++a)
                lo[a] = std::min(lo[a], b.lower[a]), hi[a] = std::max(hi[a], b.upper[a]);
        ExpansionSphere s;
        for (int a = 0; a < 3; ++a)
            s.center[a] = 0.5 * (lo[a] + hi[a]);
        double rc = 0.0;
        for (const auto &b : boxes)
            for (int corner = 0; corner < 8; ++corner)
            {
                double d2 = 0.0;
                for (int a = 0; a < 3; ++a)
                {
                    const double v = ((corner >> a) & 1) ? b.upper[a] : b.lower[a];
                    d2 += (v - s.center[a]) * (v - s.center[a]);
                }
                rc = std::max(rc, std::sqrt(d2));
            }
        s.radius = std::max(1.5 * rc, min_radius);
        return s;
    }

    // ------------------------------------------------------------------------
    // Geometry vector

    std::vector<double> GeometryParams::lower() const
    {
        std::vector<double> v;
        for (const auto &p : map)
            v.push_back(p.lower);
        return v;
    }

    std::vector<double> GeometryParams::upper() const
    {
        std::vector<double> v;
        for (const auto &p : map)
            v.push_back(p.upper);
        return v;
    }

    void GeometryParams::check(const std::vector<double> &gamma) const
    {
        if (gamma.size() != map.size())
            throw DomainError("geometry vector has " + std::to_string(gamma.size()) + " entries, expected " +
                              std::to_string(map.size()));
        for (size_t i = 0; i < map.size(); ++i)
            if (!(gamma[i] >= map[i].lower && gamma[i] <= map[i].upper))
                throw DomainError("geometry entry '" + map[i].name + "' outside its bounds");
    }

    std::vector<ElementSpec> GeometryParams::apply(const std::vector<ElementSpec> &elements, const std::vector<double> &gamma) const
    {
        check(gamma);
        std::vector<ElementSpec> out = elements;
        for (size_t i = 0; i < map.size(); ++i)
        {
            const GeometryParam &p = map[i];
            if (p.element >= out.size())
                throw DomainError("geometry entry '" + p.name + "' refers to a missing element");
            ElementSpec &e = out[p.element];
            if (e.kind == ElementKind::imported)
                throw DomainError("geometry entry '" + p.name + "' targets an imported element, which cannot move");
            switch (p.field)
            {
            case GeometryParam::Field::x:
                e.position[0] = gamma[i];
                break;
            case GeometryParam::Field::y:
                e.position[1] = gamma[i];
                break;
            case GeometryParam::Field::z:
                e.position[2] = gamma[i];
                break;
            case GeometryParam::Field::beta:
                e.beta = gamma[i];
                break;
            }
        }
        return out;
    }

    std::vector<PositionBox> GeometryParams::position_boxes(const std::vector<ElementSpec> &elements) const
    {
        std::vector<PositionBox> boxes(elements.size());
        for (size_t e = 0; e < elements.size(); ++e)
            boxes[e].lower = boxes[e].upper = elements[e].position;
        for (const auto &p : map)
        {
            if (p.element >= elements.size() || p.field == GeometryParam::Field::beta)
                continue;
            const int a = p.field == GeometryParam::Field::x ? 0 : (p.field == GeometryParam::Field::y ? 1 : 2);
            boxes[p.element].lower[a] = p.lower;
            boxes[p.element].upper[a] = p.upper;
        }
        return boxes;
    }

    // ------------------------------------------------------------------------
    // Dipole fields

    namespace
    {
        Vec3 rotate_z(const Vec3 &v, double beta)
        {
            const double c = std::cos(beta), s = std::sin(beta);
            return {c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]};
        }

        Vec3 axis_vector(DipoleAxis a)
        {
            switch (a)
            {
            case DipoleAxis::x:
                return {1.0, 0.0, 0.0};
            case DipoleAxis::y:
                return {0.0, 1.0, 0.0};
            default:
                return {0.0, 0.0, 1.0};
            }
        }

        double norm3(const Vec3 &v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

        // Unit moment directions of the element's ports in array coordinates
        std::vector<Vec3> port_moments(const ElementSpec &e)
        {
            if (e.kind == ElementKind::hertzian_dipole)
                return {rotate_z(axis_vector(e.axis), e.beta)};
            if (e.kind == ElementKind::crossed_dipole)
                return {rotate_z({1.0, 0.0, 0.0}, e.beta), rotate_z({0.0, 1.0, 0.0}, e.beta)};
            throw DomainError("dipole_field needs a dipole element");
        }
    } // namespace

    std::vector<FieldBlock> dipole_field(const ElementSpec &spec, const SphereGrid &grid, const ExpansionSphere &sphere,
                                         double omega)
    {
        if (!(omega > 0.0))
            throw DomainError("angular frequency must be positive");
        if (!(sphere.radius > 0.0))
            throw DomainError("expansion sphere radius must be positive");
        const Vec3 d{spec.position[0] - sphere.center[0], spec.position[1] - sphere.center[1], spec.position[2] - sphere.center[2]};
        if (!(norm3(d) < sphere.radius))
            throw DomainError("element '" + spec.name + "' lies outside the expansion sphere (offset " +
                              std::to_string(norm3(d)) + " m, radius " + std::to_string(sphere.radius) + " m)");

        const double k = omega / speed_of_light;
        const double pmag = std::sqrt(6.0 * pi / (speed_of_light * speed_of_light * free_space_impedance * k * k * k * k));
        const double coulomb = 1.0 / (4.0 * pi * vacuum_permittivity);
        const std::vector<Vec3> moments = port_moments(spec);

        const size_t nt = grid.n_theta(), np = grid.n_phi();
        std::vector<FieldBlock> out(moments.size());
        for (auto &b : out)
            b.resize(nt * np);

        for (size_t i = 0; i < nt; ++i)
        {
            const double ct = std::cos(grid.theta_nodes[i]), st = std::sin(grid.theta_nodes[i]);
            for (size_t q = 0; q < np; ++q)
            {
                const double cp = std::cos(grid.phi_nodes[q]), sp = std::sin(grid.phi_nodes[q]);
                const Vec3 rh{st * cp, st * sp, ct}, th{ct * cp, ct * sp, -st}, ph{-sp, cp, 0.0};
                const Vec3 Rv{sphere.radius * rh[0] - d[0], sphere.radius * rh[1] - d[1], sphere.radius * rh[2] - d[2]};
                const double R = norm3(Rv);
                const Vec3 n{Rv[0] / R, Rv[1] / R, Rv[2] / R};
                const cdouble g = coulomb * std::exp(cdouble(0.0, k * R));
                const cdouble near = 1.0 / (R * R * R) - cdouble(0.0, k) / (R * R);
                const size_t idx = i * np + q;
                for (size_t port = 0; port < moments.size(); ++port)
                {
                    const Vec3 &u = moments[port];
                    const double np_ = n[0] * u[0] + n[1] * u[1] + n[2] * u[2];
                    cdouble E[3];
                    for (int a = 0; a < 3; ++a)
                    {
                        const double transverse = u[a] - n[a] * np_;
                        const double quasi = 3.0 * n[a] * np_ - u[a];
                        E[a] = g * pmag * (k * k * transverse / R + quasi * near);
                    }
                    FieldBlock &b = out[port];
                    b.r[idx] = E[0] * rh[0] + E[1] * rh[1] + E[2] * rh[2];
                    b.theta[idx] = E[0] * th[0] + E[1] * th[1] + E[2] * th[2];
                    b.phi[idx] = E[0] * ph[0] + E[1] * ph[1];
                }
            }
        }
        return out;
    }

    FieldSampleSet synthesize_array_fields(const std::vector<ElementSpec> &elements, const ExpansionSphere &sphere,
                                           const SphereGrid &grid, const std::vector<double> &frequencies, double min_spacing)
    {
        if (elements.empty())
            throw DomainError("array has no elements");
        if (frequencies.empty())
            throw DomainError("no frequencies requested");
        if (min_spacing > 0.0)
            for (size_t a = 0; a < elements.size(); ++a)
                for (size_t b = a + 1; b < elements.size(); ++b)
                {
                    const Vec3 &pa = elements[a].position, &pb = elements[b].position;
                    const Vec3 dv{pa[0] - pb[0], pa[1] - pb[1], pa[2] - pb[2]};
                    if (norm3(dv) < min_spacing)
                        throw DomainError("elements " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                                          " overlap: spacing " + std::to_string(norm3(dv)) + " m below minimum " +
                                          std::to_string(min_spacing) + " m");
                }

        FieldSampleSet fs;
        fs.radius = sphere.radius;
        fs.grid = grid;
        fs.frequencies = frequencies;
        for (size_t e = 0; e < elements.size(); ++e)
            for (auto &name : element_port_names(elements[e], e))
                fs.ports.push_back(name);
        fs.blocks.resize(fs.ports.size() * frequencies.size());

        size_t port0 = 0;
        for (size_t e = 0; e < elements.size(); ++e)
        {
            const ElementSpec &el = elements[e];
            if (el.kind == ElementKind::imported)
            {
                if (!el.imported)
                    throw DomainError("imported element '" + el.name + "' has no field data");
                const FieldSampleSet &src = *el.imported;
                if (std::abs(src.radius - sphere.radius) > 1e-12 * sphere.radius ||
                    src.grid.theta_nodes != grid.theta_nodes || src.grid.phi_nodes != grid.phi_nodes)
                    throw ValidationError("imported element '" + el.name + "' was sampled on a different sphere or grid");
                for (size_t f = 0; f < frequencies.size(); ++f)
                {
                    auto it = std::find_if(src.frequencies.begin(), src.frequencies.end(), [&](double w)
                                           { return std::abs(w - frequencies[f]) <= 1e-9 * frequencies[f]; });
                    if (it == src.frequencies.end())
                        throw ValidationError("imported element '" + el.name + "' lacks frequency " + std::to_string(frequencies[f]) + " rad/s");
                    const size_t sf = (size_t)(it - src.frequencies.begin());
                    for (size_t p = 0; p < src.n_ports(); ++p)
                        fs.block(port0 + p, f) = src.block(p, sf);
                }
                port0 += src.n_ports();
                continue;
            }
            for (size_t f = 0; f < frequencies.size(); ++f)
            {
                std::vector<FieldBlock> blocks = dipole_field(el, grid, sphere, frequencies[f]);
                for (size_t p = 0; p < blocks.size(); ++p)
                    fs.block(port0 + p, f) = std::move(blocks[p]);
            }
            port0 += (size_t)el.n_ports();
        }
        return fs;
    }

    // ------------------------------------------------------------------------
    // Reception model

    void ReceptionModel::validate() const
    {
        if (L < 1 || P < 1 || (P % 2) == 0)
            throw ValidationError("reception model needs L >= 1 and an odd number of bins P");
        if (J != mode_count(N))
            throw ValidationError("reception model J does not equal 2N(N+2)");
        if (R.rows() != (Eigen::Index)L * P || R.cols() != J)
            throw ValidationError("reception matrix must be (L P) x J");
        if (!(delta_omega > 0.0) || !(omega0 > 0.0))
            throw ValidationError("reception model needs positive carrier and bin spacing");
    }

    std::vector<double> bin_frequencies(double omega0, double delta_omega, int P)
    {
        if (P < 1 || (P % 2) == 0)
            throw DomainError("number of frequency bins must be odd, got " + std::to_string(P));
        std::vector<double> w(P);
        for (int i = 0; i < P; ++i)
            w[i] = omega0 + (i - (P - 1) / 2) * delta_omega;
        return w;
    }

    int recommended_order(double k_max, double radius)
    {
        if (!(k_max > 0.0) || !(radius > 0.0))
            throw DomainError("wavenumber and sphere radius must be positive");
        return (int)std::ceil(k_max * radius) + 10;
    }

    std::string truncation_warning(int N, double k_max, double radius)
    {
        const double kr = k_max * radius;
        if (N >= kr)
            return {};
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "truncation order N = %d is below k r = %.1f of the expansion sphere; fields of offset elements are "
                      "not represented accurately (N >= %d recommended)",
                      N, kr, recommended_order(k_max, radius));
        return buf;
    }

    int default_grid_order(int N, double k_max, double radius, double max_offset)
    {
        int L = std::max(N, (int)std::ceil(k_max * radius));
        const double rho = max_offset / radius;
        if (rho > 0.0 && rho < 1.0)
            L += (int)std::ceil(std::log(1e-10) / std::log(rho));
        return std::min(L, 200);
    }

    ReceptionModel build_reception_model(const FieldSampleSet &fields, int N, double omega0, double delta_omega, int P,
                                         unsigned threads)
    {
        fields.validate();
        if (!(delta_omega > 0.0) || !(omega0 > 0.0))
            throw DomainError("carrier and bin spacing must be positive");
        const std::vector<double> w = bin_frequencies(omega0, delta_omega, P);
        std::vector<size_t> fidx(P);
        for (int i = 0; i < P; ++i)
        {
            const double tol = 1e-9 * w[i];
            auto it = std::find_if(fields.frequencies.begin(), fields.frequencies.end(), [&](double f)
                                   { return std::abs(f - w[i]) <= tol; });
            if (it == fields.frequencies.end())
                throw ValidationError("field data does not cover bin p=" + std::to_string(i - (P - 1) / 2) + " at " +
                                      std::to_string(w[i] / (2.0 * pi) * 1e-9) + " GHz");
            fidx[i] = (size_t)(it - fields.frequencies.begin());
        }
        check_grid_density(fields.grid, N);

        ReceptionModel model;
        model.L = (int)fields.n_ports();
        model.P = P;
        model.N = N;
        model.J = mode_count(N);
        model.delta_omega = delta_omega;
        model.omega0 = omega0;
        model.ports = fields.ports;
        model.R.resize((Eigen::Index)model.L * P, model.J);

        detail::parallel_for((size_t)model.L * P, threads, [&](size_t task)
                             {
            const size_t l = task / P, i = task % P;
            const CoefficientSet T = extract_transmission(fields, l, fidx[i], N);
            const CoefficientSet R = reception_from_transmission(T);
            // Fields are exp(-i omega t) phasors; conjugation moves them to the baseband convention
            for (int j = 0; j < model.J; ++j)
                model.R((Eigen::Index)(l * P + i), j) = std::conj(R.values[j]); });
        return model;
    }

} // namespace swarray
