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
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "swarray/config.hpp"
#include "swarray/field_io.hpp"

namespace swarray
{
    using nlohmann::json;

    namespace
    {
        constexpr double deg = pi / 180.0;

        void check_keys(const json &obj, const std::set<std::string> &allowed, const std::string &where)
        {
            if (!obj.is_object())
                throw ValidationError(where + " must be a JSON object");
            for (auto it = obj.begin(); it != obj.end(); ++it)
                if (!allowed.count(it.key()))
                    throw ValidationError("unknown key '" + it.key() + "' in " + where);
        }

        const json &require(const json &obj, const std::string &key, const std::string &where)
        {
            auto it = obj.find(key);
            if (it == obj.end())
                throw ValidationError("missing key '" + key + "' in " + where);
            return *it;
        }

        double number(const json &v, const std::string &what)
        {
            if (!v.is_number())
                throw ValidationError(what + " must be a number");
            const double x = v.get<double>();
            if (!std::isfinite(x))
                throw ValidationError(what + " must be finite");
            return x;
        }

        double number_or(const json &obj, const std::string &key, double fallback, const std::string &where)
        {
            return obj.contains(key) ? number(obj[key], where + "." + key) : fallback;
        }

        long integer(const json &v, const std::string &what)
        {
            if (!v.is_number_integer())
                throw ValidationError(what + " must be an integer");
            return v.get<long>();
        }

        int integer_or(const json &obj, const std::string &key, int fallback, const std::string &where)
        {
            return obj.contains(key) ? (int)integer(obj[key], where + "." + key) : fallback;
        }

        std::string text(const json &v, const std::string &what)
        {
            if (!v.is_string())
                throw ValidationError(what + " must be a string");
            return v.get<std::string>();
        }

        std::vector<double> numbers(const json &v, const std::string &what)
        {
            if (!v.is_array())
                throw ValidationError(what + " must be an array of numbers");
            std::vector<double> out;
            for (size_t i = 0; i < v.size(); ++i)
                out.push_back(number(v[i], what + "[" + std::to_string(i) + "]"));
            return out;
        }

        Vec3 vec3_mm(const json &v, const std::string &what)
        {
            const std::vector<double> x = numbers(v, what);
            if (x.size() != 3)
                throw ValidationError(what + " must have three entries");
            return {x[0] * 1e-3, x[1] * 1e-3, x[2] * 1e-3};
        }

        // Angle list in degrees, either [a, b, ...] or {"start": a, "stop": b, "count": n} with stop included
        std::vector<double> angles_deg(const json &v, const std::string &what)
        {
            std::vector<double> out;
            if (v.is_object())
            {
                check_keys(v, {"start", "stop", "count"}, what);
                const double a = number(require(v, "start", what), what + ".start");
                const double b = number(require(v, "stop", what), what + ".stop");
                const long n = integer(require(v, "count", what), what + ".count");
                if (n < 1)
                    throw ValidationError(what + ".count must be positive");
                for (long i = 0; i < n; ++i)
                    out.push_back((n == 1 ? a : a + (b - a) * (double)i / (double)(n - 1)) * deg);
            }
            else
                for (double x : numbers(v, what))
                    out.push_back(x * deg);
            if (out.empty())
                throw ValidationError(what + " must not be empty");
            return out;
        }

        std::vector<double> theta_list(const json &v, const std::string &what)
        {
            std::vector<double> t = angles_deg(v, what);
            for (double x : t)
                if (x < 0.0 || x > pi + 1e-12)
                    throw ValidationError(what + " entries must lie in [0, 180] degrees");
            return t;
        }

        ElementSpec parse_element(const json &e, size_t index, const std::filesystem::path &base)
        {
            const std::string where = "elements[" + std::to_string(index) + "]";
            if (!e.is_object())
                throw ValidationError(where + " must be a JSON object");
            const std::string type = text(require(e, "type", where), where + ".type");
            ElementSpec s;
            if (e.contains("name"))
                s.name = text(e["name"], where + ".name");
            if (type == "imported")
            {
                check_keys(e, {"type", "name", "fields"}, where);
                s.kind = ElementKind::imported;
                std::filesystem::path p = text(require(e, "fields", where), where + ".fields");
                if (p.is_relative())
                    p = base / p;
                s.imported = std::make_shared<const FieldSampleSet>(load_field_samples(p.string()));
                return s;
            }
            check_keys(e, {"type", "name", "position_mm", "beta_deg", "axis"}, where);
            if (type == "hertzian_dipole")
            {
                s.kind = ElementKind::hertzian_dipole;
                const std::string ax = e.contains("axis") ? text(e["axis"], where + ".axis") : "z";
                if (ax == "x")
                    s.axis = DipoleAxis::x;
                else if (ax == "y")
                    s.axis = DipoleAxis::y;
                else if (ax == "z")
                    s.axis = DipoleAxis::z;
                else
                    throw ValidationError(where + ".axis must be x, y or z");
            }
            else if (type == "crossed_dipole")
            {
                if (e.contains("axis"))
                    throw ValidationError(where + ": a crossed dipole has fixed local x and y arms, 'axis' is not allowed");
                s.kind = ElementKind::crossed_dipole;
            }
            else
                throw ValidationError(where + ".type must be hertzian_dipole, crossed_dipole or imported");
            s.position = vec3_mm(require(e, "position_mm", where), where + ".position_mm");
            s.beta = number_or(e, "beta_deg", 0.0, where) * deg;
            return s;
        }

        GeometryParam parse_bound(const json &b, size_t index, const std::vector<ElementSpec> &elements)
        {
            const std::string where = "optimize.parameters[" + std::to_string(index) + "]";
            check_keys(b, {"element", "coordinate", "lower_mm", "upper_mm", "lower_deg", "upper_deg"}, where);
            GeometryParam g;
            const long el = integer(require(b, "element", where), where + ".element");
            if (el < 1 || el > (long)elements.size())
                throw ValidationError(where + ".element must be a 1-based element index");
            g.element = (size_t)(el - 1);
            const std::string c = text(require(b, "coordinate", where), where + ".coordinate");
            double scale;
            std::string lk, uk;
            if (c == "beta")
            {
                g.field = GeometryParam::Field::beta;
                scale = deg, lk = "lower_deg", uk = "upper_deg";
            }
            else
            {
                if (c == "x")
                    g.field = GeometryParam::Field::x;
                else if (c == "y")
                    g.field = GeometryParam::Field::y;
                else if (c == "z")
                    g.field = GeometryParam::Field::z;
                else
                    throw ValidationError(where + ".coordinate must be x, y, z or beta");
                scale = 1e-3, lk = "lower_mm", uk = "upper_mm";
            }
            for (const char *k : {"lower_mm", "upper_mm", "lower_deg", "upper_deg"})
                if (b.contains(k) && k != lk && k != uk)
                    throw ValidationError(where + ": key '" + std::string(k) + "' does not fit coordinate '" + c + "'");
            g.lower = number(require(b, lk, where), where + "." + lk) * scale;
            g.upper = number(require(b, uk, where), where + "." + uk) * scale;
            if (g.lower > g.upper)
                throw ValidationError(where + ": lower bound exceeds upper bound");
            g.name = "e" + std::to_string(el) + "." + c;
            return g;
        }

        double initial_value(const ElementSpec &e, GeometryParam::Field f)
        {
            switch (f)
            {
            case GeometryParam::Field::x:
                return e.position[0];
            case GeometryParam::Field::y:
                return e.position[1];
            case GeometryParam::Field::z:
                return e.position[2];
            default:
                return e.beta;
            }
        }
    } // namespace

    NoiseModel RunConfig::noise_model(int L) const
    {
        if (noise_white)
            return NoiseModel::white(noise_variance);
        const size_t n = (size_t)L * (size_t)P;
        if (noise_variances.size() != n)
            throw ValidationError("noise.variances has " + std::to_string(noise_variances.size()) + " entries, expected L P = " +
                                  std::to_string(n));
        Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero((Eigen::Index)n, (Eigen::Index)n);
        for (size_t i = 0; i < n; ++i)
            C((Eigen::Index)i, (Eigen::Index)i) = noise_variances[i];
        return NoiseModel::general(C);
    }

    Scenario RunConfig::scenario() const
    {
        Scenario s;
        s.elements = elements;
        s.geometry = optimize.geometry;
        s.N = order;
        s.omega0 = omega0;
        s.delta_omega = delta_omega;
        s.P = P;
        s.pulse = pulse;
        int L = 0;
        for (const auto &e : elements)
            L += e.n_ports();
        s.noise = noise_model(L);
        s.sphere = sphere;
        s.grid_order = grid_order;
        s.min_spacing = min_spacing;
        s.prepare();
        return s;
    }

    RunConfig parse_run_config(const std::string &content, const std::filesystem::path &base_dir)
    {
        json j;
        try
        {
            j = json::parse(content);
        }
        catch (const json::parse_error &e)
        {
            throw ValidationError(std::string("config is not valid JSON: ") + e.what());
        }
        const std::string top = "config";
        check_keys(j, {"format", "version", "band", "order", "elements", "sphere", "grid_order", "min_spacing_mm", "noise",
                       "pulse", "crlb", "beampattern", "optimize", "output"},
                   top);
        if (text(require(j, "format", top), "format") != config_format)
            throw ValidationError(std::string("config format must be '") + config_format + "'");
        if (integer(require(j, "version", top), "version") != config_version)
            throw ValidationError("unsupported config version, expected " + std::to_string(config_version));

        RunConfig c;
        c.base_dir = base_dir;

        const json &band = require(j, "band", top);
        check_keys(band, {"center_ghz", "bin_spacing_mhz", "bins"}, "band");
        const double f0 = number(require(band, "center_ghz", "band"), "band.center_ghz") * 1e9;
        const double df = number(require(band, "bin_spacing_mhz", "band"), "band.bin_spacing_mhz") * 1e6;
        c.P = (int)integer(require(band, "bins", "band"), "band.bins");
        if (!(f0 > 0.0) || !(df > 0.0))
            throw ValidationError("band.center_ghz and band.bin_spacing_mhz must be positive");
        if (c.P < 1 || c.P % 2 == 0)
            throw ValidationError("band.bins must be a positive odd number");
        if (f0 - (c.P - 1) / 2 * df <= 0.0)
            throw ValidationError("band reaches zero or negative frequencies");
        c.omega0 = 2.0 * pi * f0;
        c.delta_omega = 2.0 * pi * df;

        c.order = integer_or(j, "order", 0, top);
        if (c.order < 0 || c.order > 60)
            throw ValidationError("order must lie in [1, 60], or be omitted for the recommended order");

        const json &els = require(j, "elements", top);
        if (!els.is_array() || els.empty())
            throw ValidationError("elements must be a non-empty array");
        for (size_t i = 0; i < els.size(); ++i)
            c.elements.push_back(parse_element(els[i], i, base_dir));

        if (j.contains("sphere"))
        {
            const json &s = j["sphere"];
            check_keys(s, {"center_mm", "radius_mm"}, "sphere");
            c.sphere.center = s.contains("center_mm") ? vec3_mm(s["center_mm"], "sphere.center_mm") : Vec3{0.0, 0.0, 0.0};
            c.sphere.radius = number(require(s, "radius_mm", "sphere"), "sphere.radius_mm") * 1e-3;
            if (!(c.sphere.radius > 0.0))
                throw ValidationError("sphere.radius_mm must be positive");
        }
        c.grid_order = integer_or(j, "grid_order", 0, top);
        if (c.grid_order < 0)
            throw ValidationError("grid_order cannot be negative");
        c.min_spacing = number_or(j, "min_spacing_mm", 0.0, top) * 1e-3;

        if (j.contains("noise"))
        {
            const json &n = j["noise"];
            check_keys(n, {"type", "variance", "variances"}, "noise");
            const std::string t = text(require(n, "type", "noise"), "noise.type");
            if (t == "white")
            {
                if (n.contains("variances"))
                    throw ValidationError("white noise takes 'variance', not 'variances'");
                c.noise_variance = number_or(n, "variance", 0.01, "noise");
                if (!(c.noise_variance > 0.0))
                    throw ValidationError("noise.variance must be positive");
            }
            else if (t == "diagonal")
            {
                if (n.contains("variance"))
                    throw ValidationError("diagonal noise takes 'variances', not 'variance'");
                c.noise_white = false;
                c.noise_variances = numbers(require(n, "variances", "noise"), "noise.variances");
                for (double v : c.noise_variances)
                    if (!(v > 0.0))
                        throw ValidationError("noise.variances must be positive");
            }
            else
                throw ValidationError("noise.type must be white or diagonal");
        }

        c.pulse = PulseSpectrum::flat(c.P);
        if (j.contains("pulse"))
        {
            const json &p = j["pulse"];
            check_keys(p, {"type", "scale", "real", "imag", "amplitude_v", "distance_m", "impedance_ohm"}, "pulse");
            const std::string t = text(require(p, "type", "pulse"), "pulse.type");
            if (t == "flat")
            {
                for (const char *k : {"real", "imag", "amplitude_v", "distance_m", "impedance_ohm"})
                    if (p.contains(k))
                        throw ValidationError(std::string("pulse key '") + k + "' needs type 'samples'");
                const double scale = number_or(p, "scale", 1.0, "pulse");
                for (auto &s : c.pulse.samples)
                    s *= scale;
            }
            else if (t == "samples")
            {
                if (p.contains("scale"))
                    throw ValidationError("pulse key 'scale' needs type 'flat'");
                const std::vector<double> re = numbers(require(p, "real", "pulse"), "pulse.real");
                const std::vector<double> im = p.contains("imag") ? numbers(p["imag"], "pulse.imag") : std::vector<double>(re.size(), 0.0);
                if ((int)re.size() != c.P || im.size() != re.size())
                    throw ValidationError("pulse.real and pulse.imag need one entry per frequency bin");
                std::vector<cdouble> s(re.size());
                for (size_t i = 0; i < re.size(); ++i)
                    s[i] = {re[i], im[i]};
                c.pulse = PulseSpectrum::from_spectrum(s, number_or(p, "amplitude_v", 1.0, "pulse"), number_or(p, "distance_m", 1.0, "pulse"),
                                                       number_or(p, "impedance_ohm", 50.0, "pulse"));
            }
            else
                throw ValidationError("pulse.type must be flat or samples");
        }

        if (j.contains("crlb"))
        {
            const json &s = j["crlb"];
            check_keys(s, {"alpha_deg", "theta_deg", "phi_deg", "tau_ns", "average"}, "crlb");
            c.crlb.present = true;
            c.crlb.alpha = angles_deg(require(s, "alpha_deg", "crlb"), "crlb.alpha_deg");
            c.crlb.theta = theta_list(require(s, "theta_deg", "crlb"), "crlb.theta_deg");
            c.crlb.phi = angles_deg(require(s, "phi_deg", "crlb"), "crlb.phi_deg");
            c.crlb.tau = number_or(s, "tau_ns", 0.0, "crlb") * 1e-9;
            if (s.contains("average"))
            {
                const json &a = s["average"];
                check_keys(a, {"theta_nodes", "phi_nodes"}, "crlb.average");
                c.crlb.average_theta_nodes = integer_or(a, "theta_nodes", 16, "crlb.average");
                c.crlb.average_phi_nodes = integer_or(a, "phi_nodes", 32, "crlb.average");
                if (c.crlb.average_theta_nodes < 1 || c.crlb.average_phi_nodes < 1)
                    throw ValidationError("crlb.average node counts must be positive");
            }
        }

        if (j.contains("beampattern"))
        {
            const json &b = j["beampattern"];
            check_keys(b, {"theta0_deg", "phi0_deg", "alpha_deg", "tau_ns", "theta_count", "phi_count", "cut_points"}, "beampattern");
            c.beam.present = true;
            c.beam.theta0 = number(require(b, "theta0_deg", "beampattern"), "beampattern.theta0_deg") * deg;
            c.beam.phi0 = number(require(b, "phi0_deg", "beampattern"), "beampattern.phi0_deg") * deg;
            c.beam.alpha = number(require(b, "alpha_deg", "beampattern"), "beampattern.alpha_deg") * deg;
            c.beam.tau = number_or(b, "tau_ns", 0.0, "beampattern") * 1e-9;
            c.beam.theta_count = integer_or(b, "theta_count", 91, "beampattern");
            c.beam.phi_count = integer_or(b, "phi_count", 181, "beampattern");
            c.beam.cut_points = integer_or(b, "cut_points", 361, "beampattern");
            if (c.beam.theta0 < 0.0 || c.beam.theta0 > pi)
                throw ValidationError("beampattern.theta0_deg must lie in [0, 180]");
            if (c.beam.theta_count < 2 || c.beam.phi_count < 2 || c.beam.cut_points < 2)
                throw ValidationError("beampattern point counts must be at least 2");
        }

        if (j.contains("optimize"))
        {
            const json &o = j["optimize"];
            check_keys(o, {"criterion", "parameters", "domain", "de"}, "optimize");
            c.optimize.present = true;
            if (o.contains("criterion"))
                c.optimize.criterion = parse_criterion(text(o["criterion"], "optimize.criterion"));
            const json &ps = require(o, "parameters", "optimize");
            if (!ps.is_array())
                throw ValidationError("optimize.parameters must be an array");
            std::set<std::pair<size_t, int>> seen;
            for (size_t i = 0; i < ps.size(); ++i)
            {
                GeometryParam g = parse_bound(ps[i], i, c.elements);
                if (!seen.insert({g.element, (int)g.field}).second)
                    throw ValidationError("optimize.parameters lists '" + g.name + "' twice");
                if (c.elements[g.element].kind == ElementKind::imported)
                    throw ValidationError("optimize.parameters: '" + g.name + "' targets an imported element, which cannot move");
                const double x0 = initial_value(c.elements[g.element], g.field);
                if (x0 < g.lower - 1e-12 || x0 > g.upper + 1e-12)
                    throw ValidationError("initial value of '" + g.name + "' lies outside its bounds");
                c.optimize.geometry.initial.push_back(std::clamp(x0, g.lower, g.upper));
                c.optimize.geometry.map.push_back(g);
            }
            if (o.contains("domain"))
            {
                const json &d = o["domain"];
                check_keys(d, {"polarization", "theta_nodes", "phi_nodes", "alpha_nodes", "phase_nodes", "tau_nodes"}, "optimize.domain");
                if (d.contains("polarization"))
                {
                    const std::string m = text(d["polarization"], "optimize.domain.polarization");
                    if (m == "linear")
                        c.optimize.mode = Parameterization::linear;
                    else if (m == "full")
                        c.optimize.mode = Parameterization::full;
                    else
                        throw ValidationError("optimize.domain.polarization must be linear or full");
                }
                DomainResolution &r = c.optimize.resolution;
                r.theta_nodes = integer_or(d, "theta_nodes", r.theta_nodes, "optimize.domain");
                r.phi_nodes = integer_or(d, "phi_nodes", r.phi_nodes, "optimize.domain");
                r.alpha_nodes = integer_or(d, "alpha_nodes", r.alpha_nodes, "optimize.domain");
                r.phase_nodes = integer_or(d, "phase_nodes", r.phase_nodes, "optimize.domain");
                r.tau_nodes = integer_or(d, "tau_nodes", r.tau_nodes, "optimize.domain");
            }
            if (o.contains("de"))
            {
                const json &d = o["de"];
                check_keys(d, {"population", "generations", "strategy", "mutation", "crossover", "updating", "seed"},
                           "optimize.de");
                DeConfig &de = c.optimize.de;
                de.population = integer_or(d, "population", de.population, "optimize.de");
                de.generations = integer_or(d, "generations", de.generations, "optimize.de");
                if (d.contains("strategy"))
                {
                    if (!d["strategy"].is_string())
                        throw ValidationError("optimize.de.strategy must be a string");
                    de.strategy = parse_de_strategy(d["strategy"].get<std::string>());
                }
                if (d.contains("updating"))
                {
                    if (!d["updating"].is_string())
                        throw ValidationError("optimize.de.updating must be a string");
                    de.updating = parse_de_updating(d["updating"].get<std::string>());
                }
                // A number fixes F; a pair [lo, hi] dithers it per generation
                if (d.contains("mutation"))
                {
                    const json &m = d["mutation"];
                    if (m.is_number())
                        de.mutation = de.mutation_upper = m.get<double>();
                    else if (m.is_array() && m.size() == 2 && m[0].is_number() && m[1].is_number() &&
                             m[0].get<double>() <= m[1].get<double>())
                        de.mutation = m[0].get<double>(), de.mutation_upper = m[1].get<double>();
                    else
                        throw ValidationError("optimize.de.mutation must be a number or an increasing pair [lo, hi]");
                }
                de.crossover = number_or(d, "crossover", de.crossover, "optimize.de");
                if (d.contains("seed"))
                {
                    if (!d["seed"].is_number_unsigned())
                        throw ValidationError("optimize.de.seed must be a non-negative integer");
                    de.seed = d["seed"].get<std::uint64_t>();
                }
                de.validate();
            }
        }

        if (j.contains("output"))
        {
            const json &o = j["output"];
            check_keys(o, {"directory"}, "output");
            std::filesystem::path d = text(require(o, "directory", "output"), "output.directory");
            c.output_dir = d.is_relative() ? base_dir / d : d;
        }
        else
            c.output_dir = base_dir / "swarray_out";
        return c;
    }

    RunConfig load_run_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open config file '" + path.string() + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        std::filesystem::path base = path.parent_path();
        if (base.empty())
            base = ".";
        return parse_run_config(ss.str(), base);
    }

} // namespace swarray
