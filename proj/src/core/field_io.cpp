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
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "swarray/error.hpp"
#include "swarray/field_io.hpp"

namespace swarray
{
    using json = nlohmann::json;

    void FieldSampleSet::validate() const
    {
        if (!(radius > 0.0) || !std::isfinite(radius))
            throw ValidationError("field set radius must be positive");
        validate_grid(grid);
        if (frequencies.empty())
            throw ValidationError("field set has no frequencies");
        for (size_t f = 0; f < frequencies.size(); ++f)
        {
            if (!(frequencies[f] > 0.0))
                throw ValidationError("frequencies must be positive");
            if (f > 0 && !(frequencies[f] > frequencies[f - 1]))
                throw ValidationError("frequencies must be strictly increasing (entry " + std::to_string(f) + ")");
        }
        if (ports.empty())
            throw ValidationError("field set has no ports");
        if (blocks.size() != ports.size() * frequencies.size())
            throw ValidationError("field set holds " + std::to_string(blocks.size()) + " blocks, expected ports x frequencies = " +
                                  std::to_string(ports.size() * frequencies.size()));
        const size_t n = grid.size();
        for (const auto &b : blocks)
            if (b.r.size() != n || b.theta.size() != n || b.phi.size() != n)
                throw ValidationError("field block size does not match the grid");
    }

    namespace
    {
        void put_block(std::vector<double> &out, const FieldBlock &b)
        {
            for (size_t i = 0; i < b.size(); ++i)
            {
                out.push_back(b.r[i].real()), out.push_back(b.r[i].imag());
                out.push_back(b.theta[i].real()), out.push_back(b.theta[i].imag());
                out.push_back(b.phi[i].real()), out.push_back(b.phi[i].imag());
            }
        }

        void get_block(const double *v, size_t n, FieldBlock &b)
        {
            b.resize(n);
            for (size_t i = 0; i < n; ++i, v += 6)
            {
                b.r[i] = {v[0], v[1]};
                b.theta[i] = {v[2], v[3]};
                b.phi[i] = {v[4], v[5]};
            }
        }

        bool little_endian()
        {
            const uint16_t one = 1;
            unsigned char c;
            std::memcpy(&c, &one, 1);
            return c == 1;
        }

        double swap_double(double v)
        {
            unsigned char b[8];
            std::memcpy(b, &v, 8);
            std::reverse(b, b + 8);
            std::memcpy(&v, b, 8);
            return v;
        }

        std::vector<double> number_array(const json &j, const char *key)
        {
            if (!j.contains(key))
                throw ValidationError(std::string("field file header lacks '") + key + "'");
            const json &a = j.at(key);
            if (!a.is_array())
                throw ValidationError(std::string("field file entry '") + key + "' must be an array");
            std::vector<double> v;
            v.reserve(a.size());
            for (const auto &x : a)
            {
                if (!x.is_number())
                    throw ValidationError(std::string("field file entry '") + key + "' must hold numbers only");
                v.push_back(x.get<double>());
            }
            return v;
        }
    } // namespace

    void save_field_samples(const FieldSampleSet &fields, const std::string &path, bool binary_sidecar)
    {
        fields.validate();
        json j;
        j["format"] = field_file_format;
        j["version"] = field_file_version;
        j["excitation"] = field_file_excitation;
        j["time_convention"] = "exp(-iwt)";
        j["radius_m"] = fields.radius;
        j["theta_nodes"] = fields.grid.theta_nodes;
        j["theta_weights"] = fields.grid.theta_weights;
        j["phi_nodes"] = fields.grid.phi_nodes;
        j["frequencies_rad_s"] = fields.frequencies;
        j["ports"] = fields.ports;

        if (binary_sidecar)
        {
            const std::string bin = path + ".bin";
            std::ofstream os(bin, std::ios::binary);
            if (!os)
                throw IoError("cannot open '" + bin + "' for writing");
            const bool le = little_endian();
            std::vector<double> buf;
            for (size_t p = 0; p < fields.n_ports(); ++p)
                for (size_t f = 0; f < fields.n_freqs(); ++f)
                {
                    buf.clear();
                    put_block(buf, fields.block(p, f));
                    if (!le)
                        for (auto &v : buf)
                            v = swap_double(v);
                    os.write(reinterpret_cast<const char *>(buf.data()), (std::streamsize)(buf.size() * sizeof(double)));
                }
            if (!os)
                throw IoError("failed writing '" + bin + "'");
            j["samples_file"] = std::filesystem::path(bin).filename().string();
        }
        else
        {
            json samples = json::object();
            for (size_t p = 0; p < fields.n_ports(); ++p)
            {
                std::vector<double> buf;
                for (size_t f = 0; f < fields.n_freqs(); ++f)
                    put_block(buf, fields.block(p, f));
                samples[fields.ports[p]] = buf;
            }
            j["samples"] = std::move(samples);
        }

        std::ofstream os(path);
        if (!os)
            throw IoError("cannot open '" + path + "' for writing");
        os << j.dump() << '\n';
        if (!os)
            throw IoError("failed writing '" + path + "'");
    }

    FieldSampleSet load_field_samples(const std::string &path, int N)
    {
        std::ifstream is(path);
        if (!is)
            throw IoError("cannot open field file '" + path + "'");
        json j;
        try
        {
            is >> j;
        }
        catch (const json::exception &e)
        {
            throw ValidationError("field file '" + path + "' is not valid JSON: " + e.what());
        }
        if (!j.is_object() || j.value("format", std::string()) != field_file_format)
            throw ValidationError("field file '" + path + "' lacks format tag '" + std::string(field_file_format) + "'");
        if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != field_file_version)
            throw ValidationError("unsupported field file version");
        if (!j.contains("excitation") || !j["excitation"].is_string())
            throw ValidationError("field file header lacks the 'excitation' description");

        bool conjugate = false;
        if (j.contains("time_convention"))
        {
            const std::string tc = j["time_convention"].is_string() ? j["time_convention"].get<std::string>() : "";
            if (tc == "exp(+jwt)")
                conjugate = true;
            else if (tc != "exp(-iwt)")
                throw ValidationError("time_convention must be 'exp(-iwt)' or 'exp(+jwt)'");
        }

        FieldSampleSet fs;
        if (!j.contains("radius_m") || !j["radius_m"].is_number())
            throw ValidationError("field file header lacks 'radius_m'");
        fs.radius = j["radius_m"].get<double>();
        fs.grid.theta_nodes = number_array(j, "theta_nodes");
        fs.grid.phi_nodes = number_array(j, "phi_nodes");
        fs.frequencies = number_array(j, "frequencies_rad_s");
        if (j.contains("theta_weights"))
            fs.grid.theta_weights = number_array(j, "theta_weights");
        else
        {
            // Without explicit weights the nodes must be the Gauss-Legendre nodes in cos(theta)
            const SphereGrid ref = make_sphere_grid((int)std::max<size_t>(fs.grid.theta_nodes.size(), 1), 1);
            for (size_t i = 0; i < fs.grid.theta_nodes.size(); ++i)
                if (std::abs(ref.theta_nodes[i] - fs.grid.theta_nodes[i]) > 1e-10)
                    throw ValidationError("theta_nodes are not Gauss-Legendre nodes; supply 'theta_weights'");
            fs.grid.theta_weights = ref.theta_weights;
        }
        if (!j.contains("ports") || !j["ports"].is_array())
            throw ValidationError("field file header lacks 'ports'");
        for (const auto &p : j["ports"])
        {
            if (!p.is_string())
                throw ValidationError("port names must be strings");
            fs.ports.push_back(p.get<std::string>());
        }
        validate_grid(fs.grid);

        const size_t n = fs.grid.size(), nf = fs.frequencies.size();
        const size_t per_port = 6 * n * nf;
        fs.blocks.resize(fs.ports.size() * nf);

        if (j.contains("samples_file"))
        {
            if (!j["samples_file"].is_string())
                throw ValidationError("'samples_file' must be a string");
            std::filesystem::path bin(j["samples_file"].get<std::string>());
            if (bin.is_relative())
                bin = std::filesystem::path(path).parent_path() / bin;
            std::ifstream bs(bin, std::ios::binary);
            if (!bs)
                throw IoError("cannot open sample file '" + bin.string() + "'");
            std::vector<double> buf(per_port * fs.ports.size());
            bs.read(reinterpret_cast<char *>(buf.data()), (std::streamsize)(buf.size() * sizeof(double)));
            if ((size_t)bs.gcount() != buf.size() * sizeof(double))
                throw ValidationError("sample file '" + bin.string() + "' is shorter than the header implies");
            if (bs.peek() != std::char_traits<char>::eof())
                throw ValidationError("sample file '" + bin.string() + "' is longer than the header implies");
            if (!little_endian())
                for (auto &v : buf)
                    v = swap_double(v);
            for (size_t p = 0; p < fs.ports.size(); ++p)
                for (size_t f = 0; f < nf; ++f)
                    get_block(&buf[p * per_port + f * 6 * n], n, fs.block(p, f));
        }
        else
        {
            if (!j.contains("samples") || !j["samples"].is_object())
                throw ValidationError("field file has neither 'samples' nor 'samples_file'");
            const json &s = j["samples"];
            for (size_t p = 0; p < fs.ports.size(); ++p)
            {
                if (!s.contains(fs.ports[p]))
                    throw ValidationError("field file lacks samples for port '" + fs.ports[p] + "'");
                std::vector<double> buf;
                try
                {
                    buf = s[fs.ports[p]].get<std::vector<double>>();
                }
                catch (const json::exception &)
                {
                    throw ValidationError("samples of port '" + fs.ports[p] + "' must be an array of numbers");
                }
                if (buf.size() != per_port)
                    throw ValidationError("port '" + fs.ports[p] + "' has " + std::to_string(buf.size()) + " sample values, expected " +
                                          std::to_string(per_port));
                for (size_t f = 0; f < nf; ++f)
                    get_block(&buf[f * 6 * n], n, fs.block(p, f));
            }
            for (const auto &item : s.items())
                if (std::find(fs.ports.begin(), fs.ports.end(), item.key()) == fs.ports.end())
                    throw ValidationError("samples given for undeclared port '" + item.key() + "'");
        }

        if (conjugate)
            for (auto &b : fs.blocks)
                for (size_t i = 0; i < b.size(); ++i)
                    b.r[i] = std::conj(b.r[i]), b.theta[i] = std::conj(b.theta[i]), b.phi[i] = std::conj(b.phi[i]);

        fs.validate();
        if (N > 0)
            check_grid_density(fs.grid, N);
        return fs;
    }

} // namespace swarray
