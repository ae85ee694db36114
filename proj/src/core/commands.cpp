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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "swarray/commands.hpp"
#include "swarray/config.hpp"
#include "swarray/field_io.hpp"

namespace swarray
{
    using nlohmann::json;
    namespace fs = std::filesystem;

    namespace
    {
        constexpr double rad2deg = 180.0 / pi;

        std::string num(double x)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            return buf;
        }

        // Angle in degrees, rounded to 12 significant digits so grid angles print as entered
        std::string deg(double rad)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.12g", rad * rad2deg);
            return buf;
        }

        std::string fixed(double x, int digits)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.*f", digits, x);
            return buf;
        }

        std::string sci(double x)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.4e", x);
            return buf;
        }

        void write_text(const fs::path &p, const std::string &content, CommandResult &res)
        {
            std::ofstream out(p, std::ios::binary);
            if (!out)
                throw IoError("cannot write '" + p.string() + "'");
            out << content;
            if (!out)
                throw IoError("failed writing '" + p.string() + "'");
            res.files.push_back(p.string());
        }

        void write_json(const fs::path &p, const json &j, CommandResult &res) { write_text(p, j.dump(2) + "\n", res); }

        fs::path output_dir(const RunConfig &cfg, const CommandOptions &opt)
        {
            fs::path d = opt.output_dir.empty() ? cfg.output_dir : fs::path(opt.output_dir);
            std::error_code ec;
            fs::create_directories(d, ec);
            if (ec)
                throw IoError("cannot create output directory '" + d.string() + "': " + ec.message());
            return d;
        }

        unsigned width(const CommandOptions &opt) { return opt.parallel ? opt.parallel : 1; }

        json rank_json(const RankReport &r)
        {
            return {{"rank", r.rank},
                    {"smallest_singular_value", r.smallest_singular_value},
                    {"largest_singular_value", r.largest_singular_value},
                    {"bin_ranks", r.bin_ranks},
                    {"full_rank", r.full_rank},
                    {"note", "full rank of R is necessary, not sufficient, for the absence of manifold ambiguities"}};
        }

        json model_json(const Scenario &sc, const ReceptionModel &m)
        {
            return {{"ports", m.ports},
                    {"order", m.N},
                    {"bins", m.P},
                    {"center_ghz", m.omega0 / (2e9 * pi)},
                    {"bin_spacing_mhz", m.delta_omega / (2e6 * pi)},
                    {"tau_max_ns", tau_max(m.delta_omega) * 1e9},
                    {"sphere_center_mm", {sc.sphere.center[0] * 1e3, sc.sphere.center[1] * 1e3, sc.sphere.center[2] * 1e3}},
                    {"sphere_radius_mm", sc.sphere.radius * 1e3},
                    {"grid_order", sc.grid_order},
                    {"warnings", sc.truncation_note().empty() ? json::array() : json::array({sc.truncation_note()})}};
        }

        json element_json(const ElementSpec &e)
        {
            json j;
            if (!e.name.empty())
                j["name"] = e.name;
            switch (e.kind)
            {
            case ElementKind::hertzian_dipole:
                j["type"] = "hertzian_dipole";
                j["axis"] = e.axis == DipoleAxis::x ? "x" : (e.axis == DipoleAxis::y ? "y" : "z");
                break;
            case ElementKind::crossed_dipole:
                j["type"] = "crossed_dipole";
                break;
            default:
                j["type"] = "imported";
                return j;
            }
            j["position_mm"] = {e.position[0] * 1e3, e.position[1] * 1e3, e.position[2] * 1e3};
            j["beta_deg"] = e.beta * rad2deg;
            return j;
        }

        double gamma_display(const GeometryParam &g, double v)
        {
            return g.field == GeometryParam::Field::beta ? v * rad2deg : v * 1e3;
        }

        const char *gamma_unit(const GeometryParam &g) { return g.field == GeometryParam::Field::beta ? "deg" : "mm"; }

        json gamma_json(const GeometryParams &gp, const std::vector<double> &gamma)
        {
            json a = json::array();
            for (size_t i = 0; i < gamma.size() && i < gp.map.size(); ++i)
                a.push_back({{"name", gp.map[i].name}, {"value", gamma_display(gp.map[i], gamma[i])}, {"unit", gamma_unit(gp.map[i])}});
            return a;
        }
    } // namespace

    CommandResult run_extract(const std::string &fields_path, int order, const std::string &out_path)
    {
        if (order < 1)
            throw ValidationError("order must be at least 1");
        const FieldSampleSet fsamp = load_field_samples(fields_path, order);
        CommandResult res;
        json sets = json::array();
        std::ostringstream sum;
        sum << "extracted order " << order << " (J = " << mode_count(order) << ") from " << fsamp.n_ports() << " port(s) x "
            << fsamp.n_freqs() << " frequency(ies)\n";
        for (size_t p = 0; p < fsamp.n_ports(); ++p)
            for (size_t f = 0; f < fsamp.n_freqs(); ++f)
            {
                const CoefficientSet T = extract_transmission(fsamp, p, f, order);
                const CoefficientSet R = reception_from_transmission(T);
                size_t jmax = 0;
                double power = 0.0;
                for (size_t j = 0; j < T.values.size(); ++j)
                {
                    power += std::norm(T.values[j]);
                    if (std::abs(T.values[j]) > std::abs(T.values[jmax]))
                        jmax = j;
                }
                const ModeIndex mi = triple_from_mode_index((int)jmax + 1);
                sum << "  " << fsamp.ports[p] << " @ " << fixed(fsamp.frequencies[f] / (2e9 * pi), 6) << " GHz: sum |T|^2 = "
                    << fixed(power, 6) << ", dominant mode j = " << jmax + 1 << " (s=" << mi.s << ", m=" << mi.m << ", n=" << mi.n
                    << ")\n";
                for (const CoefficientSet *c : {&T, &R})
                {
                    json vals = json::array();
                    for (const cdouble &v : c->values)
                        vals.push_back({v.real(), v.imag()});
                    sets.push_back({{"port", fsamp.ports[p]},
                                    {"omega_rad_s", c->omega},
                                    {"role", role_name(c->role)},
                                    {"values", vals}});
                }
            }
        json j = {{"format", "swarray-swc"},
                  {"version", 1},
                  {"time_convention", "exp(-iwt)"},
                  {"order", order},
                  {"modes", mode_count(order)},
                  {"index", "j = 2[n(n+1) + m - 1] + s"},
                  {"source",
                   {{"fields", fs::path(fields_path).filename().string()},
                    {"radius_m", fsamp.radius},
                    {"theta_nodes", fsamp.grid.n_theta()},
                    {"phi_nodes", fsamp.grid.n_phi()},
                    {"ports", fsamp.ports},
                    {"excitation", field_file_excitation}}},
                  {"coefficients", sets}};
        write_json(out_path, j, res);
        sum << "wrote " << out_path << "\n";
        res.summary = sum.str();
        return res;
    }

    CommandResult run_synthesize(const std::string &config_path, const std::string &out_path, bool binary_sidecar)
    {
        const RunConfig cfg = load_run_config(config_path);
        const Scenario sc = cfg.scenario();
        const FieldSampleSet fields =
            synthesize_array_fields(sc.elements, sc.sphere, sc.grid(), sc.frequencies(), sc.min_spacing);
        save_field_samples(fields, out_path, binary_sidecar);
        CommandResult res;
        res.files.push_back(out_path);
        if (binary_sidecar)
            res.files.push_back(out_path + ".bin");
        std::ostringstream sum;
        sum << "synthesized " << fields.n_ports() << " port(s) x " << fields.n_freqs() << " frequency(ies) on a "
            << fields.grid.n_theta() << " x " << fields.grid.n_phi() << " grid, radius " << fixed(fields.radius * 1e3, 3)
            << " mm\nwrote " << out_path << "\n";
        res.summary = sum.str();
        return res;
    }

    CommandResult run_crlb(const std::string &config_path, const CommandOptions &opt)
    {
        const RunConfig cfg = load_run_config(config_path);
        if (!cfg.crlb.present)
            throw ValidationError("config has no 'crlb' section");
        const Scenario sc = cfg.scenario();
        const unsigned w = width(opt);
        const ReceptionModel model = build_candidate_model(sc, sc.geometry.initial, w);
        const fs::path dir = output_dir(cfg, opt);
        CommandResult res;

        const std::vector<CrlbMapRow> rows =
            crlb_map(model, sc.pulse, sc.noise, cfg.crlb.alpha, cfg.crlb.theta, cfg.crlb.phi, cfg.crlb.tau, w);
        std::string csv = "alpha_deg,theta0_deg,phi0_deg,b_theta0_rad2,b_phi0_rad2,singular,scaled_lambda_min\n";
        size_t singular = 0;
        for (const auto &r : rows)
        {
            singular += r.singular;
            csv += deg(r.alpha) + "," + deg(r.theta0) + "," + deg(r.phi0) + "," +
                   (r.singular ? std::string("nan") : num(r.b_theta0)) + "," + (r.singular ? std::string("nan") : num(r.b_phi0)) +
                   "," + (r.singular ? "1" : "0") + "," + num(r.scaled_lambda_min) + "\n";
        }
        write_text(dir / "crlb_map.csv", csv, res);

        const DirectionQuadrature q = average_quadrature(cfg.crlb.average_theta_nodes, cfg.crlb.average_phi_nodes);
        std::string avg = "alpha_deg,b_theta0_avg_rad2,b_phi0_avg_rad2,nodes,singular_nodes\n";
        std::ostringstream sum;
        sum << "array: " << model.L << " port(s), N = " << model.N << ", P = " << model.P << "\n";
        sum << "map: " << rows.size() << " node(s), " << singular << " singular\n";
        sum << "average CRLBs over theta0 in (0, 180) deg, phi0 in [0, 360) deg:\n";
        sum << "  alpha_deg   B_theta0 [rad^2]   B_phi0 [rad^2]\n";
        json avg_json = json::array();
        for (double a : cfg.crlb.alpha)
        {
            // A slant at which every node is singular yields a row of NaN rather than aborting the run
            AverageCrlb r;
            try
            {
                r = average_crlb(model, sc.pulse, sc.noise, a, q, cfg.crlb.tau, w);
            }
            catch (const SingularFimError &)
            {
                r.b_theta0 = r.b_phi0 = std::numeric_limits<double>::quiet_NaN();
                r.nodes = r.singular_nodes = q.weight.size();
            }
            avg += deg(a) + "," + num(r.b_theta0) + "," + num(r.b_phi0) + "," + std::to_string(r.nodes) + "," +
                   std::to_string(r.singular_nodes) + "\n";
            sum << "  " << fixed(a * rad2deg, 2) << "      " << sci(r.b_theta0) << "         " << sci(r.b_phi0) << "\n";
            avg_json.push_back({{"alpha_deg", a * rad2deg},
                                {"b_theta0_avg_rad2", r.b_theta0},
                                {"b_phi0_avg_rad2", r.b_phi0},
                                {"nodes", r.nodes},
                                {"singular_nodes", r.singular_nodes}});
        }
        write_text(dir / "crlb_average.csv", avg, res);

        const RankReport rank = manifold_rank_check(model);
        json summary = {{"model", model_json(sc, model)},
                        {"noise", sc.noise.kind == NoiseModel::Kind::white ? "white" : "diagonal"},
                        {"rank", rank_json(rank)},
                        {"map_nodes", rows.size()},
                        {"map_singular_nodes", singular},
                        {"average", avg_json}};
        write_json(dir / "crlb_summary.json", summary, res);
        sum << "rank of R: " << rank.rank << (rank.full_rank ? " (every bin full rank)" : " (rank deficient bin)") << "\n";
        if (!sc.truncation_note().empty())
            sum << "warning: " << sc.truncation_note() << "\n";
        res.summary = sum.str();
        return res;
    }

    CommandResult run_beampattern(const std::string &config_path, const CommandOptions &opt)
    {
        const RunConfig cfg = load_run_config(config_path);
        if (!cfg.beam.present)
            throw ValidationError("config has no 'beampattern' section");
        const Scenario sc = cfg.scenario();
        const unsigned w = width(opt);
        const ReceptionModel model = build_candidate_model(sc, sc.geometry.initial, w);
        const fs::path dir = output_dir(cfg, opt);
        CommandResult res;

        const auto &b = cfg.beam;
        const SignalParams truth = LinearSignalParams{b.tau, b.theta0, b.phi0, b.alpha}.to_full();
        std::vector<double> th(b.theta_count), ph(b.phi_count);
        for (int i = 0; i < b.theta_count; ++i)
            th[i] = pi * i / (b.theta_count - 1);
        for (int k = 0; k < b.phi_count; ++k)
            ph[k] = 2.0 * pi * k / b.phi_count;
        const BeamPatternGrid g = beam_pattern_grid(truth, model, th, ph, w);

        std::string csv = "theta_deg,phi_deg,value\n";
        for (size_t i = 0; i < th.size(); ++i)
            for (size_t k = 0; k < ph.size(); ++k)
                csv += deg(th[i]) + "," + deg(ph[k]) + "," + num(g.at(i, k)) + "\n";
        write_text(dir / "beam_grid.csv", csv, res);

        const BeamCut ce = elevation_cut(truth, model, b.cut_points);
        csv = "signed_theta_deg,theta_deg,phi_deg,value\n";
        for (size_t i = 0; i < ce.values.size(); ++i)
            csv += deg(ce.angle[i]) + "," + deg(ce.theta[i]) + "," + deg(ce.phi[i]) + "," +
                   num(ce.values[i]) + "\n";
        write_text(dir / "beam_cut_elevation.csv", csv, res);

        const BeamCut ca = azimuth_cut(truth, model, b.cut_points);
        csv = "phi_deg,theta_deg,value\n";
        for (size_t i = 0; i < ca.values.size(); ++i)
            csv += deg(ca.angle[i]) + "," + deg(ca.theta[i]) + "," + num(ca.values[i]) + "\n";
        write_text(dir / "beam_cut_azimuth.csv", csv, res);

        const double peak = beam_pattern(b.theta0, b.phi0, truth, model);
        const RankReport rank = manifold_rank_check(model);
        json summary = {{"model", model_json(sc, model)},
                        {"theta0_deg", b.theta0 * rad2deg},
                        {"phi0_deg", b.phi0 * rad2deg},
                        {"alpha_deg", b.alpha * rad2deg},
                        {"value_at_true_direction", peak},
                        {"max_sidelobe", g.max_sidelobe},
                        {"sidelobe_theta_deg", g.sidelobe_theta * rad2deg},
                        {"sidelobe_phi_deg", g.sidelobe_phi * rad2deg},
                        {"grid_rows", g.values.size()},
                        {"rank", rank_json(rank)}};
        write_json(dir / "beam_summary.json", summary, res);

        std::ostringstream sum;
        sum << "beam pattern for theta0 = " << fixed(b.theta0 * rad2deg, 2) << " deg, phi0 = " << fixed(b.phi0 * rad2deg, 2)
            << " deg, alpha = " << fixed(b.alpha * rad2deg, 2) << " deg\n";
        sum << "value at true direction: " << fixed(peak, 12) << "\n";
        sum << "max sidelobe: " << fixed(g.max_sidelobe, 4) << " at theta = " << fixed(g.sidelobe_theta * rad2deg, 2)
            << " deg, phi = " << fixed(g.sidelobe_phi * rad2deg, 2) << " deg\n";
        if (!sc.truncation_note().empty())
            sum << "warning: " << sc.truncation_note() << "\n";
        res.summary = sum.str();
        return res;
    }

    CommandResult run_optimize(const std::string &config_path, const CommandOptions &opt)
    {
        const RunConfig cfg = load_run_config(config_path);
        if (!cfg.optimize.present)
            throw ValidationError("config has no 'optimize' section");
        OptimizeRun run;
        run.scenario = cfg.scenario();
        run.criterion = opt.criterion ? *opt.criterion : cfg.optimize.criterion;
        run.de = cfg.optimize.de;
        if (opt.seed)
            run.de.seed = *opt.seed;
        run.de.parallel = width(opt);
        run.domain = make_domain(cfg.optimize.mode, cfg.optimize.resolution, run.scenario.noise, run.scenario.delta_omega);
        const fs::path dir = output_dir(cfg, opt);

        const OptimizationResult r = optimize_array(run);
        const GeometryParams &gp = run.scenario.geometry;
        CommandResult res;

        json trace = json::array();
        std::string csv = "generation,best,mean,evaluations,infeasible\n";
        for (const auto &g : r.trace)
        {
            trace.push_back({{"generation", g.generation},
                             {"best", g.best},
                             {"mean", std::isfinite(g.mean) ? json(g.mean) : json(nullptr)},
                             {"evaluations", g.evaluations},
                             {"infeasible", g.infeasible}});
            csv += std::to_string(g.generation) + "," + num(g.best) + "," + num(g.mean) + "," + std::to_string(g.evaluations) + "," +
                   std::to_string(g.infeasible) + "\n";
        }
        write_text(dir / "trace.csv", csv, res);
        write_json(dir / "trace.json", {{"criterion", criterion_name(run.criterion)}, {"generations", trace}}, res);

        auto finite_or_null = [](double x)
        { return std::isfinite(x) ? json(x) : json(nullptr); };
        json result = {{"criterion", criterion_name(run.criterion)},
                       {"polarization", cfg.optimize.mode == Parameterization::linear ? "linear" : "full"},
                       {"domain_nodes", run.domain.size()},
                       {"seed", run.de.seed},
                       {"population", run.de.population},
                       {"generations", run.de.generations},
                       {"strategy", de_strategy_name(run.de.strategy)},
                       {"updating", de_updating_name(run.de.updating)},
                       {"mutation", run.de.mutation_upper > run.de.mutation ? json::array({run.de.mutation, run.de.mutation_upper})
                                                                            : json(run.de.mutation)},
                       {"crossover", run.de.crossover},
                       {"best_objective", finite_or_null(r.best_objective)},
                       {"initial_objective", finite_or_null(r.initial_objective)},
                       {"best_gamma", gamma_json(gp, r.best_gamma)},
                       {"initial_gamma", gamma_json(gp, r.initial_gamma)},
                       {"evaluations", r.evaluations},
                       {"wall_time_s", r.wall_time},
                       {"notes", r.notes},
                       {"model", {{"order", run.scenario.N}, {"bins", run.scenario.P}, {"grid_order", run.scenario.grid_order},
                                  {"sphere_radius_mm", run.scenario.sphere.radius * 1e3}}}};
        write_json(dir / "result.json", result, res);

        const std::vector<ElementSpec> best = gp.apply(run.scenario.elements, r.best_gamma);
        json els = json::array();
        for (const auto &e : best)
            els.push_back(element_json(e));
        write_json(dir / "geometry.json", {{"elements", els}}, res);

        std::ostringstream sum;
        sum << "criterion " << criterion_name(run.criterion) << ", population " << run.de.population << ", " << run.de.generations
            << " generation(s), seed " << run.de.seed << "\n";
        sum << "initial objective: " << num(r.initial_objective) << "\n";
        sum << "best objective:    " << num(r.best_objective) << "\n";
        for (size_t i = 0; i < r.best_gamma.size(); ++i)
            sum << "  " << gp.map[i].name << " = " << fixed(gamma_display(gp.map[i], r.best_gamma[i]), 4) << " "
                << gamma_unit(gp.map[i]) << "\n";
        sum << r.evaluations << " evaluations in " << fixed(r.wall_time, 2) << " s\n";
        for (const auto &n : r.notes)
            sum << "note: " << n << "\n";
        res.summary = sum.str();
        return res;
    }

} // namespace swarray
