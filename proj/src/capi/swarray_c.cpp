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

#include <exception>
#include <new>
#include <string>

#include "swarray/swarray.h"

#include "swarray/analysis.hpp"
#include "swarray/commands.hpp"
#include "swarray/config.hpp"
#include "swarray/field_io.hpp"
#include "swarray/fisher.hpp"
#include "swarray/modes.hpp"

struct swa_model
{
    swarray::ReceptionModel model;
};

namespace
{
    thread_local std::string last_error;
    thread_local std::string last_summary;

    swa_status fail(swa_status s, const char *what)
    {
        last_error = what;
        return s;
    }

    swa_status status_of(swarray::ErrorCode c)
    {
        switch (c)
        {
        case swarray::ErrorCode::invalid_argument:
            return SWA_ERR_INVALID_ARGUMENT;
        case swarray::ErrorCode::domain:
            return SWA_ERR_DOMAIN;
        case swarray::ErrorCode::validation:
            return SWA_ERR_VALIDATION;
        case swarray::ErrorCode::io:
            return SWA_ERR_IO;
        case swarray::ErrorCode::singular:
            return SWA_ERR_SINGULAR;
        default:
            return SWA_ERR_RUNTIME;
        }
    }

    template <class Fn>
    swa_status guarded(Fn &&fn)
    {
        try
        {
            fn();
            last_error.clear();
            return SWA_OK;
        }
        catch (const swarray::Error &e)
        {
            return fail(status_of(e.code()), e.what());
        }
        catch (const std::bad_alloc &)
        {
            return fail(SWA_ERR_RUNTIME, "out of memory");
        }
        catch (const std::exception &e)
        {
            return fail(SWA_ERR_RUNTIME, e.what());
        }
        catch (...)
        {
            return fail(SWA_ERR_RUNTIME, "unknown error");
        }
    }

    swarray::CommandOptions options_of(const swa_run_options *o)
    {
        swarray::CommandOptions c;
        if (!o)
            return c;
        c.parallel = o->parallel ? o->parallel : 1;
        if (o->has_seed)
            c.seed = o->seed;
        if (o->criterion == SWA_CRITERION_A)
            c.criterion = swarray::Criterion::A;
        else if (o->criterion == SWA_CRITERION_D)
            c.criterion = swarray::Criterion::D;
        else if (o->criterion != SWA_CRITERION_CONFIG)
            throw swarray::Error(swarray::ErrorCode::invalid_argument, "unknown criterion value");
        if (o->output_dir)
            c.output_dir = o->output_dir;
        return c;
    }

    void need(const void *p, const char *name)
    {
        if (!p)
            throw swarray::Error(swarray::ErrorCode::invalid_argument, std::string(name) + " is NULL");
    }
} // namespace

extern "C"
{
    const char *swa_version(void) { return "0.1.0"; }

    const char *swa_last_error(void) { return last_error.c_str(); }

    const char *swa_last_summary(void) { return last_summary.c_str(); }

    const char *swa_status_name(swa_status status)
    {
        switch (status)
        {
        case SWA_OK:
            return "ok";
        case SWA_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case SWA_ERR_DOMAIN:
            return "domain error";
        case SWA_ERR_VALIDATION:
            return "validation error";
        case SWA_ERR_IO:
            return "I/O error";
        case SWA_ERR_SINGULAR:
            return "singular Fisher information";
        case SWA_ERR_RUNTIME:
            return "runtime error";
        }
        return "unknown status";
    }

    swa_status swa_mode_index(int s, int m, int n, int *j)
    {
        return guarded([&]
                       { need(j, "j"); *j = swarray::mode_index_from_triple(s, m, n); });
    }

    swa_status swa_mode_triple(int j, int *s, int *m, int *n)
    {
        return guarded([&]
                       {
            need(s, "s"), need(m, "m"), need(n, "n");
            const swarray::ModeIndex t = swarray::triple_from_mode_index(j);
            *s = t.s, *m = t.m, *n = t.n; });
    }

    swa_status swa_mode_count(int N, int *J)
    {
        return guarded([&]
                       { need(J, "J"); *J = swarray::mode_count(N); });
    }

    swa_status swa_model_from_config(const char *config_path, unsigned parallel, swa_model **out)
    {
        return guarded([&]
                       {
            need(config_path, "config_path"), need(out, "out");
            *out = nullptr;
            const swarray::RunConfig cfg = swarray::load_run_config(config_path);
            const swarray::Scenario sc = cfg.scenario();
            auto *m = new swa_model{swarray::build_candidate_model(sc, sc.geometry.initial, parallel ? parallel : 1)};
            *out = m; });
    }

    swa_status swa_model_from_fields(const char *fields_path, int N, double omega0, double delta_omega, int P, swa_model **out)
    {
        return guarded([&]
                       {
            need(fields_path, "fields_path"), need(out, "out");
            *out = nullptr;
            const swarray::FieldSampleSet fs = swarray::load_field_samples(fields_path, N);
            *out = new swa_model{swarray::build_reception_model(fs, N, omega0, delta_omega, P)}; });
    }

    void swa_model_free(swa_model *model) { delete model; }

    swa_status swa_model_dims(const swa_model *model, int *L, int *P, int *N)
    {
        return guarded([&]
                       {
            need(model, "model");
            if (L) *L = model->model.L;
            if (P) *P = model->model.P;
            if (N) *N = model->model.N; });
    }

    swa_status swa_model_reception(const swa_model *model, double *re_im, size_t count)
    {
        return guarded([&]
                       {
            need(model, "model"), need(re_im, "re_im");
            const auto &R = model->model.R;
            const size_t n = 2 * (size_t)R.rows() * (size_t)R.cols();
            if (count < n)
                throw swarray::Error(swarray::ErrorCode::invalid_argument, "buffer holds " + std::to_string(count) +
                                                                               " doubles, need " + std::to_string(n));
            size_t k = 0;
            for (Eigen::Index r = 0; r < R.rows(); ++r)
                for (Eigen::Index c = 0; c < R.cols(); ++c)
                    re_im[k++] = R(r, c).real(), re_im[k++] = R(r, c).imag(); });
    }

    swa_status swa_fim(const swa_model *model, const double params[7], double sigma2, double F[49])
    {
        return guarded([&]
                       {
            need(model, "model"), need(params, "params"), need(F, "F");
            const swarray::SignalParams sp = swarray::SignalParams::from_vector(std::vector<double>(params, params + 7));
            const swarray::FimResult r = swarray::fim(sp, model->model, swarray::PulseSpectrum::flat(model->model.P),
                                                      swarray::NoiseModel::white(sigma2));
            for (int i = 0; i < 7; ++i)
                for (int k = 0; k < 7; ++k)
                    F[i * 7 + k] = r.F(i, k); });
    }

    swa_status swa_crlb_linear(const swa_model *model, const double eta[4], double sigma2, double crlb[4])
    {
        return guarded([&]
                       {
            need(model, "model"), need(eta, "eta"), need(crlb, "crlb");
            const swarray::FimResult r = swarray::fim_linear({eta[0], eta[1], eta[2], eta[3]}, model->model,
                                                             swarray::PulseSpectrum::flat(model->model.P),
                                                             swarray::NoiseModel::white(sigma2));
            const Eigen::MatrixXd C = swarray::crlb_matrix(r);
            for (int i = 0; i < 4; ++i)
                crlb[i] = C(i, i); });
    }

    swa_status swa_beam_pattern(const swa_model *model, const double eta[4], double theta_probe, double phi_probe, double *value)
    {
        return guarded([&]
                       {
            need(model, "model"), need(eta, "eta"), need(value, "value");
            const swarray::SignalParams sp = swarray::LinearSignalParams{eta[0], eta[1], eta[2], eta[3]}.to_full();
            *value = swarray::beam_pattern(theta_probe, phi_probe, sp, model->model); });
    }

    swa_status swa_run_extract(const char *fields_path, int order, const char *out_path)
    {
        return guarded([&]
                       {
            need(fields_path, "fields_path"), need(out_path, "out_path");
            last_summary = swarray::run_extract(fields_path, order, out_path).summary; });
    }

    swa_status swa_run_synthesize(const char *config_path, const char *out_path, int binary_sidecar)
    {
        return guarded([&]
                       {
            need(config_path, "config_path"), need(out_path, "out_path");
            last_summary = swarray::run_synthesize(config_path, out_path, binary_sidecar != 0).summary; });
    }

    swa_status swa_run_crlb(const char *config_path, const swa_run_options *options)
    {
        return guarded([&]
                       {
            need(config_path, "config_path");
            last_summary = swarray::run_crlb(config_path, options_of(options)).summary; });
    }

    swa_status swa_run_beampattern(const char *config_path, const swa_run_options *options)
    {
        return guarded([&]
                       {
            need(config_path, "config_path");
            last_summary = swarray::run_beampattern(config_path, options_of(options)).summary; });
    }

    swa_status swa_run_optimize(const char *config_path, const swa_run_options *options)
    {
        return guarded([&]
                       {
            need(config_path, "config_path");
            last_summary = swarray::run_optimize(config_path, options_of(options)).summary; });
    }
}
