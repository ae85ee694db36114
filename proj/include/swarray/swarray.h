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

/* C interface of the swarray library. All functions return a status code; the message of
   the last failure on the calling thread is available from swa_last_error(). */

#ifndef SWARRAY_H
#define SWARRAY_H

#include <stddef.h>
#include <stdint.h>

#if defined(SWARRAY_BUILDING_LIBRARY)
#define SWA_API __attribute__((visibility("default")))
#else
#define SWA_API
#endif

#ifdef __cplusplus
extern "C"
{
#endif

    typedef enum swa_status
    {
        SWA_OK = 0,
        SWA_ERR_INVALID_ARGUMENT = 1,
        SWA_ERR_DOMAIN = 2,
        SWA_ERR_VALIDATION = 3,
        SWA_ERR_IO = 4,
        SWA_ERR_SINGULAR = 5,
        SWA_ERR_RUNTIME = 6
    } swa_status;

    typedef enum swa_criterion
    {
        SWA_CRITERION_CONFIG = 0, /* use the config file */
        SWA_CRITERION_A = 1,
        SWA_CRITERION_D = 2
    } swa_criterion;

    /* Reception model of an array, opaque */
    typedef struct swa_model swa_model;

    typedef struct swa_run_options
    {
        unsigned parallel;      /* concurrent evaluations, 0 means 1 */
        int has_seed;           /* nonzero overrides the configured seed */
        uint64_t seed;
        swa_criterion criterion;
        const char *output_dir; /* NULL or "" keeps the configured directory */
    } swa_run_options;

    SWA_API const char *swa_version(void);
    SWA_API const char *swa_last_error(void);
    SWA_API const char *swa_status_name(swa_status status);

    /* Summary text of the last successful swa_run_* call on this thread */
    SWA_API const char *swa_last_summary(void);

    SWA_API swa_status swa_mode_index(int s, int m, int n, int *j);
    SWA_API swa_status swa_mode_triple(int j, int *s, int *m, int *n);
    SWA_API swa_status swa_mode_count(int N, int *J);

    /* Builds the reception model of the array in a config file */
    SWA_API swa_status swa_model_from_config(const char *config_path, unsigned parallel, swa_model **out);

    /* Builds a reception model from a field file; omega0 and delta_omega in rad/s */
    SWA_API swa_status swa_model_from_fields(const char *fields_path, int N, double omega0, double delta_omega, int P,
                                             swa_model **out);

    SWA_API void swa_model_free(swa_model *model);

    SWA_API swa_status swa_model_dims(const swa_model *model, int *L, int *P, int *N);

    /* Row-major (L P) x J reception matrix, interleaved re/im, buffer of 2 L P J doubles */
    SWA_API swa_status swa_model_reception(const swa_model *model, double *re_im, size_t count);

    /* Full-parameter FIM under white noise; params = [tau, theta0, phi0, P_theta, P_phi, phase_theta, phase_phi],
       flat pulse, F is 49 doubles row-major */
    SWA_API swa_status swa_fim(const swa_model *model, const double params[7], double sigma2, double F[49]);

    /* Linear-polarization CRLBs [tau, theta0, phi0, alpha] at eta = [tau, theta0, phi0, alpha], flat pulse */
    SWA_API swa_status swa_crlb_linear(const swa_model *model, const double eta[4], double sigma2, double crlb[4]);

    /* Normalized beam pattern at a probe direction for the linear-polarization parameters eta */
    SWA_API swa_status swa_beam_pattern(const swa_model *model, const double eta[4], double theta_probe, double phi_probe,
                                        double *value);

    /* The swa_run_* calls accept NULL options for the defaults */
    SWA_API swa_status swa_run_extract(const char *fields_path, int order, const char *out_path);
    SWA_API swa_status swa_run_synthesize(const char *config_path, const char *out_path, int binary_sidecar);
    SWA_API swa_status swa_run_crlb(const char *config_path, const swa_run_options *options);
    SWA_API swa_status swa_run_beampattern(const char *config_path, const swa_run_options *options);
    SWA_API swa_status swa_run_optimize(const char *config_path, const swa_run_options *options);

#ifdef __cplusplus
}
#endif

#endif
