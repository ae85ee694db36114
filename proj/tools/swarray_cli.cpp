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

// Command-line front end. Links only the C interface of the library.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "swarray/swarray.h"

namespace
{
    // 0 ok, 2 validation or domain, 3 runtime or singular, 4 I/O
    int exit_code(swa_status s)
    {
        switch (s)
        {
        case SWA_OK:
            return 0;
        case SWA_ERR_IO:
            return 4;
        case SWA_ERR_SINGULAR:
        case SWA_ERR_RUNTIME:
            return 3;
        default:
            return 2;
        }
    }

    int report(swa_status s)
    {
        if (s == SWA_OK)
            std::fputs(swa_last_summary(), stdout);
        else
            std::fprintf(stderr, "swarray: %s: %s\n", swa_status_name(s), swa_last_error());
        return exit_code(s);
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Spherical-wave array models: coefficient extraction, Cramer-Rao bounds, beam patterns and placement"};
    app.set_version_flag("--version", std::string(swa_version()));
    app.require_subcommand(1);

    std::string fields, config, out;
    int order = 0;
    bool binary = false;
    unsigned parallel = 1;
    std::uint64_t seed = 0;
    std::string criterion;

    auto *ext = app.add_subcommand("extract", "Extract transmission and reception coefficients from a field file");
    ext->add_option("--fields", fields, "Field file (JSON)")->required();
    ext->add_option("--order", order, "Truncation order N")->required()->check(CLI::Range(1, 60));
    ext->add_option("--out", out, "Output coefficient file (JSON)")->required();

    auto *syn = app.add_subcommand("synthesize", "Write the field file of the array in a config");
    syn->add_option("--config", config, "Run configuration (JSON)")->required();
    syn->add_option("--out", out, "Output field file")->required();
    syn->add_flag("--binary", binary, "Store samples in a little-endian float64 sidecar");

    auto add_common = [&](CLI::App *c)
    {
        c->add_option("--config", config, "Run configuration (JSON)")->required();
        c->add_option("--parallel", parallel, "Concurrent evaluations")->envname("SWARRAY_PARALLEL")->check(CLI::Range(1u, 1024u));
        c->add_option("--out", out, "Output directory, overrides the config");
    };
    auto *crl = app.add_subcommand("crlb", "CRLB maps and average CRLBs");
    add_common(crl);
    auto *bp = app.add_subcommand("beampattern", "Normalized beam pattern grid and cuts");
    add_common(bp);
    auto *opt = app.add_subcommand("optimize", "Differential-evolution placement of the array elements");
    add_common(opt);
    auto *seed_opt = opt->add_option("--seed", seed, "Random seed, overrides the config");
    opt->add_option("--criterion", criterion, "Optimality criterion, overrides the config")->check(CLI::IsMember({"A", "D"}));

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    swa_run_options o{};
    o.parallel = parallel;
    o.has_seed = seed_opt->count() > 0;
    o.seed = seed;
    o.criterion = criterion == "A" ? SWA_CRITERION_A : (criterion == "D" ? SWA_CRITERION_D : SWA_CRITERION_CONFIG);
    o.output_dir = out.empty() ? nullptr : out.c_str();

    if (*ext)
        return report(swa_run_extract(fields.c_str(), order, out.c_str()));
    if (*syn)
        return report(swa_run_synthesize(config.c_str(), out.c_str(), binary ? 1 : 0));
    if (*crl)
        return report(swa_run_crlb(config.c_str(), &o));
    if (*bp)
        return report(swa_run_beampattern(config.c_str(), &o));
    return report(swa_run_optimize(config.c_str(), &o));
}
