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

#include <doctest.h>

#include <Eigen/QR>

#include "swarray/analysis.hpp"
#include "test_util.hpp"

using namespace swarray;
using test_util::rel;

namespace
{
    constexpr double deg = pi / 180.0;

    // Triplet rotated slightly about z, so cross-polarized waves are received weakly but not at all
    std::vector<ElementSpec> tilted_triplet(double beta)
    {
        return {test_util::dipole(0, 0, DipoleAxis::y, beta), test_util::dipole(70, 0, DipoleAxis::y, beta),
                test_util::dipole(0, 70, DipoleAxis::y, beta)};
    }

    const ReceptionModel &triplet_model()
    {
        static const ReceptionModel m = test_util::model(test_util::dipole_triplet(), 0, 8.0, 25.0, 21);
        return m;
    }

    double median(std::vector<double> v)
    {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    }
} // namespace

TEST_CASE("array manifold is the signal vector without the pulse")
{
    const ReceptionModel &m = triplet_model();
    PulseSpectrum S;
    for (int i = 0; i < m.P; ++i)
        S.samples.push_back(std::polar(0.5 + 0.1 * i, 0.3 * i));
    const SignalParams p = LinearSignalParams{4e-9, 0.8, 1.9, 0.6}.to_full();
    const Eigen::VectorXcd a = array_manifold(p, m);
    const Eigen::VectorXcd w = assemble_signal_vector(p, m, S);
    for (int l = 0; l < m.L; ++l)
        for (int i = 0; i < m.P; ++i)
            CHECK(rel(a[l * m.P + i], w[l * m.P + i] / S.samples[i]) < 1e-13);
    CHECK(a.norm() > 0.0);

    SignalParams q = p;
    q.tau = 33e-9;
    const Eigen::VectorXcd b = array_manifold(q, m);
    for (Eigen::Index r = 0; r < a.size(); ++r)
        CHECK(rel(std::abs(a[r]), std::abs(b[r])) < 1e-13);
}

TEST_CASE("beam pattern: a planar array of identical elements cannot tell up from down")
{
    const ReceptionModel &m = triplet_model();
    for (double alpha : {0.0, 45 * deg, 90 * deg})
    {
        const SignalParams p = LinearSignalParams{0.0, 30 * deg, 60 * deg, alpha}.to_full();
        CHECK(std::abs(beam_pattern(pi - p.theta0, p.phi0, p, m) - 1.0) < 1e-9);
    }
}

TEST_CASE("beam pattern: unity at the true direction, bounded by one, sidelobes below one")
{
    const ReceptionModel m = test_util::model(test_util::raised_triplet(), 0, 8.0, 25.0, 21);
    const SignalParams p = LinearSignalParams{0.0, 30 * deg, 60 * deg, 45 * deg}.to_full();
    CHECK(std::abs(beam_pattern(p.theta0, p.phi0, p, m) - 1.0) < 1e-12);

    std::vector<double> th, ph;
    for (int i = 0; i < 46; ++i)
        th.push_back(i * 4 * deg);
    for (int k = 0; k < 90; ++k)
        ph.push_back(k * 4 * deg);
    const BeamPatternGrid g = beam_pattern_grid(p, m, th, ph, 4);
    REQUIRE(g.values.size() == th.size() * ph.size());
    for (double v : g.values)
    {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    CHECK(std::abs(g.at(1, 2) - beam_pattern(th[1], ph[2], p, m)) < 1e-14);
    MESSAGE("max sidelobe " << g.max_sidelobe << " at theta " << g.sidelobe_theta / deg << ", phi " << g.sidelobe_phi / deg);
    CHECK(g.max_sidelobe > 0.0);
    CHECK(g.max_sidelobe < 1.0);

    const BeamCut el = elevation_cut(p, m, 361);
    const BeamCut az = azimuth_cut(p, m, 361);
    REQUIRE(el.values.size() == 361);
    const auto ie = std::max_element(el.values.begin(), el.values.end()) - el.values.begin();
    const auto ia = std::max_element(az.values.begin(), az.values.end()) - az.values.begin();
    CHECK(std::abs(el.values[ie] - 1.0) < 1e-12);
    CHECK(std::abs(el.angle[ie] - p.theta0) < 1e-12);
    CHECK(std::abs(az.values[ia] - 1.0) < 1e-12);
    CHECK(std::abs(az.angle[ia] - p.phi0) < 1e-12);
    for (size_t i = 0; i < el.values.size(); ++i)
        if (el.angle[i] < 0.0)
            CHECK(std::abs(el.phi[i] - std::fmod(p.phi0 + pi, 2 * pi)) < 1e-12);

    SignalParams z = p;
    z.p_theta = 1.0, z.p_phi = 0.0;
    const ReceptionModel zm = test_util::model({test_util::dipole(0, 0, DipoleAxis::z)}, 0, 8.0, 25.0, 5);
    CHECK_THROWS_AS(beam_pattern(0.0, 0.0, z, zm), DomainError);
    const BeamPatternGrid zg = beam_pattern_grid(z, zm, {0.0, pi / 2}, {0.0, pi});
    CHECK(zg.at(0, 0) == 0.0);
    CHECK(std::abs(zg.at(1, 0) - 1.0) < 1e-12);
    SignalParams top = z;
    top.theta0 = 0.0;
    CHECK_THROWS_AS(beam_pattern_grid(top, zm, {0.0, pi / 2}, {0.0, pi}), DomainError);
}

TEST_CASE("manifold rank: duplicated elements, distinct elements and port recombination")
{
    const RankReport full = manifold_rank_check(triplet_model());
    // Bins span a few percent of bandwidth, so the stacked rows are far from independent
    CHECK(full.full_rank);
    CHECK(full.rank >= 3);
    CHECK(full.rank <= 3 * 21);
    REQUIRE(full.bin_ranks.size() == 21);
    for (int r : full.bin_ranks)
        CHECK(r == 3);

    const ReceptionModel dup = test_util::model({test_util::dipole(0, 0), test_util::dipole(0, 0)}, 0, 8.0, 25.0, 5);
    const RankReport d = manifold_rank_check(dup);
    CHECK_FALSE(d.full_rank);
    for (int r : d.bin_ranks)
        CHECK(r == 1);

    // Unitary mixing of the ports of every bin leaves the rank unchanged
    ReceptionModel mixed = triplet_model();
    const Eigen::MatrixXcd U = Eigen::HouseholderQR<Eigen::MatrixXcd>(Eigen::MatrixXcd::Random(3, 3)).householderQ();
    const int P = mixed.P;
    for (int i = 0; i < P; ++i)
    {
        Eigen::MatrixXcd blk(3, mixed.J);
        for (int l = 0; l < 3; ++l)
            blk.row(l) = triplet_model().R.row(l * P + i);
        blk = U * blk;
        for (int l = 0; l < 3; ++l)
            mixed.R.row(l * P + i) = blk.row(l);
    }
    const RankReport m = manifold_rank_check(mixed);
    CHECK(std::abs(m.rank - full.rank) <= 1);
    CHECK(m.bin_ranks == full.bin_ranks);
    CHECK(rel(m.largest_singular_value, full.largest_singular_value) < 1e-10);
}

TEST_CASE("CRLB map: pointwise composition and the azimuth singularity at the pole")
{
    const ReceptionModel &m = triplet_model();
    const PulseSpectrum S = PulseSpectrum::flat(21);
    const NoiseModel noise = NoiseModel::white(0.01);
    const std::vector<double> alpha = {0.0, 45 * deg}, theta = {20 * deg, 70 * deg, 110 * deg}, phi = {0.0, 60 * deg};
    const std::vector<CrlbMapRow> rows = crlb_map(m, S, noise, alpha, theta, phi, 5e-9, 3);
    REQUIRE(rows.size() == 12);
    size_t r = 0;
    for (double a : alpha)
        for (double t : theta)
            for (double f : phi)
            {
                const CrlbMapRow &row = rows[r++];
                CHECK(row.alpha == a);
                CHECK(row.theta0 == t);
                CHECK(row.phi0 == f);
                const FimResult F = fim_linear({5e-9, t, f, a}, m, S, noise);
                CHECK(rel(row.b_theta0, crlb(F, 1)) < 1e-8);
                CHECK(rel(row.b_phi0, crlb(F, 2)) < 1e-8);
                CHECK_FALSE(row.singular);
            }

    std::vector<double> mid;
    for (int i = 45; i <= 135; i += 5)
        mid.push_back(i * deg);
    const std::vector<CrlbMapRow> body = crlb_map(m, S, noise, {45 * deg}, mid, {30 * deg});
    const std::vector<CrlbMapRow> pole = crlb_map(m, S, noise, {45 * deg}, {0.5 * deg}, {30 * deg});
    std::vector<double> b;
    for (const auto &row : body)
        b.push_back(row.b_phi0);
    const double ratio = pole[0].b_phi0 / median(b);
    MESSAGE("B_phi0 at 0.5 deg / mid-elevation median = " << ratio);
    CHECK(ratio >= 100.0);

    const std::vector<CrlbMapRow> at = crlb_map(m, S, noise, {45 * deg}, {0.0}, {30 * deg});
    CHECK(at[0].singular);
}

TEST_CASE("co-polarized waves give far lower elevation CRLBs than cross-polarized ones")
{
    const ReceptionModel m = test_util::model(tilted_triplet(10 * deg), 0, 8.0, 25.0, 21);
    const PulseSpectrum S = PulseSpectrum::flat(21);
    const NoiseModel noise = NoiseModel::white(0.01);
    std::vector<double> theta;
    for (int i = 10; i <= 170; i += 10)
        theta.push_back(i * deg);
    const std::vector<CrlbMapRow> rows = crlb_map(m, S, noise, {0.0, 90 * deg}, theta, {0.0});
    // In-plane incidence (theta0 = 90 deg) on the planar array cannot tell up from down
    double co = 0.0, cross = 0.0;
    int n = 0;
    for (const auto &row : rows)
    {
        if (row.singular)
        {
            CHECK(std::abs(row.theta0 - pi / 2) < 1e-12);
            continue;
        }
        (row.alpha == 0.0 ? co : cross) += row.b_theta0;
        ++n;
    }
    CHECK(n >= 2 * 16);
    MESSAGE("phi0 = 0 cut: cross / co = " << cross / co);
    CHECK(cross >= 10.0 * co);
}
