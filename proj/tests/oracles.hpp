// Test-side oracles, kept independent of the library's implementation
// paths: direct Kronecker products, closed-form outcome probabilities for
// the maximally entangled two-player pipeline, and definition-based game
// analysis enumerators.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <vector>

#include "qgames/operators.hpp"
#include "qgames/payoff.hpp"

namespace oracles {

using qgames::Amplitude;

// Dense Kronecker product of row-major matrices.
inline std::vector<Amplitude> kron(const std::vector<Amplitude>& a, int da,
                                   const std::vector<Amplitude>& b, int db) {
    std::vector<Amplitude> out(static_cast<std::size_t>(da) * db * da * db);
    const int dim = da * db;
    for (int ra = 0; ra < da; ++ra)
        for (int ca = 0; ca < da; ++ca)
            for (int rb = 0; rb < db; ++rb)
                for (int cb = 0; cb < db; ++cb)
                    out[static_cast<std::size_t>(ra * db + rb) * dim + (ca * db + cb)] =
                        a[static_cast<std::size_t>(ra) * da + ca] *
                        b[static_cast<std::size_t>(rb) * db + cb];
    return out;
}

// Outcome probabilities of J†(A x B)J|00> at gamma = pi/2, from expanding
// the pipeline by hand: with c_p = cos(theta_p/2), s_p = sin(theta_p/2),
//   P00 = (ca cb cos(aa+ab) + sa sb sin(ba+bb))^2
//   P01 = (ca sb cos(aa-bb) + sa cb sin(ab-ba))^2
//   P10 = (sa cb cos(ab-ba) + ca sb sin(aa-bb))^2
//   P11 = (ca cb sin(aa+ab) - sa sb cos(ba+bb))^2
inline std::array<double, 4> eisert_max_entangled_probs(const qgames::Su2Params& a,
                                                        const qgames::Su2Params& b) {
    const double ca = std::cos(a.theta / 2), sa = std::sin(a.theta / 2);
    const double cb = std::cos(b.theta / 2), sb = std::sin(b.theta / 2);
    const double p00 = ca * cb * std::cos(a.alpha + b.alpha) +
                       sa * sb * std::sin(a.beta + b.beta);
    const double p01 = ca * sb * std::cos(a.alpha - b.beta) +
                       sa * cb * std::sin(b.alpha - a.beta);
    const double p10 = sa * cb * std::cos(b.alpha - a.beta) +
                       ca * sb * std::sin(a.alpha - b.beta);
    const double p11 = ca * cb * std::sin(a.alpha + b.alpha) -
                       sa * sb * std::cos(a.beta + b.beta);
    return {p00 * p00, p01 * p01, p10 * p10, p11 * p11};
}

// Separable case: outcome probabilities factorize over the players' own
// first columns.
inline std::array<double, 4> separable_probs(const qgames::Unitary& a,
                                             const qgames::Unitary& b) {
    const double a0 = std::norm(a(0, 0)), a1 = std::norm(a(1, 0));
    const double b0 = std::norm(b(0, 0)), b1 = std::norm(b(1, 0));
    return {a0 * b0, a0 * b1, a1 * b0, a1 * b1};
}

// Classical 2x2 mixed-strategy payoffs with given cooperate probabilities.
inline std::vector<double> classical_mixed_payoffs(const qgames::PayoffTable& m,
                                                   double p_coop_a, double p_coop_b) {
    std::vector<double> result(2, 0.0);
    const double pa[2] = {p_coop_a, 1 - p_coop_a};
    const double pb[2] = {p_coop_b, 1 - p_coop_b};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const auto& pay = m.payoffs_at({i, j});
            result[0] += pa[i] * pb[j] * pay[0];
            result[1] += pa[i] * pb[j] * pay[1];
        }
    return result;
}

// Definition-based enumerators for the classical analysis oracle checks.

inline bool improves(const qgames::PayoffTable& m, std::vector<int> outcome,
                     int player) {
    const double base = m.payoffs_at(outcome)[player];
    for (int alt = 0; alt < m.moves_per_player()[player]; ++alt) {
        outcome[player] = alt;
        if (m.payoffs_at(outcome)[player] > base) return true;
    }
    return false;
}

inline std::vector<std::vector<int>> enumerate_nash(const qgames::PayoffTable& m) {
    std::vector<std::vector<int>> result;
    for (int k = 0; k < m.n_outcomes(); ++k) {
        const std::vector<int> outcome = m.outcome_of(k);
        bool stable = true;
        for (int p = 0; p < m.n_players(); ++p)
            if (improves(m, outcome, p)) { stable = false; break; }
        if (stable) result.push_back(outcome);
    }
    return result;
}

inline std::vector<std::vector<int>> enumerate_pareto(const qgames::PayoffTable& m) {
    std::vector<std::vector<int>> result;
    for (int k = 0; k < m.n_outcomes(); ++k) {
        bool dominated = false;
        for (int j = 0; j < m.n_outcomes() && !dominated; ++j) {
            if (j == k) continue;
            bool all_ge = true, any_gt = false;
            for (int p = 0; p < m.n_players(); ++p) {
                const double mine = m.payoffs_at(k)[p];
                const double theirs = m.payoffs_at(j)[p];
                if (theirs < mine) all_ge = false;
                if (theirs > mine) any_gt = true;
            }
            dominated = all_ge && any_gt;
        }
        if (!dominated) result.push_back(m.outcome_of(k));
    }
    return result;
}

inline std::vector<std::optional<int>> enumerate_dominant(const qgames::PayoffTable& m) {
    std::vector<std::optional<int>> result(m.n_players());
    for (int p = 0; p < m.n_players(); ++p) {
        for (int move = 0; move < m.moves_per_player()[p] && !result[p]; ++move) {
            bool ok = true;
            for (int k = 0; k < m.n_outcomes() && ok; ++k) {
                std::vector<int> outcome = m.outcome_of(k);
                std::vector<int> as_move = outcome;
                as_move[p] = move;
                if (m.payoffs_at(as_move)[p] < m.payoffs_at(outcome)[p]) ok = false;
            }
            if (ok) result[p] = move;
        }
    }
    return result;
}

// Seeded random generators for property tests.

inline qgames::Su2Params random_su2_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> theta(0.0, std::acos(-1.0));
    std::uniform_real_distribution<double> angle(-std::acos(-1.0), std::acos(-1.0));
    return {theta(rng), angle(rng), angle(rng)};
}

// Gram-Schmidt orthonormalization of a random complex matrix.
inline qgames::Unitary random_unitary(std::mt19937& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<Amplitude>> cols(dim, std::vector<Amplitude>(dim));
    for (auto& col : cols)
        for (auto& v : col) v = Amplitude(gauss(rng), gauss(rng));
    for (int c = 0; c < dim; ++c) {
        for (int prev = 0; prev < c; ++prev) {
            Amplitude overlap = 0.0;
            for (int r = 0; r < dim; ++r)
                overlap += std::conj(cols[prev][r]) * cols[c][r];
            for (int r = 0; r < dim; ++r) cols[c][r] -= overlap * cols[prev][r];
        }
        double norm = 0.0;
        for (int r = 0; r < dim; ++r) norm += std::norm(cols[c][r]);
        norm = std::sqrt(norm);
        for (int r = 0; r < dim; ++r) cols[c][r] /= norm;
    }
    std::vector<Amplitude> entries(static_cast<std::size_t>(dim) * dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            entries[static_cast<std::size_t>(r) * dim + c] = cols[c][r];
    return qgames::Unitary(dim, std::move(entries));
}

inline std::vector<Amplitude> random_amplitudes(std::mt19937& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Amplitude> amps(n);
    double norm = 0.0;
    for (auto& a : amps) {
        a = Amplitude(gauss(rng), gauss(rng));
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& a : amps) a /= norm;
    return amps;
}

inline qgames::PayoffTable random_matrix(std::mt19937& rng, int max_players = 3,
                                         int max_moves = 3) {
    std::uniform_int_distribution<int> players_dist(2, max_players);
    std::uniform_int_distribution<int> moves_dist(2, max_moves);
    std::uniform_int_distribution<int> payoff_dist(0, 9);
    const int players = players_dist(rng);
    std::vector<int> moves(players);
    int outcomes = 1;
    for (auto& m : moves) {
        m = moves_dist(rng);
        outcomes *= m;
    }
    std::vector<std::vector<double>> table(outcomes, std::vector<double>(players));
    for (auto& row : table)
        for (auto& v : row) v = payoff_dist(rng);
    return qgames::PayoffTable(std::move(moves), std::move(table));
}

}  // namespace oracles
