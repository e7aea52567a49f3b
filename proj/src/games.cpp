#include "qgames/games.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgames {

namespace {

// Enumerates move tuples for all players except `skip`, calling fn with a
// full outcome tuple whose `skip` entry is left at 0.
template <typename Fn>
void for_each_opponent_combo(const ClassicalMatrix& m, int skip, Fn&& fn) {
    const int n = m.n_players();
    std::vector<int> outcome(n, 0);
    while (true) {
        fn(outcome);
        int p = n - 1;
        while (p >= 0) {
            if (p == skip) { --p; continue; }
            if (++outcome[p] < m.moves_per_player()[p]) break;
            outcome[p--] = 0;
        }
        if (p < 0) break;
    }
}

void require_symmetric_2x2(const ClassicalMatrix& m, const char* what) {
    if (m.n_players() != 2 || m.moves_per_player() != std::vector<int>{2, 2})
        throw std::invalid_argument(std::string(what) + ": need a 2x2 game");
}

bool symmetric_2x2(const ClassicalMatrix& m) {
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if (m.payoffs_at({a, b})[0] != m.payoffs_at({b, a})[1]) return false;
    return true;
}

}  // namespace

ClassicalMatrix prisoners_dilemma() {
    return ClassicalMatrix({2, 2}, {{3, 3}, {0, 5}, {5, 0}, {1, 1}});
}

bool is_prisoners_dilemma(const ClassicalMatrix& m) {
    require_symmetric_2x2(m, "is_prisoners_dilemma");
    if (!symmetric_2x2(m)) return false;
    const double cc = m.payoffs_at({0, 0})[0];
    const double cd = m.payoffs_at({0, 1})[0];
    const double dc = m.payoffs_at({1, 0})[0];
    const double dd = m.payoffs_at({1, 1})[0];
    return dc > cc && cc > dd && dd > cd;
}

ClassicalMatrix minority_game(int n_players) {
    if (n_players < 3)
        throw std::invalid_argument("minority_game: need at least 3 players");
    const int outcomes = 1 << n_players;
    std::vector<std::vector<double>> table(outcomes, std::vector<double>(n_players, 0.0));
    for (int k = 0; k < outcomes; ++k) {
        int ones = 0;
        for (int p = 0; p < n_players; ++p) ones += (k >> (n_players - 1 - p)) & 1;
        const int zeros = n_players - ones;
        if (ones == zeros) continue;
        const int minority = ones < zeros ? 1 : 0;
        for (int p = 0; p < n_players; ++p)
            if (((k >> (n_players - 1 - p)) & 1) == minority) table[k][p] = 1.0;
    }
    return ClassicalMatrix(std::vector<int>(n_players, 2), std::move(table));
}

std::vector<double> classical_random_payoff(const ClassicalMatrix& m) {
    std::vector<double> result(m.n_players(), 0.0);
    for (int k = 0; k < m.n_outcomes(); ++k) {
        const auto& row = m.payoffs_at(k);
        for (int p = 0; p < m.n_players(); ++p) result[p] += row[p];
    }
    for (double& v : result) v /= m.n_outcomes();
    return result;
}

double play_penny_flip(const PennyFlipMoves& moves) {
    const Unitary alice = moves.alice == CoinMove::kFlip ? flip() : identity(2);
    StateVector coin = StateVector::basis({2}, 0);  // heads
    coin = apply_local(coin, 0, moves.bob_first);
    coin = apply_local(coin, 0, alice);
    coin = apply_local(coin, 0, moves.bob_second);
    return outcome_probabilities(coin)[0];
}

Unitary miracle_move() {
    return su2({std::numbers::pi / 2.0, std::numbers::pi / 2.0, 0.0});
}

std::vector<std::optional<int>> find_dominant_strategies(const ClassicalMatrix& m) {
    std::vector<std::optional<int>> result(m.n_players());
    for (int p = 0; p < m.n_players(); ++p) {
        for (int move = 0; move < m.moves_per_player()[p]; ++move) {
            bool dominant = true;
            for_each_opponent_combo(m, p, [&](std::vector<int> outcome) {
                if (!dominant) return;
                outcome[p] = move;
                const double own = m.payoffs_at(outcome)[p];
                for (int alt = 0; alt < m.moves_per_player()[p]; ++alt) {
                    outcome[p] = alt;
                    if (m.payoffs_at(outcome)[p] > own) { dominant = false; return; }
                }
            });
            if (dominant) { result[p] = move; break; }  // lowest index on ties
        }
    }
    return result;
}

std::vector<std::vector<int>> find_pure_nash(const ClassicalMatrix& m) {
    std::vector<std::vector<int>> result;
    for (int k = 0; k < m.n_outcomes(); ++k) {
        std::vector<int> outcome = m.outcome_of(k);
        bool nash = true;
        for (int p = 0; p < m.n_players() && nash; ++p) {
            const double own = m.payoffs_at(outcome)[p];
            std::vector<int> deviated = outcome;
            for (int alt = 0; alt < m.moves_per_player()[p]; ++alt) {
                deviated[p] = alt;
                if (m.payoffs_at(deviated)[p] > own) { nash = false; break; }
            }
        }
        if (nash) result.push_back(std::move(outcome));
    }
    return result;
}

std::vector<std::vector<int>> pareto_optimal_outcomes(const ClassicalMatrix& m) {
    std::vector<std::vector<int>> result;
    for (int k = 0; k < m.n_outcomes(); ++k) {
        const auto& own = m.payoffs_at(k);
        bool dominated = false;
        for (int j = 0; j < m.n_outcomes() && !dominated; ++j) {
            if (j == k) continue;
            const auto& other = m.payoffs_at(j);
            bool some_better = false, none_worse = true;
            for (int p = 0; p < m.n_players(); ++p) {
                if (other[p] > own[p]) some_better = true;
                if (other[p] < own[p]) { none_worse = false; break; }
            }
            dominated = some_better && none_worse;
        }
        if (!dominated) result.push_back(m.outcome_of(k));
    }
    return result;
}

std::optional<std::pair<int, int>> saddle_point(const ClassicalMatrix& m) {
    if (m.n_players() != 2)
        throw std::invalid_argument("saddle_point: need a 2-player game");
    if (!m.is_zero_sum())
        throw std::invalid_argument("saddle_point: game is not zero-sum");
    const int rows = m.moves_per_player()[0];
    const int cols = m.moves_per_player()[1];
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const double v = m.payoffs_at({r, c})[0];
            bool row_min = true, col_max = true;
            for (int c2 = 0; c2 < cols && row_min; ++c2)
                if (m.payoffs_at({r, c2})[0] < v) row_min = false;
            for (int r2 = 0; r2 < rows && col_max; ++r2)
                if (m.payoffs_at({r2, c})[0] > v) col_max = false;
            if (row_min && col_max) return std::make_pair(r, c);
        }
    }
    return std::nullopt;
}

bool is_ess_2x2(const ClassicalMatrix& m, int candidate, int rival) {
    require_symmetric_2x2(m, "is_ess_2x2");
    if (!symmetric_2x2(m))
        throw std::invalid_argument("is_ess_2x2: game is not symmetric");
    if (candidate == rival)
        throw std::invalid_argument("is_ess_2x2: candidate and rival must differ");
    const auto e = [&](int mine, int theirs) { return m.payoffs_at({mine, theirs})[0]; };
    if (e(candidate, candidate) > e(rival, candidate)) return true;
    if (e(candidate, candidate) == e(rival, candidate) &&
        e(candidate, rival) > e(rival, rival))
        return true;
    return false;
}

}  // namespace qgames
