#pragma once

#include <vector>

#include "qgames/protocol.hpp"

namespace qgames {

/// Local-refinement stopping tolerance for the strategy-space search.
inline constexpr double kEpsOpt = 1e-6;

/// Equilibrium verification tolerance, deliberately looser than the linear
/// algebra epsilons to absorb optimizer error.
inline constexpr double kNashTolerance = 1e-3;

struct SearchConfig {
    int grid_points_per_axis = 25;   // >= 5
    int refine_iterations = 200;
    double refine_tolerance = kEpsOpt;
    double nash_tolerance = kNashTolerance;
    unsigned seed = 0;
};

struct EquilibriumReport {
    StrategyProfile profile;
    std::vector<double> payoffs;
    std::vector<double> max_unilateral_gain;
    bool is_nash = false;
    double tolerance_used = kNashTolerance;
};

struct BestResponseResult {
    Su2Params params;
    double payoff = 0.0;
    bool converged = true;
};

/// Bob's counter D * su2(theta, -alpha, pi/2 - beta) to an opponent playing
/// su2(theta, alpha, beta): under maximal entanglement it hands the counter
/// player the maximum payoff and the opponent the minimum.
Unitary counter_strategy(const Su2Params& opponent);

/// Grid search over (theta, alpha, beta) — or (theta, alpha) with beta
/// fixed at 0 when restricted — followed by Nelder-Mead refinement, for
/// `player`'s payoff with every other entry of `profile` held fixed.
/// The returned payoff is never below the best grid payoff.
BestResponseResult best_response(const GameSpec& spec, int player,
                                 const StrategyProfile& profile,
                                 const SearchConfig& cfg = {},
                                 bool restrict_beta_zero = false);

/// Runs best_response for every player against the fixed profile; pure
/// deviations suffice because mixed payoffs are linear in the weights.
EquilibriumReport verify_nash(const GameSpec& spec,
                              const StrategyProfile& profile,
                              const SearchConfig& cfg = {});

/// Two-player equal-weight mixed profile
///   Alice: {U(t,a,b), U(t, pi/2+a, pi/2+b)}
///   Bob:   {U(pi-t, pi/2+b, a), U(pi-t, pi+b, pi/2+a)}
/// with angles wrapped into range.
StrategyProfile mixed_ne_family(double theta, double alpha, double beta);

struct GammaPayoffRow {
    double gamma;
    std::vector<double> payoffs;
};

/// Payoffs of a fixed move pair at each entanglement level.
std::vector<GammaPayoffRow> gamma_sweep(const GameSpec& spec_template,
                                        const Unitary& alice,
                                        const Unitary& bob,
                                        const std::vector<double>& gammas);

/// Bisection for the entanglement level where the quantum player's payoff
/// from the miracle move against the opponent's best classical reply equals
/// the payoff from simply defecting. Throws if no crossover exists.
double critical_gamma(const GameSpec& spec, const SearchConfig& cfg = {});

/// Symmetric best-response iteration inside the beta = 0 strategy plane of
/// a 2x2 game; reported gains are against beta = 0 deviations.
EquilibriumReport restricted_ne_search(const GameSpec& spec,
                                       const SearchConfig& cfg = {});

/// Search over one shared (theta, alpha, beta) for all players of the
/// maximally entangled N-player minority game, with full-space NE
/// verification of the best profile found.
EquilibriumReport minority_quantum_search(int n_players,
                                          const SearchConfig& cfg = {});

}  // namespace qgames
