#pragma once

#include <optional>
#include <vector>

#include "qgames/payoff.hpp"
#include "qgames/state.hpp"

namespace qgames {

enum class GameVariant {
    kEisertFull,       // entangle, local moves, disentangle, measure
    kMarinattoWeber,   // chosen initial state, local moves, measure
};

/// A playable quantum game: payoff tensor plus protocol data.
class GameSpec {
  public:
    /// Eisert pipeline on |0...0> with entanglement gamma in [0, pi/2].
    /// Every player must have exactly two moves (one qubit each).
    static GameSpec eisert(PayoffTable payoffs, double gamma);

    /// Marinatto-Weber pipeline from an arbitrary normalized initial state
    /// whose site dimensions match the players' move counts.
    static GameSpec marinatto_weber(PayoffTable payoffs, StateVector initial);

    GameVariant variant() const { return variant_; }
    const PayoffTable& payoffs() const { return payoffs_; }
    int n_players() const { return payoffs_.n_players(); }
    double gamma() const { return gamma_; }
    const StateVector& initial_state() const;

    /// Copy with a different entanglement parameter (Eisert only).
    GameSpec with_gamma(double gamma) const;

  private:
    GameSpec(GameVariant variant, PayoffTable payoffs, double gamma,
             std::optional<StateVector> initial);

    GameVariant variant_;
    PayoffTable payoffs_;
    double gamma_;
    std::optional<StateVector> initial_;
};

/// Pure (one unitary) or mixed (probability-weighted unitaries) strategy.
class Strategy {
  public:
    struct Component {
        double probability;
        Unitary op;
    };

    static Strategy pure(Unitary op);

    /// Probabilities must lie in [0,1] and sum to 1 within 1e-12.
    static Strategy mixed(std::vector<Component> components);

    bool is_pure() const { return components_.size() == 1; }
    const std::vector<Component>& components() const { return components_; }

  private:
    explicit Strategy(std::vector<Component> components);
    std::vector<Component> components_;
};

using StrategyProfile = std::vector<Strategy>;

/// Final state J†(M1 x ... x MN) J |0...0> of the Eisert pipeline.
StateVector run_eisert(const GameSpec& spec, const std::vector<Unitary>& moves);

/// Final state (M1 x ... x MN)|psi_init> of the Marinatto-Weber pipeline.
StateVector run_marinatto_weber(const GameSpec& spec,
                                const std::vector<Unitary>& moves);

/// Dispatches on the game's variant.
StateVector run_moves(const GameSpec& spec, const std::vector<Unitary>& moves);

/// One gate in an arbitrary pipeline: local when site is set, else global.
struct SequenceStep {
    std::optional<int> site;
    Unitary op;
};

/// Left-to-right application of the listed gates.
StateVector run_sequence(const StateVector& initial,
                         const std::vector<SequenceStep>& steps);

/// Per-player expectation sum_outcome P_p(outcome) |<final|outcome>|^2.
std::vector<double> expected_payoffs(const GameSpec& spec,
                                     const StateVector& final_state);

/// Ensemble average of expected_payoffs over the members.
std::vector<double> expected_payoffs(const GameSpec& spec,
                                     const WeightedEnsemble& ensemble);

/// Expectation over the joint product of every player's mixed components;
/// linear in each player's mixing weights.
std::vector<double> mixed_expected_payoffs(const GameSpec& spec,
                                           const StrategyProfile& profile);

}  // namespace qgames
