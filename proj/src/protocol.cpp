#include "qgames/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgames {

namespace {

void check_moves(const GameSpec& spec, const std::vector<Unitary>& moves,
                 const std::vector<int>& dims) {
    if (static_cast<int>(moves.size()) != spec.n_players())
        throw std::invalid_argument("run: need exactly one move per player");
    for (int p = 0; p < spec.n_players(); ++p)
        if (moves[p].dim() != dims[p])
            throw std::invalid_argument("run: move dimension does not match player's move count");
}

}  // namespace

GameSpec::GameSpec(GameVariant variant, PayoffTable payoffs, double gamma,
                   std::optional<StateVector> initial)
    : variant_(variant), payoffs_(std::move(payoffs)), gamma_(gamma),
      initial_(std::move(initial)) {}

GameSpec GameSpec::eisert(PayoffTable payoffs, double gamma) {
    for (int m : payoffs.moves_per_player())
        if (m != 2)
            throw std::invalid_argument(
                "GameSpec::eisert: the entangling pipeline is defined for two-move players only");
    if (payoffs.n_players() < 2)
        throw std::invalid_argument("GameSpec::eisert: need at least two players");
    if (gamma < -1e-12 || gamma > std::numbers::pi / 2.0 + 1e-12)
        throw std::invalid_argument("GameSpec::eisert: gamma out of [0, pi/2]");
    return GameSpec(GameVariant::kEisertFull, std::move(payoffs), gamma, std::nullopt);
}

GameSpec GameSpec::marinatto_weber(PayoffTable payoffs, StateVector initial) {
    if (initial.dims() != payoffs.moves_per_player())
        throw std::invalid_argument(
            "GameSpec::marinatto_weber: initial state dimensions must match the move counts");
    return GameSpec(GameVariant::kMarinattoWeber, std::move(payoffs), 0.0,
                    std::move(initial));
}

const StateVector& GameSpec::initial_state() const {
    if (!initial_)
        throw std::logic_error("GameSpec: no initial state for this variant");
    return *initial_;
}

GameSpec GameSpec::with_gamma(double gamma) const {
    if (variant_ != GameVariant::kEisertFull)
        throw std::logic_error("GameSpec::with_gamma: only meaningful for the Eisert variant");
    return eisert(payoffs_, gamma);
}

Strategy::Strategy(std::vector<Component> components)
    : components_(std::move(components)) {}

Strategy Strategy::pure(Unitary op) {
    return Strategy({{1.0, std::move(op)}});
}

Strategy Strategy::mixed(std::vector<Component> components) {
    if (components.empty())
        throw std::invalid_argument("Strategy::mixed: need at least one component");
    double total = 0.0;
    for (const auto& c : components) {
        if (!(c.probability >= 0.0 && c.probability <= 1.0))
            throw std::invalid_argument("Strategy::mixed: probability out of [0,1]");
        if (c.op.dim() != components.front().op.dim())
            throw std::invalid_argument("Strategy::mixed: components must share dimension");
        total += c.probability;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("Strategy::mixed: probabilities must sum to 1");
    return Strategy(std::move(components));
}

StateVector run_eisert(const GameSpec& spec, const std::vector<Unitary>& moves) {
    if (spec.variant() != GameVariant::kEisertFull)
        throw std::invalid_argument("run_eisert: spec uses a different variant");
    check_moves(spec, moves, spec.payoffs().moves_per_player());
    const int n = spec.n_players();
    const Unitary j = entangler(n, spec.gamma());
    StateVector state = StateVector::basis(spec.payoffs().moves_per_player(), 0);
    state = apply_global(state, j);
    for (int p = 0; p < n; ++p) state = apply_local(state, p, moves[p]);
    return apply_global(state, j.adjoint());
}

StateVector run_marinatto_weber(const GameSpec& spec,
                                const std::vector<Unitary>& moves) {
    if (spec.variant() != GameVariant::kMarinattoWeber)
        throw std::invalid_argument("run_marinatto_weber: spec uses a different variant");
    check_moves(spec, moves, spec.initial_state().dims());
    StateVector state = spec.initial_state();
    for (int p = 0; p < spec.n_players(); ++p)
        state = apply_local(state, p, moves[p]);
    return state;
}

StateVector run_moves(const GameSpec& spec, const std::vector<Unitary>& moves) {
    return spec.variant() == GameVariant::kEisertFull
               ? run_eisert(spec, moves)
               : run_marinatto_weber(spec, moves);
}

StateVector run_sequence(const StateVector& initial,
                         const std::vector<SequenceStep>& steps) {
    StateVector state = initial;
    for (const auto& step : steps) {
        state = step.site ? apply_local(state, *step.site, step.op)
                          : apply_global(state, step.op);
    }
    return state;
}

std::vector<double> expected_payoffs(const GameSpec& spec,
                                     const StateVector& final_state) {
    if (final_state.dims() != spec.payoffs().moves_per_player())
        throw std::invalid_argument("expected_payoffs: state dimensions do not match the game");
    const std::vector<double> probs = outcome_probabilities(final_state);
    std::vector<double> result(spec.n_players(), 0.0);
    for (int k = 0; k < spec.payoffs().n_outcomes(); ++k) {
        const auto& row = spec.payoffs().payoffs_at(k);
        for (int p = 0; p < spec.n_players(); ++p) result[p] += row[p] * probs[k];
    }
    return result;
}

std::vector<double> expected_payoffs(const GameSpec& spec,
                                     const WeightedEnsemble& ensemble) {
    std::vector<double> result(spec.n_players(), 0.0);
    for (const auto& m : ensemble.members()) {
        const std::vector<double> part = expected_payoffs(spec, m.state);
        for (int p = 0; p < spec.n_players(); ++p)
            result[p] += m.probability * part[p];
    }
    return result;
}

std::vector<double> mixed_expected_payoffs(const GameSpec& spec,
                                           const StrategyProfile& profile) {
    if (static_cast<int>(profile.size()) != spec.n_players())
        throw std::invalid_argument("mixed_expected_payoffs: need one strategy per player");
    const int n = spec.n_players();
    std::vector<double> result(n, 0.0);
    std::vector<std::size_t> pick(n, 0);
    // Enumerate the joint product of every player's components.
    while (true) {
        double weight = 1.0;
        std::vector<Unitary> moves;
        moves.reserve(n);
        for (int p = 0; p < n; ++p) {
            const auto& comp = profile[p].components()[pick[p]];
            weight *= comp.probability;
            moves.push_back(comp.op);
        }
        if (weight > 0.0) {
            const std::vector<double> part = expected_payoffs(spec, run_moves(spec, moves));
            for (int p = 0; p < n; ++p) result[p] += weight * part[p];
        }
        int p = n - 1;
        while (p >= 0 && ++pick[p] == profile[p].components().size()) pick[p--] = 0;
        if (p < 0) break;
    }
    return result;
}

}  // namespace qgames
