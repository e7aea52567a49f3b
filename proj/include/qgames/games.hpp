#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qgames/payoff.hpp"
#include "qgames/protocol.hpp"

namespace qgames {

using ClassicalMatrix = PayoffTable;

/// (C,C)=(3,3) (C,D)=(0,5) (D,C)=(5,0) (D,D)=(1,1); move 0 is cooperate.
ClassicalMatrix prisoners_dilemma();

/// True iff the symmetric 2x2 game satisfies the strict row-player ordering
/// P_DC > P_CC > P_DD > P_CD. Throws on non-2x2 input.
bool is_prisoners_dilemma(const ClassicalMatrix& m);

/// N >= 3 players pick 0/1; payoff 1 to each player whose choice is in the
/// strict minority, 0 otherwise (0 to everyone when balanced).
ClassicalMatrix minority_game(int n_players);

/// Expected payoffs under independent uniform-random moves.
std::vector<double> classical_random_payoff(const ClassicalMatrix& m);

/// Alice's allowed coin moves: leave alone or interchange the two states.
enum class CoinMove { kIdentity, kFlip };

struct PennyFlipMoves {
    Unitary bob_first;
    CoinMove alice;
    Unitary bob_second;
};

/// Probability that the coin shows heads (|0>) after bob_first, alice,
/// bob_second act in order on the heads state.
double play_penny_flip(const PennyFlipMoves& moves);

/// su2(pi/2, pi/2, 0) = (i/sqrt2)[[1,1],[1,-1]], the move that beats any
/// classical mixture under maximal entanglement.
Unitary miracle_move();

/// Per player: the move weakly dominating every alternative against all
/// opponent combinations, lowest index on ties, nullopt if none.
std::vector<std::optional<int>> find_dominant_strategies(const ClassicalMatrix& m);

/// All outcome tuples where each move is a best response to the others.
std::vector<std::vector<int>> find_pure_nash(const ClassicalMatrix& m);

/// Outcomes not Pareto-dominated by any other outcome.
std::vector<std::vector<int>> pareto_optimal_outcomes(const ClassicalMatrix& m);

/// Row-player entry that is its row minimum and column maximum, lowest
/// index pair on ties. Throws unless the game is 2-player zero-sum.
std::optional<std::pair<int, int>> saddle_point(const ClassicalMatrix& m);

/// Small-epsilon evolutionary stability of `candidate` against `rival` in a
/// symmetric 2x2 game: E(A,A) > E(B,A), or equal and E(A,B) > E(B,B).
bool is_ess_2x2(const ClassicalMatrix& m, int candidate, int rival);

}  // namespace qgames
