#pragma once

#include <vector>

namespace qgames {

/// Dense payoff tensor over classical outcomes. Outcome tuples are indexed
/// row-major with player 0's move as the most significant digit, matching
/// the StateVector basis convention.
class PayoffTable {
  public:
    /// `table[flat_outcome]` holds one payoff per player. Throws if the
    /// table does not cover every outcome tuple or a row has the wrong
    /// length or non-finite values.
    PayoffTable(std::vector<int> moves_per_player,
                std::vector<std::vector<double>> table);

    int n_players() const { return static_cast<int>(moves_.size()); }
    const std::vector<int>& moves_per_player() const { return moves_; }
    int n_outcomes() const { return static_cast<int>(table_.size()); }

    int flat_index(const std::vector<int>& outcome) const;
    std::vector<int> outcome_of(int flat_index) const;

    const std::vector<double>& payoffs_at(int flat_index) const {
        return table_[flat_index];
    }
    const std::vector<double>& payoffs_at(const std::vector<int>& outcome) const {
        return table_[flat_index(outcome)];
    }

    /// True iff payoffs sum to zero at every outcome (within tol).
    bool is_zero_sum(double tol = 1e-9) const;

  private:
    std::vector<int> moves_;
    std::vector<std::vector<double>> table_;
};

}  // namespace qgames
