#include "qgames/payoff.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qgames {

PayoffTable::PayoffTable(std::vector<int> moves_per_player,
                         std::vector<std::vector<double>> table)
    : moves_(std::move(moves_per_player)), table_(std::move(table)) {
    if (moves_.empty())
        throw std::invalid_argument("PayoffTable: need at least one player");
    long long outcomes = 1;
    for (int m : moves_) {
        if (m < 2) throw std::invalid_argument("PayoffTable: every player needs >= 2 moves");
        outcomes *= m;
        if (outcomes > (1 << 20))
            throw std::invalid_argument("PayoffTable: outcome space too large");
    }
    if (static_cast<long long>(table_.size()) != outcomes)
        throw std::invalid_argument("PayoffTable: expected " + std::to_string(outcomes) +
                                    " outcome rows, got " + std::to_string(table_.size()));
    for (const auto& row : table_) {
        if (row.size() != moves_.size())
            throw std::invalid_argument("PayoffTable: every outcome needs one payoff per player");
        for (double v : row)
            if (!std::isfinite(v))
                throw std::invalid_argument("PayoffTable: non-finite payoff");
    }
}

int PayoffTable::flat_index(const std::vector<int>& outcome) const {
    if (outcome.size() != moves_.size())
        throw std::invalid_argument("PayoffTable: outcome tuple has wrong length");
    int flat = 0;
    for (std::size_t p = 0; p < moves_.size(); ++p) {
        if (outcome[p] < 0 || outcome[p] >= moves_[p])
            throw std::invalid_argument("PayoffTable: move out of range in outcome tuple");
        flat = flat * moves_[p] + outcome[p];
    }
    return flat;
}

std::vector<int> PayoffTable::outcome_of(int flat_index) const {
    if (flat_index < 0 || flat_index >= n_outcomes())
        throw std::invalid_argument("PayoffTable: flat index out of range");
    std::vector<int> outcome(moves_.size());
    for (int p = static_cast<int>(moves_.size()) - 1; p >= 0; --p) {
        outcome[p] = flat_index % moves_[p];
        flat_index /= moves_[p];
    }
    return outcome;
}

bool PayoffTable::is_zero_sum(double tol) const {
    for (const auto& row : table_) {
        double sum = 0.0;
        for (double v : row) sum += v;
        if (std::abs(sum) > tol) return false;
    }
    return true;
}

}  // namespace qgames
