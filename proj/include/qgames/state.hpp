#pragma once

#include <vector>

#include "qgames/operators.hpp"

namespace qgames {

/// Tolerance for state normalization and probability sums.
inline constexpr double kEpsProb = 1e-9;

/// Tolerance for ensemble weight conservation.
inline constexpr double kEpsWeight = 1e-12;

/// Normalized complex amplitudes over a tensor product of finite-dimensional
/// sites. Basis label |a1 a2 ... aN> maps to the flat index
/// a1*(d2*...*dN) + ... + aN, so site 0 is the most significant digit.
/// Immutable: every operation returns a new state.
class StateVector {
  public:
    /// Throws std::invalid_argument on size mismatch, non-finite entries or
    /// a norm off by more than kEpsProb. States are never renormalized.
    StateVector(std::vector<int> dims, std::vector<Amplitude> amps);

    /// Basis state |index> over the given site dimensions.
    static StateVector basis(std::vector<int> dims, int index);

    const std::vector<int>& dims() const { return dims_; }
    int n_sites() const { return static_cast<int>(dims_.size()); }
    int total_dim() const { return static_cast<int>(amps_.size()); }
    const std::vector<Amplitude>& amps() const { return amps_; }
    const Amplitude& amp(int flat_index) const { return amps_[flat_index]; }

  private:
    std::vector<int> dims_;
    std::vector<Amplitude> amps_;
};

/// Joint state of the inputs, dims concatenated; site 0 of the first state
/// becomes the most significant index. Throws on empty input.
StateVector tensor(const std::vector<StateVector>& states);

/// (I x ... x u x ... x I)|state> with u at the given site.
StateVector apply_local(const StateVector& state, int site, const Unitary& u);

/// u|state> for u acting on the whole register.
StateVector apply_global(const StateVector& state, const Unitary& u);

/// Computational-basis measurement distribution |amp_k|^2.
std::vector<double> outcome_probabilities(const StateVector& state);

/// |<a|b>|^2; equals 1 iff the states agree up to a global phase.
double fidelity_up_to_phase(const StateVector& a, const StateVector& b);

/// Classical mixture of pure states. Probabilities sum to 1 within kEpsProb
/// and all members share the same site dimensions.
class WeightedEnsemble {
  public:
    struct Member {
        double probability;
        StateVector state;
    };

    explicit WeightedEnsemble(std::vector<Member> members);

    /// Single-member ensemble {(1, state)}.
    explicit WeightedEnsemble(StateVector state);

    const std::vector<Member>& members() const { return members_; }

  private:
    std::vector<Member> members_;
};

/// Controlled-not on `site` with a random classical control bit that is 1
/// with probability p: each member (w, psi) splits into (w*(1-p), psi) and
/// (w*p, flip_site psi). Zero-weight branches are dropped.
WeightedEnsemble apply_bitflip_noise(const WeightedEnsemble& ensemble,
                                     int site, double p);

}  // namespace qgames
