#include "qgames/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qgames {

namespace {

long long product_of(const std::vector<int>& dims) {
    long long p = 1;
    for (int d : dims) {
        if (d < 2) throw std::invalid_argument("StateVector: every site dimension must be >= 2");
        p *= d;
        if (p > (1 << 24)) throw std::invalid_argument("StateVector: register too large");
    }
    return p;
}

double squared_norm(const std::vector<Amplitude>& amps) {
    double n = 0.0;
    for (const auto& a : amps) n += std::norm(a);
    return n;
}

}  // namespace

StateVector::StateVector(std::vector<int> dims, std::vector<Amplitude> amps)
    : dims_(std::move(dims)), amps_(std::move(amps)) {
    if (dims_.empty())
        throw std::invalid_argument("StateVector: need at least one site");
    const long long expected = product_of(dims_);
    if (static_cast<long long>(amps_.size()) != expected)
        throw std::invalid_argument("StateVector: expected " + std::to_string(expected) +
                                    " amplitudes, got " + std::to_string(amps_.size()));
    for (const auto& a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::invalid_argument("StateVector: non-finite amplitude");
    }
    if (std::abs(squared_norm(amps_) - 1.0) > kEpsProb)
        throw std::invalid_argument("StateVector: state is not normalized");
}

StateVector StateVector::basis(std::vector<int> dims, int index) {
    const long long total = product_of(dims);
    if (index < 0 || index >= total)
        throw std::invalid_argument("StateVector::basis: index out of range");
    std::vector<Amplitude> amps(total, 0.0);
    amps[index] = 1.0;
    return StateVector(std::move(dims), std::move(amps));
}

StateVector tensor(const std::vector<StateVector>& states) {
    if (states.empty())
        throw std::invalid_argument("tensor: need at least one state");
    std::vector<int> dims;
    std::vector<Amplitude> acc{1.0};
    for (const auto& s : states) {
        dims.insert(dims.end(), s.dims().begin(), s.dims().end());
        std::vector<Amplitude> next(acc.size() * s.amps().size());
        for (std::size_t i = 0; i < acc.size(); ++i)
            for (std::size_t j = 0; j < s.amps().size(); ++j)
                next[i * s.amps().size() + j] = acc[i] * s.amps()[j];
        acc = std::move(next);
    }
    return StateVector(std::move(dims), std::move(acc));
}

StateVector apply_local(const StateVector& state, int site, const Unitary& u) {
    if (site < 0 || site >= state.n_sites())
        throw std::invalid_argument("apply_local: site out of range");
    const int d = state.dims()[site];
    if (u.dim() != d)
        throw std::invalid_argument("apply_local: operator dimension " +
                                    std::to_string(u.dim()) + " does not match site dimension " +
                                    std::to_string(d));
    long long right = 1;
    for (int k = site + 1; k < state.n_sites(); ++k) right *= state.dims()[k];
    const long long left = state.total_dim() / (right * d);

    std::vector<Amplitude> out(state.total_dim());
    std::vector<Amplitude> in_col(d);
    for (long long l = 0; l < left; ++l) {
        for (long long r = 0; r < right; ++r) {
            const long long base = l * d * right + r;
            for (int j = 0; j < d; ++j) in_col[j] = state.amp(base + j * right);
            for (int i = 0; i < d; ++i) {
                Amplitude sum = 0.0;
                for (int j = 0; j < d; ++j) sum += u(i, j) * in_col[j];
                out[base + i * right] = sum;
            }
        }
    }
    return StateVector(state.dims(), std::move(out));
}

StateVector apply_global(const StateVector& state, const Unitary& u) {
    if (u.dim() != state.total_dim())
        throw std::invalid_argument("apply_global: operator dimension " +
                                    std::to_string(u.dim()) + " does not match state dimension " +
                                    std::to_string(state.total_dim()));
    const int n = state.total_dim();
    std::vector<Amplitude> out(n, 0.0);
    for (int r = 0; r < n; ++r) {
        Amplitude sum = 0.0;
        for (int c = 0; c < n; ++c) sum += u(r, c) * state.amp(c);
        out[r] = sum;
    }
    return StateVector(state.dims(), std::move(out));
}

std::vector<double> outcome_probabilities(const StateVector& state) {
    std::vector<double> probs(state.total_dim());
    for (int k = 0; k < state.total_dim(); ++k) probs[k] = std::norm(state.amp(k));
    return probs;
}

double fidelity_up_to_phase(const StateVector& a, const StateVector& b) {
    if (a.dims() != b.dims())
        throw std::invalid_argument("fidelity_up_to_phase: dimension mismatch");
    Amplitude overlap = 0.0;
    for (int k = 0; k < a.total_dim(); ++k)
        overlap += std::conj(a.amp(k)) * b.amp(k);
    return std::norm(overlap);
}

WeightedEnsemble::WeightedEnsemble(std::vector<Member> members)
    : members_(std::move(members)) {
    if (members_.empty())
        throw std::invalid_argument("WeightedEnsemble: need at least one member");
    double total = 0.0;
    for (const auto& m : members_) {
        if (!(m.probability >= 0.0 && m.probability <= 1.0))
            throw std::invalid_argument("WeightedEnsemble: probability out of [0,1]");
        if (m.state.dims() != members_.front().state.dims())
            throw std::invalid_argument("WeightedEnsemble: members must share dimensions");
        total += m.probability;
    }
    if (std::abs(total - 1.0) > kEpsProb)
        throw std::invalid_argument("WeightedEnsemble: probabilities must sum to 1");
}

WeightedEnsemble::WeightedEnsemble(StateVector state)
    : WeightedEnsemble(std::vector<Member>{{1.0, std::move(state)}}) {}

WeightedEnsemble apply_bitflip_noise(const WeightedEnsemble& ensemble,
                                     int site, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("apply_bitflip_noise: p out of [0,1]");
    const Unitary x = flip();
    std::vector<WeightedEnsemble::Member> out;
    out.reserve(ensemble.members().size() * 2);
    for (const auto& m : ensemble.members()) {
        if (p < 1.0) out.push_back({m.probability * (1.0 - p), m.state});
        if (p > 0.0) out.push_back({m.probability * p, apply_local(m.state, site, x)});
    }
    return WeightedEnsemble(std::move(out));
}

}  // namespace qgames
