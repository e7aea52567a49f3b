#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qgames/state.hpp"

using namespace qgames;

namespace {
const double kR2 = 1.0 / std::sqrt(2.0);
StateVector plus_state() { return StateVector({2}, {kR2, kR2}); }
}  // namespace

TEST_CASE("state construction enforces invariants") {
    CHECK_THROWS_AS(StateVector({2}, {1.0, 1.0}), std::invalid_argument);       // not normalized
    CHECK_THROWS_AS(StateVector({2}, {1.0, 0.0, 0.0}), std::invalid_argument);  // wrong length
    CHECK_THROWS_AS(StateVector({2}, {Amplitude(NAN, 0), 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector({1}, {1.0}), std::invalid_argument);            // site dim < 2
    const StateVector psi = StateVector::basis({2, 3}, 4);
    CHECK(psi.total_dim() == 6);
    CHECK(psi.amp(4) == Amplitude(1.0, 0.0));
}

TEST_CASE("tensor builds joint states") {
    const StateVector zero = StateVector::basis({2}, 0);
    const StateVector one = StateVector::basis({2}, 1);

    const StateVector zz = tensor({zero, zero});
    CHECK(zz.dims() == std::vector<int>{2, 2});
    CHECK(zz.amp(0).real() == doctest::Approx(1.0));
    CHECK(std::norm(zz.amp(1)) + std::norm(zz.amp(2)) + std::norm(zz.amp(3)) ==
          doctest::Approx(0.0));

    const StateVector plus_zero = tensor({plus_state(), zero});
    CHECK(plus_zero.amp(0).real() == doctest::Approx(kR2));
    CHECK(plus_zero.amp(2).real() == doctest::Approx(kR2));
    CHECK(std::abs(plus_zero.amp(1)) == doctest::Approx(0.0));

    const StateVector ones = tensor({one, one, one});
    CHECK(ones.dims() == std::vector<int>{2, 2, 2});
    CHECK(std::abs(ones.amp(7)) == doctest::Approx(1.0));

    CHECK_THROWS_AS(tensor({}), std::invalid_argument);
}

TEST_CASE("apply_local applies single-site gates") {
    const StateVector zz = StateVector::basis({2, 2}, 0);

    // bit flip on site 0 of |00> gives i|10>
    const StateVector flipped = apply_local(zz, 0, flip());
    CHECK(flipped.amp(2).real() == doctest::Approx(0.0));
    CHECK(flipped.amp(2).imag() == doctest::Approx(1.0));
    CHECK(std::norm(flipped.amp(0)) == doctest::Approx(0.0));

    // Hadamard gives the equal superposition
    const StateVector h0 = apply_local(StateVector::basis({2}, 0), 0, hadamard());
    CHECK(h0.amp(0).real() == doctest::Approx(kR2));
    CHECK(h0.amp(1).real() == doctest::Approx(kR2));

    // identity case
    const StateVector same = apply_local(zz, 1, identity(2));
    CHECK(fidelity_up_to_phase(same, zz) == doctest::Approx(1.0));

    CHECK_THROWS_AS(apply_local(zz, 0, identity(3)), std::invalid_argument);
    CHECK_THROWS_AS(apply_local(zz, 2, identity(2)), std::invalid_argument);
    CHECK_THROWS_AS(apply_local(zz, -1, identity(2)), std::invalid_argument);
}

TEST_CASE("apply_global runs whole-register operators") {
    const StateVector zz = StateVector::basis({2, 2}, 0);
    const Unitary j = entangler(2, std::numbers::pi / 2);

    const StateVector chi = apply_global(zz, j);
    CHECK(chi.amp(0).real() == doctest::Approx(kR2));
    CHECK(chi.amp(3).imag() == doctest::Approx(kR2));
    CHECK(std::norm(chi.amp(1)) + std::norm(chi.amp(2)) == doctest::Approx(0.0));

    CHECK(fidelity_up_to_phase(apply_global(zz, identity(4)), zz) == doctest::Approx(1.0));

    const StateVector round_trip = apply_global(chi, j.adjoint());
    CHECK(fidelity_up_to_phase(round_trip, zz) == doctest::Approx(1.0));
    CHECK(round_trip.amp(0).real() == doctest::Approx(1.0));

    CHECK_THROWS_AS(apply_global(zz, identity(8)), std::invalid_argument);
}

TEST_CASE("outcome probabilities") {
    CHECK(outcome_probabilities(StateVector::basis({2, 2}, 0)) ==
          std::vector<double>{1, 0, 0, 0});

    const StateVector chi = StateVector({2, 2}, {kR2, 0, 0, Amplitude(0, kR2)});
    const auto probs = outcome_probabilities(chi);
    CHECK(probs[0] == doctest::Approx(0.5));
    CHECK(probs[3] == doctest::Approx(0.5));

    const auto h = outcome_probabilities(apply_local(StateVector::basis({2}, 0), 0, hadamard()));
    CHECK(h[0] == doctest::Approx(0.5));
    CHECK(h[1] == doctest::Approx(0.5));
}

TEST_CASE("fidelity is phase blind") {
    std::mt19937 rng(7);
    const StateVector psi({2, 2}, oracles::random_amplitudes(rng, 4));
    CHECK(fidelity_up_to_phase(psi, psi) == doctest::Approx(1.0));

    // multiply by a pure phase
    std::vector<Amplitude> rotated = psi.amps();
    for (auto& a : rotated) a *= std::polar(1.0, 1.2345);
    CHECK(fidelity_up_to_phase(psi, StateVector({2, 2}, rotated)) == doctest::Approx(1.0));

    CHECK(fidelity_up_to_phase(StateVector::basis({2}, 0), StateVector::basis({2}, 1)) ==
          doctest::Approx(0.0));
    CHECK_THROWS_AS(fidelity_up_to_phase(StateVector::basis({2}, 0),
                                         StateVector::basis({2, 2}, 0)),
                    std::invalid_argument);
}

TEST_CASE("fidelity symmetry and phase invariance hold for random pairs") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const StateVector a({2, 2}, oracles::random_amplitudes(rng, 4));
        const StateVector b({2, 2}, oracles::random_amplitudes(rng, 4));
        const double f = fidelity_up_to_phase(a, b);
        CHECK(f == doctest::Approx(fidelity_up_to_phase(b, a)));
        std::vector<Amplitude> rotated = b.amps();
        for (auto& v : rotated) v *= std::polar(1.0, 0.1 + trial);
        CHECK(f == doctest::Approx(fidelity_up_to_phase(a, StateVector({2, 2}, rotated))));
        CHECK(f >= 0.0);
        CHECK(f <= 1.0 + 1e-12);
    }
}

TEST_CASE("bit-flip noise splits ensembles as advertised") {
    const WeightedEnsemble pure{StateVector::basis({2}, 0)};

    const WeightedEnsemble untouched = apply_bitflip_noise(pure, 0, 0.0);
    CHECK(untouched.members().size() == 1);
    CHECK(untouched.members()[0].probability == doctest::Approx(1.0));
    CHECK(fidelity_up_to_phase(untouched.members()[0].state,
                               StateVector::basis({2}, 0)) == doctest::Approx(1.0));

    const WeightedEnsemble certain = apply_bitflip_noise(pure, 0, 1.0);
    CHECK(certain.members().size() == 1);
    CHECK(fidelity_up_to_phase(certain.members()[0].state,
                               StateVector::basis({2}, 1)) == doctest::Approx(1.0));

    // two control-bit branches enumerated by hand: (0.5, |00>), (0.5, |10>)
    const WeightedEnsemble two_qubit{StateVector::basis({2, 2}, 0)};
    const WeightedEnsemble half = apply_bitflip_noise(two_qubit, 0, 0.5);
    REQUIRE(half.members().size() == 2);
    CHECK(half.members()[0].probability == doctest::Approx(0.5));
    CHECK(half.members()[1].probability == doctest::Approx(0.5));
    CHECK(fidelity_up_to_phase(half.members()[0].state,
                               StateVector::basis({2, 2}, 0)) == doctest::Approx(1.0));
    CHECK(fidelity_up_to_phase(half.members()[1].state,
                               StateVector::basis({2, 2}, 2)) == doctest::Approx(1.0));

    CHECK_THROWS_AS(apply_bitflip_noise(pure, 0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(apply_bitflip_noise(pure, 0, 1.1), std::invalid_argument);
}

TEST_CASE("noise conserves ensemble weight") {
    std::mt19937 rng(3);
    WeightedEnsemble ens{StateVector({2, 2}, oracles::random_amplitudes(rng, 4))};
    for (double p : {0.3, 0.5, 0.125, 0.9}) {
        ens = apply_bitflip_noise(ens, 1, p);
        double total = 0.0;
        for (const auto& m : ens.members()) total += m.probability;
        CHECK(std::abs(total - 1.0) <= kEpsWeight);
    }
}

TEST_CASE("norm is preserved by random unitaries") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const std::vector<int> dims = trial % 3 == 0 ? std::vector<int>{2, 3}
                                    : trial % 3 == 1 ? std::vector<int>{2, 2, 2}
                                                     : std::vector<int>{4};
        int total = 1;
        for (int d : dims) total *= d;
        const StateVector psi(dims, oracles::random_amplitudes(rng, total));

        const int site = static_cast<int>(rng() % dims.size());
        const StateVector local = apply_local(psi, site, oracles::random_unitary(rng, dims[site]));
        double norm = 0.0;
        for (const auto& a : local.amps()) norm += std::norm(a);
        CHECK(std::abs(norm - 1.0) <= 1e-9);

        const StateVector global = apply_global(psi, oracles::random_unitary(rng, total));
        norm = 0.0;
        for (const auto& a : global.amps()) norm += std::norm(a);
        CHECK(std::abs(norm - 1.0) <= 1e-9);

        double prob_sum = 0.0;
        for (double p : outcome_probabilities(global)) prob_sum += p;
        CHECK(std::abs(prob_sum - 1.0) <= 1e-9);
    }
}

TEST_CASE("apply_local agrees with the Kronecker-operator oracle") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const std::vector<int> dims = trial % 2 == 0 ? std::vector<int>{2, 2, 2}
                                                     : std::vector<int>{2, 3, 2};
        int total = 1;
        for (int d : dims) total *= d;
        const StateVector psi(dims, oracles::random_amplitudes(rng, total));
        const int site = static_cast<int>(rng() % dims.size());
        const Unitary u = oracles::random_unitary(rng, dims[site]);

        // library path
        const StateVector fast = apply_local(psi, site, u);

        // oracle path: I x ... x u x ... x I, assembled once, applied globally
        std::vector<Amplitude> big{1.0};
        int big_dim = 1;
        for (int s = 0; s < static_cast<int>(dims.size()); ++s) {
            const std::vector<Amplitude> factor =
                s == site ? u.entries() : identity(dims[s]).entries();
            big = oracles::kron(big, big_dim, factor, dims[s]);
            big_dim *= dims[s];
        }
        const StateVector slow = apply_global(psi, Unitary(big_dim, big));

        for (int k = 0; k < total; ++k)
            CHECK(std::abs(fast.amp(k) - slow.amp(k)) <= 1e-9);
    }
}
