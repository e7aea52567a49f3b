#pragma once

#include <complex>
#include <vector>

namespace qgames {

using Amplitude = std::complex<double>;

/// Tolerance for the unitarity check max|U†U - I| < kEpsUnitary.
inline constexpr double kEpsUnitary = 1e-9;

/// Returns true iff the dim x dim row-major matrix satisfies
/// max entry of |U†U - I| < tol. Entries must be finite.
bool validate_unitary(int dim, const std::vector<Amplitude>& entries,
                      double tol = kEpsUnitary);

/// Square complex matrix with U†U = I, enforced at construction.
class Unitary {
  public:
    /// Builds from row-major entries; throws std::invalid_argument if the
    /// matrix is not unitary within kEpsUnitary.
    Unitary(int dim, std::vector<Amplitude> entries);

    int dim() const { return dim_; }
    const std::vector<Amplitude>& entries() const { return entries_; }
    const Amplitude& operator()(int row, int col) const {
        return entries_[static_cast<std::size_t>(row) * dim_ + col];
    }

    Unitary adjoint() const;

  private:
    int dim_;
    std::vector<Amplitude> entries_;  // row-major
};

/// Matrix product (left applied after right).
Unitary operator*(const Unitary& a, const Unitary& b);

bool validate_unitary(const Unitary& u, double tol = kEpsUnitary);

/// (theta, alpha, beta) parametrization of a pure 2x2 quantum strategy,
/// theta in [0, pi], alpha and beta in [-pi, pi].
struct Su2Params {
    double theta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// [[e^{ia}cos(t/2), i e^{ib}sin(t/2)], [i e^{-ib}sin(t/2), e^{-ia}cos(t/2)]].
/// Throws if the params are out of range.
Unitary su2(const Su2Params& p);

/// (1/sqrt2)[[1,1],[1,-1]].
Unitary hadamard();

/// Bit flip i*sigma_x = [[0,i],[i,0]].
Unitary flip();

Unitary identity(int dim);

/// Entangling gate J = cos(gamma/2) I^{xN} + i sin(gamma/2) sigma_x^{xN}
/// acting on N qubits; gamma in [0, pi/2], maximal entanglement at pi/2.
/// The closed form is exact because (sigma_x^{xN})^2 = I.
Unitary entangler(int n_players, double gamma);

/// su2(theta, 0, 0): classical mixture between identity and bit flip with
/// stay probability cos^2(theta/2).
Unitary classical_mix(double theta);

/// Maps an angle into [-pi, pi] (modulo 2*pi).
double wrap_angle(double angle);

/// Recovers (theta, alpha, beta) from a 2x2 matrix of the su2() form.
/// Angles that drop out of the matrix (alpha at theta = pi, beta at
/// theta = 0) come back as 0.
Su2Params su2_params_of(const Unitary& u);

}  // namespace qgames
