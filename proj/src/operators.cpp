#include "qgames/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qgames {

namespace {

constexpr double kPi = std::numbers::pi;

bool all_finite(const std::vector<Amplitude>& entries) {
    for (const auto& e : entries) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    }
    return true;
}

}  // namespace

bool validate_unitary(int dim, const std::vector<Amplitude>& entries,
                      double tol) {
    if (dim < 1 || entries.size() != static_cast<std::size_t>(dim) * dim)
        return false;
    if (!all_finite(entries)) return false;
    // max entry of |U†U - I|
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            Amplitude sum = 0.0;
            for (int k = 0; k < dim; ++k)
                sum += std::conj(entries[k * dim + r]) * entries[k * dim + c];
            if (r == c) sum -= 1.0;
            if (std::abs(sum) >= tol) return false;
        }
    }
    return true;
}

Unitary::Unitary(int dim, std::vector<Amplitude> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ < 1)
        throw std::invalid_argument("Unitary: dimension must be positive");
    if (entries_.size() != static_cast<std::size_t>(dim_) * dim_)
        throw std::invalid_argument("Unitary: expected " +
                                    std::to_string(dim_ * dim_) + " entries, got " +
                                    std::to_string(entries_.size()));
    if (!validate_unitary(dim_, entries_))
        throw std::invalid_argument("Unitary: matrix is not unitary within tolerance");
}

Unitary Unitary::adjoint() const {
    std::vector<Amplitude> out(entries_.size());
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c)
            out[static_cast<std::size_t>(c) * dim_ + r] = std::conj((*this)(r, c));
    return Unitary(dim_, std::move(out));
}

Unitary operator*(const Unitary& a, const Unitary& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("Unitary product: dimension mismatch");
    const int n = a.dim();
    std::vector<Amplitude> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            const Amplitude ark = a(r, k);
            for (int c = 0; c < n; ++c)
                out[static_cast<std::size_t>(r) * n + c] += ark * b(k, c);
        }
    return Unitary(n, std::move(out));
}

bool validate_unitary(const Unitary& u, double tol) {
    return validate_unitary(u.dim(), u.entries(), tol);
}

Unitary su2(const Su2Params& p) {
    constexpr double slack = 1e-12;
    if (p.theta < -slack || p.theta > kPi + slack)
        throw std::invalid_argument("su2: theta out of [0, pi]");
    if (p.alpha < -kPi - slack || p.alpha > kPi + slack)
        throw std::invalid_argument("su2: alpha out of [-pi, pi]");
    if (p.beta < -kPi - slack || p.beta > kPi + slack)
        throw std::invalid_argument("su2: beta out of [-pi, pi]");
    const double c = std::cos(p.theta / 2.0);
    const double s = std::sin(p.theta / 2.0);
    const Amplitude i(0.0, 1.0);
    const Amplitude ea = std::polar(1.0, p.alpha);
    const Amplitude eb = std::polar(1.0, p.beta);
    return Unitary(2, {ea * c, i * eb * s, i * std::conj(eb) * s, std::conj(ea) * c});
}

Unitary hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    return Unitary(2, {r, r, r, -r});
}

Unitary flip() {
    const Amplitude i(0.0, 1.0);
    return Unitary(2, {0.0, i, i, 0.0});
}

Unitary identity(int dim) {
    if (dim < 1)
        throw std::invalid_argument("identity: dimension must be positive");
    std::vector<Amplitude> e(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int k = 0; k < dim; ++k) e[static_cast<std::size_t>(k) * dim + k] = 1.0;
    return Unitary(dim, std::move(e));
}

Unitary entangler(int n_players, double gamma) {
    if (n_players < 2)
        throw std::invalid_argument("entangler: need at least 2 players");
    if (n_players > 20)
        throw std::invalid_argument("entangler: too many players");
    if (gamma < -1e-12 || gamma > kPi / 2.0 + 1e-12)
        throw std::invalid_argument("entangler: gamma out of [0, pi/2]");
    const int dim = 1 << n_players;
    const Amplitude diag = std::cos(gamma / 2.0);
    const Amplitude anti = Amplitude(0.0, 1.0) * std::sin(gamma / 2.0);
    // sigma_x^{xN} maps |k> to the bitwise complement of k.
    std::vector<Amplitude> e(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int k = 0; k < dim; ++k) {
        e[static_cast<std::size_t>(k) * dim + k] += diag;
        e[static_cast<std::size_t>(k) * dim + (dim - 1 - k)] += anti;
    }
    return Unitary(dim, std::move(e));
}

Unitary classical_mix(double theta) {
    return su2({theta, 0.0, 0.0});
}

double wrap_angle(double angle) {
    double a = std::fmod(angle + kPi, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a - kPi;
}

Su2Params su2_params_of(const Unitary& u) {
    if (u.dim() != 2)
        throw std::invalid_argument("su2_params_of: need a 2x2 matrix");
    const double c = std::abs(u(0, 0));
    const double s = std::abs(u(0, 1));
    const double theta = 2.0 * std::atan2(s, c);
    const double alpha = c > 1e-12 ? std::arg(u(0, 0)) : 0.0;
    const double beta = s > 1e-12 ? std::arg(u(0, 1) / Amplitude(0.0, 1.0)) : 0.0;
    return {theta, alpha, beta};
}

}  // namespace qgames
