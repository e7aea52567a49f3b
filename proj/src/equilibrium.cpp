#include "qgames/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "qgames/games.hpp"

namespace qgames {

namespace {

constexpr double kPi = std::numbers::pi;

void check_config(const SearchConfig& cfg) {
    if (cfg.grid_points_per_axis < 5)
        throw std::invalid_argument("SearchConfig: need at least 5 grid points per axis");
    if (!(cfg.refine_tolerance > 0.0) || !(cfg.nash_tolerance > 0.0))
        throw std::invalid_argument("SearchConfig: tolerances must be positive");
}

// Caches the fixed parts of a game pipeline so strategy sweeps only pay for
// the per-move work. For the Eisert variant the entangled initial state and
// the disentangler are precomputed.
class PipelineEvaluator {
  public:
    explicit PipelineEvaluator(const GameSpec& spec) : spec_(spec) {
        if (spec.variant() == GameVariant::kEisertFull) {
            const Unitary j = entangler(spec.n_players(), spec.gamma());
            disentangler_.emplace(j.adjoint());
            start_.emplace(apply_global(
                StateVector::basis(spec.payoffs().moves_per_player(), 0), j));
        } else {
            start_.emplace(spec.initial_state());
        }
    }

    StateVector final_state(const std::vector<Unitary>& moves) const {
        StateVector s = *start_;
        for (int p = 0; p < spec_.n_players(); ++p)
            s = apply_local(s, p, moves[p]);
        if (disentangler_) s = apply_global(s, *disentangler_);
        return s;
    }

    std::vector<double> payoffs(const std::vector<Unitary>& moves) const {
        return expected_payoffs(spec_, final_state(moves));
    }

    const GameSpec& spec() const { return spec_; }

  private:
    const GameSpec& spec_;
    std::optional<Unitary> disentangler_;
    std::optional<StateVector> start_;
};

// Joint enumeration of the other players' mixed components, with `player`'s
// slot left open for the candidate deviation.
class DeviationObjective {
  public:
    DeviationObjective(const PipelineEvaluator& eval, int player,
                       const StrategyProfile& profile)
        : eval_(eval), player_(player) {
        const int n = eval.spec().n_players();
        if (player < 0 || player >= n)
            throw std::invalid_argument("best_response: player index out of range");
        if (static_cast<int>(profile.size()) != n)
            throw std::invalid_argument("best_response: need one strategy per player");
        std::vector<std::size_t> pick(n, 0);
        while (true) {
            double weight = 1.0;
            std::vector<Unitary> moves;
            moves.reserve(n);
            for (int p = 0; p < n; ++p) {
                if (p == player) {
                    moves.push_back(identity(2));  // placeholder
                } else {
                    const auto& comp = profile[p].components()[pick[p]];
                    weight *= comp.probability;
                    moves.push_back(comp.op);
                }
            }
            if (weight > 0.0) selections_.push_back({weight, std::move(moves)});
            int p = n - 1;
            while (p >= 0) {
                if (p == player) { --p; continue; }
                if (++pick[p] < profile[p].components().size()) break;
                pick[p--] = 0;
            }
            if (p < 0) break;
        }
    }

    double operator()(const Unitary& candidate) const {
        double total = 0.0;
        for (const auto& sel : selections_) {
            std::vector<Unitary> moves = sel.moves;
            moves[player_] = candidate;
            total += sel.weight * eval_.payoffs(moves)[player_];
        }
        return total;
    }

  private:
    struct Selection {
        double weight;
        std::vector<Unitary> moves;
    };
    const PipelineEvaluator& eval_;
    int player_;
    std::vector<Selection> selections_;
};

struct Box {
    std::vector<double> lo, hi;
    int dims() const { return static_cast<int>(lo.size()); }
};

std::vector<double> clamp_to_box(std::vector<double> x, const Box& box) {
    for (int i = 0; i < box.dims(); ++i)
        x[i] = std::clamp(x[i], box.lo[i], box.hi[i]);
    return x;
}

using Objective = std::function<double(const std::vector<double>&)>;

struct OptPoint {
    std::vector<double> x;
    double value = -1e300;
    bool converged = false;
};

// Nelder-Mead ascent restricted to a box; candidate points are clamped to
// the feasible region. Returns the best point ever evaluated.
OptPoint nelder_mead_max(const Objective& fn, const std::vector<double>& x0,
                         const Box& box, int max_iter, double tol,
                         double initial_step_frac) {
    const int d = box.dims();
    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
    pts.push_back(clamp_to_box(x0, box));
    for (int i = 0; i < d; ++i) {
        auto x = pts.front();
        const double step = initial_step_frac * (box.hi[i] - box.lo[i]);
        x[i] = (x[i] + step <= box.hi[i]) ? x[i] + step : x[i] - step;
        pts.push_back(clamp_to_box(std::move(x), box));
    }
    for (const auto& p : pts) vals.push_back(fn(p));

    OptPoint best;
    auto note_best = [&](const std::vector<double>& x, double v) {
        if (v > best.value) { best.x = x; best.value = v; }
    };
    for (std::size_t i = 0; i < pts.size(); ++i) note_best(pts[i], vals[i]);

    std::vector<std::size_t> order(pts.size());
    for (int iter = 0; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
        if (vals[order.front()] - vals[order.back()] < tol) {
            best.converged = true;
            break;
        }
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[order.size() - 2];
        std::vector<double> centroid(d, 0.0);
        for (std::size_t i : order)
            if (i != worst)
                for (int k = 0; k < d; ++k) centroid[k] += pts[i][k];
        for (int k = 0; k < d; ++k) centroid[k] /= static_cast<double>(d);

        auto along = [&](double coef) {
            std::vector<double> x(d);
            for (int k = 0; k < d; ++k)
                x[k] = centroid[k] + coef * (centroid[k] - pts[worst][k]);
            return clamp_to_box(std::move(x), box);
        };

        const std::vector<double> reflected = along(1.0);
        const double fr = fn(reflected);
        note_best(reflected, fr);
        if (fr > vals[order.front()]) {
            const std::vector<double> expanded = along(2.0);
            const double fe = fn(expanded);
            note_best(expanded, fe);
            if (fe > fr) { pts[worst] = expanded; vals[worst] = fe; }
            else { pts[worst] = reflected; vals[worst] = fr; }
        } else if (fr > vals[second_worst]) {
            pts[worst] = reflected;
            vals[worst] = fr;
        } else {
            const std::vector<double> contracted = along(-0.5);
            const double fc = fn(contracted);
            note_best(contracted, fc);
            if (fc > vals[worst]) {
                pts[worst] = contracted;
                vals[worst] = fc;
            } else {
                const auto& anchor = pts[order.front()];
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    if (i == order.front()) continue;
                    for (int k = 0; k < d; ++k)
                        pts[i][k] = anchor[k] + 0.5 * (pts[i][k] - anchor[k]);
                    vals[i] = fn(pts[i]);
                    note_best(pts[i], vals[i]);
                }
            }
        }
    }
    return best;
}

// Cyclic one-dimensional polish. Along each axis the payoff is a trig
// polynomial of degree <= 2, so a coarse scan plus golden-section search
// pins the axis maximum reliably.
OptPoint coordinate_polish(const Objective& fn, OptPoint start, const Box& box,
                           double tol) {
    constexpr double kInvPhi = 0.6180339887498949;
    OptPoint best = std::move(start);
    for (int sweep = 0; sweep < 4; ++sweep) {
        const double before = best.value;
        for (int axis = 0; axis < box.dims(); ++axis) {
            const double width = box.hi[axis] - box.lo[axis];
            auto eval = [&](double x) {
                std::vector<double> p = best.x;
                p[axis] = std::clamp(x, box.lo[axis], box.hi[axis]);
                return fn(p);
            };
            constexpr int kScan = 33;
            double scan_best_x = best.x[axis];
            double scan_best_v = best.value;
            for (int k = 0; k < kScan; ++k) {
                const double x = box.lo[axis] + width * k / (kScan - 1);
                const double v = eval(x);
                if (v > scan_best_v) { scan_best_v = v; scan_best_x = x; }
            }
            double lo = std::max(box.lo[axis], scan_best_x - width / (kScan - 1));
            double hi = std::min(box.hi[axis], scan_best_x + width / (kScan - 1));
            double x1 = hi - kInvPhi * (hi - lo);
            double x2 = lo + kInvPhi * (hi - lo);
            double f1 = eval(x1), f2 = eval(x2);
            for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
                if (f1 < f2) {
                    lo = x1; x1 = x2; f1 = f2;
                    x2 = lo + kInvPhi * (hi - lo);
                    f2 = eval(x2);
                } else {
                    hi = x2; x2 = x1; f2 = f1;
                    x1 = hi - kInvPhi * (hi - lo);
                    f1 = eval(x1);
                }
            }
            const double x_star = f1 > f2 ? x1 : x2;
            const double v_star = std::max(f1, f2);
            if (v_star > best.value) {
                best.x[axis] = std::clamp(x_star, box.lo[axis], box.hi[axis]);
                best.value = v_star;
            } else if (scan_best_v > best.value) {
                best.x[axis] = scan_best_x;
                best.value = scan_best_v;
            }
        }
        if (best.value - before < tol) break;
    }
    return best;
}

// Dense grid scan followed by Nelder-Mead from the leading grid points and
// any caller-supplied seeds, with a tighter restart around the winner.
OptPoint grid_refine_max(const Objective& fn, const Box& box,
                         const SearchConfig& cfg,
                         const std::vector<std::vector<double>>& extra_seeds = {}) {
    const int d = box.dims();
    const int g = cfg.grid_points_per_axis;
    std::vector<double> x(d);
    std::vector<int> idx(d, 0);

    // keep the three best grid points as refinement seeds
    constexpr int kSeeds = 3;
    std::vector<OptPoint> seeds;
    while (true) {
        for (int k = 0; k < d; ++k)
            x[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * idx[k] / (g - 1);
        const double v = fn(x);
        if (static_cast<int>(seeds.size()) < kSeeds) {
            seeds.push_back({x, v, false});
            std::sort(seeds.begin(), seeds.end(),
                      [](const OptPoint& a, const OptPoint& b) { return a.value > b.value; });
        } else if (v > seeds.back().value) {
            seeds.back() = {x, v, false};
            std::sort(seeds.begin(), seeds.end(),
                      [](const OptPoint& a, const OptPoint& b) { return a.value > b.value; });
        }
        int k = d - 1;
        while (k >= 0 && ++idx[k] == g) idx[k--] = 0;
        if (k < 0) break;
    }
    for (const auto& seed : extra_seeds)
        seeds.push_back({clamp_to_box(seed, box), fn(clamp_to_box(seed, box)), false});

    OptPoint best = seeds.front();
    best.converged = false;
    for (const auto& seed : seeds) {
        if (seed.value > best.value) best = seed;
        OptPoint r = nelder_mead_max(fn, seed.x, box, cfg.refine_iterations,
                                     cfg.refine_tolerance, 1.0 / g);
        if (r.value > best.value) best = r;
    }
    // restart once with a small simplex around the winner; its best-ever
    // tracking starts from the winner, so the value never regresses
    OptPoint polished = nelder_mead_max(fn, best.x, box, cfg.refine_iterations,
                                        cfg.refine_tolerance, 0.02 / g);
    polished.converged = polished.converged || best.converged;
    // axis-wise polish rescues the occasional collapsed simplex
    return coordinate_polish(fn, std::move(polished), box, cfg.refine_tolerance);
}

Su2Params params_from(const std::vector<double>& x, bool beta_zero) {
    return {x[0], x[1], beta_zero ? 0.0 : x[2]};
}

Box su2_box(bool beta_zero) {
    if (beta_zero) return {{0.0, -kPi}, {kPi, kPi}};
    return {{0.0, -kPi, -kPi}, {kPi, kPi, kPi}};
}

// Deterministic warm starts: the classical moves, the miracle move, and in
// two-player games the exact counter to every opponent component. The
// counter sits on a narrow ridge (beta decouples as theta -> 0) that a
// simplex walking in from the grid can miss.
std::vector<std::vector<double>> response_seeds(const PipelineEvaluator& eval,
                                                int player,
                                                const StrategyProfile& profile,
                                                bool beta_zero) {
    std::vector<std::vector<double>> seeds;
    const auto push = [&](const Su2Params& p) {
        if (beta_zero) seeds.push_back({p.theta, p.alpha});
        else seeds.push_back({p.theta, p.alpha, p.beta});
    };
    push({0, 0, 0});
    push({kPi, 0, 0});
    push({kPi / 2, kPi / 2, 0});
    if (eval.spec().n_players() == 2) {
        const int other = 1 - player;
        for (const auto& comp : profile[other].components()) {
            if (comp.op.dim() != 2) continue;
            push(su2_params_of(counter_strategy(su2_params_of(comp.op))));
        }
    }
    return seeds;
}

BestResponseResult best_response_impl(const PipelineEvaluator& eval, int player,
                                      const StrategyProfile& profile,
                                      const SearchConfig& cfg, bool beta_zero) {
    if (eval.spec().payoffs().moves_per_player()[player] != 2)
        throw std::invalid_argument("best_response: SU(2) search needs a two-move player");
    const DeviationObjective objective(eval, player, profile);
    const Objective fn = [&](const std::vector<double>& x) {
        return objective(su2(params_from(x, beta_zero)));
    };
    const OptPoint r = grid_refine_max(fn, su2_box(beta_zero), cfg,
                                       response_seeds(eval, player, profile, beta_zero));
    return {params_from(r.x, beta_zero), r.value, r.converged};
}

EquilibriumReport make_report(StrategyProfile profile, std::vector<double> payoffs,
                              std::vector<double> gains, double tolerance) {
    EquilibriumReport report;
    report.profile = std::move(profile);
    report.payoffs = std::move(payoffs);
    report.max_unilateral_gain = std::move(gains);
    report.tolerance_used = tolerance;
    report.is_nash = std::all_of(
        report.max_unilateral_gain.begin(), report.max_unilateral_gain.end(),
        [&](double g) { return g <= tolerance; });
    return report;
}

// Alice's payoff against a fixed opponent move, as a function of her
// classical mixing angle, is a + b*cos(theta) + c*sin(theta); three pipeline
// evaluations pin the coefficients exactly, so her best classical reply can
// be taken from the endpoints and the stationary point.
struct ClassicalReply {
    double theta;
    std::vector<double> payoffs;
};

ClassicalReply best_classical_reply(const PipelineEvaluator& eval,
                                    const Unitary& quantum_move,
                                    int classical_player) {
    auto payoffs_at = [&](double theta) {
        std::vector<Unitary> moves{classical_mix(theta), quantum_move};
        if (classical_player == 1) std::swap(moves[0], moves[1]);
        return eval.payoffs(moves);
    };
    const std::vector<double> p0 = payoffs_at(0.0);
    const std::vector<double> p1 = payoffs_at(kPi / 2.0);
    const std::vector<double> p2 = payoffs_at(kPi);
    const double a = 0.5 * (p0[classical_player] + p2[classical_player]);
    const double b = 0.5 * (p0[classical_player] - p2[classical_player]);
    const double c = p1[classical_player] - a;

    std::vector<double> candidates{0.0, kPi};
    const double stationary = std::atan2(c, b);
    if (stationary > 0.0 && stationary < kPi) candidates.push_back(stationary);

    ClassicalReply best{0.0, p0};
    double best_value = p0[classical_player];
    for (double theta : candidates) {
        const std::vector<double> pay = payoffs_at(theta);
        if (pay[classical_player] > best_value + 1e-15) {
            best_value = pay[classical_player];
            best = {theta, pay};
        }
    }
    return best;
}

}  // namespace

Unitary counter_strategy(const Su2Params& opponent) {
    const Su2Params undo{opponent.theta, wrap_angle(-opponent.alpha),
                         wrap_angle(kPi / 2.0 - opponent.beta)};
    return flip() * su2(undo);
}

BestResponseResult best_response(const GameSpec& spec, int player,
                                 const StrategyProfile& profile,
                                 const SearchConfig& cfg,
                                 bool restrict_beta_zero) {
    check_config(cfg);
    const PipelineEvaluator eval(spec);
    return best_response_impl(eval, player, profile, cfg, restrict_beta_zero);
}

EquilibriumReport verify_nash(const GameSpec& spec, const StrategyProfile& profile,
                              const SearchConfig& cfg) {
    check_config(cfg);
    const PipelineEvaluator eval(spec);
    const std::vector<double> payoffs = mixed_expected_payoffs(spec, profile);
    std::vector<double> gains(spec.n_players());
    for (int p = 0; p < spec.n_players(); ++p) {
        const BestResponseResult br = best_response_impl(eval, p, profile, cfg, false);
        gains[p] = br.payoff - payoffs[p];
    }
    return make_report(profile, payoffs, std::move(gains), cfg.nash_tolerance);
}

StrategyProfile mixed_ne_family(double theta, double alpha, double beta) {
    const auto member = [](double t, double a, double b) {
        return su2({t, wrap_angle(a), wrap_angle(b)});
    };
    const Strategy alice = Strategy::mixed({
        {0.5, member(theta, alpha, beta)},
        {0.5, member(theta, kPi / 2.0 + alpha, kPi / 2.0 + beta)},
    });
    const Strategy bob = Strategy::mixed({
        {0.5, member(kPi - theta, kPi / 2.0 + beta, alpha)},
        {0.5, member(kPi - theta, kPi + beta, kPi / 2.0 + alpha)},
    });
    return {alice, bob};
}

std::vector<GammaPayoffRow> gamma_sweep(const GameSpec& spec_template,
                                        const Unitary& alice, const Unitary& bob,
                                        const std::vector<double>& gammas) {
    std::vector<GammaPayoffRow> rows;
    rows.reserve(gammas.size());
    for (double gamma : gammas) {
        if (gamma < -1e-12 || gamma > kPi / 2.0 + 1e-12)
            throw std::invalid_argument("gamma_sweep: gamma out of [0, pi/2]");
        const GameSpec spec = spec_template.with_gamma(gamma);
        rows.push_back({gamma, expected_payoffs(spec, run_eisert(spec, {alice, bob}))});
    }
    return rows;
}

double critical_gamma(const GameSpec& spec, const SearchConfig& cfg) {
    check_config(cfg);
    if (spec.variant() != GameVariant::kEisertFull || spec.n_players() != 2)
        throw std::invalid_argument("critical_gamma: need a 2-player Eisert game");

    // Quantum player is Bob (index 1); the opponent best-replies classically.
    const auto payoff_difference = [&](double gamma) {
        const GameSpec at_gamma = spec.with_gamma(gamma);
        const PipelineEvaluator eval(at_gamma);
        const ClassicalReply vs_miracle = best_classical_reply(eval, miracle_move(), 0);
        const ClassicalReply vs_defect = best_classical_reply(eval, flip(), 0);
        return vs_miracle.payoffs[1] - vs_defect.payoffs[1];
    };

    double lo = 0.0, hi = kPi / 2.0;
    double flo = payoff_difference(lo);
    double fhi = payoff_difference(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw std::runtime_error("critical_gamma: no crossover on [0, pi/2]");
    for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = payoff_difference(mid);
        if (fmid == 0.0) return mid;
        if ((fmid < 0.0) == (flo < 0.0)) { lo = mid; flo = fmid; }
        else { hi = mid; fhi = fmid; }
    }
    return 0.5 * (lo + hi);
}

EquilibriumReport restricted_ne_search(const GameSpec& spec, const SearchConfig& cfg) {
    check_config(cfg);
    if (spec.variant() != GameVariant::kEisertFull || spec.n_players() != 2)
        throw std::invalid_argument("restricted_ne_search: need a 2-player Eisert game");
    const PipelineEvaluator eval(spec);

    const auto symmetric_payoff = [&](const Su2Params& p) {
        const Unitary u = su2(p);
        return eval.payoffs({u, u});
    };

    // seed from the best symmetric point on the grid
    const int g = cfg.grid_points_per_axis;
    Su2Params seed{0.0, 0.0, 0.0};
    double seed_value = -1e300;
    for (int it = 0; it < g; ++it) {
        for (int ia = 0; ia < g; ++ia) {
            const Su2Params p{kPi * it / (g - 1), -kPi + 2.0 * kPi * ia / (g - 1), 0.0};
            const double v = symmetric_payoff(p)[0];
            if (v > seed_value) { seed_value = v; seed = p; }
        }
    }

    // symmetric best-response iteration in the (theta, alpha) plane; a
    // stalled iteration surfaces as a positive deviation gain below
    Su2Params current = seed;
    for (int iter = 0; iter < cfg.refine_iterations; ++iter) {
        const StrategyProfile fixed{Strategy::pure(su2(current)),
                                    Strategy::pure(su2(current))};
        const BestResponseResult br = best_response_impl(eval, 1, fixed, cfg, true);
        if (br.payoff - symmetric_payoff(current)[1] <= cfg.nash_tolerance) break;
        current = br.params;
    }

    const StrategyProfile profile{Strategy::pure(su2(current)),
                                  Strategy::pure(su2(current))};
    const std::vector<double> payoffs = mixed_expected_payoffs(spec, profile);
    std::vector<double> gains(2);
    for (int p = 0; p < 2; ++p) {
        const BestResponseResult br = best_response_impl(eval, p, profile, cfg, true);
        gains[p] = br.payoff - payoffs[p];
    }
    return make_report(profile, payoffs, std::move(gains), cfg.nash_tolerance);
}

EquilibriumReport minority_quantum_search(int n_players, const SearchConfig& cfg) {
    check_config(cfg);
    if (n_players < 3 || n_players > 4)
        throw std::invalid_argument("minority_quantum_search: supported for 3 or 4 players");
    const GameSpec spec = GameSpec::eisert(minority_game(n_players), kPi / 2.0);
    const PipelineEvaluator eval(spec);

    const auto symmetric_payoff = [&](const Su2Params& p) {
        const Unitary u = su2(p);
        return eval.payoffs(std::vector<Unitary>(n_players, u))[0];
    };
    const Objective fn = [&](const std::vector<double>& x) {
        return symmetric_payoff(params_from(x, false));
    };
    const OptPoint found = grid_refine_max(fn, su2_box(false), cfg);

    const auto profile_at = [&](const Su2Params& p) {
        return StrategyProfile(n_players, Strategy::pure(su2(p)));
    };
    // all players share the strategy, so one best response gives the
    // common deviation gain
    SearchConfig inner = cfg;
    inner.grid_points_per_axis = 9;  // regret evaluations nest a full search
    const auto regret_at = [&](const Su2Params& p, const SearchConfig& c) {
        const BestResponseResult br = best_response_impl(eval, 0, profile_at(p), c, false);
        return br.payoff - symmetric_payoff(p);
    };

    Su2Params chosen = params_from(found.x, false);
    if (regret_at(chosen, cfg) > cfg.nash_tolerance) {
        // walk the near-optimal set toward a point no player wants to leave
        const double target = found.value - 0.5 * cfg.nash_tolerance;
        const Objective penalized = [&](const std::vector<double>& x) {
            const Su2Params p = params_from(x, false);
            const double shortfall = std::max(0.0, target - symmetric_payoff(p));
            return -(regret_at(p, inner) + 100.0 * shortfall);
        };
        const OptPoint repaired =
            nelder_mead_max(penalized, found.x, su2_box(false),
                            cfg.refine_iterations, cfg.refine_tolerance, 0.05);
        const Su2Params candidate = params_from(repaired.x, false);
        if (symmetric_payoff(candidate) >= target) chosen = candidate;
    }

    return verify_nash(spec, profile_at(chosen), cfg);
}

}  // namespace qgames
