#include "qgames/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "qgames/games.hpp"

namespace qgames {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // fold negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

void check_result(const ExperimentResult& result) {
    if (result.rows.empty())
        throw std::runtime_error("emit: experiment produced no rows");
    for (const auto& row : result.rows) {
        if (row.values.size() != result.columns.size())
            throw std::runtime_error("emit: row width does not match the column list");
        for (double v : row.values)
            if (!std::isfinite(v)) throw std::runtime_error("emit: non-finite value in a row");
    }
}

std::string emit_csv(const ExperimentResult& result) {
    std::ostringstream out;
    bool first = true;
    if (!result.label_column.empty()) {
        out << result.label_column;
        first = false;
    }
    for (const auto& c : result.columns) {
        if (!first) out << ',';
        out << c;
        first = false;
    }
    out << '\n';
    for (const auto& row : result.rows) {
        first = true;
        if (!result.label_column.empty()) {
            out << row.label;
            first = false;
        }
        for (double v : row.values) {
            if (!first) out << ',';
            out << format_number(v);
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

void emit_string_map(std::ostringstream& out,
                     const std::vector<std::pair<std::string, std::string>>& map) {
    out << '{';
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (i) out << ", ";
        out << '"' << json_escape(map[i].first) << "\": \""
            << json_escape(map[i].second) << '"';
    }
    out << '}';
}

std::string emit_json(const ExperimentResult& result) {
    std::ostringstream out;
    out << "{\n  \"experiment\": \"" << json_escape(result.experiment) << "\",\n";
    out << "  \"params\": ";
    emit_string_map(out, result.params);
    out << ",\n  \"columns\": [";
    bool first = true;
    if (!result.label_column.empty()) {
        out << '"' << json_escape(result.label_column) << '"';
        first = false;
    }
    for (const auto& c : result.columns) {
        if (!first) out << ", ";
        out << '"' << json_escape(c) << '"';
        first = false;
    }
    out << "],\n  \"rows\": [\n";
    for (std::size_t r = 0; r < result.rows.size(); ++r) {
        out << "    [";
        first = true;
        if (!result.label_column.empty()) {
            out << '"' << json_escape(result.rows[r].label) << '"';
            first = false;
        }
        for (double v : result.rows[r].values) {
            if (!first) out << ", ";
            out << format_number(v);
            first = false;
        }
        out << (r + 1 < result.rows.size() ? "],\n" : "]\n");
    }
    out << "  ],\n  \"metadata\": ";
    emit_string_map(out, result.metadata);
    out << "\n}\n";
    return out.str();
}

Su2Params alice_or(const ExperimentOptions& opts, Su2Params fallback) {
    return opts.alice.value_or(fallback);
}

Su2Params bob_or(const ExperimentOptions& opts, Su2Params fallback) {
    return opts.bob.value_or(fallback);
}

GameSpec spec_or_default(const ExperimentOptions& opts) {
    if (opts.game) return *opts.game;
    return GameSpec::eisert(prisoners_dilemma(), opts.gamma);
}

SearchConfig search_config(const ExperimentOptions& opts) {
    SearchConfig cfg = opts.search;
    cfg.seed = opts.seed;
    return cfg;
}

std::string su2_string(const Su2Params& p) {
    return format_number(p.theta) + " " + format_number(p.alpha) + " " +
           format_number(p.beta);
}

void common_metadata(ExperimentResult& result, const ExperimentOptions& opts) {
    result.metadata.emplace_back("seed", std::to_string(opts.seed));
    result.metadata.emplace_back("nash_tolerance",
                                 format_number(opts.search.nash_tolerance));
    result.metadata.emplace_back("refine_tolerance",
                                 format_number(opts.search.refine_tolerance));
    result.metadata.emplace_back("version", kVersion);
}

ExperimentResult penny_flip_experiment(const ExperimentOptions& opts) {
    ExperimentResult result;
    result.experiment = "penny-flip";
    result.label_column = "moves";
    result.columns = {"win_prob"};
    const std::vector<std::pair<std::string, Unitary>> bob_moves{
        {"I", identity(2)}, {"F", flip()}, {"H", hadamard()}};
    for (const auto& [name1, b1] : bob_moves) {
        for (const auto& [name2, b2] : bob_moves) {
            const double win_id =
                play_penny_flip({b1, CoinMove::kIdentity, b2});
            const double win_flip = play_penny_flip({b1, CoinMove::kFlip, b2});
            result.rows.push_back({name1 + "/id/" + name2, {win_id}});
            result.rows.push_back({name1 + "/flip/" + name2, {win_flip}});
            result.rows.push_back(
                {name1 + "/rand/" + name2, {0.5 * (win_id + win_flip)}});
        }
    }
    common_metadata(result, opts);
    return result;
}

ExperimentResult pd_experiment(const ExperimentOptions& opts) {
    const GameSpec spec = spec_or_default(opts);
    const Su2Params a = alice_or(opts, {0, 0, 0});
    const Su2Params b = bob_or(opts, {0, 0, 0});
    const StateVector final_state = run_moves(spec, {su2(a), su2(b)});
    const std::vector<double> pay = expected_payoffs(spec, final_state);
    const std::vector<double> probs = outcome_probabilities(final_state);

    ExperimentResult result;
    result.experiment = "pd";
    result.params = {{"gamma", format_number(spec.gamma())},
                     {"alice", su2_string(a)},
                     {"bob", su2_string(b)}};
    result.columns = {"payoff_alice", "payoff_bob", "p00", "p01", "p10", "p11"};
    result.rows.push_back(
        {"", {pay[0], pay[1], probs[0], probs[1], probs[2], probs[3]}});
    common_metadata(result, opts);
    return result;
}

ExperimentResult miracle_curve_experiment(const ExperimentOptions& opts) {
    if (opts.points < 2) throw UsageError("miracle-curve: need --points >= 2");
    const GameSpec spec = spec_or_default(opts);
    const Unitary bob = miracle_move();

    ExperimentResult result;
    result.experiment = "miracle-curve";
    result.params = {{"gamma", format_number(spec.gamma())},
                     {"points", std::to_string(opts.points)}};
    result.columns = {"theta", "alice_payoff", "bob_payoff"};
    for (int k = 0; k < opts.points; ++k) {
        const double theta = kPi * k / (opts.points - 1);
        const std::vector<double> pay =
            expected_payoffs(spec, run_moves(spec, {classical_mix(theta), bob}));
        result.rows.push_back({"", {theta, pay[0], pay[1]}});
    }
    common_metadata(result, opts);
    return result;
}

ExperimentResult critical_gamma_experiment(const ExperimentOptions& opts) {
    GameSpec spec = spec_or_default(opts);
    const double gamma_star = critical_gamma(spec, search_config(opts));
    ExperimentResult result;
    result.experiment = "critical-gamma";
    result.columns = {"gamma_star", "sin_gamma_star"};
    result.rows.push_back({"", {gamma_star, std::sin(gamma_star)}});
    common_metadata(result, opts);
    return result;
}

ExperimentResult gamma_sweep_experiment(const ExperimentOptions& opts) {
    if (opts.points < 2) throw UsageError("gamma-sweep: need --points >= 2");
    const GameSpec spec = spec_or_default(opts);
    const Su2Params a = alice_or(opts, {0, 0, 0});
    const Su2Params b = bob_or(opts, {0, 0, 0});
    std::vector<double> gammas;
    for (int k = 0; k < opts.points; ++k)
        gammas.push_back(kPi / 2.0 * k / (opts.points - 1));

    ExperimentResult result;
    result.experiment = "gamma-sweep";
    result.params = {{"alice", su2_string(a)},
                     {"bob", su2_string(b)},
                     {"points", std::to_string(opts.points)}};
    result.columns = {"gamma", "payoff_alice", "payoff_bob"};
    for (const auto& row : gamma_sweep(spec, su2(a), su2(b), gammas))
        result.rows.push_back({"", {row.gamma, row.payoffs[0], row.payoffs[1]}});
    common_metadata(result, opts);
    return result;
}

ExperimentResult mixed_ne_experiment(const ExperimentOptions& opts) {
    const GameSpec spec = spec_or_default(opts);
    const Su2Params g = alice_or(opts, {0, 0, 0});  // family generator
    const StrategyProfile profile = mixed_ne_family(g.theta, g.alpha, g.beta);
    const EquilibriumReport report = verify_nash(spec, profile, search_config(opts));

    ExperimentResult result;
    result.experiment = "mixed-ne";
    result.params = {{"gamma", format_number(spec.gamma())},
                     {"family", su2_string(g)}};
    result.columns = {"payoff_alice", "payoff_bob", "gain_alice", "gain_bob",
                      "is_nash"};
    result.rows.push_back({"",
                           {report.payoffs[0], report.payoffs[1],
                            report.max_unilateral_gain[0],
                            report.max_unilateral_gain[1],
                            report.is_nash ? 1.0 : 0.0}});
    common_metadata(result, opts);
    return result;
}

ExperimentResult restricted_ne_experiment(const ExperimentOptions& opts) {
    const GameSpec spec = spec_or_default(opts);
    const EquilibriumReport report = restricted_ne_search(spec, search_config(opts));
    const Su2Params found =
        su2_params_of(report.profile[0].components()[0].op);

    ExperimentResult result;
    result.experiment = "restricted-ne";
    result.params = {{"gamma", format_number(spec.gamma())}};
    result.columns = {"theta", "alpha", "payoff_alice", "payoff_bob",
                      "gain_alice", "gain_bob", "is_nash"};
    result.rows.push_back({"",
                           {found.theta, found.alpha, report.payoffs[0],
                            report.payoffs[1], report.max_unilateral_gain[0],
                            report.max_unilateral_gain[1],
                            report.is_nash ? 1.0 : 0.0}});
    common_metadata(result, opts);
    return result;
}

ExperimentResult minority_experiment(const ExperimentOptions& opts) {
    if (opts.players < 3) throw UsageError("minority: need --players >= 3");
    if (opts.quantum && opts.players > 4)
        throw UsageError("minority: the quantum search supports 3 or 4 players");
    ExperimentResult result;
    result.experiment = "minority";
    result.params = {{"players", std::to_string(opts.players)},
                     {"quantum", opts.quantum ? "true" : "false"}};
    if (!opts.quantum) {
        const std::vector<double> pay =
            classical_random_payoff(minority_game(opts.players));
        result.columns = {"expected_payoff"};
        result.rows.push_back({"", {pay[0]}});
    } else {
        const EquilibriumReport report =
            minority_quantum_search(opts.players, search_config(opts));
        const Su2Params found =
            su2_params_of(report.profile[0].components()[0].op);
        double max_gain = report.max_unilateral_gain[0];
        for (double gain : report.max_unilateral_gain)
            max_gain = std::max(max_gain, gain);
        result.columns = {"theta", "alpha", "beta", "payoff", "max_gain",
                          "is_nash"};
        result.rows.push_back({"",
                               {found.theta, found.alpha, found.beta,
                                report.payoffs[0], max_gain,
                                report.is_nash ? 1.0 : 0.0}});
    }
    common_metadata(result, opts);
    return result;
}

ExperimentResult best_response_experiment(const ExperimentOptions& opts) {
    const GameSpec spec = spec_or_default(opts);
    const Su2Params opponent = alice_or(opts, {0, 0, 0});
    const StrategyProfile profile{Strategy::pure(su2(opponent)),
                                  Strategy::pure(identity(2))};
    const BestResponseResult br =
        best_response(spec, 1, profile, search_config(opts));

    ExperimentResult result;
    result.experiment = "best-response";
    result.params = {{"gamma", format_number(spec.gamma())},
                     {"alice", su2_string(opponent)}};
    result.columns = {"theta", "alpha", "beta", "payoff", "converged"};
    result.rows.push_back({"",
                           {br.params.theta, br.params.alpha, br.params.beta,
                            br.payoff, br.converged ? 1.0 : 0.0}});
    common_metadata(result, opts);
    return result;
}

ExperimentResult verify_ne_experiment(const ExperimentOptions& opts) {
    const GameSpec spec = spec_or_default(opts);
    const Su2Params a = alice_or(opts, {0, 0, 0});
    const Su2Params b = bob_or(opts, {0, 0, 0});
    const StrategyProfile profile{Strategy::pure(su2(a)), Strategy::pure(su2(b))};
    const EquilibriumReport report = verify_nash(spec, profile, search_config(opts));

    ExperimentResult result;
    result.experiment = "verify-ne";
    result.params = {{"gamma", format_number(spec.gamma())},
                     {"alice", su2_string(a)},
                     {"bob", su2_string(b)}};
    result.columns = {"payoff_alice", "payoff_bob", "gain_alice", "gain_bob",
                      "is_nash"};
    result.rows.push_back({"",
                           {report.payoffs[0], report.payoffs[1],
                            report.max_unilateral_gain[0],
                            report.max_unilateral_gain[1],
                            report.is_nash ? 1.0 : 0.0}});
    common_metadata(result, opts);
    return result;
}

ExperimentResult analyze_experiment(const ExperimentOptions& opts) {
    const ClassicalMatrix m =
        opts.game ? opts.game->payoffs() : prisoners_dilemma();

    const auto nash = find_pure_nash(m);
    const auto pareto = pareto_optimal_outcomes(m);
    const auto contains = [](const std::vector<std::vector<int>>& set,
                             const std::vector<int>& outcome) {
        for (const auto& o : set)
            if (o == outcome) return true;
        return false;
    };

    ExperimentResult result;
    result.experiment = "analyze";
    result.label_column = "outcome";
    for (int p = 0; p < m.n_players(); ++p)
        result.columns.push_back("payoff_" + std::to_string(p));
    result.columns.push_back("is_nash");
    result.columns.push_back("is_pareto");
    for (int k = 0; k < m.n_outcomes(); ++k) {
        const std::vector<int> outcome = m.outcome_of(k);
        std::string label;
        for (std::size_t i = 0; i < outcome.size(); ++i) {
            if (i) label += '-';
            label += std::to_string(outcome[i]);
        }
        std::vector<double> values = m.payoffs_at(k);
        values.push_back(contains(nash, outcome) ? 1.0 : 0.0);
        values.push_back(contains(pareto, outcome) ? 1.0 : 0.0);
        result.rows.push_back({std::move(label), std::move(values)});
    }

    const auto dominant = find_dominant_strategies(m);
    for (int p = 0; p < m.n_players(); ++p)
        result.metadata.emplace_back(
            "dominant_player_" + std::to_string(p),
            dominant[p] ? std::to_string(*dominant[p]) : "none");
    if (m.n_players() == 2 && m.moves_per_player() == std::vector<int>{2, 2}) {
        bool symmetric = true;
        for (int a = 0; a < 2 && symmetric; ++a)
            for (int b = 0; b < 2; ++b)
                if (m.payoffs_at({a, b})[0] != m.payoffs_at({b, a})[1]) {
                    symmetric = false;
                    break;
                }
        if (symmetric)
            result.metadata.emplace_back(
                "is_prisoners_dilemma", is_prisoners_dilemma(m) ? "true" : "false");
    }
    if (m.n_players() == 2 && m.is_zero_sum()) {
        const auto saddle = saddle_point(m);
        result.metadata.emplace_back(
            "saddle_point", saddle ? std::to_string(saddle->first) + "-" +
                                         std::to_string(saddle->second)
                                   : "none");
    }
    common_metadata(result, opts);
    return result;
}

ExperimentResult noise_experiment(const ExperimentOptions& opts) {
    if (opts.points < 2) throw UsageError("noise: need --points >= 2");
    const GameSpec spec = spec_or_default(opts);
    const Su2Params a = alice_or(opts, {0, 0, 0});
    const Su2Params b = bob_or(opts, {kPi / 2.0, kPi / 2.0, 0.0});  // miracle
    const std::vector<Unitary> moves{su2(a), su2(b)};
    const int site = 1;  // decohere the quantum player's qubit

    ExperimentResult result;
    result.experiment = "noise";
    result.params = {{"gamma", format_number(spec.gamma())},
                     {"alice", su2_string(a)},
                     {"bob", su2_string(b)},
                     {"points", std::to_string(opts.points)}};
    result.columns = {"p", "payoff_alice", "payoff_bob"};
    for (int k = 0; k < opts.points; ++k) {
        const double p = static_cast<double>(k) / (opts.points - 1);
        std::vector<double> pay;
        if (spec.variant() == GameVariant::kEisertFull) {
            // noise strikes after the moves, before the disentangler
            const Unitary j = entangler(spec.n_players(), spec.gamma());
            StateVector state =
                apply_global(StateVector::basis({2, 2}, 0), j);
            for (int q = 0; q < 2; ++q) state = apply_local(state, q, moves[q]);
            WeightedEnsemble noisy =
                apply_bitflip_noise(WeightedEnsemble(state), site, p);
            std::vector<WeightedEnsemble::Member> members;
            for (const auto& member : noisy.members())
                members.push_back(
                    {member.probability, apply_global(member.state, j.adjoint())});
            pay = expected_payoffs(spec, WeightedEnsemble(std::move(members)));
        } else {
            StateVector state = run_marinatto_weber(spec, moves);
            pay = expected_payoffs(
                spec, apply_bitflip_noise(WeightedEnsemble(state), site, p));
        }
        result.rows.push_back({"", {p, pay[0], pay[1]}});
    }
    common_metadata(result, opts);
    return result;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::kCsv;
    if (name == "json") return OutputFormat::kJson;
    throw UsageError("unknown format '" + name + "' (expected csv or json)");
}

std::string emit(const ExperimentResult& result, OutputFormat format) {
    check_result(result);
    return format == OutputFormat::kCsv ? emit_csv(result) : emit_json(result);
}

std::vector<std::string> experiment_names() {
    return {"penny-flip",  "pd",            "miracle-curve", "critical-gamma",
            "gamma-sweep", "mixed-ne",      "restricted-ne", "minority",
            "best-response", "verify-ne",   "analyze",       "noise"};
}

ExperimentResult run_experiment(const std::string& name,
                                const ExperimentOptions& opts) {
    if (name == "penny-flip") return penny_flip_experiment(opts);
    if (name == "pd") return pd_experiment(opts);
    if (name == "miracle-curve") return miracle_curve_experiment(opts);
    if (name == "critical-gamma") return critical_gamma_experiment(opts);
    if (name == "gamma-sweep") return gamma_sweep_experiment(opts);
    if (name == "mixed-ne") return mixed_ne_experiment(opts);
    if (name == "restricted-ne") return restricted_ne_experiment(opts);
    if (name == "minority") return minority_experiment(opts);
    if (name == "best-response") return best_response_experiment(opts);
    if (name == "verify-ne") return verify_ne_experiment(opts);
    if (name == "analyze") return analyze_experiment(opts);
    if (name == "noise") return noise_experiment(opts);

    std::string known;
    for (const auto& n : experiment_names()) {
        if (!known.empty()) known += ", ";
        known += n;
    }
    throw UsageError("unknown experiment '" + name + "' (available: " + known + ")");
}

}  // namespace qgames
