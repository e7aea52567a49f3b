#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qgames/experiment.hpp"
#include "qgames/game_file.hpp"

namespace {

qgames::Su2Params parse_triple(const std::string& text) {
    double t = 0, a = 0, b = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &t, &a, &b, &extra) != 3)
        throw qgames::UsageError("expected 'theta,alpha,beta' in radians, got '" +
                                 text + "'");
    return {t, a, b};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qgames::UsageError("cannot open game file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::map<std::string, std::string> kDescriptions{
    {"penny-flip", "coin game win probabilities for quantum and classical moves"},
    {"pd", "one-shot entangled prisoners' dilemma payoff for fixed strategies"},
    {"miracle-curve", "payoffs of the miracle move against classical mixtures"},
    {"critical-gamma", "entanglement threshold where defection stops paying"},
    {"gamma-sweep", "payoffs of a fixed move pair across entanglement levels"},
    {"mixed-ne", "verify the equal-weight mixed-strategy equilibrium family"},
    {"restricted-ne", "symmetric equilibrium search with beta fixed at zero"},
    {"minority", "minority game payoffs, classical or quantum symmetric search"},
    {"best-response", "best reply of Bob against a fixed Alice strategy"},
    {"verify-ne", "deviation-gain check of a pure strategy pair"},
    {"analyze", "classical payoff matrix analysis (NE, Pareto, dominance)"},
    {"noise", "payoffs under bit-flip decoherence of increasing strength"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum game protocols and equilibrium search"};
    app.require_subcommand(1);

    std::string format = "csv";
    unsigned seed = 1;
    double gamma = 1.5707963267948966;
    std::string alice_str, bob_str, game_path;
    int points = 21;
    int players = 4;
    bool quantum = false;

    for (const auto& name : qgames::experiment_names()) {
        auto it = kDescriptions.find(name);
        auto* sub = app.add_subcommand(name, it->second);
        sub->add_option("--format", format, "output format: csv or json");
        sub->add_option("--seed", seed, "seed recorded in the result metadata");
        sub->add_option("--gamma", gamma, "entanglement parameter in [0, pi/2], radians");
        sub->add_option("--alice", alice_str, "Alice's strategy 'theta,alpha,beta' (radians)");
        sub->add_option("--bob", bob_str, "Bob's strategy 'theta,alpha,beta' (radians)");
        sub->add_option("--points", points, "number of sweep points");
        sub->add_option("--game", game_path, "JSON game file overriding the built-in game");
        if (name == "minority") {
            sub->add_option("--players", players, "number of players (3 or 4)");
            sub->add_flag("--quantum", quantum, "search quantum symmetric strategies");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.get_name() << ": " << e.what() << '\n';
        return 1;
    }

    try {
        constexpr double half_pi = 1.5707963267948966;
        if (gamma < -1e-4 || gamma > half_pi + 1e-4)
            throw qgames::UsageError("--gamma must lie in [0, pi/2] (radians)");
        qgames::ExperimentOptions opts;
        opts.gamma = std::min(std::max(gamma, 0.0), half_pi);
        if (!alice_str.empty()) opts.alice = parse_triple(alice_str);
        if (!bob_str.empty()) opts.bob = parse_triple(bob_str);
        opts.points = points;
        opts.seed = seed;
        opts.players = players;
        opts.quantum = quantum;
        opts.search.seed = seed;
        if (!game_path.empty())
            opts.game = qgames::parse_game_file(read_file(game_path));

        const qgames::OutputFormat out_format = qgames::parse_format(format);
        const std::string name = app.get_subcommands().front()->get_name();
        std::cout << qgames::emit(qgames::run_experiment(name, opts), out_format);
        return 0;
    } catch (const qgames::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const qgames::GameFileError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
