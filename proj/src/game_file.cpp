#include "qgames/game_file.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

namespace qgames {

namespace {

using nlohmann::json;

const json& require_key(const json& doc, const char* key) {
    if (!doc.contains(key))
        throw GameFileError(std::string("game file: missing key '") + key + "'");
    return doc.at(key);
}

int require_int(const json& doc, const char* key) {
    const json& v = require_key(doc, key);
    if (!v.is_number_integer())
        throw GameFileError(std::string("game file: key '") + key + "' must be an integer");
    return v.get<int>();
}

}  // namespace

GameSpec parse_game_file(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw GameFileError(std::string("game file: ") + e.what());
    }
    if (!doc.is_object())
        throw GameFileError("game file: top level must be a JSON object");

    const int players = require_int(doc, "players");
    if (players < 1 || players > 10)
        throw GameFileError("game file: key 'players' must be in [1, 10]");

    const json& moves_json = require_key(doc, "moves");
    if (!moves_json.is_array() || static_cast<int>(moves_json.size()) != players)
        throw GameFileError("game file: key 'moves' must list one move count per player");
    std::vector<int> moves;
    for (const auto& m : moves_json) {
        if (!m.is_number_integer() || m.get<int>() < 2)
            throw GameFileError("game file: key 'moves' entries must be integers >= 2");
        moves.push_back(m.get<int>());
    }

    long long outcomes = 1;
    for (int m : moves) outcomes *= m;
    const json& payoffs_json = require_key(doc, "payoffs");
    if (!payoffs_json.is_array())
        throw GameFileError("game file: key 'payoffs' must be an array");
    if (static_cast<long long>(payoffs_json.size()) != outcomes)
        throw GameFileError("game file: key 'payoffs' must list " +
                            std::to_string(outcomes) +
                            " outcome rows in row-major order, got " +
                            std::to_string(payoffs_json.size()));
    std::vector<std::vector<double>> table;
    table.reserve(payoffs_json.size());
    for (const auto& row : payoffs_json) {
        if (!row.is_array() || static_cast<int>(row.size()) != players)
            throw GameFileError("game file: every 'payoffs' row needs one number per player");
        std::vector<double> payoffs;
        for (const auto& v : row) {
            if (!v.is_number())
                throw GameFileError("game file: 'payoffs' entries must be numbers");
            payoffs.push_back(v.get<double>());
        }
        table.push_back(std::move(payoffs));
    }

    PayoffTable payoff_table(moves, std::move(table));

    const json& variant_json = require_key(doc, "variant");
    if (!variant_json.is_string())
        throw GameFileError("game file: key 'variant' must be a string");
    const std::string variant = variant_json.get<std::string>();

    if (variant == "eisert") {
        constexpr double half_pi = 1.5707963267948966;
        double gamma = half_pi;
        if (doc.contains("gamma")) {
            if (!doc.at("gamma").is_number())
                throw GameFileError("game file: key 'gamma' must be a number");
            gamma = doc.at("gamma").get<double>();
            // tolerate rounded boundary values such as 1.5708
            if (gamma < -1e-4 || gamma > half_pi + 1e-4)
                throw GameFileError("game file: key 'gamma' out of [0, pi/2]");
            gamma = std::clamp(gamma, 0.0, half_pi);
        }
        try {
            return GameSpec::eisert(std::move(payoff_table), gamma);
        } catch (const std::invalid_argument& e) {
            throw GameFileError(std::string("game file: ") + e.what());
        }
    }
    if (variant == "marinatto-weber") {
        const json& init = require_key(doc, "initial_state");
        if (!init.is_array())
            throw GameFileError("game file: key 'initial_state' must list [re, im] pairs");
        std::vector<Amplitude> amps;
        for (const auto& pair : init) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
                !pair[1].is_number())
                throw GameFileError("game file: 'initial_state' entries must be [re, im] pairs");
            amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
        }
        try {
            return GameSpec::marinatto_weber(std::move(payoff_table),
                                             StateVector(moves, std::move(amps)));
        } catch (const std::invalid_argument& e) {
            throw GameFileError(std::string("game file: initial_state: ") + e.what());
        }
    }
    throw GameFileError("game file: key 'variant' must be 'eisert' or 'marinatto-weber'");
}

}  // namespace qgames
