#pragma once

#include <stdexcept>
#include <string>

#include "qgames/protocol.hpp"

namespace qgames {

/// Raised when a game file cannot be parsed into a valid GameSpec; the
/// message names the offending key or position.
class GameFileError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parses a JSON game description:
///   {
///     "players": 2,
///     "moves": [2, 2],
///     "payoffs": [[3,3],[0,5],[5,0],[1,1]],   // row-major outcome order
///     "variant": "eisert" | "marinatto-weber",
///     "gamma": 1.5707963267948966,            // eisert only
///     "initial_state": [[re,im], ...]          // marinatto-weber only
///   }
GameSpec parse_game_file(const std::string& text);

}  // namespace qgames
