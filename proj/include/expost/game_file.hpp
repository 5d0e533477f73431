#pragma once

#include <string>

#include "expost/game.hpp"

namespace expost {

/// Malformed document: bad syntax, wrong types, floats, unparsable rationals.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed document whose contents break a game or belief invariant.
/// The message names the offending key.
class FileInvariantViolation : public Error {
 public:
  using Error::Error;
};

struct GameFile {
  Game game;
  Belief prior;
};

/// JSON object with keys actions, states, sender_utility, receiver_utility
/// and prior. Numbers are integers or "p/q" strings.
GameFile parse_game_file(const std::string& text);
GameFile load_game_file(const std::string& path);

/// Inverse of parse_game_file; every number is written as a "p/q" string.
std::string serialize_game_file(const GameFile& file);

}  // namespace expost
