#include "expost/game_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace expost {

namespace {

using nlohmann::json;

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  return doc.at(key);
}

Rational read_number(const json& value, const std::string& where) {
  if (value.is_number_integer()) {
    return value.is_number_unsigned() ? Rational(std::to_string(value.get<unsigned long long>()))
                                      : Rational(std::to_string(value.get<long long>()));
  }
  if (value.is_number_float()) {
    throw ParseError(where + ": floating-point numbers are not accepted, write \"p/q\"");
  }
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ParseError(where + ": '" + value.get<std::string>() + "' is not a rational");
    }
  }
  throw ParseError(where + ": expected an integer or a \"p/q\" string");
}

Vector read_vector(const json& value, const std::string& where) {
  if (!value.is_array()) throw ParseError(where + ": expected an array");
  Vector out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(read_number(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Matrix read_matrix(const json& value, const std::string& where) {
  if (!value.is_array()) throw ParseError(where + ": expected an array of rows");
  Matrix out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(read_vector(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::string> read_labels(const json& value, const std::string& where) {
  if (!value.is_array()) throw ParseError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_string()) {
      throw ParseError(where + "[" + std::to_string(i) + "]: expected a string");
    }
    out.push_back(value[i].get<std::string>());
  }
  return out;
}

void check_shape(const Matrix& m, std::size_t rows, std::size_t cols, const char* key) {
  if (m.size() != rows) {
    throw FileInvariantViolation(std::string(key) + ": " + std::to_string(m.size()) +
                                 " rows but there are " + std::to_string(rows) + " actions");
  }
  for (std::size_t i = 0; i < rows; ++i) {
    if (m[i].size() != cols) {
      throw FileInvariantViolation(std::string(key) + "[" + std::to_string(i) + "]: " +
                                   std::to_string(m[i].size()) + " entries but there are " +
                                   std::to_string(cols) + " states");
    }
  }
}

json write_vector(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

}  // namespace

GameFile parse_game_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("top level must be an object");

  auto actions = read_labels(require(doc, "actions"), "actions");
  auto states = read_labels(require(doc, "states"), "states");
  Matrix sender = read_matrix(require(doc, "sender_utility"), "sender_utility");
  Matrix receiver = read_matrix(require(doc, "receiver_utility"), "receiver_utility");
  Vector prior = read_vector(require(doc, "prior"), "prior");

  if (actions.empty()) throw FileInvariantViolation("actions: at least one action is required");
  if (states.empty()) throw FileInvariantViolation("states: at least one state is required");
  check_shape(sender, actions.size(), states.size(), "sender_utility");
  check_shape(receiver, actions.size(), states.size(), "receiver_utility");
  if (prior.size() != states.size()) {
    throw FileInvariantViolation("prior: " + std::to_string(prior.size()) +
                                 " entries but there are " + std::to_string(states.size()) +
                                 " states");
  }
  for (std::size_t i = 0; i < prior.size(); ++i) {
    if (sgn(prior[i]) < 0) {
      throw FileInvariantViolation("prior[" + std::to_string(i) + "]: negative probability");
    }
  }
  if (sum(prior) != 1) {
    throw FileInvariantViolation("prior: entries sum to " + to_string(sum(prior)) +
                                 ", must be normalised to 1");
  }
  return {Game(std::move(actions), std::move(states), std::move(sender), std::move(receiver)),
          Belief(std::move(prior))};
}

GameFile load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_game_file(buffer.str());
}

std::string serialize_game_file(const GameFile& file) {
  json doc;
  doc["actions"] = file.game.actions;
  doc["states"] = file.game.states;
  doc["sender_utility"] = json::array();
  for (const auto& row : file.game.sender) doc["sender_utility"].push_back(write_vector(row));
  doc["receiver_utility"] = json::array();
  for (const auto& row : file.game.receiver) doc["receiver_utility"].push_back(write_vector(row));
  doc["prior"] = write_vector(file.prior.probabilities());
  return doc.dump(2) + "\n";
}

}  // namespace expost
