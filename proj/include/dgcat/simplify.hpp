#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dgcat/presentation.hpp"

namespace dgcat {

// Outcome of one rewrite. images[g] is the new form of old generator g and
// object_map sends old objects to new ones, so old elements can be carried
// along with transport().
struct MoveResult {
  DgPresentation result;
  std::vector<Element> images;
  std::vector<ObjIndex> object_map;
  std::vector<std::string> removed;
  std::map<std::string, std::string> renamed;
};

Element transport(const MoveResult& m, const Element& e);

// Merges the target of an invertible t into its source; t and its inverse
// become identities, the three homotopies become 0.
MoveResult identify_objects(const DgPresentation& p, const std::string& t);

// Replaces v by u*v + w, u = +1 or -1. w may not mention v or any generator
// whose differential depends on v.
MoveResult change_of_variables(const DgPresentation& p, const std::string& v, int u, const Element& w);

// dt = e*g + w with e = +1 or -1: deletes g and t, sends g to -e*w and t to 0.
MoveResult cancel_pair(const DgPresentation& p, const std::string& g, const std::string& t);

// Removes the localization record whose inverse is `inverse` when its base f
// is already invertible up to homotopy: f*g - 1 = d(h_right) and
// g*f - 1 = d(h_left). Its four generators must not occur anywhere else.
MoveResult drop_localization(const DgPresentation& p, const std::string& inverse, const Element& g,
                             const Element& h_right, const Element& h_left);

MoveResult rename_generator(const DgPresentation& p, const std::string& from, const std::string& to);
MoveResult rename_object(const DgPresentation& p, const std::string& from, const std::string& to);

// A move by name with JSON arguments; element arguments are strings in the
// element grammar of the presentation the move is applied to.
struct Move {
  std::string name;
  nlohmann::json args;
};

MoveResult apply_move(const DgPresentation& p, const Move& move);

struct RewriteRecord {
  std::string move;
  nlohmann::json args;
  std::vector<std::string> generators_removed;
  std::map<std::string, std::string> generators_renamed;
};

using RewriteLog = std::vector<RewriteRecord>;

struct Step {
  enum class Kind { identify_phase, greedy, move };
  Kind kind = Kind::greedy;
  Move move;

  static Step identify() { return {Kind::identify_phase, {}}; }
  static Step greedy() { return {Kind::greedy, {}}; }
  static Step scripted(std::string name, nlohmann::json args) { return {Kind::move, {std::move(name), std::move(args)}}; }
};

using Strategy = std::vector<Step>;

struct SimplifyResult {
  DgPresentation result;
  RewriteLog log;
  std::vector<Element> images;  // original generators in the result
  std::vector<ObjIndex> object_map;
};

// Runs the steps in order. The greedy step repeats identification,
// cancellation and removal of redundant localizations until nothing applies,
// always taking the first eligible move in declaration order.
SimplifyResult simplify(const DgPresentation& p, const Strategy& strategy = {Step::greedy()});

Element transport(const SimplifyResult& s, const Element& e);

SimplifyResult replay(const DgPresentation& p, const RewriteLog& log);

nlohmann::json log_to_json(const RewriteLog& log);
RewriteLog log_from_json(const nlohmann::json& j);
Strategy strategy_from_json(const nlohmann::json& j);

}  // namespace dgcat
