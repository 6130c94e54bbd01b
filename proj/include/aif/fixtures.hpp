#pragma once

#include <map>

#include "aif/emit.hpp"

namespace aif {

// A parsed system description: group, subgroup and set oracles, optional
// graph of groups with its tree ball, budgets, and tagged expectations.
struct Fixture {
  std::string name;
  std::string path;
  GroupPtr group;
  std::map<std::string, SubgroupPtr> subgroups;
  std::map<std::string, AISetPtr> sets;
  GroupSystem system;
  std::shared_ptr<const GraphOfGroups> gog;
  std::shared_ptr<const TreeBall> tree;
  Budget budget;
  std::vector<Word> translate_generators;  // empty: use the ball
  std::string raw_expectations;            // JSON array text

  SubgroupPtr subgroup(const std::string& n) const;
  // Set lookup; supports "name@word" for a translate and "name*" for the
  // complement.
  AISetPtr set(const std::string& n) const;
  std::vector<Word> wall_translates(const Context& ctx) const;
};

Fixture load_fixture(const std::string& path);

struct CheckOutcome {
  std::string check;
  std::string expected;
  std::string actual;
  std::string source;  // provenance tag from the file
  bool pass = false;
  bool inconclusive = false;  // got inconclusive where a definite value was expected
};

struct RunReport {
  std::string schema = "aiset-forge/report-v1";
  std::string command;
  std::string fixture;
  Budget budget;
  std::vector<CheckOutcome> checks;
  long long timing_ms = -1;  // -1: omitted for byte-stable reports

  int exit_code() const;
  std::string to_json() const;
};

// Evaluate one named check against a fixture. Returns the actual value as
// a string (the comparison format).
std::string evaluate_check(const Fixture& fx, Context& ctx, const std::string& check,
                           const std::vector<std::string>& args);

RunReport run_expectations(const Fixture& fx, Context& ctx);

}  // namespace aif
