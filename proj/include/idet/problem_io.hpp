#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "idet/problem.hpp"

namespace idet {

// Parses a problem file:
//
//   # comment
//   vars = x y z
//   psi = [ x, y ]
//   H = [ [1, 0], [0, z] ]
//   Y = origin                      (or: Y = charts [ (s) -> (0, 0, s) ])
//   xcharts = [ (t) -> (0, 0, t) ]
//   syzygies = [ (y, -x) ]          (optional)
//
// A statement continues over line breaks while brackets are open. Polynomials
// use rational literals, the declared variables, + - * ^ and parentheses.
// Y defaults to origin; xcharts and syzygies default to empty. The result is
// validated; every failure is an InputError with a code and a 1-based
// line/column.
ProblemSpec parse_problem(std::string_view text, std::string id = "problem");

// Parses a single polynomial in the given variables (same grammar).
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> vars);

// Reads and parses a file; the id is the file name without extension.
ProblemSpec load_problem(const std::filesystem::path& path);

// Canonical text form; parse_problem(serialize(s), s.id) == s.
std::string serialize(const ProblemSpec& spec);

}  // namespace idet
