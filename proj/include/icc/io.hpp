#pragma once

#include <iosfwd>
#include <string>

#include "icc/model.hpp"

namespace icc {

// Profile text format: line 1 is "n m"; each of the next n lines holds m
// whitespace-separated 0-based candidate ids, most-preferred first.
//
// Score-matrix text format: line 1 is "scores n m"; each of the next n lines
// holds m decimal floats written with the shortest representation that
// round-trips, so write/read/write is byte-identical.

void write_profile(std::ostream& out, const Profile& profile);
Profile read_profile(std::istream& in);

void write_score_matrix(std::ostream& out, const ScoreMatrix& scores);
ScoreMatrix read_score_matrix(std::istream& in);

void save_profile(const std::string& path, const Profile& profile);
Profile load_profile(const std::string& path);
void save_score_matrix(const std::string& path, const ScoreMatrix& scores);
ScoreMatrix load_score_matrix(const std::string& path);

// Shortest decimal form of x that parses back to exactly x.
std::string format_double(double x);

}  // namespace icc
