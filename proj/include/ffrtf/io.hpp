// SPDX-License-Identifier: MIT
#ifndef FFRTF_IO_HPP
#define FFRTF_IO_HPP

#include "ffrtf/curve.hpp"

#include <istream>
#include <map>
#include <string>

namespace ffrtf {

// key = value lines; '#' starts a comment
std::map<std::string, std::string> parse_key_values(std::istream& in);

CurveSpec parse_curve_spec(std::istream& in);
CurveSpec load_curve_spec(const std::string& path);
std::string format_curve_spec(const CurveSpec& spec);

std::vector<long> parse_integers(const std::string& s);
std::vector<Rational> parse_rationals(const std::string& s);

// directory holding the bundled fixtures
std::string data_dir();

} // namespace ffrtf

#endif
