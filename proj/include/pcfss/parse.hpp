#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "pcfss/prims.hpp"
#include "pcfss/syntax.hpp"

namespace pcfss {

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, const std::string& msg);
  SourcePos pos() const { return pos_; }
  const std::string& detail() const { return detail_; }

 private:
  SourcePos pos_;
  std::string detail_;
};

Term parse_program(std::string_view source, const PrimRegistry& prims = builtin_prims());
Type parse_type(std::string_view source);

std::string print_term(const Term& t, const PrimRegistry& prims = builtin_prims());
std::string print_value(const Value& v, const PrimRegistry& prims = builtin_prims());
// Shortest round-tripping decimal, always with a '.' (or nan/inf).
std::string format_real(double a);

}  // namespace pcfss
