#pragma once

#include <span>
#include <variant>
#include <vector>

#include "pcfss/goi/token.hpp"

namespace pcfss::goi {

// Prefix encoding of tokens as real sequences, one tag real per node:
//   0 Seq    len, payload...
//   1 Idx    index, nested      (index >= 2^53: -k, then k 32-bit limbs, low first)
//   2 InL    nested
//   3 InR    nested
//   4 Star
//   5 WTrace weight, len, trace...
enum class CodecError { UnknownTag, Malformed, Truncated, ShapeMismatch };
const char* to_string(CodecError e);

struct Decoded {
  Token tok;
  std::vector<double> rest;
};

// t must be a backward (negative) token of sh; throws std::invalid_argument otherwise.
std::vector<double> codec_encode(const Shape& sh, const Token& t);
std::variant<Decoded, CodecError> codec_decode(const Shape& sh, std::span<const double> s);

// Shape-free halves of the above.
void encode_token(const Token& t, std::vector<double>& out);
std::variant<Token, CodecError> decode_token(std::span<const double> s, std::size_t& pos);

}  // namespace pcfss::goi
