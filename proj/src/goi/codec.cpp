#include "pcfss/goi/codec.hpp"

#include <cmath>
#include <stdexcept>

namespace pcfss::goi {

const char* to_string(CodecError e) {
  switch (e) {
    case CodecError::UnknownTag: return "UnknownTag";
    case CodecError::Malformed: return "Malformed";
    case CodecError::Truncated: return "Truncated";
    case CodecError::ShapeMismatch: return "ShapeMismatch";
  }
  return "?";
}

namespace {

constexpr double kExact = 9007199254740992.0;  // 2^53
const Nat kExactNat = Nat(1) << 53;

constexpr double kSeq = 0, kIdx = 1, kInL = 2, kInR = 3, kStar = 4, kWTrace = 5;

void encode_nat(const Nat& n, std::vector<double>& out) {
  if (n < kExactNat) {
    out.push_back(static_cast<double>(n.convert_to<std::uint64_t>()));
    return;
  }
  std::vector<double> limbs;
  Nat rest = n;
  while (rest > 0) {
    limbs.push_back(static_cast<double>((rest & 0xffffffffu).convert_to<std::uint64_t>()));
    rest >>= 32;
  }
  out.push_back(-static_cast<double>(limbs.size()));
  out.insert(out.end(), limbs.begin(), limbs.end());
}

bool is_count(double x) { return x >= 0 && x < kExact && std::floor(x) == x; }

}  // namespace

void encode_token(const Token& t, std::vector<double>& out) {
  switch (t.kind()) {
    case Token::Kind::Seq:
      out.push_back(kSeq);
      out.push_back(static_cast<double>(t.reals().size()));
      out.insert(out.end(), t.reals().begin(), t.reals().end());
      return;
    case Token::Kind::Idx:
      out.push_back(kIdx);
      encode_nat(t.index(), out);
      encode_token(t.sub(), out);
      return;
    case Token::Kind::InL:
      out.push_back(kInL);
      encode_token(t.sub(), out);
      return;
    case Token::Kind::InR:
      out.push_back(kInR);
      encode_token(t.sub(), out);
      return;
    case Token::Kind::Star: out.push_back(kStar); return;
    case Token::Kind::WTrace:
      out.push_back(kWTrace);
      out.push_back(t.weight());
      out.push_back(static_cast<double>(t.reals().size()));
      out.insert(out.end(), t.reals().begin(), t.reals().end());
      return;
  }
}

namespace {

std::variant<Nat, CodecError> decode_nat(std::span<const double> s, std::size_t& pos) {
  if (pos >= s.size()) return CodecError::Truncated;
  double head = s[pos++];
  if (is_count(head)) return Nat(static_cast<std::uint64_t>(head));
  if (!(head < 0) || std::floor(head) != head || head < -1e6) return CodecError::Malformed;
  auto k = static_cast<std::size_t>(-head);
  if (k < 2) return CodecError::Malformed;
  if (s.size() - pos < k) return CodecError::Truncated;
  Nat n = 0;
  for (std::size_t i = k; i-- > 0;) {
    double limb = s[pos + i];
    if (!(limb >= 0 && limb < 4294967296.0) || std::floor(limb) != limb) return CodecError::Malformed;
    if (i == k - 1 && limb == 0) return CodecError::Malformed;
    n = (n << 32) + static_cast<std::uint64_t>(limb);
  }
  pos += k;
  if (n < kExactNat) return CodecError::Malformed;
  return n;
}

std::variant<std::vector<double>, CodecError> decode_reals(std::span<const double> s,
                                                           std::size_t& pos) {
  if (pos >= s.size()) return CodecError::Truncated;
  double len = s[pos++];
  if (!is_count(len)) return CodecError::Malformed;
  auto n = static_cast<std::size_t>(len);
  if (s.size() - pos < n) return CodecError::Truncated;
  std::vector<double> xs(s.begin() + static_cast<std::ptrdiff_t>(pos),
                         s.begin() + static_cast<std::ptrdiff_t>(pos + n));
  pos += n;
  return xs;
}

}  // namespace

std::variant<Token, CodecError> decode_token(std::span<const double> s, std::size_t& pos) {
  if (pos >= s.size()) return CodecError::Truncated;
  double tag = s[pos++];
  if (tag == kSeq) {
    auto xs = decode_reals(s, pos);
    if (auto* e = std::get_if<CodecError>(&xs)) return *e;
    return Token::seq(std::move(std::get<std::vector<double>>(xs)));
  }
  if (tag == kIdx) {
    auto n = decode_nat(s, pos);
    if (auto* e = std::get_if<CodecError>(&n)) return *e;
    auto sub = decode_token(s, pos);
    if (auto* e = std::get_if<CodecError>(&sub)) return *e;
    return Token::idx(std::move(std::get<Nat>(n)), std::move(std::get<Token>(sub)));
  }
  if (tag == kInL || tag == kInR) {
    auto sub = decode_token(s, pos);
    if (auto* e = std::get_if<CodecError>(&sub)) return *e;
    Token t = std::move(std::get<Token>(sub));
    return tag == kInL ? Token::inl(std::move(t)) : Token::inr(std::move(t));
  }
  if (tag == kStar) return Token::star();
  if (tag == kWTrace) {
    if (pos >= s.size()) return CodecError::Truncated;
    double w = s[pos++];
    auto xs = decode_reals(s, pos);
    if (auto* e = std::get_if<CodecError>(&xs)) return *e;
    return Token::wtrace(w, std::move(std::get<std::vector<double>>(xs)));
  }
  return CodecError::UnknownTag;
}

std::vector<double> codec_encode(const Shape& sh, const Token& t) {
  if (!validate(sh, Polarity::Neg, t))
    throw std::invalid_argument("codec_encode: " + t.str() + " is not a backward token of " +
                                sh.str());
  std::vector<double> out;
  encode_token(t, out);
  return out;
}

std::variant<Decoded, CodecError> codec_decode(const Shape& sh, std::span<const double> s) {
  std::size_t pos = 0;
  auto t = decode_token(s, pos);
  if (auto* e = std::get_if<CodecError>(&t)) return *e;
  Token tok = std::move(std::get<Token>(t));
  if (!validate(sh, Polarity::Neg, tok)) return CodecError::ShapeMismatch;
  return Decoded{std::move(tok), std::vector<double>(s.begin() + static_cast<std::ptrdiff_t>(pos), s.end())};
}

}  // namespace pcfss::goi
