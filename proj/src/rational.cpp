#include "schedsim/rational.hpp"

#include <cctype>

namespace schedsim {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

std::optional<Rat> parse_rational(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) return std::nullopt;

  Rat out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    BigInt d{std::string(den)};
    if (d == 0) return std::nullopt;
    out = Rat(BigInt(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (!all_digits(ip) || !all_digits(fp)) return std::nullopt;
    BigInt scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    BigInt v = BigInt(std::string(ip)) * scale + BigInt(std::string(fp));
    out = Rat(v, scale);
  } else {
    if (!all_digits(s)) return std::nullopt;
    out = Rat(BigInt(std::string(s)));
  }
  if (negative) out = -out;
  return out;
}

namespace {

// Shared long-division core: integer part, then up to max_digits fraction
// digits. Reports whether the expansion terminated.
struct Expansion {
  std::string text;
  bool exact;
};

Expansion expand(const Rat& r, unsigned max_digits) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  bool neg = num < 0;
  if (neg) num = -num;

  BigInt whole = num / den;
  BigInt rem = num % den;

  std::string digits;
  for (unsigned i = 0; i < max_digits && rem != 0; ++i) {
    rem *= 10;
    BigInt d = rem / den;
    rem %= den;
    digits.push_back(static_cast<char>('0' + d.convert_to<int>()));
  }
  bool exact = rem == 0;
  if (!exact) {
    // round half-up on the dropped remainder
    if (rem * 2 >= den) {
      int i = static_cast<int>(digits.size()) - 1;
      for (; i >= 0; --i) {
        if (digits[static_cast<std::size_t>(i)] != '9') {
          ++digits[static_cast<std::size_t>(i)];
          break;
        }
        digits[static_cast<std::size_t>(i)] = '0';
      }
      if (i < 0) whole += 1;
    }
  }
  while (!digits.empty() && digits.back() == '0') digits.pop_back();

  std::string text = whole.str();
  if (!digits.empty()) text += "." + digits;
  if (neg && (whole != 0 || !digits.empty())) text.insert(text.begin(), '-');
  return {text, exact};
}

}  // namespace

std::string format_rational(const Rat& r, unsigned max_frac_digits) {
  return expand(r, max_frac_digits).text;
}

std::optional<std::string> exact_decimal(const Rat& r, unsigned max_frac_digits) {
  Expansion e = expand(r, max_frac_digits);
  if (!e.exact) return std::nullopt;
  return e.text;
}

std::string lossless_string(const Rat& r) {
  if (auto d = exact_decimal(r)) return *d;
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

}  // namespace schedsim
