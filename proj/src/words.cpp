#include "bexp/words.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace bexp {

std::string to_string(const ExtNat& n) {
  return n.infinite ? "inf" : std::to_string(n.value);
}

static void check_alphabet(Digit m) {
  if (m < 1 || m > kMaxAlphabet) throw Error("alphabet_max out of range");
}

static void check_digits(const std::vector<Digit>& d, Digit m) {
  for (Digit x : d)
    if (x < 0 || x > m) throw Error("digit out of range for alphabet");
}

DigitWord::DigitWord(Digit alphabet_max, std::vector<Digit> digits)
    : m(alphabet_max), d(std::move(digits)) {
  check_alphabet(m);
  check_digits(d, m);
}

int word_compare(const DigitWord& a, const DigitWord& b) {
  if (a.m != b.m) throw Error("word_compare: alphabet mismatch");
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a.d[i] != b.d[i]) return a.d[i] < b.d[i] ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

DigitWord reflect(const DigitWord& w) {
  DigitWord r = w;
  for (Digit& x : r.d) x = w.m - x;
  return r;
}

DigitWord bump_last(const DigitWord& w, int direction) {
  if (w.empty()) throw BumpOutOfRange("bump_last on empty word");
  if (direction != 1 && direction != -1) throw Error("bump_last: direction must be +1 or -1");
  DigitWord r = w;
  Digit& last = r.d.back();
  if (direction == 1 && last >= w.m) throw BumpOutOfRange();
  if (direction == -1 && last <= 0) throw BumpOutOfRange();
  last += direction;
  return r;
}

DigitWord concat(const DigitWord& a, const DigitWord& b) {
  if (a.m != b.m) throw Error("concat: alphabet mismatch");
  DigitWord r = a;
  r.d.insert(r.d.end(), b.d.begin(), b.d.end());
  return r;
}

DigitWord repeat_word(const DigitWord& w, size_t times) {
  DigitWord r(w.m, {});
  r.d.reserve(w.size() * times);
  for (size_t t = 0; t < times; ++t) r.d.insert(r.d.end(), w.d.begin(), w.d.end());
  return r;
}

bool all_digits_equal(const DigitWord& w, Digit v) {
  return std::all_of(w.d.begin(), w.d.end(), [v](Digit x) { return x == v; });
}

int thue_morse(uint64_t i) { return std::popcount(i) & 1; }

DigitWord c_block(const DigitWord& c0_minus, int level) {
  if (c0_minus.empty()) throw Error("c_block: empty generator");
  if (level < 0) throw Error("c_block: negative level");
  if ((static_cast<uint64_t>(c0_minus.size()) << level) > (1u << 22))
    throw LengthGuard("c_block: block too long");
  DigitWord w = bump_last(c0_minus, +1);
  for (int l = 0; l < level; ++l) w = concat(w, bump_last(reflect(w), +1));
  return w;
}

// ---------------------------------------------------------------------------
// DigitStream

// Canonical form: primitive period, then absorb matching trailing preperiod
// digits into a rotation of the period.
static void canonicalize(std::vector<Digit>& pre, std::vector<Digit>& per) {
  if (per.empty()) throw Error("eventually periodic stream needs a nonempty period");
  for (size_t len = 1; len < per.size(); ++len) {
    if (per.size() % len != 0) continue;
    bool ok = true;
    for (size_t i = len; i < per.size() && ok; ++i) ok = per[i] == per[i - len];
    if (ok) {
      per.resize(len);
      break;
    }
  }
  while (!pre.empty() && pre.back() == per.back()) {
    per.insert(per.begin(), per.back());
    per.pop_back();
    pre.pop_back();
  }
}

DigitStream DigitStream::eventually_periodic(const DigitWord& preperiod, const DigitWord& period) {
  if (preperiod.m != period.m) throw Error("stream: alphabet mismatch");
  DigitStream s;
  s.m = period.m;
  s.kind = Kind::EventuallyPeriodic;
  s.pre = preperiod.d;
  s.per = period.d;
  canonicalize(s.pre, s.per);
  return s;
}

DigitStream DigitStream::periodic(const DigitWord& period) {
  return eventually_periodic(DigitWord(period.m, {}), period);
}

DigitStream DigitStream::word_then_zeros(const DigitWord& w) {
  return eventually_periodic(w, DigitWord(w.m, {0}));
}

DigitStream DigitStream::constant(Digit alphabet_max, Digit v) {
  return periodic(DigitWord(alphabet_max, {v}));
}

DigitStream DigitStream::thue_morse_derived(Digit alphabet_max) {
  check_alphabet(alphabet_max);
  DigitStream s;
  s.m = alphabet_max;
  s.kind = Kind::ThueMorseDerived;
  s.tm_odd = (alphabet_max % 2) == 1;
  s.tm_k = alphabet_max / 2;
  return s;
}

DigitStream DigitStream::c_limit(const DigitWord& c0_minus) {
  if (c0_minus.empty()) throw Error("c_limit: empty generator");
  if (c0_minus.d.back() >= c0_minus.m) throw BumpOutOfRange("c_limit: generator last digit must be < m");
  DigitStream s;
  s.m = c0_minus.m;
  s.kind = Kind::CLimit;
  s.climit_gen = c0_minus.d;
  return s;
}

// Base digits of a generator stream, 1-based, before modifiers.
static Digit tm_body_digit(const DigitStream& s, uint64_t i) {
  if (s.tm_odd) return s.tm_k + thue_morse(i);
  return s.tm_k + thue_morse(i) - thue_morse(i - 1);
}

static std::vector<Digit> climit_body(const DigitStream& s, uint64_t count) {
  DigitWord w = c_block(DigitWord(s.m, s.climit_gen), 0);
  while (w.size() < count) w = concat(w, bump_last(reflect(w), +1));
  return w.d;
}

Digit DigitStream::at(uint64_t i) const {
  if (i == 0) throw Error("stream index is 1-based");
  if (kind == Kind::EventuallyPeriodic) {
    if (i <= pre.size()) return pre[i - 1];
    return per[(i - pre.size() - 1) % per.size()];
  }
  if (i <= prefix.size()) return prefix[i - 1];
  uint64_t j = i - prefix.size() + offset;
  Digit v;
  if (kind == Kind::ThueMorseDerived) {
    v = tm_body_digit(*this, j);
  } else {
    v = climit_body(*this, j)[j - 1];
  }
  return reflected ? m - v : v;
}

DigitWord DigitStream::take(size_t n) const {
  DigitWord out(m, {});
  out.d.reserve(n);
  if (kind == Kind::EventuallyPeriodic) {
    for (size_t i = 1; i <= n; ++i) out.d.push_back(at(i));
    return out;
  }
  size_t npre = std::min(n, prefix.size());
  out.d.assign(prefix.begin(), prefix.begin() + npre);
  size_t rest = n - npre;
  if (rest > 0) {
    if (kind == Kind::ThueMorseDerived) {
      for (uint64_t j = offset + 1; j <= offset + rest; ++j)
        out.d.push_back(tm_body_digit(*this, j));
    } else {
      std::vector<Digit> body = climit_body(*this, offset + rest);
      out.d.insert(out.d.end(), body.begin() + offset, body.begin() + offset + rest);
    }
    if (reflected)
      for (size_t i = npre; i < out.d.size(); ++i) out.d[i] = m - out.d[i];
  }
  return out;
}

bool DigitStream::is_infinite_sequence() const {
  if (kind == Kind::EventuallyPeriodic) return !(per.size() == 1 && per[0] == 0);
  // Generator bodies never end in 0^inf or m^inf, so reflection keeps this.
  return true;
}

DigitStream reflect(const DigitStream& s) {
  DigitStream r = s;
  if (s.kind == DigitStream::Kind::EventuallyPeriodic) {
    for (Digit& x : r.pre) x = s.m - x;
    for (Digit& x : r.per) x = s.m - x;
    return r;
  }
  r.reflected = !s.reflected;
  for (Digit& x : r.prefix) x = s.m - x;
  return r;
}

DigitStream shift(const DigitStream& s, uint64_t n) {
  if (n == 0) return s;
  if (s.kind == DigitStream::Kind::EventuallyPeriodic) {
    std::vector<Digit> pre = s.pre, per = s.per;
    if (n <= pre.size()) {
      pre.erase(pre.begin(), pre.begin() + n);
    } else {
      uint64_t r = (n - pre.size()) % per.size();
      pre.clear();
      std::rotate(per.begin(), per.begin() + r, per.end());
    }
    DigitStream out = s;
    out.pre = std::move(pre);
    out.per = std::move(per);
    canonicalize(out.pre, out.per);
    return out;
  }
  DigitStream out = s;
  uint64_t npre = std::min<uint64_t>(n, out.prefix.size());
  out.prefix.erase(out.prefix.begin(), out.prefix.begin() + npre);
  out.offset += n - npre;
  return out;
}

DigitStream prepend(const DigitWord& w, const DigitStream& s) {
  if (w.m != s.m) throw Error("prepend: alphabet mismatch");
  if (s.kind == DigitStream::Kind::EventuallyPeriodic) {
    std::vector<Digit> pre = w.d;
    pre.insert(pre.end(), s.pre.begin(), s.pre.end());
    DigitStream out = s;
    out.pre = std::move(pre);
    canonicalize(out.pre, out.per);
    return out;
  }
  DigitStream out = s;
  out.prefix.insert(out.prefix.begin(), w.d.begin(), w.d.end());
  return out;
}

// ---------------------------------------------------------------------------
// Comparison

LexOrder lex_compare(const DigitStream& a, const DigitStream& b, uint64_t depth) {
  if (a.m != b.m) throw Error("lex_compare: alphabet mismatch");
  if (depth < 1) throw Error("lex_compare: depth must be >= 1");
  if (a == b) return LexOrder::EqExact;
  DigitWord wa = a.take(depth), wb = b.take(depth);
  for (uint64_t i = 0; i < depth; ++i) {
    if (wa.d[i] != wb.d[i]) return wa.d[i] < wb.d[i] ? LexOrder::LT : LexOrder::GT;
  }
  return LexOrder::EqToDepth;
}

// Two distinct canonical eventually periodic streams must differ within
// max(preperiods) + lcm(periods) digits.
static uint64_t ep_decision_bound(const DigitStream& a, const DigitStream& b) {
  uint64_t l = std::lcm<uint64_t>(a.per.size(), b.per.size());
  return std::max(a.pre.size(), b.pre.size()) + l;
}

LexOrder lex_compare_exact(const DigitStream& a, const DigitStream& b, uint64_t depth_hint) {
  if (a == b) return LexOrder::EqExact;
  if (a.is_eventually_periodic() && b.is_eventually_periodic()) {
    uint64_t bound = ep_decision_bound(a, b);
    if (bound <= (1u << 20)) {
      LexOrder r = lex_compare(a, b, bound);
      if (r == LexOrder::EqToDepth) throw InvariantViolated("canonical form not unique");
      return r;
    }
  }
  return lex_compare(a, b, depth_hint);
}

// ---------------------------------------------------------------------------
// Admissibility

static uint64_t shift_check_bound(const DigitStream& s, uint64_t depth) {
  if (s.is_eventually_periodic()) return s.pre.size() + 2 * s.per.size();
  return depth;
}

bool is_alpha_admissible(const DigitStream& s, uint64_t depth) {
  if (depth < 1) throw Error("is_alpha_admissible: depth must be >= 1");
  if (!s.is_infinite_sequence()) return false;
  bool exact = s.is_eventually_periodic();
  uint64_t bound = shift_check_bound(s, depth);
  for (uint64_t n = 1; n <= bound; ++n) {
    DigitStream sn = shift(s, n);
    LexOrder c = exact ? lex_compare_exact(sn, s) : lex_compare(sn, s, depth);
    if (c == LexOrder::GT) return false;
  }
  return true;
}

bool is_beta_admissible(const DigitStream& s, uint64_t depth) {
  if (depth < 1) throw Error("is_beta_admissible: depth must be >= 1");
  bool exact = s.is_eventually_periodic();
  uint64_t bound = shift_check_bound(s, depth);
  for (uint64_t n = 1; n <= bound; ++n) {
    DigitStream sn = shift(s, n);
    LexOrder c = exact ? lex_compare_exact(sn, s) : lex_compare(sn, s, depth);
    if (c == LexOrder::GT || c == LexOrder::EqExact) return false;
  }
  return true;
}

VClass classify_V_admissible(const DigitStream& s, uint64_t depth) {
  if (!is_alpha_admissible(s, depth)) throw NotAdmissible("classify_V_admissible: stream not alpha-admissible");
  DigitStream rs = reflect(s);
  bool exact = s.is_eventually_periodic();
  uint64_t bound = shift_check_bound(s, depth);
  bool eq_right = false, eq_left = false;
  for (uint64_t n = 1; n <= bound; ++n) {
    DigitStream sn = shift(s, n);
    LexOrder cu = exact ? lex_compare_exact(sn, s) : lex_compare(sn, s, depth);
    if (cu == LexOrder::GT) throw NotAdmissible("classify_V_admissible: stream not alpha-admissible");
    if (cu == LexOrder::EqExact) eq_right = true;
    LexOrder cl = exact ? lex_compare_exact(sn, rs) : lex_compare(sn, rs, depth);
    if (cl == LexOrder::LT) return VClass::None;
    if (cl == LexOrder::EqExact) eq_left = true;
  }
  if (eq_left) return VClass::V;
  if (eq_right) return VClass::Ubar;
  return VClass::U;
}

bool is_matched(const DigitWord& u, const DigitWord& a) {
  if (a.empty()) throw Error("is_matched: empty reference word");
  if (u.m != a.m) throw Error("is_matched: alphabet mismatch");
  if (u.empty()) return false;
  const Digit m = u.m;
  size_t p = u.size(), n = a.size();
  if (u.d.back() >= m) return false;
  DigitWord ua = concat(u, a);
  DigitWord ra = reflect(a);
  bool prefix_all_m = true, prefix_all_0 = true;
  for (size_t l = 1; l <= p; ++l) {
    prefix_all_m = prefix_all_m && u.d[l - 1] == m;
    prefix_all_0 = prefix_all_0 && u.d[l - 1] == 0;
    DigitWord window(u.m, std::vector<Digit>(ua.d.begin() + l, ua.d.begin() + l + n));
    if (!prefix_all_m && word_compare(window, a) > 0) return false;
    if (!prefix_all_0 && word_compare(window, ra) < 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Literals

static std::vector<Digit> parse_tokens(const std::string& text, Digit m) {
  std::vector<Digit> out;
  if (text.empty()) return out;
  if (m <= 9) {
    for (char c : text) {
      if (c == 'm')
        out.push_back(m);
      else if (c >= '0' && c <= '9')
        out.push_back(c - '0');
      else
        throw ParseError(std::string("bad digit character '") + c + "'");
    }
  } else {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, '.')) {
      if (tok == "m")
        out.push_back(m);
      else if (!tok.empty() && std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
        out.push_back(static_cast<Digit>(std::stol(tok)));
      else
        throw ParseError("bad digit token '" + tok + "'");
    }
  }
  for (Digit x : out)
    if (x < 0 || x > m) throw ParseError("digit " + std::to_string(x) + " exceeds alphabet max");
  return out;
}

DigitWord parse_word(const std::string& text, Digit alphabet_max) {
  check_alphabet(alphabet_max);
  return DigitWord(alphabet_max, parse_tokens(text, alphabet_max));
}

DigitStream parse_stream(const std::string& text, Digit alphabet_max) {
  check_alphabet(alphabet_max);
  if (text == "tm") return DigitStream::thue_morse_derived(alphabet_max);
  if (text.rfind("climit:", 0) == 0)
    return DigitStream::c_limit(parse_word(text.substr(7), alphabet_max));
  const std::string inf_suffix = "^inf";
  if (text.size() >= inf_suffix.size() &&
      text.compare(text.size() - inf_suffix.size(), inf_suffix.size(), inf_suffix) == 0) {
    std::string body = text.substr(0, text.size() - inf_suffix.size());
    size_t open = body.find('(');
    if (open != std::string::npos) {
      if (body.back() != ')') throw ParseError("expected ')^inf'");
      std::string pre = body.substr(0, open);
      std::string per = body.substr(open + 1, body.size() - open - 2);
      return DigitStream::eventually_periodic(parse_word(pre, alphabet_max),
                                              parse_word(per, alphabet_max));
    }
    // Bare X^inf: the single last digit token repeats.
    std::vector<Digit> toks = parse_tokens(body, alphabet_max);
    if (toks.empty()) throw ParseError("empty repeated digit before ^inf");
    Digit last = toks.back();
    toks.pop_back();
    return DigitStream::eventually_periodic(DigitWord(alphabet_max, toks),
                                            DigitWord(alphabet_max, {last}));
  }
  // A finite word denotes the stream padded with zeros.
  return DigitStream::word_then_zeros(parse_word(text, alphabet_max));
}

static std::string tokens_to_string(const std::vector<Digit>& d, Digit m) {
  std::string out;
  for (size_t i = 0; i < d.size(); ++i) {
    if (m > 9 && i > 0) out += '.';
    out += std::to_string(d[i]);
  }
  return out;
}

std::string to_string(const DigitWord& w) { return tokens_to_string(w.d, w.m); }

std::string to_string(const DigitStream& s) {
  if (s.kind == DigitStream::Kind::EventuallyPeriodic) {
    return tokens_to_string(s.pre, s.m) + "(" + tokens_to_string(s.per, s.m) + ")^inf";
  }
  std::string base = s.kind == DigitStream::Kind::ThueMorseDerived
                         ? "tm"
                         : "climit:" + tokens_to_string(s.climit_gen, s.m);
  if (s.reflected) base = "reflect(" + base + ")";
  if (s.offset > 0) base = "shift(" + base + "," + std::to_string(s.offset) + ")";
  if (!s.prefix.empty()) base = tokens_to_string(s.prefix, s.m) + "|" + base;
  return base;
}

}  // namespace bexp
