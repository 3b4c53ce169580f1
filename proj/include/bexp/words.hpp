#pragma once

// Digit-word and digit-stream algebra: reflection, shifts, lexicographic
// order, Thue-Morse machinery, block recursion, and the admissibility
// predicates everything else is built on.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bexp {

using Digit = int32_t;

constexpr Digit kMaxAlphabet = 1 << 16;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define BEXP_ERROR(Name)                       \
  struct Name : Error {                        \
    using Error::Error;                        \
    Name() : Error(#Name) {}                   \
  }

BEXP_ERROR(BumpOutOfRange);
BEXP_ERROR(NotAdmissible);
BEXP_ERROR(UndecidedAtDepth);
BEXP_ERROR(OutOfDomain);
BEXP_ERROR(ZeroInput);
BEXP_ERROR(BaseOutOfRange);
BEXP_ERROR(NoRootFound);
BEXP_ERROR(SignContractViolated);
BEXP_ERROR(NotInAPrime);
BEXP_ERROR(ResidualTooLarge);
BEXP_ERROR(GmExcluded);
BEXP_ERROR(PrefixMismatch);
BEXP_ERROR(LengthGuard);
BEXP_ERROR(LadderNotMonotone);
BEXP_ERROR(ParseError);
BEXP_ERROR(InvariantViolated);

#undef BEXP_ERROR

// Extended natural number, 0..infinity. Used for repeat counts.
struct ExtNat {
  bool infinite = false;
  long long value = 0;

  static ExtNat inf() { return ExtNat{true, 0}; }
  static ExtNat of(long long v) { return ExtNat{false, v}; }
  bool operator==(const ExtNat&) const = default;
};

std::string to_string(const ExtNat& n);

// Finite word over {0,...,m}. Carries its alphabet bound.
struct DigitWord {
  Digit m = 1;
  std::vector<Digit> d;

  DigitWord() = default;
  DigitWord(Digit alphabet_max, std::vector<Digit> digits);

  size_t size() const { return d.size(); }
  bool empty() const { return d.empty(); }
  Digit at1(size_t i) const { return d.at(i - 1); }  // 1-based
  bool operator==(const DigitWord&) const = default;
};

// Standard lexicographic three-way compare (a proper prefix sorts first).
int word_compare(const DigitWord& a, const DigitWord& b);

DigitWord reflect(const DigitWord& w);
// direction +1 or -1; changes only the last digit.
DigitWord bump_last(const DigitWord& w, int direction);
DigitWord concat(const DigitWord& a, const DigitWord& b);
DigitWord repeat_word(const DigitWord& w, size_t times);
bool all_digits_equal(const DigitWord& w, Digit v);

// tau_i: parity of the number of 1-bits of i.
int thue_morse(uint64_t i);

// Block recursion: c_0 = bump_last(c0_minus,+), c_{l+1} = c_l . bump_last(reflect(c_l),+).
DigitWord c_block(const DigitWord& c0_minus, int level);

// Infinite digit sequence. Eventually periodic streams are kept in a
// canonical form (primitive period, minimal preperiod), so representation
// equality is stream equality. Generator-defined streams (Thue-Morse-derived
// and c-block limits) carry prefix/shift/reflection modifiers so that words
// prepended to generator tails remain single stream values.
struct DigitStream {
  enum class Kind { EventuallyPeriodic, ThueMorseDerived, CLimit };

  Digit m = 1;
  Kind kind = Kind::EventuallyPeriodic;

  // EventuallyPeriodic payload (canonical form).
  std::vector<Digit> pre, per;

  // ThueMorseDerived payload: digit i = k + tau_i (odd m = 2k+1)
  // or k + tau_i - tau_{i-1} (even m = 2k).
  int tm_k = 0;
  bool tm_odd = true;

  // CLimit payload: the generator word c0_minus.
  std::vector<Digit> climit_gen;

  // Generator-kind modifiers, applied in order: explicit prefix digits,
  // then the generator body starting at offset, optionally reflected.
  std::vector<Digit> prefix;
  uint64_t offset = 0;
  bool reflected = false;

  static DigitStream eventually_periodic(const DigitWord& preperiod, const DigitWord& period);
  static DigitStream periodic(const DigitWord& period);
  static DigitStream word_then_zeros(const DigitWord& w);
  static DigitStream constant(Digit alphabet_max, Digit v);
  static DigitStream thue_morse_derived(Digit alphabet_max);
  static DigitStream c_limit(const DigitWord& c0_minus);

  Digit at(uint64_t i) const;        // 1-based
  DigitWord take(size_t n) const;    // first n digits
  bool is_eventually_periodic() const { return kind == Kind::EventuallyPeriodic; }
  // True when the stream provably has no last nonzero digit.
  bool is_infinite_sequence() const;
  bool operator==(const DigitStream&) const = default;
};

DigitStream reflect(const DigitStream& s);
DigitStream shift(const DigitStream& s, uint64_t n);
DigitStream prepend(const DigitWord& w, const DigitStream& s);

enum class LexOrder { LT, GT, EqToDepth, EqExact };

// First differing position within `depth` decides. EqExact only when the
// streams are provably identical (both eventually periodic, or structurally
// equal); EqToDepth means the first `depth` digits agree.
LexOrder lex_compare(const DigitStream& a, const DigitStream& b, uint64_t depth);

// For two eventually periodic streams this decides the order outright
// (extending the comparison to the pigeonhole bound); otherwise it falls
// back to lex_compare at depth_hint.
LexOrder lex_compare_exact(const DigitStream& a, const DigitStream& b, uint64_t depth_hint = 64);

// shift(s,n) <= s for 1 <= n <= depth, and s has no last nonzero digit.
// Exact for eventually periodic streams (shifts checked to preperiod + 2*period);
// depth-qualified otherwise.
bool is_alpha_admissible(const DigitStream& s, uint64_t depth);

// shift(s,n) < s strictly for all n >= 1; no infiniteness requirement.
bool is_beta_admissible(const DigitStream& s, uint64_t depth);

enum class VClass { U, Ubar, V, None };

// Strongest class of an alpha-admissible stream:
//   U    reflect(s) <  shift(s,n) <  s   for all n >= 1
//   Ubar reflect(s) <  shift(s,n) <= s
//   V    reflect(s) <= shift(s,n) <= s
//   None otherwise.
// Exact for eventually periodic streams. For generator streams the verdict is
// to-depth: unresolved strictness counts as strict (violations must be proven).
VClass classify_V_admissible(const DigitStream& s, uint64_t depth);

// u is matched to a: u_p < m, and every length-n window of shift^l(u.a)
// is <= a when u_1..u_l != m^l and >= reflect(a) when u_1..u_l != 0^l.
bool is_matched(const DigitWord& u, const DigitWord& a);

// One parsed block (c_i cbar_i)^{j} followed by an optional link block.
struct DecompositionBlock {
  int index = 0;    // i_t
  ExtNat repeat;    // j_t
  int link = 0;     // l_t in {0,1}
};

// omega (c0_minus)^j (c_{i1} cbar_{i1})^{j1} (c_{i1} cbar_{i2})^{l1} ...
struct DecompositionForm {
  DigitWord omega;
  ExtNat j;
  std::vector<DecompositionBlock> blocks;
  bool reflected = false;
};

// Literal syntax: digits juxtaposed for m <= 9, "."-separated for larger m;
// the token 'm' stands for the top digit. Streams end in "(period)^inf", or
// "X^inf" where the single last digit token X repeats.
DigitWord parse_word(const std::string& text, Digit alphabet_max);
DigitStream parse_stream(const std::string& text, Digit alphabet_max);
std::string to_string(const DigitWord& w);
std::string to_string(const DigitStream& s);

}  // namespace bexp
