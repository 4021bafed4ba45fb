#pragma once

// Rational linear representations (v, gamma(0), gamma(1), w) of functions of
// digit strings, with Schutzenberger minimization and the counting
// representation of an automaton.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "automata/automaton.hpp"

namespace tmlogic::linrep {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

Vector row_times(const Vector& x, const Matrix& m);
Vector times_column(const Matrix& m, const Vector& x);
Rational dot(const Vector& a, const Vector& b);

struct LinearRepresentation {
  std::size_t dim = 0;
  /// Order in which the digits of n are fed to the matrices.
  automata::DigitOrder order = automata::DigitOrder::Lsd;
  Vector v;
  std::array<Matrix, 2> gamma;
  Vector w;

  /// Throws InvalidArgument on inconsistent sizes.
  void validate() const;

  friend bool operator==(const LinearRepresentation&, const LinearRepresentation&) = default;
};

LinearRepresentation make_representation(automata::DigitOrder order, Vector v, Matrix gamma0,
                                         Matrix gamma1, Vector w);

/// v * gamma(d_1) ... gamma(d_l) * w for the digits of n (none for n = 0),
/// fed in r.order.
Rational evaluate(const LinearRepresentation& r, std::uint64_t n);
/// Digits in reading order.
Rational evaluate_word(const LinearRepresentation& r, std::span<const int> digits);
/// The stabilized count: keeps appending gamma(0) to the digits of n until
/// the value is unchanged for dim + 1 consecutive steps. Throws Noncountable
/// if that does not happen within `max_steps`.
Rational evaluate_stabilized(const LinearRepresentation& r, std::uint64_t n,
                             std::size_t max_steps = 4096);
/// gamma(0) w == w, i.e. appending zero digits never changes a value.
bool stabilized(const LinearRepresentation& r);

LinearRepresentation scale(const LinearRepresentation& r, const Rational& c);
/// Direct sum computing a - b; both must share the digit order.
LinearRepresentation subtract(const LinearRepresentation& a, const LinearRepresentation& b);
/// Same function of n with the opposite digit order: (w^T, gamma^T, v^T).
LinearRepresentation reverse(const LinearRepresentation& r);
/// Zero-block padding up to dimension r.dim + extra.
LinearRepresentation pad(const LinearRepresentation& r, std::size_t extra);
/// Minimal-dimension equivalent representation; dim 0 is the zero function.
LinearRepresentation minimize_rep(const LinearRepresentation& r);
/// minimize_rep(a - b) has rank 0; b is reversed first if the orders differ.
bool equal_reps(const LinearRepresentation& a, const LinearRepresentation& b);
/// Independent check of the same question: compares values for every
/// n < 2^(dim a + dim b). Sound when both are invariant under zero padding.
bool equal_by_enumeration(const LinearRepresentation& a, const LinearRepresentation& b);

/// Counting representation of an arity-2 automaton: value at n is
/// #{ c : (c, n) accepted } with `counted` = c and `parameter` = n. LSD.
/// Throws Noncountable when some n has infinitely many partners.
LinearRepresentation extract_counting(const automata::Automaton& a, const std::string& counted,
                                      const std::string& parameter);

/// Explicit 4-dimensional MSD representations of A006165 and A060973.
LinearRepresentation from_recurrence_a006165();
LinearRepresentation from_recurrence_a060973();
/// The MSD representations of f(n+1) and g(n+1) as printed, for comparison
/// against extracted ones.
LinearRepresentation printed_f_shifted();
LinearRepresentation printed_g_shifted();

/// "dim order" line, then v, gamma(0) rows, gamma(1) rows, w; entries are
/// integers or p/q; '#' comments.
std::string to_text(const LinearRepresentation& r);
LinearRepresentation from_text(std::string_view text);

std::string to_string(const Rational& q);

}  // namespace tmlogic::linrep
