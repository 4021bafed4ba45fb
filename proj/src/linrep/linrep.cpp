#include "linrep/linrep.hpp"

#include <bit>
#include <deque>
#include <sstream>

#include "core/error.hpp"

namespace tmlogic::linrep {

using automata::DigitOrder;

Matrix Matrix::transposed() const {
  Matrix t(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Vector row_times(const Vector& x, const Matrix& m) {
  const std::size_t n = m.size();
  Vector out(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (sgn(x[r]) == 0) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (sgn(m(r, c)) != 0) out[c] += x[r] * m(r, c);
    }
  }
  return out;
}

Vector times_column(const Matrix& m, const Vector& x) {
  const std::size_t n = m.size();
  Vector out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (sgn(m(r, c)) != 0 && sgn(x[c]) != 0) out[r] += m(r, c) * x[c];
    }
  }
  return out;
}

Rational dot(const Vector& a, const Vector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string to_string(const Rational& q) { return q.get_str(); }

void LinearRepresentation::validate() const {
  if (v.size() != dim || w.size() != dim || gamma[0].size() != dim || gamma[1].size() != dim) {
    fail(ErrorCode::InvalidArgument, "linear representation sizes do not match dimension " +
                                         std::to_string(dim));
  }
}

LinearRepresentation make_representation(DigitOrder order, Vector v, Matrix gamma0, Matrix gamma1,
                                         Vector w) {
  LinearRepresentation r;
  r.dim = v.size();
  r.order = order;
  r.v = std::move(v);
  r.gamma = {std::move(gamma0), std::move(gamma1)};
  r.w = std::move(w);
  r.validate();
  return r;
}

namespace {

std::vector<int> digits_in_order(std::uint64_t n, DigitOrder order) {
  const auto width = static_cast<std::size_t>(std::bit_width(n));
  std::vector<int> d(width);
  for (std::size_t j = 0; j < width; ++j) {
    const std::size_t bit = order == DigitOrder::Lsd ? j : width - 1 - j;
    d[j] = static_cast<int>((n >> bit) & 1);
  }
  return d;
}

Matrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  Matrix m(rows.size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (long x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

Vector from_list(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Incremental basis of a row space. Echelon rows keep zeros at all earlier
// pivots, and each carries its expression in the original vectors.
class SpanBasis {
 public:
  explicit SpanBasis(std::size_t width) : width_(width) {}

  std::size_t size() const noexcept { return originals_.size(); }
  const Vector& original(std::size_t i) const { return originals_[i]; }

  // Returns true if x was independent and got appended.
  bool add(const Vector& x) {
    Vector coords;
    Vector residual = reduce(x, coords);
    std::size_t pivot = width_;
    for (std::size_t c = 0; c < width_; ++c) {
      if (sgn(residual[c]) != 0) {
        pivot = c;
        break;
      }
    }
    if (pivot == width_) return false;
    const std::size_t r = originals_.size();
    originals_.push_back(x);
    Vector t(r + 1);
    for (std::size_t i = 0; i < r; ++i) t[i] = -coords[i];
    t[r] = 1;
    const Rational p = residual[pivot];
    for (auto& e : residual) e /= p;
    for (auto& e : t) e /= p;
    for (auto& row : transforms_) row.emplace_back(0);
    echelon_.push_back(std::move(residual));
    transforms_.push_back(std::move(t));
    pivots_.push_back(pivot);
    return true;
  }

  // Coordinates of x in the original vectors; x must lie in the span.
  Vector coordinates(const Vector& x) const {
    Vector coords;
    Vector residual = reduce(x, coords);
    for (const auto& e : residual) {
      if (sgn(e) != 0) fail(ErrorCode::Internal, "vector outside the computed span");
    }
    return coords;
  }

 private:
  Vector reduce(const Vector& x, Vector& coords) const {
    Vector residual = x;
    coords.assign(originals_.size(), Rational(0));
    for (std::size_t i = 0; i < echelon_.size(); ++i) {
      const Rational f = residual[pivots_[i]];
      if (sgn(f) == 0) continue;
      for (std::size_t c = 0; c < width_; ++c) {
        if (sgn(echelon_[i][c]) != 0) residual[c] -= f * echelon_[i][c];
      }
      for (std::size_t j = 0; j < transforms_[i].size(); ++j) {
        if (sgn(transforms_[i][j]) != 0) coords[j] += f * transforms_[i][j];
      }
    }
    return residual;
  }

  std::size_t width_;
  std::vector<Vector> originals_, echelon_, transforms_;
  std::vector<std::size_t> pivots_;
};

// Restricts to the span of the reachable row vectors v * gamma(u).
LinearRepresentation forward_reduce(const LinearRepresentation& r) {
  LinearRepresentation out;
  out.order = r.order;
  SpanBasis basis(r.dim);
  if (!basis.add(r.v)) return out;  // v = 0: the zero function
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (int a = 0; a < 2; ++a) {
      if (basis.add(row_times(basis.original(i), r.gamma[a]))) queue.push_back(basis.size() - 1);
    }
  }
  const std::size_t n = basis.size();
  out.dim = n;
  out.v.assign(n, Rational(0));
  out.v[0] = 1;
  for (int a = 0; a < 2; ++a) {
    Matrix g(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto coords = basis.coordinates(row_times(basis.original(i), r.gamma[a]));
      for (std::size_t j = 0; j < n; ++j) g(i, j) = coords[j];
    }
    out.gamma[a] = std::move(g);
  }
  out.w.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.w[i] = dot(basis.original(i), r.w);
  return out;
}

LinearRepresentation transpose(const LinearRepresentation& r) {
  LinearRepresentation t;
  t.dim = r.dim;
  t.order = r.order;
  t.v = r.w;
  t.w = r.v;
  t.gamma = {r.gamma[0].transposed(), r.gamma[1].transposed()};
  return t;
}

}  // namespace

Rational evaluate_word(const LinearRepresentation& r, std::span<const int> digits) {
  r.validate();
  Vector x = r.v;
  for (int d : digits) {
    if (d != 0 && d != 1) fail(ErrorCode::InvalidArgument, "digits are binary");
    x = row_times(x, r.gamma[d]);
  }
  return dot(x, r.w);
}

Rational evaluate(const LinearRepresentation& r, std::uint64_t n) {
  const auto d = digits_in_order(n, r.order);
  return evaluate_word(r, d);
}

Rational evaluate_stabilized(const LinearRepresentation& r, std::uint64_t n, std::size_t max_steps) {
  r.validate();
  if (r.order != DigitOrder::Lsd) {
    fail(ErrorCode::InvalidArgument, "stabilization appends trailing zeros; needs an lsd representation");
  }
  Vector x = r.v;
  for (int d : digits_in_order(n, r.order)) x = row_times(x, r.gamma[d]);
  Rational value = dot(x, r.w);
  std::size_t unchanged = 0;
  for (std::size_t step = 0; step < max_steps; ++step) {
    x = row_times(x, r.gamma[0]);
    const Rational next = dot(x, r.w);
    if (next == value) {
      if (++unchanged >= r.dim + 1) return value;
    } else {
      unchanged = 0;
      value = next;
    }
  }
  fail(ErrorCode::Noncountable, "value did not stabilize under trailing zero digits");
}

bool stabilized(const LinearRepresentation& r) {
  r.validate();
  return times_column(r.gamma[0], r.w) == r.w;
}

LinearRepresentation scale(const LinearRepresentation& r, const Rational& c) {
  LinearRepresentation out = r;
  for (auto& e : out.w) e *= c;
  return out;
}

LinearRepresentation subtract(const LinearRepresentation& a, const LinearRepresentation& b) {
  a.validate();
  b.validate();
  if (a.order != b.order) fail(ErrorCode::InvalidArgument, "subtract needs a common digit order");
  const std::size_t n = a.dim + b.dim;
  LinearRepresentation out;
  out.dim = n;
  out.order = a.order;
  out.v = a.v;
  out.v.insert(out.v.end(), b.v.begin(), b.v.end());
  out.w = a.w;
  for (const auto& e : b.w) out.w.push_back(-e);
  for (int d = 0; d < 2; ++d) {
    Matrix g(n);
    for (std::size_t i = 0; i < a.dim; ++i) {
      for (std::size_t j = 0; j < a.dim; ++j) g(i, j) = a.gamma[d](i, j);
    }
    for (std::size_t i = 0; i < b.dim; ++i) {
      for (std::size_t j = 0; j < b.dim; ++j) g(a.dim + i, a.dim + j) = b.gamma[d](i, j);
    }
    out.gamma[d] = std::move(g);
  }
  return out;
}

LinearRepresentation reverse(const LinearRepresentation& r) {
  r.validate();
  auto t = transpose(r);
  t.order = r.order == DigitOrder::Lsd ? DigitOrder::Msd : DigitOrder::Lsd;
  return t;
}

LinearRepresentation pad(const LinearRepresentation& r, std::size_t extra) {
  r.validate();
  LinearRepresentation zero;
  zero.dim = extra;
  zero.order = r.order;
  zero.v.assign(extra, Rational(0));
  zero.w.assign(extra, Rational(0));
  zero.gamma = {Matrix(extra), Matrix(extra)};
  // a - 0 is the direct sum with a zero block
  return subtract(r, zero);
}

LinearRepresentation minimize_rep(const LinearRepresentation& r) {
  r.validate();
  auto fwd = forward_reduce(r);
  if (fwd.dim == 0) return fwd;
  return transpose(forward_reduce(transpose(fwd)));
}

bool equal_reps(const LinearRepresentation& a, const LinearRepresentation& b) {
  return minimize_rep(subtract(a, a.order == b.order ? b : reverse(b))).dim == 0;
}

bool equal_by_enumeration(const LinearRepresentation& a, const LinearRepresentation& b) {
  const std::size_t bits = a.dim + b.dim;
  if (bits > 24) fail(ErrorCode::ResourceExhausted, "enumeration bound 2^" + std::to_string(bits) + " too large");
  const std::uint64_t limit = std::uint64_t{1} << bits;
  for (std::uint64_t n = 0; n < limit; ++n) {
    if (evaluate(a, n) != evaluate(b, n)) return false;
  }
  return true;
}

LinearRepresentation extract_counting(const automata::Automaton& a, const std::string& counted,
                                      const std::string& parameter) {
  if (a.arity() != 2 || a.track_index(counted) < 0 || a.track_index(parameter) < 0 || counted == parameter) {
    fail(ErrorCode::InvalidArgument, "counting needs an automaton over exactly the tracks '" + counted +
                                         "' and '" + parameter + "'");
  }
  const int ct = a.track_index(counted);
  const int pt = a.track_index(parameter);
  const auto live = automata::live_states(a);
  std::vector<std::size_t> index(a.state_count(), static_cast<std::size_t>(-1));
  std::vector<automata::State> states;
  // the initial state first, then the remaining live states in order
  if (live[a.initial()]) {
    index[a.initial()] = 0;
    states.push_back(a.initial());
  }
  for (automata::State q = 0; q < a.state_count(); ++q) {
    if (live[q] && q != a.initial()) {
      index[q] = states.size();
      states.push_back(q);
    }
  }
  const std::size_t n = states.size();
  LinearRepresentation r;
  r.order = DigitOrder::Lsd;
  r.dim = n;
  r.v.assign(n, Rational(0));
  r.w.assign(n, Rational(0));
  r.gamma = {Matrix(n), Matrix(n)};
  if (n == 0) return r;
  r.v[0] = 1;
  Vector acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    acc[i] = a.accepting(states[i]) ? 1 : 0;
    for (int d = 0; d < 2; ++d) {
      for (int c = 0; c < 2; ++c) {
        const automata::Letter l = static_cast<automata::Letter>((c << ct) | (d << pt));
        const auto target = a.next(states[i], l);
        if (live[target]) r.gamma[d](i, index[target]) += 1;
      }
    }
  }
  // counted values of a fixed parameter all have fewer than len(n) + dim
  // digits when the count is finite; one more step must change nothing
  Vector u = acc;
  for (std::size_t s = 0; s < n; ++s) u = times_column(r.gamma[0], u);
  if (times_column(r.gamma[0], u) != u) {
    fail(ErrorCode::Noncountable, "some value of '" + parameter + "' admits infinitely many '" +
                                      counted + "'");
  }
  r.w = std::move(u);
  return r;
}

LinearRepresentation from_recurrence_a006165() {
  return make_representation(DigitOrder::Msd, from_list({1, 1, 1, 0}),
                             from_rows({{2, 1, 0, 0}, {0, 1, 0, 0}, {-1, -1, 1, 0}, {-1, 0, 0, 0}}),
                             from_rows({{1, 0, 0, 0}, {1, 2, 0, 0}, {-1, -1, 0, 1}, {0, 0, 0, 0}}),
                             from_list({1, 0, 0, 0}));
}

LinearRepresentation from_recurrence_a060973() {
  return make_representation(DigitOrder::Msd, from_list({0, 0, 1, 0}),
                             from_rows({{2, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}}),
                             from_rows({{1, 0, 0, 0}, {1, 2, 0, 0}, {0, 1, 0, 1}, {0, 0, 0, 0}}),
                             from_list({1, 0, 0, 0}));
}

LinearRepresentation printed_f_shifted() {
  return make_representation(DigitOrder::Msd, from_list({1, 0, 0, 0}),
                             from_rows({{1, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 0, 2}, {0, 0, 0, 1}}),
                             from_rows({{0, 1, 1, 0}, {0, 2, 0, 0}, {0, 2, 0, 0}, {0, 1, 0, 1}}),
                             from_list({0, 1, 1, 0}));
}

LinearRepresentation printed_g_shifted() {
  return make_representation(
      DigitOrder::Msd, from_list({1, 1, 0, 0, 0, 0}),
      from_rows({{1, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0},
                 {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 1}, {0, 0, 0, 0, 0, 2}}),
      from_rows({{0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 0},
                 {0, 0, 0, 1, 0, 1}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 2}}),
      from_list({0, 0, 0, 0, 1, 1}));
}

std::string to_text(const LinearRepresentation& r) {
  r.validate();
  std::ostringstream out;
  out << r.dim << ' ' << automata::digit_order_name(r.order) << '\n';
  auto line = [&](const Vector& x) {
    for (std::size_t i = 0; i < x.size(); ++i) out << (i ? " " : "") << x[i].get_str();
    out << '\n';
  };
  line(r.v);
  for (int d = 0; d < 2; ++d) {
    for (std::size_t i = 0; i < r.dim; ++i) {
      for (std::size_t j = 0; j < r.dim; ++j) out << (j ? " " : "") << r.gamma[d](i, j).get_str();
      out << '\n';
    }
  }
  line(r.w);
  return out.str();
}

LinearRepresentation from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> tokens;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  if (tokens.size() < 2) fail(ErrorCode::Parse, "representation needs a 'dim order' header");
  std::size_t dim = 0;
  try {
    dim = std::stoul(tokens[0]);
  } catch (const std::exception&) {
    fail(ErrorCode::Parse, "bad dimension '" + tokens[0] + "'");
  }
  DigitOrder order;
  if (tokens[1] == "msd") order = DigitOrder::Msd;
  else if (tokens[1] == "lsd") order = DigitOrder::Lsd;
  else fail(ErrorCode::Parse, "digit order must be 'msd' or 'lsd', got '" + tokens[1] + "'");
  const std::size_t expected = 2 + 2 * dim + 2 * dim * dim;
  if (tokens.size() != expected) {
    fail(ErrorCode::Parse, "expected " + std::to_string(expected - 2) + " entries for dimension " +
                               std::to_string(dim) + ", got " + std::to_string(tokens.size() - 2));
  }
  std::size_t pos = 2;
  auto next = [&]() -> Rational {
    const auto& tok = tokens[pos++];
    Rational q;
    if (q.set_str(tok, 10) != 0) fail(ErrorCode::Parse, "bad rational '" + tok + "'");
    if (tok.find('/') != std::string::npos && sgn(mpz_class(q.get_den())) == 0) {
      fail(ErrorCode::Parse, "zero denominator in '" + tok + "'");
    }
    q.canonicalize();
    return q;
  };
  Vector v(dim), w(dim);
  for (auto& e : v) e = next();
  std::array<Matrix, 2> g = {Matrix(dim), Matrix(dim)};
  for (int d = 0; d < 2; ++d) {
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) g[d](i, j) = next();
    }
  }
  for (auto& e : w) e = next();
  return make_representation(order, std::move(v), std::move(g[0]), std::move(g[1]), std::move(w));
}

}  // namespace tmlogic::linrep
