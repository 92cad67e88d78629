#include "rzero/radius.hpp"

#include <cmath>
#include <stdexcept>

#include "rzero/errors.hpp"

namespace rzero {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return InputError("not a rational number: \"" + s + "\""); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t, bool allow_sign) {
    size_t i = 0;
    if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) throw bad();
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw InputError("zero denominator in \"" + s + "\"");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ExactRadius ExactRadius::rat(Rational value) {
  ExactRadius r;
  r.kind_ = Kind::Rat;
  r.payload_ = std::move(value);
  r.payload_.canonicalize();
  return r;
}

ExactRadius ExactRadius::sqrt_of(Rational square) {
  square.canonicalize();
  if (sgn(square) < 0) throw std::invalid_argument("sqrt of a negative rational");
  ExactRadius r;
  r.kind_ = Kind::SqrtRat;
  r.payload_ = std::move(square);
  return r;
}

Rational ExactRadius::signed_square() const {
  if (kind_ == Kind::SqrtRat) return payload_;
  return payload_ * abs(payload_);
}

int ExactRadius::sign() const { return sgn(payload_); }

ExactRadius ExactRadius::scaled(const Rational& c) const {
  if (sgn(c) < 0) throw std::invalid_argument("negative radius scale");
  if (kind_ == Kind::Rat) return rat(payload_ * c);
  return sqrt_of(payload_ * c * c);
}

namespace {

// floor(sqrt(q)) and ceil(sqrt(q)) as rationals with the denominator of q.
std::pair<Rational, Rational> sqrt_bracket(const Rational& q) {
  Integer nd = q.get_num() * q.get_den();
  Integer lo;
  mpz_sqrt(lo.get_mpz_t(), nd.get_mpz_t());
  Integer hi = lo * lo == nd ? lo : lo + 1;
  Rational l(lo, q.get_den()), h(hi, q.get_den());
  l.canonicalize();
  h.canonicalize();
  return {l, h};
}

bool is_rational_square(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) || !mpz_perfect_square_p(q.get_den().get_mpz_t()))
    return false;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

int sign_of_sqrt_term(const Rational& a, const Rational& b, const Rational& x) {
  int sa = sgn(a);
  if (sgn(x) == 0 || sgn(b) == 0) return sa;
  int sb = sgn(b);
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 against b^2 x
  Rational d = a * a - b * b * x;
  return sa * sgn(d);
}

}  // namespace

Rational ExactRadius::lower_bound() const {
  if (kind_ == Kind::Rat) return payload_;
  return sqrt_bracket(payload_).first;
}

Rational ExactRadius::upper_bound() const {
  if (kind_ == Kind::Rat) return payload_;
  return sqrt_bracket(payload_).second;
}

std::optional<Rational> ExactRadius::as_rational() const {
  if (kind_ == Kind::Rat) return payload_;
  Rational root;
  if (is_rational_square(payload_, root)) return root;
  return std::nullopt;
}

std::string ExactRadius::to_string() const {
  if (kind_ == Kind::Rat) return format_rational(payload_);
  return "sqrt(" + format_rational(payload_) + ")";
}

double ExactRadius::approx() const {
  if (kind_ == Kind::Rat) return payload_.get_d();
  return std::sqrt(payload_.get_d());
}

int sign_of_sqrt_sum(const Rational& alpha, const Rational& beta, const Rational& x,
                     const Rational& gamma, const Rational& y) {
  int su = sign_of_sqrt_term(alpha, beta, x);
  int sv = sgn(y) == 0 ? 0 : sgn(gamma);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  // u = alpha + beta sqrt(x), v = gamma sqrt(y) of opposite signs: sign(u + v) = su * sign(u^2 - v^2)
  Rational a2 = alpha * alpha + beta * beta * x - gamma * gamma * y;
  Rational b2 = 2 * alpha * beta;
  return su * sign_of_sqrt_term(a2, b2, x);
}

namespace {

std::strong_ordering from_sign(int s) {
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering cmp_radius(const ExactRadius& a, const ExactRadius& b) {
  if (a.kind() == ExactRadius::Kind::Rat && b.kind() == ExactRadius::Kind::Rat)
    return from_sign(cmp(a.payload(), b.payload()));
  // a - b = sa sqrt(pa) - sb sqrt(pb)
  Rational pa = abs(a.signed_square()), pb = abs(b.signed_square());
  return from_sign(sign_of_sqrt_sum(0, a.sign(), pa, -b.sign(), pb));
}

std::strong_ordering cmp_radius_diff(const ExactRadius& a, const ExactRadius& b, const ExactRadius& c,
                                     const ExactRadius& d) {
  bool all_rat = a.kind() == ExactRadius::Kind::Rat && b.kind() == ExactRadius::Kind::Rat &&
                 c.kind() == ExactRadius::Kind::Rat && d.kind() == ExactRadius::Kind::Rat;
  if (all_rat) {
    Rational l = abs(a.payload() - b.payload()), r = abs(c.payload() - d.payload());
    return from_sign(cmp(l, r));
  }
  // |a-b|^2 = pa + pb - 2 sa sb sqrt(pa pb)
  Rational pa = abs(a.signed_square()), pb = abs(b.signed_square());
  Rational pc = abs(c.signed_square()), pd = abs(d.signed_square());
  Rational alpha = pa + pb - pc - pd;
  Rational beta = -2 * a.sign() * b.sign();
  Rational gamma = 2 * c.sign() * d.sign();
  return from_sign(sign_of_sqrt_sum(alpha, beta, pa * pb, gamma, pc * pd));
}

std::optional<ExactRadius> RadiusGap::to_radius() const {
  if (lo.is_zero()) {
    if (hi.kind() == ExactRadius::Kind::Rat) return ExactRadius::rat(abs(hi.payload()));
    return hi;
  }
  if (hi.is_zero()) return RadiusGap(lo, hi).to_radius();
  auto qa = hi.as_rational(), qb = lo.as_rational();
  if (qa && qb) return ExactRadius::rat(abs(*qa - *qb));
  // sqrt(pa) - sqrt(pb) = sqrt(pb) (t - 1) when pa / pb = t^2
  Rational pa = abs(hi.signed_square()), pb = abs(lo.signed_square());
  if (hi.sign() * lo.sign() < 0) return std::nullopt;
  Rational t;
  if (!is_rational_square(Rational(pa / pb), t)) return std::nullopt;
  Rational f = t - 1;
  return ExactRadius::sqrt_of(pb * f * f);
}

RadiusGap RadiusGap::halved() const { return {hi.scaled(Rational(1, 2)), lo.scaled(Rational(1, 2))}; }

std::string RadiusGap::to_string() const {
  if (auto r = to_radius()) return r->to_string();
  return "|" + hi.to_string() + " - " + lo.to_string() + "|";
}

std::strong_ordering cmp_gap(const RadiusGap& a, const RadiusGap& b) {
  return cmp_radius_diff(a.hi, a.lo, b.hi, b.lo);
}

}  // namespace rzero
