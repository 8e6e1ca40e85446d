#include "superint/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "superint/errors.hpp"

namespace superint {

Jet::Jet(int order) : order_(order) {}

Jet Jet::from_taylor(const Taylor& t) {
  Jet j(t.order());
  for (int d = 0; d <= t.order(); ++d)
    for (int b = 0; b <= d; ++b) j.set(d - b, b, t.partial(d - b, b));
  return j;
}

double Jet::operator()(int a, int b) const {
  if (a < 0 || b < 0 || a + b > order_) return 0.0;
  return d_[Taylor::index(a, b)];
}

void Jet::set(int a, int b, double v) { d_[Taylor::index(a, b)] = v; }

bool Jet::all_finite() const {
  const int n = size(order_);
  return std::all_of(d_.begin(), d_.begin() + n, [](double v) { return std::isfinite(v); });
}

namespace {

std::string where(Point p) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

class ExprField final : public ScalarField {
 public:
  ExprField(TaylorExpr expr, bool x_only, AdmissiblePredicate admissible)
      : expr_(std::move(expr)), x_only_(x_only), admissible_(std::move(admissible)) {}

  Taylor expand(Point p, int order) const override {
    return expr_(Taylor::variable_x(p.x, order), Taylor::variable_y(p.y, order));
  }
  bool admissible(Point p) const override { return !admissible_ || admissible_(p); }
  bool x_only() const override { return x_only_; }

 private:
  TaylorExpr expr_;
  bool x_only_;
  AdmissiblePredicate admissible_;
};

class LinearFieldView final : public ScalarField {
 public:
  explicit LinearFieldView(LinearField f) : f_(std::move(f)) {}
  Taylor expand(Point p, int order) const override { return f_.expand(p, order); }
  bool x_only() const override { return f_.x_only(); }

 private:
  LinearField f_;
};

}  // namespace

Jet ScalarField::jet(Point p, int order) const {
  if (!admissible(p)) throw DomainError("field evaluated outside its domain at " + where(p));
  Jet j = Jet::from_taylor(expand(p, order));
  if (!j.all_finite()) throw EvaluationError("non-finite jet at " + where(p));
  return j;
}

double ScalarField::value(Point p) const {
  if (!admissible(p)) throw DomainError("field evaluated outside its domain at " + where(p));
  const double v = expand(p, 0).value();
  if (!std::isfinite(v)) throw EvaluationError("non-finite value at " + where(p));
  return v;
}

FieldPtr make_field(TaylorExpr expr, bool x_only, AdmissiblePredicate admissible) {
  return std::make_shared<ExprField>(std::move(expr), x_only, std::move(admissible));
}

FieldPtr constant_field(double c) {
  return make_field([c](const Taylor& x, const Taylor&) { return Taylor(c, x.order()); }, true);
}

LinearField::LinearField(std::initializer_list<Term> terms) : terms_(terms) {}

LinearField& LinearField::add(double coefficient, FieldPtr basis, std::string label) {
  terms_.push_back({coefficient, std::move(basis), std::move(label)});
  return *this;
}

bool LinearField::x_only() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.basis->x_only(); });
}

Taylor LinearField::expand(Point p, int order) const {
  Taylor sum(0.0, order);
  for (const Term& t : terms_) sum += t.basis->expand(p, order) * t.coefficient;
  return sum;
}

Jet LinearField::jet(Point p, int order) const {
  Jet j = Jet::from_taylor(expand(p, order));
  if (!j.all_finite()) throw EvaluationError("non-finite jet at " + where(p));
  return j;
}

double LinearField::value(Point p) const { return expand(p, 0).value(); }

LinearField LinearField::scaled(double factor) const {
  LinearField out(*this);
  for (Term& t : out.terms_) t.coefficient *= factor;
  return out;
}

FieldPtr LinearField::as_field() const { return std::make_shared<LinearFieldView>(*this); }

}  // namespace superint
