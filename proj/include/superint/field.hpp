#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "superint/jet.hpp"
#include "superint/taylor.hpp"

namespace superint {

/// Scalar field on (a subset of) the plane.
///
/// Analytic fields produce exact jets through Taylor arithmetic. Fields are
/// immutable after construction and safe to evaluate concurrently.
class ScalarField {
 public:
  virtual ~ScalarField() = default;

  /// Taylor expansion about `p` to total degree `order`.
  virtual Taylor expand(Point p, int order) const = 0;

  virtual bool admissible(Point) const { return true; }

  /// True if the field does not depend on y. Grid code uses this to sample
  /// once per column.
  virtual bool x_only() const { return false; }

  /// Throws DomainError outside the admissible set and EvaluationError on
  /// non-finite output.
  Jet jet(Point p, int order) const;
  double value(Point p) const;
  double operator()(Point p) const { return value(p); }
};

using FieldPtr = std::shared_ptr<const ScalarField>;
using TaylorExpr = std::function<Taylor(const Taylor& x, const Taylor& y)>;
using AdmissiblePredicate = std::function<bool(Point)>;

/// Field defined by a Taylor expression. `x_only` must be set only when the
/// expression ignores its y argument.
FieldPtr make_field(TaylorExpr expr, bool x_only = false, AdmissiblePredicate admissible = {});

FieldPtr constant_field(double c);

/// sum_i coefficient_i * basis_i
///
/// Coefficients are held separately from their basis functions so that tests
/// can perturb any single stored number of a catalog integral.
struct Term {
  double coefficient = 0.0;
  FieldPtr basis;
  std::string label;
};

class LinearField {
 public:
  LinearField() = default;
  LinearField(std::initializer_list<Term> terms);

  LinearField& add(double coefficient, FieldPtr basis, std::string label);

  bool empty() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::vector<Term>& terms() { return terms_; }

  bool x_only() const;

  /// Zero Taylor of the requested order when there are no terms.
  Taylor expand(Point p, int order) const;
  Jet jet(Point p, int order) const;
  double value(Point p) const;

  LinearField scaled(double factor) const;

  /// Shared-pointer view for code written against ScalarField.
  FieldPtr as_field() const;

 private:
  std::vector<Term> terms_;
};

}  // namespace superint
