#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "triup/errors.hpp"
#include "triup/tri_product_space.hpp"

namespace triup {

/// A real linear map on an n-dimensional space, stored either as a
/// diagonal entry sequence or as a dense row-major matrix. Immutable.
class LinearOperator {
 public:
  static LinearOperator diagonal(std::vector<double> entries);
  static LinearOperator dense(std::size_t n, std::vector<double> row_major);
  static LinearOperator dense(const std::vector<std::vector<double>>& rows);
  static LinearOperator identity(std::size_t n);
  static LinearOperator zero(std::size_t n);

  std::size_t dimension() const { return dimension_; }
  bool is_diagonal() const { return diagonal_; }

  /// Diagonal entry sequence; PreconditionError for dense operators.
  const std::vector<double>& diagonal_entries() const;

  /// A_{ij}, 0-based.
  double entry(std::size_t i, std::size_t j) const;

  std::vector<double> apply_raw(std::span<const double> x) const;

  /// factor * A (stays diagonal when A is).
  LinearOperator scaled(double factor) const;

  /// A + mu * I.
  LinearOperator shifted(double mu) const;

  LinearOperator to_dense() const;

 private:
  LinearOperator(bool diag, std::size_t n, std::vector<double> data)
      : diagonal_(diag), dimension_(n), data_(std::move(data)) {}

  bool diagonal_;
  std::size_t dimension_;
  std::vector<double> data_;  // n entries (diagonal) or n*n row-major
};

/// outer after inner: x -> outer(inner(x)). Diagonal composed with
/// diagonal stays diagonal; any dense operand densifies the result.
LinearOperator compose(const LinearOperator& outer, const LinearOperator& inner);

/// alpha*A + beta*B.
LinearOperator linear_combination(double alpha, const LinearOperator& a,
                                  double beta, const LinearOperator& b);

/// Applies op to a state of the given space, rewrapping the result.
StateVector apply(const TriProductSpace& space, const LinearOperator& op,
                  const StateVector& x);

/// A basis triple (1-based indices, matching e_1..e_n) where moving the
/// operator between slots changes the 3-product value.
struct SelfAdjointnessWitness {
  std::size_t i = 0, j = 0, k = 0;
  double op_first = 0.0;   // <A e_i, e_j, e_k>
  double op_second = 0.0;  // <e_i, A e_j, e_k>
  double op_third = 0.0;   // <e_i, e_j, A e_k>
  double discrepancy = 0.0;
};

struct SelfAdjointCheck {
  bool ok = true;
  std::optional<SelfAdjointnessWitness> witness;
  double tolerance = 0.0;
  double max_discrepancy = 0.0;
};

/// Exhaustively checks <Ae_i,e_j,e_k> = <e_i,Ae_j,e_k> = <e_i,e_j,Ae_k>
/// over basis triples, evaluating each side through the space's form.
/// Triples with three distinct indices vanish identically for pointwise
/// forms and are skipped, leaving O(n^2) triples. On failure the worst
/// witness is reported; ties resolve to the canonical triple (j,i,i) of
/// the first offending off-diagonal entry A_{ij} in row-major order.
SelfAdjointCheck check_3_self_adjoint(const TriProductSpace& space,
                                      const LinearOperator& op, double tol);

/// Same with the default threshold 1e-10 * (1 + max|A_ij| * max w_i).
SelfAdjointCheck check_3_self_adjoint(const TriProductSpace& space,
                                      const LinearOperator& op);

/// Raised when a pipeline requiring 3-self-adjoint operators is handed
/// one that fails the check.
class RejectedInstanceError : public Error {
 public:
  RejectedInstanceError(std::string operator_name,
                        const SelfAdjointnessWitness& witness);

  const std::string& operator_name() const { return operator_name_; }
  const SelfAdjointnessWitness& witness() const { return witness_; }

 private:
  std::string operator_name_;
  SelfAdjointnessWitness witness_;
};

}  // namespace triup
