#include "triup/linear_operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace triup {

namespace {

void require_same_dimension(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw DimensionError(std::string(what) + ": dimensions " +
                         std::to_string(a) + " and " + std::to_string(b) +
                         " differ");
}

}  // namespace

LinearOperator LinearOperator::diagonal(std::vector<double> entries) {
  if (entries.empty()) throw DimensionError("diagonal operator needs entries");
  const std::size_t n = entries.size();
  return LinearOperator(true, n, std::move(entries));
}

LinearOperator LinearOperator::dense(std::size_t n,
                                     std::vector<double> row_major) {
  if (n == 0 || row_major.size() != n * n)
    throw DimensionError("dense operator: expected " + std::to_string(n * n) +
                         " entries, got " + std::to_string(row_major.size()));
  return LinearOperator(false, n, std::move(row_major));
}

LinearOperator LinearOperator::dense(
    const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    require_same_dimension(row.size(), n, "dense operator row");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return dense(n, std::move(flat));
}

LinearOperator LinearOperator::identity(std::size_t n) {
  return diagonal(std::vector<double>(n, 1.0));
}

LinearOperator LinearOperator::zero(std::size_t n) {
  return diagonal(std::vector<double>(n, 0.0));
}

const std::vector<double>& LinearOperator::diagonal_entries() const {
  if (!diagonal_)
    throw PreconditionError("diagonal_entries() called on a dense operator");
  return data_;
}

double LinearOperator::entry(std::size_t i, std::size_t j) const {
  if (i >= dimension_ || j >= dimension_)
    throw DimensionError("entry (" + std::to_string(i) + "," +
                         std::to_string(j) + ") out of range");
  if (diagonal_) return i == j ? data_[i] : 0.0;
  return data_[i * dimension_ + j];
}

std::vector<double> LinearOperator::apply_raw(std::span<const double> x) const {
  require_same_dimension(x.size(), dimension_, "apply");
  std::vector<double> out(dimension_, 0.0);
  if (diagonal_) {
    for (std::size_t i = 0; i < dimension_; ++i) out[i] = data_[i] * x[i];
    return out;
  }
  for (std::size_t i = 0; i < dimension_; ++i) {
    double acc = 0.0;
    const double* row = data_.data() + i * dimension_;
    for (std::size_t j = 0; j < dimension_; ++j) acc += row[j] * x[j];
    out[i] = acc;
  }
  return out;
}

LinearOperator LinearOperator::scaled(double factor) const {
  std::vector<double> data(data_);
  for (double& v : data) v *= factor;
  return LinearOperator(diagonal_, dimension_, std::move(data));
}

LinearOperator LinearOperator::shifted(double mu) const {
  std::vector<double> data(data_);
  if (diagonal_) {
    for (double& v : data) v += mu;
  } else {
    for (std::size_t i = 0; i < dimension_; ++i) data[i * dimension_ + i] += mu;
  }
  return LinearOperator(diagonal_, dimension_, std::move(data));
}

LinearOperator LinearOperator::to_dense() const {
  if (!diagonal_) return *this;
  std::vector<double> flat(dimension_ * dimension_, 0.0);
  for (std::size_t i = 0; i < dimension_; ++i)
    flat[i * dimension_ + i] = data_[i];
  return LinearOperator(false, dimension_, std::move(flat));
}

LinearOperator compose(const LinearOperator& outer,
                       const LinearOperator& inner) {
  require_same_dimension(outer.dimension(), inner.dimension(), "compose");
  const std::size_t n = outer.dimension();
  if (outer.is_diagonal() && inner.is_diagonal()) {
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i)
      d[i] = outer.diagonal_entries()[i] * inner.diagonal_entries()[i];
    return LinearOperator::diagonal(std::move(d));
  }
  std::vector<double> flat(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double oik = outer.entry(i, k);
      if (oik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j)
        flat[i * n + j] += oik * inner.entry(k, j);
    }
  return LinearOperator::dense(n, std::move(flat));
}

LinearOperator linear_combination(double alpha, const LinearOperator& a,
                                  double beta, const LinearOperator& b) {
  require_same_dimension(a.dimension(), b.dimension(), "linear_combination");
  const std::size_t n = a.dimension();
  if (a.is_diagonal() && b.is_diagonal()) {
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i)
      d[i] = alpha * a.diagonal_entries()[i] + beta * b.diagonal_entries()[i];
    return LinearOperator::diagonal(std::move(d));
  }
  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      flat[i * n + j] = alpha * a.entry(i, j) + beta * b.entry(i, j);
  return LinearOperator::dense(n, std::move(flat));
}

StateVector apply(const TriProductSpace& space, const LinearOperator& op,
                  const StateVector& x) {
  require_same_dimension(op.dimension(), space.dimension(), "apply");
  return space.state(op.apply_raw(x.span()));
}

SelfAdjointCheck check_3_self_adjoint(const TriProductSpace& space,
                                      const LinearOperator& op, double tol) {
  require_same_dimension(op.dimension(), space.dimension(),
                         "check_3_self_adjoint");
  const std::size_t n = space.dimension();

  // Columns A e_i, once.
  std::vector<std::vector<double>> columns(n);
  {
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = 1.0;
      columns[i] = op.apply_raw(e);
      e[i] = 0.0;
    }
  }

  SelfAdjointCheck result;
  result.tolerance = tol;

  std::vector<double> ei(n, 0.0), ej(n, 0.0), ek(n, 0.0);
  auto evaluate_triple = [&](std::size_t i, std::size_t j, std::size_t k) {
    ei[i] = 1.0;
    ej[j] = 1.0;
    ek[k] = 1.0;
    const double v1 = space.eval3(columns[i], ej, ek);
    const double v2 = space.eval3(ei, columns[j], ek);
    const double v3 = space.eval3(ei, ej, columns[k]);
    ei[i] = 0.0;
    ej[j] = 0.0;
    ek[k] = 0.0;

    const double d = std::max({std::abs(v1 - v2), std::abs(v1 - v3),
                               std::abs(v2 - v3)});
    if (d > result.max_discrepancy) {
      result.max_discrepancy = d;
      SelfAdjointnessWitness w;
      w.i = i + 1;
      w.j = j + 1;
      w.k = k + 1;
      w.op_first = v1;
      w.op_second = v2;
      w.op_third = v3;
      w.discrepancy = d;
      result.witness = w;
    }
  };

  // For the weighted pointwise form every triple with three distinct
  // indices evaluates to 0 in all three slots, so only triples with a
  // repeated index can discriminate. The (j,k,i) scan order makes the
  // first strict maximum the canonical witness (j,i,i) of the first
  // off-diagonal entry A_{ij} in row-major order.
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) {
        for (std::size_t i = 0; i < n; ++i) evaluate_triple(i, j, k);
      } else {
        evaluate_triple(std::min(j, k), j, k);
        evaluate_triple(std::max(j, k), j, k);
      }
    }

  result.ok = result.max_discrepancy <= tol;
  if (result.ok) result.witness.reset();
  return result;
}

SelfAdjointCheck check_3_self_adjoint(const TriProductSpace& space,
                                      const LinearOperator& op) {
  double max_entry = 0.0;
  for (std::size_t i = 0; i < op.dimension(); ++i)
    for (std::size_t j = 0; j < op.dimension(); ++j)
      max_entry = std::max(max_entry, std::abs(op.entry(i, j)));
  double max_weight = 0.0;
  for (double w : space.weights()) max_weight = std::max(max_weight, std::abs(w));
  const double tol = 1e-10 * (1.0 + max_entry * max_weight);
  return check_3_self_adjoint(space, op, tol);
}

RejectedInstanceError::RejectedInstanceError(
    std::string operator_name, const SelfAdjointnessWitness& witness)
    : Error([&] {
        std::ostringstream msg;
        msg << "operator " << operator_name
            << " is not 3-self-adjoint: witness (i,j,k)=(" << witness.i << ","
            << witness.j << "," << witness.k << "), slot values ("
            << witness.op_first << ", " << witness.op_second << ", "
            << witness.op_third << "), discrepancy " << witness.discrepancy;
        return msg.str();
      }()),
      operator_name_(std::move(operator_name)),
      witness_(witness) {}

}  // namespace triup
