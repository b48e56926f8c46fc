#ifndef SCATTER_LINALG_HPP
#define SCATTER_LINALG_HPP

#include <cstddef>
#include <vector>

#include "scatter/errors.hpp"

namespace scatter {

// Dense row-major matrix. Sized for the small problems this library deals
// with (d <= 10, tensor blocks up to d^2 x d^2).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    Matrix transposed() const;
    Matrix column(std::size_t j) const;

    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

double frobenius_norm(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

// Symmetric d x d matrix with packed upper-triangle storage, so
// entries(i,j) == entries(j,i) holds exactly by construction.
class SymMatrix {
public:
    explicit SymMatrix(std::size_t dim) : dim_(dim), packed_(dim * (dim + 1) / 2, 0.0) {
        if (dim == 0) throw invalid_input_error("SymMatrix: dimension must be >= 1");
    }

    static SymMatrix identity(std::size_t dim);
    static SymMatrix diagonal(const std::vector<double>& diag);
    // Symmetrizes (A + A^T)/2; rejects inputs that are asymmetric beyond tol.
    static SymMatrix from_dense(const Matrix& a, double tol = 1e-9);

    std::size_t dim() const { return dim_; }

    double operator()(std::size_t i, std::size_t j) const { return packed_[index(i, j)]; }
    void set(std::size_t i, std::size_t j, double v) { packed_[index(i, j)] = v; }

    double trace() const;
    double frobenius() const;
    Matrix dense() const;
    bool all_finite() const;

    SymMatrix& operator+=(const SymMatrix& other);
    SymMatrix& operator*=(double s);

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        return i * dim_ - i * (i - 1) / 2 + (j - i);
    }

    std::size_t dim_;
    std::vector<double> packed_;
};

SymMatrix operator*(double s, const SymMatrix& a);
double max_abs_diff(const SymMatrix& a, const SymMatrix& b);
double frobenius_diff(const SymMatrix& a, const SymMatrix& b);

// Eigendecomposition of a symmetric matrix: A = Q diag(values) Q^T with
// eigenvalues sorted descending and orthonormal columns of Q.
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;  // d x d, column k pairs with values[k]
};

// Cyclic Jacobi rotations. Converges when the off-diagonal Frobenius norm
// drops below 1e-14 * ||A||_F; at most 100 sweeps (plenty for d <= ~100).
EigenDecomposition sym_eig(const SymMatrix& a);

// Descending singular values of a rectangular matrix, computed from the
// eigenvalues of B^T B. With unit_bounded the caller asserts B is a product
// of orthonormal bases, and values are clamped to [0, 1].
std::vector<double> singular_values(const Matrix& b, bool unit_bounded = false);

// Grouped spectrum: distinct eigenvalues (descending) with multiplicities
// and an orthonormal basis whose columns are grouped by eigenvalue.
struct Spectrum {
    std::vector<double> distinct_values;
    std::vector<std::size_t> multiplicities;
    Matrix basis;

    std::size_t dim() const { return basis.rows(); }
    std::size_t group_count() const { return distinct_values.size(); }
    std::size_t group_offset(std::size_t j) const;
    // Eigenprojection P_j = sum of q q^T over the group's columns.
    SymMatrix projector(std::size_t j) const;
    SymMatrix reconstruct() const;
};

// Groups consecutive eigenvalues whose gap is below tau * max(|lambda_1|, 1).
Spectrum group_spectrum(const EigenDecomposition& eig, double tau = 1e-8);
// Caller-imposed multiplicity pattern (must sum to d).
Spectrum group_spectrum_forced(const EigenDecomposition& eig,
                               const std::vector<std::size_t>& multiplicities);

// vec(A): columns stacked into one vector.
std::vector<double> vec(const Matrix& a);

// Kronecker product (pr x qs from p x q and r x s).
Matrix kron(const Matrix& a, const Matrix& b);

// Commutation matrix K_{d,d}: K vec(A) = vec(A^T), K^2 = I.
Matrix commutation_matrix(std::size_t d);

// Cholesky factor L (lower) of a positive definite symmetric matrix.
// Throws domain_error if a pivot is not strictly positive.
Matrix cholesky(const SymMatrix& a);

// Solves L L^T x = b given the Cholesky factor.
std::vector<double> cholesky_solve(const Matrix& l, const std::vector<double>& b);

// Unique positive definite square root Q diag(sqrt(lambda)) Q^T.
SymMatrix sqrt_pd(const SymMatrix& a);

}  // namespace scatter

#endif
