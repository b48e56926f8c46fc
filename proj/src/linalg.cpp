#include "scatter/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace scatter {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::column(std::size_t j) const {
    Matrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
}

bool Matrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw invalid_input_error("matrix product: dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw invalid_input_error("matrix sum: dimension mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw invalid_input_error("matrix difference: dimension mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
    return c;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix c = a;
    for (double& v : c.data()) v *= s;
    return c;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw invalid_input_error("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

SymMatrix SymMatrix::identity(std::size_t dim) {
    SymMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& diag) {
    SymMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
    return m;
}

SymMatrix SymMatrix::from_dense(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) throw invalid_input_error("SymMatrix: matrix not square");
    SymMatrix m(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j) {
            if (std::abs(a(i, j) - a(j, i)) > tol * std::max(1.0, std::abs(a(i, j))))
                throw invalid_input_error("SymMatrix: input not symmetric within tolerance");
            m.set(i, j, 0.5 * (a(i, j) + a(j, i)));
        }
    return m;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double SymMatrix::frobenius() const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * (*this)(i, j);
    return std::sqrt(s);
}

Matrix SymMatrix::dense() const {
    Matrix m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
    return m;
}

bool SymMatrix::all_finite() const {
    return std::all_of(packed_.begin(), packed_.end(),
                       [](double v) { return std::isfinite(v); });
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
    if (other.dim_ != dim_) throw invalid_input_error("SymMatrix sum: dimension mismatch");
    for (std::size_t i = 0; i < packed_.size(); ++i) packed_[i] += other.packed_[i];
    return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
    for (double& v : packed_) v *= s;
    return *this;
}

SymMatrix operator*(double s, const SymMatrix& a) {
    SymMatrix c = a;
    c *= s;
    return c;
}

double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
    if (a.dim() != b.dim()) throw invalid_input_error("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i; j < a.dim(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

double frobenius_diff(const SymMatrix& a, const SymMatrix& b) {
    if (a.dim() != b.dim()) throw invalid_input_error("frobenius_diff: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const double v = a(i, j) - b(i, j);
            s += v * v;
        }
    return std::sqrt(s);
}

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition sym_eig(const SymMatrix& input) {
    if (!input.all_finite()) throw invalid_input_error("sym_eig: non-finite entries");
    const std::size_t n = input.dim();
    Matrix a = input.dense();
    Matrix q = Matrix::identity(n);

    const double norm = std::max(frobenius_norm(a), 1e-300);
    const double threshold = 1e-14 * norm;
    const int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t r = p + 1; r < n; ++r) {
                const double apr = a(p, r);
                if (std::abs(apr) <= 1e-18 * norm) continue;
                const double tau = (a(r, r) - a(p, p)) / (2.0 * apr);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akr = a(k, r);
                    a(k, p) = c * akp - s * akr;
                    a(k, r) = s * akp + c * akr;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), ark = a(r, k);
                    a(p, k) = c * apk - s * ark;
                    a(r, k) = s * apk + c * ark;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double qkp = q(k, p), qkr = q(k, r);
                    q(k, p) = c * qkp - s * qkr;
                    q(k, r) = s * qkp + c * qkr;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = q(i, order[k]);
    }
    return out;
}

std::vector<double> singular_values(const Matrix& b, bool unit_bounded) {
    if (!b.all_finite()) throw invalid_input_error("singular_values: non-finite entries");
    const std::size_t m = b.cols();
    SymMatrix gram(m == 0 ? 1 : m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < b.rows(); ++k) s += b(k, i) * b(k, j);
            gram.set(i, j, s);
        }
    EigenDecomposition eig = sym_eig(gram);
    std::vector<double> sv(m);
    for (std::size_t i = 0; i < m; ++i) {
        double v = std::sqrt(std::max(eig.values[i], 0.0));
        if (unit_bounded) v = std::min(v, 1.0);
        sv[i] = v;
    }
    return sv;
}

std::size_t Spectrum::group_offset(std::size_t j) const {
    std::size_t off = 0;
    for (std::size_t k = 0; k < j; ++k) off += multiplicities[k];
    return off;
}

SymMatrix Spectrum::projector(std::size_t j) const {
    if (j >= group_count()) throw invalid_input_error("Spectrum::projector: group out of range");
    const std::size_t d = dim();
    const std::size_t off = group_offset(j);
    SymMatrix p(d);
    for (std::size_t col = off; col < off + multiplicities[j]; ++col)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = i; k < d; ++k)
                p.set(i, k, p(i, k) + basis(i, col) * basis(k, col));
    return p;
}

SymMatrix Spectrum::reconstruct() const {
    const std::size_t d = dim();
    SymMatrix a(d);
    for (std::size_t j = 0; j < group_count(); ++j) {
        SymMatrix pj = projector(j);
        pj *= distinct_values[j];
        a += pj;
    }
    return a;
}

Spectrum group_spectrum(const EigenDecomposition& eig, double tau) {
    const std::size_t d = eig.values.size();
    const double scale = std::max(std::abs(eig.values.front()), 1.0);
    Spectrum s;
    s.basis = eig.vectors;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= d; ++i) {
        if (i == d || eig.values[i - 1] - eig.values[i] > tau * scale) {
            double sum = 0.0;
            for (std::size_t k = start; k < i; ++k) sum += eig.values[k];
            s.distinct_values.push_back(sum / double(i - start));
            s.multiplicities.push_back(i - start);
            start = i;
        }
    }
    return s;
}

Spectrum group_spectrum_forced(const EigenDecomposition& eig,
                               const std::vector<std::size_t>& multiplicities) {
    const std::size_t d = eig.values.size();
    std::size_t total = 0;
    for (std::size_t m : multiplicities) {
        if (m == 0) throw invalid_input_error("group_spectrum_forced: zero multiplicity");
        total += m;
    }
    if (total != d) throw invalid_input_error("group_spectrum_forced: multiplicities must sum to d");
    Spectrum s;
    s.basis = eig.vectors;
    s.multiplicities = multiplicities;
    std::size_t start = 0;
    for (std::size_t m : multiplicities) {
        double sum = 0.0;
        for (std::size_t k = start; k < start + m; ++k) sum += eig.values[k];
        s.distinct_values.push_back(sum / double(m));
        start += m;
    }
    return s;
}

std::vector<double> vec(const Matrix& a) {
    std::vector<double> v(a.rows() * a.cols());
    std::size_t idx = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) v[idx++] = a(i, j);
    return v;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    if (!a.all_finite() || !b.all_finite()) throw invalid_input_error("kron: non-finite entries");
    Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            if (aij == 0.0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

Matrix commutation_matrix(std::size_t d) {
    if (d == 0) throw invalid_input_error("commutation_matrix: d must be >= 1");
    Matrix k(d * d, d * d);
    // K vec(A) = vec(A^T): entry (i,j) of A sits at vec index i + j*d and
    // must land at j + i*d.
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) k(j + i * d, i + j * d) = 1.0;
    return k;
}

Matrix cholesky(const SymMatrix& a) {
    const std::size_t n = a.dim();
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > 0.0)) throw domain_error("cholesky: matrix not positive definite");
        l(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

std::vector<double> cholesky_solve(const Matrix& l, const std::vector<double>& b) {
    const std::size_t n = l.rows();
    if (b.size() != n) throw invalid_input_error("cholesky_solve: dimension mismatch");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * y[k];
        y[ii] = s / l(ii, ii);
    }
    return y;
}

SymMatrix sqrt_pd(const SymMatrix& a) {
    EigenDecomposition eig = sym_eig(a);
    const std::size_t n = a.dim();
    if (eig.values.back() <= 0.0)
        throw domain_error("sqrt_pd: matrix not positive definite");
    SymMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += eig.vectors(i, k) * std::sqrt(eig.values[k]) * eig.vectors(j, k);
            r.set(i, j, s);
        }
    return r;
}

}  // namespace scatter
