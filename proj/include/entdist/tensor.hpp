// tensor.hpp — dense complex linear algebra over mixed-radix tensor-product spaces.
//
// Index convention is little-endian mixed radix throughout: subsystem 0 is the
// least significant digit, so a basis index decomposes as
//   k = sum_mu n_mu * stride(mu),   stride(mu) = prod_{nu < mu} d_nu.
// For all-qubit systems this is the usual k = sum_mu n_mu 2^mu.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace entdist {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxTotalDimension = std::size_t{1} << 24;

/// Per-subsystem dimensions d_0..d_{M-1} plus the little-endian strides.
class Dims {
public:
    explicit Dims(std::vector<int> d) : d_(std::move(d)) {
        if (d_.empty()) throw std::invalid_argument("Dims: need at least one subsystem");
        stride_.resize(d_.size());
        std::size_t total = 1;
        for (std::size_t mu = 0; mu < d_.size(); ++mu) {
            if (d_[mu] < 2) throw std::invalid_argument("Dims: every d_mu must be >= 2");
            stride_[mu] = total;
            if (total > kMaxTotalDimension / static_cast<std::size_t>(d_[mu]))
                throw std::length_error("Dims: total dimension exceeds 2^24");
            total *= static_cast<std::size_t>(d_[mu]);
        }
        total_ = total;
    }

    static Dims qubits(int m) { return Dims(std::vector<int>(static_cast<std::size_t>(m), 2)); }
    static Dims qudits(int m, int d) { return Dims(std::vector<int>(static_cast<std::size_t>(m), d)); }

    int count() const { return static_cast<int>(d_.size()); }
    int dim(int mu) const { return d_.at(static_cast<std::size_t>(mu)); }
    std::size_t total() const { return total_; }
    std::size_t stride(int mu) const { return stride_.at(static_cast<std::size_t>(mu)); }
    const std::vector<int>& dims() const { return d_; }

    /// Digit n_mu of basis index k.
    int digit(std::size_t k, int mu) const {
        return static_cast<int>((k / stride_[static_cast<std::size_t>(mu)]) %
                                static_cast<std::size_t>(d_[static_cast<std::size_t>(mu)]));
    }

    /// k with digit mu replaced by n.
    std::size_t with_digit(std::size_t k, int mu, int n) const {
        const std::size_t s = stride_[static_cast<std::size_t>(mu)];
        return k + (static_cast<std::size_t>(n) - static_cast<std::size_t>(digit(k, mu))) * s;
    }

    bool all_qubits() const {
        return std::all_of(d_.begin(), d_.end(), [](int d) { return d == 2; });
    }

    bool operator==(const Dims& o) const { return d_ == o.d_; }

private:
    std::vector<int> d_;
    std::vector<std::size_t> stride_;
    std::size_t total_ = 1;
};

/// Square dense complex matrix, row-major.
class DenseOperator {
public:
    DenseOperator() : dim_(0) {}
    explicit DenseOperator(std::size_t dim) : dim_(dim), a_(dim * dim, cplx{0.0, 0.0}) {}

    static DenseOperator identity(std::size_t dim) {
        DenseOperator op(dim);
        for (std::size_t i = 0; i < dim; ++i) op(i, i) = 1.0;
        return op;
    }

    std::size_t dim() const { return dim_; }
    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
    std::span<const cplx> data() const { return a_; }
    std::span<cplx> data() { return a_; }

    cplx trace() const {
        cplx t{0.0, 0.0};
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    DenseOperator adjoint() const {
        DenseOperator r(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    bool is_hermitian(double tol) const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i; j < dim_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        return true;
    }

    bool is_unitary(double tol) const {
        // ||U^dag U - I||_F <= tol
        double s = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                cplx e{0.0, 0.0};
                for (std::size_t k = 0; k < dim_; ++k)
                    e += std::conj((*this)(k, i)) * (*this)(k, j);
                if (i == j) e -= 1.0;
                s += std::norm(e);
            }
        }
        return std::sqrt(s) <= tol;
    }

    DenseOperator& operator+=(const DenseOperator& o) {
        check_same(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    DenseOperator& operator-=(const DenseOperator& o) {
        check_same(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    DenseOperator& operator*=(cplx z) {
        for (cplx& e : a_) e *= z;
        return *this;
    }

    friend DenseOperator operator+(DenseOperator a, const DenseOperator& b) { return a += b; }
    friend DenseOperator operator-(DenseOperator a, const DenseOperator& b) { return a -= b; }
    friend DenseOperator operator*(cplx z, DenseOperator a) { return a *= z; }

    friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
        a.check_same(b);
        DenseOperator r(a.dim_);
        for (std::size_t i = 0; i < a.dim_; ++i)
            for (std::size_t k = 0; k < a.dim_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < a.dim_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

private:
    void check_same(const DenseOperator& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("DenseOperator: dimension mismatch");
    }

    std::size_t dim_;
    std::vector<cplx> a_;
};

/// Rectangular dense complex matrix (row-major); used for ensemble isometries.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> a;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, cplx{0.0, 0.0}) {}

    cplx& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    /// ||V^dag V - I||_F; zero for an exact isometry (columns orthonormal).
    double isometry_defect() const {
        double s = 0.0;
        for (std::size_t i = 0; i < cols; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                cplx e{0.0, 0.0};
                for (std::size_t k = 0; k < rows; ++k) e += std::conj((*this)(k, i)) * (*this)(k, j);
                if (i == j) e -= 1.0;
                s += std::norm(e);
            }
        return std::sqrt(s);
    }
};

/// Normalized state over a mixed-radix tensor-product space.
class StateVector {
public:
    /// Normalizes the given amplitudes; rejects zero or non-finite input.
    StateVector(Dims dims, std::vector<cplx> amps) : dims_(std::move(dims)), amps_(std::move(amps)) {
        if (amps_.size() != dims_.total())
            throw std::invalid_argument("StateVector: amplitude count does not match dims");
        normalize();
    }

    /// Keeps amplitudes exactly as given (no normalization).  Callers that
    /// need the normalized-state guarantee must check norm() themselves.
    static StateVector raw(Dims dims, std::vector<cplx> amps) {
        StateVector s(Tag::kRaw, std::move(dims), std::move(amps));
        return s;
    }

    static StateVector basis_state(Dims dims, std::size_t k) {
        std::vector<cplx> a(dims.total(), cplx{0.0, 0.0});
        a.at(k) = 1.0;
        return StateVector(std::move(dims), std::move(a));
    }

    const Dims& dims() const { return dims_; }
    std::size_t size() const { return amps_.size(); }
    const cplx& operator[](std::size_t k) const { return amps_[k]; }
    const std::vector<cplx>& amplitudes() const { return amps_; }

    double norm() const {
        double s = 0.0;
        for (const cplx& z : amps_) s += std::norm(z);
        return std::sqrt(s);
    }

    void normalize() {
        const double n = norm();
        if (!std::isfinite(n) || n <= 0.0)
            throw std::invalid_argument("StateVector: cannot normalize zero or non-finite amplitudes");
        for (cplx& z : amps_) z /= n;
    }

private:
    enum class Tag { kRaw };
    StateVector(Tag, Dims dims, std::vector<cplx> amps)
        : dims_(std::move(dims)), amps_(std::move(amps)) {
        if (amps_.size() != dims_.total())
            throw std::invalid_argument("StateVector: amplitude count does not match dims");
    }

    Dims dims_;
    std::vector<cplx> amps_;
};

inline cplx inner_product(const StateVector& a, const StateVector& b) {
    if (!(a.dims() == b.dims())) throw std::invalid_argument("inner_product: dims mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
    return s;
}

/// |a> (x) |b> with b's subsystems appended as the more significant digits.
inline StateVector tensor_product(const StateVector& a, const StateVector& b) {
    std::vector<int> d = a.dims().dims();
    d.insert(d.end(), b.dims().dims().begin(), b.dims().dims().end());
    const std::size_t da = a.size();
    std::vector<cplx> amps(da * b.size());
    for (std::size_t kb = 0; kb < b.size(); ++kb)
        for (std::size_t ka = 0; ka < da; ++ka) amps[kb * da + ka] = a[ka] * b[kb];
    return StateVector(Dims(std::move(d)), std::move(amps));
}

/// Kronecker product: (a (x) b)[(ia*db+ib),(ja*db+jb)] = a[ia,ja] b[ib,jb].
inline DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
    const std::size_t da = a.dim(), db = b.dim();
    if (da != 0 && db > kMaxTotalDimension / da)
        throw std::length_error("kron: result dimension exceeds 2^24");
    DenseOperator r(da * db);
    for (std::size_t ia = 0; ia < da; ++ia)
        for (std::size_t ja = 0; ja < da; ++ja) {
            const cplx aij = a(ia, ja);
            if (aij == cplx{0.0, 0.0}) continue;
            for (std::size_t ib = 0; ib < db; ++ib)
                for (std::size_t jb = 0; jb < db; ++jb)
                    r(ia * db + ib, ja * db + jb) = aij * b(ib, jb);
        }
    return r;
}

/// D x D operator acting as `op` on digit mu and as identity elsewhere.
inline DenseOperator embed_local(const DenseOperator& op, int mu, const Dims& dims) {
    if (mu < 0 || mu >= dims.count()) throw std::invalid_argument("embed_local: mu out of range");
    const int d = dims.dim(mu);
    if (op.dim() != static_cast<std::size_t>(d))
        throw std::invalid_argument("embed_local: operator dimension does not match d_mu");
    const std::size_t dtot = dims.total();
    const std::size_t s = dims.stride(mu);
    DenseOperator r(dtot);
    for (std::size_t k = 0; k < dtot; ++k) {
        const int n = dims.digit(k, mu);
        const std::size_t base = k - static_cast<std::size_t>(n) * s;
        for (int np = 0; np < d; ++np)
            r(k, base + static_cast<std::size_t>(np) * s) =
                op(static_cast<std::size_t>(n), static_cast<std::size_t>(np));
    }
    return r;
}

/// Applies a d_mu x d_mu operator to digit mu of the amplitude vector.
inline std::vector<cplx> apply_local(const Dims& dims, std::span<const cplx> amps,
                                     const DenseOperator& op, int mu) {
    if (mu < 0 || mu >= dims.count()) throw std::invalid_argument("apply_local: mu out of range");
    const int d = dims.dim(mu);
    if (op.dim() != static_cast<std::size_t>(d))
        throw std::invalid_argument("apply_local: operator dimension does not match d_mu");
    const std::size_t s = dims.stride(mu);
    std::vector<cplx> out(amps.size(), cplx{0.0, 0.0});
    for (std::size_t k = 0; k < amps.size(); ++k) {
        const int n = dims.digit(k, mu);
        const std::size_t base = k - static_cast<std::size_t>(n) * s;
        cplx acc{0.0, 0.0};
        for (int np = 0; np < d; ++np)
            acc += op(static_cast<std::size_t>(n), static_cast<std::size_t>(np)) *
                   amps[base + static_cast<std::size_t>(np) * s];
        out[k] = acc;
    }
    return out;
}

/// Applies a single-subsystem unitary; the result keeps unit norm.
inline StateVector apply_local_unitary(const StateVector& state, const DenseOperator& u, int mu) {
    return StateVector(state.dims(), apply_local(state.dims(), state.amplitudes(), u, mu));
}

inline cplx expectation(const StateVector& state, const DenseOperator& op) {
    if (op.dim() != state.size()) throw std::invalid_argument("expectation: dimension mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < op.dim(); ++i) {
        cplx row{0.0, 0.0};
        for (std::size_t j = 0; j < op.dim(); ++j) row += op(i, j) * state[j];
        s += std::conj(state[i]) * row;
    }
    return s;
}

/// Reduced density matrix on the kept subsystems (ascending order), traced
/// over the rest.  `keep` must be a non-empty strict subset of {0..M-1}.
inline DenseOperator partial_trace(const StateVector& state, const std::vector<int>& keep) {
    const Dims& dims = state.dims();
    std::vector<int> ks = keep;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    if (ks.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
    if (ks.front() < 0 || ks.back() >= dims.count())
        throw std::invalid_argument("partial_trace: subsystem index out of range");
    if (static_cast<int>(ks.size()) == dims.count())
        throw std::invalid_argument("partial_trace: keep set must be a strict subset");

    std::vector<int> ts;
    for (int mu = 0; mu < dims.count(); ++mu)
        if (!std::binary_search(ks.begin(), ks.end(), mu)) ts.push_back(mu);

    // Separable offsets: full index = kept_offset[i] + traced_offset[t].
    auto offsets = [&dims](const std::vector<int>& subs) {
        std::size_t n = 1;
        for (int mu : subs) n *= static_cast<std::size_t>(dims.dim(mu));
        std::vector<std::size_t> off(n, 0);
        std::size_t repeat = 1;
        for (int mu : subs) {
            const std::size_t d = static_cast<std::size_t>(dims.dim(mu));
            const std::size_t s = dims.stride(mu);
            for (std::size_t i = 0; i < n; ++i) off[i] += ((i / repeat) % d) * s;
            repeat *= d;
        }
        return off;
    };
    const std::vector<std::size_t> koff = offsets(ks);
    const std::vector<std::size_t> toff = offsets(ts);

    const std::size_t dk = koff.size();
    DenseOperator rho(dk);
    std::vector<cplx> fiber(dk);
    for (std::size_t t : toff) {
        for (std::size_t i = 0; i < dk; ++i) fiber[i] = state[koff[i] + t];
        for (std::size_t i = 0; i < dk; ++i) {
            const cplx ci = fiber[i];
            if (ci == cplx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < dk; ++j) rho(i, j) += ci * std::conj(fiber[j]);
        }
    }
    return rho;
}

}  // namespace entdist
