#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace nhkit {

using cplx = std::complex<double>;
inline constexpr cplx I_unit{0.0, 1.0};

template <int D>
using CVec = Eigen::Matrix<cplx, D, 1>;
template <int D>
using CMat = Eigen::Matrix<cplx, D, D>;
template <int D>
using RVec = Eigen::Matrix<double, D, 1>;
template <int D>
using RMat = Eigen::Matrix<double, D, D>;

// c + sum_i y_i Y_i + sum_i d_i d/dY_i
template <int D>
struct LinearForm {
    cplx c{0.0, 0.0};
    CVec<D> y = CVec<D>::Zero();
    CVec<D> d = CVec<D>::Zero();

    static LinearForm constant(cplx v) { LinearForm L; L.c = v; return L; }
    static LinearForm coord(int i, cplx s = 1.0) { LinearForm L; L.y(i) = s; return L; }
    static LinearForm deriv(int i, cplx s = 1.0) { LinearForm L; L.d(i) = s; return L; }

    LinearForm operator+(const LinearForm& o) const { LinearForm r; r.c = c + o.c; r.y = y + o.y; r.d = d + o.d; return r; }
    LinearForm operator-(const LinearForm& o) const { return *this + o * cplx(-1.0); }
    LinearForm operator*(cplx s) const { LinearForm r; r.c = c * s; r.y = y * s; r.d = d * s; return r; }
    friend LinearForm operator*(cplx s, const LinearForm& L) { return L * s; }
};

// constant + linear_y.y + linear_d.d + y^T quad_yy y - sum quad_dd_ij d_i d_j
//          + sum quad_yd_ij (y_i d_j + d_j y_i)/2
template <int D>
struct QuadraticOperator {
    cplx constant{0.0, 0.0};
    CVec<D> linear_y = CVec<D>::Zero();
    CVec<D> linear_d = CVec<D>::Zero();
    CMat<D> quad_yy = CMat<D>::Zero();
    CMat<D> quad_dd = CMat<D>::Zero();
    CMat<D> quad_yd = CMat<D>::Zero();

    static QuadraticOperator scalar(cplx v) { QuadraticOperator Q; Q.constant = v; return Q; }

    static QuadraticOperator from(const LinearForm<D>& L)
    {
        QuadraticOperator Q;
        Q.constant = L.c;
        Q.linear_y = L.y;
        Q.linear_d = L.d;
        return Q;
    }

    QuadraticOperator operator+(const QuadraticOperator& o) const
    {
        QuadraticOperator r;
        r.constant = constant + o.constant;
        r.linear_y = linear_y + o.linear_y;
        r.linear_d = linear_d + o.linear_d;
        r.quad_yy = quad_yy + o.quad_yy;
        r.quad_dd = quad_dd + o.quad_dd;
        r.quad_yd = quad_yd + o.quad_yd;
        return r;
    }
    QuadraticOperator operator*(cplx s) const
    {
        QuadraticOperator r = *this;
        r.constant *= s;
        r.linear_y *= s;
        r.linear_d *= s;
        r.quad_yy *= s;
        r.quad_dd *= s;
        r.quad_yd *= s;
        return r;
    }
    QuadraticOperator operator-(const QuadraticOperator& o) const { return *this + o * cplx(-1.0); }
    friend QuadraticOperator operator*(cplx s, const QuadraticOperator& Q) { return Q * s; }
    QuadraticOperator operator+(cplx s) const { QuadraticOperator r = *this; r.constant += s; return r; }
    QuadraticOperator operator-(cplx s) const { return *this + (-s); }

    bool is_linear() const
    {
        return quad_yy.cwiseAbs().maxCoeff() == 0.0 && quad_dd.cwiseAbs().maxCoeff() == 0.0
               && quad_yd.cwiseAbs().maxCoeff() == 0.0;
    }

    LinearForm<D> linear_part() const
    {
        LinearForm<D> L;
        L.c = constant;
        L.y = linear_y;
        L.d = linear_d;
        return L;
    }

    // coefficient pattern of a Hermitian generator
    bool hermitian_generator(double tol = 1e-12) const
    {
        auto small = [tol](double x) { return std::fabs(x) <= tol; };
        if (!small(constant.imag())) return false;
        for (int i = 0; i < D; ++i) {
            if (!small(linear_y(i).imag()) || !small(linear_d(i).real())) return false;
            for (int j = 0; j < D; ++j) {
                if (!small(quad_yy(i, j).imag()) || !small(quad_dd(i, j).imag()) || !small(quad_yd(i, j).real())) return false;
                if (!small(std::abs(quad_yy(i, j) - quad_yy(j, i))) || !small(std::abs(quad_dd(i, j) - quad_dd(j, i)))) return false;
            }
        }
        return true;
    }
};

// Product of two linear forms, normal-ordered into symmetrized form.
template <int D>
QuadraticOperator<D> operator*(const LinearForm<D>& A, const LinearForm<D>& B)
{
    QuadraticOperator<D> Q;
    Q.constant = A.c * B.c;
    Q.linear_y = A.c * B.y + B.c * A.y;
    Q.linear_d = A.c * B.d + B.c * A.d;
    Q.quad_yy = 0.5 * (A.y * B.y.transpose() + B.y * A.y.transpose());
    Q.quad_dd = -0.5 * (A.d * B.d.transpose() + B.d * A.d.transpose());
    // y_i d_j = S_ij - delta_ij/2 and d_i y_j = S_ji + delta_ij/2
    Q.quad_yd = A.y * B.d.transpose() + B.y * A.d.transpose();
    Q.constant += -0.5 * (A.y.array() * B.d.array()).sum() + 0.5 * (A.d.array() * B.y.array()).sum();
    return Q;
}

template <int D>
QuadraticOperator<D> symmetric_product(const LinearForm<D>& A, const LinearForm<D>& B)
{
    return (A * B + B * A) * cplx(0.5);
}

// Affine canonical frame: psi(y) = exp(i(k0.y + y^T Q y / 2)) Phi(x) with x = Lambda R^T (y - y0),
// Phi expanded in unit-scale Hermite functions.
template <int D>
struct Frame {
    RVec<D> y0 = RVec<D>::Zero();
    RVec<D> k0 = RVec<D>::Zero();
    RMat<D> Q = RMat<D>::Zero();
    RMat<D> R = RMat<D>::Identity();
    RVec<D> lambda = RVec<D>::Ones();

    static Frame scaled(double lam)
    {
        Frame f;
        f.lambda = RVec<D>::Constant(lam);
        return f;
    }

    LinearForm<D> y_form(int i) const
    {
        LinearForm<D> L;
        L.c = y0(i);
        for (int k = 0; k < D; ++k) L.y(k) = R(i, k) / lambda(k);
        return L;
    }

    LinearForm<D> d_form(int i) const
    {
        const RMat<D> RiL = R * lambda.cwiseInverse().asDiagonal();
        const RVec<D> grad0 = k0 + Q * y0;
        const RMat<D> QRiL = Q * RiL;
        LinearForm<D> L;
        L.c = I_unit * grad0(i);
        for (int k = 0; k < D; ++k) {
            L.y(k) = I_unit * QRiL(i, k);
            L.d(k) = R(i, k) * lambda(k);
        }
        return L;
    }

    LinearForm<D> transform(const LinearForm<D>& L) const
    {
        LinearForm<D> out = LinearForm<D>::constant(L.c);
        for (int i = 0; i < D; ++i) out = out + y_form(i) * L.y(i) + d_form(i) * L.d(i);
        return out;
    }

    QuadraticOperator<D> transform(const QuadraticOperator<D>& Q) const
    {
        QuadraticOperator<D> out = QuadraticOperator<D>::from(transform(Q.linear_part()));
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) {
                const auto yi = y_form(i), yj = y_form(j), di = d_form(i), dj = d_form(j);
                if (Q.quad_yy(i, j) != 0.0) out = out + symmetric_product(yi, yj) * Q.quad_yy(i, j);
                if (Q.quad_dd(i, j) != 0.0) out = out - symmetric_product(di, dj) * Q.quad_dd(i, j);
                if (Q.quad_yd(i, j) != 0.0) out = out + symmetric_product(yi, dj) * Q.quad_yd(i, j);
            }
        return out;
    }
};

// Galerkin matrices of a unit-scale Hermite basis on one axis.
struct Axis1D {
    int N = 0;
    Eigen::MatrixXd X, Dx, XX, DD, S;

    explicit Axis1D(int n) : N(n)
    {
        const int Ne = n + 2;
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(Ne, Ne);
        for (int k = 1; k < Ne; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
        const Eigen::MatrixXd Xe = (a + a.transpose()) / std::sqrt(2.0);
        const Eigen::MatrixXd De = (a - a.transpose()) / std::sqrt(2.0);
        X = Xe.topLeftCorner(n, n);
        Dx = De.topLeftCorner(n, n);
        XX = (Xe * Xe).topLeftCorner(n, n);
        DD = (De * De).topLeftCorner(n, n);
        S = (0.5 * (Xe * De + De * Xe)).topLeftCorner(n, n);
    }
};

template <int D>
class HermiteBasis {
public:
    HermiteBasis(int N, Frame<D> frame) : N_(N), frame_(std::move(frame)), axis_(N)
    {
        if (N < 4) throw std::invalid_argument("Hermite cutoff must be at least 4");
        size_ = 1;
        for (int i = 0; i < D; ++i) size_ *= N;
    }

    int N() const { return N_; }
    int size() const { return size_; }
    const Frame<D>& frame() const { return frame_; }
    const Axis1D& axis() const { return axis_; }

    // 1D matrix of a frame-coordinate linear form restricted to one axis
    Eigen::MatrixXcd axis_linear(cplx cx, cplx cd) const
    {
        return cx * axis_.X.cast<cplx>() + cd * axis_.Dx.cast<cplx>();
    }

    // Matrix of an operator already written in frame coordinates.
    Eigen::MatrixXcd frame_matrix(const QuadraticOperator<D>& Q) const
    {
        const auto& A = axis_;
        const Eigen::MatrixXcd Id = Eigen::MatrixXcd::Identity(N_, N_);
        const Eigen::MatrixXcd X = A.X.cast<cplx>(), Dx = A.Dx.cast<cplx>(), XX = A.XX.cast<cplx>(),
                               DD = A.DD.cast<cplx>(), S = A.S.cast<cplx>();
        Eigen::MatrixXcd M = Q.constant * Eigen::MatrixXcd::Identity(size_, size_);
        if constexpr (D == 1) {
            M += Q.linear_y(0) * X + Q.linear_d(0) * Dx + Q.quad_yy(0, 0) * XX - Q.quad_dd(0, 0) * DD + Q.quad_yd(0, 0) * S;
        } else {
            static_assert(D == 2, "dims must be 1 or 2");
            auto on0 = [&](const Eigen::MatrixXcd& B) { return kron(B, Id); };
            auto on1 = [&](const Eigen::MatrixXcd& B) { return kron(Id, B); };
            const Eigen::MatrixXcd ax0 = Q.linear_y(0) * X + Q.linear_d(0) * Dx + Q.quad_yy(0, 0) * XX
                                         - Q.quad_dd(0, 0) * DD + Q.quad_yd(0, 0) * S;
            const Eigen::MatrixXcd ax1 = Q.linear_y(1) * X + Q.linear_d(1) * Dx + Q.quad_yy(1, 1) * XX
                                         - Q.quad_dd(1, 1) * DD + Q.quad_yd(1, 1) * S;
            M += on0(ax0) + on1(ax1);
            M += (Q.quad_yy(0, 1) + Q.quad_yy(1, 0)) * kron(X, X);
            M -= (Q.quad_dd(0, 1) + Q.quad_dd(1, 0)) * kron(Dx, Dx);
            M += Q.quad_yd(0, 1) * kron(X, Dx);
            M += Q.quad_yd(1, 0) * kron(Dx, X);
        }
        return M;
    }

    Eigen::MatrixXcd matrix(const QuadraticOperator<D>& Q) const { return frame_matrix(frame_.transform(Q)); }

    // index of mode (n0, n1)
    int index(int n0, int n1 = 0) const { return D == 1 ? n0 : n0 * N_ + n1; }

    bool top_mode(int idx) const
    {
        const int cut = N_ - N_ / 4;
        if constexpr (D == 1) return idx >= cut;
        else return idx / N_ >= cut || idx % N_ >= cut;
    }

    static Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B)
    {
        Eigen::MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
        for (int i = 0; i < A.rows(); ++i)
            for (int j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
        return K;
    }

private:
    int N_;
    int size_;
    Frame<D> frame_;
    Axis1D axis_;
};

template <int D>
using BasisPtr = std::shared_ptr<const HermiteBasis<D>>;

template <int D>
BasisPtr<D> ladder_build(int N, double lambda)
{
    return std::make_shared<const HermiteBasis<D>>(N, Frame<D>::scaled(lambda));
}

template <int D>
BasisPtr<D> make_basis(int N, const Frame<D>& frame)
{
    return std::make_shared<const HermiteBasis<D>>(N, frame);
}

template <int D>
struct HermiteState {
    BasisPtr<D> basis;
    Eigen::VectorXcd coeffs;

    HermiteState() = default;
    explicit HermiteState(BasisPtr<D> b) : basis(std::move(b)), coeffs(Eigen::VectorXcd::Zero(basis->size())) {}
    HermiteState(BasisPtr<D> b, Eigen::VectorXcd c) : basis(std::move(b)), coeffs(std::move(c))
    {
        if (coeffs.size() != basis->size()) throw std::invalid_argument("coefficient length does not match basis");
    }

    double norm() const { return coeffs.norm(); }

    // mass in the top quarter of modes along any axis
    double resolution_metric() const
    {
        double s = 0.0;
        for (int i = 0; i < coeffs.size(); ++i)
            if (basis->top_mode(i)) s += std::norm(coeffs(i));
        return s;
    }

    bool well_resolved(double tol = 1e-8) const { return resolution_metric() <= tol; }

    HermiteState with(Eigen::VectorXcd c) const { return HermiteState(basis, std::move(c)); }
};

template <int D>
double distance(const HermiteState<D>& a, const HermiteState<D>& b)
{
    return (a.coeffs - b.coeffs).norm();
}

// Block-diagonal Hermitian eigendecomposition: exp(i t M) applied blockwise.
class SpectralExp {
public:
    SpectralExp() = default;

    explicit SpectralExp(const Eigen::MatrixXcd& M, double hermitian_tol = 1e-10)
    {
        const int n = static_cast<int>(M.rows());
        n_ = n;
        const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
        hermiticity_ = (M - M.adjoint()).cwiseAbs().maxCoeff() / scale;
        if (hermiticity_ > hermitian_tol) throw std::invalid_argument("generator matrix is not Hermitian");
        const double thr = 1e-14 * scale;

        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (std::abs(M(i, j)) > thr) {
                    const int a = find(i), b = find(j);
                    if (a != b) parent[a] = b;
                }
        std::vector<std::vector<int>> groups(n);
        for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
        for (auto& g : groups) {
            if (g.empty()) continue;
            Block blk;
            blk.idx = g;
            const int m = static_cast<int>(g.size());
            Eigen::MatrixXcd sub(m, m);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) sub(a, b) = 0.5 * (M(g[a], g[b]) + std::conj(M(g[b], g[a])));
            if (m == 1) {
                blk.w = Eigen::VectorXd::Constant(1, sub(0, 0).real());
                blk.V = Eigen::MatrixXcd::Identity(1, 1);
            } else {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sub);
                blk.w = es.eigenvalues();
                blk.V = es.eigenvectors();
            }
            blocks_.push_back(std::move(blk));
        }
    }

    int size() const { return n_; }
    std::size_t block_count() const { return blocks_.size(); }
    double hermiticity() const { return hermiticity_; }

    Eigen::VectorXcd apply(double t, const Eigen::VectorXcd& x) const
    {
        Eigen::VectorXcd out(x.size());
        for (const auto& blk : blocks_) {
            const int m = static_cast<int>(blk.idx.size());
            Eigen::VectorXcd sub(m);
            for (int a = 0; a < m; ++a) sub(a) = x(blk.idx[a]);
            Eigen::VectorXcd c = blk.V.adjoint() * sub;
            for (int a = 0; a < m; ++a) c(a) *= std::exp(I_unit * (t * blk.w(a)));
            sub = blk.V * c;
            for (int a = 0; a < m; ++a) out(blk.idx[a]) = sub(a);
        }
        return out;
    }

    Eigen::VectorXd eigenvalues() const
    {
        Eigen::VectorXd w(n_);
        int k = 0;
        for (const auto& blk : blocks_)
            for (int a = 0; a < blk.w.size(); ++a) w(k++) = blk.w(a);
        std::sort(w.data(), w.data() + n_);
        return w;
    }

    Eigen::MatrixXcd matrix(double t) const
    {
        Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(n_, n_);
        for (const auto& blk : blocks_) {
            const int m = static_cast<int>(blk.idx.size());
            Eigen::MatrixXcd sub = blk.V * (I_unit * t * blk.w).array().exp().matrix().asDiagonal() * blk.V.adjoint();
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) U(blk.idx[a], blk.idx[b]) = sub(a, b);
        }
        return U;
    }

private:
    struct Block {
        std::vector<int> idx;
        Eigen::VectorXd w;
        Eigen::MatrixXcd V;
    };
    int n_ = 0;
    double hermiticity_ = 0.0;
    std::vector<Block> blocks_;
};

// exp(i (alpha x + beta p)) on the first N modes, p = -i d/dx.
// Entries from the Laguerre closed form; the ladder recurrence loses digits once |z| > 1.
inline Eigen::MatrixXcd exact_displacement_1d(int N, double alpha, double beta)
{
    const cplx z = cplx(-beta, alpha) / std::sqrt(2.0);
    const double x = std::norm(z);
    Eigen::MatrixXcd Dm(N, N);
    for (int k = 0; k < N; ++k) {
        // L_n^{(k)}(x) by the three-term recurrence in n
        double Lprev = 0.0, L = 1.0;
        const cplx zk = std::pow(z, k), wk = std::pow(-std::conj(z), k);
        for (int n = 0; n + k < N; ++n) {
            if (n == 1) {
                Lprev = 1.0;
                L = 1.0 + k - x;
            } else if (n > 1) {
                const double Ln = ((2.0 * n - 1.0 + k - x) * L - (n - 1.0 + k) * Lprev) / n;
                Lprev = L;
                L = Ln;
            }
            const int m = n + k;
            const double mag = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)) - 0.5 * x) * L;
            Dm(m, n) = mag * zk;
            if (k > 0) Dm(n, m) = mag * wk;
        }
    }
    return Dm;
}

// exp(i t L) for a Hermitian linear form, factorized over frame axes.
template <int D>
class LinearExp {
public:
    enum class Mode { Truncated, ExactBlock };

    LinearExp(const BasisPtr<D>& basis, const LinearForm<D>& L, double t = 1.0, Mode mode = Mode::Truncated) : basis_(basis)
    {
        const LinearForm<D> F = basis->frame().transform(L);
        phase_ = std::exp(I_unit * t * F.c);
        const int N = basis->N();
        for (int k = 0; k < D; ++k) {
            if (mode == Mode::Truncated) {
                const Eigen::MatrixXcd A = basis->axis_linear(F.y(k), F.d(k));
                const Eigen::MatrixXcd H = 0.5 * (A + A.adjoint());
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
                U_[k] = es.eigenvectors() * (I_unit * t * es.eigenvalues()).array().exp().matrix().asDiagonal()
                        * es.eigenvectors().adjoint();
            } else {
                // alpha x + gamma d/dx = alpha x + (i gamma) p
                const double alpha = t * F.y(k).real();
                const double beta = t * (I_unit * F.d(k)).real();
                U_[k] = exact_displacement_1d(N, alpha, beta);
            }
        }
    }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const
    {
        const int N = basis_->N();
        if constexpr (D == 1) {
            return phase_ * (U_[0] * x);
        } else {
            Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> C(x.data(), N, N);
            Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> R = U_[0] * C * U_[1].transpose();
            return phase_ * Eigen::Map<Eigen::VectorXcd>(R.data(), N * N);
        }
    }

    HermiteState<D> apply(const HermiteState<D>& psi) const { return psi.with(apply(psi.coeffs)); }

    const Eigen::MatrixXcd& axis_matrix(int k) const { return U_[k]; }
    cplx phase() const { return phase_; }

private:
    BasisPtr<D> basis_;
    cplx phase_{1.0, 0.0};
    Eigen::MatrixXcd U_[D];
};

template <int D>
HermiteState<D> exp_apply(const QuadraticOperator<D>& Q, double t, const HermiteState<D>& psi)
{
    if (!Q.hermitian_generator(1e-10)) throw std::invalid_argument("exp_apply needs a Hermitian generator");
    if (Q.is_linear()) return LinearExp<D>(psi.basis, Q.linear_part(), t).apply(psi);
    const SpectralExp E(psi.basis->matrix(Q));
    return psi.with(E.apply(t, psi.coeffs));
}

// e^{i a.y} followed by the translation y -> y - b
template <int D>
HermiteState<D> displacement_apply(const RVec<D>& a, const RVec<D>& b, const HermiteState<D>& psi)
{
    LinearForm<D> phase, shift;
    for (int i = 0; i < D; ++i) {
        phase.y(i) = a(i);
        shift.d(i) = I_unit * b(i);  // exp(i (i b.d)) = exp(-b.d)
    }
    const auto E = LinearExp<D>(psi.basis, phase).apply(psi);
    return LinearExp<D>(psi.basis, shift).apply(E);
}

// Frame-coordinate Hermite function values, for spot checks against closed forms.
inline Eigen::VectorXd hermite_functions(int N, double x)
{
    Eigen::VectorXd h(N);
    h(0) = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    if (N > 1) h(1) = std::sqrt(2.0) * x * h(0);
    for (int n = 2; n < N; ++n)
        h(n) = std::sqrt(2.0 / n) * x * h(n - 1) - std::sqrt((n - 1.0) / n) * h(n - 2);
    return h;
}

// Physical wavefunction value psi(y) of a state.
template <int D>
cplx evaluate(const HermiteState<D>& psi, const RVec<D>& y)
{
    const Frame<D>& fr = psi.basis->frame();
    const RVec<D> x = fr.lambda.asDiagonal() * (fr.R.transpose() * (y - fr.y0));
    const double phase = fr.k0.dot(y) + 0.5 * y.dot(fr.Q * y);
    const double jac = std::sqrt(fr.lambda.prod());
    const int N = psi.basis->N();
    cplx s = 0.0;
    if constexpr (D == 1) {
        const Eigen::VectorXd h = hermite_functions(N, x(0));
        for (int n = 0; n < N; ++n) s += psi.coeffs(n) * h(n);
    } else {
        const Eigen::VectorXd h0 = hermite_functions(N, x(0)), h1 = hermite_functions(N, x(1));
        for (int n = 0; n < N; ++n)
            for (int m = 0; m < N; ++m) s += psi.coeffs(n * N + m) * h0(n) * h1(m);
    }
    return jac * std::exp(I_unit * phase) * s;
}

}  // namespace nhkit
