#include "leakywire/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "leakywire/detail/precond.hpp"
#include <sstream>

namespace leakywire {

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Orthonormalizes the columns of X via the Gram-matrix eigendecomposition,
// dropping near-null directions. Applies the same transform to Y (= H*X) when
// given, so Y stays consistent. Returns the kept column count.
int orthonormalize(Mat& X, Mat* Y, double drop_rel = 1e-12) {
    if (X.cols() == 0) return 0;
    Mat G = X.adjoint() * X;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (G + G.adjoint()));
    const auto& ev = es.eigenvalues();
    const double vmax = ev(ev.size() - 1);
    if (!(vmax > 0.0)) {
        X.resize(X.rows(), 0);
        if (Y) Y->resize(Y->rows(), 0);
        return 0;
    }
    int first = 0;
    while (first < ev.size() && ev(first) <= drop_rel * vmax) ++first;
    const int kept = static_cast<int>(ev.size()) - first;
    Mat T(X.cols(), kept);
    for (int j = 0; j < kept; ++j) {
        T.col(j) = es.eigenvectors().col(first + j) / std::sqrt(ev(first + j));
    }
    X = X * T;
    if (Y) *Y = (*Y) * T;
    return kept;
}

double gershgorin_upper(const DiscreteOperator::Sparse& M) {
    double ub = 0.0;
    for (int row = 0; row < M.outerSize(); ++row) {
        double diag = 0.0, off = 0.0;
        for (DiscreteOperator::Sparse::InnerIterator it(M, row); it; ++it) {
            if (it.row() == it.col())
                diag = it.value().real();
            else
                off += std::abs(it.value());
        }
        ub = std::max(ub, diag + off);
    }
    return ub;
}

// Chebyshev filter amplifying spectral components below `lb` relative to the
// window [lb, ub]; columns are renormalized to keep magnitudes tame.
void chebyshev_filter(const DiscreteOperator::Sparse& H, Mat& W, double lb, double ub,
                      int degree) {
    if (degree <= 0 || !(ub > lb)) return;
    const double c = 0.5 * (ub + lb);
    const double e = 0.5 * (ub - lb);
    Mat Yprev = W;
    Mat Ycur = (H * W - c * W) / e;
    for (int d = 1; d < degree; ++d) {
        Mat Ynext = 2.0 / e * (H * Ycur - c * Ycur) - Yprev;
        // renormalize per column each step (same factor for both iterates keeps
        // the recurrence direction while preventing overflow)
        for (int j = 0; j < Ynext.cols(); ++j) {
            const double nrm = Ynext.col(j).norm();
            if (nrm > 1.0) {
                Ynext.col(j) /= nrm;
                Ycur.col(j) /= nrm;
            }
        }
        Yprev.swap(Ycur);
        Ycur.swap(Ynext);
    }
    for (int j = 0; j < Ycur.cols(); ++j) {
        const double nrm = Ycur.col(j).norm();
        if (nrm > 0.0) Ycur.col(j) /= nrm;
    }
    if (Ycur.allFinite()) W = Ycur;
}

SpectralResult dense_lowest(const DiscreteOperator& op, int k) {
    Mat dense = Mat(op.matrix);
    Eigen::SelfAdjointEigenSolver<Mat> es(dense);
    SpectralResult res;
    res.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
    res.eigenvectors = es.eigenvectors().leftCols(k);
    res.residuals.resize(k);
    for (int j = 0; j < k; ++j) {
        res.residuals[j] = (op.matrix * res.eigenvectors.col(j) -
                            res.eigenvalues[j] * res.eigenvectors.col(j))
                               .norm();
    }
    res.iterations = 0;
    res.converged = true;
    res.diagnostics = "dense";
    return res;
}

}  // namespace

SpectralResult lowest_eigenpairs(const DiscreteOperator& op, int k, double tol) {
    SolverOptions opts;
    opts.k = k;
    opts.tol = tol;
    return lowest_eigenpairs(op, opts);
}

SpectralResult lowest_eigenpairs(const DiscreteOperator& op, const SolverOptions& opts) {
    const long N = op.dimension();
    const int k = opts.k;
    if (k < 1) throw std::invalid_argument("lowest_eigenpairs: k must be >= 1");
    if (k > N) throw std::invalid_argument("lowest_eigenpairs: dimension < k");
    if (!(opts.tol >= 1e-12 && opts.tol <= 1e-4)) {
        throw std::invalid_argument("lowest_eigenpairs: tol must lie in [1e-12, 1e-4]");
    }

    int m = opts.block > 0 ? opts.block : k + std::max(4, std::min(8, k));
    m = static_cast<int>(std::min<long>(m, N));

    if (N <= std::max<long>(400, 4L * m)) return dense_lowest(op, k);

    const auto& H = op.matrix;
    const double scale = std::max(op.diag_scale(), 1e-300);
    const double ub = gershgorin_upper(H) + 1e-12 * scale;

    RVec diag(N);
    for (long i = 0; i < N; ++i) diag(i) = H.coeff(i, i).real();

    // deterministic seeded start block
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Mat X(N, m);
    for (int j = 0; j < m; ++j) {
        for (long i = 0; i < N; ++i) X(i, j) = std::complex<double>(uni(rng), uni(rng));
    }
    orthonormalize(X, nullptr);

    // filter degree: 0 for small problems (pure Jacobi), deeper for large ones
    int cheb_degree = 0;
    if (N > 200000)
        cheb_degree = 20;
    else if (N > 20000)
        cheb_degree = 12;
    else if (N > 2000)
        cheb_degree = 6;

    Mat HX = H * X;
    Mat P(N, 0), HP(N, 0);
    RVec theta = RVec::Zero(m);

    SpectralResult res;
    res.converged = false;
    int it = 0;
    std::string note;

    for (it = 1; it <= opts.max_iter; ++it) {
        // Rayleigh-Ritz on span(X)
        {
            Mat G = X.adjoint() * HX;
            Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (G + G.adjoint()));
            theta = es.eigenvalues();
            X = X * es.eigenvectors();
            HX = HX * es.eigenvectors();
        }
        Mat R = HX - X * theta.asDiagonal();
        bool ok = true;
        for (int j = 0; j < k; ++j) {
            if (R.col(j).norm() > opts.tol * scale) {
                ok = false;
                break;
            }
        }
        if (ok) {
            res.converged = true;
            break;
        }

        // preconditioned residuals: exact free-Laplacian inverse (DST/DCT) for
        // grid-structured operators, Jacobi + Chebyshev filtering otherwise
        Mat W = R;
        bool preconditioned = false;
        if (op.structured) {
            const double spread =
                std::max(theta(m - 1) - theta(0), 1e-10 * scale);
            double sigma = theta(0) - spread;
            if (!(sigma < 0.0)) sigma = -spread;
            preconditioned = detail::apply_free_laplacian_inverse(op, W, sigma);
        }
        if (!preconditioned) {
            const double floor = 1e-8 * scale;
            for (int j = 0; j < m; ++j) {
                for (long i = 0; i < N; ++i) {
                    double d = diag(i) - theta(j);
                    if (std::abs(d) < floor) d = (d >= 0.0 ? floor : -floor);
                    W(i, j) /= d;
                }
            }
            if (cheb_degree > 0) {
                const double lb = theta(m - 1) + 1e-3 * (ub - theta(m - 1));
                chebyshev_filter(H, W, lb, ub, cheb_degree);
            }
        }

        // orthogonalize W against X and P, then internally
        W -= X * (X.adjoint() * W);
        if (P.cols() > 0) W -= P * (P.adjoint() * W);
        const int kept_w = orthonormalize(W, nullptr);
        if (kept_w == 0) {
            note = "residual block collapsed (rank breakdown)";
            break;
        }
        Mat HW = H * W;

        const int pw = static_cast<int>(P.cols());
        Mat S(N, m + kept_w + pw), HS(N, m + kept_w + pw);
        S.leftCols(m) = X;
        S.middleCols(m, kept_w) = W;
        HS.leftCols(m) = HX;
        HS.middleCols(m, kept_w) = HW;
        if (pw > 0) {
            S.rightCols(pw) = P;
            HS.rightCols(pw) = HP;
        }

        Mat G = S.adjoint() * HS;
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (G + G.adjoint()));
        const Mat Y = es.eigenvectors().leftCols(m);

        Mat Xn = S * Y;
        Mat HXn = HS * Y;
        const Mat Ytail = Y.bottomRows(kept_w + pw);
        Mat Pn = S.rightCols(kept_w + pw) * Ytail;
        Mat HPn = HS.rightCols(kept_w + pw) * Ytail;

        // keep P orthogonal to X so the next basis stays well conditioned
        Mat proj = Xn.adjoint() * Pn;
        Pn -= Xn * proj;
        HPn -= HXn * proj;
        orthonormalize(Pn, &HPn);

        X.swap(Xn);
        HX.swap(HXn);
        P.swap(Pn);
        HP.swap(HPn);
    }

    // final Ritz rotation + exact residuals
    {
        Mat G = X.adjoint() * HX;
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (G + G.adjoint()));
        theta = es.eigenvalues();
        X = X * es.eigenvectors();
    }
    res.eigenvalues.assign(theta.data(), theta.data() + k);
    res.eigenvectors = X.leftCols(k);
    res.residuals.resize(k);
    for (int j = 0; j < k; ++j) {
        res.residuals[j] =
            (H * X.col(j) - theta(j) * X.col(j)).norm();
    }
    res.iterations = std::min(it, opts.max_iter);
    if (!res.converged) {
        bool ok = true;
        for (int j = 0; j < k; ++j) ok = ok && res.residuals[j] <= opts.tol * scale;
        res.converged = ok;
    }
    std::ostringstream diag_msg;
    diag_msg << "lobpcg block=" << m
             << (op.structured ? " precond=dst" : " precond=jacobi")
             << " cheb=" << cheb_degree;
    if (!note.empty()) diag_msg << " [" << note << "]";
    if (!res.converged) diag_msg << " [iteration cap reached]";
    res.diagnostics = diag_msg.str();
    return res;
}

double rayleigh_quotient(const DiscreteOperator& op, const Eigen::VectorXcd& v) {
    const double nrm2 = v.squaredNorm();
    if (!(nrm2 > 0.0)) throw std::invalid_argument("rayleigh_quotient: zero vector");
    const std::complex<double> q = v.adjoint() * (op.matrix * v);
    return q.real() / nrm2;
}

int count_below(const SpectralResult& result, double threshold, double margin) {
    if (!result.converged) {
        throw std::invalid_argument("count_below: spectral result not converged");
    }
    int count = 0;
    for (double lam : result.eigenvalues) {
        if (lam < threshold - margin) ++count;
    }
    return count;
}

}  // namespace leakywire
