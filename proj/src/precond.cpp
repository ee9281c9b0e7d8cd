#include "leakywire/detail/precond.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include <fftw3.h>

namespace leakywire::detail {

namespace {

// FFTW plan creation is not thread-safe; execution with new arrays is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
    double norm = 1.0;  // fwd+inv round-trip scaling per 1D transform
};

// Batched 1D r2r transforms along the contiguous axis of an n x rows buffer.
PlanPair& get_plans(int n, int rows, Bc bc) {
    static std::map<std::tuple<int, int, int>, PlanPair> cache;
    std::lock_guard<std::mutex> lock(plan_mutex());
    const auto key = std::make_tuple(n, rows, static_cast<int>(bc));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    double* buf = fftw_alloc_real(static_cast<std::size_t>(n) * rows);
    PlanPair p;
    const int sizes[1] = {n};
    if (bc == Bc::dirichlet) {
        const fftw_r2r_kind kind[1] = {FFTW_RODFT00};
        p.fwd = fftw_plan_many_r2r(1, sizes, rows, buf, nullptr, 1, n, buf, nullptr, 1,
                                   n, kind, FFTW_ESTIMATE);
        p.inv = p.fwd;  // DST-I is its own inverse up to 2(n+1)
        p.norm = 2.0 * (n + 1);
    } else {
        const fftw_r2r_kind kf[1] = {FFTW_REDFT10};
        const fftw_r2r_kind ki[1] = {FFTW_REDFT01};
        p.fwd = fftw_plan_many_r2r(1, sizes, rows, buf, nullptr, 1, n, buf, nullptr, 1,
                                   n, kf, FFTW_ESTIMATE);
        p.inv = fftw_plan_many_r2r(1, sizes, rows, buf, nullptr, 1, n, buf, nullptr, 1,
                                   n, ki, FFTW_ESTIMATE);
        p.norm = 2.0 * n;
    }
    fftw_free(buf);
    return cache.emplace(key, p).first->second;
}

// 1D free-Laplacian eigenvalues for the two stencils.
std::vector<double> free_eigs(int n, double h, Bc bc) {
    std::vector<double> mu(n);
    const double pi = std::numbers::pi;
    for (int j = 0; j < n; ++j) {
        const double angle = bc == Bc::dirichlet ? (j + 1) * pi / (n + 1) : j * pi / n;
        mu[j] = 2.0 * (1.0 - std::cos(angle)) / (h * h);
    }
    return mu;
}

struct AlignedBuffer {
    double* p = nullptr;
    explicit AlignedBuffer(std::size_t n) : p(fftw_alloc_real(n)) {}
    ~AlignedBuffer() { fftw_free(p); }
    AlignedBuffer(const AlignedBuffer&) = delete;
    AlignedBuffer& operator=(const AlignedBuffer&) = delete;
};

void transpose(const double* src, double* dst, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) dst[static_cast<std::size_t>(j) * n + i] =
            src[static_cast<std::size_t>(i) * n + j];
    }
}

}  // namespace

bool apply_free_laplacian_inverse(const DiscreteOperator& op, Eigen::MatrixXcd& R,
                                  double sigma) {
    if (!(sigma < 0.0)) return false;
    const int n = op.axis_nodes;
    if (n < 3) return false;

    const std::vector<double> mu = free_eigs(n, op.h, op.bc);

    if (op.space_dim == 1) {
        if (R.rows() != n) return false;
        PlanPair& plans = get_plans(n, 1, op.bc);
        AlignedBuffer re(n), im(n);
        for (int col = 0; col < R.cols(); ++col) {
            for (int i = 0; i < n; ++i) {
                re.p[i] = R(i, col).real();
                im.p[i] = R(i, col).imag();
            }
            fftw_execute_r2r(plans.fwd, re.p, re.p);
            fftw_execute_r2r(plans.fwd, im.p, im.p);
            for (int j = 0; j < n; ++j) {
                const double f = 1.0 / ((mu[j] - sigma) * plans.norm);
                re.p[j] *= f;
                im.p[j] *= f;
            }
            fftw_execute_r2r(plans.inv, re.p, re.p);
            fftw_execute_r2r(plans.inv, im.p, im.p);
            for (int i = 0; i < n; ++i) R(i, col) = {re.p[i], im.p[i]};
        }
        return true;
    }

    if (op.space_dim != 2 || R.rows() != static_cast<long>(n) * n) return false;
    PlanPair& plans = get_plans(n, n, op.bc);
    const std::size_t N = static_cast<std::size_t>(n) * n;
    AlignedBuffer re(N), im(N), tmp(N);

    for (int col = 0; col < R.cols(); ++col) {
        for (std::size_t i = 0; i < N; ++i) {
            re.p[i] = R(static_cast<long>(i), col).real();
            im.p[i] = R(static_cast<long>(i), col).imag();
        }
        for (double* part : {re.p, im.p}) {
            // transform along iy (contiguous), then along ix via transpose
            fftw_execute_r2r(plans.fwd, part, part);
            transpose(part, tmp.p, n);
            fftw_execute_r2r(plans.fwd, tmp.p, tmp.p);
            // tmp is now indexed [iy-frequency][ix-frequency]
            for (int jy = 0; jy < n; ++jy) {
                for (int jx = 0; jx < n; ++jx) {
                    const double f =
                        1.0 /
                        ((mu[jx] + mu[jy] - sigma) * plans.norm * plans.norm);
                    tmp.p[static_cast<std::size_t>(jy) * n + jx] *= f;
                }
            }
            fftw_execute_r2r(plans.inv, tmp.p, tmp.p);
            transpose(tmp.p, part, n);
            fftw_execute_r2r(plans.inv, part, part);
        }
        for (std::size_t i = 0; i < N; ++i) {
            R(static_cast<long>(i), col) = {re.p[i], im.p[i]};
        }
    }
    return true;
}

}  // namespace leakywire::detail
