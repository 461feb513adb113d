#include "sso/eigensolver.hpp"
#include "sso/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

extern "C" {
void dsbevx_(const char* jobz, const char* range, const char* uplo,
             const int* n, const int* kd, double* ab, const int* ldab,
             double* q, const int* ldq, const double* vl, const double* vu,
             const int* il, const int* iu, const double* abstol,
             int* m, double* w, double* z, const int* ldz,
             double* work, int* iwork, int* ifail, int* info);

void dgbtrf_(const int* m, const int* n, const int* kl, const int* ku,
             double* ab, const int* ldab, int* ipiv, int* info);

void dgbtrs_(const char* trans, const int* n, const int* kl, const int* ku,
             const int* nrhs, const double* ab, const int* ldab,
             const int* ipiv, double* b, const int* ldb, int* info);
}

namespace sso {

namespace {

constexpr double EPS = std::numeric_limits<double>::epsilon();

double nrm2(const std::vector<double>& x)
{
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Eigenvalues only: bisection on the band matrix (LAPACK reduces to
// tridiagonal internally).  abstol at the safe-minimum level gives the most
// accurate values the representation allows.
std::vector<double> band_eigenvalues(const BandedHamiltonian& H, int k)
{
    const int n = H.n, kd = H.kd, ldab = kd + 1;
    std::vector<double> ab(H.ab);  // dsbevx destroys its input band

    const char jobz = 'N', range = 'I', uplo = 'L';
    const int il = 1, iu = k, ldq = 1, ldz = 1;
    const double vl = 0.0, vu = 0.0;
    const double abstol = 2.0 * std::numeric_limits<double>::min();

    int m = 0, info = 0;
    std::vector<double> w(n), work(7 * n);
    std::vector<int> iwork(5 * n), ifail(n);
    double qdummy = 0.0, zdummy = 0.0;

    dsbevx_(&jobz, &range, &uplo, &n, &kd, ab.data(), &ldab, &qdummy, &ldq,
            &vl, &vu, &il, &iu, &abstol, &m, w.data(), &zdummy, &ldz,
            work.data(), iwork.data(), ifail.data(), &info);

    if (info != 0)
        throw SolverError("dsbevx failed with info = " + std::to_string(info));
    if (m != k)
        throw SolverError("dsbevx returned " + std::to_string(m) +
                          " of " + std::to_string(k) + " eigenvalues");
    w.resize(k);
    return w;
}

// LU factorization of (H - shift I) in LAPACK general-band storage.
struct ShiftedFactor {
    int n, kl, ku, ldab;
    std::vector<double> ab;
    std::vector<int> ipiv;

    ShiftedFactor(const BandedHamiltonian& H, double shift)
        : n(H.n), kl(H.kd), ku(H.kd), ldab(2 * H.kd + H.kd + 1),
          ab(static_cast<size_t>(ldab) * n, 0.0), ipiv(n)
    {
        for (int j = 0; j < n; ++j)
            for (int i = std::max(0, j - ku); i <= std::min(n - 1, j + kl); ++i) {
                double v = H.entry(i, j);
                if (i == j) v -= shift;
                ab[static_cast<size_t>(j) * ldab + (kl + ku + i - j)] = v;
            }
        int info = 0;
        dgbtrf_(&n, &n, &kl, &ku, ab.data(), &ldab, ipiv.data(), &info);
        singular = info > 0;
        if (info < 0)
            throw SolverError("dgbtrf failed with info = " + std::to_string(info));
    }

    bool singular = false;

    void solve(std::vector<double>& x) const
    {
        const char trans = 'N';
        const int nrhs = 1;
        int info = 0;
        dgbtrs_(&trans, &n, &kl, &ku, &nrhs, ab.data(), &ldab, ipiv.data(),
                x.data(), &n, &info);
        if (info != 0)
            throw SolverError("dgbtrs failed with info = " + std::to_string(info));
    }
};

void orthogonalize_against(std::vector<double>& x,
                           const std::vector<std::vector<double>>& basis,
                           size_t first, size_t last)
{
    for (size_t b = first; b < last; ++b) {
        double c = dot(x, basis[b]);
        for (size_t i = 0; i < x.size(); ++i) x[i] -= c * basis[b][i];
    }
}

// Inverse iteration for one eigenvalue.  The start vector is drawn from a
// fixed-seed generator so results are reproducible bit for bit.  Members of
// a near-degenerate cluster (basis[first..last)) are projected out at every
// step, mirroring what dstein does for tight clusters.
std::vector<double> inverse_iteration(const BandedHamiltonian& H, double E,
                                      double norm_h, double res_target, int index,
                                      const std::vector<std::vector<double>>& done,
                                      size_t cluster_first, double& res_out)
{
    const int n = H.n;
    std::vector<double> x(n), y(n);

    for (int attempt = 0; attempt < 5; ++attempt) {
        // small shift perturbation on retries unsticks exactly singular pivots
        double shift = E + attempt * 64.0 * EPS * norm_h;
        ShiftedFactor lu(H, shift);
        if (lu.singular) {
            shift += 64.0 * EPS * std::max(norm_h, 1.0);
            lu = ShiftedFactor(H, shift);
        }

        std::mt19937_64 rng(0x53534f2d696e7631ULL + 977u * static_cast<uint64_t>(index)
                            + static_cast<uint64_t>(attempt));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int i = 0; i < n; ++i) x[i] = u(rng);
        orthogonalize_against(x, done, cluster_first, done.size());
        double nx = nrm2(x);
        for (int i = 0; i < n; ++i) x[i] /= nx;

        for (int it = 0; it < 8; ++it) {
            lu.solve(x);
            orthogonalize_against(x, done, cluster_first, done.size());
            nx = nrm2(x);
            if (!(nx > 0.0) || !std::isfinite(nx))
                break;
            for (int i = 0; i < n; ++i) x[i] /= nx;

            H.apply(x, y);
            double r = 0.0;
            for (int i = 0; i < n; ++i) {
                double d = y[i] - E * x[i];
                r += d * d;
            }
            r = std::sqrt(r);
            if (r <= res_target) {
                res_out = r;
                return x;
            }
        }
    }
    throw SolverError("inverse iteration failed to reach the residual target "
                      "for eigenpair " + std::to_string(index), index);
}

} // namespace

BandEigenResult solve_band_lowest(const BandedHamiltonian& H, int k, double tol)
{
    if (k < 1 || k > H.n)
        throw ConfigError("requested eigenpair count k must satisfy 1 <= k <= dimension");
    if (!(tol > 0.0))
        throw ConfigError("eigensolver tolerance must be positive");

    BandEigenResult out;
    out.energies = band_eigenvalues(H, k);

    const double norm_h = std::max(H.norm_bound(), std::numeric_limits<double>::min());
    const double res_target = tol * norm_h;
    const double cluster_gap = 1e-12 * norm_h;

    out.vectors.reserve(k);
    out.residuals.resize(k);
    size_t cluster_first = 0;
    for (int i = 0; i < k; ++i) {
        if (i > 0 && out.energies[i] - out.energies[i - 1] >= cluster_gap)
            cluster_first = static_cast<size_t>(i);
        double res = 0.0;
        out.vectors.push_back(inverse_iteration(H, out.energies[i], norm_h, res_target,
                                                i, out.vectors, cluster_first, res));
        out.residuals[i] = res;
    }
    return out;
}

EigenSolution solve_lowest(const BandedHamiltonian& H, const Grid& grid, int k, double tol)
{
    if (H.n != grid.n_points)
        throw ConfigError("matrix dimension does not match grid point count");

    BandEigenResult raw = solve_band_lowest(H, k, tol);

    EigenSolution sol{std::move(raw.energies), std::move(raw.vectors),
                      std::move(raw.residuals), grid};
    const double scale = 1.0 / std::sqrt(grid.h);
    for (auto& psi : sol.states) {
        double amax = 0.0;
        for (double v : psi) amax = std::max(amax, std::fabs(v));
        double sign = 1.0;
        for (double v : psi)
            if (std::fabs(v) > 1e-3 * amax) {
                sign = v < 0.0 ? -1.0 : 1.0;
                break;
            }
        for (double& v : psi) v *= sign * scale;
    }
    return sol;
}

double residual_norm(const BandedHamiltonian& H, double E, const std::vector<double>& psi)
{
    if (static_cast<int>(psi.size()) != H.n)
        throw ConfigError("state length does not match matrix dimension");
    std::vector<double> y;
    H.apply(psi, y);
    double r = 0.0;
    for (int i = 0; i < H.n; ++i) {
        double d = y[i] - E * psi[i];
        r += d * d;
    }
    double np = nrm2(psi);
    if (!(np > 0.0))
        throw ConfigError("cannot compute a residual for the zero vector");
    return std::sqrt(r) / np;
}

} // namespace sso
