#pragma once

#include "radial/core.hpp"
#include "radial/symbol.hpp"

#include <Eigen/Dense>

#include <vector>

namespace radial {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Entry (i, j) = φ(i+j+offset) - φ(i+j+offset+step), 0 ≤ i, j < size.
Matrix hankel_differences(const Sequence& phi, std::size_t size, std::size_t offset,
                          std::size_t step);

/// h = (φ(i+j) - φ(i+j+1)).
Matrix hankel_h(const RadialSymbol& sym, std::size_t size);
/// k = (φ(i+j+1) - φ(i+j+2)).
Matrix hankel_k(const RadialSymbol& sym, std::size_t size);
/// ĥ = (φ(i+j) - φ(i+j+2)).
Matrix hankel_hhat(const RadialSymbol& sym, std::size_t size);

/// Singular values in descending order. Throws NumericalFailure on
/// non-finite input or when the SVD does not converge.
std::vector<double> singular_values(const Matrix& a);

/// Tr|A|, the sum of the singular values.
double trace_norm(const Matrix& a);

/// Adaptive truncation: the matrix size doubles from `initial` until the trace
/// norms move by less than tol, or `cap` is reached. At the cap a norm ratio
/// above `divergence_ratio` between the last two sizes is read as divergence.
struct TruncationSchedule {
    std::size_t initial = 32;
    std::size_t cap = 4096;
    double divergence_ratio = 1.5;
};

struct HankelReport {
    std::size_t truncation = 0;
    double trace_norm_h = 0.0;
    double trace_norm_k = 0.0;
    double tail_abs = 0.0;
    double total = 0.0;
    bool converged = false;
    std::vector<double> singular_values_h;
    std::vector<double> singular_values_k;
};

struct CPrimeReport {
    std::size_t truncation = 0;
    double trace_norm_hhat = 0.0;
    Complex c1;
    Complex c2;
    double total = 0.0;
    bool converged = false;
    std::vector<double> singular_values_hhat;
};

/// ‖φ‖_𝒞 = ‖h‖₁ + ‖k‖₁ + |c|. Throws NotInClassC on divergence.
HankelReport c_norm(const RadialSymbol& sym, double tol = kDefaultTol,
                    const TruncationSchedule& schedule = {});
HankelReport c_norm(const Sequence& phi, Complex tail, double tol = kDefaultTol,
                    const TruncationSchedule& schedule = {});

/// ‖φ‖_𝒞′ = |c1| + |c2| + ‖ĥ‖₁ where φ(n) → c1 + (-1)^n c2. The parity
/// constants come from the even and odd tail limits. Throws NotInClassCPrime.
CPrimeReport cprime_norm(const RadialSymbol& sym, double tol = kDefaultTol,
                         const TruncationSchedule& schedule = {});
CPrimeReport cprime_norm(const DoubledSymbol& sym, double tol = kDefaultTol,
                         const TruncationSchedule& schedule = {});
CPrimeReport cprime_norm(const Sequence& phi, Complex even_tail, Complex odd_tail,
                         double tol = kDefaultTol, const TruncationSchedule& schedule = {});

/// One term x ⊙ y, i.e. the operator t ↦ ⟨t, y⟩ x.
struct RankOneTerm {
    Vector x;
    Vector y;
};

struct RankOneDecomposition {
    std::vector<RankOneTerm> terms;
    double nuclear_sum = 0.0;
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;

    std::size_t rank() const noexcept { return terms.size(); }
    /// Σ_i x_i y_i^*, sized like the decomposed matrix.
    Matrix reconstruct() const;
};

/// A = Σ_m x_m ⊙ y_m from the SVD with x_m = √σ_m u_m and y_m = √σ_m v_m.
/// Singular values below relative_cutoff·σ_max are dropped.
RankOneDecomposition rank_one_decompose(const Matrix& a,
                                        double relative_cutoff = kSvdRankCutoff);

} // namespace radial
