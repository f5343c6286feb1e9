//==============================================================================
// spectral.hpp
// Truncated Fourier representation on the unit torus with even/odd-in-z
// symmetric subspaces.
//
// Bases (orthonormal in L2(T^2)):
//   even:  phi_{k1,k2} = sqrt(2) e^{2 pi i k1 x} cos(2 pi k2 z)   (k2 >= 1)
//          phi_{k1,0}  = e^{2 pi i k1 x}
//   odd :  psi_{k1,k2} = sqrt(2) e^{2 pi i k1 x} sin(2 pi k2 z)   (k2 >= 1)
//
// Coefficients are stored on the k2 >= 0 half plane with explicit +-k1:
// a (2m+1) x (m+1) complex array, row r <-> k1 = r - m, col c <-> k2 = c.
// Real-valued fields satisfy a_{-k1,k2} = conj(a_{k1,k2}); every operation
// here preserves that symmetry. Odd fields keep the k2 = 0 column zero.
//
// Transforms are dense trig matrix products (Eigen), planned and cached per
// (m, nx, nz). Quadratic products are projected exactly: deg-m times deg-m
// content analyzed on a >= 3m+1 grid is alias-free for all retained modes.
//==============================================================================
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace pga {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

using Complex = std::complex<double>;

struct WaveIndex {
    int k1 = 0;  // horizontal wavenumber, |k1| <= m
    int k2 = 0;  // vertical wavenumber, 0 <= k2 <= m (>= 1 for odd parity)
};

enum class Parity { EvenZ, OddZ };

enum class Axis { X, Z };

// Real samples on the uniform grid over [0,1)^2; rows index x, columns z.
struct Grid {
    Eigen::ArrayXXd values;

    Grid() = default;
    Grid(int nx, int nz) : values(Eigen::ArrayXXd::Zero(nx, nz)) {}
    explicit Grid(Eigen::ArrayXXd v) : values(std::move(v)) {}

    int nx() const { return static_cast<int>(values.rows()); }
    int nz() const { return static_cast<int>(values.cols()); }
};

class SpectralField {
  public:
    SpectralField() = default;
    SpectralField(int m, Parity parity)
        : m_(m), parity_(parity),
          a_(Eigen::ArrayXXcd::Zero(2 * m + 1, m + 1)) {}

    static SpectralField zero(int m, Parity parity) { return {m, parity}; }

    int m() const { return m_; }
    Parity parity() const { return parity_; }
    bool empty() const { return a_.size() == 0; }

    const Eigen::ArrayXXcd& coeffs() const { return a_; }
    Eigen::ArrayXXcd& coeffs() { return a_; }

    Complex coeff(int k1, int k2) const { return a_(m_ + k1, k2); }

    // Sets a_{k1,k2} and mirrors the conjugate onto -k1.
    void set_coeff(int k1, int k2, Complex v) {
        a_(m_ + k1, k2) = v;
        a_(m_ - k1, k2) = std::conj(v);
        if (k1 == 0) a_(m_, k2) = Complex(v.real(), 0.0);
    }

    bool all_finite() const { return a_.allFinite(); }

    // max |a_{-k1,k2} - conj(a_{k1,k2})| over all retained modes.
    double conjugate_symmetry_defect() const;

    // Overwrites the k1 < 0 half plane with the conjugate of the k1 > 0 half
    // and forces the k1 = 0 row real.
    void symmetrize();

  private:
    int m_ = 0;
    Parity parity_ = Parity::EvenZ;
    Eigen::ArrayXXcd a_;
};

// --- transforms -------------------------------------------------------------

// L2-orthogonal projection of the sampled trigonometric polynomial onto the
// truncated even/odd subspace. Requires nx, nz >= 2m+1.
SpectralField analyze(const Grid& samples, Parity parity, int m);

// Point values of the field on the uniform nx x nz grid. Requires >= 2m+1.
Grid synthesize(const SpectralField& field, int nx, int nz);

// --- calculus ---------------------------------------------------------------

// d/dx keeps parity; d/dz flips it (cos -> -sin, sin -> +cos scaling by 2 pi k2).
SpectralField differentiate(const SpectralField& field, Axis axis);

// d^2/dz^2, parity preserving (multiplies mode k2 by -(2 pi k2)^2).
SpectralField second_derivative_z(const SpectralField& field);

SpectralField laplacian(const SpectralField& field);

// F(x,z) = int_0^z f(x,s) ds. Even input needs a vanishing k2 = 0 row
// (otherwise the primitive is not periodic); odd input populates the k2 = 0
// row of the even result through (1 - cos)/(2 pi k2).
SpectralField antiderivative_z(const SpectralField& field);

// Exact Galerkin projection of the pointwise product f*g onto the requested
// parity: synthesize on an internal alias-free grid, multiply, analyze back.
SpectralField galerkin_product(const SpectralField& f, const SpectralField& g,
                               Parity out_parity);

// --- norms and means --------------------------------------------------------

// || d_x^ax d_z^az f ||_{L2} by Parseval.
double sobolev_seminorm(const SpectralField& field, int ax, int az);

std::vector<std::pair<std::pair<int, int>, double>> sobolev_seminorms(
    const SpectralField& field, std::span<const std::pair<int, int>> orders);

double norm_l2(const SpectralField& field);

// L2 inner product; fields of opposite parity are orthogonal (returns 0).
double inner_product(const SpectralField& f, const SpectralField& g);

// int_0^1 f dz as an even field carried on the k2 = 0 row (zero for odd input).
SpectralField zmean(const SpectralField& field);

// Mean over the torus: the (0,0) coefficient (zero for odd parity).
double mean(const SpectralField& field);

// --- arithmetic -------------------------------------------------------------

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a);
SpectralField operator*(double s, const SpectralField& a);
SpectralField operator*(const SpectralField& a, double s);
SpectralField& operator+=(SpectralField& a, const SpectralField& b);
SpectralField& operator-=(SpectralField& a, const SpectralField& b);
SpectralField& operator*=(SpectralField& a, double s);

}  // namespace pga
