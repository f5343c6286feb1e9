#include "pga/spectral.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace pga {

namespace {

// Dense trig transform tables for one (m, nx, nz) combination. The k1 < 0
// rows/columns are mirrored from k1 > 0 so that analysis of real samples is
// conjugate-symmetric bit for bit.
struct TransformPlan {
    Eigen::MatrixXcd Ex;   // nx x (2m+1), e^{2 pi i k1 x_n}
    Eigen::MatrixXd EHr;   // (2m+1) x nx, Re conj(e^{2 pi i k1 x_n})
    Eigen::MatrixXd EHi;   // (2m+1) x nx, Im conj(e^{2 pi i k1 x_n})
    Eigen::MatrixXd Ce;    // nz x (m+1), even z-basis values
    Eigen::MatrixXd Co;    // nz x (m+1), odd z-basis values (col 0 zero)
};

std::shared_ptr<const TransformPlan> get_plan(int m, int nx, int nz) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const TransformPlan>> cache;

    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(m, nx, nz);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    auto plan = std::make_shared<TransformPlan>();
    plan->Ex.resize(nx, 2 * m + 1);
    plan->EHr.resize(2 * m + 1, nx);
    plan->EHi.resize(2 * m + 1, nx);
    for (int n = 0; n < nx; ++n) {
        const double x = static_cast<double>(n) / nx;
        for (int k1 = 0; k1 <= m; ++k1) {
            const double c = std::cos(kTwoPi * k1 * x);
            const double s = std::sin(kTwoPi * k1 * x);
            plan->Ex(n, m + k1) = Complex(c, s);
            plan->Ex(n, m - k1) = Complex(c, -s);
            plan->EHr(m + k1, n) = c;
            plan->EHi(m + k1, n) = -s;
            plan->EHr(m - k1, n) = c;
            plan->EHi(m - k1, n) = s;
        }
    }
    const double sqrt2 = std::sqrt(2.0);
    plan->Ce.resize(nz, m + 1);
    plan->Co.resize(nz, m + 1);
    for (int j = 0; j < nz; ++j) {
        const double z = static_cast<double>(j) / nz;
        plan->Ce(j, 0) = 1.0;
        plan->Co(j, 0) = 0.0;
        for (int k2 = 1; k2 <= m; ++k2) {
            plan->Ce(j, k2) = sqrt2 * std::cos(kTwoPi * k2 * z);
            plan->Co(j, k2) = sqrt2 * std::sin(kTwoPi * k2 * z);
        }
    }
    cache[key] = plan;
    return plan;
}

void require_same_shape(const SpectralField& a, const SpectralField& b, const char* op) {
    if (a.m() != b.m())
        throw std::invalid_argument(std::string(op) + ": truncation mismatch (m=" +
                                    std::to_string(a.m()) + " vs " + std::to_string(b.m()) + ")");
    if (a.parity() != b.parity())
        throw std::invalid_argument(std::string(op) + ": parity mismatch");
}

}  // namespace

double SpectralField::conjugate_symmetry_defect() const {
    double d = 0.0;
    for (int r = 0; r <= m_; ++r) {
        const int rm = 2 * m_ - r;  // mirror row (-k1)
        for (int c = 0; c <= m_; ++c) {
            d = std::max(d, std::abs(a_(rm, c) - std::conj(a_(r, c))));
        }
    }
    return d;
}

void SpectralField::symmetrize() {
    for (int c = 0; c <= m_; ++c) {
        a_(m_, c) = Complex(a_(m_, c).real(), 0.0);
        for (int k1 = 1; k1 <= m_; ++k1) a_(m_ - k1, c) = std::conj(a_(m_ + k1, c));
    }
}

SpectralField analyze(const Grid& samples, Parity parity, int m) {
    if (m < 1) throw std::invalid_argument("analyze: truncation m must be >= 1");
    const int nx = samples.nx();
    const int nz = samples.nz();
    if (nx < 2 * m + 1 || nz < 2 * m + 1)
        throw std::invalid_argument("analyze: grid too coarse for m=" + std::to_string(m) +
                                    " (need nx, nz >= " + std::to_string(2 * m + 1) + ")");
    if (!samples.values.allFinite())
        throw std::invalid_argument("analyze: non-finite sample value");

    auto plan = get_plan(m, nx, nz);
    const Eigen::MatrixXd& V = samples.values.matrix();
    const Eigen::MatrixXd& Cz = (parity == Parity::EvenZ) ? plan->Ce : plan->Co;

    const double scale = 1.0 / (static_cast<double>(nx) * nz);
    Eigen::MatrixXd re = (plan->EHr * V) * Cz * scale;
    Eigen::MatrixXd im = (plan->EHi * V) * Cz * scale;

    SpectralField out(m, parity);
    out.coeffs().real() = re.array();
    out.coeffs().imag() = im.array();
    return out;
}

Grid synthesize(const SpectralField& field, int nx, int nz) {
    const int m = field.m();
    if (field.empty()) throw std::invalid_argument("synthesize: empty field");
    if (nx < 2 * m + 1 || nz < 2 * m + 1)
        throw std::invalid_argument("synthesize: grid too coarse for m=" + std::to_string(m));
    if (!field.all_finite())
        throw std::invalid_argument("synthesize: non-finite coefficient");

    auto plan = get_plan(m, nx, nz);
    const Eigen::MatrixXd& Cz = (field.parity() == Parity::EvenZ) ? plan->Ce : plan->Co;

    // Real part of the x-sum is exact for conjugate-symmetric coefficients;
    // the z-basis is real so it can be applied after the projection.
    Eigen::MatrixXcd M = plan->Ex * field.coeffs().matrix();
    Grid out;
    out.values = (M.real() * Cz.transpose()).array();
    return out;
}

SpectralField differentiate(const SpectralField& field, Axis axis) {
    const int m = field.m();
    if (axis == Axis::X) {
        SpectralField out(m, field.parity());
        for (int r = 0; r < 2 * m + 1; ++r) {
            const double k1 = static_cast<double>(r - m);
            out.coeffs().row(r) = field.coeffs().row(r) * Complex(0.0, kTwoPi * k1);
        }
        return out;
    }
    // d/dz flips parity. cos(2 pi k2 z) -> -2 pi k2 sin, sin -> +2 pi k2 cos.
    const bool even_in = field.parity() == Parity::EvenZ;
    SpectralField out(m, even_in ? Parity::OddZ : Parity::EvenZ);
    for (int k2 = 1; k2 <= m; ++k2) {
        const double f = (even_in ? -1.0 : 1.0) * kTwoPi * k2;
        out.coeffs().col(k2) = field.coeffs().col(k2) * f;
    }
    return out;
}

SpectralField second_derivative_z(const SpectralField& field) {
    SpectralField out(field.m(), field.parity());
    for (int k2 = 1; k2 <= field.m(); ++k2) {
        const double w = kTwoPi * k2;
        out.coeffs().col(k2) = field.coeffs().col(k2) * (-w * w);
    }
    return out;
}

SpectralField laplacian(const SpectralField& field) {
    const int m = field.m();
    SpectralField out(m, field.parity());
    for (int r = 0; r < 2 * m + 1; ++r) {
        const double k1 = static_cast<double>(r - m);
        for (int c = 0; c <= m; ++c) {
            const double w2 = kTwoPi * kTwoPi * (k1 * k1 + static_cast<double>(c) * c);
            out.coeffs()(r, c) = field.coeffs()(r, c) * (-w2);
        }
    }
    return out;
}

SpectralField antiderivative_z(const SpectralField& field) {
    const int m = field.m();
    if (field.parity() == Parity::EvenZ) {
        // The z-mean row must vanish or the primitive is not periodic.
        const double row0 = std::sqrt(field.coeffs().col(0).abs2().sum());
        const double scale = std::max(1.0, norm_l2(field));
        if (row0 > 1e-12 * scale)
            throw std::invalid_argument(
                "antiderivative_z: non-periodic primitive (nonzero z-mean row, |row| = " +
                std::to_string(row0) + ")");
        SpectralField out(m, Parity::OddZ);
        for (int k2 = 1; k2 <= m; ++k2)
            out.coeffs().col(k2) = field.coeffs().col(k2) / (kTwoPi * k2);
        return out;
    }
    // int_0^z sin(2 pi k2 s) ds = (1 - cos(2 pi k2 z)) / (2 pi k2):
    // each odd mode feeds both the k2 = 0 row and its own cos mode.
    SpectralField out(m, Parity::EvenZ);
    const double sqrt2 = std::sqrt(2.0);
    for (int k2 = 1; k2 <= m; ++k2) {
        out.coeffs().col(0) += field.coeffs().col(k2) * (sqrt2 / (kTwoPi * k2));
        out.coeffs().col(k2) = -field.coeffs().col(k2) / (kTwoPi * k2);
    }
    return out;
}

SpectralField galerkin_product(const SpectralField& f, const SpectralField& g,
                               Parity out_parity) {
    if (f.m() != g.m())
        throw std::invalid_argument("galerkin_product: truncation mismatch (m=" +
                                    std::to_string(f.m()) + " vs " + std::to_string(g.m()) + ")");
    const int m = f.m();
    // Alias-free quadrature for quadratic terms: the integrand f*g*conj(basis)
    // has degree <= 3m per direction, so 3m+2 uniform points are exact.
    const int n = 3 * m + 2;
    Grid fg;
    fg.values = synthesize(f, n, n).values * synthesize(g, n, n).values;
    return analyze(fg, out_parity, m);
}

double sobolev_seminorm(const SpectralField& field, int ax, int az) {
    const int m = field.m();
    double sum = 0.0;
    for (int r = 0; r < 2 * m + 1; ++r) {
        const double wx = std::pow(kTwoPi * std::abs(r - m), 2 * ax);
        for (int c = 0; c <= m; ++c) {
            const double wz = std::pow(kTwoPi * c, 2 * az);
            sum += std::norm(field.coeffs()(r, c)) * wx * wz;
        }
    }
    return std::sqrt(sum);
}

std::vector<std::pair<std::pair<int, int>, double>> sobolev_seminorms(
    const SpectralField& field, std::span<const std::pair<int, int>> orders) {
    std::vector<std::pair<std::pair<int, int>, double>> out;
    out.reserve(orders.size());
    for (const auto& o : orders)
        out.push_back({o, sobolev_seminorm(field, o.first, o.second)});
    return out;
}

double norm_l2(const SpectralField& field) {
    return std::sqrt(field.coeffs().abs2().sum());
}

double inner_product(const SpectralField& f, const SpectralField& g) {
    if (f.parity() != g.parity()) return 0.0;
    if (f.m() != g.m()) throw std::invalid_argument("inner_product: truncation mismatch");
    return (f.coeffs() * g.coeffs().conjugate()).sum().real();
}

SpectralField zmean(const SpectralField& field) {
    SpectralField out(field.m(), Parity::EvenZ);
    if (field.parity() == Parity::EvenZ) out.coeffs().col(0) = field.coeffs().col(0);
    return out;
}

double mean(const SpectralField& field) {
    if (field.parity() == Parity::OddZ) return 0.0;
    return field.coeffs()(field.m(), 0).real();
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    require_same_shape(a, b, "operator+");
    SpectralField out = a;
    out.coeffs() += b.coeffs();
    return out;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    require_same_shape(a, b, "operator-");
    SpectralField out = a;
    out.coeffs() -= b.coeffs();
    return out;
}

SpectralField operator-(const SpectralField& a) {
    SpectralField out = a;
    out.coeffs() = -out.coeffs();
    return out;
}

SpectralField operator*(double s, const SpectralField& a) {
    SpectralField out = a;
    out.coeffs() *= s;
    return out;
}

SpectralField operator*(const SpectralField& a, double s) { return s * a; }

SpectralField& operator+=(SpectralField& a, const SpectralField& b) {
    require_same_shape(a, b, "operator+=");
    a.coeffs() += b.coeffs();
    return a;
}

SpectralField& operator-=(SpectralField& a, const SpectralField& b) {
    require_same_shape(a, b, "operator-=");
    a.coeffs() -= b.coeffs();
    return a;
}

SpectralField& operator*=(SpectralField& a, double s) {
    a.coeffs() *= s;
    return a;
}

}  // namespace pga
