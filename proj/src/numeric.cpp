#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jf/theta.hpp"

namespace jf {

namespace {

const double kTwoPi = 2.0 * M_PI;

cplx expi2pi(cplx z) { return std::exp(cplx(0, kTwoPi) * z); }

// smallest eigenvalue of the imaginary part
double min_eig_im(const CMat2& t) {
    double a = t.a11.imag(), b = t.a12.imag(), c = t.a22.imag();
    double tr = a + c, det = a * c - b * b;
    double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
    return tr / 2 - disc;
}

}  // namespace

EvalResult float_eval(const FourierSeries& f, const CMat2& tau) {
    if (min_eig_im(tau) <= 0) throw std::domain_error("float_eval: point outside the Siegel upper half space");
    const double D = f.denom();
    cplx s = 0;
    double tail = 0;
    const int edge = (f.trunc() - 1) * f.denom();
    for (const auto& t : f.terms()) {
        cplx z = (static_cast<double>(t.key.a) * tau.a11 + static_cast<double>(t.key.b) * tau.a12 +
                  static_cast<double>(t.key.c) * tau.a22) / D;
        cplx term = t.coeff.to_complex() * expi2pi(z);
        s += term;
        if (t.key.a > edge || t.key.c > edge) tail = std::max(tail, std::abs(term));
    }
    // geometric estimate of what lies beyond the box
    return EvalResult{s, 10 * tail};
}

cplx theta_defsum_eval(const std::array<int, 4>& m, const CMat2& tau) {
    double lam = min_eig_im(tau);
    if (lam <= 0) throw std::domain_error("theta_defsum_eval: point outside the Siegel upper half space");
    // exp(-pi lam |x|^2) < 1e-18
    int R = static_cast<int>(std::ceil(std::sqrt(42.0 / (M_PI * lam)))) + 2;
    cplx s = 0;
    for (int p1 = -R; p1 <= R; ++p1)
        for (int p2 = -R; p2 <= R; ++p2) {
            double x1 = p1 + m[0] / 2.0, x2 = p2 + m[1] / 2.0;
            cplx z = 0.5 * (x1 * x1 * tau.a11 + 2.0 * x1 * x2 * tau.a12 + x2 * x2 * tau.a22) +
                     (x1 * m[2] + x2 * m[3]) / 2.0;
            s += expi2pi(z);
        }
    return s;
}

cplx theta_lattice_defsum_eval(const GramMatrix& S, const CMat2& tau, double tol) {
    if (S.twice) throw std::invalid_argument("theta_lattice_defsum_eval: even Gram matrix required");
    double lam = min_eig_im(tau);
    if (lam <= 0) throw std::domain_error("theta_lattice_defsum_eval: point outside the Siegel upper half space");
    // |term| <= exp(-pi lam (xSx + ySy))
    long long B = static_cast<long long>(std::ceil(-std::log(tol) / (M_PI * lam)));
    auto V = short_vectors(S, B);
    const int n = S.n;
    std::vector<long long> norm(V.size());
    for (std::size_t i = 0; i < V.size(); ++i) norm[i] = S.qform_raw(V[i]);
    std::vector<std::size_t> order(V.size());
    for (std::size_t i = 0; i < V.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return norm[a] < norm[b]; });
    std::vector<int> flat(V.size() * n), Sflat(V.size() * n);
    std::vector<long long> sn(V.size());
    std::vector<cplx> e11(V.size()), e22(V.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& v = V[order[k]];
        sn[k] = norm[order[k]];
        for (int r = 0; r < n; ++r) {
            flat[k * n + r] = v[r];
            long long s = 0;
            for (int c = 0; c < n; ++c) s += S.at(r, c) * v[c];
            Sflat[k * n + r] = static_cast<int>(s);
        }
        e11[k] = expi2pi(0.5 * static_cast<double>(sn[k]) * tau.a11);
        e22[k] = expi2pi(0.5 * static_cast<double>(sn[k]) * tau.a22);
    }
    const long long rmax = B;  // |x S y| <= sqrt(xSx ySy) <= B
    std::vector<cplx> e12(static_cast<std::size_t>(2 * rmax + 1));
    for (long long r = -rmax; r <= rmax; ++r) e12[static_cast<std::size_t>(r + rmax)] = expi2pi(static_cast<double>(r) * tau.a12);
    cplx s = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const long long rest = B - sn[i];
        const int* sx = &Sflat[i * n];
        cplx inner = 0;
        for (std::size_t j = 0; j < order.size() && sn[j] <= rest; ++j) {
            const int* y = &flat[j * n];
            long long r = 0;
            for (int c = 0; c < n; ++c) r += static_cast<long long>(sx[c]) * y[c];
            inner += e22[j] * e12[static_cast<std::size_t>(r + rmax)];
        }
        s += e11[i] * inner;
    }
    return s;
}

}  // namespace jf

namespace jf {

Jet theta_defsum_jet(const std::array<int, 4>& m, const CMat2& tau) {
    double lam = min_eig_im(tau);
    if (lam <= 0) throw std::domain_error("theta_defsum_jet: point outside the Siegel upper half space");
    int R = static_cast<int>(std::ceil(std::sqrt(46.0 / (M_PI * lam)))) + 3;
    Jet j{};
    for (int p1 = -R; p1 <= R; ++p1)
        for (int p2 = -R; p2 <= R; ++p2) {
            double x1 = p1 + m[0] / 2.0, x2 = p2 + m[1] / 2.0;
            cplx z = 0.5 * (x1 * x1 * tau.a11 + 2.0 * x1 * x2 * tau.a12 + x2 * x2 * tau.a22) +
                     (x1 * m[2] + x2 * m[3]) / 2.0;
            cplx t = expi2pi(z);
            j.v += t;
            j.d11 += 0.5 * x1 * x1 * t;
            j.d12 += x1 * x2 * t;
            j.d22 += 0.5 * x2 * x2 * t;
        }
    return j;
}

Jet theta_lattice_defsum_jet(const GramMatrix& S, const CMat2& tau, double tol) {
    if (S.twice) throw std::invalid_argument("theta_lattice_defsum_jet: even Gram matrix required");
    double lam = min_eig_im(tau);
    if (lam <= 0) throw std::domain_error("theta_lattice_defsum_jet: point outside the Siegel upper half space");
    long long B = static_cast<long long>(std::ceil(-std::log(tol) / (M_PI * lam))) + 4;
    auto V = short_vectors(S, B);
    const int n = S.n;
    const std::size_t nv = V.size();
    std::vector<std::size_t> order(nv);
    std::vector<long long> norm(nv);
    for (std::size_t i = 0; i < nv; ++i) { norm[i] = S.qform_raw(V[i]); order[i] = i; }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return norm[a] < norm[b]; });
    std::vector<int> flat(nv * n), Sflat(nv * n);
    std::vector<long long> sn(nv);
    std::vector<cplx> e11(nv), e22(nv);
    for (std::size_t k = 0; k < nv; ++k) {
        const auto& v = V[order[k]];
        sn[k] = norm[order[k]];
        for (int r = 0; r < n; ++r) {
            flat[k * n + r] = v[r];
            long long s = 0;
            for (int c = 0; c < n; ++c) s += S.at(r, c) * v[c];
            Sflat[k * n + r] = static_cast<int>(s);
        }
        e11[k] = expi2pi(0.5 * static_cast<double>(sn[k]) * tau.a11);
        e22[k] = expi2pi(0.5 * static_cast<double>(sn[k]) * tau.a22);
    }
    const long long rmax = B;
    std::vector<cplx> e12(static_cast<std::size_t>(2 * rmax + 1));
    for (long long r = -rmax; r <= rmax; ++r)
        e12[static_cast<std::size_t>(r + rmax)] = expi2pi(static_cast<double>(r) * tau.a12);
    Jet j{};
    for (std::size_t i = 0; i < nv; ++i) {
        const long long rest = B - sn[i];
        const int* sx = &Sflat[i * n];
        cplx in0 = 0, in12 = 0, in22 = 0;
        for (std::size_t k = 0; k < nv && sn[k] <= rest; ++k) {
            const int* y = &flat[k * n];
            long long r = 0;
            for (int c = 0; c < n; ++c) r += static_cast<long long>(sx[c]) * y[c];
            cplx t = e22[k] * e12[static_cast<std::size_t>(r + rmax)];
            in0 += t;
            in12 += static_cast<double>(r) * t;
            in22 += 0.5 * static_cast<double>(sn[k]) * t;
        }
        j.v += e11[i] * in0;
        j.d11 += 0.5 * static_cast<double>(sn[i]) * e11[i] * in0;
        j.d12 += e11[i] * in12;
        j.d22 += e11[i] * in22;
    }
    return j;
}

}  // namespace jf
