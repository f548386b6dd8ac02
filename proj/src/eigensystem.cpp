#include "eigensystem.hpp"

#include "numerics.hpp"
#include "params.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace istep {

namespace {

constexpr std::complex<double> I{0.0, 1.0};

EigenSolution build(double k, double Z, double Zeff, OperatorTag tag, Branch b) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::invalid_argument("eigensolution: k must be positive");
    if (!std::isfinite(Z)) throw std::invalid_argument("eigensolution: Z must be finite");

    EigenSolution s;
    s.k = k;
    s.Z = Z;
    s.Zeff = Zeff;
    s.tag = tag;
    s.branch = b;
    s.kplus = std::sqrt(std::complex<double>(k * k, Zeff));
    s.kminus = std::sqrt(std::complex<double>(k * k, -Zeff));

    const double u = 1.0;
    const double v = (b == Branch::plus) ? 1.0 : -1.0;
    const std::complex<double> km = s.kminus, kp = s.kplus;
    const std::complex<double> rat = std::sqrt(kp / km);
    const double n1 = 1.0 / std::sqrt(2.0 * M_PI);
    const double n2 = 1.0 / std::sqrt(8.0 * M_PI);

    // outer-region coefficients via the transfer across the left edge;
    // the signed argument tracks which exponential they multiply
    auto Lm = [&](double kk) { return 0.5 * (std::cos(km) - I * km * std::sin(km) / kk); };
    auto Km = [&](double kk) {
        return 0.5 * rat * (km * std::cos(km) / kk - I * std::sin(km));
    };

    s.A1 = std::exp(I * k) * n1 * (Lm(k) * u + Km(k) * v);
    s.B1 = std::exp(-I * k) * n1 * (Lm(-k) * u + Km(-k) * v);
    s.Am = n2 * (u + rat * v);
    s.Bm = n2 * (u - rat * v);
    s.Ap = n2 * (u + v / rat);
    s.Bp = n2 * (u - v / rat);
    s.A2 = std::conj(s.A1);
    s.B2 = std::conj(s.B1);
    return s;
}

struct PieceData {
    std::complex<double> A, B, q;
};

PieceData piece_data(const EigenSolution& s, Piece p) {
    switch (p) {
        case Piece::left_outer: return {s.A1, s.B1, {s.k, 0.0}};
        case Piece::left_step: return {s.Am, s.Bm, s.kminus};
        case Piece::right_step: return {s.Ap, s.Bp, s.kplus};
        default: return {s.A2, s.B2, {s.k, 0.0}};
    }
}

Piece piece_of(double x) {
    if (x < -1.0) return Piece::left_outer;
    if (x < 0.0) return Piece::left_step;
    if (x < 1.0) return Piece::right_step;
    return Piece::right_outer;
}

}  // namespace

EigenSolution build_psi(double k, double Z, Branch b) {
    return build(k, Z, Z, OperatorTag::H, b);
}

EigenSolution build_phi(double k, double Z, Branch b) {
    return build(k, Z, -Z, OperatorTag::Hdagger, b);
}

std::complex<double> evaluate_piece(const EigenSolution& s, Piece p, double x) {
    auto [A, B, q] = piece_data(s, p);
    return A * std::exp(I * q * x) + B * std::exp(-I * q * x);
}

std::complex<double> evaluate_piece_deriv(const EigenSolution& s, Piece p, double x) {
    auto [A, B, q] = piece_data(s, p);
    return I * q * (A * std::exp(I * q * x) - B * std::exp(-I * q * x));
}

std::complex<double> evaluate(const EigenSolution& s, double x) {
    return evaluate_piece(s, piece_of(x), x);
}

std::complex<double> evaluate_deriv(const EigenSolution& s, double x) {
    return evaluate_piece_deriv(s, piece_of(x), x);
}

double ode_residual(const EigenSolution& s, double x) {
    Piece p = piece_of(x);
    auto [A, B, q] = piece_data(s, p);
    std::complex<double> psi = A * std::exp(I * q * x) + B * std::exp(-I * q * x);
    // analytic second derivative of the piece is -q^2 psi
    std::complex<double> r = (q * q + I * s.Zeff * nu(x) - s.k * s.k) * psi;
    return std::abs(r);
}

MatchReport matching_residuals(const EigenSolution& s) {
    MatchReport rep;
    const double edges[3] = {-1.0, 0.0, 1.0};
    const Piece lefts[3] = {Piece::left_outer, Piece::left_step, Piece::right_step};
    const Piece rights[3] = {Piece::left_step, Piece::right_step, Piece::right_outer};
    for (int e = 0; e < 3; ++e) {
        double dv = std::abs(evaluate_piece(s, lefts[e], edges[e]) -
                             evaluate_piece(s, rights[e], edges[e]));
        double dd = std::abs(evaluate_piece_deriv(s, lefts[e], edges[e]) -
                             evaluate_piece_deriv(s, rights[e], edges[e]));
        rep.worst_value_jump = std::max(rep.worst_value_jump, dv);
        rep.worst_deriv_jump = std::max(rep.worst_deriv_jump, dd);
    }
    return rep;
}

BiorthReport biorthonormality_check(double k0, double window, double Z,
                                    Branch phi_branch, Branch psi_branch) {
    if (!(k0 > 0.0) || !(window > 0.0))
        throw std::invalid_argument("biorthonormality_check: need k0 > 0 and window > 0");
    // near l = 0 the plane-wave coefficients grow like Z/l, which the
    // Gaussian tail of a wide window cannot suppress; keep the window
    // well inside l > 0
    if (k0 - 6.0 * window < 1e-2)
        throw std::invalid_argument("biorthonormality_check: window too wide, need k0 > 6 window");

    // 1) smear H-eigenfunctions over the window in wavenumber. The window
    //    makes the smeared state decay like a Gaussian in x, so the
    //    x-integral below converges without any damping factor. The
    //    l-panels must stay short enough to resolve the e^{ilx} phase at
    //    the far end of the x-range.
    const double xmax = std::max(25.0, 10.0 / window);
    double lmin = k0 - 6.0 * window;
    double lmax = k0 + 6.0 * window;
    auto lnodes = num::panel_nodes(lmin, lmax, {}, std::min(window / 2.0, 2.0 / xmax), 8);
    std::vector<EigenSolution> psis;
    std::vector<double> lweights;
    psis.reserve(lnodes.size());
    for (const auto& [l, w] : lnodes) {
        psis.push_back(build_psi(l, Z, psi_branch));
        double dl = l - k0;
        lweights.push_back(w * std::exp(-dl * dl / (2.0 * window * window)));
    }

    // 2) x-integral against the adjoint eigenfunction, at two panel
    //    resolutions; the coarse/fine difference is the convergence
    //    diagnostic
    EigenSolution phi = build_phi(k0, Z, phi_branch);
    auto overlap = [&](double width) {
        auto xnodes = num::panel_nodes(-xmax, xmax, {-1.0, 0.0, 1.0}, width, 8);
        std::vector<std::complex<double>> parts(xnodes.size());
        num::parallel_for(xnodes.size(), [&](std::size_t i) {
            auto [x, w] = xnodes[i];
            std::complex<double> smeared = 0.0;
            for (std::size_t j = 0; j < psis.size(); ++j)
                smeared += lweights[j] * evaluate(psis[j], x);
            parts[i] = w * std::conj(evaluate(phi, x)) * smeared;
        });
        std::complex<double> acc = 0.0;
        for (const auto& p : parts) acc += p;
        return acc;
    };
    std::complex<double> coarse = overlap(0.5);
    std::complex<double> fine = overlap(0.25);

    BiorthReport rep;
    rep.value = fine;
    rep.expected = (phi_branch == psi_branch) ? 1.0 : 0.0;
    rep.deviation = std::abs(rep.value - rep.expected);
    rep.spread = std::abs(fine - coarse);
    rep.converged = rep.spread < 1e-3;
    return rep;
}

}  // namespace istep
