#pragma once

namespace lawn {

// Penalty-DC association (outer penalty loop + Frank-Wolfe inner solve).
struct PenaltyDcOptions {
    double mu0 = 1e-5;  // small against vertex gaps of the scaled control term
    double mu_max = 1e6;
    double growth = 10.0;  // multiplier A applied to mu after each outer pass
    double tol = 1e-4;     // relative change of the penalized objective
    int max_outer = 30;
    double inner_tol = 1e-10;  // Frank-Wolfe duality gap, relative to 1 + |objective|
    int inner_max = 2000;
};

// Projected gradient descent over {p >= 0, sum p <= P_max}.
// Step and tolerance are expressed as fractions of P_max.
struct PgdOptions {
    double step0_frac = 0.1;
    double rho_hat = 0.1;  // step decays by 1/(1 + rho_hat) every iteration
    double tol_frac = 1e-8;
    int max_iter = 500;
    bool armijo = true;
};

// Trust-region SCA over UAV positions.
struct ScaOptions {
    double trust0 = 10.0;  // meters, infinity-norm box around the anchor
    double trust_min = 0.1;
    double shrink = 0.5;
    double tol = 1e-6;  // relative improvement of an accepted step
    int max_iter = 200;
};

// Outer alternating loop.
struct AoOptions {
    double tol = 1e-3;
    int max_iter = 30;
};

struct SolverOptions {
    AoOptions ao;
    PenaltyDcOptions dc;
    PgdOptions pgd;
    ScaOptions sca;
};

}  // namespace lawn
