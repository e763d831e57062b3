#pragma once

#include "jumpweight/real.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace jw {

enum class CheckKind {
    Residual,  // pass iff residual <= tolerance
    Window,    // pass iff lower <= residual <= tolerance (error-ratio tests)
};

struct CheckReport {
    std::string id;
    int n_lo = 0;
    int n_hi = 0;
    Real residual;
    Real scale;      // normalisation actually used
    Real tolerance;
    Real lower;      // Window only
    CheckKind kind = CheckKind::Residual;
    std::string branch;
    int digits = 0;
    bool pass = false;
    bool degenerate = false;
    // Rows that document a misprinted variant or an unasserted curve; they
    // are reported but never decide the exit status.
    bool informational = false;
    std::string note;

    bool counts() const { return !degenerate && !informational; }
};

// |lhs - rhs| / max(|lhs|, |rhs|, max |term|, 1e-20)
Real relative_residual(const Real& lhs, const Real& rhs, const std::vector<Real>& terms,
                       Real* scale_out = nullptr);

CheckReport compare(const std::string& id, int n, const Real& lhs, const Real& rhs,
                    std::initializer_list<Real> terms, const Real& tol);

// lhs against rhs_plus / rhs_minus; the closer branch is recorded.
CheckReport compare_branches(const std::string& id, int n, const Real& lhs, const Real& rhs_plus,
                             const Real& rhs_minus, std::initializer_list<Real> terms,
                             const Real& tol);

// A residual computed elsewhere (e.g. a coefficient-table distance).
CheckReport residual_report(const std::string& id, int n, const Real& residual, const Real& tol);

CheckReport degenerate_report(const std::string& id, int n, const std::string& why,
                              const Real& tol);

CheckReport window_report(const std::string& id, int n_lo, int n_hi, const Real& value,
                          double lo, double hi);

// Stamp the precision used on every report and return them.
std::vector<CheckReport>& stamp_digits(std::vector<CheckReport>& reps, int digits);

bool all_pass(const std::vector<CheckReport>& reps);

}  // namespace jw
