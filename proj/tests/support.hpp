#pragma once

#include "jumpweight/asymptotics.hpp"
#include "jumpweight/calculus.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace jwt {

using namespace jw;

// Parameters in the natural (A, B, s, t) order.
inline WeightParams wp(const std::string& A, const std::string& B, const std::string& s,
                       const std::string& t, long bits)
{
    return WeightParams::parse(A, B, t, s, bits);
}

inline Real rel(const Real& a, const Real& b)
{
    Real d = abs(a - b);
    Real m = max(abs(a), abs(b));
    if (m.is_zero()) return d;
    return d / m;
}

inline bool below(const Real& x, long k) { return x.is_finite() && x <= pow10(k, x.bits()); }

inline const CheckReport* find(const std::vector<CheckReport>& reps, const std::string& id,
                               int n = -1)
{
    for (const auto& r : reps)
        if (r.id == id && (n < 0 || r.n_lo == n)) return &r;
    return nullptr;
}

inline std::vector<const CheckReport*> all_of(const std::vector<CheckReport>& reps,
                                              const std::string& id)
{
    std::vector<const CheckReport*> out;
    for (const auto& r : reps)
        if (r.id == id) out.push_back(&r);
    return out;
}

// The three parameter sets of the identity suites, as (A, B, s, t).
inline const std::vector<std::vector<std::string>>& suite_sets()
{
    static const std::vector<std::vector<std::string>> sets{
        {"0", "1", "0.5", "1"}, {"1", "1", "1", "0.5"}, {"1", "-0.5", "0.8", "0"}};
    return sets;
}

}  // namespace jwt
