#pragma once

#include "rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace leavitt {

/// One row: sum coeff[j]*x_j REL rhs, where REL is =, >= or >.
struct LinearConstraint {
    enum class Rel { eq, ge, gt };
    std::string id;
    std::vector<Rational> coeff;
    Rational rhs;
    Rel rel = Rel::ge;
};

struct FeasiblePoint {
    std::vector<Rational> x;
};

struct CertificateTerm {
    size_t index; // into the input constraint list
    Rational mult;
};

/// A nonnegative combination of the inequalities plus an arbitrary
/// combination of the equalities whose coefficients cancel, leaving a false
/// relation 0 REL rhs. Checkable independently via check_certificate.
struct InfeasibilityCertificate {
    std::vector<CertificateTerm> combination;
    LinearConstraint::Rel rel;
    Rational rhs;
};

using FeasibilityResult = std::variant<FeasiblePoint, InfeasibilityCertificate>;

inline bool satisfies(const LinearConstraint &c, const std::vector<Rational> &x) {
    Rational lhs;
    for (size_t j = 0; j < c.coeff.size(); ++j)
        lhs += c.coeff[j] * x[j];
    switch (c.rel) {
    case LinearConstraint::Rel::eq:
        return lhs == c.rhs;
    case LinearConstraint::Rel::ge:
        return lhs >= c.rhs;
    default:
        return lhs > c.rhs;
    }
}

/// Recomputes the certificate's combination from the original system and
/// confirms it derives a contradiction.
inline bool check_certificate(const std::vector<LinearConstraint> &cons, size_t nvars,
                              const InfeasibilityCertificate &cert) {
    std::vector<Rational> coeff(nvars);
    Rational rhs;
    bool any_gt = false, any_ge = false;
    for (const auto &t : cert.combination) {
        if (t.index >= cons.size())
            return false;
        const auto &c = cons[t.index];
        if (c.rel != LinearConstraint::Rel::eq) {
            if (t.mult.sign() < 0)
                return false; // inequalities only combine nonnegatively
            if (t.mult.sign() > 0)
                (c.rel == LinearConstraint::Rel::gt ? any_gt : any_ge) = true;
        }
        for (size_t j = 0; j < nvars; ++j)
            coeff[j] += t.mult * c.coeff[j];
        rhs += t.mult * c.rhs;
    }
    for (const auto &a : coeff)
        if (!a.is_zero())
            return false;
    if (any_gt)
        return rhs.sign() >= 0; // 0 > rhs is false
    if (any_ge)
        return rhs.sign() > 0; // 0 >= rhs is false
    return !rhs.is_zero();     // 0 = rhs is false
}

namespace detail {

struct FmRow {
    std::map<size_t, Rational> mult; // provenance over input constraints
    std::vector<Rational> coeff;
    Rational rhs;
    LinearConstraint::Rel rel;
};

inline void row_axpy(FmRow &r, const Rational &factor, const FmRow &src) {
    for (size_t j = 0; j < r.coeff.size(); ++j)
        r.coeff[j] += factor * src.coeff[j];
    r.rhs += factor * src.rhs;
    for (const auto &[i, m] : src.mult) {
        Rational &slot = r.mult[i];
        slot += factor * m;
        if (slot.is_zero())
            r.mult.erase(i);
    }
}

inline InfeasibilityCertificate to_certificate(const FmRow &row) {
    InfeasibilityCertificate cert;
    for (const auto &[i, m] : row.mult)
        cert.combination.push_back({i, m});
    cert.rel = row.rel;
    cert.rhs = row.rhs;
    return cert;
}

} // namespace detail

/// Decides feasibility of an exact linear system by Gaussian elimination of
/// the equalities followed by Fourier-Motzkin elimination, with strictness
/// carried through (a combined row is strict iff a strict row entered it).
/// Every working row tracks the multipliers that produced it, so an
/// infeasible outcome comes with a checkable certificate. On feasibility a
/// point is reconstructed by back-substitution, picking interior values so
/// strict bounds hold with explicit slack.
inline FeasibilityResult solve_linear_system(const std::vector<LinearConstraint> &cons,
                                             size_t nvars) {
    using Rel = LinearConstraint::Rel;
    std::vector<detail::FmRow> rows;
    rows.reserve(cons.size());
    for (size_t i = 0; i < cons.size(); ++i) {
        if (cons[i].coeff.size() != nvars)
            throw error("constraint '" + cons[i].id + "': wrong arity");
        detail::FmRow r;
        r.mult[i] = Rational(1);
        r.coeff = cons[i].coeff;
        r.rhs = cons[i].rhs;
        r.rel = cons[i].rel;
        rows.push_back(std::move(r));
    }

    // degenerate rows (no variables left) are either contradictions or noise
    auto sweep = [&]() -> std::optional<InfeasibilityCertificate> {
        for (size_t k = 0; k < rows.size();) {
            bool zero = true;
            for (const auto &a : rows[k].coeff)
                if (!a.is_zero()) {
                    zero = false;
                    break;
                }
            if (!zero) {
                ++k;
                continue;
            }
            const auto &r = rows[k];
            bool bad = (r.rel == Rel::eq && !r.rhs.is_zero()) ||
                       (r.rel == Rel::ge && r.rhs.sign() > 0) ||
                       (r.rel == Rel::gt && r.rhs.sign() >= 0);
            if (bad)
                return detail::to_certificate(r);
            rows.erase(rows.begin() + k);
        }
        return std::nullopt;
    };

    struct Subst {
        size_t var;
        detail::FmRow row;
    };
    std::vector<Subst> substs;

    if (auto cert = sweep())
        return *cert;

    // phase 1: eliminate equalities by substitution
    while (true) {
        size_t k = rows.size();
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i].rel == Rel::eq) {
                k = i;
                break;
            }
        if (k == rows.size())
            break;
        detail::FmRow pivot = std::move(rows[k]);
        rows.erase(rows.begin() + k);
        size_t var = nvars;
        for (size_t j = 0; j < nvars; ++j)
            if (!pivot.coeff[j].is_zero()) {
                var = j;
                break;
            }
        // all-zero equalities were removed by the sweep
        for (auto &r : rows)
            if (!r.coeff[var].is_zero())
                detail::row_axpy(r, -(r.coeff[var] / pivot.coeff[var]), pivot);
        substs.push_back({var, std::move(pivot)});
        if (auto cert = sweep())
            return *cert;
    }

    // phase 2: Fourier-Motzkin on the remaining variables, highest index
    // first
    struct BoundSet {
        size_t var;
        std::vector<detail::FmRow> lowers, uppers;
    };
    std::vector<BoundSet> bounds;
    std::vector<char> substituted(nvars, 0);
    for (const auto &s : substs)
        substituted[s.var] = 1;

    for (size_t jj = nvars; jj-- > 0;) {
        if (substituted[jj])
            continue;
        BoundSet bs;
        bs.var = jj;
        std::vector<detail::FmRow> rest;
        for (auto &r : rows) {
            int sg = r.coeff[jj].sign();
            if (sg > 0)
                bs.lowers.push_back(std::move(r));
            else if (sg < 0)
                bs.uppers.push_back(std::move(r));
            else
                rest.push_back(std::move(r));
        }
        rows = std::move(rest);
        for (const auto &lo : bs.lowers)
            for (const auto &up : bs.uppers) {
                detail::FmRow combined = lo;
                for (auto &a : combined.coeff)
                    a *= -up.coeff[jj];
                combined.rhs *= -up.coeff[jj];
                for (auto &[i, m] : combined.mult)
                    m *= -up.coeff[jj];
                detail::row_axpy(combined, lo.coeff[jj], up);
                combined.rel = (lo.rel == Rel::gt || up.rel == Rel::gt) ? Rel::gt : Rel::ge;
                rows.push_back(std::move(combined));
            }
        bounds.push_back(std::move(bs));
        if (auto cert = sweep())
            return *cert;
    }

    // feasible: reconstruct a point
    std::vector<Rational> x(nvars, Rational(0));
    auto eval_rest = [&](const detail::FmRow &r, size_t var) {
        Rational s;
        for (size_t j = 0; j < nvars; ++j)
            if (j != var)
                s += r.coeff[j] * x[j];
        return s;
    };
    for (size_t bi = bounds.size(); bi-- > 0;) {
        const auto &bs = bounds[bi];
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const auto &r : bs.lowers) {
            Rational b = (r.rhs - eval_rest(r, bs.var)) / r.coeff[bs.var];
            if (!lo || b > *lo || (b == *lo && r.rel == Rel::gt)) {
                lo_strict = (lo && b == *lo) ? lo_strict || r.rel == Rel::gt
                                             : r.rel == Rel::gt;
                lo = b;
            }
        }
        for (const auto &r : bs.uppers) {
            Rational b = (r.rhs - eval_rest(r, bs.var)) / r.coeff[bs.var];
            if (!hi || b < *hi || (b == *hi && r.rel == Rel::gt)) {
                hi_strict = (hi && b == *hi) ? hi_strict || r.rel == Rel::gt
                                             : r.rel == Rel::gt;
                hi = b;
            }
        }
        Rational v;
        if (lo && hi && *lo > *hi)
            throw error("internal: empty interval after feasible elimination");
        if (!lo && !hi)
            v = Rational(1);
        else if (lo && !hi)
            v = *lo + Rational(1);
        else if (!lo && hi)
            v = *hi - Rational(1);
        else if (*lo == *hi) {
            if (lo_strict || hi_strict)
                throw error("internal: empty interval after feasible elimination");
            v = *lo;
        } else {
            v = (*lo + *hi) / Rational(2);
        }
        x[bs.var] = v;
    }
    for (size_t si = substs.size(); si-- > 0;) {
        const auto &s = substs[si];
        x[s.var] = (s.row.rhs - eval_rest(s.row, s.var)) / s.row.coeff[s.var];
    }

    for (const auto &c : cons)
        if (!satisfies(c, x))
            throw error("internal: reconstructed point violates '" + c.id + "'");
    return FeasiblePoint{std::move(x)};
}

} // namespace leavitt
