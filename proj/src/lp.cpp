#include "toricstab/lp.hpp"

#include <vector>

namespace toricstab {

namespace {

void append_row(RatMatrix& m, RatVector& rhs, const RatVector& a, const Rational& r) {
    m.conservativeResize(m.rows() + 1, Eigen::NoChange);
    m.row(m.rows() - 1) = a.transpose();
    rhs.conservativeResize(rhs.size() + 1);
    rhs(rhs.size() - 1) = r;
}

void check_dims(const LinearProgram& lp) {
    const Eigen::Index n = lp.objective.size();
    if (n == 0) throw Error("DimensionMismatch", "empty objective");
    if (lp.ineq_lhs.rows() != lp.ineq_rhs.size() || (lp.ineq_lhs.rows() > 0 && lp.ineq_lhs.cols() != n))
        throw Error("DimensionMismatch", "inequality block shape");
    if (lp.eq_lhs.rows() != lp.eq_rhs.size() || (lp.eq_lhs.rows() > 0 && lp.eq_lhs.cols() != n))
        throw Error("DimensionMismatch", "equality block shape");
}

// Simplex tableau over the standard form  min c~.z, M z = r, z >= 0 with
// z = [x+, x-, s].  Artificial basics are tracked as column ids >= nz; their
// columns are unit vectors and never re-enter, so they are not stored.
struct Tableau {
    RatMatrix D;             // current rows, original columns only
    RatVector rhs;
    std::vector<Eigen::Index> basis;   // per row; >= nz means artificial
    std::vector<Eigen::Index> row_id;  // original row index of each kept row
    Eigen::Index nz;

    bool is_basic(Eigen::Index col) const {
        for (Eigen::Index b : basis)
            if (b == col) return true;
        return false;
    }

    void pivot(Eigen::Index row, Eigen::Index col) {
        const Rational p = D(row, col);
        D.row(row) /= p;
        rhs(row) /= p;
        for (Eigen::Index k = 0; k < D.rows(); ++k) {
            if (k == row || D(k, col) == 0) continue;
            const Rational f = D(k, col);
            D.row(k) -= f * D.row(row);
            rhs(k) -= f * rhs(row);
        }
        basis[static_cast<size_t>(row)] = col;
    }

    void drop_row(Eigen::Index row) {
        const Eigen::Index m = D.rows();
        for (Eigen::Index k = row; k + 1 < m; ++k) {
            D.row(k) = D.row(k + 1);
            rhs(k) = rhs(k + 1);
            basis[static_cast<size_t>(k)] = basis[static_cast<size_t>(k + 1)];
            row_id[static_cast<size_t>(k)] = row_id[static_cast<size_t>(k + 1)];
        }
        D.conservativeResize(m - 1, Eigen::NoChange);
        rhs.conservativeResize(m - 1);
        basis.pop_back();
        row_id.pop_back();
    }
};

// Bland's rule: entering column = smallest index with negative reduced cost,
// leaving row = smallest basic index among the ratio-test minimizers.
// Returns false at optimality; sets `unbounded_col` if a column certifies
// unboundedness.
bool simplex_step(Tableau& t, const RatVector& cost, Eigen::Index* unbounded_col) {
    const Eigen::Index m = t.D.rows();
    for (Eigen::Index j = 0; j < t.nz; ++j) {
        if (t.is_basic(j)) continue;
        Rational red = cost(j);
        for (Eigen::Index i = 0; i < m; ++i) {
            const Eigen::Index b = t.basis[static_cast<size_t>(i)];
            if (b < t.nz && cost(b) != 0) red -= cost(b) * t.D(i, j);
            if (b >= t.nz) red -= t.D(i, j);  // artificial cost 1 (phase 1 only)
        }
        if (!(red < 0)) continue;

        Eigen::Index leave = -1;
        Rational best_ratio;
        for (Eigen::Index i = 0; i < m; ++i) {
            if (!(t.D(i, j) > 0)) continue;
            Rational ratio = t.rhs(i) / t.D(i, j);
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio &&
                 t.basis[static_cast<size_t>(i)] < t.basis[static_cast<size_t>(leave)])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) {
            if (unbounded_col) *unbounded_col = j;
            return false;
        }
        t.pivot(leave, j);
        return true;
    }
    return false;
}

// Phase-1 reduced costs embed the unit artificial cost directly in
// simplex_step; this wrapper runs with zero costs on the stored columns.
void run_phase1(Tableau& t) {
    RatVector zero = RatVector::Zero(t.nz);
    Eigen::Index ub = -1;
    while (simplex_step(t, zero, &ub)) {
    }
    // Phase 1 is bounded below by 0, so `ub` can never fire here.
}

RatVector solve_duals(const LinearProgram& lp, const Tableau& t, const RatVector& cost,
                      const std::vector<int>& sigma) {
    // B^T y = c_B over the kept rows, with B assembled from the scaled
    // standard-form columns of the current basis.
    const Eigen::Index m = t.D.rows();
    const Eigen::Index n = lp.num_vars();
    const Eigen::Index mi = lp.ineq_lhs.rows();
    RatMatrix B(m, m);
    RatVector cb(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const Eigen::Index col = t.basis[static_cast<size_t>(k)];
        for (Eigen::Index i = 0; i < m; ++i) {
            const Eigen::Index orig = t.row_id[static_cast<size_t>(i)];
            Rational entry;
            if (col >= t.nz) {
                entry = (orig == col - t.nz) ? Rational(1) : Rational(0);
            } else if (col < n) {
                entry = (orig < mi) ? lp.ineq_lhs(orig, col) : lp.eq_lhs(orig - mi, col);
            } else if (col < 2 * n) {
                entry = (orig < mi) ? -lp.ineq_lhs(orig, col - n) : -lp.eq_lhs(orig - mi, col - n);
            } else {
                entry = (orig == col - 2 * n) ? Rational(-1) : Rational(0);
            }
            B(i, k) = Rational(sigma[static_cast<size_t>(orig)]) * entry;
        }
        cb(k) = (col >= t.nz) ? Rational(1) : cost(col);
    }
    Eigen::FullPivLU<RatMatrix> lu(B.transpose());
    return lu.solve(cb);
}

}  // namespace

void LinearProgram::add_inequality(const RatVector& a, const Rational& rhs) {
    append_row(ineq_lhs, ineq_rhs, a, rhs);
}

void LinearProgram::add_equality(const RatVector& a, const Rational& rhs) {
    append_row(eq_lhs, eq_rhs, a, rhs);
}

LPOutcome solve(const LinearProgram& lp) {
    check_dims(lp);
    const Eigen::Index n = lp.num_vars();
    const Eigen::Index mi = lp.ineq_lhs.rows();
    const Eigen::Index me = lp.eq_lhs.rows();
    const Eigen::Index m = mi + me;
    const Eigen::Index nz = 2 * n + mi;

    // Row signs chosen so the standard-form right-hand side is nonnegative.
    std::vector<int> sigma(static_cast<size_t>(m), 1);
    Tableau t;
    t.nz = nz;
    t.D = RatMatrix::Zero(m, nz);
    t.rhs = RatVector::Zero(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const bool ineq = i < mi;
        RatVector row = ineq ? RatVector(lp.ineq_lhs.row(i)) : RatVector(lp.eq_lhs.row(i - mi));
        Rational r = ineq ? lp.ineq_rhs(i) : lp.eq_rhs(i - mi);
        if (r < 0) {
            sigma[static_cast<size_t>(i)] = -1;
            row = -row;
            r = -r;
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            t.D(i, j) = row(j);
            t.D(i, n + j) = -row(j);
        }
        if (ineq) t.D(i, 2 * n + i) = Rational(-sigma[static_cast<size_t>(i)]);
        t.rhs(i) = r;
        t.basis.push_back(nz + i);
        t.row_id.push_back(i);
    }

    run_phase1(t);

    Rational infeas = 0;
    for (Eigen::Index i = 0; i < t.D.rows(); ++i)
        if (t.basis[static_cast<size_t>(i)] >= nz) infeas += t.rhs(i);

    if (infeas > 0) {
        RatVector y = solve_duals(lp, t, RatVector::Zero(nz), sigma);
        LPOutcome out;
        out.kind = LPOutcome::Kind::Infeasible;
        out.farkas_ineq = RatVector::Zero(mi);
        out.farkas_eq = RatVector::Zero(me);
        for (Eigen::Index i = 0; i < m; ++i) {
            const Rational lam = Rational(sigma[static_cast<size_t>(i)]) * y(i);
            if (i < mi)
                out.farkas_ineq(i) = lam;
            else
                out.farkas_eq(i - mi) = lam;
        }
        return out;
    }

    // Drive artificials out of the basis; rows that cannot pivot are
    // dependent on the others and are dropped (their dual is zero).
    for (Eigen::Index i = 0; i < t.D.rows();) {
        if (t.basis[static_cast<size_t>(i)] < nz) {
            ++i;
            continue;
        }
        Eigen::Index col = -1;
        for (Eigen::Index j = 0; j < nz; ++j) {
            if (t.D(i, j) != 0 && !t.is_basic(j)) {
                col = j;
                break;
            }
        }
        if (col >= 0) {
            t.pivot(i, col);
            ++i;
        } else {
            t.drop_row(i);
        }
    }

    RatVector cost = RatVector::Zero(nz);
    for (Eigen::Index j = 0; j < n; ++j) {
        cost(j) = lp.objective(j);
        cost(n + j) = -lp.objective(j);
    }

    Eigen::Index ub_col = -1;
    while (simplex_step(t, cost, &ub_col)) {
    }

    LPOutcome out;
    if (ub_col >= 0) {
        RatVector ray_z = RatVector::Zero(nz);
        ray_z(ub_col) = 1;
        for (Eigen::Index i = 0; i < t.D.rows(); ++i)
            ray_z(t.basis[static_cast<size_t>(i)]) = -t.D(i, ub_col);
        out.kind = LPOutcome::Kind::Unbounded;
        out.ray = RatVector::Zero(n);
        for (Eigen::Index j = 0; j < n; ++j) out.ray(j) = ray_z(j) - ray_z(n + j);
        return out;
    }

    out.kind = LPOutcome::Kind::Optimal;
    RatVector z = RatVector::Zero(nz);
    for (Eigen::Index i = 0; i < t.D.rows(); ++i) z(t.basis[static_cast<size_t>(i)]) = t.rhs(i);
    out.point = RatVector::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) out.point(j) = z(j) - z(n + j);
    out.value = lp.objective.dot(out.point);

    RatVector y = solve_duals(lp, t, cost, sigma);
    out.dual_ineq = RatVector::Zero(mi);
    out.dual_eq = RatVector::Zero(me);
    for (Eigen::Index k = 0; k < t.D.rows(); ++k) {
        const Eigen::Index orig = t.row_id[static_cast<size_t>(k)];
        const Rational lam = Rational(sigma[static_cast<size_t>(orig)]) * y(k);
        if (orig < mi)
            out.dual_ineq(orig) = lam;
        else
            out.dual_eq(orig - mi) = lam;
    }
    return out;
}

bool certificate_ok(const LinearProgram& lp, const LPOutcome& out) {
    const Eigen::Index n = lp.num_vars();
    const Eigen::Index mi = lp.ineq_lhs.rows();
    const Eigen::Index me = lp.eq_lhs.rows();
    switch (out.kind) {
        case LPOutcome::Kind::Optimal: {
            if (out.point.size() != n || out.dual_ineq.size() != mi || out.dual_eq.size() != me)
                return false;
            RatVector slack = lp.ineq_lhs * out.point - lp.ineq_rhs;
            for (Eigen::Index i = 0; i < mi; ++i)
                if (slack(i) < 0) return false;
            if (me > 0) {
                RatVector res = lp.eq_lhs * out.point - lp.eq_rhs;
                for (Eigen::Index i = 0; i < me; ++i)
                    if (res(i) != 0) return false;
            }
            for (Eigen::Index i = 0; i < mi; ++i)
                if (out.dual_ineq(i) < 0) return false;
            RatVector combo = RatVector::Zero(n);
            if (mi > 0) combo += lp.ineq_lhs.transpose() * out.dual_ineq;
            if (me > 0) combo += lp.eq_lhs.transpose() * out.dual_eq;
            for (Eigen::Index j = 0; j < n; ++j)
                if (combo(j) != lp.objective(j)) return false;
            for (Eigen::Index i = 0; i < mi; ++i)
                if (out.dual_ineq(i) * slack(i) != 0) return false;
            Rational dual_value = lp.ineq_rhs.dot(out.dual_ineq) + lp.eq_rhs.dot(out.dual_eq);
            if (dual_value != out.value) return false;
            if (out.value != lp.objective.dot(out.point)) return false;
            return true;
        }
        case LPOutcome::Kind::Unbounded: {
            if (out.ray.size() != n) return false;
            if (!(lp.objective.dot(out.ray) < 0)) return false;
            RatVector ai = lp.ineq_lhs * out.ray;
            for (Eigen::Index i = 0; i < mi; ++i)
                if (ai(i) < 0) return false;
            if (me > 0) {
                RatVector er = lp.eq_lhs * out.ray;
                for (Eigen::Index i = 0; i < me; ++i)
                    if (er(i) != 0) return false;
            }
            return true;
        }
        case LPOutcome::Kind::Infeasible: {
            if (out.farkas_ineq.size() != mi || out.farkas_eq.size() != me) return false;
            for (Eigen::Index i = 0; i < mi; ++i)
                if (out.farkas_ineq(i) < 0) return false;
            RatVector combo = RatVector::Zero(n);
            if (mi > 0) combo += lp.ineq_lhs.transpose() * out.farkas_ineq;
            if (me > 0) combo += lp.eq_lhs.transpose() * out.farkas_eq;
            for (Eigen::Index j = 0; j < n; ++j)
                if (combo(j) != 0) return false;
            Rational gap = lp.ineq_rhs.dot(out.farkas_ineq) + lp.eq_rhs.dot(out.farkas_eq);
            return gap > 0;
        }
    }
    return false;
}

}  // namespace toricstab
