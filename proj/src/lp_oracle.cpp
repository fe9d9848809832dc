#include "toricstab/lp_oracle.hpp"

#include <vector>

namespace toricstab {

namespace {

template <typename F>
void subsets(int m, int k, F&& body) {
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    if (k == 0) {
        body(idx);
        return;
    }
    if (k > m) return;
    while (true) {
        body(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == m - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (int j = pos + 1; j < k; ++j)
            idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
}

}  // namespace

OracleResult brute_force_lp(const LinearProgram& lp) {
    const Eigen::Index n = lp.num_vars();
    const Eigen::Index mi = lp.ineq_lhs.rows();
    const Eigen::Index me = lp.eq_lhs.rows();
    const int m = static_cast<int>(mi + me);

    auto row = [&](int i) {
        return i < mi ? RatVector(lp.ineq_lhs.row(i)) : RatVector(lp.eq_lhs.row(i - mi));
    };
    auto rhs = [&](int i) { return i < mi ? lp.ineq_rhs(i) : lp.eq_rhs(i - mi); };

    auto feasible = [&](const RatVector& x) {
        for (Eigen::Index i = 0; i < mi; ++i) {
            Rational s = 0;
            for (Eigen::Index j = 0; j < n; ++j) s += lp.ineq_lhs(i, j) * x(j);
            if (s < lp.ineq_rhs(i)) return false;
        }
        for (Eigen::Index i = 0; i < me; ++i) {
            Rational s = 0;
            for (Eigen::Index j = 0; j < n; ++j) s += lp.eq_lhs(i, j) * x(j);
            if (s != lp.eq_rhs(i)) return false;
        }
        return true;
    };

    bool any_bfs = false;
    Rational best;
    subsets(m, static_cast<int>(n), [&](const std::vector<int>& idx) {
        RatMatrix mat(n, n);
        RatVector b(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            mat.row(i) = row(idx[static_cast<size_t>(i)]).transpose();
            b(i) = rhs(idx[static_cast<size_t>(i)]);
        }
        Eigen::FullPivLU<RatMatrix> lu(mat);
        if (lu.rank() != n) return;
        RatVector x = lu.solve(b);
        if (!feasible(x)) return;
        Rational v = lp.objective.dot(x);
        if (!any_bfs || v < best) best = v;
        any_bfs = true;
    });

    if (!any_bfs) return {LPOutcome::Kind::Infeasible, 0};

    // Extreme rays of the recession cone {A r >= 0, E r = 0}.
    auto in_cone = [&](const RatVector& r) {
        for (Eigen::Index i = 0; i < mi; ++i) {
            Rational s = 0;
            for (Eigen::Index j = 0; j < n; ++j) s += lp.ineq_lhs(i, j) * r(j);
            if (s < 0) return false;
        }
        for (Eigen::Index i = 0; i < me; ++i) {
            Rational s = 0;
            for (Eigen::Index j = 0; j < n; ++j) s += lp.eq_lhs(i, j) * r(j);
            if (s != 0) return false;
        }
        return true;
    };

    bool unbounded = false;
    if (n == 1) {
        for (int sign : {1, -1}) {
            RatVector ray(1);
            ray(0) = sign;
            if (in_cone(ray) && lp.objective.dot(ray) < 0) unbounded = true;
        }
        return {unbounded ? LPOutcome::Kind::Unbounded : LPOutcome::Kind::Optimal, best};
    }
    subsets(m, static_cast<int>(n) - 1, [&](const std::vector<int>& idx) {
        if (unbounded) return;
        RatMatrix mat(static_cast<Eigen::Index>(idx.size()), n);
        for (size_t i = 0; i < idx.size(); ++i) mat.row(static_cast<Eigen::Index>(i)) = row(idx[i]).transpose();
        Eigen::FullPivLU<RatMatrix> lu(mat);
        if (lu.rank() != n - 1) return;
        RatMatrix kernel = lu.kernel();
        for (Eigen::Index col = 0; col < kernel.cols(); ++col) {
            RatVector r = kernel.col(col);
            for (int sign : {1, -1}) {
                RatVector ray = Rational(sign) * r;
                if (in_cone(ray) && lp.objective.dot(ray) < 0) unbounded = true;
            }
        }
    });

    if (unbounded) return {LPOutcome::Kind::Unbounded, 0};
    return {LPOutcome::Kind::Optimal, best};
}

}  // namespace toricstab
