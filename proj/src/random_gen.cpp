#include "toricstab/random_gen.hpp"

#include "toricstab/catalog.hpp"

namespace toricstab {

IntMatrix random_unimodular(Rng& rng, Eigen::Index n, int steps) {
    IntMatrix A = IntMatrix::Identity(n, n);
    if (n == 1) {
        if (rng.uniform(0, 1) == 1) A(0, 0) = -1;
        return A;
    }
    for (int s = 0; s < steps; ++s) {
        const int kind = rng.uniform(0, 2);
        Eigen::Index i = rng.uniform(0, static_cast<int>(n) - 1);
        Eigen::Index j = rng.uniform(0, static_cast<int>(n) - 1);
        if (kind == 0 && i != j) {
            A.row(i) += rng.uniform(-2, 2) * A.row(j);
        } else if (kind == 1 && i != j) {
            A.row(i).swap(A.row(j));
        } else {
            A.row(i) = -A.row(i);
        }
    }
    return A;
}

RatVector random_translation(Rng& rng, Eigen::Index n, int max_num, int max_den) {
    RatVector t(n);
    for (Eigen::Index i = 0; i < n; ++i) t(i) = rng.rational(max_num, max_den);
    return t;
}

DelzantPolytope random_delzant2d(Rng& rng) {
    DelzantPolytope base = [&] {
        switch (rng.uniform(0, 3)) {
            case 0: return make_square(Rational(rng.uniform(1, 3)));
            case 1: return make_simplex2(Rational(rng.uniform(1, 3)));
            case 2: return make_hirzebruch_fano();
            default: return make_square(Rational(1) / Rational(rng.uniform(1, 2)));
        }
    }();
    IntMatrix A = random_unimodular(rng, 2);
    RatVector t = random_translation(rng, 2);
    return transform(base, A, t);
}

AffineFunction random_affine(Rng& rng, Eigen::Index n, int max_num, int max_den) {
    AffineFunction f;
    f.a = RatVector(n);
    for (Eigen::Index i = 0; i < n; ++i) f.a(i) = rng.rational(max_num, max_den);
    f.b = rng.rational(max_num, max_den);
    return f;
}

MaxAffinePL random_convex_pl(Rng& rng, Eigen::Index n, int pieces) {
    MaxAffinePL f;
    for (int k = 0; k < pieces; ++k) f.pieces.push_back(random_affine(rng, n));
    return f;
}

LinearProgram random_pointed_lp(Rng& rng) {
    const int n = rng.uniform(2, 4);
    const int extra = rng.uniform(1, 10 - n - 1);
    RatVector c(n);
    for (int j = 0; j < n; ++j) c(j) = Rational(rng.uniform(-3, 3));
    LinearProgram lp = LinearProgram::minimize(c);
    for (int j = 0; j < n; ++j) {
        RatVector row = RatVector::Zero(n);
        row(j) = 1;
        lp.add_inequality(row, Rational(rng.uniform(-4, 0)));
    }
    for (int r = 0; r < extra; ++r) {
        RatVector row(n);
        bool zero = true;
        for (int j = 0; j < n; ++j) {
            row(j) = Rational(rng.uniform(-2, 2));
            if (row(j) != 0) zero = false;
        }
        if (zero) row(rng.uniform(0, n - 1)) = 1;
        const Rational rhs = rng.rational(4, 2);
        if (rng.uniform(0, 5) == 0)
            lp.add_equality(row, rhs);
        else
            lp.add_inequality(row, rhs);
    }
    return lp;
}

}  // namespace toricstab
