#include "mutad/symfun.hpp"

#include <algorithm>
#include <map>

namespace mutad {

MPoly elementary_sym(RegistryPtr reg, int i, const std::vector<int>& vars) {
    if (i < 0) throw internal_error("elementary_sym: negative degree");
    int m = static_cast<int>(vars.size());
    if (i > m) return MPoly::zero(reg);
    // DP over prefixes: E[j] = e_j(vars[0..k)).
    std::vector<MPoly> E(i + 1, MPoly::zero(reg));
    E[0] = MPoly::constant(reg, 1);
    for (int k = 0; k < m; ++k) {
        MPoly x = MPoly::variable(reg, vars[k]);
        for (int j = std::min(i, k + 1); j >= 1; --j) E[j] += E[j - 1] * x;
    }
    return E[i];
}

MPoly elementary_sym_neg(RegistryPtr reg, int i, const std::vector<int>& vars) {
    MPoly e = elementary_sym(reg, i, vars);
    return (i % 2) ? -e : e;
}

MPoly complete_sym(RegistryPtr reg, int i, const std::vector<int>& vars) {
    if (i < 0) throw internal_error("complete_sym: negative degree");
    if (i == 0) return MPoly::constant(reg, 1);
    if (vars.empty()) return MPoly::zero(reg);
    std::vector<MPoly> H(i + 1, MPoly::zero(reg));
    H[0] = MPoly::constant(reg, 1);
    // H[j] over first k vars: H[j] = H_{k-1}[j] + x_k * H_k[j-1].
    for (int k = 0; k < static_cast<int>(vars.size()); ++k) {
        MPoly x = MPoly::variable(reg, vars[k]);
        for (int j = 1; j <= i; ++j) H[j] += x * H[j - 1];
    }
    return H[i];
}

MPoly vandermonde(RegistryPtr reg, const std::vector<int>& vars) {
    MPoly r = MPoly::constant(reg, 1);
    for (size_t i = 0; i < vars.size(); ++i)
        for (size_t j = i + 1; j < vars.size(); ++j)
            r *= MPoly::variable(reg, vars[i]) - MPoly::variable(reg, vars[j]);
    return r;
}

MPoly schur(RegistryPtr reg, const std::vector<long>& partition, const std::vector<int>& vars) {
    size_t n = vars.size();
    if (partition.size() > n) throw input_error("schur: partition longer than variable list");
    for (size_t i = 0; i + 1 < partition.size(); ++i)
        if (partition[i] < partition[i + 1]) throw input_error("schur: partition not weakly decreasing");
    if (!partition.empty() && partition.back() < 0) throw input_error("schur: negative part");
    // exps bottom-up: row for eta_i sits at height n-i, exponent eta_i + n - i.
    std::vector<long> pad(n, 0);
    std::copy(partition.begin(), partition.end(), pad.begin());
    std::vector<long> exps(n);
    for (size_t i = 0; i < n; ++i) exps[n - 1 - i] = pad[i] + static_cast<long>(n - 1 - i);
    MPoly num = power_det(reg, exps, vars);
    MPoly den = vandermonde(reg, vars);
    if (den.is_constant()) return num * (Rat(1) / den.constant_value());
    return num.divide_exact(den, "schur bialternant");
}

namespace {

// Laplace expansion along the first remaining row, minors memoized by the
// set of remaining columns.
MPoly laplace_det(const std::vector<std::vector<MPoly>>& mat, RegistryPtr reg) {
    int n = static_cast<int>(mat.size());
    std::map<uint64_t, MPoly> memo;
    // columns encoded as bitmask; row index = n - popcount(mask)
    struct Rec {
        const std::vector<std::vector<MPoly>>& m;
        RegistryPtr reg;
        int n;
        std::map<uint64_t, MPoly>& memo;
        MPoly run(uint64_t mask) {
            if (mask == 0) return MPoly::constant(reg, 1);
            auto it = memo.find(mask);
            if (it != memo.end()) return it->second;
            int row = n - __builtin_popcountll(mask);
            MPoly acc = MPoly::zero(reg);
            int sign = 1;
            for (int c = 0; c < n; ++c) {
                if (!(mask >> c & 1)) continue;
                if (!m[row][c].is_zero()) {
                    MPoly sub = run(mask & ~(1ull << c));
                    acc += (sign > 0) ? m[row][c] * sub : -(m[row][c] * sub);
                }
                sign = -sign;
            }
            memo.emplace(mask, acc);
            return acc;
        }
    } rec{mat, reg, n, memo};
    return rec.run((n >= 64) ? ~0ull : ((1ull << n) - 1));
}

// Bareiss fraction-free elimination; every division is exact.
MPoly bareiss_det(std::vector<std::vector<MPoly>> a, RegistryPtr reg) {
    int n = static_cast<int>(a.size());
    MPoly prev = MPoly::constant(reg, 1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k].is_zero()) {
            int swap = -1;
            for (int r = k + 1; r < n; ++r)
                if (!a[r][k].is_zero()) { swap = r; break; }
            if (swap < 0) return MPoly::zero(reg);
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                MPoly num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = num.divide_exact(prev, "bareiss determinant");
            }
        prev = a[k][k];
    }
    return (sign > 0) ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

} // namespace

MPoly det_poly(const std::vector<std::vector<MPoly>>& mat) {
    int n = static_cast<int>(mat.size());
    if (n == 0) throw input_error("det_poly: empty matrix");
    RegistryPtr reg;
    for (auto& row : mat) {
        if (static_cast<int>(row.size()) != n) throw input_error("det_poly: matrix not square");
        for (auto& p : row)
            if (p.registry()) reg = p.registry();
    }
    if (!reg) throw input_error("det_poly: no registry");
    if (n <= 6) return laplace_det(mat, reg);
    return bareiss_det(mat, reg);
}

MPoly power_det(RegistryPtr reg, const std::vector<long>& exps, const std::vector<int>& vars) {
    size_t n = vars.size();
    if (exps.size() != n) throw input_error("power_det: size mismatch");
    if (n == 0) return MPoly::constant(reg, 1);
    // Duplicate exponents give a zero determinant.
    std::vector<long> sorted = exps;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return MPoly::zero(reg);
    std::vector<std::vector<MPoly>> mat(n, std::vector<MPoly>(n));
    for (size_t r = 0; r < n; ++r) {
        long e = exps[n - 1 - r];
        for (size_t c = 0; c < n; ++c) mat[r][c] = MPoly::variable(reg, vars[c], static_cast<int>(e));
    }
    return det_poly(mat);
}

} // namespace mutad
