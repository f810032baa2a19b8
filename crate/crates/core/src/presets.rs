//! Built-in algebras: function algebras and group algebras of finite groups,
//! and Sweedler's four-dimensional Hopf algebra.

use num_complex::Complex64;

use crate::algebra::FiniteDimAlgebra;
use crate::groups::FiniteGroup;
use crate::numerics::{identity, ComplexMatrix, ComplexVector, ONE};

/// Names accepted by the preset registry, in listing order.
pub const PRESET_NAMES: [&str; 7] = ["k_z2", "k_z4", "k_s3", "group_alg_z2", "group_alg_s3", "sweedler", "z_discrete"];

/// Coproduct matrix (`n² × n`) from entries `(i, j, k, c)` meaning
/// `Δ(e_i)` contains `c·e_j⊗e_k`.
pub fn coproduct_from_entries<I>(n: usize, entries: I) -> ComplexMatrix
where
    I: IntoIterator<Item = (usize, usize, usize, Complex64)>,
{
    let mut d = ComplexMatrix::zeros(n * n, n);
    for (i, j, k, v) in entries {
        d[(j * n + k, i)] += v;
    }
    d
}

/// `K(G)`: functions on `G` with pointwise product, `Δ(f)(p, q) = f(pq)`.
pub fn function_algebra(g: &FiniteGroup) -> (FiniteDimAlgebra, ComplexMatrix) {
    let n = g.order();
    let labels = g.names().iter().map(|p| format!("δ_{p}")).collect();
    let a = FiniteDimAlgebra::from_structure_constants(labels, (0..n).map(|p| (p, p, p, ONE)))
        .and_then(|a| a.with_star(identity(n)))
        .and_then(|a| a.with_unit(ComplexVector::from_element(n, ONE)))
        .expect("function algebra");
    let mut entries = Vec::new();
    for p in 0..n {
        for q in 0..n {
            entries.push((g.mul(p, q), p, q, ONE));
        }
    }
    (a, coproduct_from_entries(n, entries))
}

/// `ℂG`: span of `λ_p` with `λ_pλ_q = λ_{pq}`, `λ_p* = λ_{p⁻¹}`, `Δλ_p = λ_p⊗λ_p`.
pub fn group_algebra(g: &FiniteGroup) -> (FiniteDimAlgebra, ComplexMatrix) {
    let n = g.order();
    let labels = g.names().iter().map(|p| format!("λ_{p}")).collect();
    let mut star = ComplexMatrix::zeros(n, n);
    for p in 0..n {
        star[(g.inv(p), p)] = ONE;
    }
    let mut unit = ComplexVector::zeros(n);
    unit[g.identity()] = ONE;
    let mut entries = Vec::new();
    for p in 0..n {
        for q in 0..n {
            entries.push((p, q, g.mul(p, q), ONE));
        }
    }
    let a = FiniteDimAlgebra::from_structure_constants(labels, entries)
        .and_then(|a| a.with_star(star))
        .and_then(|a| a.with_unit(unit))
        .expect("group algebra");
    (a, coproduct_from_entries(n, (0..n).map(|p| (p, p, p, ONE))))
}

/// Sweedler's algebra on the basis `1, g, x, gx` with `g² = 1`, `x² = 0`,
/// `xg = −gx`, `Δg = g⊗g`, `Δx = x⊗1 + g⊗x`. It carries no involution.
pub fn sweedler() -> (FiniteDimAlgebra, ComplexMatrix) {
    let one = ONE;
    let neg = -ONE;
    let mult = vec![
        (0, 0, 0, one),
        (0, 1, 1, one),
        (0, 2, 2, one),
        (0, 3, 3, one),
        (1, 0, 1, one),
        (1, 1, 0, one),
        (1, 2, 3, one),
        (1, 3, 2, one),
        (2, 0, 2, one),
        (2, 1, 3, neg),
        (3, 0, 3, one),
        (3, 1, 2, neg),
    ];
    let labels = ["1", "g", "x", "gx"].iter().map(|s| s.to_string()).collect();
    let mut unit = ComplexVector::zeros(4);
    unit[0] = ONE;
    let a = FiniteDimAlgebra::from_structure_constants(labels, mult)
        .and_then(|a| a.with_unit(unit))
        .expect("sweedler algebra");
    let comult = vec![(0, 0, 0, one), (1, 1, 1, one), (2, 2, 0, one), (2, 1, 2, one), (3, 3, 1, one), (3, 0, 3, one)];
    (a, coproduct_from_entries(4, comult))
}

/// Structure-constant presets by name; `z_discrete` is not one of them.
pub fn finite_preset(name: &str) -> Option<(FiniteDimAlgebra, ComplexMatrix)> {
    Some(match name {
        "k_z2" => function_algebra(&FiniteGroup::cyclic(2)),
        "k_z4" => function_algebra(&FiniteGroup::cyclic(4)),
        "k_s3" => function_algebra(&FiniteGroup::symmetric3()),
        "group_alg_z2" => group_algebra(&FiniteGroup::cyclic(2)),
        "group_alg_s3" => group_algebra(&FiniteGroup::symmetric3()),
        "sweedler" => sweedler(),
        _ => return None,
    })
}

pub fn finite_presets() -> Vec<(&'static str, (FiniteDimAlgebra, ComplexMatrix))> {
    PRESET_NAMES.iter().filter_map(|&n| finite_preset(n).map(|p| (n, p))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let dims: Vec<(&str, usize)> = finite_presets().iter().map(|(n, (a, _))| (*n, a.dim())).collect();
        assert_eq!(
            dims,
            vec![("k_z2", 2), ("k_z4", 4), ("k_s3", 6), ("group_alg_z2", 2), ("group_alg_s3", 6), ("sweedler", 4)]
        );
    }

    #[test]
    fn sweedler_has_no_star() {
        assert!(!sweedler().0.has_star());
        assert!(finite_preset("z_discrete").is_none());
    }

    #[test]
    fn k_s3_is_commutative() {
        let (a, _) = finite_preset("k_s3").unwrap();
        assert!(a.is_commutative(&Default::default()));
        let (b, _) = finite_preset("group_alg_s3").unwrap();
        assert!(!b.is_commutative(&Default::default()));
    }
}
