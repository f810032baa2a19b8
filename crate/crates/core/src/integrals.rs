//! Left and right integrals and the data attached to them: the modular
//! element `δ`, the automorphisms `σ`, `σ′`, and the scalar `ν`.

use num_complex::Complex64;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::hopf::{row, HopfData};
use crate::numerics::{
    dist, dist_vec, identity, inverse, kron, min_eigenvalue, null_space, rank, ComplexMatrix, ComplexVector,
    Tolerance,
};

/// Which invariance condition a functional satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `(ι⊗φ)Δ(a) = φ(a)1`
    Left,
    /// `(ψ⊗ι)Δ(a) = ψ(a)1`
    Right,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Linear system whose null space is the space of integrals on `side`.
pub fn invariance_system(h: &HopfData, side: Side) -> ComplexMatrix {
    let n = h.dim();
    let u = h.unit();
    let d = h.coproduct();
    let mut sys = ComplexMatrix::zeros(n * n, n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = d[(j * n + k, i)];
                match side {
                    // Σ_k c[i,j,k] φ_k − φ_i u_j = 0
                    Side::Left => sys[(i * n + j, k)] += c,
                    // Σ_j c[i,j,k] ψ_j − ψ_i u_k = 0
                    Side::Right => sys[(i * n + k, j)] += c,
                }
            }
            sys[(i * n + j, i)] -= u[j];
        }
    }
    sys
}

/// Invariance residual `‖(ι⊗φ)Δ − 1·φ‖` (or the right-handed version).
pub fn invariance_residual(h: &HopfData, side: Side, f: &ComplexVector) -> f64 {
    (invariance_system(h, side) * f).norm()
}

/// Scale so that the basis value of largest modulus (first index on ties)
/// equals 1.
pub fn normalize(f: &ComplexVector) -> ComplexVector {
    let idx = anchor_index(f);
    f / f[idx]
}

/// Index of the largest-modulus entry, taking the first among near-ties.
pub fn anchor_index(f: &ComplexVector) -> usize {
    let max = f.iter().map(|z| z.norm()).fold(0.0, f64::max);
    f.iter().position(|z| z.norm() >= max * (1.0 - 1e-9)).unwrap_or(0)
}

pub fn solve_integral(h: &HopfData, side: Side) -> Result<ComplexVector> {
    let sys = invariance_system(h, side);
    let kernel = null_space(&sys, h.tolerance().membership_tol);
    match kernel.len() {
        0 => Err(Error::NoIntegral { side: side.name() }),
        1 => Ok(normalize(&kernel[0])),
        dim => Err(Error::NonUniqueIntegral { side: side.name(), dim }),
    }
}

pub fn solve_left_integral(h: &HopfData) -> Result<ComplexVector> {
    solve_integral(h, Side::Left)
}

pub fn solve_right_integral(h: &HopfData) -> Result<ComplexVector> {
    solve_integral(h, Side::Right)
}

/// `[f(e_i e_j)]`.
pub fn bilinear_form(h: &HopfData, f: &ComplexVector) -> ComplexMatrix {
    let n = h.dim();
    let a = h.algebra();
    ComplexMatrix::from_fn(n, n, |i, j| f.dot(&a.left_basis(i).column(j)))
}

/// `σ` with `f(ab) = f(bσ(a))`, from the bilinear form `Φ`: `σ = Φ⁻¹Φᵀ`.
pub fn modular_automorphism(h: &HopfData, f: &ComplexVector, what: &str) -> Result<ComplexMatrix> {
    let n = h.dim();
    let form = bilinear_form(h, f);
    let r = rank(&form);
    if r < n {
        return Err(Error::NotFaithful { what: what.to_string(), rank: r, dim: n });
    }
    let inv = inverse(&form, what, h.tolerance())?;
    Ok(inv * form.transpose())
}

/// `‖σ(ab) − σ(a)σ(b)‖` over basis pairs, together with `‖σ(1) − 1‖`.
pub fn automorphism_residual(h: &HopfData, sigma: &ComplexMatrix) -> f64 {
    let a = h.algebra();
    let n = h.dim();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let lhs = sigma * a.left_basis(i).column(j);
            let rhs = a.product(&sigma.column(i).into_owned(), &sigma.column(j).into_owned());
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst.max(dist_vec(&(sigma * h.unit()), h.unit()))
}

/// Gram matrix `K[i,j] = φ(e_i* e_j)`, so that `φ(x*y) = x^H K y`.
pub fn positivity_gram(h: &HopfData, f: &ComplexVector) -> Result<ComplexMatrix> {
    let a = h.algebra();
    let star = a.star_matrix().ok_or(Error::MissingStar)?;
    let n = h.dim();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        let ei_star = star.column(i).into_owned();
        f.dot(&(a.left_mult(&ei_star).column(j)))
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Positivity {
    pub phi_positive: bool,
    pub psi_positive: bool,
    pub phi_min_eigenvalue: f64,
    pub psi_min_eigenvalue: f64,
    /// `K_φ` as above
    pub phi_gram: ComplexMatrix,
    pub psi_gram: ComplexMatrix,
}

/// Integrals of a Hopf algebra and the derived modular data.
#[derive(Debug, Clone)]
pub struct IntegralData {
    pub phi: ComplexVector,
    pub psi: ComplexVector,
    pub delta: ComplexVector,
    pub delta_inv: ComplexVector,
    pub sigma: ComplexMatrix,
    pub sigma_prime: ComplexMatrix,
    pub nu: Complex64,
    /// `[φ(e_i e_j)]`
    pub phi_form: ComplexMatrix,
    pub positivity: Option<Positivity>,
    /// `c` with `ψ = c·(φ∘S)`
    pub psi_over_phi_s: Complex64,
    residuals: IntegralResiduals,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralResiduals {
    pub left_invariance: f64,
    pub right_invariance: f64,
    pub delta_consistency: f64,
    pub delta_inverse: f64,
    pub psi_delta_inv: f64,
    pub sigma_relation: f64,
    pub sigma_prime_relation: f64,
    pub sigma_automorphism: f64,
    pub sigma_prime_automorphism: f64,
    pub nu_consistency: f64,
    pub psi_vs_phi_s: f64,
    pub left_kernel: usize,
    pub right_kernel: usize,
}

impl IntegralData {
    /// Solve both invariance systems and derive everything else.
    pub fn solve(h: &HopfData) -> Result<Self> {
        let phi = solve_left_integral(h)?;
        let psi = solve_right_integral(h)?;
        let data = Self::from_functionals(h, phi, psi)?;
        data.residuals_result(h.tolerance())?;
        Ok(data)
    }

    /// Derive the modular data from a given left and right integral.
    pub fn from_functionals(h: &HopfData, phi: ComplexVector, psi: ComplexVector) -> Result<Self> {
        let tol = h.tolerance();
        let n = h.dim();
        let a = h.algebra();
        let d = h.coproduct();
        let u = h.unit();
        let id = identity(n);

        let left_kernel = null_space(&invariance_system(h, Side::Left), tol.membership_tol).len();
        let right_kernel = null_space(&invariance_system(h, Side::Right), tol.membership_tol).len();

        // (φ⊗ι)Δ(a) = φ(a)δ
        let a0 = anchor_index(&phi);
        let phi_left = kron(&row(&phi), &id) * d;
        let delta = phi_left.column(a0) / phi[a0];
        let delta_consistency = dist(&phi_left, &(&delta * row(&phi)));
        if !(delta_consistency <= tol.abs_tol) {
            return Err(Error::InconsistentDelta { residual: delta_consistency });
        }
        let l_delta = inverse(&a.left_mult(&delta), "modular element", tol)?;
        let delta_inv = l_delta * u;
        let delta_inverse = dist_vec(&a.product(&delta, &delta_inv), u).max(dist_vec(&a.product(&delta_inv, &delta), u));
        // (ι⊗ψ)Δ(a) = ψ(a)δ⁻¹
        let psi_right = kron(&id, &row(&psi)) * d;
        let psi_delta_inv = dist(&psi_right, &(&delta_inv * row(&psi)));

        let sigma = modular_automorphism(h, &phi, "left integral")?;
        let sigma_prime = modular_automorphism(h, &psi, "right integral")?;
        let phi_form = bilinear_form(h, &phi);
        let psi_form = bilinear_form(h, &psi);
        let sigma_relation = dist(&phi_form.transpose(), &(&phi_form * &sigma));
        let sigma_prime_relation = dist(&psi_form.transpose(), &(&psi_form * &sigma_prime));
        let sigma_automorphism = automorphism_residual(h, &sigma);
        let sigma_prime_automorphism = automorphism_residual(h, &sigma_prime);

        // φ(S²(a)) = νφ(a)
        let s = h.antipode();
        let phi_s2 = (s * s).transpose() * &phi;
        let nu = phi_s2[a0] / phi[a0];
        let nu_consistency = dist_vec(&phi_s2, &(&phi * nu));
        if !(nu_consistency <= tol.abs_tol) {
            return Err(Error::InconsistentNu { residual: nu_consistency });
        }

        let phi_s = s.transpose() * &phi;
        let b0 = anchor_index(&phi_s);
        let psi_over_phi_s = psi[b0] / phi_s[b0];
        let psi_vs_phi_s = dist_vec(&psi, &(&phi_s * psi_over_phi_s));

        let positivity = if a.has_star() {
            let phi_gram = positivity_gram(h, &phi)?;
            let psi_gram = positivity_gram(h, &psi)?;
            let hermitian = |g: &ComplexMatrix| dist(g, &g.adjoint()) <= tol.abs_tol;
            let pmin = min_eigenvalue(&((&phi_gram + phi_gram.adjoint()) * crate::numerics::r(0.5)));
            let qmin = min_eigenvalue(&((&psi_gram + psi_gram.adjoint()) * crate::numerics::r(0.5)));
            Some(Positivity {
                phi_positive: hermitian(&phi_gram) && pmin >= -tol.abs_tol,
                psi_positive: hermitian(&psi_gram) && qmin >= -tol.abs_tol,
                phi_min_eigenvalue: pmin,
                psi_min_eigenvalue: qmin,
                phi_gram,
                psi_gram,
            })
        } else {
            None
        };

        let residuals = IntegralResiduals {
            left_invariance: invariance_residual(h, Side::Left, &phi),
            right_invariance: invariance_residual(h, Side::Right, &psi),
            delta_consistency,
            delta_inverse,
            psi_delta_inv,
            sigma_relation,
            sigma_prime_relation,
            sigma_automorphism,
            sigma_prime_automorphism,
            nu_consistency,
            psi_vs_phi_s,
            left_kernel,
            right_kernel,
        };
        Ok(Self {
            phi,
            psi,
            delta,
            delta_inv,
            sigma,
            sigma_prime,
            nu,
            phi_form,
            positivity,
            psi_over_phi_s,
            residuals,
        })
    }

    pub fn residuals(&self) -> &IntegralResiduals {
        &self.residuals
    }

    /// Whether both integrals are positive (requires a star).
    pub fn is_positive(&self) -> bool {
        self.positivity.as_ref().is_some_and(|p| p.phi_positive && p.psi_positive)
    }

    fn residuals_result(&self, tol: &Tolerance) -> Result<()> {
        let r = &self.residuals;
        let t = tol.abs_tol;
        if !(r.left_invariance <= t) {
            return Err(Error::InvarianceFailed { what: "left integral".into(), residual: r.left_invariance });
        }
        if !(r.right_invariance <= t) {
            return Err(Error::InvarianceFailed { what: "right integral".into(), residual: r.right_invariance });
        }
        if !(r.delta_inverse <= t) {
            return Err(Error::NotInvertible { what: "modular element".into(), smallest: r.delta_inverse });
        }
        if !(r.psi_delta_inv <= t) {
            return Err(Error::InconsistentDelta { residual: r.psi_delta_inv });
        }
        if !(r.sigma_automorphism <= t) {
            return Err(Error::NotAutomorphism { what: "σ".into(), residual: r.sigma_automorphism });
        }
        if !(r.sigma_prime_automorphism <= t) {
            return Err(Error::NotAutomorphism { what: "σ′".into(), residual: r.sigma_prime_automorphism });
        }
        Ok(())
    }

    pub fn checks(&self, tol: &Tolerance) -> Vec<Check> {
        let r = &self.residuals;
        let t = tol.abs_tol;
        let mut out = vec![
            Check::measured("integrals.left_invariance", "(ι⊗φ)Δ(a) = φ(a)1", r.left_invariance, t),
            Check::measured("integrals.right_invariance", "(ψ⊗ι)Δ(a) = ψ(a)1", r.right_invariance, t),
            Check::verdict(
                "integrals.left_unique",
                "the left integral is unique up to a scalar",
                r.left_kernel == 1,
                format!("solution space dimension {}", r.left_kernel),
            ),
            Check::verdict(
                "integrals.right_unique",
                "the right integral is unique up to a scalar",
                r.right_kernel == 1,
                format!("solution space dimension {}", r.right_kernel),
            ),
            Check::measured("integrals.delta", "(φ⊗ι)Δ(a) = φ(a)δ", r.delta_consistency, t),
            Check::measured("integrals.delta_invertible", "δδ⁻¹ = δ⁻¹δ = 1", r.delta_inverse, t),
            Check::measured("integrals.delta_inverse_psi", "(ι⊗ψ)Δ(a) = ψ(a)δ⁻¹", r.psi_delta_inv, t),
            Check::verdict(
                "integrals.faithful",
                "the integrals are faithful",
                true,
                "the form (a, b) ↦ φ(ab) has full rank",
            ),
            Check::measured("integrals.sigma", "φ(ab) = φ(bσ(a))", r.sigma_relation, t),
            Check::measured("integrals.sigma_automorphism", "σ is an automorphism", r.sigma_automorphism, t),
            Check::measured("integrals.sigma_prime", "ψ(ab) = ψ(bσ′(a))", r.sigma_prime_relation, t),
            Check::measured(
                "integrals.sigma_prime_automorphism",
                "σ′ is an automorphism",
                r.sigma_prime_automorphism,
                t,
            ),
            Check::measured("integrals.nu", "φ(S²(a)) = νφ(a)", r.nu_consistency, t)
                .with_note(format!("ν = {}", fmt_complex(self.nu))),
            Check::measured("integrals.psi_phi_s", "φ∘S is a right integral", r.psi_vs_phi_s, t)
                .with_note(format!("ψ = {}·(φ∘S)", fmt_complex(self.psi_over_phi_s))),
        ];
        match &self.positivity {
            Some(p) => {
                out.push(
                    Check::verdict(
                        "integrals.phi_positive",
                        "φ(a*a) ≥ 0",
                        p.phi_positive,
                        format!("smallest Gram eigenvalue {:.3e}", p.phi_min_eigenvalue),
                    ),
                );
                out.push(Check::verdict(
                    "integrals.psi_positive",
                    "ψ(a*a) ≥ 0",
                    p.psi_positive,
                    format!("smallest Gram eigenvalue {:.3e}", p.psi_min_eigenvalue),
                ));
                if p.phi_positive {
                    out.push(Check::measured("integrals.nu_modulus", "|ν| = 1", (self.nu.norm() - 1.0).abs(), t));
                }
            }
            None => out.push(Check::skipped("integrals.positivity", "φ(a*a) ≥ 0", "no star")),
        }
        out
    }
}

/// Compact rendering used in report notes.
pub fn fmt_complex(z: Complex64) -> String {
    // ten significant digits, so round-off does not leak into reports
    let clean = |x: f64| {
        if x.abs() < 1e-12 {
            0.0
        } else {
            format!("{x:.9e}").parse::<f64>().unwrap_or(x)
        }
    };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

/// Coefficientwise closeness in the Euclidean norm.
pub fn approx_eq(x: &ComplexVector, target: &ComplexVector, tol: f64) -> bool {
    dist_vec(x, target) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{basis_vector, ONE, ZERO};
    use crate::presets;

    fn hopf(name: &str) -> HopfData {
        let (a, d) = presets::finite_preset(name).unwrap();
        HopfData::new(a, d, &Tolerance::default()).unwrap()
    }

    /// Independent oracle: brute-force all four basis vectors as candidate
    /// supports and test the invariance equations directly on generators.
    fn sweedler_left_oracle(f: &ComplexVector) -> f64 {
        // (ι⊗φ)Δ(a) for each basis a, written out by hand:
        // Δ1 = 1⊗1, Δg = g⊗g, Δx = x⊗1 + g⊗x, Δgx = gx⊗g + 1⊗gx
        let e = |i| basis_vector(4, i);
        let lhs = [
            e(0) * f[0],
            e(1) * f[1],
            e(2) * f[0] + e(1) * f[2],
            e(3) * f[1] + e(0) * f[3],
        ];
        (0..4).map(|i| (&lhs[i] - e(0) * f[i]).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn function_algebra_integral_is_counting() {
        let h = hopf("k_s3");
        let d = IntegralData::solve(&h).unwrap();
        assert!(approx_eq(&d.phi, &ComplexVector::from_element(6, ONE), 1e-12));
        assert!(approx_eq(&d.psi, &d.phi, 1e-12));
        assert!(approx_eq(&d.delta, h.unit(), 1e-12));
        assert!(dist(&d.sigma, &identity(6)) < 1e-12);
        assert!((d.nu - ONE).norm() < 1e-12);
        let p = d.positivity.as_ref().unwrap();
        assert!(dist(&p.phi_gram, &identity(6)) < 1e-12);
    }

    #[test]
    fn group_algebra_integral_at_identity() {
        let h = hopf("group_alg_s3");
        let d = IntegralData::solve(&h).unwrap();
        assert!(approx_eq(&d.phi, &basis_vector(6, 0), 1e-12));
        let p = d.positivity.as_ref().unwrap();
        assert!(dist(&p.phi_gram, &identity(6)) < 1e-12);
        assert!(d.is_positive());
    }

    #[test]
    fn sweedler_data() {
        let h = hopf("sweedler");
        let d = IntegralData::solve(&h).unwrap();
        assert!(sweedler_left_oracle(&d.phi) < 1e-12);
        assert!(approx_eq(&d.phi, &basis_vector(4, 3), 1e-10));
        assert!(approx_eq(&d.psi, &basis_vector(4, 2), 1e-10));
        assert!(approx_eq(&d.delta, &basis_vector(4, 1), 1e-10));
        assert!((d.nu + ONE).norm() < 1e-10);
        // σ(g) = −g, σ(x) = −x
        assert!(approx_eq(&d.sigma.column(1).into_owned(), &(-basis_vector(4, 1)), 1e-10));
        assert!(approx_eq(&d.sigma.column(2).into_owned(), &(-basis_vector(4, 2)), 1e-10));
        assert!(d.positivity.is_none());
    }

    #[test]
    fn sweedler_oracle_has_one_dimensional_solution_space() {
        // the oracle rejects every other basis functional
        for i in 0..3 {
            assert!(sweedler_left_oracle(&basis_vector(4, i)) > 0.5);
        }
        let mut mixed = basis_vector(4, 3);
        mixed[2] = ONE;
        assert!(sweedler_left_oracle(&mixed) > 0.5);
    }

    #[test]
    fn all_presets_pass() {
        for (name, (a, d)) in presets::finite_presets() {
            let tol = Tolerance::default();
            let h = HopfData::new(a, d, &tol).unwrap();
            let data = IntegralData::solve(&h).unwrap_or_else(|e| panic!("{name}: {e}"));
            for c in data.checks(&tol) {
                assert!(c.passed(), "{name}: {c:?}");
            }
            if h.algebra().has_star() {
                assert!(data.is_positive(), "{name}");
                assert!(dist(&data.sigma, &identity(h.dim())) < 1e-10, "{name}");
            }
        }
    }

    #[test]
    fn non_integral_detected() {
        let h = hopf("sweedler");
        let bad = basis_vector(4, 0);
        assert!(invariance_residual(&h, Side::Left, &bad) > 0.5);
        let zero = ComplexVector::from_element(4, ZERO);
        assert_eq!(invariance_residual(&h, Side::Left, &zero), 0.0);
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(fmt_complex(Complex64::new(-1.0, 1e-15)), "-1");
        assert_eq!(fmt_complex(Complex64::new(0.5, -2.0)), "0.5-2i");
    }
}
