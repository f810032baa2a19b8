//! Fourier transforms between `A` and `B` and the actions `π`, `λ`.

use num_complex::Complex64;

use crate::algebra::{tensor_algebra, FiniteDimAlgebra};
use crate::check::Check;
use crate::duality::DualPair;
use crate::error::{Error, Result};
use crate::integrals::{anchor_index, bilinear_form, fmt_complex};
use crate::numerics::{dist, identity, inverse, kron, kron_vec, ComplexMatrix, ComplexVector, Tolerance, ZERO};

/// The transforms `F1(a) = φ(·a)` and `F2(a) = ψ(S(·)a)` in the bases
/// `e_i` of `A` and `f_j` of `B`.
#[derive(Debug, Clone)]
pub struct FourierMaps {
    pub f1: ComplexMatrix,
    pub f1_inv: ComplexMatrix,
    pub f2: ComplexMatrix,
    pub f2_inv: ComplexMatrix,
    /// `c` with `F2 = c·F1∘σ∘S⁻¹`
    pub f2_scalar: Complex64,
    pub f2_scalar_residual: f64,
}

/// Matrices of the four actions, indexed by basis elements.
#[derive(Debug, Clone)]
pub struct ActionOperators {
    /// `π(e_i)` on `A`
    pub pi_a: Vec<ComplexMatrix>,
    /// `λ(f_j)` on `A`
    pub lambda_a: Vec<ComplexMatrix>,
    /// `π(f_j)` on `B`
    pub pi_b: Vec<ComplexMatrix>,
    /// `λ(e_i)` on `B`
    pub lambda_b: Vec<ComplexMatrix>,
}

fn combine(ops: &[ComplexMatrix], coeffs: &ComplexVector) -> ComplexMatrix {
    let n = ops[0].nrows();
    let mut out = ComplexMatrix::zeros(n, ops[0].ncols());
    for (op, &c) in ops.iter().zip(coeffs.iter()) {
        if c != ZERO {
            out += op * c;
        }
    }
    out
}

impl ActionOperators {
    pub fn new(pair: &DualPair) -> Self {
        let a = &pair.a;
        let b = &pair.b;
        let n = a.dim();
        let p = &pair.pairing;
        let alg_a = a.algebra();
        let alg_b = b.algebra();
        let pi_a = (0..n).map(|i| alg_a.left_basis(i).clone()).collect();
        let pi_b = (0..n).map(|j| alg_b.left_basis(j).clone()).collect();
        // ⟨S⁻¹(e_j), f_l⟩
        let s_inv_pair = a.antipode_inv().transpose() * p;
        let da = a.coproduct();
        let db = b.coproduct();
        let mut lambda_a = Vec::with_capacity(n);
        let mut lambda_b = Vec::with_capacity(n);
        for l in 0..n {
            // λ(f_l)e_i = Σ_{jk} c[i,j,k] ⟨S⁻¹e_j, f_l⟩ e_k
            let mut m = ComplexMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let w = s_inv_pair[(j, l)];
                    if w == ZERO {
                        continue;
                    }
                    for k in 0..n {
                        m[(k, i)] += da[(j * n + k, i)] * w;
                    }
                }
            }
            lambda_a.push(m);
        }
        for i in 0..n {
            // λ(e_i)f_j = Σ_{pk} c_B[j,p,k] ⟨e_i, f_p⟩ f_k
            let mut m = ComplexMatrix::zeros(n, n);
            for j in 0..n {
                for q in 0..n {
                    let w = p[(i, q)];
                    if w == ZERO {
                        continue;
                    }
                    for k in 0..n {
                        m[(k, j)] += db[(q * n + k, j)] * w;
                    }
                }
            }
            lambda_b.push(m);
        }
        Self { pi_a, lambda_a, pi_b, lambda_b }
    }

    pub fn pi_a(&self, a: &ComplexVector) -> ComplexMatrix {
        combine(&self.pi_a, a)
    }

    pub fn lambda_a(&self, b: &ComplexVector) -> ComplexMatrix {
        combine(&self.lambda_a, b)
    }

    pub fn pi_b(&self, b: &ComplexVector) -> ComplexMatrix {
        combine(&self.pi_b, b)
    }

    pub fn lambda_b(&self, a: &ComplexVector) -> ComplexMatrix {
        combine(&self.lambda_b, a)
    }

    /// Worst `‖ρ(xy) − ρ(x)ρ(y)‖` over basis pairs, and `‖ρ(1) − ι‖`.
    fn representation_residual(alg: &FiniteDimAlgebra, ops: &[ComplexMatrix]) -> f64 {
        let n = alg.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let xy = alg.left_basis(i).column(j).into_owned();
                worst = worst.max(dist(&combine(ops, &xy), &(&ops[i] * &ops[j])));
            }
        }
        if let Some(u) = alg.unit() {
            worst = worst.max(dist(&combine(ops, u), &identity(ops[0].nrows())));
        }
        worst
    }
}

/// The canonical element `W = Σ e_i⊗e^i` of `A⊗B`, `e^i` the dual basis.
pub fn canonical_element(pair: &DualPair) -> ComplexVector {
    let n = pair.a.dim();
    let mut w = ComplexVector::zeros(n * n);
    for i in 0..n {
        w += kron_vec(&pair.a.algebra().basis(i), &pair.pairing_inv.column(i).into_owned());
    }
    w
}

impl FourierMaps {
    pub fn new(pair: &DualPair) -> Result<Self> {
        let a = &pair.a;
        let tol = a.tolerance();
        let phi_form = bilinear_form(a, &pair.a_integrals.phi);
        let f1 = &pair.pairing_inv * phi_form;
        let f1_inv = inverse(&f1, "F1", tol)?;
        let n = a.dim();
        // Q[i, k] = ψ(S(e_i)e_k)
        let psi = &pair.a_integrals.psi;
        let s = a.antipode();
        let alg = a.algebra();
        let q = ComplexMatrix::from_fn(n, n, |i, k| {
            let sei = s.column(i).into_owned();
            psi.dot(&alg.product(&sei, &alg.basis(k)))
        });
        let f2 = &pair.pairing_inv * q;
        let f2_inv = inverse(&f2, "F2", tol)?;
        let target = &f1 * &pair.a_integrals.sigma * a.antipode_inv();
        let (f2_scalar, f2_scalar_residual) = proportionality(&f2, &target);
        Ok(Self { f1, f1_inv, f2, f2_inv, f2_scalar, f2_scalar_residual })
    }

    pub fn apply(&self, a: &ComplexVector) -> ComplexVector {
        &self.f1 * a
    }

    pub fn apply_inverse(&self, b: &ComplexVector) -> ComplexVector {
        &self.f1_inv * b
    }
}

/// Best scalar `c` with `x ≈ c·y` anchored at the largest entry of `y`,
/// and the residual `‖x − c·y‖`.
pub fn proportionality(x: &ComplexMatrix, y: &ComplexMatrix) -> (Complex64, f64) {
    let flat_y = ComplexVector::from_iterator(y.len(), y.iter().copied());
    let k = anchor_index(&flat_y);
    let flat_x = ComplexVector::from_iterator(x.len(), x.iter().copied());
    if flat_y[k] == ZERO {
        return (ZERO, flat_x.norm());
    }
    let c = flat_x[k] / flat_y[k];
    (c, (flat_x - flat_y * c).norm())
}

/// Constants relating the closed inverse formulas to the true inverses.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseConstants {
    /// `φ_B(S_B⁻¹(·)b) = c·F1⁻¹(b)`
    pub first: Complex64,
    pub first_spread: f64,
    /// `ψ_B(·b) = c·F2⁻¹(b)`
    pub second: Complex64,
    pub second_spread: f64,
}

/// Evaluate the closed inverse formulas on every basis element of `B` and
/// report their proportionality to the inverse matrices.
pub fn inverse_constants(pair: &DualPair, maps: &FourierMaps) -> InverseConstants {
    let b = &pair.b;
    let n = b.dim();
    let alg_b = b.algebra();
    let p_inv_t = pair.pairing_inv.transpose();
    let phi_b = &pair.b_integrals.phi;
    let psi_b = &pair.b_integrals.psi;
    let s_b_inv = b.antipode_inv();
    let mut first = ComplexMatrix::zeros(n, n);
    let mut second = ComplexMatrix::zeros(n, n);
    for col in 0..n {
        let bb = alg_b.basis(col);
        // values on f_j, then a with ⟨a, f_j⟩ = w_j
        let w1 = ComplexVector::from_fn(n, |j, _| phi_b.dot(&alg_b.product(&s_b_inv.column(j).into_owned(), &bb)));
        let w2 = ComplexVector::from_fn(n, |j, _| psi_b.dot(&alg_b.product(&alg_b.basis(j), &bb)));
        first.set_column(col, &(&p_inv_t * w1));
        second.set_column(col, &(&p_inv_t * w2));
    }
    let (c1, r1) = proportionality(&first, &maps.f1_inv);
    let (c2, r2) = proportionality(&second, &maps.f2_inv);
    InverseConstants { first: c1, first_spread: r1, second: c2, second_spread: r2 }
}

/// `φ_B(F(a)*F(a))` and `φ_A(a*a)`.
pub fn plancherel_sides(pair: &DualPair, maps: &FourierMaps, a: &ComplexVector) -> Result<(Complex64, Complex64)> {
    let alg_a = pair.a.algebra();
    let alg_b = pair.b.algebra();
    let a_star = alg_a.star(a).ok_or(Error::MissingStar)?;
    let lhs_a = pair.a_integrals.phi.dot(&alg_a.product(&a_star, a));
    let b = maps.apply(a);
    let b_star = alg_b.star(&b).ok_or(Error::MissingStar)?;
    let rhs_b = pair.b_integrals.phi.dot(&alg_b.product(&b_star, &b));
    Ok((rhs_b, lhs_a))
}

/// Relative Plancherel defect for one vector.
pub fn plancherel_residual(pair: &DualPair, maps: &FourierMaps, a: &ComplexVector) -> Result<f64> {
    let (b_side, a_side) = plancherel_sides(pair, maps, a)?;
    Ok((b_side - a_side).norm() / a_side.norm().max(f64::MIN_POSITIVE))
}

#[derive(Debug, Clone)]
pub struct FourierReport {
    pub f1_inverse: f64,
    pub w_form: f64,
    pub w_inverse_form: f64,
    pub f2_scalar: Complex64,
    pub f2_scalar_residual: f64,
    pub constants: InverseConstants,
    pub pi_a_rep: f64,
    pub lambda_a_rep: f64,
    pub pi_b_rep: f64,
    pub lambda_b_rep: f64,
    /// `F π(a) = λ(a) F`
    pub intertwine_pi: f64,
    /// `F λ(b) = π(b) F`
    pub intertwine_lambda: f64,
    /// `F^H K_B F = K_A` relative, when there is a star
    pub plancherel: Option<f64>,
    tol: Tolerance,
}

/// Everything the Fourier stage produces.
#[derive(Debug, Clone)]
pub struct Fourier {
    pub maps: FourierMaps,
    pub actions: ActionOperators,
}

impl Fourier {
    pub fn new(pair: &DualPair) -> Result<Self> {
        Ok(Self { maps: FourierMaps::new(pair)?, actions: ActionOperators::new(pair) })
    }

    pub fn verify(&self, pair: &DualPair) -> FourierReport {
        let n = pair.a.dim();
        let maps = &self.maps;
        let act = &self.actions;
        let alg_a = pair.a.algebra();
        let alg_b = pair.b.algebra();
        let tol = *pair.a.tolerance();

        // F(a) = (φ⊗ι)(W(a⊗1)) and F⁻¹(b) = (ι⊗φ)(W⁻¹(1⊗b)) in A⊗B
        let ab = tensor_algebra(alg_a, alg_b);
        let w = canonical_element(pair);
        let w_inv = kron(pair.a.antipode(), &identity(n)) * &w;
        let phi_a = crate::hopf::row(&pair.a_integrals.phi);
        let phi_b = crate::hopf::row(&pair.b_integrals.phi);
        let first_leg = kron(&phi_a, &identity(n));
        let second_leg = kron(&identity(n), &phi_b);
        let mut w_form = ComplexMatrix::zeros(n, n);
        let mut w_inv_form = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            let x = kron_vec(&alg_a.basis(i), alg_b.unit().unwrap());
            w_form.set_column(i, &(&first_leg * ab.product(&w, &x)));
            let y = kron_vec(alg_a.unit().unwrap(), &alg_b.basis(i));
            w_inv_form.set_column(i, &(&second_leg * ab.product(&w_inv, &y)));
        }

        let mut intertwine_pi: f64 = 0.0;
        let mut intertwine_lambda: f64 = 0.0;
        for i in 0..n {
            intertwine_pi = intertwine_pi.max(dist(&(&maps.f1 * &act.pi_a[i]), &(&act.lambda_b[i] * &maps.f1)));
            intertwine_lambda =
                intertwine_lambda.max(dist(&(&maps.f1 * &act.lambda_a[i]), &(&act.pi_b[i] * &maps.f1)));
        }

        let plancherel = match (&pair.a_integrals.positivity, &pair.b_integrals.positivity) {
            (Some(pa), Some(pb)) => {
                let lhs = maps.f1.adjoint() * &pb.phi_gram * &maps.f1;
                Some(dist(&lhs, &pa.phi_gram) / pa.phi_gram.norm())
            }
            _ => None,
        };

        FourierReport {
            f1_inverse: dist(&(&maps.f1_inv * &maps.f1), &identity(n)),
            w_form: dist(&w_form, &maps.f1),
            w_inverse_form: dist(&w_inv_form, &maps.f1_inv),
            f2_scalar: maps.f2_scalar,
            f2_scalar_residual: maps.f2_scalar_residual,
            constants: inverse_constants(pair, maps),
            pi_a_rep: ActionOperators::representation_residual(alg_a, &act.pi_a),
            lambda_a_rep: ActionOperators::representation_residual(alg_b, &act.lambda_a),
            pi_b_rep: ActionOperators::representation_residual(alg_b, &act.pi_b),
            lambda_b_rep: ActionOperators::representation_residual(alg_a, &act.lambda_b),
            intertwine_pi,
            intertwine_lambda,
            plancherel,
            tol,
        }
    }
}

impl FourierReport {
    pub fn to_result(&self) -> Result<()> {
        let t = self.tol.abs_tol;
        for (what, r) in [
            ("π on A", self.pi_a_rep),
            ("λ of B on A", self.lambda_a_rep),
            ("π on B", self.pi_b_rep),
            ("λ of A on B", self.lambda_b_rep),
        ] {
            if !(r <= t) {
                return Err(Error::NotRepresentation { what: what.into(), residual: r });
            }
        }
        if !(self.intertwine_pi <= t) {
            return Err(Error::IntertwiningFailed { relation: "F(π(a)x) = λ(a)F(x)".into(), residual: self.intertwine_pi });
        }
        if !(self.intertwine_lambda <= t) {
            return Err(Error::IntertwiningFailed {
                relation: "F(λ(b)x) = π(b)F(x)".into(),
                residual: self.intertwine_lambda,
            });
        }
        let spread = self.constants.first_spread.max(self.constants.second_spread);
        if !(spread <= t) {
            return Err(Error::NormalizationInconsistent { spread });
        }
        if let Some(r) = self.plancherel {
            if !(r <= self.tol.rel_tol) {
                return Err(Error::PlancherelFailed { residual: r });
            }
        }
        Ok(())
    }

    pub fn checks(&self) -> Vec<Check> {
        let t = self.tol.abs_tol;
        let c = &self.constants;
        let mut out = vec![
            Check::measured("fourier.inverse", "F⁻¹F = ι", self.f1_inverse, t),
            Check::measured("fourier.w_form", "F(a) = (φ⊗ι)(W(a⊗1))", self.w_form, t),
            Check::measured("fourier.w_inverse_form", "F⁻¹(b) = (ι⊗φ)(W⁻¹(1⊗b))", self.w_inverse_form, t),
            Check::measured("fourier.f2_scalar", "F2 is a scalar multiple of F1∘σ∘S⁻¹", self.f2_scalar_residual, t)
                .with_note(format!("scalar {}", fmt_complex(self.f2_scalar))),
            Check::measured("fourier.inverse_formula_1", "b = φ(·a) ⇔ a = φ(S⁻¹(·)b)", c.first_spread, t)
                .with_note(format!("constant {}", fmt_complex(c.first))),
            Check::measured("fourier.inverse_formula_2", "b = ψ(S(·)a) ⇔ a = ψ(·b)", c.second_spread, t)
                .with_note(format!("constant {}", fmt_complex(c.second))),
            Check::measured("fourier.pi_a", "π is a representation of A on A", self.pi_a_rep, t),
            Check::measured(
                "fourier.lambda_a",
                "λ(b)x = ⟨S⁻¹(x₍₁₎), b⟩x₍₂₎ is a representation of B",
                self.lambda_a_rep,
                t,
            ),
            Check::measured("fourier.pi_b", "π is a representation of B on B", self.pi_b_rep, t),
            Check::measured(
                "fourier.lambda_b",
                "λ(a)y = ⟨a, y₍₁₎⟩y₍₂₎ is a representation of A",
                self.lambda_b_rep,
                t,
            ),
            Check::measured("fourier.intertwine_pi", "F(π(a)x) = λ(a)F(x)", self.intertwine_pi, t),
            Check::measured("fourier.intertwine_lambda", "F(λ(b)x) = π(b)F(x)", self.intertwine_lambda, t),
        ];
        match self.plancherel {
            Some(r) => out.push(Check::measured("fourier.plancherel", "φ(b*b) = φ(a*a) for b = F(a)", r, self.tol.rel_tol)),
            None => out.push(Check::skipped("fourier.plancherel", "φ(b*b) = φ(a*a) for b = F(a)", "no star")),
        }
        out
    }
}
