//! The dual Hopf algebra `B` spanned by the functionals `φ(·a)`, the
//! pairing with `A`, and the round trip back to `A`.

use crate::algebra::FiniteDimAlgebra;
use crate::check::Check;
use crate::error::{Error, Result};
use crate::hopf::{verify_hopf, HopfData};
use crate::integrals::{bilinear_form, invariance_residual, IntegralData, Side};
use crate::numerics::{
    conj, dist, dist_vec, flip, inverse, kron, kron_vec, ComplexMatrix, ComplexVector, Tolerance,
};

/// Orientation of the coproduct on the dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DualConvention {
    /// `⟨aa′, b⟩ = ⟨a′⊗a, Δ_B(b)⟩`
    #[default]
    Modified,
    /// `⟨aa′, b⟩ = ⟨a⊗a′, Δ_B(b)⟩`
    Plain,
}

/// A Hopf algebra `A`, its dual `B` in the basis `f_j = φ(·e_j)`, and the
/// pairing matrix `P[i,j] = ⟨e_i, f_j⟩ = φ(e_i e_j)`.
#[derive(Debug, Clone)]
pub struct DualPair {
    pub a: HopfData,
    pub a_integrals: IntegralData,
    pub b: HopfData,
    pub b_integrals: IntegralData,
    pub pairing: ComplexMatrix,
    pub pairing_inv: ComplexMatrix,
    pub convention: DualConvention,
    /// integrals of `B` found by solving its invariance systems, rescaled
    /// to the closed-form ones; the residual of that match
    pub solved_integral_residual: (f64, f64),
}

/// Structure of the dual as plain data, before validation.
pub struct DualStructure {
    pub algebra: FiniteDimAlgebra,
    pub coproduct: ComplexMatrix,
    pub pairing: ComplexMatrix,
    pub pairing_inv: ComplexMatrix,
}

/// Dual structure tensors computed through the pairing.
pub fn dual_structure(
    a: &HopfData,
    phi: &ComplexVector,
    convention: DualConvention,
) -> Result<DualStructure> {
    let tol = a.tolerance();
    let n = a.dim();
    let alg = a.algebra();
    let p = bilinear_form(a, phi);
    let p_inv = inverse(&p, "pairing", tol)?;
    let d = a.coproduct();

    // product: (f_j f_l)(e_i) = Σ_{pq} c[i,p,q] P[p,j] P[q,l]
    let pp = kron(&p, &p);
    let values = d.transpose() * &pp; // [i, j·n + l]
    let coords = &p_inv * values;
    let mut left = vec![ComplexMatrix::zeros(n, n); n];
    for j in 0..n {
        for l in 0..n {
            left[j].set_column(l, &coords.column(j * n + l));
        }
    }
    let labels = alg.labels().iter().map(|s| format!("φ(·{s})")).collect();
    let mut algebra = FiniteDimAlgebra::from_left_matrices(labels, left)?;

    // coproduct: P·C_j·Pᵀ = Y_j with Y_j[l, i] = ⟨e_i e_l, f_j⟩
    let p_inv_t = p_inv.transpose();
    let mut coproduct = ComplexMatrix::zeros(n * n, n);
    for j in 0..n {
        let pairing_col = p.column(j);
        let y = ComplexMatrix::from_fn(n, n, |l, i| alg.left_basis(i).column(l).dot(&pairing_col));
        let cj = &p_inv * y * &p_inv_t;
        for l in 0..n {
            for i in 0..n {
                coproduct[(l * n + i, j)] = cj[(l, i)];
            }
        }
    }
    if convention == DualConvention::Plain {
        coproduct = flip(n, n) * coproduct;
    }

    // unit: ε
    algebra = algebra.with_unit(&p_inv * a.counit())?;
    // involution: f_j*(e_i) = conj(f_j(S(e_i)*))
    if let Some(star) = alg.star_matrix() {
        let s = a.antipode();
        let s_star = star * conj(s); // column i = (S e_i)*
        let z = conj(&(s_star.transpose() * &p));
        algebra = algebra.with_star(&p_inv * z)?;
    }
    Ok(DualStructure { algebra, coproduct, pairing: p, pairing_inv: p_inv })
}

/// Closed-form integrals of `B`: `ε(a)` on `φ(·a)` and `ε(a)` on `ψ(a·)`.
/// With the opposite coproduct the first is left invariant and the second
/// right invariant; with the plain convention they swap.
pub fn closed_form_dual_integrals(
    a: &HopfData,
    a_int: &IntegralData,
    pairing_inv: &ComplexMatrix,
) -> (ComplexVector, ComplexVector) {
    let eps = a.counit();
    // φ(·e_j) = f_j has value ε(e_j)
    let from_phi = eps.clone();
    // ψ(e_k ·) has coordinates P⁻¹·[ψ(e_k e_i)]_i
    let psi_form = bilinear_form(a, &a_int.psi);
    let y = pairing_inv * psi_form.transpose();
    let from_psi = match y.clone().transpose().try_inverse() {
        Some(yt_inv) => yt_inv * eps,
        None => ComplexVector::zeros(eps.len()),
    };
    (from_phi, from_psi)
}

impl DualPair {
    pub fn build(a: HopfData, a_integrals: IntegralData) -> Result<Self> {
        Self::build_with(a, a_integrals, DualConvention::Modified)
    }

    pub fn build_with(a: HopfData, a_integrals: IntegralData, convention: DualConvention) -> Result<Self> {
        let tol = *a.tolerance();
        let structure = dual_structure(&a, &a_integrals.phi, convention)?;
        let b = HopfData::new(structure.algebra, structure.coproduct, &tol)?;
        let (from_phi, from_psi) = closed_form_dual_integrals(&a, &a_integrals, &structure.pairing_inv);
        let (left, right) = match convention {
            DualConvention::Modified => (from_phi, from_psi),
            DualConvention::Plain => (from_psi, from_phi),
        };
        for (side, f, what) in [(Side::Left, &left, "dual left integral"), (Side::Right, &right, "dual right integral")] {
            let r = invariance_residual(&b, side, f);
            if !(r <= tol.abs_tol) {
                return Err(Error::InvarianceFailed { what: what.into(), residual: r });
            }
        }
        let solved = IntegralData::solve(&b)?;
        let rescale = |solved: &ComplexVector, closed: &ComplexVector| {
            let k = crate::integrals::anchor_index(closed);
            dist_vec(&(solved * (closed[k] / solved[k])), closed)
        };
        let solved_integral_residual = (rescale(&solved.phi, &left), rescale(&solved.psi, &right));
        let b_integrals = IntegralData::from_functionals(&b, left, right)?;
        Ok(Self {
            a,
            a_integrals,
            b,
            b_integrals,
            pairing: structure.pairing,
            pairing_inv: structure.pairing_inv,
            convention,
            solved_integral_residual,
        })
    }

    /// `⟨a, b⟩` for coordinate vectors.
    pub fn pair(&self, a: &ComplexVector, b: &ComplexVector) -> num_complex::Complex64 {
        (a.transpose() * &self.pairing * b)[(0, 0)]
    }

    /// The functional `⟨·, b⟩` on `A` as its vector of basis values.
    pub fn functional_of(&self, b: &ComplexVector) -> ComplexVector {
        &self.pairing * b
    }

    /// Coordinates in `B` of a functional on `A` given by its basis values.
    pub fn element_of(&self, values: &ComplexVector) -> ComplexVector {
        &self.pairing_inv * values
    }

    pub fn verify(&self) -> DualityReport {
        let a = &self.a;
        let b = &self.b;
        let n = a.dim();
        let p = &self.pairing;
        let alg_a = a.algebra();
        let alg_b = b.algebra();

        // ⟨a, bb′⟩ = ⟨Δ(a), b⊗b′⟩
        let mut product_dual: f64 = 0.0;
        for j in 0..n {
            for l in 0..n {
                let bb = alg_b.left_basis(j).column(l).into_owned();
                let lhs = p * bb;
                let rhs = a.coproduct().transpose() * kron_vec(&p.column(j).into_owned(), &p.column(l).into_owned());
                product_dual = product_dual.max(dist_vec(&lhs, &rhs));
            }
        }
        // ⟨aa′, b⟩ = ⟨a′⊗a, Δ_B(b)⟩ (or ⟨a⊗a′, Δ_B(b)⟩)
        let pp = kron(p, p);
        let mut coproduct_dual: f64 = 0.0;
        for i in 0..n {
            for k in 0..n {
                let aa = alg_a.left_basis(i).column(k).into_owned();
                let lhs = aa.transpose() * p;
                let pair_vec = match self.convention {
                    DualConvention::Modified => kron_vec(&alg_a.basis(k), &alg_a.basis(i)),
                    DualConvention::Plain => kron_vec(&alg_a.basis(i), &alg_a.basis(k)),
                };
                let rhs = pair_vec.transpose() * &pp * b.coproduct();
                coproduct_dual = coproduct_dual.max((lhs - rhs).norm());
            }
        }
        // ⟨S(a), b⟩ = ⟨a, S_B⁻¹(b)⟩ (modified) or ⟨a, S_B(b)⟩ (plain)
        let s_b = match self.convention {
            DualConvention::Modified => b.antipode_inv(),
            DualConvention::Plain => b.antipode(),
        };
        let antipode = dist(&(a.antipode().transpose() * p), &(p * s_b));
        // ⟨a, b*⟩ = conj(⟨S(a)*, b⟩)
        let involution = match (alg_a.star_matrix(), alg_b.star_matrix()) {
            (Some(sa), Some(sb)) => {
                // [i, j] = ⟨e_i, f_j*⟩ and ⟨S(e_i)*, f_j⟩
                let lhs = p * sb;
                let s_star = sa * conj(a.antipode());
                let rhs = s_star.transpose() * p;
                Some(dist(&lhs, &conj(&rhs)))
            }
            _ => None,
        };
        let unit = dist_vec(&(p * alg_b.unit().expect("dual unit")), a.counit());
        let positivity = self.b_integrals.positivity.as_ref().map(|pos| {
            let a_pos = self.a_integrals.positivity.as_ref();
            (pos.phi_positive && pos.psi_positive, a_pos.is_some_and(|x| x.phi_positive))
        });
        // ψ̂(ω*ω) = φ(a*a) for ω = φ(·a); with ω = a in f-coordinates
        let plancherel = alg_b.star_matrix().map(|_| {
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let x = alg_a.basis(i) + alg_a.basis(j) * crate::numerics::c(0.3, 0.7);
                    let xa = alg_a.product(&alg_a.star(&x).unwrap(), &x);
                    let lhs = self.a_integrals.phi.dot(&xa);
                    let xb = alg_b.product(&alg_b.star(&x).unwrap(), &x);
                    let rhs = self.b_integrals.phi.dot(&xb);
                    worst = worst.max((lhs - rhs).norm() / lhs.norm().max(1.0));
                }
            }
            worst
        });
        DualityReport {
            product_dual,
            coproduct_dual,
            antipode,
            involution,
            unit,
            pairing_condition: crate::numerics::condition_number(p),
            solved_integrals: self.solved_integral_residual,
            positivity,
            plancherel,
            tol: self.a.tolerance().abs_tol,
        }
    }

    /// Dual of `(B, Δ̂)` with the plain convention and the linear map
    /// `A → C` sending `a` to evaluation at `a`.
    pub fn bidual(&self) -> Result<Bidual> {
        let b_plain = match self.convention {
            DualConvention::Modified => self.b.coopposite()?,
            DualConvention::Plain => self.b.clone(),
        };
        let b_plain_int = IntegralData::solve(&b_plain)?;
        let c = DualPair::build_with(b_plain, b_plain_int, DualConvention::Plain)?;
        // evaluation at e_i has values P[i, :] on the basis f_j
        let x = &c.pairing_inv * self.pairing.transpose();
        Ok(Bidual { pair: c, map: x })
    }
}

#[derive(Debug, Clone)]
pub struct Bidual {
    pub pair: DualPair,
    /// coordinates in the bidual of the evaluation functionals
    pub map: ComplexMatrix,
}

impl Bidual {
    /// Residuals of the evaluation map as an isomorphism of Hopf
    /// (*-)algebras from `A` to the bidual.
    pub fn residuals(&self, a: &HopfData) -> BidualResiduals {
        let c = &self.pair.b;
        let x = &self.map;
        let alg_a = a.algebra();
        let alg_c = c.algebra();
        let n = a.dim();
        let mut multiplication: f64 = 0.0;
        for i in 0..n {
            let xi = x.column(i).into_owned();
            multiplication = multiplication.max(dist(&(x * alg_a.left_basis(i)), &(alg_c.left_mult(&xi) * x)));
        }
        let coproduct = dist(&(kron(x, x) * a.coproduct()), &(c.coproduct() * x));
        let star = match (alg_a.star_matrix(), alg_c.star_matrix()) {
            (Some(sa), Some(sc)) => Some(dist(&(x * sa), &(sc * conj(x)))),
            _ => None,
        };
        let unit = dist_vec(&(x * a.unit()), c.unit());
        let invertible = crate::numerics::is_bijective(x, a.tolerance());
        BidualResiduals { multiplication, coproduct, star, unit, invertible }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BidualResiduals {
    pub multiplication: f64,
    pub coproduct: f64,
    pub star: Option<f64>,
    pub unit: f64,
    pub invertible: bool,
}

impl BidualResiduals {
    pub fn worst(&self) -> f64 {
        self.multiplication.max(self.coproduct).max(self.star.unwrap_or(0.0)).max(self.unit)
    }

    pub fn to_result(&self, tol: &Tolerance) -> Result<()> {
        for (what, r) in [
            ("multiplication", self.multiplication),
            ("coproduct", self.coproduct),
            ("involution", self.star.unwrap_or(0.0)),
            ("unit", self.unit),
        ] {
            if !(r <= tol.abs_tol) {
                return Err(Error::BidualMismatch { what: what.into(), residual: r });
            }
        }
        if !self.invertible {
            return Err(Error::BidualMismatch { what: "evaluation map is not invertible".into(), residual: f64::NAN });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualityReport {
    pub product_dual: f64,
    pub coproduct_dual: f64,
    pub antipode: f64,
    pub involution: Option<f64>,
    pub unit: f64,
    pub pairing_condition: f64,
    pub solved_integrals: (f64, f64),
    /// (dual integrals positive, A's left integral positive)
    pub positivity: Option<(bool, bool)>,
    pub plancherel: Option<f64>,
    tol: f64,
}

impl DualityReport {
    pub fn checks(&self) -> Vec<Check> {
        let t = self.tol;
        let mut out = vec![
            Check::measured("dual.product", "⟨a, bb′⟩ = ⟨Δ(a), b⊗b′⟩", self.product_dual, t),
            Check::measured("dual.coproduct", "⟨aa′, b⟩ = ⟨a′⊗a, Δ_B(b)⟩", self.coproduct_dual, t),
            Check::measured("dual.antipode", "⟨S(a), b⟩ = ⟨a, S⁻¹(b)⟩", self.antipode, t),
            Check::measured("dual.unit", "⟨a, 1_B⟩ = ε(a)", self.unit, t),
            Check::verdict(
                "dual.pairing_nondegenerate",
                "the pairing is non-degenerate",
                self.pairing_condition.is_finite(),
                format!("condition number {:.3e}", self.pairing_condition),
            ),
            Check::measured(
                "dual.left_integral",
                "ε(a) on φ(·a) is the left integral of B",
                self.solved_integrals.0,
                t,
            ),
            Check::measured(
                "dual.right_integral",
                "ε(a) on ψ(a·) is the right integral of B",
                self.solved_integrals.1,
                t,
            ),
        ];
        match self.involution {
            Some(r) => out.push(Check::measured("dual.involution", "⟨a, b*⟩ = conj(⟨S(a)*, b⟩)", r, t)),
            None => out.push(Check::skipped("dual.involution", "⟨a, b*⟩ = conj(⟨S(a)*, b⟩)", "no star")),
        }
        match (self.positivity, self.plancherel) {
            (Some((pos, _)), Some(r)) => {
                out.push(Check::verdict("dual.positive", "the dual integrals are positive", pos, "Gram matrices PSD"));
                out.push(Check::measured("dual.plancherel", "ψ̂(ω*ω) = φ(a*a) for ω = φ(·a)", r, t));
            }
            _ => out.push(Check::skipped("dual.positive", "the dual integrals are positive", "no star")),
        }
        out
    }
}

/// Builds the dual pair and runs every duality check, including the
/// bidual round trip; construction errors become failed checks.
pub fn verify_duality(a: &HopfData, a_int: &IntegralData) -> (Vec<Check>, Option<DualPair>) {
    let tol = *a.tolerance();
    let pair = match DualPair::build(a.clone(), a_int.clone()) {
        Ok(p) => p,
        Err(e) => {
            let mut checks = vec![Check::failed("dual.build", "B = {φ(·a)} is a Hopf algebra with integrals", &e)];
            if let Ok(s) = dual_structure(a, &a_int.phi, DualConvention::Modified) {
                checks.extend(verify_hopf(&s.algebra, &s.coproduct, &tol).checks.into_iter().map(|mut c| {
                    c.id = format!("dual.{}", c.id);
                    c
                }));
            }
            return (checks, None);
        }
    };
    let mut checks = pair.verify().checks();
    match pair.bidual() {
        Ok(bd) => {
            let r = bd.residuals(a);
            let worst = r.worst();
            let ok = r.invertible;
            checks.push(
                Check::measured(
                    "dual.biduality",
                    "the dual of the dual is canonically isomorphic to A",
                    if ok { worst } else { f64::NAN },
                    tol.abs_tol,
                )
                .with_note(format!(
                    "multiplication {:.3e}, coproduct {:.3e}, unit {:.3e}",
                    r.multiplication, r.coproduct, r.unit
                )),
            );
        }
        Err(e) => checks.push(Check::failed("dual.biduality", "the dual of the dual is canonically isomorphic to A", &e)),
    }
    (checks, Some(pair))
}
