//! Coproducts, the maps `T1`, `T2`, and the counit and antipode derived
//! from their inverses.

use crate::algebra::{tensor_left_mult, FiniteDimAlgebra};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::numerics::{
    conj, dist, identity, inverse, kron, kron_vec, least_squares, rank, singular_values, ComplexMatrix,
    ComplexVector, Tolerance,
};

/// A functional as a `1 × n` matrix.
pub fn row(v: &ComplexVector) -> ComplexMatrix {
    ComplexMatrix::from_iterator(1, v.len(), v.iter().copied())
}

/// `T1` and `T2` as `n² × n²` matrices with their conditioning.
#[derive(Debug, Clone)]
pub struct TMaps {
    pub t1: ComplexMatrix,
    pub t2: ComplexMatrix,
    pub condition_t1: f64,
    pub condition_t2: f64,
}

fn rank_and_condition(m: &ComplexMatrix, tol: &Tolerance) -> (usize, f64, bool) {
    let s = singular_values(m);
    let hi = s.first().copied().unwrap_or(0.0);
    let lo = s.last().copied().unwrap_or(0.0);
    let bijective = hi > 0.0 && lo > tol.membership_tol * hi;
    let cond = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    (rank(m), cond, bijective)
}

/// `T1(a⊗a′) = Δ(a)(1⊗a′)` and `T2(a⊗a′) = (a⊗1)Δ(a′)`.
pub fn t_matrices(a: &FiniteDimAlgebra, coproduct: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.dim();
    let id = identity(n);
    let mut t1 = ComplexMatrix::zeros(n * n, n * n);
    let mut t2 = ComplexMatrix::zeros(n * n, n * n);
    let right: Vec<ComplexMatrix> = (0..n).map(|l| a.right_mult(&a.basis(l))).collect();
    for i in 0..n {
        let di = coproduct.column(i).into_owned();
        for l in 0..n {
            t1.set_column(i * n + l, &(kron(&id, &right[l]) * &di));
            let dl = coproduct.column(l).into_owned();
            t2.set_column(i * n + l, &(kron(a.left_basis(i), &id) * &dl));
        }
    }
    (t1, t2)
}

pub fn build_t_maps(a: &FiniteDimAlgebra, coproduct: &ComplexMatrix, tol: &Tolerance) -> Result<TMaps> {
    check_shape(a, coproduct)?;
    let (t1, t2) = t_matrices(a, coproduct);
    let dim = t1.nrows();
    let (r1, c1, b1) = rank_and_condition(&t1, tol);
    if !b1 {
        return Err(Error::NotBijectiveT { which: "T1", rank: r1, dim });
    }
    let (r2, c2, b2) = rank_and_condition(&t2, tol);
    if !b2 {
        return Err(Error::NotBijectiveT { which: "T2", rank: r2, dim });
    }
    Ok(TMaps { t1, t2, condition_t1: c1, condition_t2: c2 })
}

fn check_shape(a: &FiniteDimAlgebra, coproduct: &ComplexMatrix) -> Result<()> {
    let n = a.dim();
    if coproduct.nrows() != n * n || coproduct.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n * n, found: coproduct.nrows() });
    }
    Ok(())
}

/// Solve `(ε⊗ι)Δ = ι` and `(ι⊗ε)Δ = ι` for `ε`; returns the functional and
/// the dimension of the solution space of the homogeneous system.
fn solve_counit(a: &FiniteDimAlgebra, coproduct: &ComplexMatrix) -> (ComplexVector, f64, usize) {
    let n = a.dim();
    let mut sys = ComplexMatrix::zeros(2 * n * n, n);
    let mut rhs = ComplexMatrix::zeros(2 * n * n, 1);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = coproduct[(j * n + k, i)];
                // left law: Σ_j c[i,j,k] ε_j = [i = k]
                sys[(i * n + k, j)] += v;
                // right law: Σ_k c[i,j,k] ε_k = [i = j]
                sys[(n * n + i * n + j, k)] += v;
            }
        }
        for k in 0..n {
            if i == k {
                rhs[(i * n + k, 0)] = crate::numerics::ONE;
                rhs[(n * n + i * n + k, 0)] = crate::numerics::ONE;
            }
        }
    }
    let sol = least_squares(&sys, &rhs);
    let kernel = n - rank(&sys);
    (sol.x.column(0).into_owned(), sol.residual, kernel)
}

pub fn derive_counit(a: &FiniteDimAlgebra, coproduct: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexVector> {
    check_shape(a, coproduct)?;
    let (eps, residual, _) = solve_counit(a, coproduct);
    if !(residual <= tol.abs_tol) {
        return Err(Error::NoCounit { residual });
    }
    let res = counit_multiplicativity(a, &eps);
    if !(res <= tol.abs_tol) {
        return Err(Error::NotHomomorphism { what: "counit".into(), residual: res });
    }
    Ok(eps)
}

fn counit_multiplicativity(a: &FiniteDimAlgebra, eps: &ComplexVector) -> f64 {
    let n = a.dim();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let ab = a.left_basis(i).column(j).into_owned();
            let lhs = eps.dot(&ab);
            worst = worst.max((lhs - eps[i] * eps[j]).norm());
        }
    }
    if let Some(u) = a.unit() {
        worst = worst.max((eps.dot(u) - crate::numerics::ONE).norm());
    }
    worst
}

/// `S(a) = (ε⊗ι)(T1⁻¹(a⊗1))`.
pub fn derive_antipode(
    a: &FiniteDimAlgebra,
    eps: &ComplexVector,
    t1_inv: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    let n = a.dim();
    let unit = a.unit_or_err()?;
    let contract = kron(&row(eps), &identity(n));
    let mut s = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let v = kron_vec(&a.basis(i), unit);
        s.set_column(i, &(&contract * (t1_inv * v)));
    }
    Ok(s)
}

/// A validated Hopf algebra: algebra, coproduct, derived counit and antipode.
#[derive(Debug, Clone)]
pub struct HopfData {
    algebra: FiniteDimAlgebra,
    coproduct: ComplexMatrix,
    counit: ComplexVector,
    antipode: ComplexMatrix,
    antipode_inv: ComplexMatrix,
    t: TMaps,
    t1_inv: ComplexMatrix,
    t2_inv: ComplexMatrix,
    tol: Tolerance,
}

impl HopfData {
    /// Builds the counit and antipode and rejects the input if any law fails.
    pub fn new(algebra: FiniteDimAlgebra, coproduct: ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        algebra.validate(tol)?;
        let h = Self::construct(algebra, coproduct, tol)?;
        let laws = h.laws();
        laws.to_result()?;
        Ok(h)
    }

    /// Construction without verifying the laws beyond what the construction
    /// itself requires.
    pub fn construct(algebra: FiniteDimAlgebra, coproduct: ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        let t = build_t_maps(&algebra, &coproduct, tol)?;
        let t1_inv = inverse(&t.t1, "T1", tol)?;
        let t2_inv = inverse(&t.t2, "T2", tol)?;
        let counit = derive_counit(&algebra, &coproduct, tol)?;
        let antipode = derive_antipode(&algebra, &counit, &t1_inv)?;
        let antipode_inv = inverse(&antipode, "antipode", tol)?;
        Ok(Self { algebra, coproduct, counit, antipode, antipode_inv, t, t1_inv, t2_inv, tol: *tol })
    }

    pub fn algebra(&self) -> &FiniteDimAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `n² × n`; column `i` holds `Δ(e_i)` in the basis `e_j⊗e_k` at `j·n + k`.
    pub fn coproduct(&self) -> &ComplexMatrix {
        &self.coproduct
    }

    pub fn counit(&self) -> &ComplexVector {
        &self.counit
    }

    pub fn antipode(&self) -> &ComplexMatrix {
        &self.antipode
    }

    pub fn antipode_inv(&self) -> &ComplexMatrix {
        &self.antipode_inv
    }

    pub fn t_maps(&self) -> &TMaps {
        &self.t
    }

    pub fn t1_inv(&self) -> &ComplexMatrix {
        &self.t1_inv
    }

    pub fn t2_inv(&self) -> &ComplexMatrix {
        &self.t2_inv
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    pub fn unit(&self) -> &ComplexVector {
        self.algebra.unit().expect("HopfData requires a unit")
    }

    pub fn delta(&self, a: &ComplexVector) -> ComplexVector {
        &self.coproduct * a
    }

    /// Product in `A⊗A`.
    pub fn tensor_product(&self, x: &ComplexVector, y: &ComplexVector) -> ComplexVector {
        tensor_left_mult(&[&self.algebra, &self.algebra], x) * y
    }

    /// Closed forms `T1⁻¹(a⊗a′) = ((ι⊗S)Δ(a))(1⊗a′)` and
    /// `T2⁻¹(a⊗a′) = (a⊗1)((S⊗ι)Δ(a′))`.
    pub fn closed_t_inverses(&self) -> (ComplexMatrix, ComplexMatrix) {
        let n = self.dim();
        let a = &self.algebra;
        let id = identity(n);
        let is = kron(&id, &self.antipode);
        let si = kron(&self.antipode, &id);
        let mut t1 = ComplexMatrix::zeros(n * n, n * n);
        let mut t2 = ComplexMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for l in 0..n {
                let r = a.right_mult(&a.basis(l));
                t1.set_column(i * n + l, &(kron(&id, &r) * &is * self.coproduct.column(i)));
                t2.set_column(i * n + l, &(kron(a.left_basis(i), &id) * &si * self.coproduct.column(l)));
            }
        }
        (t1, t2)
    }

    pub fn laws(&self) -> HopfLaws {
        HopfLaws::measure(&self.algebra, &self.coproduct, Some(self), &self.tol)
    }

    /// Replace the coproduct by its flip `τ∘Δ`.
    pub fn coopposite(&self) -> Result<Self> {
        let n = self.dim();
        let flipped = crate::numerics::flip(n, n) * &self.coproduct;
        Self::construct(self.algebra.clone(), flipped, &self.tol)
    }
}

/// Residuals for every Hopf law; the construction-dependent ones are absent
/// when the counit or antipode could not be built.
#[derive(Debug, Clone)]
pub struct HopfLaws {
    pub homomorphism: f64,
    pub star_homomorphism: Option<f64>,
    pub coassociativity: f64,
    pub unital: Option<f64>,
    pub t1_rank: (usize, usize),
    pub t2_rank: (usize, usize),
    pub t1_condition: f64,
    pub t2_condition: f64,
    pub derived: Option<DerivedLaws>,
    tol: f64,
    membership_ok: (bool, bool),
}

#[derive(Debug, Clone)]
pub struct DerivedLaws {
    pub counit_left: f64,
    pub counit_right: f64,
    pub counit_kernel: usize,
    pub counit_multiplicative: f64,
    pub antipode_left: f64,
    pub antipode_right: f64,
    pub antipode_antimultiplicative: f64,
    pub counit_after_antipode: f64,
    pub star_antipode: Option<f64>,
    pub t1_inverse_formula: f64,
    pub t2_inverse_formula: f64,
}

impl HopfLaws {
    pub fn measure(
        a: &FiniteDimAlgebra,
        coproduct: &ComplexMatrix,
        built: Option<&HopfData>,
        tol: &Tolerance,
    ) -> Self {
        let n = a.dim();
        let aa = [a, a];
        let id = identity(n);
        let mut hom: f64 = 0.0;
        for i in 0..n {
            let di = coproduct.column(i).into_owned();
            let li = tensor_left_mult(&aa, &di);
            for j in 0..n {
                let ab = a.left_basis(i).column(j).into_owned();
                let lhs = coproduct * ab;
                let rhs = &li * coproduct.column(j);
                hom = hom.max((lhs - rhs).norm());
            }
        }
        let star_homomorphism = a.star_matrix().map(|s| {
            let ss = kron(s, s);
            // Δ(a*) = Δ(a)* in matrix form: D·S = (S⊗S)·conj(D)
            dist(&(coproduct * s), &(ss * conj(coproduct)))
        });
        let coassociativity = dist(&(kron(coproduct, &id) * coproduct), &(kron(&id, coproduct) * coproduct));
        let unital = a.unit().map(|u| crate::numerics::dist_vec(&(coproduct * u), &kron_vec(u, u)));
        let (t1, t2) = t_matrices(a, coproduct);
        let (r1, c1, b1) = rank_and_condition(&t1, tol);
        let (r2, c2, b2) = rank_and_condition(&t2, tol);

        let derived = built.map(|h| {
            let eps = h.counit();
            let (_, _, kernel) = solve_counit(a, coproduct);
            let left_contract = kron(&row(eps), &id);
            let right_contract = kron(&id, &row(eps));
            let counit_left = dist(&(left_contract * coproduct), &id);
            let counit_right = dist(&(right_contract * coproduct), &id);
            let m = a.multiplication_map();
            let s = h.antipode();
            let u = h.unit();
            let target = u * eps.transpose();
            let antipode_left = dist(&(&m * kron(s, &id) * coproduct), &target);
            let antipode_right = dist(&(&m * kron(&id, s) * coproduct), &target);
            let mut anti: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let ab = a.left_basis(i).column(j).into_owned();
                    let lhs = s * ab;
                    let rhs = a.product(&s.column(j).into_owned(), &s.column(i).into_owned());
                    anti = anti.max((lhs - rhs).norm());
                }
            }
            let counit_after_antipode = (s.transpose() * eps - eps).norm();
            let star_antipode = a.star_matrix().map(|st| {
                // S(S(a)*)* = a ⇔ M·S̄·M̄·S = I
                dist(&(st * conj(s) * conj(st) * s), &id)
            });
            let (c1, c2) = h.closed_t_inverses();
            DerivedLaws {
                counit_left,
                counit_right,
                counit_kernel: kernel,
                counit_multiplicative: counit_multiplicativity(a, eps),
                antipode_left,
                antipode_right,
                antipode_antimultiplicative: anti,
                counit_after_antipode,
                star_antipode,
                t1_inverse_formula: dist(&c1, h.t1_inv()),
                t2_inverse_formula: dist(&c2, h.t2_inv()),
            }
        });
        Self {
            homomorphism: hom,
            star_homomorphism,
            coassociativity,
            unital,
            t1_rank: (r1, n * n),
            t2_rank: (r2, n * n),
            t1_condition: c1,
            t2_condition: c2,
            derived,
            tol: tol.abs_tol,
            membership_ok: (b1, b2),
        }
    }

    pub fn to_result(&self) -> Result<()> {
        let tol = self.tol;
        if !(self.homomorphism <= tol) {
            return Err(Error::NotHomomorphism { what: "coproduct".into(), residual: self.homomorphism });
        }
        if let Some(r) = self.star_homomorphism {
            if !(r <= tol) {
                return Err(Error::NotHomomorphism { what: "coproduct (as *-map)".into(), residual: r });
            }
        }
        if !(self.coassociativity <= tol) {
            return Err(Error::NotHomomorphism { what: "coassociativity".into(), residual: self.coassociativity });
        }
        if let Some(r) = self.unital {
            if !(r <= tol) {
                return Err(Error::NotHomomorphism { what: "coproduct (unitality)".into(), residual: r });
            }
        }
        if !self.membership_ok.0 {
            return Err(Error::NotBijectiveT { which: "T1", rank: self.t1_rank.0, dim: self.t1_rank.1 });
        }
        if !self.membership_ok.1 {
            return Err(Error::NotBijectiveT { which: "T2", rank: self.t2_rank.0, dim: self.t2_rank.1 });
        }
        if let Some(d) = &self.derived {
            let c = d.counit_left.max(d.counit_right);
            if !(c <= tol) {
                return Err(Error::NoCounit { residual: c });
            }
            if !(d.counit_multiplicative <= tol) {
                return Err(Error::NotHomomorphism { what: "counit".into(), residual: d.counit_multiplicative });
            }
            let laws = [
                ("m(S⊗ι)Δ(a) = ε(a)1", d.antipode_left),
                ("m(ι⊗S)Δ(a) = ε(a)1", d.antipode_right),
                ("S(ab) = S(b)S(a)", d.antipode_antimultiplicative),
                ("ε∘S = ε", d.counit_after_antipode),
                ("S(S(a)*)* = a", d.star_antipode.unwrap_or(0.0)),
                ("T1⁻¹ closed form", d.t1_inverse_formula),
                ("T2⁻¹ closed form", d.t2_inverse_formula),
            ];
            for (law, residual) in laws {
                if !(residual <= tol) {
                    return Err(Error::AntipodeLawFailed { law, residual });
                }
            }
        }
        Ok(())
    }

    pub fn checks(&self) -> Vec<Check> {
        let tol = self.tol;
        let mut out = vec![
            Check::measured("hopf.coproduct_homomorphism", "Δ(ab) = Δ(a)Δ(b)", self.homomorphism, tol),
        ];
        match self.star_homomorphism {
            Some(r) => out.push(Check::measured("hopf.coproduct_star", "Δ(a*) = Δ(a)*", r, tol)),
            None => out.push(Check::skipped("hopf.coproduct_star", "Δ(a*) = Δ(a)*", "no star")),
        }
        out.push(Check::measured("hopf.coassociativity", "(Δ⊗ι)Δ = (ι⊗Δ)Δ", self.coassociativity, tol));
        if let Some(r) = self.unital {
            out.push(Check::measured("hopf.coproduct_unital", "Δ(1) = 1⊗1", r, tol));
        }
        out.push(Check::verdict(
            "hopf.t1_bijective",
            "T1(a⊗a′) = Δ(a)(1⊗a′) is bijective",
            self.membership_ok.0,
            format!("rank {} of {}, condition {:.3e}", self.t1_rank.0, self.t1_rank.1, self.t1_condition),
        ));
        out.push(Check::verdict(
            "hopf.t2_bijective",
            "T2(a⊗a′) = (a⊗1)Δ(a′) is bijective",
            self.membership_ok.1,
            format!("rank {} of {}, condition {:.3e}", self.t2_rank.0, self.t2_rank.1, self.t2_condition),
        ));
        if let Some(d) = &self.derived {
            out.push(Check::measured("hopf.counit_left", "(ε⊗ι)Δ(a) = a", d.counit_left, tol));
            out.push(Check::measured("hopf.counit_right", "(ι⊗ε)Δ(a) = a", d.counit_right, tol));
            out.push(Check::verdict(
                "hopf.counit_unique",
                "the counit is the unique solution of (ε⊗ι)Δ = ι",
                d.counit_kernel == 0,
                format!("kernel dimension {}", d.counit_kernel),
            ));
            out.push(Check::measured("hopf.counit_homomorphism", "ε(ab) = ε(a)ε(b)", d.counit_multiplicative, tol));
            out.push(Check::measured("hopf.antipode_left", "m(S⊗ι)Δ(a) = ε(a)1", d.antipode_left, tol));
            out.push(Check::measured("hopf.antipode_right", "m(ι⊗S)Δ(a) = ε(a)1", d.antipode_right, tol));
            out.push(Check::measured(
                "hopf.antipode_antihomomorphism",
                "S(ab) = S(b)S(a)",
                d.antipode_antimultiplicative,
                tol,
            ));
            out.push(Check::measured("hopf.counit_antipode", "ε∘S = ε", d.counit_after_antipode, tol));
            match d.star_antipode {
                Some(r) => out.push(Check::measured("hopf.antipode_star", "S(S(a)*)* = a", r, tol)),
                None => out.push(Check::skipped("hopf.antipode_star", "S(S(a)*)* = a", "no star")),
            }
            out.push(Check::measured(
                "hopf.t1_inverse",
                "T1⁻¹(a⊗a′) = ((ι⊗S)Δ(a))(1⊗a′)",
                d.t1_inverse_formula,
                tol,
            ));
            out.push(Check::measured(
                "hopf.t2_inverse",
                "T2⁻¹(a⊗a′) = (a⊗1)((S⊗ι)Δ(a′))",
                d.t2_inverse_formula,
                tol,
            ));
        }
        out
    }
}

/// Outcome of the full Hopf verification: all checks, plus the built data
/// when construction succeeded.
#[derive(Debug, Clone)]
pub struct HopfVerification {
    pub checks: Vec<Check>,
    pub data: Option<HopfData>,
    pub error: Option<Error>,
}

/// Runs every Hopf law, reporting failures as checks instead of stopping at
/// the first one.
pub fn verify_hopf(a: &FiniteDimAlgebra, coproduct: &ComplexMatrix, tol: &Tolerance) -> HopfVerification {
    if let Err(e) = check_shape(a, coproduct) {
        return HopfVerification {
            checks: vec![Check::failed("hopf.shape", "Δ maps A into A⊗A", &e)],
            data: None,
            error: Some(e),
        };
    }
    let built = HopfData::construct(a.clone(), coproduct.clone(), tol);
    let laws = HopfLaws::measure(a, coproduct, built.as_ref().ok(), tol);
    let mut checks = laws.checks();
    let mut error = None;
    let data = match built {
        Ok(h) => Some(h),
        Err(e) => {
            let (id, anchor) = match &e {
                Error::NoCounit { .. } => ("hopf.counit", "(ε⊗ι)Δ(a) = a has a solution"),
                Error::NotHomomorphism { .. } => ("hopf.counit_homomorphism", "ε(ab) = ε(a)ε(b)"),
                Error::MissingUnit => ("hopf.antipode", "S(a) = (ε⊗ι)T1⁻¹(a⊗1) requires a unit"),
                _ => ("hopf.construction", "counit and antipode from T1⁻¹"),
            };
            checks.push(Check::failed(id, anchor, &e));
            error = Some(e);
            None
        }
    };
    if error.is_none() {
        error = laws.to_result().err();
    }
    HopfVerification { checks, data, error }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;
    use crate::numerics::{flip, ONE, ZERO};
    use crate::presets;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn hopf(name: &str) -> HopfData {
        let (a, d) = presets::finite_preset(name).unwrap();
        HopfData::new(a, d, &tol()).unwrap()
    }

    #[test]
    fn all_presets_verify() {
        for (name, (a, d)) in presets::finite_presets() {
            let v = verify_hopf(&a, &d, &tol());
            assert!(crate::check::all_passed(&v.checks), "{name}: {:?}", v.checks);
            assert!(v.error.is_none(), "{name}: {:?}", v.error);
        }
    }

    #[test]
    fn t1_on_k_z2_is_permutation() {
        let h = hopf("k_z2");
        let t1 = &h.t_maps().t1;
        // T1(δ_r⊗δ_q) = δ_{r−q}⊗δ_q
        for r in 0..2 {
            for q in 0..2 {
                let col = t1.column(r * 2 + q);
                let target = ((r + 2 - q) % 2) * 2 + q;
                for row in 0..4 {
                    let expect = if row == target { ONE } else { ZERO };
                    assert!((col[row] - expect).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn sweedler_t1_full_rank() {
        let h = hopf("sweedler");
        assert_eq!(rank(&h.t_maps().t1), 16);
    }

    #[test]
    fn trivial_coproduct_is_not_bijective() {
        let (a, _) = presets::function_algebra(&FiniteGroup::cyclic(2));
        // Δ(a) = a⊗1 makes T1 the identity while T2(a⊗a′) = aa′⊗1 has rank n
        let u = a.unit().unwrap().clone();
        let mut d = ComplexMatrix::zeros(4, 2);
        for i in 0..2 {
            d.set_column(i, &kron_vec(&a.basis(i), &u));
        }
        assert!(matches!(build_t_maps(&a, &d, &tol()), Err(Error::NotBijectiveT { which: "T2", rank: 2, .. })));
        let (t1, _) = t_matrices(&a, &d);
        assert!(dist(&t1, &identity(4)) < 1e-14);
    }

    #[test]
    fn counits() {
        let k = hopf("k_s3");
        let mut expect = ComplexVector::zeros(6);
        expect[0] = ONE;
        assert!((k.counit() - expect).norm() < 1e-12);
        let h = hopf("sweedler");
        assert!((h.counit()[1] - ONE).norm() < 1e-12);
        assert!(h.counit()[2].norm() < 1e-12);
        let g = hopf("group_alg_s3");
        assert!((g.counit() - ComplexVector::from_element(6, ONE)).norm() < 1e-12);
    }

    #[test]
    fn antipodes() {
        let s3 = FiniteGroup::symmetric3();
        let k = hopf("k_s3");
        for p in 0..6 {
            // S(δ_p) = δ_{p⁻¹}
            let col = k.antipode().column(p).into_owned();
            assert!((col - k.algebra().basis(s3.inv(p))).norm() < 1e-12);
        }
        let h = hopf("sweedler");
        let s = h.antipode();
        assert!((s.column(1) - h.algebra().basis(1)).norm() < 1e-12);
        assert!((s.column(2) + h.algebra().basis(3)).norm() < 1e-12);
        let s2x = s * s.column(2);
        assert!((s2x + h.algebra().basis(2)).norm() < 1e-12);
        let g = hopf("group_alg_s3");
        assert!(dist(&(g.antipode() * g.antipode()), &identity(6)) < 1e-12);
    }

    #[test]
    fn flipped_coproduct_on_abelian_still_hopf() {
        let (a, d) = presets::finite_preset("k_z2").unwrap();
        let flipped = flip(2, 2) * d;
        let v = verify_hopf(&a, &flipped, &tol());
        assert!(crate::check::all_passed(&v.checks));
    }

    #[test]
    fn identity_antipode_fails_on_sweedler() {
        let h = hopf("sweedler");
        let m = h.algebra().multiplication_map();
        let id = identity(4);
        let res = dist(&(&m * kron(&id, &id) * h.coproduct()), &(h.unit() * h.counit().transpose()));
        assert!(res > 0.5);
        let mut broken = h.clone();
        broken.antipode = id;
        let laws = broken.laws();
        assert!(matches!(laws.to_result(), Err(Error::AntipodeLawFailed { .. })));
    }

    #[test]
    fn broken_coproduct_is_named() {
        let (a, mut d) = presets::finite_preset("k_z2").unwrap();
        d[(0, 1)] += ONE;
        let v = verify_hopf(&a, &d, &tol());
        let failed: Vec<_> = v.checks.iter().filter(|c| !c.passed()).map(|c| c.id.as_str()).collect();
        assert!(failed.contains(&"hopf.coproduct_homomorphism"), "{failed:?}");
    }
}
