//! The Heisenberg algebra generated by `π(A)` and `λ(B)` acting on `A`,
//! its commutation relations, and the functional `f(λ(b)π(a)) = φ(b)φ(a)`.

use num_complex::Complex64;

use crate::check::Check;
use crate::duality::DualPair;
use crate::error::{Error, Result};
use crate::fourier::ActionOperators;
use crate::numerics::{
    dist, in_span, inverse, min_eigenvalue, rank, vectorize, ComplexMatrix, ComplexVector, Tolerance, ZERO,
};

/// `Σ⟨a₍₁₎, b₍₁₎⟩ λ(b₍₂₎)π(a₍₂₎)` for basis elements `a = e_i`, `b = f_l`.
pub fn commuted_product(pair: &DualPair, actions: &ActionOperators, i: usize, l: usize) -> ComplexMatrix {
    let n = pair.a.dim();
    let da = pair.a.coproduct();
    let db = pair.b.coproduct();
    let p = &pair.pairing;
    let mut out = ComplexMatrix::zeros(n, n);
    for pp in 0..n {
        for q in 0..n {
            let ca = da[(pp * n + q, i)];
            if ca == ZERO {
                continue;
            }
            for r in 0..n {
                let w = ca * p[(pp, r)];
                if w == ZERO {
                    continue;
                }
                for s in 0..n {
                    let cb = db[(r * n + s, l)];
                    if cb != ZERO {
                        out += &actions.lambda_a[s] * &actions.pi_a[q] * (w * cb);
                    }
                }
            }
        }
    }
    out
}

/// Worst residual of `π(a)λ(b) = ⟨a₍₁₎, b₍₁₎⟩λ(b₍₂₎)π(a₍₂₎)` over basis pairs.
pub fn relation_residual(pair: &DualPair, actions: &ActionOperators) -> (f64, (usize, usize)) {
    let n = pair.a.dim();
    let mut worst = (0.0_f64, (0, 0));
    for i in 0..n {
        for l in 0..n {
            let lhs = &actions.pi_a[i] * &actions.lambda_a[l];
            let r = dist(&lhs, &commuted_product(pair, actions, i, l));
            if r > worst.0 {
                worst = (r, (i, l));
            }
        }
    }
    worst
}

/// The operators `Z_{j·n+i} = λ(f_j)π(e_i)` as a basis of `End(A)`.
#[derive(Debug, Clone)]
pub struct HeisenbergRep {
    pub basis: Vec<ComplexMatrix>,
    /// columns are `vec(Z_k)`
    coords: ComplexMatrix,
    coords_inv: ComplexMatrix,
    /// `f(X) = Σ_{rc} f_matrix[r,c]·X[r,c]`
    pub f_matrix: ComplexMatrix,
    pub span_dimension: usize,
    /// GNS Gram `K[i,j] = φ(e_i* e_j)`, present for *-algebras
    gram: Option<(ComplexMatrix, ComplexMatrix)>,
}

impl HeisenbergRep {
    pub fn new(pair: &DualPair, actions: &ActionOperators) -> Result<Self> {
        let n = pair.a.dim();
        let tol = pair.a.tolerance();
        let mut basis = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                basis.push(&actions.lambda_a[j] * &actions.pi_a[i]);
            }
        }
        let cols: Vec<ComplexVector> = basis.iter().map(vectorize).collect();
        let coords = ComplexMatrix::from_columns(&cols);
        let span_dimension = rank(&coords);
        if span_dimension < n * n {
            return Err(Error::SpanDeficient { found: span_dimension, expected: n * n });
        }
        let coords_inv = inverse(&coords, "Heisenberg basis", tol)?;
        let phi_a = &pair.a_integrals.phi;
        let phi_b = &pair.b_integrals.phi;
        let values = ComplexVector::from_fn(n * n, |k, _| phi_b[k / n] * phi_a[k % n]);
        // vec(F)·vec(Z_k) = value_k ⇔ coordsᵀ vec(F) = values
        let f_vec = coords_inv.transpose() * values;
        let f_matrix = crate::numerics::unvectorize(&f_vec, n, n);
        let gram = match &pair.a_integrals.positivity {
            Some(p) if p.phi_positive => {
                let k = p.phi_gram.clone();
                let k_inv = inverse(&k, "GNS Gram", tol)?;
                Some((k, k_inv))
            }
            _ => None,
        };
        Ok(Self { basis, coords, coords_inv, f_matrix, span_dimension, gram })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an operator in the basis `Z_k`.
    pub fn coordinates(&self, x: &ComplexMatrix) -> ComplexVector {
        &self.coords_inv * vectorize(x)
    }

    pub fn from_coordinates(&self, c: &ComplexVector) -> ComplexMatrix {
        crate::numerics::unvectorize(&(&self.coords * c), self.f_matrix.nrows(), self.f_matrix.ncols())
    }

    pub fn f(&self, x: &ComplexMatrix) -> Complex64 {
        self.f_matrix.iter().zip(x.iter()).map(|(a, b)| a * b).sum()
    }

    /// Adjoint with respect to `⟨x′, x⟩ = φ(x*x′)`: `X‡ = K⁻¹X^H K`.
    pub fn adjoint(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let (k, k_inv) = self.gram.as_ref().ok_or(Error::MissingStar)?;
        Ok(k_inv * x.adjoint() * k)
    }

    pub fn gram(&self) -> Option<&ComplexMatrix> {
        self.gram.as_ref().map(|(k, _)| k)
    }

    /// `[f(Z_k‡ Z_l)]`.
    pub fn f_gram(&self) -> Result<ComplexMatrix> {
        let adj: Vec<ComplexMatrix> = self.basis.iter().map(|z| self.adjoint(z)).collect::<Result<_>>()?;
        let m = self.dim();
        Ok(ComplexMatrix::from_fn(m, m, |k, l| self.f(&(&adj[k] * &self.basis[l]))))
    }
}

#[derive(Debug, Clone)]
pub struct HeisenbergReport {
    pub relation: f64,
    pub worst_pair: (usize, usize),
    pub span_dimension: usize,
    pub expected_dimension: usize,
    pub rank_one_membership: f64,
    pub f_well_defined: f64,
    pub f_identity: f64,
    /// `f(π(a*)λ(b)π(a)) = φ(b)φ(a*a)`
    pub f_sandwich: Option<f64>,
    pub f_gram_min: Option<f64>,
    /// `f((yx)*(yx)) = φ(y*y)φ(x*x)`
    pub f_factorized: Option<f64>,
    tol: Tolerance,
}

/// Deterministic test vectors built from the basis.
fn probes(n: usize) -> Vec<ComplexVector> {
    (0..n)
        .map(|k| {
            ComplexVector::from_fn(n, |i, _| {
                let t = (i * 7 + k * 3 + 1) as f64;
                Complex64::new((t * 0.37).sin(), (t * 0.61).cos())
            })
        })
        .collect()
}

pub fn verify_heisenberg(pair: &DualPair, actions: &ActionOperators) -> (HeisenbergReport, Option<HeisenbergRep>) {
    let n = pair.a.dim();
    let tol = *pair.a.tolerance();
    let (relation, worst_pair) = relation_residual(pair, actions);
    let rep = HeisenbergRep::new(pair, actions);
    let phi_a = &pair.a_integrals.phi;
    let phi_b = &pair.b_integrals.phi;
    let alg_a = pair.a.algebra();
    let alg_b = pair.b.algebra();
    let mut report = HeisenbergReport {
        relation,
        worst_pair,
        span_dimension: 0,
        expected_dimension: n * n,
        rank_one_membership: f64::NAN,
        f_well_defined: f64::NAN,
        f_identity: f64::NAN,
        f_sandwich: None,
        f_gram_min: None,
        f_factorized: None,
        tol,
    };
    let rep = match rep {
        Ok(r) => r,
        Err(Error::SpanDeficient { found, .. }) => {
            report.span_dimension = found;
            return (report, None);
        }
        Err(_) => return (report, None),
    };
    report.span_dimension = rep.span_dimension;

    // rank-one maps x ↦ ⟨x, f_j⟩e_i lie in the span
    let mut membership: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let functional = pair.pairing.column(j).transpose();
            let op = alg_a.basis(i) * functional;
            membership = membership.max(in_span(&op, &rep.basis, &tol).residual);
        }
    }
    report.rank_one_membership = membership;

    let vs = probes(n);
    let mut well: f64 = 0.0;
    for a in &vs {
        for b in &vs {
            let op = actions.lambda_a(b) * actions.pi_a(a);
            let expect = phi_b.dot(b) * phi_a.dot(a);
            well = well.max((rep.f(&op) - expect).norm());
        }
    }
    report.f_well_defined = well;
    let ua = alg_a.unit().unwrap();
    let ub = alg_b.unit().unwrap();
    report.f_identity =
        (rep.f(&crate::numerics::identity(n)) - phi_b.dot(ub) * phi_a.dot(ua)).norm();

    if rep.gram.is_some() {
        let mut sandwich: f64 = 0.0;
        let mut factorized: f64 = 0.0;
        for a in &vs {
            let a_star = alg_a.star(a).unwrap();
            let phi_aa = phi_a.dot(&alg_a.product(&a_star, a));
            for b in &vs {
                let op = actions.pi_a(&a_star) * actions.lambda_a(b) * actions.pi_a(a);
                sandwich = sandwich.max((rep.f(&op) - phi_b.dot(b) * phi_aa).norm());
                let yx = actions.lambda_a(b) * actions.pi_a(a);
                let lhs = rep.f(&(rep.adjoint(&yx).unwrap() * &yx));
                let b_star = alg_b.star(b).unwrap();
                let rhs = phi_b.dot(&alg_b.product(&b_star, b)) * phi_aa;
                factorized = factorized.max((lhs - rhs).norm() / rhs.norm().max(1.0));
            }
        }
        report.f_sandwich = Some(sandwich);
        report.f_factorized = Some(factorized);
        if let Ok(g) = rep.f_gram() {
            let h = (&g + g.adjoint()) * crate::numerics::r(0.5);
            report.f_gram_min = Some(min_eigenvalue(&h));
        }
    }
    (report, Some(rep))
}

impl HeisenbergReport {
    pub fn to_result(&self) -> Result<()> {
        let t = self.tol.abs_tol;
        if !(self.relation <= t) {
            return Err(Error::RelationFailed { pair: self.worst_pair, residual: self.relation });
        }
        if self.span_dimension < self.expected_dimension {
            return Err(Error::SpanDeficient { found: self.span_dimension, expected: self.expected_dimension });
        }
        if !(self.f_well_defined <= t) {
            return Err(Error::IllDefined { residual: self.f_well_defined });
        }
        if let Some(m) = self.f_gram_min {
            if m < -t {
                return Err(Error::NotPositive { what: "f".into(), min_eigenvalue: m });
            }
        }
        Ok(())
    }

    pub fn checks(&self) -> Vec<Check> {
        let t = self.tol.abs_tol;
        let mut out = vec![
            Check::measured(
                "heisenberg.relations",
                "π(a)λ(b) = ⟨a₍₁₎, b₍₁₎⟩λ(b₍₂₎)π(a₍₂₎)",
                self.relation,
                t,
            )
            .with_note(format!("worst basis pair {:?}", self.worst_pair)),
            Check::verdict(
                "heisenberg.span",
                "the operators λ(b)π(a) span all linear maps on A",
                self.span_dimension == self.expected_dimension,
                format!("dimension {} of {}", self.span_dimension, self.expected_dimension),
            ),
            Check::measured(
                "heisenberg.rank_one",
                "x ↦ ⟨x, b′⟩a′ lies in the span of λ(b)π(a)",
                self.rank_one_membership,
                self.tol.membership_tol,
            ),
            Check::measured("heisenberg.f_well_defined", "f(λ(b)π(a)) = φ(b)φ(a)", self.f_well_defined, t),
            Check::measured("heisenberg.f_identity", "f(1) = φ(1_B)φ(1_A)", self.f_identity, t),
        ];
        match (self.f_sandwich, self.f_gram_min, self.f_factorized) {
            (Some(s), g, Some(fz)) => {
                out.push(Check::measured("heisenberg.f_sandwich", "f(a*ba) = φ(b)φ(a*a)", s, t));
                out.push(Check::measured(
                    "heisenberg.f_factorized",
                    "f((yx)*(yx)) = φ(y*y)φ(x*x)",
                    fz,
                    t,
                ));
                match g {
                    Some(m) => out.push(Check::verdict(
                        "heisenberg.f_positive",
                        "f is positive",
                        m >= -t,
                        format!("smallest Gram eigenvalue {m:.3e}"),
                    )),
                    None => out.push(Check::verdict("heisenberg.f_positive", "f is positive", false, "Gram failed")),
                }
            }
            _ => out.push(Check::skipped("heisenberg.f_positive", "f is positive", "no star")),
        }
        out
    }
}
