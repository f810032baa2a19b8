//! Finite-dimensional associative algebras given by structure constants.

use num_complex::Complex64;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::numerics::{
    conj, conj_vec, dist, dist_vec, identity, kron, kron_vec, rank, vectorize, ComplexMatrix, ComplexVector,
    Tolerance, ZERO,
};

pub type AlgebraElement = ComplexVector;

/// An algebra over ℂ with basis `e_0, …, e_{n-1}` and product
/// `e_i·e_j = Σ_k m[i,j,k] e_k`.
///
/// The product is stored as left-multiplication matrices: column `j` of
/// `left[i]` holds the coordinates of `e_i·e_j`. The optional involution is
/// stored as a matrix whose column `j` is `e_j*`; it acts conjugate-linearly.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDimAlgebra {
    labels: Vec<String>,
    left: Vec<ComplexMatrix>,
    star: Option<ComplexMatrix>,
    unit: Option<ComplexVector>,
}

impl FiniteDimAlgebra {
    pub fn from_left_matrices(labels: Vec<String>, left: Vec<ComplexMatrix>) -> Result<Self> {
        let n = labels.len();
        if left.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: left.len() });
        }
        for l in &left {
            if l.nrows() != n || l.ncols() != n {
                return Err(Error::DimensionMismatch { expected: n, found: l.nrows() });
            }
        }
        Ok(Self { labels, left, star: None, unit: None })
    }

    /// Build from sparse structure constants `(i, j, k, m[i,j,k])`.
    pub fn from_structure_constants<I>(labels: Vec<String>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Complex64)>,
    {
        let n = labels.len();
        let mut left = vec![ComplexMatrix::zeros(n, n); n];
        for (i, j, k, v) in entries {
            let worst = i.max(j).max(k);
            if worst >= n {
                return Err(Error::DimensionMismatch { expected: n, found: worst + 1 });
            }
            left[i][(k, j)] += v;
        }
        Self::from_left_matrices(labels, left)
    }

    pub fn with_star(mut self, star: ComplexMatrix) -> Result<Self> {
        let n = self.dim();
        if star.nrows() != n || star.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: star.nrows() });
        }
        self.star = Some(star);
        Ok(self)
    }

    pub fn with_unit(mut self, unit: ComplexVector) -> Result<Self> {
        if unit.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: unit.len() });
        }
        self.unit = Some(unit);
        Ok(self)
    }

    pub fn without_star(mut self) -> Self {
        self.star = None;
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.left[i][(k, j)]
    }

    /// Matrix of `x ↦ e_i·x`.
    pub fn left_basis(&self, i: usize) -> &ComplexMatrix {
        &self.left[i]
    }

    pub fn basis(&self, i: usize) -> AlgebraElement {
        crate::numerics::basis_vector(self.dim(), i)
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mult(&self, a: &AlgebraElement) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for (i, &ai) in a.iter().enumerate() {
            if ai != ZERO {
                out += &self.left[i] * ai;
            }
        }
        out
    }

    /// Matrix of `x ↦ x·b`.
    pub fn right_mult(&self, b: &AlgebraElement) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            out.set_column(i, &(&self.left[i] * b));
        }
        out
    }

    pub fn product(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.left_mult(a) * b
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        for v in [a, b] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
            }
        }
        Ok(self.product(a, b))
    }

    /// The multiplication `m: A⊗A → A` as an `n × n²` matrix.
    pub fn multiplication_map(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n, n * n);
        for i in 0..n {
            for j in 0..n {
                m.set_column(i * n + j, &self.left[i].column(j));
            }
        }
        m
    }

    pub fn star_matrix(&self) -> Option<&ComplexMatrix> {
        self.star.as_ref()
    }

    pub fn has_star(&self) -> bool {
        self.star.is_some()
    }

    pub fn star(&self, a: &AlgebraElement) -> Option<AlgebraElement> {
        self.star.as_ref().map(|s| s * conj_vec(a))
    }

    pub fn unit(&self) -> Option<&ComplexVector> {
        self.unit.as_ref()
    }

    pub fn unit_or_err(&self) -> Result<&ComplexVector> {
        self.unit.as_ref().ok_or(Error::MissingUnit)
    }

    pub fn is_commutative(&self, tol: &Tolerance) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| dist_vec(&self.left[i].column(j).into_owned(), &self.left[j].column(i).into_owned()) <= tol.abs_tol))
    }

    /// Apply a linear map `A → A` given in coordinates to each basis element
    /// and return the algebra transported by an invertible change of basis
    /// `x ↦ t·x`.
    pub fn transport(&self, t: &ComplexMatrix, t_inv: &ComplexMatrix, labels: Vec<String>) -> Result<Self> {
        let n = self.dim();
        // new basis element e'_i = t⁻¹ e_i in old coordinates
        let mut left = Vec::with_capacity(n);
        for i in 0..n {
            let old = self.left_mult(&t_inv.column(i).into_owned());
            left.push(t * old * t_inv);
        }
        let mut out = Self::from_left_matrices(labels, left)?;
        if let Some(s) = &self.star {
            out.star = Some(t * s * conj(t_inv));
        }
        if let Some(u) = &self.unit {
            out.unit = Some(t * u);
        }
        Ok(out)
    }

    pub fn inspect(&self, tol: &Tolerance) -> ValidationReport {
        let n = self.dim();
        let mut worst = (0.0_f64, (0, 0, 0));
        for i in 0..n {
            for j in 0..n {
                let prod = self.left[i].column(j).into_owned();
                let lhs = self.left_mult(&prod);
                let rhs = &self.left[i] * &self.left[j];
                let diff = lhs - rhs;
                for k in 0..n {
                    let res = diff.column(k).norm();
                    if res > worst.0 {
                        worst = (res, (i, j, k));
                    }
                }
            }
        }
        let left_cols: Vec<ComplexVector> = self.left.iter().map(vectorize).collect();
        let right_cols: Vec<ComplexVector> =
            (0..n).map(|j| vectorize(&self.right_mult(&self.basis(j)))).collect();
        let left_rank = if n == 0 { 0 } else { rank(&ComplexMatrix::from_columns(&left_cols)) };
        let right_rank = if n == 0 { 0 } else { rank(&ComplexMatrix::from_columns(&right_cols)) };

        let star = self.star.as_ref().map(|s| {
            let involutive = dist(&(s * conj(s)), &identity(n));
            let mut anti = (0.0_f64, (0, 0));
            for i in 0..n {
                for j in 0..n {
                    let ab = self.left[i].column(j).into_owned();
                    let lhs = s * conj_vec(&ab);
                    let rhs = self.product(&s.column(j).into_owned(), &s.column(i).into_owned());
                    let res = dist_vec(&lhs, &rhs);
                    if res > anti.0 {
                        anti = (res, (i, j));
                    }
                }
            }
            StarResiduals { anti_multiplicative: anti.0, worst_pair: anti.1, involutive }
        });
        let unit_residual = self.unit.as_ref().map(|u| {
            let l = dist(&self.left_mult(u), &identity(n));
            let r = dist(&self.right_mult(u), &identity(n));
            l.max(r)
        });
        ValidationReport {
            dim: n,
            associativity_residual: worst.0,
            worst_triple: worst.1,
            left_rank,
            right_rank,
            star,
            unit_residual,
            tolerance: tol.abs_tol,
        }
    }

    /// Strict validation: the first failing law is returned as an error.
    pub fn validate(&self, tol: &Tolerance) -> Result<ValidationReport> {
        let report = self.inspect(tol);
        report.to_result()?;
        Ok(report)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarResiduals {
    /// worst `‖(e_i e_j)* − e_j* e_i*‖`
    pub anti_multiplicative: f64,
    pub worst_pair: (usize, usize),
    /// `‖(a*)* − a‖` as an operator norm
    pub involutive: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub dim: usize,
    pub associativity_residual: f64,
    pub worst_triple: (usize, usize, usize),
    pub left_rank: usize,
    pub right_rank: usize,
    pub star: Option<StarResiduals>,
    pub unit_residual: Option<f64>,
    tolerance: f64,
}

impl ValidationReport {
    pub fn nondegenerate(&self) -> bool {
        self.left_rank == self.dim && self.right_rank == self.dim
    }

    pub fn to_result(&self) -> Result<()> {
        if !(self.associativity_residual <= self.tolerance) {
            return Err(Error::NonAssociative { triple: self.worst_triple, residual: self.associativity_residual });
        }
        if self.left_rank < self.dim {
            return Err(Error::DegenerateProduct { side: "left", rank: self.left_rank, dim: self.dim });
        }
        if self.right_rank < self.dim {
            return Err(Error::DegenerateProduct { side: "right", rank: self.right_rank, dim: self.dim });
        }
        if let Some(s) = &self.star {
            if !(s.anti_multiplicative <= self.tolerance) {
                return Err(Error::BadInvolution { law: "(ab)* = b*a*", pair: s.worst_pair, residual: s.anti_multiplicative });
            }
            if !(s.involutive <= self.tolerance) {
                return Err(Error::BadInvolution { law: "(a*)* = a", pair: (0, 0), residual: s.involutive });
            }
        }
        if let Some(u) = self.unit_residual {
            if !(u <= self.tolerance) {
                return Err(Error::BadUnit { residual: u });
            }
        }
        Ok(())
    }

    pub fn checks(&self) -> Vec<Check> {
        let tol = self.tolerance;
        let mut out = vec![
            Check::measured("algebra.associativity", "(ab)c = a(bc)", self.associativity_residual, tol)
                .with_note(format!("worst basis triple {:?}", self.worst_triple)),
            Check::verdict(
                "algebra.nondegenerate",
                "the product is non-degenerate as a bilinear map",
                self.nondegenerate(),
                format!("left rank {}, right rank {}, dimension {}", self.left_rank, self.right_rank, self.dim),
            ),
        ];
        match &self.star {
            Some(s) => {
                out.push(
                    Check::measured("algebra.star_antimultiplicative", "(ab)* = b*a*", s.anti_multiplicative, tol)
                        .with_note(format!("worst basis pair {:?}", s.worst_pair)),
                );
                out.push(Check::measured("algebra.star_involutive", "(a*)* = a", s.involutive, tol));
            }
            None => out.push(Check::skipped("algebra.star", "*-algebra laws", "no star")),
        }
        match self.unit_residual {
            Some(u) => out.push(Check::measured("algebra.unit", "1a = a1 = a", u, tol)),
            None => out.push(Check::skipped("algebra.unit", "1a = a1 = a", "no unit")),
        }
        out
    }
}

/// `A⊗B` with the componentwise product, star and unit.
pub fn tensor_algebra(a: &FiniteDimAlgebra, b: &FiniteDimAlgebra) -> FiniteDimAlgebra {
    let mut labels = Vec::with_capacity(a.dim() * b.dim());
    let mut left = Vec::with_capacity(a.dim() * b.dim());
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            labels.push(format!("{}⊗{}", a.labels[i], b.labels[j]));
            left.push(kron(&a.left[i], &b.left[j]));
        }
    }
    let star = match (&a.star, &b.star) {
        (Some(sa), Some(sb)) => Some(kron(sa, sb)),
        _ => None,
    };
    let unit = match (&a.unit, &b.unit) {
        (Some(ua), Some(ub)) => Some(kron_vec(ua, ub)),
        _ => None,
    };
    FiniteDimAlgebra { labels, left, star, unit }
}

/// Left multiplication by `x` in a tensor product of algebras, without
/// materializing the full structure tensor of the product algebra.
pub fn tensor_left_mult(factors: &[&FiniteDimAlgebra], x: &ComplexVector) -> ComplexMatrix {
    let dims: Vec<usize> = factors.iter().map(|f| f.dim()).collect();
    let total: usize = dims.iter().product();
    let mut out = ComplexMatrix::zeros(total, total);
    for (flat, &coef) in x.iter().enumerate() {
        if coef == ZERO {
            continue;
        }
        let mut rem = flat;
        let mut idx = vec![0; dims.len()];
        for (slot, &d) in dims.iter().enumerate().rev() {
            idx[slot] = rem % d;
            rem /= d;
        }
        let mut op = factors[0].left[idx[0]].clone();
        for (slot, f) in factors.iter().enumerate().skip(1) {
            op = kron(&op, &f.left[idx[slot]]);
        }
        out += op * coef;
    }
    out
}

pub fn tensor_product(factors: &[&FiniteDimAlgebra], x: &ComplexVector, y: &ComplexVector) -> ComplexVector {
    tensor_left_mult(factors, x) * y
}
