//! Dense complex linear algebra used by every other module.
//!
//! All maps are stored as matrices acting on coordinate columns in a fixed
//! basis. Conjugate-linear maps are stored as a matrix part `M` acting as
//! `v ↦ M·conj(v)`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Rank decisions that are not membership or bijectivity tests use this
/// relative cutoff on singular values.
const RANK_EPS: f64 = 1e-10;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn r(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Tolerance policy shared by all checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub membership_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs_tol: 1e-9, rel_tol: 1e-9, membership_tol: 1e-8 }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, membership_tol: f64) -> Result<Self> {
        for (what, v) in [("abs_tol", abs_tol), ("rel_tol", rel_tol), ("membership_tol", membership_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::NotPositive { what: what.to_string(), min_eigenvalue: v });
            }
        }
        Ok(Self { abs_tol, rel_tol, membership_tol })
    }

    /// Absolute tolerance scaled by the size of the reference quantity.
    pub fn scaled(&self, reference_norm: f64) -> f64 {
        self.abs_tol * reference_norm.max(1.0)
    }
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn basis_vector(n: usize, i: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(n);
    v[i] = ONE;
    v
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

pub fn kron_vec(a: &ComplexVector, b: &ComplexVector) -> ComplexVector {
    let mut out = ComplexVector::zeros(a.len() * b.len());
    for i in 0..a.len() {
        if a[i] == ZERO {
            continue;
        }
        for j in 0..b.len() {
            out[i * b.len() + j] = a[i] * b[j];
        }
    }
    out
}

/// The flip `u⊗v ↦ v⊗u` from an `n1·n2` space to an `n2·n1` space.
pub fn flip(n1: usize, n2: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n1 * n2, n1 * n2);
    for i in 0..n1 {
        for j in 0..n2 {
            m[(j * n1 + i, i * n2 + j)] = ONE;
        }
    }
    m
}

/// Frobenius distance between two matrices of equal shape.
pub fn dist(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).norm()
}

pub fn dist_vec(a: &ComplexVector, b: &ComplexVector) -> f64 {
    (a - b).norm()
}

pub fn conj(m: &ComplexMatrix) -> ComplexMatrix {
    m.map(|z| z.conj())
}

pub fn conj_vec(v: &ComplexVector) -> ComplexVector {
    v.map(|z| z.conj())
}

/// Column-major vectorization.
pub fn vectorize(m: &ComplexMatrix) -> ComplexVector {
    ComplexVector::from_column_slice(m.as_slice())
}

pub fn unvectorize(v: &ComplexVector, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_column_slice(rows, cols, v.as_slice())
}

pub fn is_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Singular values, sorted in decreasing order.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Numerical rank with singular values below `rel·s_max` treated as zero.
pub fn rank_with(m: &ComplexMatrix, rel: f64) -> usize {
    let s = singular_values(m);
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel * smax).count()
}

pub fn rank(m: &ComplexMatrix) -> usize {
    rank_with(m, RANK_EPS)
}

/// Ratio of extreme singular values (infinite when singular).
pub fn condition_number(m: &ComplexMatrix) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// Bijectivity in the sense used throughout: the smallest singular value
/// exceeds `membership_tol` times the largest.
pub fn is_bijective(m: &ComplexMatrix, tol: &Tolerance) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) => hi > 0.0 && lo > tol.membership_tol * hi,
        _ => true,
    }
}

pub fn inverse(m: &ComplexMatrix, what: &str, tol: &Tolerance) -> Result<ComplexMatrix> {
    let s = singular_values(m);
    let smallest = s.last().copied().unwrap_or(0.0);
    if m.nrows() != m.ncols() || !is_bijective(m, tol) {
        return Err(Error::NotInvertible { what: what.to_string(), smallest });
    }
    m.clone().try_inverse().ok_or(Error::NotInvertible { what: what.to_string(), smallest })
}

/// Result of a linear solve.
#[derive(Debug, Clone)]
pub struct Solution {
    pub x: ComplexMatrix,
    pub residual: f64,
    pub condition: f64,
}

/// Minimum-norm least-squares solution of `a·x = b` by SVD.
pub fn least_squares(a: &ComplexMatrix, b: &ComplexMatrix) -> Solution {
    let svd = a.clone().svd(true, true);
    let u = svd.u.as_ref().expect("u requested");
    let vt = svd.v_t.as_ref().expect("v_t requested");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = RANK_EPS * smax;
    let utb = u.adjoint() * b;
    let mut scaled = ComplexMatrix::zeros(svd.singular_values.len(), b.ncols());
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > cutoff {
            for col in 0..b.ncols() {
                scaled[(k, col)] = utb[(k, col)] / s;
            }
        }
    }
    let x = vt.adjoint() * scaled;
    let residual = (a * &x - b).norm();
    let smin = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    Solution { x, residual, condition }
}

/// Solve `a·x = b`, requiring an exact solution up to `abs_tol` scaled by `‖b‖`.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerance) -> Result<Solution> {
    if a.nrows() != b.nrows() {
        return Err(Error::DimensionMismatch { expected: a.nrows(), found: b.nrows() });
    }
    let sol = least_squares(a, b);
    if sol.residual > tol.scaled(b.norm()) {
        return Err(Error::SingularSystem { residual: sol.residual });
    }
    Ok(sol)
}

/// Orthonormal basis of the null space of `a`, using the cutoff
/// `rel·s_max` on singular values.
pub fn null_space(a: &ComplexMatrix, rel: f64) -> Vec<ComplexVector> {
    let n = a.ncols();
    if n == 0 {
        return Vec::new();
    }
    let padded = if a.nrows() < n {
        let mut p = ComplexMatrix::zeros(n, n);
        p.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = if smax == 0.0 { f64::INFINITY } else { rel * smax };
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff || smax == 0.0)
        .map(|(k, _)| vt.row(k).adjoint())
        .collect()
}

/// Orthonormal basis (as columns) of the span of `columns`.
pub fn orthonormal_basis(columns: &[ComplexVector]) -> ComplexMatrix {
    if columns.is_empty() {
        return ComplexMatrix::zeros(0, 0);
    }
    let m = ComplexMatrix::from_columns(columns);
    let svd = m.svd(true, false);
    let u = svd.u.expect("u requested");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let keep: Vec<ComplexVector> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| smax > 0.0 && s > RANK_EPS * smax)
        .map(|(k, _)| u.column(k).into_owned())
        .collect();
    if keep.is_empty() {
        ComplexMatrix::zeros(columns[0].len(), 0)
    } else {
        ComplexMatrix::from_columns(&keep)
    }
}

/// Outcome of a span-membership test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpanTest {
    pub inside: bool,
    /// `‖x − Px‖ / ‖x‖` for the orthogonal projection `P` onto the span.
    pub residual: f64,
}

pub fn in_span(x: &ComplexMatrix, basis: &[ComplexMatrix], tol: &Tolerance) -> SpanTest {
    let xv = vectorize(x);
    let xn = xv.norm();
    if xn == 0.0 {
        return SpanTest { inside: true, residual: 0.0 };
    }
    let cols: Vec<ComplexVector> = basis.iter().map(vectorize).collect();
    let q = orthonormal_basis(&cols);
    let proj = if q.ncols() == 0 { ComplexVector::zeros(xv.len()) } else { &q * (q.adjoint() * &xv) };
    let residual = (&xv - proj).norm() / xn;
    SpanTest { inside: residual <= tol.membership_tol, residual }
}

/// Basis of the commutant `{X : XG = GX for all generators G}`.
pub fn commutant_basis(generators: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
    let n = match generators.first() {
        Some(g) => g.nrows(),
        None => return Vec::new(),
    };
    let id = identity(n);
    let mut blocks = Vec::with_capacity(generators.len());
    for g in generators {
        // vec(XG - GX) = (Gᵀ ⊗ 1 − 1 ⊗ G) vec(X) for column-major vec
        blocks.push(kron(&g.transpose(), &id) - kron(&id, g));
    }
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut system = ComplexMatrix::zeros(rows, n * n);
    let mut offset = 0;
    for b in &blocks {
        system.view_mut((offset, 0), (b.nrows(), n * n)).copy_from(b);
        offset += b.nrows();
    }
    null_space(&system, RANK_EPS).iter().map(|v| unvectorize(v, n, n)).collect()
}

pub fn is_hermitian(h: &ComplexMatrix, tol: &Tolerance) -> bool {
    h.is_square() && dist(h, &h.adjoint()) <= tol.scaled(h.norm())
}

/// Spectral decomposition of a Hermitian matrix (eigenvalues ascending).
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

pub fn hermitian_eigen(h: &ComplexMatrix) -> HermitianEigen {
    let sym = (h + h.adjoint()).map(|z| z * 0.5);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let cols: Vec<ComplexVector> = order.iter().map(|&k| eig.eigenvectors.column(k).into_owned()).collect();
    let vectors = if cols.is_empty() { ComplexMatrix::zeros(0, 0) } else { ComplexMatrix::from_columns(&cols) };
    HermitianEigen { values, vectors }
}

pub fn min_eigenvalue(h: &ComplexMatrix) -> f64 {
    hermitian_eigen(h).values.first().copied().unwrap_or(0.0)
}

/// `H^z` by spectral calculus for Hermitian positive definite `H`.
pub fn matrix_function(h: &ComplexMatrix, exponent: Complex64, tol: &Tolerance) -> Result<ComplexMatrix> {
    if !is_hermitian(h, tol) {
        return Err(Error::NotPositive { what: "non-Hermitian matrix".into(), min_eigenvalue: f64::NAN });
    }
    let eig = hermitian_eigen(h);
    let scale = eig.values.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1.0);
    if let Some(&lo) = eig.values.first() {
        if lo <= tol.abs_tol * scale {
            return Err(Error::NotPositive { what: "matrix".into(), min_eigenvalue: lo });
        }
    }
    let powered: Vec<Complex64> = eig.values.iter().map(|&l| (exponent * l.ln()).exp()).collect();
    let d = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(powered));
    Ok(&eig.vectors * d * eig.vectors.adjoint())
}

/// A conjugate-linear map `v ↦ matrix·conj(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AntilinearMap {
    pub matrix: ComplexMatrix,
}

impl AntilinearMap {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.nrows(), found: matrix.ncols() });
        }
        Ok(Self { matrix })
    }

    pub fn conjugation(n: usize) -> Self {
        Self { matrix: identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, v: &ComplexVector) -> ComplexVector {
        &self.matrix * conj_vec(v)
    }

    /// `self ∘ other` for two conjugate-linear maps; the result is linear.
    pub fn compose(&self, other: &AntilinearMap) -> ComplexMatrix {
        &self.matrix * conj(&other.matrix)
    }

    /// `self ∘ L` for a linear `L`.
    pub fn after_linear(&self, l: &ComplexMatrix) -> AntilinearMap {
        AntilinearMap { matrix: &self.matrix * conj(l) }
    }

    /// `L ∘ self` for a linear `L`.
    pub fn then_linear(&self, l: &ComplexMatrix) -> AntilinearMap {
        AntilinearMap { matrix: l * &self.matrix }
    }

    /// `J X J` for a linear `X`; linear again.
    pub fn sandwich(&self, x: &ComplexMatrix) -> ComplexMatrix {
        &self.matrix * conj(x) * conj(&self.matrix)
    }

    pub fn tensor(&self, other: &AntilinearMap) -> AntilinearMap {
        AntilinearMap { matrix: kron(&self.matrix, &other.matrix) }
    }

    /// Change of coordinates: with `x = R·ξ`, returns the map in `ξ` coordinates.
    pub fn in_frame(&self, frame: &ComplexMatrix, frame_inv: &ComplexMatrix) -> AntilinearMap {
        AntilinearMap { matrix: frame_inv * &self.matrix * conj(frame) }
    }

    /// `‖J J† − 1‖` in an orthonormal frame.
    pub fn antiunitarity_residual(&self) -> f64 {
        dist(&(&self.matrix * self.matrix.adjoint()), &identity(self.dim()))
    }

    /// `‖J² − 1‖`.
    pub fn involution_residual(&self) -> f64 {
        dist(&self.compose(self), &identity(self.dim()))
    }
}

/// Polar decomposition `T = J∇^{1/2}` of an invertible conjugate-linear map,
/// adjoints taken in the inner product `⟨u, v⟩ = v† · gram · u`.
///
/// `J` is antiunitary and `∇ = T*T` is positive and self-adjoint for that
/// inner product. `J` is an involution exactly when `T` is.
pub fn antilinear_polar(
    t: &AntilinearMap,
    gram: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<(AntilinearMap, ComplexMatrix)> {
    let n = t.dim();
    if gram.nrows() != n || gram.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: gram.nrows() });
    }
    let frame = matrix_function(gram, r(-0.5), tol)?;
    let frame_inv = matrix_function(gram, r(0.5), tol)?;
    let tf = t.in_frame(&frame, &frame_inv);
    if !is_bijective(&tf.matrix, tol) {
        let smallest = singular_values(&tf.matrix).last().copied().unwrap_or(0.0);
        return Err(Error::NotInvertible { what: "conjugate-linear map".into(), smallest });
    }
    // T*T for v ↦ M v̄ is the linear map Mᵀ M̄.
    let nabla_f = tf.matrix.transpose() * conj(&tf.matrix);
    let nabla_f = (&nabla_f + nabla_f.adjoint()).map(|z| z * 0.5);
    let lo = min_eigenvalue(&nabla_f);
    if lo <= 0.0 {
        return Err(Error::NotPositive { what: "modular operator".into(), min_eigenvalue: lo });
    }
    let inv_sqrt = matrix_function(&nabla_f, r(-0.5), tol)?;
    let j_f = AntilinearMap { matrix: &tf.matrix * conj(&inv_sqrt) };
    let nabla = &frame * nabla_f * &frame_inv;
    let j = j_f.in_frame(&frame_inv, &frame);
    Ok((j, nabla))
}

/// `‖T − J∇^{1/2}‖`, with `∇^{1/2}` taken in the gram frame where `∇` is Hermitian.
pub fn polar_reconstruction_residual(
    t: &AntilinearMap,
    j: &AntilinearMap,
    nabla: &ComplexMatrix,
    gram: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<f64> {
    let frame = matrix_function(gram, r(-0.5), tol)?;
    let frame_inv = matrix_function(gram, r(0.5), tol)?;
    let nabla_f = &frame_inv * nabla * &frame;
    let half = &frame * matrix_function(&nabla_f, r(0.5), tol)? * &frame_inv;
    Ok(dist(&j.after_linear(&half).matrix, &t.matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    fn random_pd(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let a = random_matrix(rng, n);
        &a * a.adjoint() + identity(n) * r(0.5)
    }

    #[test]
    fn solve_identity_and_diagonal() {
        let b = ComplexMatrix::from_column_slice(2, 1, &[c(1.0, 2.0), c(-3.0, 0.5)]);
        let s = solve(&identity(2), &b, &tol()).unwrap();
        assert!(dist(&s.x, &b) < 1e-14);

        let d = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![r(2.0), r(4.0)]));
        let b = ComplexMatrix::from_column_slice(2, 1, &[r(2.0), r(4.0)]);
        let s = solve(&d, &b, &tol()).unwrap();
        assert!(dist(&s.x, &ComplexMatrix::from_element(2, 1, ONE)) < 1e-14);
        assert!((s.condition - 2.0).abs() < 1e-12);
    }

    #[test]
    fn solve_reports_inconsistency() {
        let a = ComplexMatrix::from_row_slice(2, 1, &[ONE, ONE]);
        let b = ComplexMatrix::from_column_slice(2, 1, &[ONE, -ONE]);
        assert!(matches!(solve(&a, &b, &tol()), Err(Error::SingularSystem { .. })));
    }

    #[test]
    fn null_space_of_wide_matrix() {
        let a = ComplexMatrix::from_row_slice(1, 3, &[ONE, ONE, ZERO]);
        let ns = null_space(&a, 1e-10);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!((&a * v).norm() < 1e-12);
        }
    }

    #[test]
    fn span_membership() {
        let e0 = ComplexMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]);
        let e1 = ComplexMatrix::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO]);
        let t = in_span(&e0, &[e0.clone(), e1.clone()], &tol());
        assert!(t.inside);
        assert!(t.residual < 1e-14);
        let off = ComplexMatrix::from_row_slice(2, 2, &[ZERO, ZERO, ZERO, ONE]);
        let t = in_span(&off, &[e0, e1], &tol());
        assert!(!t.inside);
        assert!((t.residual - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matrix_function_basics() {
        let id = identity(3);
        let z = c(0.3, -1.7);
        assert!(dist(&matrix_function(&id, z, &tol()).unwrap(), &id) < 1e-14);
        let four = identity(1) * r(4.0);
        let half = matrix_function(&four, r(0.5), &tol()).unwrap();
        assert!((half[(0, 0)] - r(2.0)).norm() < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let h = random_pd(&mut rng, 4);
        let t = 1.3;
        let a = matrix_function(&h, c(0.0, t), &tol()).unwrap();
        let b = matrix_function(&h, c(0.0, -t), &tol()).unwrap();
        assert!(dist(&(a * b), &identity(4)) < 1e-10);
    }

    #[test]
    fn matrix_function_rejects_indefinite() {
        let m = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![ONE, -ONE]));
        assert!(matches!(matrix_function(&m, r(0.5), &tol()), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn polar_of_plain_conjugation() {
        let t = AntilinearMap::conjugation(3);
        let (j, nabla) = antilinear_polar(&t, &identity(3), &tol()).unwrap();
        assert!(dist(&j.matrix, &identity(3)) < 1e-12);
        assert!(dist(&nabla, &identity(3)) < 1e-12);
    }

    #[test]
    fn polar_rejects_singular() {
        let t = AntilinearMap::new(ComplexMatrix::zeros(2, 2)).unwrap();
        assert!(matches!(antilinear_polar(&t, &identity(2), &tol()), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn flip_is_involutive() {
        let f = flip(2, 3);
        let g = flip(3, 2);
        assert!(dist(&(g * f), &identity(6)) < 1e-15);
    }

    #[test]
    fn commutant_of_diagonal_algebra_is_diagonal() {
        let p0 = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![ONE, ZERO]));
        let p1 = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![ZERO, ONE]));
        let basis = commutant_basis(&[p0.clone(), p1.clone()]);
        assert_eq!(basis.len(), 2);
        for x in &basis {
            assert!(in_span(x, &[p0.clone(), p1.clone()], &tol()).inside);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn polar_reconstructs_random_antilinear(seed in any::<u64>(), n in 1usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = AntilinearMap::new(random_matrix(&mut rng, n) + identity(n) * r(2.0)).unwrap();
            let gram = random_pd(&mut rng, n);
            let (j, nabla) = antilinear_polar(&t, &gram, &tol()).unwrap();
            let res = polar_reconstruction_residual(&t, &j, &nabla, &gram, &tol()).unwrap();
            prop_assert!(res <= 1e-9 * (1.0 + t.matrix.norm()));
            // J antiunitary for the gram inner product
            let frame = matrix_function(&gram, r(-0.5), &tol()).unwrap();
            let frame_inv = matrix_function(&gram, r(0.5), &tol()).unwrap();
            prop_assert!(j.in_frame(&frame, &frame_inv).antiunitarity_residual() < 1e-9);
        }

        #[test]
        fn polar_of_involution_gives_involution(seed in any::<u64>(), n in 1usize..6) {
            // T = X ∘ conj ∘ X⁻¹ squares to the identity
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_matrix(&mut rng, n) + identity(n) * r(2.0);
            let xinv = x.clone().try_inverse().unwrap();
            let t = AntilinearMap { matrix: &x * conj(&xinv) };
            prop_assert!(t.involution_residual() < 1e-9);
            let (j, nabla) = antilinear_polar(&t, &identity(n), &tol()).unwrap();
            prop_assert!(j.involution_residual() < 1e-8);
            prop_assert!(min_eigenvalue(&nabla) > 0.0);
        }

        #[test]
        fn power_group_law(seed in any::<u64>(), n in 1usize..6, zr in -1.0f64..1.0, zi in -1.0f64..1.0, wr in -1.0f64..1.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h = random_pd(&mut rng, n);
            let z = c(zr, zi);
            let w = c(wr, 0.3);
            let lhs = matrix_function(&h, z, &tol()).unwrap() * matrix_function(&h, w, &tol()).unwrap();
            let rhs = matrix_function(&h, z + w, &tol()).unwrap();
            prop_assert!(dist(&lhs, &rhs) <= 1e-9 * rhs.norm().max(1.0));
        }

        #[test]
        fn solve_reproduces_rhs(seed in any::<u64>(), n in 1usize..7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, n) + identity(n) * r(3.0);
            let b = ComplexMatrix::from_fn(n, 1, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let s = solve(&a, &b, &tol()).unwrap();
            prop_assert!(dist(&(&a * &s.x), &b) <= 1e-9 * b.norm().max(1.0) * s.condition.max(1.0));
        }
    }
}
