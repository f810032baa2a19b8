//! Finitely supported functions on a discrete group, `A = K(G)`, with the
//! dual group algebra `B = ℂ[G]`.
//!
//! `Δ(f)` is a genuine multiplier here: for infinite `G` it has infinite
//! support and is never materialized. Everything is expressed through
//! `T1`, `T2` and operators that keep supports finite, so results are exact.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_complex::Complex64;

use crate::check::Check;
use crate::duality::DualPair;
use crate::error::{Error, Result};
use crate::fourier::Fourier;
use crate::groups::FiniteGroup;
use crate::hopf::HopfData;
use crate::integrals::IntegralData;
use crate::numerics::{
    antilinear_polar, dist, dist_vec, identity, kron_vec, AntilinearMap, ComplexMatrix, ComplexVector, Tolerance, ZERO,
};
use crate::presets::function_algebra;
use crate::regular::{legs, RegularRep};

/// A group with a solvable word problem. Must be a pure function of its arguments.
pub trait GroupOracle {
    type Elem: Ord + Clone + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, p: &Self::Elem, q: &Self::Elem) -> Self::Elem;
    fn inv(&self, p: &Self::Elem) -> Self::Elem;
    fn label(&self, p: &Self::Elem) -> String {
        format!("{p:?}")
    }
    /// All elements, for finite groups.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
}

/// The additive group of integers.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl GroupOracle for Integers {
    type Elem = i64;

    fn identity(&self) -> i64 {
        0
    }
    fn mul(&self, p: &i64, q: &i64) -> i64 {
        p + q
    }
    fn inv(&self, p: &i64) -> i64 {
        -p
    }
    fn label(&self, p: &i64) -> String {
        p.to_string()
    }
    fn elements(&self) -> Option<Vec<i64>> {
        None
    }
}

impl GroupOracle for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        FiniteGroup::identity(self)
    }
    fn mul(&self, p: &usize, q: &usize) -> usize {
        FiniteGroup::mul(self, *p, *q)
    }
    fn inv(&self, p: &usize) -> usize {
        FiniteGroup::inv(self, *p)
    }
    fn label(&self, p: &usize) -> String {
        self.names()[*p].clone()
    }
    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.order()).collect())
    }
}

/// Finite complex combination over a key set; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct FinSupp<K: Ord> {
    coeffs: BTreeMap<K, Complex64>,
}

impl<K: Ord> Default for FinSupp<K> {
    fn default() -> Self {
        Self { coeffs: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FinSupp<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn delta(k: K) -> Self {
        let mut f = Self::new();
        f.add(k, Complex64::new(1.0, 0.0));
        f
    }

    pub fn from_pairs<I: IntoIterator<Item = (K, Complex64)>>(pairs: I) -> Self {
        let mut f = Self::new();
        for (k, v) in pairs {
            f.add(k, v);
        }
        f
    }

    pub fn add(&mut self, k: K, v: Complex64) {
        if v == ZERO {
            return;
        }
        let slot = self.coeffs.entry(k.clone()).or_insert(ZERO);
        *slot += v;
        if *slot == ZERO {
            self.coeffs.remove(&k);
        }
    }

    pub fn get(&self, k: &K) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> BTreeSet<K> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_pairs(self.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add(k.clone(), *v);
        }
        out
    }

    /// Largest coefficient difference.
    pub fn distance(&self, other: &Self) -> f64 {
        self.plus(&other.scale(Complex64::new(-1.0, 0.0))).iter().fold(0.0, |m, (_, v)| m.max(v.norm()))
    }
}

/// A function in `K(G)`.
pub type Function<E> = FinSupp<E>;
/// An element `Σ c_p b_p` of `ℂ[G]`.
pub type GroupAlgElement<E> = FinSupp<E>;
pub type Tensor2<E> = FinSupp<(E, E)>;
pub type Tensor3<E> = FinSupp<(E, E, E)>;

pub fn tensor<E: Ord + Clone>(f: &Function<E>, g: &Function<E>) -> Tensor2<E> {
    let mut out = Tensor2::new();
    for (p, a) in f.iter() {
        for (q, b) in g.iter() {
            out.add((p.clone(), q.clone()), a * b);
        }
    }
    out
}

pub fn tensor3<E: Ord + Clone>(f: &Function<E>, g: &Function<E>, h: &Function<E>) -> Tensor3<E> {
    let mut out = Tensor3::new();
    for ((p, q), a) in tensor(f, g).iter() {
        for (r, b) in h.iter() {
            out.add((p.clone(), q.clone(), r.clone()), a * b);
        }
    }
    out
}

/// `K(G)` and `ℂ[G]` over a group oracle.
#[derive(Debug, Clone)]
pub struct DiscreteQuantumGroup<G: GroupOracle> {
    pub group: G,
}

fn map2<E: Ord + Clone>(t: &Tensor2<E>, f: impl Fn(&E, &E) -> (E, E)) -> Tensor2<E> {
    Tensor2::from_pairs(t.iter().map(|((p, q), v)| (f(p, q), *v)))
}

impl<G: GroupOracle> DiscreteQuantumGroup<G> {
    pub fn new(group: G) -> Self {
        Self { group }
    }

    /// Pointwise product.
    pub fn product(&self, f: &Function<G::Elem>, g: &Function<G::Elem>) -> Function<G::Elem> {
        Function::from_pairs(f.iter().filter_map(|(p, a)| {
            let b = g.get(p);
            (b != ZERO).then(|| (p.clone(), a * b))
        }))
    }

    pub fn star(&self, f: &Function<G::Elem>) -> Function<G::Elem> {
        Function::from_pairs(f.iter().map(|(p, a)| (p.clone(), a.conj())))
    }

    /// `S(f)(p) = f(p⁻¹)`.
    pub fn antipode(&self, f: &Function<G::Elem>) -> Function<G::Elem> {
        Function::from_pairs(f.iter().map(|(p, a)| (self.group.inv(p), *a)))
    }

    pub fn counit(&self, f: &Function<G::Elem>) -> Complex64 {
        f.get(&self.group.identity())
    }

    /// `Δ(f)(p, q) = f(pq)`; only defined when `G` is finite.
    pub fn coproduct(&self, f: &Function<G::Elem>) -> Result<Tensor2<G::Elem>> {
        let elems = self.group.elements().ok_or_else(|| Error::InfiniteSupport {
            what: format!("coproduct of a function supported on {} point(s)", f.len()),
        })?;
        let mut out = Tensor2::new();
        for p in &elems {
            for q in &elems {
                let v = f.get(&self.group.mul(p, q));
                out.add((p.clone(), q.clone()), v);
            }
        }
        Ok(out)
    }

    /// `T1(f⊗g)(p,q) = f(pq)g(q)`, i.e. `δ_r⊗δ_q ↦ δ_{rq⁻¹}⊗δ_q`.
    pub fn t1(&self, x: &Tensor2<G::Elem>) -> Tensor2<G::Elem> {
        map2(x, |r, q| (self.group.mul(r, &self.group.inv(q)), q.clone()))
    }

    /// `T2(f⊗g)(p,q) = f(p)g(pq)`, i.e. `δ_r⊗δ_s ↦ δ_r⊗δ_{r⁻¹s}`.
    pub fn t2(&self, x: &Tensor2<G::Elem>) -> Tensor2<G::Elem> {
        map2(x, |r, s| (r.clone(), self.group.mul(&self.group.inv(r), s)))
    }

    /// `T1⁻¹(a⊗a′) = ((ι⊗S)Δ(a))(1⊗a′)`: `(ι⊗S)Δ(f)(p,q) = f(pq⁻¹)`.
    pub fn t1_inv(&self, x: &Tensor2<G::Elem>) -> Tensor2<G::Elem> {
        map2(x, |r, q| (self.group.mul(r, q), q.clone()))
    }

    /// `T2⁻¹(a⊗a′) = (a⊗1)((S⊗ι)Δ(a′))`: `(S⊗ι)Δ(f)(p,q) = f(p⁻¹q)`.
    pub fn t2_inv(&self, x: &Tensor2<G::Elem>) -> Tensor2<G::Elem> {
        map2(x, |r, s| (r.clone(), self.group.mul(r, s)))
    }

    /// `φ(f) = Σ_p f(p)`; left and right invariant.
    pub fn integral(&self, f: &Function<G::Elem>) -> Complex64 {
        f.iter().map(|(_, v)| *v).sum()
    }

    /// Slice a tensor with a functional on the second leg.
    pub fn slice_second(&self, x: &Tensor2<G::Elem>, functional: impl Fn(&Function<G::Elem>) -> Complex64) -> Function<G::Elem> {
        let mut rows: BTreeMap<G::Elem, Function<G::Elem>> = BTreeMap::new();
        for ((p, q), v) in x.iter() {
            rows.entry(p.clone()).or_default().add(q.clone(), *v);
        }
        Function::from_pairs(rows.into_iter().map(|(p, g)| {
            let c = functional(&g);
            (p, c)
        }))
    }

    pub fn slice_first(&self, x: &Tensor2<G::Elem>, functional: impl Fn(&Function<G::Elem>) -> Complex64) -> Function<G::Elem> {
        let flipped = map2(x, |p, q| (q.clone(), p.clone()));
        self.slice_second(&flipped, functional)
    }

    /// `(ι⊗φ)((a′⊗1)Δ(a)) − φ(a)a′`, evaluated through `T2(a′⊗a)`.
    pub fn left_invariance_defect(&self, a: &Function<G::Elem>, a_prime: &Function<G::Elem>) -> f64 {
        let lhs = self.slice_second(&self.t2(&tensor(a_prime, a)), |g| self.integral(g));
        lhs.distance(&a_prime.scale(self.integral(a)))
    }

    /// `(φ⊗ι)(Δ(a)(1⊗a′)) − φ(a)a′`, evaluated through `T1(a⊗a′)`.
    pub fn right_invariance_defect(&self, a: &Function<G::Elem>, a_prime: &Function<G::Elem>) -> f64 {
        let lhs = self.slice_first(&self.t1(&tensor(a, a_prime)), |g| self.integral(g));
        lhs.distance(&a_prime.scale(self.integral(a)))
    }

    /// `F(f) = φ(·f) = Σ_p f(p) b_p`.
    pub fn fourier(&self, f: &Function<G::Elem>) -> GroupAlgElement<G::Elem> {
        f.clone()
    }

    pub fn fourier_inverse(&self, b: &GroupAlgElement<G::Elem>) -> Function<G::Elem> {
        b.clone()
    }

    /// `⟨f, b⟩ = Σ_p c_p f(p)`.
    pub fn pair(&self, f: &Function<G::Elem>, b: &GroupAlgElement<G::Elem>) -> Complex64 {
        b.iter().map(|(p, c)| c * f.get(p)).sum()
    }

    /// Convolution product `b_p b_q = b_{pq}`.
    pub fn group_product(&self, x: &GroupAlgElement<G::Elem>, y: &GroupAlgElement<G::Elem>) -> GroupAlgElement<G::Elem> {
        let mut out = GroupAlgElement::new();
        for (p, a) in x.iter() {
            for (q, b) in y.iter() {
                out.add(self.group.mul(p, q), a * b);
            }
        }
        out
    }

    /// `(Σ c_p b_p)* = Σ c̄_p b_{p⁻¹}`.
    pub fn group_star(&self, x: &GroupAlgElement<G::Elem>) -> GroupAlgElement<G::Elem> {
        GroupAlgElement::from_pairs(x.iter().map(|(p, c)| (self.group.inv(p), c.conj())))
    }

    /// `φ̂(x) = ` coefficient of the identity.
    pub fn dual_integral(&self, x: &GroupAlgElement<G::Elem>) -> Complex64 {
        x.get(&self.group.identity())
    }

    /// `π(f)g = fg`.
    pub fn pi(&self, f: &Function<G::Elem>, g: &Function<G::Elem>) -> Function<G::Elem> {
        self.product(f, g)
    }

    /// `λ(b)g` with `λ(b_p)δ_r = δ_{pr}`.
    pub fn lambda(&self, b: &GroupAlgElement<G::Elem>, g: &Function<G::Elem>) -> Function<G::Elem> {
        let mut out = Function::new();
        for (p, c) in b.iter() {
            for (r, v) in g.iter() {
                out.add(self.group.mul(p, r), c * v);
            }
        }
        out
    }

    /// `q ↦ f(pq)`.
    pub fn translate(&self, f: &Function<G::Elem>, p: &G::Elem) -> Function<G::Elem> {
        let p_inv = self.group.inv(p);
        Function::from_pairs(f.iter().map(|(r, v)| (self.group.mul(&p_inv, r), *v)))
    }

    /// `π(f)λ(b_p)g − λ(b_p)π(f(p·))g`.
    pub fn heisenberg_defect(&self, f: &Function<G::Elem>, p: &G::Elem, g: &Function<G::Elem>) -> f64 {
        let bp = GroupAlgElement::delta(p.clone());
        let lhs = self.pi(f, &self.lambda(&bp, g));
        let rhs = self.lambda(&bp, &self.pi(&self.translate(f, p), g));
        lhs.distance(&rhs)
    }

    /// `W(δ_r⊗δ_s) = δ_r⊗δ_{rs}`.
    pub fn w(&self, x: &Tensor2<G::Elem>) -> Tensor2<G::Elem> {
        map2(x, |r, s| (r.clone(), self.group.mul(r, s)))
    }

    fn w_legs(&self, x: &Tensor3<G::Elem>, legs: (usize, usize)) -> Tensor3<G::Elem> {
        Tensor3::from_pairs(x.iter().map(|((a, b, c), v)| {
            let mut t = [a.clone(), b.clone(), c.clone()];
            t[legs.1] = self.group.mul(&t[legs.0], &t[legs.1]);
            let [a, b, c] = t;
            ((a, b, c), *v)
        }))
    }

    /// `(W₁₂W₁₃W₂₃x, W₂₃W₁₂x)`.
    pub fn pentagon_sides(&self, x: &Tensor3<G::Elem>) -> (Tensor3<G::Elem>, Tensor3<G::Elem>) {
        let lhs = self.w_legs(&self.w_legs(&self.w_legs(x, (1, 2)), (0, 2)), (0, 1));
        let rhs = self.w_legs(&self.w_legs(x, (0, 1)), (1, 2));
        (lhs, rhs)
    }

    pub fn gns_window(&self, window: Vec<G::Elem>) -> WindowGns<G::Elem> {
        let mut elems = window;
        elems.sort();
        elems.dedup();
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        WindowGns { elems, index }
    }
}

/// `ℓ²(G)` restricted to a finite window. `φ(f*g) = Σ f̄g`, so the
/// indicator basis is already orthonormal.
#[derive(Debug, Clone)]
pub struct WindowGns<E: Ord> {
    pub elems: Vec<E>,
    index: BTreeMap<E, usize>,
}

impl<E: Ord + Clone + Debug> WindowGns<E> {
    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn position(&self, e: &E) -> Result<usize> {
        self.index.get(e).copied().ok_or_else(|| Error::WindowTooSmall { element: format!("{e:?}") })
    }

    pub fn vector(&self, f: &Function<E>) -> Result<ComplexVector> {
        let mut v = ComplexVector::zeros(self.dim());
        for (p, c) in f.iter() {
            v[self.position(p)?] = *c;
        }
        Ok(v)
    }

    pub fn function(&self, v: &ComplexVector) -> Function<E> {
        Function::from_pairs(self.elems.iter().cloned().zip(v.iter().copied()))
    }

    /// Matrix of a support-preserving map on the span of `δ_r`, `r ∈ domain`.
    pub fn restrict(&self, domain: &[E], map: impl Fn(&Function<E>) -> Function<E>) -> Result<ComplexMatrix> {
        let mut m = ComplexMatrix::zeros(self.dim(), domain.len());
        for (col, r) in domain.iter().enumerate() {
            m.set_column(col, &self.vector(&map(&Function::delta(r.clone())))?);
        }
        Ok(m)
    }

    /// `W` on `δ_r⊗δ_s`, `r, s ∈ domain`, as a map into window⊗window.
    pub fn w_restricted<G: GroupOracle<Elem = E>>(&self, q: &DiscreteQuantumGroup<G>, domain: &[E]) -> Result<ComplexMatrix> {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n * n, domain.len() * domain.len());
        for (i, r) in domain.iter().enumerate() {
            for (j, s) in domain.iter().enumerate() {
                let out = q.w(&Tensor2::delta((r.clone(), s.clone())));
                for ((a, b), v) in out.iter() {
                    m[(self.position(a)? * n + self.position(b)?, i * domain.len() + j)] += *v;
                }
            }
        }
        Ok(m)
    }

    /// `(J, ∇)` from the polar decomposition of `f ↦ f*` on the window.
    pub fn tomita(&self, tol: &Tolerance) -> Result<(AntilinearMap, ComplexMatrix)> {
        let t = AntilinearMap::conjugation(self.dim());
        antilinear_polar(&t, &identity(self.dim()), tol)
    }
}

/// `‖M*M − 1‖` for a map given on an orthonormal family.
pub fn isometry_residual(m: &ComplexMatrix) -> f64 {
    dist(&(m.adjoint() * m), &identity(m.ncols()))
}

/// The structure-constant objects for `K(G)`, `G` finite, used to cross-check
/// the discrete backend.
#[derive(Debug, Clone)]
pub struct StructureBackend {
    pub pair: DualPair,
    pub fourier: Fourier,
    pub regular: RegularRep,
    /// `W₁₂`, `W₁₃`, `W₂₃`
    legs: (ComplexMatrix, ComplexMatrix, ComplexMatrix),
}

/// Worst coefficient disagreement between the two backends on one input.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BackendAgreement {
    pub fourier: f64,
    pub lambda: f64,
    pub pi: f64,
    pub integral: f64,
    pub pentagon: f64,
}

impl BackendAgreement {
    pub fn worst(&self) -> f64 {
        [self.fourier, self.lambda, self.pi, self.integral, self.pentagon].into_iter().fold(0.0, f64::max)
    }

    pub fn merge(&self, other: &Self) -> Self {
        Self {
            fourier: self.fourier.max(other.fourier),
            lambda: self.lambda.max(other.lambda),
            pi: self.pi.max(other.pi),
            integral: self.integral.max(other.integral),
            pentagon: self.pentagon.max(other.pentagon),
        }
    }
}

impl StructureBackend {
    pub fn new(g: &FiniteGroup, tol: &Tolerance) -> Result<Self> {
        let (a, d) = function_algebra(g);
        let h = HopfData::new(a, d, tol)?;
        let integrals = IntegralData::solve(&h)?;
        let pair = DualPair::build(h, integrals)?;
        let fourier = Fourier::new(&pair)?;
        let regular = RegularRep::new(&pair)?;
        let legs = legs(&regular.w, pair.a.dim());
        Ok(Self { pair, fourier, regular, legs })
    }

    fn vector(&self, f: &Function<usize>) -> ComplexVector {
        let mut v = ComplexVector::zeros(self.pair.a.dim());
        for (p, c) in f.iter() {
            v[*p] = *c;
        }
        v
    }

    /// Compare `F(f)`, `λ(b)g`, `π(f)g`, `φ(f)` and both sides of the pentagon
    /// on `f⊗g⊗h`; `b` is `f` read in `ℂ[G]`.
    pub fn compare(
        &self,
        q: &DiscreteQuantumGroup<FiniteGroup>,
        f: &Function<usize>,
        g: &Function<usize>,
        h: &Function<usize>,
    ) -> BackendAgreement {
        let n = self.pair.a.dim();
        let (fv, gv, hv) = (self.vector(f), self.vector(g), self.vector(h));
        let maps = &self.fourier.maps;
        let actions = &self.fourier.actions;
        // b_p in the dual basis f_l of B
        let bv = &self.pair.pairing_inv * self.vector(&q.fourier(f));
        let fourier = dist_vec(&(&maps.f1 * &fv), &bv);
        let lambda = dist_vec(&(actions.lambda_a(&self.vector(f)) * &gv), &self.vector(&q.lambda(f, g)));
        let pi = dist_vec(&(actions.pi_a(&fv) * &gv), &self.vector(&q.pi(f, g)));
        let integral = (self.pair.a_integrals.phi.dot(&fv) - q.integral(f)).norm();
        let (w12, w13, w23) = &self.legs;
        let x = kron_vec(&kron_vec(&fv, &gv), &hv);
        let (lhs, rhs) = q.pentagon_sides(&tensor3(f, g, h));
        let flat = |t: &Tensor3<usize>| {
            let mut v = ComplexVector::zeros(n * n * n);
            for ((a, b, c), z) in t.iter() {
                v[(a * n + b) * n + c] = *z;
            }
            v
        };
        let left = w12 * (w13 * (w23 * &x));
        let right = w23 * (w12 * &x);
        let pentagon = dist_vec(&left, &flat(&lhs)).max(dist_vec(&right, &flat(&rhs)));
        BackendAgreement { fourier, lambda, pi, integral, pentagon }
    }
}

/// Deterministic finitely supported test functions on `ℤ`.
pub fn sample_integer_functions(count: usize) -> Vec<Function<i64>> {
    (0..count)
        .map(|k| {
            let k = k as i64;
            Function::from_pairs((0..=(k % 4)).map(|j| {
                let p = (k * 7 + j * 3) % 11 - 5;
                let c = Complex64::new(((k + j) % 5) as f64 - 2.0, ((k * j) % 3) as f64 - 1.0);
                (p, c)
            }))
        })
        .collect()
}

/// Verification of the `ℤ` backend on a deterministic family of inputs.
pub fn verify_integers(tol: &Tolerance) -> Vec<Check> {
    let q = DiscreteQuantumGroup::new(Integers);
    let fs = sample_integer_functions(12);
    let mut t_inv: f64 = 0.0;
    let mut support_ok = true;
    let mut invariance: f64 = 0.0;
    let mut heis: f64 = 0.0;
    let mut plancherel: f64 = 0.0;
    let mut pentagon_ok = true;
    for (i, f) in fs.iter().enumerate() {
        let g = &fs[(i + 5) % fs.len()];
        let h = &fs[(i + 7) % fs.len()];
        let x = tensor(f, g);
        let y1 = q.t1(&x);
        t_inv = t_inv.max(q.t1_inv(&y1).distance(&x)).max(q.t2_inv(&q.t2(&x)).distance(&x));
        for (a, b) in y1.support() {
            support_ok &= g.support().contains(&b) && f.support().contains(&(a + b));
        }
        invariance = invariance.max(q.left_invariance_defect(f, g)).max(q.right_invariance_defect(f, g));
        heis = heis.max(q.heisenberg_defect(f, &(i as i64 - 3), g));
        let lhs = q.integral(&q.product(&q.star(f), f));
        let b = q.fourier(f);
        let rhs = q.dual_integral(&q.group_product(&q.group_star(&b), &b));
        plancherel = plancherel.max((lhs - rhs).norm() / lhs.norm().max(1.0));
        let (l, r) = q.pentagon_sides(&tensor3(f, g, h));
        pentagon_ok &= l == r;
    }
    let (l, r) = q.pentagon_sides(&tensor3(&Function::delta(1), &Function::delta(2), &Function::delta(3)));
    pentagon_ok &= l == r;
    let t = tol.abs_tol;
    let mut out = vec![
        Check::measured("discrete.t_inverse", "T1 and T2 are inverted by the antipode formulas", t_inv, t),
        Check::verdict(
            "discrete.t1_support",
            "supp T1(f⊗g) ⊆ (supp f)(supp g)⁻¹ × supp g",
            support_ok,
            "checked on the sample family",
        ),
        Check::measured("discrete.invariance", "(ι⊗φ)((a′⊗1)Δ(a)) = φ(a)a′ and its right analogue", invariance, t),
        Check::measured("discrete.heisenberg", "π(f)λ(b_p) = λ(b_p)π(f(p·))", heis, t),
        Check::measured("discrete.plancherel", "φ̂(F(f)*F(f)) = φ(f*f)", plancherel, tol.rel_tol),
        Check::verdict("discrete.pentagon", "W₁₂W₁₃W₂₃ = W₂₃W₁₂ on finitely supported triples", pentagon_ok, "exact"),
    ];
    let delta = q.coproduct(&Function::delta(0));
    out.push(Check::verdict(
        "discrete.coproduct_multiplier",
        "Δ(f) lies only in the multiplier algebra",
        matches!(delta, Err(Error::InfiniteSupport { .. })),
        match delta {
            Err(e) => e.to_string(),
            Ok(_) => "coproduct materialized".into(),
        },
    ));
    let win = q.gns_window((-8..=8).collect());
    let dom: Vec<i64> = (-3..=3).collect();
    match win.w_restricted(&q, &dom) {
        Ok(w) => out.push(Check::measured("discrete.window_w", "W is isometric on ℓ²(ℤ) inside the window", isometry_residual(&w), t)),
        Err(e) => out.push(Check::failed("discrete.window_w", "W is isometric on ℓ²(ℤ) inside the window", &e)),
    }
    match win.tomita(tol) {
        Ok((j, nabla)) => {
            let r = j.involution_residual().max(dist(&nabla, &identity(win.dim())));
            out.push(Check::measured("discrete.window_tomita", "J² = 1 and ∇ = 1 on the window", r, t));
        }
        Err(e) => out.push(Check::failed("discrete.window_tomita", "J² = 1 and ∇ = 1 on the window", &e)),
    }
    out
}
