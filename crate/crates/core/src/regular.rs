//! The left regular representation: `V(x⊗x′) = Δ(x′)(x⊗1)`, its inverse
//! `W`, the pentagon equation, and `W` as an element of `A⊗B`.

use num_complex::Complex64;

use crate::algebra::{tensor_algebra, tensor_left_mult};
use crate::check::Check;
use crate::duality::DualPair;
use crate::error::{Error, Result};
use crate::fourier::{canonical_element, ActionOperators, FourierMaps};
use crate::integrals::fmt_complex;
use crate::numerics::{
    dist, dist_vec, flip, identity, inverse, kron, kron_vec, ComplexMatrix, ComplexVector, Tolerance, ZERO,
};

/// `V` and `W` on `A⊗A`, and `W`, `W⁻¹` as elements of `A⊗B`.
#[derive(Debug, Clone)]
pub struct RegularRep {
    pub v: ComplexMatrix,
    pub w: ComplexMatrix,
    /// `W(x⊗x′) = S⁻¹(x′₍₁₎)x⊗x′₍₂₎`
    pub w_closed: ComplexMatrix,
    pub w_elem: ComplexVector,
    pub w_inv_elem: ComplexVector,
}

/// `V(e_i⊗e_l) = Δ(e_l)(e_i⊗1)`.
pub fn v_matrix(pair_a: &crate::hopf::HopfData) -> ComplexMatrix {
    let n = pair_a.dim();
    let alg = pair_a.algebra();
    let id = identity(n);
    let mut v = ComplexMatrix::zeros(n * n, n * n);
    for i in 0..n {
        let r = kron(&alg.right_mult(&alg.basis(i)), &id);
        for l in 0..n {
            v.set_column(i * n + l, &(&r * pair_a.coproduct().column(l)));
        }
    }
    v
}

/// `W(e_i⊗e_l) = S⁻¹(e_l₍₁₎)e_i ⊗ e_l₍₂₎`.
pub fn w_closed_form(h: &crate::hopf::HopfData) -> ComplexMatrix {
    let n = h.dim();
    let alg = h.algebra();
    let id = identity(n);
    let mut w = ComplexMatrix::zeros(n * n, n * n);
    for i in 0..n {
        let r = kron(&(alg.right_mult(&alg.basis(i)) * h.antipode_inv()), &id);
        for l in 0..n {
            w.set_column(i * n + l, &(&r * h.coproduct().column(l)));
        }
    }
    w
}

/// `X₁₂`, `X₁₃`, `X₂₃` on a triple tensor product of `n`-dimensional spaces.
pub fn legs(x: &ComplexMatrix, n: usize) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let id = identity(n);
    let x12 = kron(x, &id);
    let x23 = kron(&id, x);
    let s23 = kron(&id, &flip(n, n));
    let x13 = &s23 * &x12 * &s23;
    (x12, x13, x23)
}

/// `‖W₁₂W₁₃W₂₃ − W₂₃W₁₂‖ / ‖W₂₃W₁₂‖`.
pub fn pentagon_residual(w: &ComplexMatrix, n: usize) -> f64 {
    let (w12, w13, w23) = legs(w, n);
    let lhs = &w12 * &w13 * &w23;
    let rhs = &w23 * &w12;
    dist(&lhs, &rhs) / rhs.norm().max(1.0)
}

impl RegularRep {
    pub fn new(pair: &DualPair) -> Result<Self> {
        let h = &pair.a;
        let tol = h.tolerance();
        let v = v_matrix(h);
        let w = inverse(&v, "V", tol)?;
        let w_closed = w_closed_form(h);
        let r = dist(&w_closed, &w);
        if !(r <= tol.abs_tol) {
            return Err(Error::InverseMismatch { residual: r });
        }
        let w_elem = canonical_element(pair);
        let ab = tensor_algebra(h.algebra(), pair.b.algebra());
        let w_inv_elem = inverse(&ab.left_mult(&w_elem), "canonical element", tol)?
            * kron_vec(h.unit(), pair.b.unit());
        Ok(Self { v, w, w_closed, w_elem, w_inv_elem })
    }
}

/// `y⊗x ↦ ⟨S⁻¹(x₍₁₎), y₍₁₎⟩ y₍₂₎⊗x₍₂₎` (or with `⟨x₍₁₎, y₍₁₎⟩` when
/// `inverse` is set) on `B⊗A`.
pub fn displayed_transform(pair: &DualPair, inverse_form: bool) -> ComplexMatrix {
    let n = pair.a.dim();
    let da = pair.a.coproduct();
    let db = pair.b.coproduct();
    let pairing = if inverse_form {
        pair.pairing.clone()
    } else {
        pair.a.antipode_inv().transpose() * &pair.pairing
    };
    let mut t = ComplexMatrix::zeros(n * n, n * n);
    for j in 0..n {
        for i in 0..n {
            let col = j * n + i;
            for p in 0..n {
                for q in 0..n {
                    let ca = da[(p * n + q, i)];
                    if ca == ZERO {
                        continue;
                    }
                    for r in 0..n {
                        let w = ca * pairing[(p, r)];
                        if w == ZERO {
                            continue;
                        }
                        for s in 0..n {
                            let cb = db[(r * n + s, j)];
                            if cb != ZERO {
                                t[(s * n + q, col)] += w * cb;
                            }
                        }
                    }
                }
            }
        }
    }
    t
}

#[derive(Debug, Clone, PartialEq)]
pub enum TraceOutcome {
    Holds { k: Complex64, residual: f64 },
    /// `S² ≠ ι`; residual `‖S² − ι‖`
    SkippedS2 { residual: f64 },
}

/// `φ(a) = k·tr(π(a))`, gated on `S² = ι`.
pub fn trace_formula(pair: &DualPair) -> Result<TraceOutcome> {
    let h = &pair.a;
    let n = h.dim();
    let tol = h.tolerance();
    let s = h.antipode();
    let s2 = dist(&(s * s), &identity(n));
    if !(s2 <= tol.abs_tol) {
        return Ok(TraceOutcome::SkippedS2 { residual: s2 });
    }
    let alg = h.algebra();
    let traces = ComplexVector::from_fn(n, |i, _| alg.left_basis(i).trace());
    let phi = &pair.a_integrals.phi;
    let unit = h.unit();
    let tr_unit = traces.dot(unit);
    if tr_unit.norm() <= tol.abs_tol {
        return Err(Error::TraceFormulaFailed { residual: f64::NAN });
    }
    let k = phi.dot(unit) / tr_unit;
    let residual = dist_vec(phi, &(&traces * k));
    if !(residual <= tol.abs_tol) {
        return Err(Error::TraceFormulaFailed { residual });
    }
    Ok(TraceOutcome::Holds { k, residual })
}

#[derive(Debug, Clone)]
pub struct RegularReport {
    pub vw_inverse: f64,
    pub closed_form: f64,
    pub pentagon: f64,
    pub action: f64,
    pub pairing: f64,
    pub inverse_pairing: f64,
    pub coproduct_identity: f64,
    pub implements_coproduct: f64,
    pub antipode_left: f64,
    pub antipode_right: f64,
    pub transform: f64,
    pub transform_inverse: f64,
    pub trace: std::result::Result<TraceOutcome, Error>,
    tol: Tolerance,
}

pub fn verify_regular(pair: &DualPair, rep: &RegularRep, fourier: &FourierMaps, actions: &ActionOperators) -> RegularReport {
    let h = &pair.a;
    let n = h.dim();
    let alg_a = h.algebra();
    let alg_b = pair.b.algebra();
    let p = &pair.pairing;
    let tol = *h.tolerance();
    let nn = n * n;

    // (π⊗λ)(W) as an operator on A⊗A
    let mut action_op = ComplexMatrix::zeros(nn, nn);
    for i in 0..n {
        for j in 0..n {
            let c = rep.w_elem[i * n + j];
            if c != ZERO {
                action_op += kron(&actions.pi_a[i], &actions.lambda_a[j]) * c;
            }
        }
    }
    // ⟨X, b⊗a⟩ = Σ x_ij ⟨e_i, b⟩⟨a, f_j⟩ as the matrix [b, a]
    let pair_with = |x: &ComplexVector| {
        ComplexMatrix::from_fn(n, n, |b, a| {
            let mut s = ZERO;
            for i in 0..n {
                for j in 0..n {
                    s += x[i * n + j] * p[(i, b)] * p[(a, j)];
                }
            }
            s
        })
    };
    let pairing = dist(&pair_with(&rep.w_elem), &p.transpose());
    // ⟨W⁻¹, f_b⊗e_a⟩ = ⟨S(e_a), f_b⟩
    let inverse_pairing = dist(&pair_with(&rep.w_inv_elem), &(h.antipode().transpose() * p).transpose());

    // (Δ⊗ι)W = W₁₃W₂₃ in A⊗A⊗B
    let lhs = kron(h.coproduct(), &identity(n)) * &rep.w_elem;
    let ua = h.unit();
    let mut w13 = ComplexVector::zeros(nn * n);
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                w13[(i * n + k) * n + j] = rep.w_elem[i * n + j] * ua[k];
            }
        }
    }
    let w23 = kron_vec(ua, &rep.w_elem);
    let rhs = tensor_left_mult(&[alg_a, alg_a, alg_b], &w13) * w23;
    let coproduct_identity = dist_vec(&lhs, &rhs);

    // Δ(a) = W⁻¹(1⊗a)W on A⊗A
    let mut implements: f64 = 0.0;
    let id = identity(n);
    for a in 0..n {
        let conj = &rep.v * kron(&id, alg_a.left_basis(a)) * &rep.w;
        let delta = tensor_left_mult(&[alg_a, alg_a], &h.coproduct().column(a).into_owned());
        implements = implements.max(dist(&conj, &delta));
    }
    // W⁻¹ = (S⊗ι)W = (ι⊗S⁻¹)W
    let antipode_left = dist_vec(&(kron(h.antipode(), &id) * &rep.w_elem), &rep.w_inv_elem);
    let antipode_right = dist_vec(&(kron(&id, pair.b.antipode_inv()) * &rep.w_elem), &rep.w_inv_elem);

    // (F⊗ι)W(F⁻¹⊗ι) against the displayed map on B⊗A
    let conj_w = kron(&fourier.f1, &id) * &rep.w * kron(&fourier.f1_inv, &id);
    let t = displayed_transform(pair, false);
    let t_inv = displayed_transform(pair, true);
    let transform = dist(&conj_w, &t);
    let transform_inverse = dist(&(&t * &t_inv), &identity(nn)).max(dist(&(&t_inv * &t), &identity(nn)));

    RegularReport {
        vw_inverse: dist(&(&rep.v * &rep.w), &identity(nn)),
        closed_form: dist(&rep.w_closed, &rep.w),
        pentagon: pentagon_residual(&rep.w, n),
        action: dist(&action_op, &rep.w),
        pairing,
        inverse_pairing,
        coproduct_identity,
        implements_coproduct: implements,
        antipode_left,
        antipode_right,
        transform,
        transform_inverse,
        trace: trace_formula(pair),
        tol,
    }
}

impl RegularReport {
    pub fn to_result(&self) -> Result<()> {
        let t = self.tol.abs_tol;
        if !(self.closed_form <= t) {
            return Err(Error::InverseMismatch { residual: self.closed_form });
        }
        if !(self.pentagon <= t) {
            return Err(Error::PentagonFailed { residual: self.pentagon });
        }
        if !(self.action <= t) {
            return Err(Error::ActionMismatch { residual: self.action });
        }
        for (identity, r) in [
            ("(Δ⊗ι)W = W₁₃W₂₃", self.coproduct_identity),
            ("Δ(a) = W⁻¹(1⊗a)W", self.implements_coproduct),
            ("W⁻¹ = (S⊗ι)W", self.antipode_left),
            ("W⁻¹ = (ι⊗S⁻¹)W", self.antipode_right),
        ] {
            if !(r <= t) {
                return Err(Error::IdentityFailed { identity, residual: r });
            }
        }
        if !(self.transform <= t) {
            return Err(Error::TransformMismatch { residual: self.transform });
        }
        match &self.trace {
            Err(e) => Err(e.clone()),
            Ok(_) => Ok(()),
        }
    }

    pub fn checks(&self) -> Vec<Check> {
        let t = self.tol.abs_tol;
        let mut out = vec![
            Check::measured("regular.inverse", "W = V⁻¹", self.vw_inverse, t),
            Check::measured("regular.closed_form", "V⁻¹(x⊗x′) = S⁻¹(x′₍₁₎)x⊗x′₍₂₎", self.closed_form, t),
            Check::measured("regular.pentagon", "W₁₂W₁₃W₂₃ = W₂₃W₁₂", self.pentagon, t),
            Check::measured("regular.action", "W acts on A⊗A through π⊗λ", self.action, t),
            Check::measured("regular.pairing", "⟨W, b⊗a⟩ = ⟨a, b⟩", self.pairing, t),
            Check::measured("regular.inverse_pairing", "⟨W⁻¹, b⊗a⟩ = ⟨S(a), b⟩", self.inverse_pairing, t),
            Check::measured("regular.coproduct", "(Δ⊗ι)W = W₁₃W₂₃", self.coproduct_identity, t),
            Check::measured("regular.implements", "Δ(a) = W⁻¹(1⊗a)W", self.implements_coproduct, t),
            Check::measured("regular.antipode_left", "W⁻¹ = (S⊗ι)W", self.antipode_left, t),
            Check::measured("regular.antipode_right", "W⁻¹ = (ι⊗S⁻¹)W", self.antipode_right, t),
            Check::measured(
                "regular.transform",
                "(F⊗ι)W(F⁻¹⊗ι)(y⊗x) = ⟨S⁻¹(x₍₁₎), y₍₁₎⟩y₍₂₎⊗x₍₂₎",
                self.transform,
                t,
            ),
            Check::measured(
                "regular.transform_inverse",
                "y⊗x ↦ ⟨x₍₁₎, y₍₁₎⟩y₍₂₎⊗x₍₂₎ inverts the transformed W",
                self.transform_inverse,
                t,
            ),
        ];
        let anchor = "φ(a) = k·tr(π(a))";
        match &self.trace {
            Ok(TraceOutcome::Holds { k, residual }) => out.push(
                Check::measured("regular.trace_formula", anchor, *residual, t).with_note(format!("k = {}", fmt_complex(*k))),
            ),
            Ok(TraceOutcome::SkippedS2 { residual }) => out.push(Check::skipped(
                "regular.trace_formula",
                anchor,
                Error::SkippedS2 { residual: *residual }.to_string(),
            )),
            Err(e) => out.push(Check::failed("regular.trace_formula", anchor, e)),
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::HopfData;
    use crate::integrals::IntegralData;
    use crate::numerics::{basis_vector, r, ONE};
    use crate::presets;

    fn pair(name: &str) -> DualPair {
        let (a, d) = presets::finite_preset(name).unwrap();
        let h = HopfData::new(a, d, &Tolerance::default()).unwrap();
        let i = IntegralData::solve(&h).unwrap();
        DualPair::build(h, i).unwrap()
    }

    #[test]
    fn k_z2_v_is_permutation() {
        let p = pair("k_z2");
        let rep = RegularRep::new(&p).unwrap();
        // V(δ_r⊗δ_s) = δ_r⊗δ_{s−r}
        for r_ in 0..2 {
            for s in 0..2 {
                let col = rep.v.column(r_ * 2 + s).into_owned();
                let target = basis_vector(4, r_ * 2 + (s + 2 - r_) % 2);
                assert!(dist_vec(&col, &target) < 1e-14);
            }
        }
        assert!(pentagon_residual(&rep.w, 2) == 0.0);
    }

    #[test]
    fn k_z2_canonical_element() {
        let p = pair("k_z2");
        let rep = RegularRep::new(&p).unwrap();
        // Σ_p δ_p⊗b_p
        let expect = basis_vector(4, 0) + basis_vector(4, 3);
        assert!(dist_vec(&rep.w_elem, &expect) < 1e-12);
        // (S⊗ι) negates labels, which is trivial on ℤ₂
        assert!(dist_vec(&rep.w_inv_elem, &expect) < 1e-12);
    }

    #[test]
    fn all_presets_pass() {
        for (name, _) in presets::finite_presets() {
            let p = pair(name);
            let f = crate::fourier::Fourier::new(&p).unwrap();
            let rep = RegularRep::new(&p).unwrap();
            let report = verify_regular(&p, &rep, &f.maps, &f.actions);
            for c in report.checks() {
                assert!(c.passed(), "{name}: {c:?}");
            }
            assert!(report.pentagon < 1e-10, "{name}");
        }
    }

    #[test]
    fn trace_constants() {
        let k = |name| match trace_formula(&pair(name)).unwrap() {
            TraceOutcome::Holds { k, .. } => k,
            other => panic!("{other:?}"),
        };
        assert!((k("k_z2") - ONE).norm() < 1e-12);
        assert!((k("k_s3") - ONE).norm() < 1e-12);
        assert!((k("group_alg_s3") - r(1.0 / 6.0)).norm() < 1e-12);
        assert!(matches!(trace_formula(&pair("sweedler")).unwrap(), TraceOutcome::SkippedS2 { .. }));
    }

    #[test]
    fn displayed_transform_kills_zero() {
        let p = pair("sweedler");
        let t = displayed_transform(&p, false);
        assert_eq!(&t * ComplexVector::zeros(16), ComplexVector::zeros(16));
    }
}
