//! Hilbert-space layer: GNS spaces of `φ` on `A` and `B`, the unitaries
//! `F`, `W`, `Ŵ`, `U`, modular data, and the GNS space of the Heisenberg
//! functional `f`.
//!
//! Every operator is stored in an orthonormal frame, so adjoints are plain
//! conjugate transposes.

use num_complex::Complex64;

use crate::check::Check;
use crate::duality::DualPair;
use crate::error::{Error, Result};
use crate::fourier::{ActionOperators, FourierMaps};
use crate::heisenberg::HeisenbergRep;
use crate::hopf::HopfData;
use crate::integrals::IntegralData;
use crate::numerics::{
    c, commutant_basis, dist, flip, identity, in_span, inverse, kron, matrix_function,
    polar_reconstruction_residual, antilinear_polar, AntilinearMap, ComplexMatrix, ComplexVector, Tolerance, ZERO,
};
use crate::regular::{v_matrix, RegularRep};

/// Real parameters at which modular invariance of operator spans is sampled.
pub const MODULAR_GRID: [f64; 3] = [0.3, 0.7, 1.0];

/// Completion of an algebra for `⟨η(x′), η(x)⟩ = φ(x*x′)`.
///
/// With `K[i,j] = φ(e_i* e_j)` the frame is `R = K^{-1/2}`, so that
/// `η(x) = R⁻¹x` has the standard inner product.
#[derive(Debug, Clone)]
pub struct GnsSpace {
    pub gram: ComplexMatrix,
    pub frame: ComplexMatrix,
    pub frame_inv: ComplexMatrix,
}

impl GnsSpace {
    pub fn build(h: &HopfData, integrals: &IntegralData, what: &str) -> Result<Self> {
        let tol = h.tolerance();
        let pos = integrals.positivity.as_ref().ok_or(Error::MissingStar)?;
        if !pos.phi_positive {
            return Err(Error::NotPositive { what: format!("left integral of {what}"), min_eigenvalue: pos.phi_min_eigenvalue });
        }
        let gram = pos.phi_gram.clone();
        let frame = matrix_function(&gram, c(-0.5, 0.0), tol).map_err(|_| Error::NotFaithful {
            what: format!("left integral of {what}"),
            rank: crate::numerics::rank(&gram),
            dim: gram.nrows(),
        })?;
        let frame_inv = matrix_function(&gram, c(0.5, 0.0), tol)?;
        Ok(Self { gram, frame, frame_inv })
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn embed(&self, x: &ComplexVector) -> ComplexVector {
        &self.frame_inv * x
    }

    /// Matrix of an operator given in basis coordinates.
    pub fn op(&self, x: &ComplexMatrix) -> ComplexMatrix {
        &self.frame_inv * x * &self.frame
    }

    /// `φ(x*y)`.
    pub fn inner(&self, x: &ComplexVector, y: &ComplexVector) -> Complex64 {
        (x.adjoint() * &self.gram * y)[(0, 0)]
    }
}

fn tensor_op(a: &GnsSpace, b: &GnsSpace, x: &ComplexMatrix) -> ComplexMatrix {
    kron(&a.frame_inv, &b.frame_inv) * x * kron(&a.frame, &b.frame)
}

fn unitarity(x: &ComplexMatrix) -> f64 {
    let id = identity(x.nrows());
    dist(&(x.adjoint() * x), &id).max(dist(&(x * x.adjoint()), &id))
}

/// `T = J∇^{1/2}` for the map `T: η(x) ↦ η(x*)`, in an orthonormal frame.
#[derive(Debug, Clone)]
pub struct TomitaData {
    pub t: AntilinearMap,
    pub j: AntilinearMap,
    pub nabla: ComplexMatrix,
    pub nabla_half: ComplexMatrix,
    pub nabla_neg_half: ComplexMatrix,
    pub nabla_inv: ComplexMatrix,
}

impl TomitaData {
    pub fn from_t(t: AntilinearMap, tol: &Tolerance) -> Result<Self> {
        let id = identity(t.dim());
        let (j, nabla) = antilinear_polar(&t, &id, tol)?;
        let nabla = (&nabla + nabla.adjoint()).map(|z| z * 0.5);
        let nabla_half = matrix_function(&nabla, c(0.5, 0.0), tol)?;
        let nabla_neg_half = matrix_function(&nabla, c(-0.5, 0.0), tol)?;
        let nabla_inv = inverse(&nabla, "modular operator", tol)?;
        Ok(Self { t, j, nabla, nabla_half, nabla_neg_half, nabla_inv })
    }

    /// Modular data of a GNS space, `T` coming from the involution.
    pub fn of_space(space: &GnsSpace, star: &ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        let t = AntilinearMap::new(star.clone())?.in_frame(&space.frame, &space.frame_inv);
        Self::from_t(t, tol)
    }

    /// `∇^{it}X∇^{-it}`.
    pub fn flow(&self, x: &ComplexMatrix, t: f64, tol: &Tolerance) -> Result<ComplexMatrix> {
        let fwd = matrix_function(&self.nabla, c(0.0, t), tol)?;
        let back = matrix_function(&self.nabla, c(0.0, -t), tol)?;
        Ok(fwd * x * back)
    }

    pub fn reconstruction_residual(&self, tol: &Tolerance) -> Result<f64> {
        polar_reconstruction_residual(&self.t, &self.j, &self.nabla, &identity(self.t.dim()), tol)
    }
}

/// Everything on `H`, `Ĥ`, `H⊗H`, `Ĥ⊗H` and `Ĥ⊗Ĥ` in orthonormal frames.
#[derive(Debug, Clone)]
pub struct GnsData {
    pub h: GnsSpace,
    pub h_hat: GnsSpace,
    /// `F: H → Ĥ`
    pub fourier: ComplexMatrix,
    pub w: ComplexMatrix,
    /// `V` on `H⊗H`
    pub v: ComplexMatrix,
    pub w_hat: ComplexMatrix,
    /// `U = (F⊗ι)W(F*⊗ι)` on `Ĥ⊗H`
    pub u: ComplexMatrix,
    pub tomita: TomitaData,
    pub tomita_hat: TomitaData,
    pub tomita_f: TomitaData,
    /// `π(e_i)` on `H`
    pub m: Vec<ComplexMatrix>,
    /// `λ(f_j)` on `H`
    pub n_hat: Vec<ComplexMatrix>,
    /// `π(f_j)` on `Ĥ`
    pub m_hat: Vec<ComplexMatrix>,
    /// `λ(e_i)` on `Ĥ`
    pub n: Vec<ComplexMatrix>,
    /// `π_f(e_i) = λ(e_i₍₁₎)⊗π(e_i₍₂₎)` on `Ĥ⊗H`
    pub pi_f_a: Vec<ComplexMatrix>,
    /// `π_f(f_j) = π(f_j)⊗1`
    pub pi_f_b: Vec<ComplexMatrix>,
}

impl GnsData {
    pub fn build(
        pair: &DualPair,
        maps: &FourierMaps,
        actions: &ActionOperators,
        regular: &RegularRep,
        heis: &HeisenbergRep,
    ) -> Result<Self> {
        let a = &pair.a;
        let b = &pair.b;
        let n = a.dim();
        let tol = a.tolerance();
        let star_a = a.algebra().star_matrix().ok_or(Error::MissingStar)?;
        let star_b = b.algebra().star_matrix().ok_or(Error::MissingStar)?;
        let h = GnsSpace::build(a, &pair.a_integrals, "A")?;
        let h_hat = GnsSpace::build(b, &pair.b_integrals, "B")?;

        let fourier = &h_hat.frame_inv * &maps.f1 * &h.frame;
        let w = tensor_op(&h, &h, &regular.w);
        let v = tensor_op(&h, &h, &regular.v);
        let w_hat_coords = inverse(&v_matrix(b), "V of the dual", tol)?;
        let w_hat = tensor_op(&h_hat, &h_hat, &w_hat_coords);
        let id = identity(n);
        let u = kron(&fourier, &id) * &w * kron(&fourier.adjoint(), &id);

        let tomita = TomitaData::of_space(&h, star_a, tol)?;
        let tomita_hat = TomitaData::of_space(&h_hat, star_b, tol)?;

        // T_f(η_f(Z_k)) = η_f(Z_k*), with η_f(Z_{j·n+i}) = f_j⊗e_i
        let m2 = n * n;
        let mut t_f = ComplexMatrix::zeros(m2, m2);
        for (k, z) in heis.basis.iter().enumerate() {
            t_f.set_column(k, &heis.coordinates(&heis.adjoint(z)?));
        }
        let t_f = AntilinearMap::new(t_f)?
            .in_frame(&kron(&h_hat.frame, &h.frame), &kron(&h_hat.frame_inv, &h.frame_inv));
        let tomita_f = TomitaData::from_t(t_f, tol)?;

        let m = actions.pi_a.iter().map(|x| h.op(x)).collect();
        let n_hat = actions.lambda_a.iter().map(|x| h.op(x)).collect();
        let m_hat: Vec<ComplexMatrix> = actions.pi_b.iter().map(|x| h_hat.op(x)).collect();
        let n_ops: Vec<ComplexMatrix> = actions.lambda_b.iter().map(|x| h_hat.op(x)).collect();

        let d = a.coproduct();
        let mut pi_f_a = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = ComplexMatrix::zeros(m2, m2);
            for p in 0..n {
                for q in 0..n {
                    let coef = d[(p * n + q, i)];
                    if coef != ZERO {
                        x += kron(&actions.lambda_b[p], &actions.pi_a[q]) * coef;
                    }
                }
            }
            pi_f_a.push(tensor_op(&h_hat, &h, &x));
        }
        let pi_f_b = m_hat.iter().map(|x| kron(x, &id)).collect();

        Ok(Self {
            h,
            h_hat,
            fourier,
            w,
            v,
            w_hat,
            u,
            tomita,
            tomita_hat,
            tomita_f,
            m,
            n_hat,
            m_hat,
            n: n_ops,
            pi_f_a,
            pi_f_b,
        })
    }
}

/// The three displayed forms of `U` on `Ĥ⊗H`, in basis coordinates.
pub fn u_forms(pair: &DualPair, actions: &ActionOperators) -> [ComplexMatrix; 3] {
    let n = pair.a.dim();
    let da = pair.a.coproduct();
    let db = pair.b.coproduct();
    let s_inv = pair.a.antipode_inv();
    let first = crate::regular::displayed_transform(pair, false);
    // η̂(y₍₂₎)⊗λ(y₍₁₎)η(x)
    let mut second = ComplexMatrix::zeros(n * n, n * n);
    // λ(S⁻¹(x₍₁₎))η̂(y)⊗η(x₍₂₎)
    let mut third = ComplexMatrix::zeros(n * n, n * n);
    for j in 0..n {
        for i in 0..n {
            let col = j * n + i;
            let mut acc2 = ComplexVector::zeros(n * n);
            let mut acc3 = ComplexVector::zeros(n * n);
            for r in 0..n {
                for s in 0..n {
                    let cb = db[(r * n + s, j)];
                    if cb != ZERO {
                        let fs = crate::numerics::basis_vector(n, s);
                        let lx = actions.lambda_a[r].column(i).into_owned();
                        acc2 += crate::numerics::kron_vec(&fs, &lx) * cb;
                    }
                }
            }
            for p in 0..n {
                for q in 0..n {
                    let ca = da[(p * n + q, i)];
                    if ca != ZERO {
                        let sp = s_inv.column(p).into_owned();
                        let ly = actions.lambda_b(&sp).column(j).into_owned();
                        let eq = crate::numerics::basis_vector(n, q);
                        acc3 += crate::numerics::kron_vec(&ly, &eq) * ca;
                    }
                }
            }
            second.set_column(col, &acc2);
            third.set_column(col, &acc3);
        }
    }
    [first, second, third]
}

struct Entry {
    check: Check,
    error: Error,
}

#[derive(Default)]
pub struct GnsReport {
    entries: Vec<Entry>,
}

impl std::fmt::Debug for GnsReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.entries.iter().map(|e| &e.check)).finish()
    }
}

impl GnsReport {
    fn push(&mut self, id: &str, anchor: &str, residual: f64, tol: f64, error: impl FnOnce(f64) -> Error) {
        self.entries.push(Entry { check: Check::measured(id, anchor, residual, tol), error: error(residual) });
    }

    fn push_result(&mut self, id: &str, anchor: &str, r: Result<f64>, tol: f64, error: impl FnOnce(f64) -> Error) {
        match r {
            Ok(x) => self.push(id, anchor, x, tol, error),
            Err(e) => self.entries.push(Entry { check: Check::failed(id, anchor, &e), error: e }),
        }
    }

    pub fn checks(&self) -> Vec<Check> {
        self.entries.iter().map(|e| e.check.clone()).collect()
    }

    /// The first failing identity, as a typed error.
    pub fn to_result(&self) -> Result<()> {
        match self.entries.iter().find(|e| !e.check.passed()) {
            Some(e) => Err(e.error.clone()),
            None => Ok(()),
        }
    }

    pub fn residual(&self, id: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.check.id == id).and_then(|e| e.check.residual)
    }
}

fn worst<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn worst_span(xs: &[ComplexMatrix], span: &[ComplexMatrix], tol: &Tolerance) -> f64 {
    worst(xs.iter().map(|x| in_span(x, span, tol).residual))
}

fn flow_membership(td: &TomitaData, gens: &[ComplexMatrix], tol: &Tolerance) -> Result<f64> {
    let mut r: f64 = 0.0;
    for &t in &MODULAR_GRID {
        let moved: Vec<ComplexMatrix> = gens.iter().map(|g| td.flow(g, t, tol)).collect::<Result<_>>()?;
        r = r.max(worst_span(&moved, gens, tol));
    }
    Ok(r)
}

fn combine(ops: &[ComplexMatrix], v: &ComplexVector) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(ops[0].nrows(), ops[0].ncols());
    for (op, &x) in ops.iter().zip(v.iter()) {
        if x != ZERO {
            out += op * x;
        }
    }
    out
}

pub fn verify_gns(pair: &DualPair, actions: &ActionOperators, heis: &HeisenbergRep, g: &GnsData) -> GnsReport {
    let a = &pair.a;
    let b = &pair.b;
    let n = a.dim();
    let tol = *a.tolerance();
    let t = tol.abs_tol;
    let mt = tol.membership_tol;
    let id = identity(n);
    let mut rep = GnsReport::default();

    // adjoints
    let star_a = a.algebra().star_matrix().expect("star checked at build");
    let star_b = b.algebra().star_matrix().expect("star checked at build");
    let adj = |ops: &[ComplexMatrix], star: &ComplexMatrix| {
        worst((0..n).map(|i| dist(&combine(ops, &star.column(i).into_owned()), &ops[i].adjoint())))
    };
    let mismatch = |what: &'static str| move |r| Error::RepresentationMismatch { what: what.into(), residual: r };
    rep.push("gns.pi_star", "π(a*) = π(a)* on H", adj(&g.m, star_a), t, mismatch("π on H"));
    rep.push("gns.lambda_star", "λ(b*) = λ(b)* on H", adj(&g.n_hat, star_b), t, mismatch("λ on H"));
    rep.push("gns.pi_hat_star", "π(b*) = π(b)* on Ĥ", adj(&g.m_hat, star_b), t, mismatch("π on Ĥ"));
    rep.push("gns.lambda_hat_star", "λ(a*) = λ(a)* on Ĥ", adj(&g.n, star_a), t, mismatch("λ on Ĥ"));

    // Fourier unitary
    let not_unitary = |what: &'static str| move |r| Error::NotUnitary { what: what.into(), residual: r };
    rep.push("gns.fourier_unitary", "F is unitary from H onto Ĥ", unitarity(&g.fourier), t, |r| Error::NotIsometry {
        what: "F".into(),
        residual: r,
    });
    let fa = worst((0..n).map(|i| dist(&(&g.fourier * &g.m[i] * g.fourier.adjoint()), &g.n[i])));
    let fb = worst((0..n).map(|j| dist(&(&g.fourier * &g.n_hat[j] * g.fourier.adjoint()), &g.m_hat[j])));
    rep.push("gns.fourier_pi", "Fπ(a)F* = λ(a)", fa, t, |r| Error::IntertwiningFailed {
        relation: "Fπ(a)F* = λ(a)".into(),
        residual: r,
    });
    rep.push("gns.fourier_lambda", "Fλ(b)F* = π(b)", fb, t, |r| Error::IntertwiningFailed {
        relation: "Fλ(b)F* = π(b)".into(),
        residual: r,
    });

    // W, Ŵ, U
    rep.push("gns.w_unitary", "W is unitary on H⊗H", unitarity(&g.w), t, not_unitary("W"));
    rep.push("gns.w_adjoint", "W*(η(x)⊗η(x′)) = η(x′₍₁₎x)⊗η(x′₍₂₎)", dist(&g.w.adjoint(), &g.v), t, |r| {
        Error::FormulaMismatch { what: "W*".into(), residual: r }
    });
    rep.push("gns.w_hat_unitary", "Ŵ is unitary on Ĥ⊗Ĥ", unitarity(&g.w_hat), t, not_unitary("Ŵ"));
    rep.push("gns.u_unitary", "U is unitary on Ĥ⊗H", unitarity(&g.u), t, not_unitary("U"));
    let forms = u_forms(pair, actions).map(|x| tensor_op(&g.h_hat, &g.h, &x));
    let u_formula = worst(forms.iter().map(|f| dist(f, &g.u)));
    let u_pairwise = dist(&forms[0], &forms[1]).max(dist(&forms[1], &forms[2])).max(dist(&forms[0], &forms[2]));
    rep.push(
        "gns.u_formula",
        "U(η̂(y)⊗η(x)) = ⟨S⁻¹(x₍₁₎), y₍₁₎⟩η̂(y₍₂₎)⊗η(x₍₂₎)",
        u_formula,
        t,
        |r| Error::FormulaMismatch { what: "U".into(), residual: r },
    );
    rep.push("gns.u_forms", "the three expressions for U agree", u_pairwise, t, |r| Error::FormulaMismatch {
        what: "U expressions".into(),
        residual: r,
    });
    let ff = kron(&g.fourier, &g.fourier);
    let sigma = flip(n, n);
    let carried = &ff * &g.w * ff.adjoint();
    rep.push(
        "gns.w_hat_relation",
        "(F⊗F)W(F*⊗F*) = ΣŴ*Σ",
        dist(&carried, &(&sigma * g.w_hat.adjoint() * &sigma)),
        t,
        |r| Error::FormulaMismatch { what: "ΣŴ*Σ".into(), residual: r },
    );

    // modular data on H and Ĥ
    for (hat, td, gens, space, integrals) in [
        (false, &g.tomita, &g.m, &g.h, &pair.a_integrals),
        (true, &g.tomita_hat, &g.m_hat, &g.h_hat, &pair.b_integrals),
    ] {
        let (suffix, sp) = if hat { ("_hat", "Ĥ") } else { ("", "H") };
        let id_ = |s: &str| format!("gns.{s}{suffix}");
        rep.push_result(&id_("polar"), &format!("η(x*) = J∇^{{1/2}}η(x) on {sp}"), td.reconstruction_residual(&tol), t, |r| {
            Error::ModularMismatch { residual: r }
        });
        let inv = td.j.involution_residual().max(td.j.antiunitarity_residual());
        rep.push(&id_("j_involution"), &format!("J is an antiunitary involution on {sp}"), inv, t, |r| {
            Error::ModularMismatch { residual: r }
        });
        let commutant = commutant_basis(gens);
        let jmj: Vec<ComplexMatrix> = gens.iter().map(|x| td.j.sandwich(x)).collect();
        rep.push(&id_("commutant"), &format!("JMJ ⊆ M′ on {sp}"), worst_span(&jmj, &commutant, &tol), mt, |r| {
            Error::CommutantFailed { residual: r }
        });
        rep.push_result(
            &id_("modular_invariance"),
            &format!("∇^{{it}}M∇^{{-it}} = M on {sp}"),
            flow_membership(td, gens, &tol),
            mt,
            |r| Error::MembershipFailed { what: format!("∇^it M ∇^-it on {sp}"), residual: r },
        );
        let sig = worst((0..n).map(|i| {
            let moved = &td.nabla * &gens[i] * &td.nabla_inv;
            let target = space.op(&combine_coords(a_or_b(pair, hat), &integrals.sigma.column(i).into_owned()));
            dist(&moved, &target)
        }));
        rep.push(&id_("sigma"), &format!("∇π(a)∇⁻¹ = π(σ(a)) on {sp}"), sig, t, |r| Error::ModularMismatch { residual: r });
    }

    // f-GNS
    let f_gram = heis.f_gram().map(|fg| dist(&fg, &kron(&g.h_hat.gram, &g.h.gram)));
    rep.push_result("gns.f_inner", "f((yx)*(y′x′)) = φ(y*y′)φ(x*x′)", f_gram, t, |r| Error::RepresentationMismatch {
        what: "f-GNS inner product".into(),
        residual: r,
    });
    let pi_f_u = worst((0..n).map(|i| dist(&g.pi_f_a[i], &(g.u.adjoint() * kron(&id, &g.m[i]) * &g.u))));
    rep.push("gns.pi_f_unitary", "π_f(a) = U*(1⊗π(a))U", pi_f_u, t, mismatch("π_f(a)"));
    let (act_a, act_b) = f_action_residuals(heis, actions, g);
    rep.push("gns.pi_f_a", "π_f(a)η_f(z) = η_f(az) with π_f(a) = λ(a₍₁₎)⊗π(a₍₂₎)", act_a, t, mismatch("π_f(a)"));
    rep.push("gns.pi_f_b", "π_f(b)η_f(z) = η_f(bz) with π_f(b) = π(b)⊗1", act_b, t, mismatch("π_f(b)"));
    let unit = a.unit();
    rep.push(
        "gns.pi_f_unit",
        "π_f(1) = 1",
        dist(&combine(&g.pi_f_a, unit), &identity(n * n)),
        t,
        mismatch("π_f(1)"),
    );

    // modular data of f
    let fac = |identity: &'static str| move |r| Error::ModularFactorizationFailed { identity, residual: r };
    let tf = &g.tomita_f;
    rep.push_result("gns.f_polar", "η_f(z*) = J_f∇_f^{1/2}η_f(z)", tf.reconstruction_residual(&tol), t, fac("T_f = J_f∇_f^{1/2}"));
    let jj = g.tomita_hat.j.tensor(&g.tomita.j);
    let left = jj.after_linear(&g.u);
    let right = jj.then_linear(&g.u.adjoint());
    rep.push("gns.j_f_left", "J_f = (Ĵ⊗J)U", dist(&tf.j.matrix, &left.matrix), mt, fac("J_f = (Ĵ⊗J)U"));
    rep.push("gns.j_f_right", "J_f = U*(Ĵ⊗J)", dist(&tf.j.matrix, &right.matrix), mt, fac("J_f = U*(Ĵ⊗J)"));
    let nabla_prod = kron(&g.tomita_hat.nabla, &g.tomita.nabla);
    rep.push("gns.nabla_f", "∇_f = ∇̂⊗∇", dist(&tf.nabla, &nabla_prod), mt, fac("∇_f = ∇̂⊗∇"));
    rep.push(
        "gns.u_nabla_f",
        "U commutes with ∇_f",
        dist(&(&g.u * &tf.nabla), &(&tf.nabla * &g.u)),
        mt,
        fac("[U, ∇_f] = 0"),
    );

    // N and N̂ under the modular groups and conjugations
    let membership = |what: &'static str| move |r| Error::MembershipFailed { what: what.into(), residual: r };
    rep.push_result(
        "gns.n_modular",
        "∇̂^{it}N∇̂^{-it} = N",
        flow_membership(&g.tomita_hat, &g.n, &tol),
        mt,
        membership("∇̂^it N ∇̂^-it"),
    );
    rep.push_result(
        "gns.n_hat_modular",
        "∇^{it}N̂∇^{-it} = N̂",
        flow_membership(&g.tomita, &g.n_hat, &tol),
        mt,
        membership("∇^it N̂ ∇^-it"),
    );
    let jn: Vec<ComplexMatrix> = g.n.iter().map(|x| g.tomita_hat.j.sandwich(&x.adjoint())).collect();
    rep.push("gns.n_conjugation", "Ĵλ(a)*Ĵ ∈ N", worst_span(&jn, &g.n, &tol), mt, membership("ĴNĴ"));
    let jn_hat: Vec<ComplexMatrix> = g.n_hat.iter().map(|x| g.tomita.j.sandwich(&x.adjoint())).collect();
    rep.push("gns.n_hat_conjugation", "Jλ(b)*J ∈ N̂", worst_span(&jn_hat, &g.n_hat, &tol), mt, membership("JN̂J"));

    // λ(S(a)) = Ĵ(∇̂^{1/2}λ(a)∇̂^{-1/2})*Ĵ and its mirror
    let antipode_a = worst((0..n).map(|i| {
        let lhs = combine(&g.n, &a.antipode().column(i).into_owned());
        let tau = &g.tomita_hat.nabla_half * &g.n[i] * &g.tomita_hat.nabla_neg_half;
        dist(&lhs, &g.tomita_hat.j.sandwich(&tau.adjoint()))
    }));
    let antipode_b = worst((0..n).map(|j| {
        let lhs = combine(&g.n_hat, &b.antipode().column(j).into_owned());
        let tau = &g.tomita.nabla_half * &g.n_hat[j] * &g.tomita.nabla_neg_half;
        dist(&lhs, &g.tomita.j.sandwich(&tau.adjoint()))
    }));
    rep.push("gns.antipode_a", "λ(S(a)) = Ĵ(∇̂^{1/2}λ(a)∇̂^{-1/2})*Ĵ", antipode_a, mt, |r| {
        Error::AntipodeImplementationFailed { what: "λ(S(a))".into(), residual: r }
    });
    rep.push("gns.antipode_b", "λ(S(b)) = J(∇^{1/2}λ(b)∇^{-1/2})*J", antipode_b, mt, |r| {
        Error::AntipodeImplementationFailed { what: "λ(S(b))".into(), residual: r }
    });

    let nabla_trivial = dist(&g.tomita.nabla, &id).max(dist(&g.tomita_hat.nabla, &id));
    rep.entries.push(Entry {
        check: Check::verdict(
            "gns.nabla_observed",
            "∇ and ∇̂ observed",
            true,
            format!("‖∇ − 1‖ and ‖∇̂ − 1‖ at most {nabla_trivial:.3e}"),
        ),
        error: Error::ModularMismatch { residual: nabla_trivial },
    });
    rep
}

fn a_or_b(pair: &DualPair, hat: bool) -> &HopfData {
    if hat {
        &pair.b
    } else {
        &pair.a
    }
}

fn combine_coords(h: &HopfData, v: &ComplexVector) -> ComplexMatrix {
    h.algebra().left_mult(v)
}

/// Worst `‖π_f(z)η_f(Z_k) − η_f(zZ_k)‖` for `z` ranging over basis elements
/// of `A` and of `B`.
fn f_action_residuals(heis: &HeisenbergRep, actions: &ActionOperators, g: &GnsData) -> (f64, f64) {
    let frame_inv = kron(&g.h_hat.frame_inv, &g.h.frame_inv);
    let mut ra: f64 = 0.0;
    let mut rb: f64 = 0.0;
    for (k, z) in heis.basis.iter().enumerate() {
        let eta = frame_inv.column(k).into_owned();
        for i in 0..actions.pi_a.len() {
            let target = &frame_inv * heis.coordinates(&(&actions.pi_a[i] * z));
            ra = ra.max(crate::numerics::dist_vec(&(&g.pi_f_a[i] * &eta), &target));
            let target = &frame_inv * heis.coordinates(&(&actions.lambda_a[i] * z));
            rb = rb.max(crate::numerics::dist_vec(&(&g.pi_f_b[i] * &eta), &target));
        }
    }
    (ra, rb)
}

/// Build and verify the whole layer for a pair; `Err` when no GNS space exists.
pub fn gns_layer(
    pair: &DualPair,
    maps: &FourierMaps,
    actions: &ActionOperators,
    regular: &RegularRep,
    heis: &HeisenbergRep,
) -> Result<(GnsData, GnsReport)> {
    let g = GnsData::build(pair, maps, actions, regular, heis)?;
    let rep = verify_gns(pair, actions, heis, &g);
    Ok((g, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::Fourier;
    use crate::presets;

    fn layer(name: &str) -> (DualPair, GnsData, GnsReport) {
        let (a, d) = presets::finite_preset(name).unwrap();
        let h = HopfData::new(a, d, &Tolerance::default()).unwrap();
        let i = IntegralData::solve(&h).unwrap();
        let pair = DualPair::build(h, i).unwrap();
        let f = Fourier::new(&pair).unwrap();
        let reg = RegularRep::new(&pair).unwrap();
        let heis = HeisenbergRep::new(&pair, &f.actions).unwrap();
        let (g, rep) = gns_layer(&pair, &f.maps, &f.actions, &reg, &heis).unwrap();
        (pair, g, rep)
    }

    #[test]
    fn star_presets_pass() {
        for name in ["k_z2", "k_z4", "k_s3", "group_alg_z2", "group_alg_s3"] {
            let (_, _, rep) = layer(name);
            for ch in rep.checks() {
                assert!(ch.passed(), "{name}: {ch:?}");
            }
            assert!(rep.to_result().is_ok());
        }
    }

    #[test]
    fn residuals_are_measured() {
        let (_, _, rep) = layer("group_alg_s3");
        for ch in rep.checks() {
            eprintln!("{} {:?}", ch.id, ch.residual);
        }
        assert!(rep.residual("gns.w_hat_relation").is_some());
    }

    #[test]
    fn k_s3_gram_is_identity() {
        let (_, g, _) = layer("k_s3");
        assert!(dist(&g.h.gram, &identity(6)) < 1e-12);
    }

    #[test]
    fn k_z2_w_is_permutation() {
        let (_, g, _) = layer("k_z2");
        assert!(g.w.iter().all(|z| z.im.abs() < 1e-14 && (z.re.abs() < 1e-14 || (z.re - 1.0).abs() < 1e-14)));
        assert!(unitarity(&g.w) < 1e-14);
    }

    #[test]
    fn tracial_presets_have_trivial_nabla() {
        for name in ["k_s3", "group_alg_s3"] {
            let (_, g, _) = layer(name);
            assert!(dist(&g.tomita.nabla, &identity(6)) < 1e-10);
            assert!(g.tomita.j.involution_residual() < 1e-12);
        }
    }

    #[test]
    fn sweedler_has_no_gns_space() {
        let (a, d) = presets::sweedler();
        let h = HopfData::new(a, d, &Tolerance::default()).unwrap();
        let i = IntegralData::solve(&h).unwrap();
        assert!(matches!(GnsSpace::build(&h, &i, "A"), Err(Error::MissingStar)));
    }

    #[test]
    fn non_positive_functional_rejected() {
        let (a, d) = presets::finite_preset("k_z2").unwrap();
        let h = HopfData::new(a, d, &Tolerance::default()).unwrap();
        let phi = ComplexVector::from_vec(vec![c(1.0, 0.0), c(-1.0, 0.0)]);
        let i = IntegralData::from_functionals(&h, phi.clone(), phi).unwrap();
        assert!(matches!(GnsSpace::build(&h, &i, "A"), Err(Error::NotPositive { .. })));
    }
}
