//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use aqg_cli::pipeline::{backend_agreement, load, run_pipeline, Input, PipelineOptions, Source, Stage};
use aqg_cli::Report;
use aqg_core::discrete::{sample_integer_functions, tensor3};
use aqg_core::gns::gns_layer;
use aqg_core::heisenberg::verify_heisenberg;
use aqg_core::io::{self, serialize, AlgebraFile, Preset};
use aqg_core::numerics::{dist, flip, identity, kron};
use aqg_core::presets::finite_preset;
use aqg_core::regular::{trace_formula, verify_regular, TraceOutcome};
use aqg_core::{
    ComplexMatrix, ComplexVector, DiscreteQuantumGroup, DualPair, FiniteGroup, Fourier, HeisenbergRep, HopfData,
    IntegralData, Integers, RegularRep, Status, Tolerance,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FINITE: [&str; 6] = ["k_z2", "k_z4", "k_s3", "group_alg_z2", "group_alg_s3", "sweedler"];
const STARRED: [&str; 5] = ["k_z2", "k_z4", "k_s3", "group_alg_z2", "group_alg_s3"];

type Outcome = Result<String, String>;

fn within(what: &str, residual: f64, tol: f64) -> Result<(), String> {
    if residual.is_finite() && residual <= tol {
        Ok(())
    } else {
        Err(format!("{what}: residual {residual:.3e} exceeds {tol:.0e}"))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hopf(name: &str) -> Result<HopfData, String> {
    let (a, d) = finite_preset(name).ok_or_else(|| format!("no preset {name}"))?;
    HopfData::new(a, d, &Tolerance::default()).map_err(|e| format!("{name}: {e}"))
}

fn pair(name: &str) -> Result<DualPair, String> {
    let h = hopf(name)?;
    let int = IntegralData::solve(&h).map_err(|e| format!("{name}: {e}"))?;
    DualPair::build(h, int).map_err(|e| format!("{name}: {e}"))
}

fn fourier(name: &str) -> Result<(DualPair, Fourier), String> {
    let p = pair(name)?;
    let f = Fourier::new(&p).map_err(|e| format!("{name}: {e}"))?;
    Ok((p, f))
}

fn preset_file(name: &str) -> AlgebraFile {
    match io::preset(name).expect("known preset") {
        Preset::Finite(f) => f,
        Preset::IntegersDiscrete => unreachable!("{name} is finite"),
    }
}

/// k_z2 with the coefficient of δ_1⊗δ_1 in Δ(δ_0) doubled.
fn broken_k_z2() -> AlgebraFile {
    let mut f = preset_file("k_z2");
    f.name = "k_z2_broken".into();
    let entry = f.comult.iter_mut().find(|e| (e.0, e.1, e.2) == (0, 1, 1)).expect("Δ(δ_0) has δ_1⊗δ_1");
    entry.3 = 2.0;
    f
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn max_residual(report: &Report, stages: &[&str]) -> f64 {
    report
        .stages
        .iter()
        .filter(|s| stages.contains(&s.stage.as_str()))
        .flat_map(|s| s.checks.iter())
        .filter_map(|c| c.residual)
        .fold(0.0, f64::max)
}

fn criterion_axioms() -> Outcome {
    let opts = PipelineOptions { stages: vec![Stage::Validate, Stage::Hopf], ..Default::default() };
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for name in FINITE.iter().chain(["z_discrete"].iter()) {
        let input = load(&Source::Preset(name.to_string())).map_err(|e| e.to_string())?;
        let rep = run_pipeline(&input, &opts);
        let failures: Vec<_> = rep.failures().iter().map(|c| c.id.clone()).collect();
        ensure(failures.is_empty(), || format!("{name}: failed {failures:?}"))?;
        let r = max_residual(&rep, &["validate", "hopf", "discrete"]);
        within(name, r, 1e-9)?;
        worst = worst.max(r);
        count += rep.checks().filter(|c| c.status == Status::Pass).count();
    }
    let broken = broken_k_z2().to_presentation().map_err(|e| e.to_string())?;
    let input = Input::Finite { label: "broken".into(), presentation: Box::new(broken) };
    let rep = run_pipeline(&input, &opts);
    let named = rep.find("hopf.coproduct_homomorphism").map(|c| c.status);
    ensure(named == Some(Status::Fail), || format!("mutated coproduct: homomorphism check is {named:?}"))?;
    ensure(!rep.passed(), || "mutated coproduct passed".into())?;
    Ok(format!("7 presets, {count} checks, worst {worst:.1e}; mutated coproduct fails hopf.coproduct_homomorphism"))
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(m: &mut [Vec<f64>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())) else { break };
        if m[p][col].abs() < 1e-12 {
            continue;
        }
        m.swap(r, p);
        let lead = m[r][col];
        for x in m[r].iter_mut() {
            *x /= lead;
        }
        for i in 0..rows {
            if i != r && m[i][col] != 0.0 {
                let f = m[i][col];
                for j in 0..cols {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Null space of a real matrix, one vector per free column.
fn kernel(mut m: Vec<Vec<f64>>, cols: usize) -> Vec<Vec<f64>> {
    let pivots = rref(&mut m);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0.0; cols];
            v[free] = 1.0;
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -m[row][free];
            }
            v
        })
        .collect()
}

/// Hand-written Sweedler algebra on 1, g, x, gx.
mod h4 {
    pub type El = [f64; 4];

    /// e_i e_j as (index, sign), or None for zero.
    pub fn mul_basis(i: usize, j: usize) -> Option<(usize, f64)> {
        const T: [[Option<(usize, f64)>; 4]; 4] = [
            [Some((0, 1.0)), Some((1, 1.0)), Some((2, 1.0)), Some((3, 1.0))],
            [Some((1, 1.0)), Some((0, 1.0)), Some((3, 1.0)), Some((2, 1.0))],
            [Some((2, 1.0)), Some((3, -1.0)), None, None],
            [Some((3, 1.0)), Some((2, -1.0)), None, None],
        ];
        T[i][j]
    }

    /// Δ(e_i) as (j, k, coefficient) terms.
    pub fn delta(i: usize) -> Vec<(usize, usize, f64)> {
        match i {
            0 => vec![(0, 0, 1.0)],
            1 => vec![(1, 1, 1.0)],
            2 => vec![(2, 0, 1.0), (1, 2, 1.0)],
            _ => vec![(3, 1, 1.0), (0, 3, 1.0)],
        }
    }

    pub fn antipode(i: usize) -> El {
        match i {
            0 => [1.0, 0.0, 0.0, 0.0],
            1 => [0.0, 1.0, 0.0, 0.0],
            2 => [0.0, 0.0, 0.0, -1.0],
            _ => [0.0, 0.0, 1.0, 0.0],
        }
    }

    pub fn apply(f: &El, x: &El) -> f64 {
        f.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn basis_product(i: usize, j: usize) -> El {
        let mut out = [0.0; 4];
        if let Some((k, s)) = mul_basis(i, j) {
            out[k] = s;
        }
        out
    }
}

fn criterion_sweedler_oracle() -> Outcome {
    use h4::*;
    // left: Σ c φ_k e_j = φ_i·1; right: Σ c φ_j e_k = φ_i·1
    let invariance = |left: bool| {
        let mut rows = Vec::new();
        for i in 0..4 {
            for m in 0..4 {
                let mut row = vec![0.0; 4];
                for (j, k, cf) in delta(i) {
                    let (out, var) = if left { (j, k) } else { (k, j) };
                    if out == m {
                        row[var] += cf;
                    }
                }
                if m == 0 {
                    row[i] -= 1.0;
                }
                rows.push(row);
            }
        }
        kernel(rows, 4)
    };
    let phi_k = invariance(true);
    let psi_k = invariance(false);
    ensure(phi_k.len() == 1 && psi_k.len() == 1, || "integrals are not unique".into())?;
    let phi: El = phi_k[0].clone().try_into().expect("4 entries");
    let psi: El = psi_k[0].clone().try_into().expect("4 entries");
    // δ from (φ⊗ι)Δ(a) = φ(a)δ at a = gx
    let mut delta_o = [0.0; 4];
    for (j, k, cf) in delta(3) {
        delta_o[k] += cf * phi[j] / phi[3];
    }
    // σ from φ(e_a e_b) = Σ_k s_k φ(e_b e_k)
    let mut sigma = [[0.0; 4]; 4];
    for (a, col) in sigma.iter_mut().enumerate() {
        let rows: Vec<Vec<f64>> = (0..4)
            .map(|b| {
                let mut row: Vec<f64> = (0..4).map(|k| apply(&phi, &basis_product(b, k))).collect();
                row.push(apply(&phi, &basis_product(a, b)));
                row
            })
            .collect();
        let mut aug = rows;
        let pivots = rref(&mut aug);
        ensure(pivots == [0, 1, 2, 3], || "φ is degenerate".into())?;
        for (k, entry) in col.iter_mut().enumerate() {
            *entry = aug[k][4];
        }
    }
    // ν from φ(S²(gx)) = νφ(gx)
    let s_gx = antipode(3);
    let mut s2_gx = [0.0; 4];
    for (i, &w) in s_gx.iter().enumerate() {
        for (k, v) in antipode(i).iter().enumerate() {
            s2_gx[k] += w * v;
        }
    }
    let nu = apply(&phi, &s2_gx) / phi[3];

    // the hand-derived values
    let support = |v: &El| (0..4).filter(|&i| v[i].abs() > 1e-12).collect::<Vec<_>>();
    ensure(support(&phi) == [3], || format!("oracle φ = {phi:?}"))?;
    ensure(support(&psi) == [2], || format!("oracle ψ = {psi:?}"))?;
    ensure(delta_o == [0.0, 1.0, 0.0, 0.0], || format!("oracle δ = {delta_o:?}"))?;
    ensure(nu == -1.0, || format!("oracle ν = {nu}"))?;
    ensure(sigma[1] == [0.0, -1.0, 0.0, 0.0] && sigma[2] == [0.0, 0.0, -1.0, 0.0], || "oracle σ".into())?;

    // against the solver
    let h = hopf("sweedler")?;
    ensure(h.algebra().labels() == ["1", "g", "x", "gx"], || "basis order".into())?;
    let int = IntegralData::solve(&h).map_err(|e| e.to_string())?;
    let up_to_scale = |lib: &ComplexVector, o: &El, what: &str| {
        let k = (0..4).max_by(|&a, &b| o[a].abs().total_cmp(&o[b].abs())).expect("nonempty");
        let s = lib[k] / o[k];
        let r = (0..4).map(|i| (lib[i] - s * o[i]).norm()).fold(0.0, f64::max);
        within(what, r, 1e-10)
    };
    up_to_scale(&int.phi, &phi, "φ")?;
    up_to_scale(&int.psi, &psi, "ψ")?;
    let exact = |lib: &ComplexVector, o: &El| (0..4).map(|i| (lib[i] - c(o[i])).norm()).fold(0.0, f64::max);
    within("δ", exact(&int.delta, &delta_o), 1e-10)?;
    within("ν", (int.nu - c(nu)).norm(), 1e-10)?;
    for (a, col) in sigma.iter().enumerate() {
        within("σ", exact(&int.sigma.column(a).into_owned(), col), 1e-10)?;
    }
    Ok("φ ∝ gx*, ψ ∝ x*, δ = g, ν = −1, σ(g) = −g, σ(x) = −x; solver agrees to 1e-10".into())
}

fn criterion_duality() -> Outcome {
    let mut worst: f64 = 0.0;
    for name in ["k_z2", "k_s3", "group_alg_s3", "sweedler"] {
        let p = pair(name)?;
        let n = p.a.dim();
        let bd = p.bidual().map_err(|e| format!("{name}: {e}"))?;
        let res = bd.residuals(&p.a);
        ensure(res.invertible, || format!("{name}: evaluation map not invertible"))?;
        // structure constants of the bidual pulled back to A
        let x = &bd.map;
        let x_inv = x.clone().try_inverse().ok_or_else(|| format!("{name}: singular evaluation map"))?;
        let alg_a = p.a.algebra();
        let alg_c = bd.pair.b.algebra();
        let mut sc: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let prod = &x_inv * alg_c.product(&x.column(i).into_owned(), &x.column(j).into_owned());
                for k in 0..n {
                    sc = sc.max((prod[k] - alg_a.structure_constant(i, j, k)).norm());
                }
            }
        }
        within(&format!("{name} bidual structure constants"), sc.max(res.worst()), 1e-9)?;
        // ⟨S(a), b⟩ = ⟨a, S_B⁻¹(b)⟩ on basis elements
        let mut pr: f64 = 0.0;
        for i in 0..n {
            let a = alg_a.basis(i);
            let sa = p.a.antipode() * &a;
            for j in 0..n {
                let b = p.b.algebra().basis(j);
                let sb = p.b.antipode_inv() * &b;
                pr = pr.max((p.pair(&sa, &b) - p.pair(&a, &sb)).norm());
            }
        }
        within(&format!("{name} antipode pairing"), pr, 1e-9)?;
        worst = worst.max(sc).max(res.worst()).max(pr);
    }
    Ok(format!("biduality and ⟨S(a),b⟩ = ⟨a,S_B⁻¹(b)⟩ on 4 presets, worst {worst:.1e}"))
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> ComplexVector {
    ComplexVector::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn criterion_plancherel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for name in STARRED {
        let (p, f) = fourier(name)?;
        let (alg_a, alg_b) = (p.a.algebra(), p.b.algebra());
        for _ in 0..100 {
            let a = random_vector(&mut rng, p.a.dim());
            let b = f.maps.apply(&a);
            let lhs = p.b_integrals.phi.dot(&alg_b.product(&alg_b.star(&b).expect("star"), &b));
            let rhs = p.a_integrals.phi.dot(&alg_a.product(&alg_a.star(&a).expect("star"), &a));
            let r = (lhs - rhs).norm() / rhs.norm();
            within(&format!("{name} Plancherel"), r, 1e-9)?;
            worst = worst.max(r);
        }
    }
    Ok(format!("100 random vectors on each of 5 presets, worst relative {worst:.1e}"))
}

fn criterion_dft() -> Outcome {
    let g = FiniteGroup::cyclic(4);
    let n = g.order();
    let omega = Complex64::new(0.0, -2.0 * std::f64::consts::PI / n as f64).exp();
    let roots: Vec<Complex64> = (0..n).map(|k| omega.powu(k as u32)).collect();
    // every map ℤ₄ → {4th roots of unity} that is multiplicative
    let mut chars: Vec<Vec<Complex64>> = Vec::new();
    for code in 0..n.pow(n as u32) {
        let chi: Vec<Complex64> = (0..n).map(|p| roots[(code / n.pow(p as u32)) % n]).collect();
        let hom = (0..n).all(|p| (0..n).all(|q| (chi[g.mul(p, q)] - chi[p] * chi[q]).norm() < 1e-12));
        if hom {
            chars.push(chi);
        }
    }
    ensure(chars.len() == n, || format!("found {} characters", chars.len()))?;
    // order by χ(1) = ω^k
    chars.sort_by_key(|chi| roots.iter().position(|r| (r - chi[1]).norm() < 1e-12).expect("root"));

    let (p, f) = fourier("k_z4")?;
    ensure(p.a.algebra().labels().len() == n, || "dimension".into())?;
    let m = ComplexMatrix::from_fn(n, n, |row, k| f.maps.apply(&ComplexVector::from_vec(chars[k].clone()))[row]);
    let dft = ComplexMatrix::from_fn(n, n, |row, k| omega.powu((row * k) as u32));
    let scale = dft.iter().zip(m.iter()).map(|(d, x)| d.conj() * x).sum::<Complex64>() / dft.norm_squared();
    ensure(scale.norm() > 1e-6, || "F vanishes on characters".into())?;
    let r = (&m - &dft * scale).iter().map(|z| z.norm()).fold(0.0, f64::max);
    within("K(ℤ₄) Fourier vs DFT", r, 1e-9)?;
    Ok(format!("F in the character basis = {scale:.3}·DFT₄, entrywise {r:.1e}"))
}

fn criterion_pentagon() -> Outcome {
    let mut worst: f64 = 0.0;
    for name in FINITE {
        let p = pair(name)?;
        let n = p.a.dim();
        let w = RegularRep::new(&p).map_err(|e| format!("{name}: {e}"))?.w;
        let id = identity(n);
        let s23 = kron(&id, &flip(n, n));
        let w12 = kron(&w, &id);
        let w23 = kron(&id, &w);
        let w13 = &s23 * &w12 * &s23;
        let rhs = &w23 * &w12;
        let r = dist(&(&w12 * &w13 * &w23), &rhs) / rhs.norm();
        within(&format!("{name} pentagon"), r, 1e-9)?;
        worst = worst.max(r);
    }
    let q = DiscreteQuantumGroup::new(Integers);
    let samples = sample_integer_functions(6);
    let mut triples = 0;
    for f in &samples {
        for g in &samples {
            for h in &samples {
                let (lhs, rhs) = q.pentagon_sides(&tensor3(f, g, h));
                ensure(lhs.support() == rhs.support(), || "ℤ pentagon: supports differ".into())?;
                ensure(lhs == rhs, || format!("ℤ pentagon: coefficients differ by {:e}", lhs.distance(&rhs)))?;
                triples += 1;
            }
        }
    }
    Ok(format!("6 finite presets worst {worst:.1e}; {triples} ℤ triples exactly equal"))
}

fn criterion_multiplier() -> Outcome {
    let mut worst: f64 = 0.0;
    for name in FINITE {
        let (p, f) = fourier(name)?;
        let reg = RegularRep::new(&p).map_err(|e| format!("{name}: {e}"))?;
        let rep = verify_regular(&p, &reg, &f.maps, &f.actions);
        for (what, r) in [
            ("(Δ⊗ι)W = W₁₃W₂₃", rep.coproduct_identity),
            ("Δ(a) = W⁻¹(1⊗a)W", rep.implements_coproduct),
            ("W⁻¹ = (S⊗ι)W", rep.antipode_left),
            ("W⁻¹ = (ι⊗S⁻¹)W", rep.antipode_right),
        ] {
            within(&format!("{name} {what}"), r, 1e-9)?;
            worst = worst.max(r);
        }
        // Δ(a) = W⁻¹(1⊗a)W again, with W inverted here from V(e_i⊗e_l) = Δ(e_l)(e_i⊗1)
        let n = p.a.dim();
        let alg = p.a.algebra();
        let d = p.a.coproduct();
        let mut v = ComplexMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for l in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let cf = d[(j * n + k, l)];
                        for m in 0..n {
                            v[(m * n + k, i * n + l)] += cf * alg.structure_constant(j, i, m);
                        }
                    }
                }
            }
        }
        let w = v.clone().try_inverse().ok_or_else(|| format!("{name}: V singular"))?;
        for a in 0..n {
            // left multiplication by Δ(e_a) on A⊗A
            let mut delta = ComplexMatrix::zeros(n * n, n * n);
            for j in 0..n {
                for k in 0..n {
                    let cf = d[(j * n + k, a)];
                    if cf.norm() > 0.0 {
                        delta += kron(alg.left_basis(j), alg.left_basis(k)) * cf;
                    }
                }
            }
            let r = dist(&(&v * kron(&identity(n), alg.left_basis(a)) * &w), &delta);
            within(&format!("{name} independent Δ(a) = W⁻¹(1⊗a)W"), r, 1e-9)?;
            worst = worst.max(r);
        }
    }
    Ok(format!("four W identities on 6 presets, worst {worst:.1e}"))
}

fn criterion_trace() -> Outcome {
    let mut out = Vec::new();
    for (name, expected) in [("k_z2", 1.0), ("k_s3", 1.0), ("group_alg_s3", 1.0 / 6.0)] {
        let p = pair(name)?;
        // k from traces of left multiplication, computed here
        let alg = p.a.algebra();
        let n = p.a.dim();
        let traces: Vec<Complex64> = (0..n).map(|i| alg.left_basis(i).trace()).collect();
        let unit = p.a.unit();
        let tr_one: Complex64 = traces.iter().zip(unit.iter()).map(|(t, u)| t * u).sum();
        let k_oracle = p.a_integrals.phi.dot(unit) / tr_one;
        let spread = (0..n).map(|i| (p.a_integrals.phi[i] - k_oracle * traces[i]).norm()).fold(0.0, f64::max);
        within(&format!("{name} φ = k·tr"), spread, 1e-9)?;
        within(&format!("{name} oracle k"), (k_oracle - c(expected)).norm(), 1e-9)?;
        match trace_formula(&p).map_err(|e| format!("{name}: {e}"))? {
            TraceOutcome::Holds { k, .. } => within(&format!("{name} k"), (k - c(expected)).norm(), 1e-9)?,
            other => return Err(format!("{name}: {other:?}")),
        }
        out.push(format!("{name} k = {}", if expected == 1.0 { "1" } else { "1/6" }));
    }
    match trace_formula(&pair("sweedler")?) {
        Ok(TraceOutcome::SkippedS2 { residual }) => {
            ensure(residual > 1.0, || format!("‖S² − ι‖ = {residual}"))?;
        }
        other => return Err(format!("sweedler: {other:?}")),
    }
    out.push("sweedler SkippedS2".into());
    Ok(out.join(", "))
}

fn criterion_heisenberg() -> Outcome {
    let mut worst: f64 = 0.0;
    for name in FINITE {
        let (p, f) = fourier(name)?;
        let n = p.a.dim();
        let (rep, heis) = verify_heisenberg(&p, &f.actions);
        ensure(heis.is_some(), || format!("{name}: no representation"))?;
        within(&format!("{name} commutation relation"), rep.relation, 1e-9)?;
        ensure(rep.span_dimension == n * n, || format!("{name}: span {} ≠ {}", rep.span_dimension, n * n))?;
        worst = worst.max(rep.relation);
        if p.a.algebra().has_star() {
            let min = rep.f_gram_min.ok_or_else(|| format!("{name}: no Gram"))?;
            ensure(min >= -1e-9, || format!("{name}: f Gram min eigenvalue {min:e}"))?;
            let s = rep.f_sandwich.ok_or_else(|| format!("{name}: no sandwich"))?;
            within(&format!("{name} f(a*ba) = φ(b)φ(a*a)"), s, 1e-9)?;
            worst = worst.max(s);
        }
    }
    Ok(format!("relations, span n², f positive on 6 presets, worst {worst:.1e}"))
}

fn unitarity(x: &ComplexMatrix) -> f64 {
    dist(&(x.adjoint() * x), &identity(x.ncols())).max(dist(&(x * x.adjoint()), &identity(x.nrows())))
}

fn criterion_gns() -> Outcome {
    let groups: [(&[&str], f64); 5] = [
        (&["gns.w_unitary", "gns.w_hat_unitary", "gns.u_unitary", "gns.fourier_unitary"], 1e-10),
        (&["gns.j_f_left", "gns.j_f_right", "gns.nabla_f", "gns.u_nabla_f"], 1e-8),
        (&["gns.modular_invariance", "gns.modular_invariance_hat"], 1e-8),
        (
            &[
                "gns.n_modular",
                "gns.n_hat_modular",
                "gns.n_conjugation",
                "gns.n_hat_conjugation",
                "gns.antipode_a",
                "gns.antipode_b",
            ],
            1e-8,
        ),
        (&["gns.sigma", "gns.sigma_hat"], 1e-8),
    ];
    let mut worst: f64 = 0.0;
    for name in STARRED {
        let (p, f) = fourier(name)?;
        let reg = RegularRep::new(&p).map_err(|e| e.to_string())?;
        let heis = HeisenbergRep::new(&p, &f.actions).map_err(|e| e.to_string())?;
        let (g, rep) = gns_layer(&p, &f.maps, &f.actions, &reg, &heis).map_err(|e| format!("{name}: {e}"))?;
        rep.to_result().map_err(|e| format!("{name}: {e}"))?;
        for (ids, tol) in groups {
            for id in ids {
                let r = rep.residual(id).ok_or_else(|| format!("{name}: {id} missing"))?;
                within(&format!("{name} {id}"), r, tol)?;
                worst = worst.max(r);
            }
        }
        for (what, x) in [("W", &g.w), ("Ŵ", &g.w_hat), ("U", &g.u), ("F", &g.fourier)] {
            let r = unitarity(x);
            within(&format!("{name} {what} unitary"), r, 1e-10)?;
            worst = worst.max(r);
        }
    }
    Ok(format!("unitarity, modular identities and flows on 5 presets, worst {worst:.1e}"))
}

fn criterion_backends() -> Outcome {
    let tol = Tolerance::default();
    let mut parts = Vec::new();
    for (name, g) in [("ℤ₂", FiniteGroup::cyclic(2)), ("S₃", FiniteGroup::symmetric3())] {
        let a = backend_agreement(&g, 50, &tol).map_err(|e| e.to_string())?;
        for (what, r) in
            [("F", a.fourier), ("λ", a.lambda), ("π", a.pi), ("φ", a.integral), ("pentagon", a.pentagon)]
        {
            within(&format!("{name} {what}"), r, 1e-10)?;
        }
        parts.push(format!("{name} worst {:.1e}", a.worst()));
    }
    Ok(format!("50 random inputs each: {}", parts.join(", ")))
}

fn aqg(args: &[&str]) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_aqg")).args(args).output().map_err(|e| e.to_string())
}

fn criterion_cli() -> Outcome {
    let first = aqg(&["verify", "--preset", "k_s3", "--stages", "all", "--format", "json"])?;
    let second = aqg(&["verify", "--preset", "k_s3", "--stages", "all", "--format", "json"])?;
    ensure(first.status.code() == Some(0), || format!("k_s3 exited {:?}", first.status.code()))?;
    ensure(first.stdout == second.stdout, || "k_s3 report differs between runs".into())?;
    let text = aqg(&["verify", "--preset", "k_s3"])?;
    let text = String::from_utf8_lossy(&text.stdout);
    ensure(text.contains("  ν = 1\n") && text.contains("  k = 1\n"), || "k_s3 report lacks ν = 1 or k = 1".into())?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("broken.json");
    std::fs::write(&path, serialize(&broken_k_z2())).map_err(|e| e.to_string())?;
    let out = aqg(&["verify", "--file", path.to_str().expect("utf-8 path")])?;
    ensure(out.status.code() == Some(1), || format!("broken file exited {:?}", out.status.code()))?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    let expected = "failed: hopf.coproduct_homomorphism (Δ(ab) = Δ(a)Δ(b))";
    ensure(stderr.contains(expected), || format!("stderr lacks `{expected}`: {stderr}"))?;
    let report: serde_json::Value = serde_json::from_slice(&first.stdout).map_err(|e| e.to_string())?;
    let passed = report["summary"]["passed"].as_u64().unwrap_or(0);
    Ok(format!("k_s3 exit 0, {passed} checks, byte-identical; broken file exit 1 naming Δ(ab) = Δ(a)Δ(b)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("axiom suite", criterion_axioms),
        ("Sweedler integrals and modular data", criterion_sweedler_oracle),
        ("duality", criterion_duality),
        ("Plancherel", criterion_plancherel),
        ("classical Fourier limit", criterion_dft),
        ("pentagon", criterion_pentagon),
        ("multiplier identities for W", criterion_multiplier),
        ("trace formula", criterion_trace),
        ("Heisenberg representation", criterion_heisenberg),
        ("GNS and modular theory", criterion_gns),
        ("backend equivalence", criterion_backends),
        ("CLI contract", criterion_cli),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.2}s): {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
