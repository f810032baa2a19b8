use std::path::{Path, PathBuf};

use aqg_core::check::Check;
use aqg_core::discrete::{verify_integers, BackendAgreement, DiscreteQuantumGroup, Function, StructureBackend};
use aqg_core::fourier::{plancherel_residual, Fourier};
use aqg_core::gns::gns_layer;
use aqg_core::heisenberg::verify_heisenberg;
use aqg_core::hopf::verify_hopf;
use aqg_core::integrals::{fmt_complex, IntegralData};
use aqg_core::io::{self, Preset, Presentation};
use aqg_core::regular::{verify_regular, RegularRep, TraceOutcome};
use aqg_core::numerics::{dist, dist_vec};
use aqg_core::{ComplexVector, DualPair, Error, FiniteGroup, HopfData, Tolerance};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Report;

/// Seed of the random vectors used by sampled checks.
pub const SAMPLE_SEED: u64 = 0x5eed_2024;
pub const PLANCHEREL_SAMPLES: usize = 100;
pub const BACKEND_SAMPLES: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Validate,
    Hopf,
    Integrals,
    Dual,
    Fourier,
    Heisenberg,
    Regular,
    Gns,
}

impl Stage {
    pub const ALL: [Stage; 8] = [
        Stage::Validate,
        Stage::Hopf,
        Stage::Integrals,
        Stage::Dual,
        Stage::Fourier,
        Stage::Heisenberg,
        Stage::Regular,
        Stage::Gns,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Validate => "validate",
            Stage::Hopf => "hopf",
            Stage::Integrals => "integrals",
            Stage::Dual => "dual",
            Stage::Fourier => "fourier",
            Stage::Heisenberg => "heisenberg",
            Stage::Regular => "regular",
            Stage::Gns => "gns",
        }
    }

    /// Comma-separated stage names, or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<Stage>, String> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                return Ok(Stage::ALL.to_vec());
            }
            let stage = Stage::ALL
                .into_iter()
                .find(|st| st.name() == part)
                .ok_or_else(|| format!("unknown stage `{part}`"))?;
            out.push(stage);
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err("no stages given".into());
        }
        Ok(out)
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub stages: Vec<Stage>,
    pub tol: Tolerance,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self { stages: Stage::ALL.to_vec(), tol: Tolerance::default() }
    }
}

impl PipelineOptions {
    /// `--tol X` replaces the absolute and relative tolerances.
    pub fn with_tol(mut self, x: f64) -> Result<Self, Error> {
        let m = self.tol.membership_tol.max(x);
        self.tol = Tolerance::new(x, x, m)?;
        Ok(self)
    }
}

#[derive(Debug, Clone)]
pub enum Source {
    Preset(String),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub enum Input {
    Finite { label: String, presentation: Box<Presentation> },
    Integers { label: String },
}

#[derive(Debug)]
pub enum LoadError {
    Read { path: PathBuf, source: std::io::Error },
    Parse(Error),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Read { path, source } => write!(f, "cannot read {}: {source}", path.display()),
            LoadError::Parse(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LoadError {}

pub fn load(source: &Source) -> Result<Input, LoadError> {
    match source {
        Source::Preset(name) => match io::preset(name).map_err(LoadError::Parse)? {
            Preset::IntegersDiscrete => Ok(Input::Integers { label: format!("preset {name}") }),
            Preset::Finite(file) => Ok(Input::Finite {
                label: format!("preset {name}"),
                presentation: Box::new(file.to_presentation().map_err(LoadError::Parse)?),
            }),
        },
        Source::File(path) => load_file(path),
    }
}

fn load_file(path: &Path) -> Result<Input, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Read { path: path.to_path_buf(), source })?;
    let file = io::parse(&text).map_err(LoadError::Parse)?;
    Ok(Input::Finite {
        label: format!("file {}", file.name),
        presentation: Box::new(file.to_presentation().map_err(LoadError::Parse)?),
    })
}

pub fn run_source(source: &Source, opts: &PipelineOptions) -> Result<Report, LoadError> {
    Ok(run_pipeline(&load(source)?, opts))
}

pub fn run_pipeline(input: &Input, opts: &PipelineOptions) -> Report {
    match input {
        Input::Integers { label } => run_integers(label, opts),
        Input::Finite { label, presentation } => run_finite(label, presentation, opts),
    }
}

fn format_element(labels: &[String], v: &ComplexVector) -> String {
    let mut terms = Vec::new();
    for (label, &z) in labels.iter().zip(v.iter()) {
        if z.norm() <= 1e-12 {
            continue;
        }
        let term = if (z - Complex64::new(1.0, 0.0)).norm() <= 1e-12 {
            label.clone()
        } else if (z + Complex64::new(1.0, 0.0)).norm() <= 1e-12 {
            format!("−{label}")
        } else {
            format!("({})·{label}", fmt_complex(z))
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn skipped(stage: Stage, reason: &str) -> Vec<Check> {
    vec![Check::skipped(format!("{}.stage", stage.name()), format!("{} stage", stage.name()), reason)]
}

/// Lazily built objects shared between stages.
struct State {
    hopf: Option<HopfData>,
    hopf_checks: Vec<Check>,
    integrals: Option<Result<IntegralData, Error>>,
    dual: Option<(Vec<Check>, Option<DualPair>)>,
    fourier: Option<Result<Fourier, Error>>,
}

fn run_finite(label: &str, p: &Presentation, opts: &PipelineOptions) -> Report {
    let tol = opts.tol;
    let mut report = Report::new(label, &tol);
    let alg = &p.algebra;
    let labels = alg.labels().to_vec();
    let wanted = |s: Stage| opts.stages.contains(&s);

    // hopf is the root of every later stage
    let hv = verify_hopf(alg, &p.coproduct, &tol);
    let mut st = State { hopf: hv.data, hopf_checks: hv.checks, integrals: None, dual: None, fourier: None };
    if let Some(h) = &st.hopf {
        if let Some(s) = &p.declared_antipode {
            st.hopf_checks.push(Check::measured(
                "hopf.declared_antipode",
                "the declared antipode equals the derived one",
                dist(s, h.antipode()),
                tol.abs_tol,
            ));
        }
        if let Some(e) = &p.declared_counit {
            st.hopf_checks.push(Check::measured(
                "hopf.declared_counit",
                "the declared counit equals the derived one",
                dist_vec(e, h.counit()),
                tol.abs_tol,
            ));
        }
    }

    for stage in Stage::ALL {
        if stage == Stage::Gns && !alg.has_star() {
            report.push_stage(stage.name(), skipped(stage, "skipped: no star"));
            continue;
        }
        if !wanted(stage) {
            report.push_stage(stage.name(), skipped(stage, "not requested"));
            continue;
        }
        let checks = match stage {
            Stage::Validate => alg.inspect(&tol).checks(),
            Stage::Hopf => st.hopf_checks.clone(),
            _ => run_dependent(stage, &mut st, &labels, &mut report, &tol),
        };
        report.push_stage(stage.name(), checks);
    }
    report
}

fn requires(stage: Stage, what: &str) -> Vec<Check> {
    skipped(stage, &format!("skipped: requires {what}"))
}

fn ensure_integrals(st: &mut State) -> Option<&IntegralData> {
    let h = st.hopf.as_ref()?;
    st.integrals.get_or_insert_with(|| IntegralData::solve(h)).as_ref().ok()
}

fn ensure_dual(st: &mut State) -> Option<&DualPair> {
    ensure_integrals(st)?;
    if st.dual.is_none() {
        let h = st.hopf.as_ref()?;
        let int = st.integrals.as_ref()?.as_ref().ok()?;
        st.dual = Some(aqg_core::duality::verify_duality(h, int));
    }
    st.dual.as_ref()?.1.as_ref()
}

fn ensure_fourier(st: &mut State) -> Option<(&DualPair, &Fourier)> {
    ensure_dual(st)?;
    if st.fourier.is_none() {
        let pair = st.dual.as_ref()?.1.as_ref()?;
        st.fourier = Some(Fourier::new(pair));
    }
    let pair = st.dual.as_ref()?.1.as_ref()?;
    let f = st.fourier.as_ref()?.as_ref().ok()?;
    Some((pair, f))
}

fn run_dependent(stage: Stage, st: &mut State, labels: &[String], report: &mut Report, tol: &Tolerance) -> Vec<Check> {
    if st.hopf.is_none() {
        return requires(stage, "a Hopf algebra");
    }
    match stage {
        Stage::Integrals => {
            ensure_integrals(st);
            match st.integrals.as_ref().expect("integrals attempted") {
                Err(e) => vec![Check::failed("integrals.solve", "A has left and right integrals", e)],
                Ok(int) => {
                    derive_integrals(report, labels, int);
                    int.checks(tol)
                }
            }
        }
        Stage::Dual => {
            if ensure_integrals(st).is_none() {
                return requires(stage, "integrals");
            }
            ensure_dual(st);
            st.dual.as_ref().map(|d| d.0.clone()).unwrap_or_default()
        }
        Stage::Fourier => {
            if ensure_dual(st).is_none() {
                return requires(stage, "the dual pair");
            }
            match ensure_fourier(st) {
                None => {
                    let e = st.fourier.as_ref().and_then(|f| f.as_ref().err()).cloned().unwrap_or(Error::MissingUnit);
                    vec![Check::failed("fourier.build", "F(a) = φ(·a) is a bijection A → B", &e)]
                }
                Some((pair, f)) => {
                    let rep = f.verify(pair);
                    let mut checks = rep.checks();
                    report.derive("F2 / (F1∘σ∘S⁻¹)", fmt_complex(f.maps.f2_scalar));
                    if pair.a.algebra().has_star() && pair.b.algebra().has_star() {
                        checks.push(plancherel_samples(pair, f, tol));
                    }
                    checks
                }
            }
        }
        Stage::Heisenberg => match ensure_fourier(st) {
            None => requires(stage, "the Fourier transform"),
            Some((pair, f)) => verify_heisenberg(pair, &f.actions).0.checks(),
        },
        Stage::Regular => match ensure_fourier(st) {
            None => requires(stage, "the Fourier transform"),
            Some((pair, f)) => match RegularRep::new(pair) {
                Err(e) => vec![Check::failed("regular.build", "V(x⊗x′) = Δ(x′)(x⊗1) is invertible", &e)],
                Ok(reg) => {
                    let rep = verify_regular(pair, &reg, &f.maps, &f.actions);
                    if let Ok(TraceOutcome::Holds { k, .. }) = &rep.trace {
                        report.derive("k", fmt_complex(*k));
                    }
                    rep.checks()
                }
            },
        },
        Stage::Gns => match ensure_fourier(st) {
            None => requires(stage, "the Fourier transform"),
            Some((pair, f)) => {
                let built = RegularRep::new(pair).and_then(|reg| {
                    let heis = aqg_core::HeisenbergRep::new(pair, &f.actions)?;
                    gns_layer(pair, &f.maps, &f.actions, &reg, &heis)
                });
                match built {
                    Ok((_, rep)) => rep.checks(),
                    Err(e) => vec![Check::failed("gns.build", "φ gives a GNS space on which W, F and U act", &e)],
                }
            }
        },
        Stage::Validate | Stage::Hopf => unreachable!("handled by the caller"),
    }
}

fn derive_integrals(report: &mut Report, labels: &[String], int: &IntegralData) {
    report.derive("φ", format_element(labels, &int.phi));
    report.derive("ψ", format_element(labels, &int.psi));
    report.derive("δ", format_element(labels, &int.delta));
    report.derive("ν", fmt_complex(int.nu));
    report.derive("ψ / (φ∘S)", fmt_complex(int.psi_over_phi_s));
    for (i, l) in labels.iter().enumerate() {
        report.derive(format!("σ({l})"), format_element(labels, &int.sigma.column(i).into_owned()));
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> ComplexVector {
    ComplexVector::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// `φ_B(F(a)*F(a)) = φ_A(a*a)` on seeded random vectors.
pub fn plancherel_samples(pair: &DualPair, f: &Fourier, tol: &Tolerance) -> Check {
    let anchor = "φ_B(F(a)*F(a)) = φ_A(a*a)";
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..PLANCHEREL_SAMPLES {
        let a = random_vector(&mut rng, pair.a.dim());
        match plancherel_residual(pair, &f.maps, &a) {
            Ok(r) => worst = worst.max(r),
            Err(e) => return Check::failed("fourier.plancherel_random", anchor, &e),
        }
    }
    Check::measured("fourier.plancherel_random", anchor, worst, tol.rel_tol)
        .with_note(format!("{PLANCHEREL_SAMPLES} random vectors"))
}

fn random_function(rng: &mut ChaCha8Rng, order: usize) -> Function<usize> {
    let size = rng.gen_range(1..=order);
    Function::from_pairs((0..size).map(|_| {
        let p = rng.gen_range(0..order);
        (p, Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
    }))
}

/// Worst disagreement of the discrete and structure-constant backends on
/// seeded random inputs.
pub fn backend_agreement(group: &FiniteGroup, samples: usize, tol: &Tolerance) -> Result<BackendAgreement, Error> {
    let sb = StructureBackend::new(group, tol)?;
    let q = DiscreteQuantumGroup::new(group.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ group.order() as u64);
    let mut acc = BackendAgreement::default();
    for _ in 0..samples {
        let f = random_function(&mut rng, group.order());
        let g = random_function(&mut rng, group.order());
        let h = random_function(&mut rng, group.order());
        acc = acc.merge(&sb.compare(&q, &f, &g, &h));
    }
    Ok(acc)
}

fn run_integers(label: &str, opts: &PipelineOptions) -> Report {
    let tol = opts.tol;
    let mut report = Report::new(label, &tol);
    let mut checks = verify_integers(&tol);
    for (name, group) in [("z2", FiniteGroup::cyclic(2)), ("s3", FiniteGroup::symmetric3())] {
        let id = format!("discrete.backend_{name}");
        let anchor = "the discrete and structure-constant backends agree on F, λ, π, φ and the pentagon";
        checks.push(match backend_agreement(&group, BACKEND_SAMPLES, &tol) {
            Ok(a) => Check::measured(id, anchor, a.worst(), tol.abs_tol.min(1e-10))
                .with_note(format!("{BACKEND_SAMPLES} random inputs")),
            Err(e) => Check::failed(id, anchor, &e),
        });
    }
    report.push_stage("discrete", checks);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_lists() {
        assert_eq!(Stage::parse_list("all").unwrap().len(), 8);
        assert_eq!(Stage::parse_list("gns,hopf,hopf").unwrap(), vec![Stage::Hopf, Stage::Gns]);
        assert!(Stage::parse_list("bogus").is_err());
        assert!(Stage::parse_list("").is_err());
    }

    #[test]
    fn element_formatting() {
        let labels = vec!["1".to_string(), "g".to_string()];
        let v = ComplexVector::from_vec(vec![Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)]);
        assert_eq!(format_element(&labels, &v), "−g");
        assert_eq!(format_element(&labels, &ComplexVector::zeros(2)), "0");
    }

    #[test]
    fn tol_override() {
        let o = PipelineOptions::default().with_tol(1e-6).unwrap();
        assert_eq!(o.tol.abs_tol, 1e-6);
        assert_eq!(o.tol.rel_tol, 1e-6);
        assert!(o.tol.membership_tol >= 1e-6);
    }
}
