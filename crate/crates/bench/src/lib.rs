//! Fixtures shared by the pipeline benchmarks.

use aqg_core::presets::finite_preset;
use aqg_core::{DualPair, Fourier, HopfData, IntegralData, RegularRep, Tolerance};

pub fn hopf(name: &str) -> HopfData {
    let (a, d) = finite_preset(name).unwrap_or_else(|| panic!("no preset {name}"));
    HopfData::new(a, d, &Tolerance::default()).expect("preset is a Hopf algebra")
}

pub fn pair(name: &str) -> DualPair {
    let h = hopf(name);
    let int = IntegralData::solve(&h).expect("integrals exist");
    DualPair::build(h, int).expect("dual pair")
}

/// Everything the regular and GNS stages start from.
pub struct Stack {
    pub pair: DualPair,
    pub fourier: Fourier,
    pub regular: RegularRep,
}

pub fn stack(name: &str) -> Stack {
    let pair = pair(name);
    let fourier = Fourier::new(&pair).expect("Fourier transform");
    let regular = RegularRep::new(&pair).expect("regular representation");
    Stack { pair, fourier, regular }
}
