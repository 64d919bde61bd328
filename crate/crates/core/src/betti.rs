//! Structural Betti counters: filaments (B0), filled cycles (B1) and hole
//! markers (B2), plus the ribbon, ribbon-complex, ribbon-nerve and vortex-nerve
//! numbers assembled from them. These count explicit objects of the model;
//! they are not homology ranks (see `homology` for those).

use std::fmt;

use crate::ribbon::{
    ribbon_nerves_of_vortex_nerve, ribbons_of_vortex_nerve, FilledCycle, Ribbon, RibbonComplex, RibbonError,
    RibbonNerve, VortexNerve,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BettiTriple {
    pub b0: u64,
    pub b1: u64,
    pub b2: u64,
}

impl fmt::Display for BettiTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.b0, self.b1, self.b2)
    }
}

/// Anything the counters apply to.
#[derive(Debug, Clone, Copy)]
pub enum Structure<'a> {
    Ribbon(&'a Ribbon),
    RibbonComplex(&'a RibbonComplex),
    RibbonNerve(&'a RibbonNerve),
    VortexNerve(&'a VortexNerve),
}

fn distinct_cycles<'a>(cycles: impl IntoIterator<Item = &'a FilledCycle>) -> u64 {
    let mut seen: Vec<&FilledCycle> = Vec::new();
    for c in cycles {
        if !seen.contains(&c) {
            seen.push(c);
        }
    }
    seen.len() as u64
}

fn triple_of_ribbons(ribbons: &[Ribbon]) -> BettiTriple {
    BettiTriple {
        b0: ribbons.iter().map(|r| r.filaments().len() as u64).sum(),
        b1: distinct_cycles(ribbons.iter().flat_map(|r| [r.outer(), r.inner()])),
        b2: ribbons.iter().map(|r| r.holes().len() as u64).sum(),
    }
}

pub fn betti_triple(s: Structure<'_>) -> BettiTriple {
    match s {
        Structure::Ribbon(r) => triple_of_ribbons(std::slice::from_ref(r)),
        Structure::RibbonComplex(x) => triple_of_ribbons(x.ribbons()),
        Structure::RibbonNerve(n) => triple_of_ribbons(n.ribbons()),
        Structure::VortexNerve(v) => {
            BettiTriple { b0: v.filaments().len() as u64, b1: distinct_cycles(v.cycles()), b2: 0 }
        }
    }
}

/// Filaments + holes + the ribbon's two cycles.
pub fn betti_rb(r: &Ribbon) -> u64 {
    r.filaments().len() as u64 + r.holes().len() as u64 + 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RibbonComplexBetti {
    /// Number of ribbons in the complex.
    pub count_variant: u64,
    /// Sum of [`betti_rb`] over the ribbons.
    pub sum_variant: u64,
}

pub fn betti_rbx(x: &RibbonComplex) -> RibbonComplexBetti {
    RibbonComplexBetti { count_variant: x.ribbons().len() as u64, sum_variant: x.ribbons().iter().map(betti_rb).sum() }
}

/// Filaments + overlapping ribbons + holes.
pub fn betti_rbnrv(n: &RibbonNerve) -> u64 {
    let t = betti_triple(Structure::RibbonNerve(n));
    t.b0 + n.ribbons().len() as u64 + t.b2
}

/// Sum of [`betti_rb`] over the `k - 1` ribbons of the vortex nerve.
pub fn betti_rb_vnrv(v: &VortexNerve) -> Result<u64, RibbonError> {
    Ok(ribbons_of_vortex_nerve(v)?.iter().map(betti_rb).sum())
}

/// Sum of [`betti_rbnrv`] over the `k - 2` ribbon nerves of the vortex nerve.
pub fn betti_rbnrv_vnrv(v: &VortexNerve) -> Result<u64, RibbonError> {
    Ok(ribbon_nerves_of_vortex_nerve(v)?.iter().map(betti_rbnrv).sum())
}
