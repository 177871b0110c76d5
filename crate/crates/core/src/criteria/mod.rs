//! Linearizability criteria: Lie's equations for `m = 1`, the four families
//! for `m >= 2`, the linear case, and the Fels tensors.

mod families;
mod fels;
mod lie;
mod linear;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Polynomial, RationalFunction, Q};
use crate::decomposition::{extract_decomposition, CubicDecomposition, StructureDiagnostic};
use crate::error::{Error, Result};
use crate::jets::OdeSystem;

pub use families::{family_values, FamilyValues};
pub use fels::{fels_tensors, s_correction_constant, FelsTensors};
pub use lie::{lie_values, lie_values_with, LIE1_LXX};
pub use linear::{linear_check, LinearSystemData, LinearVerdict};

/// One residual with its index tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualEntry {
    pub index: Vec<usize>,
    pub value: RationalFunction,
}

impl ResidualEntry {
    pub fn new(index: Vec<usize>, value: RationalFunction) -> ResidualEntry {
        ResidualEntry { index, value }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residuals {
    Lie {
        lie1: RationalFunction,
        lie2: RationalFunction,
    },
    Families {
        i: Vec<ResidualEntry>,
        ii: Vec<ResidualEntry>,
        iii: Vec<ResidualEntry>,
        iv: Vec<ResidualEntry>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Linearizable,
    Obstructed,
    NotCubicStructured,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Linearizable => "linearizable",
            Verdict::Obstructed => "obstructed",
            Verdict::NotCubicStructured => "not-cubic-structured",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    pub m: usize,
    pub decomposition: CubicDecomposition,
    pub residuals: Residuals,
    /// Labels of the residuals found nonzero, in report order.
    nonzero: Vec<(&'static str, Vec<usize>)>,
}

impl ResidualReport {
    fn new(decomposition: CubicDecomposition, residuals: Residuals, opts: &CheckOptions) -> ResidualReport {
        let mut report = ResidualReport {
            m: decomposition.m(),
            decomposition,
            residuals,
            nonzero: Vec::new(),
        };
        let mut nonzero = Vec::new();
        for (family, entry) in report.entries() {
            if screen_nonzero(&entry.value, opts) {
                nonzero.push((family, entry.index.clone()));
            }
        }
        report.nonzero = nonzero;
        report
    }

    pub fn mode(&self) -> &'static str {
        match self.residuals {
            Residuals::Lie { .. } => "lie-m1",
            Residuals::Families { .. } => "families-m2plus",
        }
    }

    /// Every residual labelled by its family (`I`..`IV`, or `lie1`/`lie2`).
    pub fn entries(&self) -> Vec<(&'static str, ResidualEntry)> {
        match &self.residuals {
            Residuals::Lie { lie1, lie2 } => vec![
                ("lie1", ResidualEntry::new(vec![], lie1.clone())),
                ("lie2", ResidualEntry::new(vec![], lie2.clone())),
            ],
            Residuals::Families { i, ii, iii, iv } => {
                let tag = |name: &'static str, v: &Vec<ResidualEntry>| {
                    v.iter().map(move |e| (name, e.clone())).collect::<Vec<_>>()
                };
                let mut out = tag("I", i);
                out.extend(tag("II", ii));
                out.extend(tag("III", iii));
                out.extend(tag("IV", iv));
                out
            }
        }
    }

    /// The residuals that do not vanish identically.
    pub fn nonzero(&self) -> &[(&'static str, Vec<usize>)] {
        &self.nonzero
    }

    pub fn linearizable(&self) -> bool {
        self.nonzero.is_empty()
    }

    pub fn verdict(&self) -> Verdict {
        if self.linearizable() {
            Verdict::Linearizable
        } else {
            Verdict::Obstructed
        }
    }

    /// Irreducible-looking denominator factors of the coefficient tensors:
    /// the verdict is generic and says nothing on these loci.
    pub fn singular_factors(&self) -> Vec<Polynomial> {
        let mut set = BTreeSet::new();
        for e in self.decomposition.entries() {
            for (f, _) in e.denominator_factors() {
                set.insert(f.clone());
            }
        }
        set.into_iter().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Random evaluations before the exact zero test; 0 disables them.
    pub probe_trials: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> CheckOptions {
        CheckOptions {
            probe_trials: 8,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    CertainlyNonzero,
    ZeroAtAllSamples,
}

fn sample(rng: &mut ChaCha8Rng) -> Q {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-97i64..=97);
    }
    Q::new(n, rng.gen_range(1i64..=89))
}

/// Evaluates `f` at `trials` seeded random points with nonzero rational
/// coordinates. Points on the polar locus are skipped.
pub fn probe_residual(f: &RationalFunction, trials: usize, seed: u64) -> Result<ProbeOutcome> {
    let vars = f.variables();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evaluated = 0;
    for _ in 0..trials {
        let values: Vec<Q> = vars.iter().map(|_| sample(&mut rng)).collect();
        let point = |v| vars.iter().position(|w| *w == v).map(|i| values[i].clone());
        match f.evaluate_with(&point) {
            Ok(value) if !value.is_zero() => return Ok(ProbeOutcome::CertainlyNonzero),
            Ok(_) => evaluated += 1,
            Err(crate::algebra::AlgebraError::EvaluationPole) => {}
            Err(e) => return Err(e.into()),
        }
    }
    if trials > 0 && evaluated == 0 {
        return Err(Error::AllSamplesPoles);
    }
    Ok(ProbeOutcome::ZeroAtAllSamples)
}

/// Probe first, then the exact test. The exact test is authoritative; a
/// nonzero probe value can only occur for a nonzero numerator.
fn screen_nonzero(f: &RationalFunction, opts: &CheckOptions) -> bool {
    if opts.probe_trials > 0 {
        if let Ok(ProbeOutcome::CertainlyNonzero) = probe_residual(f, opts.probe_trials, opts.seed) {
            debug_assert!(!f.is_zero());
            return true;
        }
    }
    !f.is_zero()
}

pub fn family_residuals(d: &CubicDecomposition) -> Result<ResidualReport> {
    family_residuals_with(d, &CheckOptions::default())
}

pub fn family_residuals_with(d: &CubicDecomposition, opts: &CheckOptions) -> Result<ResidualReport> {
    if d.m() < 2 {
        return Err(Error::WrongArity {
            expected: ">= 2",
            got: d.m(),
        });
    }
    let v = family_values(d);
    let residuals = Residuals::Families {
        i: v.i,
        ii: v.ii,
        iii: v.iii,
        iv: v.iv,
    };
    Ok(ResidualReport::new(d.clone(), residuals, opts))
}

pub fn lie_residuals_m1(d: &CubicDecomposition) -> Result<ResidualReport> {
    lie_residuals_m1_with(d, &CheckOptions::default())
}

pub fn lie_residuals_m1_with(d: &CubicDecomposition, opts: &CheckOptions) -> Result<ResidualReport> {
    if d.m() != 1 {
        return Err(Error::WrongArity {
            expected: "= 1",
            got: d.m(),
        });
    }
    let (lie1, lie2) = lie_values(d);
    Ok(ResidualReport::new(d.clone(), Residuals::Lie { lie1, lie2 }, opts))
}

pub fn check(sys: &OdeSystem) -> std::result::Result<ResidualReport, StructureDiagnostic> {
    check_with(sys, &CheckOptions::default())
}

/// Extracts the cubic structure and evaluates the criterion matching `m`.
pub fn check_with(
    sys: &OdeSystem,
    opts: &CheckOptions,
) -> std::result::Result<ResidualReport, StructureDiagnostic> {
    let d = extract_decomposition(sys)?;
    let report = if d.m() == 1 {
        lie_residuals_m1_with(&d, opts)
    } else {
        family_residuals_with(&d, opts)
    };
    Ok(report.expect("arity matches the dispatch"))
}
