//! Support structure of a law: atoms, gaps, lattice span, and the gap
//! criterion for laws divisible with integer-valued components.
//!
//! Everything here is relative to the stored masses. An index is an atom
//! when its mass exceeds `support_threshold`, and the examined horizon ends
//! at the last atom: a law whose first missing integer lies past that point
//! reports `gap_free = true`.

use num_integer::Integer;

use crate::analysis::{CompoundPoissonForm, IdVerdict};
use crate::error::{Error, Result};
use crate::pmf::Pmf;
use crate::tolerance::Tolerances;

/// Maximal run `start..=end` of missing integers between two atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gap {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    pub atoms: Vec<usize>,
    pub min_point: Option<usize>,
    pub gaps: Vec<Gap>,
    /// gcd of the offsets `atom - min_point`; 0 for fewer than two atoms.
    pub lattice_gcd: usize,
    pub gap_free: bool,
    pub horizon: usize,
}

impl SupportReport {
    pub fn has_gaps(&self) -> bool {
        !self.gaps.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.atoms.binary_search(&i).is_ok()
    }
}

pub fn support_report(p: &Pmf) -> SupportReport {
    support_report_with(p, &Tolerances::DEFAULT)
}

pub fn support_report_with(p: &Pmf, tol: &Tolerances) -> SupportReport {
    let atoms: Vec<usize> = p
        .probs()
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > tol.support_threshold)
        .map(|(i, _)| i)
        .collect();
    let min_point = atoms.first().copied();
    let horizon = atoms.last().copied().unwrap_or(0);
    let gaps: Vec<Gap> = atoms
        .windows(2)
        .filter(|w| w[1] > w[0] + 1)
        .map(|w| Gap { start: w[0] + 1, end: w[1] - 1 })
        .collect();
    let lattice_gcd = match min_point {
        Some(lo) => atoms.iter().fold(0, |g, &a| g.gcd(&(a - lo))),
        None => 0,
    };
    let gap_free = min_point == Some(0) && gaps.is_empty();
    SupportReport { atoms, min_point, gaps, lattice_gcd, gap_free, horizon }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapViolation {
    /// Atom at one, yet the support has gaps.
    GapsDespiteAtomAtOne,
    /// No atom at one, yet the support is gap-free.
    GapFreeWithoutAtomAtOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapCheck {
    /// `gap_free <=> atom at one` holds.
    Consistent { atom_at_one: bool, gap_free: bool },
    Violation { atom_at_one: bool, gap_free: bool, violation: GapViolation },
    /// The law has no atom at zero, or is a point mass, so the criterion
    /// says nothing; reported for inspection.
    OutsideHypothesis { atom_at_one: bool, has_gaps: bool },
}

/// Checks that a law divisible with integer-valued components is gap-free
/// exactly when it has an atom at one.
pub fn check_gap_theorem(p: &Pmf, verdict: &IdVerdict) -> Result<GapCheck> {
    check_gap_theorem_with(p, verdict, &Tolerances::DEFAULT)
}

pub fn check_gap_theorem_with(p: &Pmf, verdict: &IdVerdict, tol: &Tolerances) -> Result<GapCheck> {
    let report = support_report_with(p, tol);
    let atom_at_one = p.prob(1) > tol.support_threshold;
    match verdict {
        IdVerdict::IdIntegerComponents(_) => {
            let gap_free = report.gap_free;
            Ok(match (atom_at_one, gap_free) {
                (true, true) | (false, false) => GapCheck::Consistent { atom_at_one, gap_free },
                (true, false) => GapCheck::Violation {
                    atom_at_one,
                    gap_free,
                    violation: GapViolation::GapsDespiteAtomAtOne,
                },
                (false, true) => GapCheck::Violation {
                    atom_at_one,
                    gap_free,
                    violation: GapViolation::GapFreeWithoutAtomAtOne,
                },
            })
        }
        IdVerdict::IdShifted { .. } | IdVerdict::Degenerate { .. } => {
            Ok(GapCheck::OutsideHypothesis { atom_at_one, has_gaps: report.has_gaps() })
        }
        other => Err(Error::VerdictMismatch(Box::new(other.clone()))),
    }
}

/// `{0}` together with every finite sum of elements of `jump_support`,
/// cut at `horizon`. Zeros in the generator set add nothing.
pub fn semigroup_closure(jump_support: &[usize], horizon: usize) -> Vec<usize> {
    let mut reach = vec![false; horizon + 1];
    reach[0] = true;
    let gens: Vec<usize> = jump_support.iter().copied().filter(|&j| j > 0 && j <= horizon).collect();
    for x in 1..=horizon {
        reach[x] = gens.iter().any(|&j| j <= x && reach[x - j]);
    }
    reach.iter().enumerate().filter(|(_, &r)| r).map(|(i, _)| i).collect()
}

/// Atoms of a jump law. `faint` lists atoms whose mass is at most
/// `faint_jump_mass`; their high multiples may not be visible in the
/// composed law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpSupport {
    pub atoms: Vec<usize>,
    pub faint: Vec<usize>,
}

pub fn jump_support(form: &CompoundPoissonForm) -> JumpSupport {
    jump_support_with(form, &Tolerances::DEFAULT)
}

pub fn jump_support_with(form: &CompoundPoissonForm, tol: &Tolerances) -> JumpSupport {
    let mut atoms = Vec::new();
    let mut faint = Vec::new();
    for (i, &x) in form.jump().probs().iter().enumerate().skip(1) {
        if x > tol.support_threshold {
            atoms.push(i);
            if x <= tol.faint_jump_mass {
                faint.push(i);
            }
        }
    }
    JumpSupport { atoms, faint }
}
