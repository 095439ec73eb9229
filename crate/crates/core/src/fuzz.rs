//! Random arrangements through expansion and analysis, checked against a
//! bound. The first failing index is the same on any number of threads.

use crate::analyze::analyze;
use crate::arrangement::{Arrangement, PartitionReport};
use crate::bounds::BoundName;
use crate::error::{Error, Result};
use crate::expansion::{greedy_expand, identity_order, TieBreak};
use crate::generators::{gen_random_item, CakeKind, FuzzConfig};
use crate::par::{find_first, Execution};

#[derive(Clone, Debug)]
pub struct FuzzFailure {
    pub index: usize,
    pub input: Arrangement,
    /// The arrangement that was analyzed (after greedy expansion when the
    /// cake is bounded and axis-parallel).
    pub analyzed: Arrangement,
    pub report: Option<PartitionReport>,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct FuzzOutcome {
    pub checked: usize,
    pub failure: Option<FuzzFailure>,
}

impl FuzzOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn bound_fits(kind: CakeKind, bound: BoundName) -> bool {
    use BoundName::*;
    match kind {
        CakeKind::Rectangle => matches!(bound, Thm1 | Thm3 | Thm8),
        CakeKind::Rectilinear(_) => matches!(bound, Thm1 | Thm8),
        CakeKind::Plane => bound == Thm3prime,
        CakeKind::Convex => bound == Thm2prime,
    }
}

/// Checks one generated arrangement; `Err` carries the counterexample.
pub fn check_item(
    cfg: &FuzzConfig,
    index: usize,
    bound: BoundName,
) -> std::result::Result<PartitionReport, Box<FuzzFailure>> {
    let input = gen_random_item(cfg, index as u64);
    let expand = matches!(cfg.cake_kind, CakeKind::Rectangle | CakeKind::Rectilinear(_));
    let fail = |analyzed: &Arrangement, report: Option<PartitionReport>, reason: String| {
        Box::new(FuzzFailure { index, input: input.clone(), analyzed: analyzed.clone(), report, reason })
    };
    let analyzed = if expand {
        greedy_expand(&input, &identity_order(input.m()), TieBreak::Lexicographic)
            .map_err(|e| fail(&input, None, format!("expansion failed: {e}")))?
    } else {
        input.clone()
    };
    let report = analyze(&analyzed, bound).map_err(|e| fail(&analyzed, None, format!("analysis failed: {e}")))?;
    if let Some(s) = report.structure.as_ref().filter(|s| !s.passed()) {
        let rules: Vec<String> = s.violations.iter().map(|v| v.rule.to_string()).collect();
        return Err(fail(&analyzed, Some(report.clone()), format!("structure violated: {}", rules.join(", "))));
    }
    if !report.satisfied {
        let observed = report.holes.unwrap_or(report.b);
        let reason = format!("{} exceeds {} = {}", observed, bound, report.bound.value);
        return Err(fail(&analyzed, Some(report), reason));
    }
    Ok(report)
}

/// Runs `cfg.iterations` items and reports the lowest failing index.
pub fn run_fuzz(cfg: &FuzzConfig, bound: BoundName, exec: Execution) -> Result<FuzzOutcome> {
    if !bound_fits(cfg.cake_kind, bound) {
        return Err(Error::InvalidArgument(format!("bound {bound} does not apply to {:?} cakes", cfg.cake_kind)));
    }
    let t = match cfg.cake_kind {
        CakeKind::Rectilinear(t) => t,
        _ => 0,
    };
    bound.limit(cfg.m, t)?;
    let failure = find_first(exec, cfg.iterations, |i| check_item(cfg, i, bound).err()).map(|(_, f)| *f);
    Ok(FuzzOutcome { checked: cfg.iterations, failure })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64, m: usize, kind: CakeKind, iterations: usize) -> FuzzConfig {
        FuzzConfig { iterations, ..FuzzConfig::new(seed, m, kind) }
    }

    #[test]
    fn rectangle_fuzz_passes() {
        let out = run_fuzz(&cfg(7, 8, CakeKind::Rectangle, 60), BoundName::Thm3, Execution::Parallel).unwrap();
        assert!(out.passed(), "{:?}", out.failure.map(|f| (f.index, f.reason)));
    }

    #[test]
    fn other_kinds_pass() {
        let cases = [
            (CakeKind::Rectilinear(3), BoundName::Thm8),
            (CakeKind::Plane, BoundName::Thm3prime),
            (CakeKind::Convex, BoundName::Thm2prime),
            (CakeKind::Rectangle, BoundName::Thm1),
        ];
        for (kind, bound) in cases {
            let out = run_fuzz(&cfg(3, 6, kind, 15), bound, Execution::Sequential).unwrap();
            assert!(out.passed(), "{kind:?}: {:?}", out.failure.map(|f| f.reason));
        }
    }

    #[test]
    fn mismatched_bound_refused() {
        assert!(run_fuzz(&cfg(1, 5, CakeKind::Plane, 1), BoundName::Thm3, Execution::Sequential).is_err());
        assert!(run_fuzz(&cfg(1, 2, CakeKind::Plane, 1), BoundName::Thm3prime, Execution::Sequential).is_err());
    }

    #[test]
    fn first_hit_independent_of_threads() {
        // first item that ends with at least one blank
        let c = cfg(11, 4, CakeKind::Rectangle, 80);
        let seq = find_first(Execution::Sequential, c.iterations, |i| {
            check_item(&c, i, BoundName::Thm3).ok().filter(|r| r.b > 0).map(|_| ())
        });
        let par = find_first(Execution::Parallel, c.iterations, |i| {
            check_item(&c, i, BoundName::Thm3).ok().filter(|r| r.b > 0).map(|_| ())
        });
        assert!(seq.is_some());
        assert_eq!(seq, par);
    }
}
