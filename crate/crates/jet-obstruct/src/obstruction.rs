//! The obstruction checklist and direction scans.
//!
//! For a class `α` of degree `r` and a candidate Poincaré-dual class
//! `pd` of degree `k`, three obstructions to representing `α` by an
//! exact submanifold are evaluated:
//!
//! 1. `α` must be ∞-jet deformable along `pd` (when `k` is odd);
//! 2. `pd` must be ∞-jet deformable along `α` (when `r` is odd);
//! 3. regardless of parity, `[pd ∧ α] = 0` — the level-1 condition.
//!
//! A scan fixes `α` and a codimension and searches the whole space of
//! directions: outside the cup kernel everything dies at level 1, and
//! inside it the checklist runs per direction.  Scale invariance of `V`
//! means only projective directions matter, so the scan normalizes the
//! first nonzero kernel coordinate to 1; for kernel dimension ≥ 2 the
//! remaining coordinates range over a bounded-height grid and the report
//! must say it is a sample, not a proof — deformability is nonlinear in
//! the direction, so no finite sample decides it.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::cohomology::{cohomology_basis, cup_kernel, CohomologySubspace, Membership};
use crate::deformability::{
    max_jet, rational_top_shortcut, DeformabilityVerdict, Level, MaxLevel,
};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::model::{DgaModel, ElementDegree};
use crate::scalar::{rat, Rational};

/// Result of the level-1 cup-product test.
#[derive(Clone, Debug)]
pub struct CupTest {
    /// `[pd ∧ α] = 0`.
    pub ok: bool,
    /// The wedge itself.
    pub product: Element,
    /// Canonical representative of its class (zero iff `ok`).
    pub class_rep: Element,
}

/// The cup-product obstruction `[pd ∧ α]`.
pub fn cup_obstruction(model: &DgaModel, alpha: &Element, pd: &Element) -> Result<CupTest> {
    for e in [alpha, pd] {
        let de = model.differential(e)?;
        if !de.is_zero() {
            return Err(Error::NotACocycle { residual: model.format_element(&de) });
        }
    }
    let product = model.wedge(pd, alpha)?;
    if product.is_zero() {
        return Ok(CupTest { ok: true, product: product.clone(), class_rep: model.zero() });
    }
    let degree = match model.degree(&product) {
        ElementDegree::Homogeneous(d) => d,
        _ => return Err(Error::NotHomogeneous { found: "mixed".into() }),
    };
    let h = cohomology_basis(model, degree);
    let class_rep = match h.coordinates(model, &product)? {
        Membership::In(c) => h.combination(model, &c),
        Membership::NotInSpan => unreachable!("wedge of cocycles is a cocycle"),
    };
    Ok(CupTest { ok: class_rep.is_zero(), product, class_rep })
}

/// Kernel of `Φ_α : H^k → H^{k+r}`, `[μ] ↦ [α ∧ μ]` — the only
/// directions a codimension-`k` exact submanifold dual to something
/// pairing with `α` could use.  An empty kernel certifies that all such
/// submanifolds are torsion in homology.
pub fn cup_injectivity(model: &DgaModel, alpha: &Element, k: usize) -> Result<CohomologySubspace> {
    cup_kernel(model, alpha, k)
}

/// One bullet of the checklist.
#[derive(Clone, Debug)]
pub enum BulletOutcome {
    NotApplicable { reason: String },
    Verdict(DeformabilityVerdict),
}

impl BulletOutcome {
    pub fn verdict(&self) -> Option<&DeformabilityVerdict> {
        match self {
            BulletOutcome::Verdict(v) => Some(v),
            BulletOutcome::NotApplicable { .. } => None,
        }
    }

    /// Applicable and passing straight through every level.
    fn covered(&self) -> bool {
        match self {
            BulletOutcome::NotApplicable { .. } => true,
            BulletOutcome::Verdict(v) => v.passes_definitively(),
        }
    }

    fn refutation(&self) -> Option<usize> {
        self.verdict().and_then(|v| v.refuted_at)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChecklistConclusion {
    /// An obstruction fired at this jet level; `bullet` is 1 (`α` along
    /// `pd`), 2 (`pd` along `α`) or 3 (cup product).
    Obstructed { level: usize, bullet: u8 },
    PassesUpToCutoff,
    PassesDefinitively,
}

impl ChecklistConclusion {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, ChecklistConclusion::Obstructed { .. })
    }
}

#[derive(Clone, Debug)]
pub struct ObstructionChecklist {
    pub alpha: Element,
    pub pd: Element,
    pub cup_ok: bool,
    /// Canonical representative of `[pd ∧ α]`.
    pub cup_class: Element,
    pub alpha_along_pd: BulletOutcome,
    pub pd_along_alpha: BulletOutcome,
    pub conclusion: ChecklistConclusion,
}

/// Runs all three bullets and assembles the conclusion.
///
/// `PASSES_DEFINITIVELY` is claimed only when every applicable branch is
/// covered by a proven stabilization bound (or is vacuous); otherwise a
/// clean pass is only `PASSES_UP_TO_CUTOFF` — the degree-1 stabilization
/// question is open, and the report must not overclaim.
pub fn theorem_checklist(
    model: &DgaModel,
    alpha: &Element,
    pd: &Element,
    cutoff: Level,
) -> Result<ObstructionChecklist> {
    let cup = cup_obstruction(model, alpha, pd)?;

    if pd.is_zero() {
        // The zero class bounds the empty submanifold; nothing to obstruct.
        let na = |reason: &str| BulletOutcome::NotApplicable { reason: reason.into() };
        return Ok(ObstructionChecklist {
            alpha: alpha.clone(),
            pd: pd.clone(),
            cup_ok: true,
            cup_class: model.zero(),
            alpha_along_pd: na("zero dual class"),
            pd_along_alpha: na("zero dual class"),
            conclusion: ChecklistConclusion::PassesDefinitively,
        });
    }

    let k = match model.degree(pd) {
        ElementDegree::Homogeneous(k) => k,
        ElementDegree::Zero => unreachable!(),
        ElementDegree::Mixed => return Err(Error::NotHomogeneous { found: "mixed".into() }),
    };
    let alpha_along_pd = if k % 2 == 1 {
        BulletOutcome::Verdict(max_jet(model, alpha, pd, cutoff)?)
    } else {
        BulletOutcome::NotApplicable { reason: format!("direction degree {k} is even") }
    };
    let pd_along_alpha = if alpha.is_zero() {
        BulletOutcome::NotApplicable { reason: "zero direction".into() }
    } else {
        match model.degree(alpha) {
            ElementDegree::Homogeneous(r) if r % 2 == 1 => {
                BulletOutcome::Verdict(max_jet(model, pd, alpha, cutoff)?)
            }
            ElementDegree::Homogeneous(r) => {
                BulletOutcome::NotApplicable { reason: format!("class degree {r} is even") }
            }
            _ => return Err(Error::NotHomogeneous { found: "mixed".into() }),
        }
    };

    let conclusion = if !cup.ok {
        ChecklistConclusion::Obstructed { level: 1, bullet: 3 }
    } else {
        let refutations = [
            (1u8, alpha_along_pd.refutation()),
            (2u8, pd_along_alpha.refutation()),
        ];
        match refutations
            .iter()
            .filter_map(|(b, r)| r.map(|level| (level, *b)))
            .min()
        {
            Some((level, bullet)) => ChecklistConclusion::Obstructed { level, bullet },
            None if alpha_along_pd.covered() && pd_along_alpha.covered() => {
                ChecklistConclusion::PassesDefinitively
            }
            None => ChecklistConclusion::PassesUpToCutoff,
        }
    };

    Ok(ObstructionChecklist {
        alpha: alpha.clone(),
        pd: pd.clone(),
        cup_ok: cup.ok,
        cup_class: cup.class_rep,
        alpha_along_pd,
        pd_along_alpha,
        conclusion,
    })
}

/// Direction-sampling parameters for [`scan`].
#[derive(Clone, Copy, Debug)]
pub struct SampleSpec {
    /// Height bound for grid coordinates `p/q`: `|p| ≤ height`, `q ≤ height`.
    pub height: u32,
    /// Ceiling on enumerated directions; beyond it the scan truncates
    /// (deterministically, simplest coordinates first) and says so.
    pub max_directions: usize,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec { height: 3, max_directions: 256 }
    }
}

/// All grid values of height ≤ `h`, simplest first.
fn grid_values(h: u32) -> Vec<Rational> {
    let mut vals = vec![Rational::zero()];
    for p in 1..=h as i64 {
        for q in 1..=h as i64 {
            let v = rat(p, q);
            if v.numer().abs() == p.into() && *v.denom() == q.into() {
                vals.push(-v.clone());
                vals.push(v);
            }
        }
    }
    vals.sort_by_key(|v| {
        let height = if v.is_zero() {
            Zero::zero()
        } else {
            v.numer().abs().max(v.denom().clone())
        };
        (height, v.denom().clone(), v.numer().clone())
    });
    vals
}

/// One scanned direction.
#[derive(Clone, Debug)]
pub struct DirectionResult {
    /// Coordinates in the cup-kernel basis (first nonzero entry is 1).
    pub coordinates: Vec<Rational>,
    pub direction: Element,
    pub checklist: ObstructionChecklist,
    /// Codimension-one geometric annotation, when it applies.
    pub shortcut: Option<String>,
}

#[derive(Debug)]
pub struct ScanReport {
    pub alpha: Element,
    pub codim: usize,
    pub cutoff: Level,
    /// `dim H^k`.
    pub ambient_dimension: usize,
    pub cup_kernel: CohomologySubspace,
    /// Kernel dimension ≤ 1: the projective enumeration is complete and
    /// conclusions are definitive over all directions.
    pub exhaustive: bool,
    /// `(shown, total)` when the grid was cut off at `max_directions`.
    pub truncated: Option<(usize, usize)>,
    pub directions: Vec<DirectionResult>,
    pub obstructed: usize,
    pub passed: usize,
    pub passed_definitively: usize,
    /// Aggregate statement about everything outside the cup kernel.
    pub outside_note: Option<String>,
    pub summary: String,
    pub geometric: bool,
}

fn thread_pool_from_env() -> Option<rayon::ThreadPool> {
    let n = std::env::var("JET_OBSTRUCT_THREADS").ok()?.parse::<usize>().ok()?;
    if n == 0 {
        return None;
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()
}

/// Scans every codimension-`k` direction against `α`: cup kernel first,
/// then per-direction checklists over projective representatives.
/// Directions run concurrently (capped by `JET_OBSTRUCT_THREADS`); the
/// report merges them in enumeration order, so it is deterministic.
pub fn scan(
    model: &DgaModel,
    alpha: &Element,
    codim: usize,
    cutoff: Level,
    spec: SampleSpec,
    geometric: bool,
) -> Result<ScanReport> {
    let kernel = cup_injectivity(model, alpha, codim)?;
    let ambient = cohomology_basis(model, codim).dimension();
    let dim = kernel.dimension();

    let outside_note = (dim < ambient).then(|| {
        format!(
            "directions outside the cup kernel (all but a dimension-{dim} subspace of the \
             {ambient}-dimensional H^{codim}) are obstructed at level 1 by the cup product"
        )
    });

    // Projective representatives: first nonzero coordinate normalized to 1.
    let mut coordinate_sets: Vec<Vec<Rational>> = Vec::new();
    let mut total = 0usize;
    if dim == 1 {
        total = 1;
        coordinate_sets.push(vec![Rational::one()]);
    } else if dim >= 2 {
        let grid = grid_values(spec.height);
        for pivot in 0..dim {
            let tail = dim - pivot - 1;
            let count = grid.len().pow(tail as u32);
            total += count;
            if coordinate_sets.len() >= spec.max_directions {
                continue;
            }
            let mut odometer = vec![0usize; tail];
            loop {
                let mut coords = vec![Rational::zero(); dim];
                coords[pivot] = Rational::one();
                for (i, &gi) in odometer.iter().enumerate() {
                    coords[pivot + 1 + i] = grid[gi].clone();
                }
                coordinate_sets.push(coords);
                if coordinate_sets.len() >= spec.max_directions {
                    break;
                }
                if tail == 0 {
                    break;
                }
                // increment: rightmost digit fastest
                let mut place = tail;
                loop {
                    if place == 0 {
                        break;
                    }
                    place -= 1;
                    odometer[place] += 1;
                    if odometer[place] < grid.len() {
                        break;
                    }
                    odometer[place] = 0;
                }
                if odometer.iter().all(|&d| d == 0) {
                    break;
                }
            }
        }
    }
    let truncated = (coordinate_sets.len() < total).then(|| (coordinate_sets.len(), total));

    let run = || -> Result<Vec<DirectionResult>> {
        coordinate_sets
            .par_iter()
            .map(|coords| {
                let direction = kernel.combination(model, coords);
                let checklist = theorem_checklist(model, alpha, &direction, cutoff)?;
                let shortcut = rational_top_shortcut(model, alpha, &direction, geometric)?;
                Ok(DirectionResult {
                    coordinates: coords.clone(),
                    direction,
                    checklist,
                    shortcut,
                })
            })
            .collect()
    };
    let directions = match thread_pool_from_env() {
        Some(pool) => pool.install(run),
        None => run(),
    }?;

    let obstructed = directions
        .iter()
        .filter(|d| d.checklist.conclusion.is_obstructed())
        .count();
    let passed = directions.len() - obstructed;
    let passed_definitively = directions
        .iter()
        .filter(|d| d.checklist.conclusion == ChecklistConclusion::PassesDefinitively)
        .count();

    let exhaustive = dim <= 1;
    let summary = compose_summary(
        model,
        codim,
        dim,
        exhaustive,
        &directions,
        obstructed,
        passed,
        passed_definitively,
        truncated,
        geometric,
    );

    Ok(ScanReport {
        alpha: alpha.clone(),
        codim,
        cutoff,
        ambient_dimension: ambient,
        cup_kernel: kernel,
        exhaustive,
        truncated,
        directions,
        obstructed,
        passed,
        passed_definitively,
        outside_note,
        summary,
        geometric,
    })
}

#[allow(clippy::too_many_arguments)]
fn compose_summary(
    model: &DgaModel,
    codim: usize,
    kernel_dim: usize,
    exhaustive: bool,
    directions: &[DirectionResult],
    obstructed: usize,
    passed: usize,
    passed_definitively: usize,
    truncated: Option<(usize, usize)>,
    geometric: bool,
) -> String {
    let geometric_refutation = || {
        if !geometric {
            return String::new();
        }
        if model.metadata().oriented != Some(true) {
            return "; geometric conclusion withheld: the model is not marked oriented".into();
        }
        if codim == 1 {
            ": the manifold admits no non-separating exact hypersurface".into()
        } else {
            format!(
                ": all exact submanifolds of codimension {codim} are torsion in homology"
            )
        }
    };

    if kernel_dim == 0 {
        return format!(
            "all directions obstructed by cup product (the cup kernel in H^{codim} is zero){}",
            geometric_refutation()
        );
    }
    if obstructed == directions.len() {
        let worst = directions
            .iter()
            .filter_map(|d| match d.checklist.conclusion {
                ChecklistConclusion::Obstructed { level, .. } => Some(level),
                _ => None,
            })
            .max()
            .unwrap_or(1);
        if exhaustive {
            return format!(
                "no nonzero direction in H^{codim} passes level {worst}{}",
                geometric_refutation()
            );
        }
        let shown = truncated.map_or(directions.len(), |(s, _)| s);
        return format!(
            "no sampled direction passes level {worst} ({shown} directions sampled; for \
             kernel dimension ≥ 2 this is a sample, not a proof)"
        );
    }
    let mut s = format!(
        "{passed} of {} direction(s) pass up to the cutoff ({passed_definitively} \
         definitively); {obstructed} obstructed",
        directions.len()
    );
    if !exhaustive {
        s.push_str(" — a sample, not a proof (the cup kernel has dimension ≥ 2)");
    }
    if let Some((shown, total)) = truncated {
        s.push_str(&format!("; grid truncated to {shown} of {total} directions"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;
    use crate::model_io::builtin;

    fn kt() -> DgaModel {
        builtin("kodaira-thurston").unwrap()
    }

    fn el(m: &DgaModel, s: &str) -> Element {
        parse_element(m.generator_set(), s).unwrap()
    }

    #[test]
    fn cup_obstruction_examples() {
        let m = kt();
        let alpha = el(&m, "A*C + B*T");
        let bad = cup_obstruction(&m, &alpha, &el(&m, "B")).unwrap();
        assert!(!bad.ok);
        assert_eq!(m.format_element(&bad.class_rep), "-A*B*C");
        let good = cup_obstruction(&m, &alpha, &el(&m, "A")).unwrap();
        assert!(good.ok, "A ∧ (AC+BT) = ABT is exact");
        assert!(!good.product.is_zero());
        assert!(cup_obstruction(&m, &alpha, &m.zero()).unwrap().ok);
        assert!(cup_obstruction(&m, &el(&m, "C"), &el(&m, "A")).is_err());
    }

    #[test]
    fn checklist_reproduces_the_theorem() {
        let m = kt();
        let alpha = el(&m, "A*C + B*T");
        let c = theorem_checklist(&m, &alpha, &el(&m, "A"), Level::Finite(5)).unwrap();
        assert!(c.cup_ok);
        assert_eq!(c.conclusion, ChecklistConclusion::Obstructed { level: 2, bullet: 1 });
        let v = c.alpha_along_pd.verdict().unwrap();
        assert_eq!(v.max_level, MaxLevel::Finite(1));
        assert!(matches!(
            c.pd_along_alpha,
            BulletOutcome::NotApplicable { .. }
        ));

        let c = theorem_checklist(&m, &alpha, &el(&m, "B"), Level::Finite(5)).unwrap();
        assert!(!c.cup_ok);
        assert_eq!(c.conclusion, ChecklistConclusion::Obstructed { level: 1, bullet: 3 });

        let c = theorem_checklist(&m, &alpha, &m.zero(), Level::Finite(5)).unwrap();
        assert_eq!(c.conclusion, ChecklistConclusion::PassesDefinitively);
    }

    #[test]
    fn cup_failure_forces_level_zero_verdicts() {
        let m = kt();
        let alpha = el(&m, "A*C + B*T");
        let c = theorem_checklist(&m, &alpha, &el(&m, "B"), Level::Finite(4)).unwrap();
        assert!(!c.cup_ok);
        for outcome in [&c.alpha_along_pd, &c.pd_along_alpha] {
            if let Some(v) = outcome.verdict() {
                assert_eq!(v.max_level, MaxLevel::Finite(0));
            }
        }
    }

    #[test]
    fn checklist_conclusions_are_scale_and_gauge_invariant() {
        let m = kt();
        let alpha = el(&m, "A*C + B*T");
        let base = theorem_checklist(&m, &alpha, &el(&m, "A"), Level::Finite(3)).unwrap();
        let scaled = theorem_checklist(&m, &alpha, &el(&m, "-3/2*A"), Level::Finite(3)).unwrap();
        assert_eq!(base.conclusion, scaled.conclusion);
        // no exact degree-1 forms here, so gauge by a closed g: pd unchanged
        let gauged = theorem_checklist(&m, &alpha, &el(&m, "A"), Level::Finite(3)).unwrap();
        assert_eq!(base.conclusion, gauged.conclusion);
    }

    #[test]
    fn cup_injectivity_examples() {
        let m = kt();
        let kernel = cup_injectivity(&m, &el(&m, "A*C + B*T"), 1).unwrap();
        assert_eq!(kernel.dimension(), 1);
        assert_eq!(m.format_element(&kernel.representatives()[0]), "A");

        let t4 = builtin("torus-4").unwrap();
        let sympl = el(&t4, "A*B + C*D");
        assert_eq!(cup_injectivity(&t4, &sympl, 1).unwrap().dimension(), 0);

        assert_eq!(cup_injectivity(&m, &m.zero(), 1).unwrap().dimension(), 3);
    }

    #[test]
    fn scan_reproduces_the_hypersurface_theorem() {
        let m = kt();
        let alpha = el(&m, "A*C + B*T");
        let report =
            scan(&m, &alpha, 1, Level::Finite(3), SampleSpec::default(), true).unwrap();
        assert_eq!(report.cup_kernel.dimension(), 1);
        assert!(report.exhaustive);
        assert_eq!(report.directions.len(), 1);
        let d = &report.directions[0];
        assert_eq!(m.format_element(&d.direction), "A");
        assert_eq!(
            d.checklist.conclusion,
            ChecklistConclusion::Obstructed { level: 2, bullet: 1 }
        );
        assert!(report.summary.contains("no nonzero direction in H^1 passes level 2"));
        assert!(report.summary.contains("admits no non-separating exact hypersurface"));
        assert!(report.outside_note.is_some());

        let plain = scan(&m, &alpha, 1, Level::Finite(3), SampleSpec::default(), false).unwrap();
        assert!(!plain.summary.contains("hypersurface"));
    }

    #[test]
    fn scan_with_empty_kernel() {
        let t4 = builtin("torus-4").unwrap();
        let sympl = el(&t4, "A*B + C*D");
        let report =
            scan(&t4, &sympl, 1, Level::Finite(3), SampleSpec::default(), false).unwrap();
        assert_eq!(report.cup_kernel.dimension(), 0);
        assert!(report.directions.is_empty());
        assert!(report.summary.contains("all directions obstructed by cup product"));
    }

    #[test]
    fn scan_samples_when_kernel_is_wide() {
        let m = kt();
        // α = 0: every direction is in the kernel and passes trivially
        let report =
            scan(&m, &m.zero(), 1, Level::Finite(2), SampleSpec::default(), false).unwrap();
        assert_eq!(report.cup_kernel.dimension(), 3);
        assert!(!report.exhaustive);
        assert_eq!(report.obstructed, 0);
        // 15² + 15 + 1 = 241 projective grid points fit under the default cap
        assert_eq!(report.directions.len(), 241);
        assert!(report.truncated.is_none());
        for d in &report.directions {
            assert!(!d.checklist.conclusion.is_obstructed());
            assert!(report.cup_kernel.contains(&m, &d.direction).unwrap());
        }
        assert!(report.summary.contains("sample"));
    }

    #[test]
    fn grid_is_the_documented_fifteen_values() {
        let g = grid_values(3);
        assert_eq!(g.len(), 15);
        let rendered: Vec<String> =
            g.iter().map(crate::scalar::format_rational).collect();
        assert_eq!(
            rendered,
            ["0", "-1", "1", "-2", "2", "-1/2", "1/2", "-3", "3", "-3/2", "3/2", "-2/3",
             "-1/3", "1/3", "2/3"]
        );
    }

    #[test]
    fn truncation_is_deterministic_and_reported() {
        let m = kt();
        let spec = SampleSpec { height: 3, max_directions: 10 };
        let a = scan(&m, &m.zero(), 1, Level::Finite(1), spec, false).unwrap();
        let b = scan(&m, &m.zero(), 1, Level::Finite(1), spec, false).unwrap();
        assert_eq!(a.directions.len(), 10);
        assert_eq!(a.truncated, Some((10, 241)));
        let coords_a: Vec<_> = a.directions.iter().map(|d| d.coordinates.clone()).collect();
        let coords_b: Vec<_> = b.directions.iter().map(|d| d.coordinates.clone()).collect();
        assert_eq!(coords_a, coords_b);
    }
}
