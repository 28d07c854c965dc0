//! Jet deformability: the subspaces `V^{L,r}` and the maximal jet level
//! of a class along a direction.
//!
//! `V^{L,r}_{[η]} ⊆ H^r` is the image of `H^r(D^L_η)` under truncation
//! to the `t^0` coefficient: the classes admitting an `L`-jet
//! deformation along `η`.  Rather than assembling the full truncated
//! complex, `V` is grown one level at a time from a spanning set of
//! closed jets:
//!
//! 1. among current spanning combinations, keep those whose top
//!    coefficient wedges with `η` into an exact class;
//! 2. append a primitive of that wedge as the new top coefficient;
//! 3. adjoin `b · t^{L+1}` for a cohomology basis `b` of the new top
//!    degree.
//!
//! Every jet this produces is checked closed before being admitted; a
//! failure aborts loudly since it can only mean an algebra bug, not bad
//! user input.  The brute-force evaluator
//! [`crate::jet::JetContext::cohomology_direct`] recomputes the same
//! subspaces independently and serves as the oracle in the test suite.

use std::fmt;

use num_traits::Zero;

use crate::cohomology::{
    cohomology_basis, cup_kernel, find_primitive, subspace_from_classes, CohomologySubspace,
    Membership, PrimitiveChoice,
};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::jet::{JetContext, JetElement};
use crate::linalg::{FreeChoice, Matrix, Solver};
use crate::model::{DgaModel, ElementDegree};

/// Default level cap for degree-1 directions, where no finite
/// stabilization bound exists.
pub const DEFAULT_DEGREE_ONE_CUTOFF: usize = 8;

/// A requested truncation level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Finite(usize),
    Infinity,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(l) => write!(f, "{l}"),
            Level::Infinity => write!(f, "INFINITY"),
        }
    }
}

impl std::str::FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Level> {
        match s.to_ascii_lowercase().as_str() {
            "inf" | "infinity" => Ok(Level::Infinity),
            other => other
                .parse::<usize>()
                .map(Level::Finite)
                .map_err(|_| Error::Expr { msg: format!("bad level `{s}`") }),
        }
    }
}

/// Smallest proven `L₀` with `V^{L,r} = V^{∞,r}` for all `L ≥ L₀`, for a
/// direction of odd degree `k` on an `n`-dimensional model: coefficient
/// degrees `r + j(k−1)` exceed `n` once `j > L₀`, so higher jet
/// coefficients live in zero groups.  `None` for `k = 1` (the degrees
/// never grow) and for even `k` (handled separately via `t² = 0`).
pub fn stabilization_bound(n: usize, r: usize, k: usize) -> Option<usize> {
    if k < 2 || k % 2 == 0 {
        return None;
    }
    if n <= r {
        return Some(0);
    }
    let step = k - 1;
    let ceil = (n - r).div_ceil(step);
    Some(ceil - 1)
}

/// Spanning set of closed jets for `H^r(D^L_η)` (odd `k`).
pub struct SpanningSet<'a> {
    ctx: JetContext<'a>,
    base_degree: usize,
    jets: Vec<JetElement>,
}

impl<'a> SpanningSet<'a> {
    pub fn level(&self) -> usize {
        self.ctx.level()
    }

    pub fn base_degree(&self) -> usize {
        self.base_degree
    }

    pub fn jets(&self) -> &[JetElement] {
        &self.jets
    }

    pub fn context(&self) -> &JetContext<'a> {
        &self.ctx
    }

    /// `V^{L,r}`: the span of the `t^0`-coefficient classes.
    pub fn v(&self) -> Result<CohomologySubspace> {
        let model = self.ctx.model();
        let omega0: Vec<Element> = self
            .jets
            .iter()
            .map(|x| x.coefficient(0).cloned().unwrap_or_else(|| model.zero()))
            .collect();
        subspace_from_classes(model, self.base_degree, &omega0)
    }
}

/// Level-0 spanning set: cohomology representatives as constant jets.
pub fn initial_spanning_set<'a>(ctx: &JetContext<'a>, r: usize) -> Result<SpanningSet<'a>> {
    let ctx = ctx.at_level(0)?;
    let h = cohomology_basis(ctx.model(), r);
    let jets = h
        .representatives()
        .iter()
        .map(|b| ctx.monomial_jet(b.clone(), 0))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpanningSet { ctx, base_degree: r, jets })
}

/// One inductive step `L → L+1`.
pub fn extend_spanning_set<'a>(
    s: &SpanningSet<'a>,
    choice: PrimitiveChoice,
) -> Result<SpanningSet<'a>> {
    let ctx = &s.ctx;
    let model = ctx.model();
    let level = ctx.level();
    let k = ctx.direction_degree();
    let r = s.base_degree;
    let up = ctx.at_level(level + 1)?;

    // Step 1: combinations whose top coefficient wedges into an exact class.
    let wedge_degree = r + level * (k - 1) + k;
    let h_wedge = cohomology_basis(model, wedge_degree);
    let mut columns = Vec::with_capacity(s.jets.len());
    let mut wedges = Vec::with_capacity(s.jets.len());
    for jet in &s.jets {
        let top = jet.coefficient(level).cloned().unwrap_or_else(|| model.zero());
        let w = model.wedge(ctx.eta(), &top)?;
        match h_wedge.coordinates(model, &w)? {
            Membership::In(v) => columns.push(v),
            Membership::NotInSpan => unreachable!("wedge of cocycles escaped cohomology"),
        }
        wedges.push(w);
    }
    let kernel = Matrix::from_columns(h_wedge.dimension(), &columns).kernel_basis();

    // Step 2: extend each surviving combination by a primitive of the wedge.
    let mut jets = Vec::with_capacity(kernel.len());
    for c in &kernel {
        let mut combo = up.zero_jet();
        let mut wedge = model.zero();
        for ((coeff, jet), w) in c.iter().zip(&s.jets).zip(&wedges) {
            if coeff.is_zero() {
                continue;
            }
            combo = up.add(&combo, &up.scale_jet(&up.jet(jet.coefficients().to_vec())?, coeff));
            wedge += &w.scaled(coeff);
        }
        let beta = find_primitive(model, &wedge, choice)
            .expect("kernel combination must wedge into an exact class");
        jets.push(up.add(&combo, &up.monomial_jet(beta, level + 1)?));
    }

    // Step 3: adjoin the image of the new top degree.
    let top_degree = r + (level + 1) * (k - 1);
    for b in cohomology_basis(model, top_degree).representatives() {
        jets.push(up.monomial_jet(b.clone(), level + 1)?);
    }

    for jet in &jets {
        assert!(
            up.is_closed(jet)?,
            "spanning-set extension produced a non-closed jet: {}",
            up.format_jet(jet)
        );
    }
    Ok(SpanningSet { ctx: up, base_degree: r, jets })
}

/// `V^{L,r}_{[η]}` for the context's level.  Odd directions run the
/// inductive algorithm; even directions are capped at `L ≤ 1` by the
/// context and reduce to the cup-product kernel (`dω₁ = η ∧ ω₀` is
/// solvable iff `[η][ω₀] = 0`).
pub fn v_space(ctx: &JetContext<'_>, r: usize) -> Result<CohomologySubspace> {
    v_space_with(ctx, r, PrimitiveChoice::Zeros)
}

/// [`v_space`] with an explicit primitive choice; the result is
/// independent of the choice (the test suite checks this).
pub fn v_space_with(
    ctx: &JetContext<'_>,
    r: usize,
    choice: PrimitiveChoice,
) -> Result<CohomologySubspace> {
    let model = ctx.model();
    if ctx.direction_degree() % 2 == 0 {
        return match ctx.level() {
            0 => Ok(cohomology_basis(model, r)),
            _ => cup_kernel(model, ctx.eta(), r),
        };
    }
    let mut s = initial_spanning_set(ctx, r)?;
    for _ in 0..ctx.level() {
        s = extend_spanning_set(&s, choice)?;
    }
    s.v()
}

/// Maximal achieved level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxLevel {
    /// Deformable to exactly this level and no further (absolute: the
    /// refutation at the next level certifies every higher level too).
    Finite(usize),
    /// Deformable through the examined cutoff.
    AtLeastCutoff,
}

/// Outcome of [`max_jet`].
#[derive(Clone, Debug)]
pub struct DeformabilityVerdict {
    pub alpha: Element,
    pub mu: Element,
    /// The cutoff as requested.
    pub requested: Level,
    /// The cutoff actually examined (raised to the stabilization bound
    /// for directions of odd degree ≥ 3, capped at 1 for even degree).
    pub cutoff: usize,
    pub max_level: MaxLevel,
    /// Whether the conclusion is proven stable under raising the cutoff
    /// (refutations always are; passes are when the cutoff reaches a
    /// stabilization bound).
    pub stabilized: bool,
    /// Level at which membership in `V` first failed, if it did.
    pub refuted_at: Option<usize>,
    /// A closed jet witnessing the achieved level, with `ω₀ = α`.
    pub witness: JetElement,
    /// `dim V^{ℓ,r}` for the levels examined, `ℓ = 0` upward.  A trailing
    /// streak of equal dimensions is suggestive but, below a proven
    /// bound, never conclusive.
    pub v_dimensions: Vec<usize>,
}

impl DeformabilityVerdict {
    /// The level the witness lives at.
    pub fn achieved_level(&self) -> usize {
        match self.max_level {
            MaxLevel::Finite(l) => l,
            MaxLevel::AtLeastCutoff => self.cutoff,
        }
    }

    /// True when the verdict alone proves the class is deformable to
    /// every level.
    pub fn passes_definitively(&self) -> bool {
        matches!(self.max_level, MaxLevel::AtLeastCutoff) && self.stabilized
    }
}

/// Largest `L` with `[α] ∈ V^{L,r}_{[μ]}`, with a closed witness jet.
///
/// Membership failures are certified by an exact non-membership test
/// against `V^L` — never inferred from a failed lift.  For directions of
/// odd degree `k ≥ 3` the cutoff is raised to the stabilization bound,
/// so `INFINITY` is decidable; for `k = 1` an `INFINITY` request is
/// refused rather than approximated.
pub fn max_jet(
    model: &DgaModel,
    alpha: &Element,
    mu: &Element,
    cutoff: Level,
) -> Result<DeformabilityVerdict> {
    model.check_owned(alpha)?;
    model.check_owned(mu)?;
    let da = model.differential(alpha)?;
    if !da.is_zero() {
        return Err(Error::NotACocycle { residual: model.format_element(&da) });
    }

    // Zero direction: every class extends by the zero jet, but with no
    // direction degree there is no stabilization theory to invoke.
    if mu.is_zero() {
        let Level::Finite(c) = cutoff else {
            return Err(Error::NoFiniteReduction {
                reason: "the zero direction admits every jet; pass a finite cutoff".into(),
            });
        };
        return Ok(DeformabilityVerdict {
            alpha: alpha.clone(),
            mu: mu.clone(),
            requested: cutoff,
            cutoff: c,
            max_level: MaxLevel::AtLeastCutoff,
            stabilized: false,
            refuted_at: None,
            witness: JetContext::with_direction_degree(model, mu.clone(), 1, c)?
                .monomial_jet(alpha.clone(), 0)?,
            v_dimensions: Vec::new(),
        });
    }

    let k = match model.degree(mu) {
        ElementDegree::Homogeneous(k) => k,
        ElementDegree::Zero => unreachable!(),
        ElementDegree::Mixed => return Err(Error::NotHomogeneous { found: "mixed".into() }),
    };

    // Zero class: the zero jet extends at every level.
    if alpha.is_zero() {
        let c = match cutoff {
            Level::Finite(c) => {
                if k % 2 == 0 {
                    c.min(1)
                } else {
                    c
                }
            }
            Level::Infinity => 0,
        };
        let ctx = JetContext::with_direction_degree(model, mu.clone(), k, c)?;
        return Ok(DeformabilityVerdict {
            alpha: alpha.clone(),
            mu: mu.clone(),
            requested: cutoff,
            cutoff: c,
            max_level: MaxLevel::AtLeastCutoff,
            stabilized: true,
            refuted_at: None,
            witness: ctx.zero_jet(),
            v_dimensions: Vec::new(),
        });
    }

    let r = match model.degree(alpha) {
        ElementDegree::Homogeneous(r) => r,
        ElementDegree::Zero => unreachable!(),
        ElementDegree::Mixed => return Err(Error::NotHomogeneous { found: "mixed".into() }),
    };

    if k % 2 == 0 {
        return max_jet_even(model, alpha, mu, k, r, cutoff);
    }

    let bound = stabilization_bound(model.top_degree(), r, k);
    let effective = match (cutoff, bound) {
        (Level::Finite(c), None) => c,
        (Level::Finite(c), Some(b)) => c.max(b),
        (Level::Infinity, Some(b)) => b,
        (Level::Infinity, None) => {
            return Err(Error::NoFiniteReduction {
                reason: format!(
                    "no finite stabilization bound for a degree-{k} direction; \
                     pass a finite cutoff (default {DEFAULT_DEGREE_ONE_CUTOFF})"
                ),
            })
        }
    };
    let stabilized_at_cutoff = bound.is_some_and(|b| effective >= b);

    let base = JetContext::with_direction_degree(model, mu.clone(), k, 0)?;
    let h_r = cohomology_basis(model, r);
    let alpha_coords = match h_r.coordinates(model, alpha)? {
        Membership::In(v) => v,
        Membership::NotInSpan => unreachable!("cocycle class outside its own cohomology"),
    };

    let mut s = initial_spanning_set(&base, r)?;
    let mut v_dimensions = Vec::with_capacity(effective + 1);
    let mut last_witness: Option<JetElement> = None;
    loop {
        let level = s.level();
        let (solver, _) = spanning_class_matrix(&s, &h_r)?;
        v_dimensions.push(solver.rank());
        match solver.solve(&alpha_coords, FreeChoice::Zeros) {
            Some(c) => {
                let witness = witness_from(&s, &c, alpha)?;
                if level == effective {
                    return Ok(DeformabilityVerdict {
                        alpha: alpha.clone(),
                        mu: mu.clone(),
                        requested: cutoff,
                        cutoff: effective,
                        max_level: MaxLevel::AtLeastCutoff,
                        stabilized: stabilized_at_cutoff,
                        refuted_at: None,
                        witness,
                        v_dimensions,
                    });
                }
                last_witness = Some(witness);
                s = extend_spanning_set(&s, PrimitiveChoice::Zeros)?;
            }
            // Certified by exact non-membership against V^level, never by
            // a failed lift; level 0 always passes, so level ≥ 1 here.
            None => {
                return Ok(DeformabilityVerdict {
                    alpha: alpha.clone(),
                    mu: mu.clone(),
                    requested: cutoff,
                    cutoff: effective,
                    max_level: MaxLevel::Finite(level - 1),
                    stabilized: true,
                    refuted_at: Some(level),
                    witness: last_witness.expect("membership at level 0 is automatic"),
                    v_dimensions,
                });
            }
        }
    }
}

/// Even directions: `|t| = 1 − k` is odd, so `t² = 0` and the complex
/// stops at `L = 1`; level 1 holds iff `[μ][α] = 0`.
fn max_jet_even(
    model: &DgaModel,
    alpha: &Element,
    mu: &Element,
    k: usize,
    r: usize,
    cutoff: Level,
) -> Result<DeformabilityVerdict> {
    let effective = match cutoff {
        Level::Finite(c) => c.min(1),
        Level::Infinity => 1,
    };
    let ctx = JetContext::with_direction_degree(model, mu.clone(), k, effective)?;
    let h_r = cohomology_basis(model, r);
    if effective == 0 {
        return Ok(DeformabilityVerdict {
            alpha: alpha.clone(),
            mu: mu.clone(),
            requested: cutoff,
            cutoff: 0,
            max_level: MaxLevel::AtLeastCutoff,
            stabilized: false,
            refuted_at: None,
            witness: ctx.monomial_jet(alpha.clone(), 0)?,
            v_dimensions: vec![h_r.dimension()],
        });
    }
    let v1 = cup_kernel(model, mu, r)?;
    let v_dimensions = vec![h_r.dimension(), v1.dimension()];
    if v1.contains(model, alpha)? {
        let w = model.wedge(mu, alpha)?;
        let omega1 = find_primitive(model, &w, PrimitiveChoice::Zeros)?;
        let witness = ctx.jet(vec![alpha.clone(), omega1])?;
        assert!(ctx.is_closed(&witness)?, "even-direction witness must be closed");
        Ok(DeformabilityVerdict {
            alpha: alpha.clone(),
            mu: mu.clone(),
            requested: cutoff,
            cutoff: 1,
            max_level: MaxLevel::AtLeastCutoff,
            stabilized: true,
            refuted_at: None,
            witness,
            v_dimensions,
        })
    } else {
        Ok(DeformabilityVerdict {
            alpha: alpha.clone(),
            mu: mu.clone(),
            requested: cutoff,
            cutoff: 1,
            max_level: MaxLevel::Finite(0),
            stabilized: true,
            refuted_at: Some(1),
            witness: ctx.monomial_jet(alpha.clone(), 0)?,
            v_dimensions,
        })
    }
}

/// Matrix of `t^0`-coefficient classes of the spanning jets, as a solver
/// over `H^r` coordinates; its rank is `dim V^{L,r}`.
fn spanning_class_matrix(
    s: &SpanningSet<'_>,
    h_r: &CohomologySubspace,
) -> Result<(Solver, usize)> {
    let model = s.context().model();
    let mut columns = Vec::with_capacity(s.jets().len());
    for jet in s.jets() {
        let omega0 = jet.coefficient(0).cloned().unwrap_or_else(|| model.zero());
        match h_r.coordinates(model, &omega0)? {
            Membership::In(v) => columns.push(v),
            Membership::NotInSpan => unreachable!("jet head escaped its cohomology"),
        }
    }
    let matrix = Matrix::from_columns(h_r.dimension(), &columns);
    Ok((Solver::new(&matrix), columns.len()))
}

/// Assembles the witness jet from solved spanning coordinates: the
/// combination `z` has `[z₀] = [α]`, and adding `d_{tη}(β₀ t⁰)` for a
/// primitive `β₀` of `α − z₀` pins the head down to exactly `α`.
fn witness_from(
    s: &SpanningSet<'_>,
    coords: &[crate::scalar::Rational],
    alpha: &Element,
) -> Result<JetElement> {
    let ctx = s.context();
    let model = ctx.model();
    let mut z = ctx.zero_jet();
    for (c, jet) in coords.iter().zip(s.jets()) {
        if c.is_zero() {
            continue;
        }
        z = ctx.add(&z, &ctx.scale_jet(jet, c));
    }
    let z0 = z.coefficient(0).cloned().unwrap_or_else(|| model.zero());
    let gap = alpha - &z0;
    let witness = if gap.is_zero() {
        z
    } else {
        let beta = find_primitive(model, &gap, PrimitiveChoice::Zeros)?;
        let correction = ctx.differential(&ctx.monomial_jet(beta, 0)?)?;
        ctx.add(&z, &correction)
    };
    assert!(ctx.is_closed(&witness)?, "witness must be closed");
    assert_eq!(
        witness.coefficient(0).cloned().unwrap_or_else(|| model.zero()),
        *alpha,
        "witness head must equal the class representative"
    );
    Ok(witness)
}

/// Codimension-one annotation: for a class of degree `n − 1` against a
/// degree-1 direction with vanishing cup product, the geometric
/// top-degree argument removes the obstruction entirely.  Purely an
/// annotation — it never changes a computed verdict — and only offered
/// when the caller asserts the geometric situation applies.
pub fn rational_top_shortcut(
    model: &DgaModel,
    alpha: &Element,
    mu: &Element,
    geometric: bool,
) -> Result<Option<String>> {
    if !geometric {
        return Ok(None);
    }
    let n = model.top_degree();
    if model.degree(alpha) != ElementDegree::Homogeneous(n - 1)
        || model.degree(mu) != ElementDegree::Homogeneous(1)
    {
        return Ok(None);
    }
    let w = model.wedge(mu, alpha)?;
    let top = cohomology_basis(model, n);
    if !matches!(top.coordinates(model, &w)?, Membership::In(v) if v.iter().all(|c| c.is_zero()))
    {
        return Ok(None);
    }
    Ok(Some(format!(
        "codimension-one shortcut: [mu][alpha] = 0 in degree {n}, so under the stated \
         geometric hypotheses the class deforms to every jet level along this direction"
    )))
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

    fn reps(m: &DgaModel, v: &CohomologySubspace) -> Vec<String> {
        v.representatives().iter().map(|e| m.format_element(e)).collect()
    }

    #[test]
    fn stabilization_bound_examples() {
        assert_eq!(stabilization_bound(4, 2, 3), Some(0));
        assert_eq!(stabilization_bound(10, 1, 3), Some(4));
        assert_eq!(stabilization_bound(6, 2, 3), Some(1));
        assert_eq!(stabilization_bound(4, 2, 1), None);
        assert_eq!(stabilization_bound(4, 2, 2), None);
        assert_eq!(stabilization_bound(3, 5, 3), Some(0));
    }

    #[test]
    fn v_spaces_of_the_reference_model() {
        let m = kt();
        let a = el(&m, "A");
        for (level, want) in [
            (0, vec!["A*C", "A*T", "B*C", "B*T"]),
            (1, vec!["A*C", "A*T", "B*T"]),
            (2, vec!["A*C", "A*T"]),
            (3, vec!["A*C", "A*T"]),
        ] {
            let ctx = JetContext::new(&m, a.clone(), level).unwrap();
            let v = v_space(&ctx, 2).unwrap();
            assert_eq!(reps(&m, &v), want, "level {level}");
        }
    }

    #[test]
    fn spanning_sets_match_the_direct_oracle() {
        let m = kt();
        for eta_s in ["A", "B", "T", "A + 2*B"] {
            for r in 0..=4 {
                for level in 0..=2 {
                    let ctx = JetContext::new(&m, el(&m, eta_s), level).unwrap();
                    let inductive = v_space(&ctx, r).unwrap();
                    let direct = ctx.cohomology_direct(r).unwrap().v;
                    assert_eq!(
                        reps(&m, &inductive),
                        reps(&m, &direct),
                        "eta = {eta_s}, r = {r}, L = {level}"
                    );
                }
            }
        }
    }

    #[test]
    fn spanning_set_growth_stays_bounded() {
        let m = kt();
        let ctx = JetContext::new(&m, el(&m, "A"), 0).unwrap();
        let mut s = initial_spanning_set(&ctx, 2).unwrap();
        for _ in 0..3 {
            s = extend_spanning_set(&s, PrimitiveChoice::Zeros).unwrap();
            let cap: usize = (0..=s.level()).map(|_| 4).sum();
            assert!(s.jets().len() <= cap, "level {}: {} jets", s.level(), s.jets().len());
        }
    }

    #[test]
    fn primitive_choice_does_not_move_v() {
        let m = kt();
        let ctx = JetContext::new(&m, el(&m, "A"), 2).unwrap();
        let canonical = v_space_with(&ctx, 2, PrimitiveChoice::Zeros).unwrap();
        for seed in [1u64, 7, 1234] {
            let seeded = v_space_with(&ctx, 2, PrimitiveChoice::Seeded(seed)).unwrap();
            assert_eq!(reps(&m, &canonical), reps(&m, &seeded), "seed {seed}");
        }
    }

    #[test]
    fn max_jet_of_bt_along_a() {
        let m = kt();
        let verdict = max_jet(&m, &el(&m, "B*T"), &el(&m, "A"), Level::Finite(3)).unwrap();
        assert_eq!(verdict.max_level, MaxLevel::Finite(1));
        assert_eq!(verdict.refuted_at, Some(2));
        assert!(verdict.stabilized);
        assert_eq!(verdict.v_dimensions, vec![4, 3, 2]);
        let ctx = JetContext::new(&m, el(&m, "A"), 1).unwrap();
        assert_eq!(ctx.format_jet(&verdict.witness), "B*T + (C*T)*t");
        assert!(ctx.is_closed(&verdict.witness).unwrap());
    }

    #[test]
    fn max_jet_survivor_reaches_the_cutoff() {
        let m = kt();
        let verdict = max_jet(&m, &el(&m, "A*C"), &el(&m, "A"), Level::Finite(5)).unwrap();
        assert_eq!(verdict.max_level, MaxLevel::AtLeastCutoff);
        assert_eq!(verdict.cutoff, 5);
        assert!(!verdict.stabilized, "no stabilization theory for k = 1");
        assert_eq!(verdict.v_dimensions, vec![4, 3, 2, 2, 2, 2]);
        let ctx = JetContext::new(&m, el(&m, "A"), 5).unwrap();
        assert!(ctx.is_closed(&verdict.witness).unwrap());
        assert_eq!(verdict.witness.coefficient(0).unwrap(), &el(&m, "A*C"));
    }

    #[test]
    fn degree_one_infinity_is_refused() {
        let m = kt();
        let err = max_jet(&m, &el(&m, "B*T"), &el(&m, "A"), Level::Infinity).unwrap_err();
        assert!(matches!(err, Error::NoFiniteReduction { .. }));
    }

    #[test]
    fn zero_direction_passes_trivially() {
        let m = kt();
        let v = max_jet(&m, &el(&m, "B*T"), &m.zero(), Level::Finite(3)).unwrap();
        assert_eq!(v.max_level, MaxLevel::AtLeastCutoff);
        assert!(!v.stabilized);
        assert_eq!(v.witness.len(), 1, "witness is the constant jet");
        assert!(max_jet(&m, &el(&m, "B*T"), &m.zero(), Level::Infinity).is_err());
    }

    #[test]
    fn zero_class_passes_definitively() {
        let m = kt();
        let v = max_jet(&m, &m.zero(), &el(&m, "A"), Level::Finite(4)).unwrap();
        assert_eq!(v.max_level, MaxLevel::AtLeastCutoff);
        assert!(v.stabilized);
        assert!(v.witness.is_zero());
    }

    #[test]
    fn even_direction_decides_at_level_one() {
        let m = kt();
        let mu = el(&m, "B*C");
        // [B*C][A*T] = ±[A*B*C*T] ≠ 0: obstructed at level 1, absolutely
        let v = max_jet(&m, &el(&m, "A*T"), &mu, Level::Infinity).unwrap();
        assert_eq!(v.max_level, MaxLevel::Finite(0));
        assert_eq!(v.refuted_at, Some(1));
        assert!(v.stabilized);
        // B*C ∧ A*C = 0: passes, and t² = 0 makes it definitive
        let v = max_jet(&m, &el(&m, "A*C"), &mu, Level::Infinity).unwrap();
        assert_eq!(v.max_level, MaxLevel::AtLeastCutoff);
        assert_eq!(v.cutoff, 1);
        assert!(v.stabilized && v.passes_definitively());
        // requested cutoff 0 stays at level 0 and is not stabilized
        let v = max_jet(&m, &el(&m, "A*T"), &mu, Level::Finite(0)).unwrap();
        assert_eq!(v.max_level, MaxLevel::AtLeastCutoff);
        assert!(!v.stabilized);
    }

    #[test]
    fn odd_direction_with_bound_resolves_infinity() {
        let m = builtin("torus-6").unwrap();
        let mu = el(&m, "A*B*C");
        // L₀ = ⌈(6−2)/2⌉ − 1 = 1
        let v = max_jet(&m, &el(&m, "A*B"), &mu, Level::Infinity).unwrap();
        assert_eq!(v.max_level, MaxLevel::AtLeastCutoff);
        assert_eq!(v.cutoff, 1);
        assert!(v.stabilized && v.passes_definitively());
        assert_eq!(v.v_dimensions, vec![15, 12]);
        // [A*B*C][D*E] ≠ 0 on the torus: refuted at level 1
        let v = max_jet(&m, &el(&m, "D*E"), &mu, Level::Infinity).unwrap();
        assert_eq!(v.max_level, MaxLevel::Finite(0));
        assert!(v.stabilized);
        // a finite request below the bound is raised to it
        let v = max_jet(&m, &el(&m, "A*B"), &mu, Level::Finite(0)).unwrap();
        assert_eq!(v.cutoff, 1);
    }

    #[test]
    fn top_shortcut_annotation() {
        let m = kt();
        let a = el(&m, "A");
        // A ∧ A*C*T = 0: applicable under the geometric flag
        let note = rational_top_shortcut(&m, &el(&m, "A*C*T"), &a, true).unwrap();
        assert!(note.is_some());
        // [A][B*C*T] = [A*B*C*T] ≠ 0: not applicable
        assert!(rational_top_shortcut(&m, &el(&m, "B*C*T"), &a, true).unwrap().is_none());
        // gated off without the flag
        assert!(rational_top_shortcut(&m, &el(&m, "A*C*T"), &a, false).unwrap().is_none());
        // wrong degrees
        assert!(rational_top_shortcut(&m, &el(&m, "A*C"), &a, true).unwrap().is_none());
    }

    #[test]
    fn level_parsing() {
        assert_eq!("3".parse::<Level>().unwrap(), Level::Finite(3));
        assert_eq!("inf".parse::<Level>().unwrap(), Level::Infinity);
        assert_eq!("INFINITY".parse::<Level>().unwrap(), Level::Infinity);
        assert!("three".parse::<Level>().is_err());
    }
}
