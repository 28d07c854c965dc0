//! Randomized property suite: every structural identity the rest of the
//! crate relies on, exercised on reproducible random inputs.
//!
//! Each check runs a fixed number of seeded trials and reports failures
//! with a concrete counterexample.  All of these are theorems for any
//! valid model, so a failure always means an implementation bug — which
//! is precisely what the suite is for.  A deliberate-sabotage hook lets
//! the test harness confirm that a violated identity is named.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{
    betti_numbers, cohomology_basis, cup_kernel, differential_matrix, find_primitive,
    is_exact, CohomologySubspace, PrimitiveChoice,
};
use crate::deformability::{v_space, v_space_with};
use crate::element::Element;
use crate::error::Result;
use crate::expr::parse_element;
use crate::jet::{JetContext, JetElement};
use crate::model::{DgaModel, ElementDegree};
use crate::scalar::{rat, Rational};

use num_traits::Zero;

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TRIALS: usize = 200;

/// Deliberate defects for testing the harness itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sabotage {
    None,
    /// Makes the Koszul commutativity check demand the wrong sign.
    KoszulSignFlip,
}

#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    pub seed: u64,
    pub trials: usize,
    pub sabotage: Sabotage,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { seed: DEFAULT_SEED, trials: DEFAULT_TRIALS, sabotage: Sabotage::None }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub skipped: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CheckRun {
    pub model: String,
    pub seed: u64,
    pub trials: usize,
    pub outcomes: Vec<CheckOutcome>,
}

impl CheckRun {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.failures == 0)
    }

    pub fn failed_names(&self) -> Vec<&'static str> {
        self.outcomes.iter().filter(|o| o.failures > 0).map(|o| o.name).collect()
    }
}

/// Reproducible small-rational input generator.
struct Gen<'a> {
    model: &'a DgaModel,
    rng: ChaCha8Rng,
}

impl<'a> Gen<'a> {
    fn new(model: &'a DgaModel, seed: u64, stream: u64) -> Self {
        // one independent stream per check so trial counts don't couple
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Gen { model, rng }
    }

    fn rational(&mut self) -> Rational {
        rat(self.rng.gen_range(-3..=3), self.rng.gen_range(1..=2))
    }

    fn nonzero_rational(&mut self) -> Rational {
        loop {
            let c = self.rational();
            if !c.is_zero() {
                return c;
            }
        }
    }

    fn degree(&mut self) -> usize {
        self.rng.gen_range(0..=self.model.top_degree())
    }

    fn odd_degree(&mut self) -> usize {
        let top = self.model.top_degree();
        let count = top.div_ceil(2);
        1 + 2 * self.rng.gen_range(0..count)
    }

    /// Random element of degree `r` (possibly zero); roughly half the
    /// basis coefficients vanish.
    fn element(&mut self, r: usize) -> Element {
        let basis = self.model.basis_of_degree(r);
        let mut terms = Vec::new();
        for m in basis {
            if self.rng.gen_bool(0.5) {
                terms.push((m, self.rational()));
            }
        }
        self.model.element(terms)
    }

    fn any_element(&mut self) -> Element {
        let r = self.degree();
        self.element(r)
    }

    /// Random mixed-degree element.
    fn mixed_element(&mut self) -> Element {
        let a = self.any_element();
        let b = self.any_element();
        &a + &b
    }

    /// Random cocycle of degree `r` (combination of a kernel basis).
    fn cocycle(&mut self, r: usize) -> Element {
        let (domain, _, d) = differential_matrix(self.model, r);
        let kernel = d.kernel_basis();
        let basis = self.model.basis_of_degree(r);
        debug_assert_eq!(domain.len(), basis.len());
        let mut out = self.model.zero();
        for v in kernel {
            if self.rng.gen_bool(0.5) {
                let c = self.rational();
                if c.is_zero() {
                    continue;
                }
                out += &self.model.from_coordinates(&basis, &v).scaled(&c);
            }
        }
        out
    }

    /// Random exact element of degree `r`.
    fn exact(&mut self, r: usize) -> Result<Element> {
        if r == 0 {
            return Ok(self.model.zero());
        }
        let e = self.element(r - 1);
        self.model.differential(&e)
    }

    /// Random jet context with odd direction degree, level ≤ `max_level`.
    fn odd_context(&mut self, max_level: usize) -> Result<JetContext<'a>> {
        let k = self.odd_degree();
        let eta = self.cocycle(k);
        let level = self.rng.gen_range(0..=max_level);
        JetContext::with_direction_degree(self.model, eta, k, level)
    }

    /// Random jet with homogeneous base degree `r` in the context.
    fn jet(&mut self, ctx: &JetContext<'a>, r: usize) -> Result<JetElement> {
        let k = ctx.direction_degree() as i64;
        let mut coefficients = Vec::new();
        for j in 0..=ctx.level() {
            let d = r as i64 + (j as i64) * (k - 1);
            if d < 0 || d > self.model.top_degree() as i64 {
                coefficients.push(self.model.zero());
            } else {
                coefficients.push(self.element(d as usize));
            }
        }
        ctx.jet(coefficients)
    }
}

type CheckFn<'a> = Box<dyn FnMut(&mut Gen<'_>) -> Result<Option<String>> + 'a>;

struct Check<'a> {
    name: &'static str,
    trials: usize,
    body: CheckFn<'a>,
    skip: Option<String>,
}

fn subspaces_equal(model: &DgaModel, a: &CohomologySubspace, b: &CohomologySubspace) -> bool {
    let fmt = |s: &CohomologySubspace| -> Vec<String> {
        s.representatives().iter().map(|e| model.format_element(e)).collect()
    };
    fmt(a) == fmt(b)
}

/// Runs the whole suite on one model.
pub fn run_checks(model: &DgaModel, config: &CheckConfig) -> Result<CheckRun> {
    let trials = config.trials;
    let sabotage = config.sabotage;
    let torus_like = (0..model.generator_count())
        .all(|i| model.differential(&model.generator_element(i)).map_or(false, |d| d.is_zero()));

    let mut checks: Vec<Check<'_>> = Vec::new();

    // --- graded algebra ---------------------------------------------------
    checks.push(Check {
        name: "koszul-commutativity",
        trials,
        skip: None,
        body: Box::new(move |g| {
            let (p, q) = (g.degree(), g.degree());
            let (x, y) = (g.element(p), g.element(q));
            let mut sign = if p * q % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            if sabotage == Sabotage::KoszulSignFlip {
                sign = -sign;
            }
            let lhs = g.model.wedge(&x, &y)?;
            let rhs = g.model.wedge(&y, &x)?.scaled(&sign);
            Ok((lhs != rhs).then(|| {
                format!(
                    "x∧y ≠ (−1)^(|x||y|) y∧x for x = {}, y = {}",
                    g.model.format_element(&x),
                    g.model.format_element(&y)
                )
            }))
        }),
    });

    checks.push(Check {
        name: "wedge-associativity",
        trials,
        skip: None,
        body: Box::new(|g| {
            let (x, y, z) = (g.mixed_element(), g.mixed_element(), g.mixed_element());
            let lhs = g.model.wedge(&g.model.wedge(&x, &y)?, &z)?;
            let rhs = g.model.wedge(&x, &g.model.wedge(&y, &z)?)?;
            Ok((lhs != rhs).then(|| {
                format!(
                    "(x∧y)∧z ≠ x∧(y∧z) for x = {}, y = {}, z = {}",
                    g.model.format_element(&x),
                    g.model.format_element(&y),
                    g.model.format_element(&z)
                )
            }))
        }),
    });

    checks.push(Check {
        name: "leibniz-rule",
        trials,
        skip: None,
        body: Box::new(|g| {
            let p = g.degree();
            let (x, y) = (g.element(p), g.mixed_element());
            let lhs = g.model.differential(&g.model.wedge(&x, &y)?)?;
            let sign = if p % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            let rhs = &g.model.wedge(&g.model.differential(&x)?, &y)?
                + &g.model.wedge(&x, &g.model.differential(&y)?)?.scaled(&sign);
            Ok((lhs != rhs).then(|| {
                format!(
                    "d(x∧y) ≠ dx∧y + (−1)^|x| x∧dy for x = {}, y = {}",
                    g.model.format_element(&x),
                    g.model.format_element(&y)
                )
            }))
        }),
    });

    checks.push(Check {
        name: "d-squared-zero",
        trials,
        skip: None,
        body: Box::new(|g| {
            let x = g.mixed_element();
            let ddx = g.model.differential(&g.model.differential(&x)?)?;
            Ok((!ddx.is_zero())
                .then(|| format!("d²x ≠ 0 for x = {}", g.model.format_element(&x))))
        }),
    });

    checks.push(Check {
        name: "canonical-form-roundtrip",
        trials,
        skip: None,
        body: Box::new(|g| {
            let x = g.mixed_element();
            let rendered = g.model.format_element(&x);
            let back = parse_element(g.model.generator_set(), &rendered)?;
            Ok((back != x).then(|| format!("parse(format(x)) ≠ x for x = {rendered}")))
        }),
    });

    checks.push(Check {
        name: "rank-nullity",
        trials,
        skip: None,
        body: Box::new(|g| {
            let r = g.degree();
            let (domain, _, d) = differential_matrix(g.model, r);
            let rank = d.clone().rank();
            let nullity = d.kernel_basis().len();
            Ok((rank + nullity != domain.len())
                .then(|| format!("rank {rank} + nullity {nullity} ≠ dim {} in degree {r}", domain.len())))
        }),
    });

    checks.push(Check {
        name: "euler-characteristic",
        trials: 1,
        skip: None,
        body: Box::new(|g| {
            let betti = betti_numbers(g.model);
            let chi_h: i64 = betti
                .iter()
                .enumerate()
                .map(|(r, &b)| if r % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            let chi_c: i64 = (0..=g.model.top_degree())
                .map(|r| {
                    let d = g.model.dimension_of_degree(r) as i64;
                    if r % 2 == 0 {
                        d
                    } else {
                        -d
                    }
                })
                .sum();
            Ok((chi_h != chi_c)
                .then(|| format!("χ(H) = {chi_h} but χ(C) = {chi_c}")))
        }),
    });

    // --- jet complex ------------------------------------------------------
    checks.push(Check {
        name: "jet-d-squared",
        trials,
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(3)?;
            let x = g.jet(&ctx, g.degree())?;
            let ddx = ctx.differential(&ctx.differential(&x)?)?;
            Ok((!ddx.is_zero()).then(|| {
                format!(
                    "d_tη² ≠ 0 for η = {}, x = {}",
                    g.model.format_element(ctx.eta()),
                    ctx.format_jet(&x)
                )
            }))
        }),
    });

    checks.push(Check {
        name: "closedness-equivalence",
        trials,
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(3)?;
            let x = g.jet(&ctx, g.degree())?;
            let a = ctx.is_closed(&x)?;
            let b = ctx.differential(&x)?.is_zero();
            Ok((a != b).then(|| {
                format!(
                    "sequence test {a} but operator test {b} for x = {}",
                    ctx.format_jet(&x)
                )
            }))
        }),
    });

    checks.push(Check {
        name: "primitive-property",
        trials,
        skip: None,
        body: Box::new(|g| {
            let r = g.degree();
            let z = g.exact(r)?;
            if !is_exact(g.model, &z)? {
                return Ok(Some(format!(
                    "d-image not recognized exact: {}",
                    g.model.format_element(&z)
                )));
            }
            let p = find_primitive(g.model, &z, PrimitiveChoice::Seeded(g.rng.gen()))?;
            let dp = g.model.differential(&p)?;
            Ok((dp != z).then(|| {
                format!("d(primitive) ≠ z for z = {}", g.model.format_element(&z))
            }))
        }),
    });

    // --- the six cochain-map identities ----------------------------------
    checks.push(Check {
        name: "truncation-chain-map",
        trials,
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(3)?;
            if ctx.level() == 0 {
                return Ok(None);
            }
            let l1 = g.rng.gen_range(0..ctx.level());
            let low = ctx.at_level(l1)?;
            let x = g.jet(&ctx, g.degree())?;
            let lhs = low.differential(&ctx.truncate(&x, l1)?)?;
            let rhs = low.truncate(&ctx.differential(&x)?, l1)?;
            Ok((lhs != rhs)
                .then(|| format!("τ∘d ≠ d∘τ at L = {}, L1 = {l1}", ctx.level())))
        }),
    });

    checks.push(Check {
        name: "gauge-chain-map",
        trials,
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(3)?;
            let gauge = g.element(ctx.direction_degree() - 1);
            let target = ctx.gauge_target(&gauge)?;
            let x = g.jet(&ctx, g.degree())?;
            let lhs = target.differential(&ctx.gauge_change(&x, &gauge)?)?;
            let rhs = ctx.gauge_change(&ctx.differential(&x)?, &gauge)?;
            Ok((lhs != rhs).then(|| {
                format!(
                    "e^tg ∘ d ≠ d ∘ e^tg for g = {}, η = {}",
                    g.model.format_element(&gauge),
                    g.model.format_element(ctx.eta())
                )
            }))
        }),
    });

    checks.push(Check {
        name: "scale-chain-map",
        trials,
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(3)?;
            let c = g.nonzero_rational();
            let target = ctx.scale_target(&c)?;
            let x = g.jet(&ctx, g.degree())?;
            let lhs = target.differential(&ctx.scale_change(&x, &c)?)?;
            let rhs = ctx.scale_change(&ctx.differential(&x)?, &c)?;
            Ok((lhs != rhs).then(|| {
                format!("s_c ∘ d ≠ d ∘ s_c for c = {}", crate::scalar::format_rational(&c))
            }))
        }),
    });

    checks.push(Check {
        name: "truncation-gauge-commute",
        trials,
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(3)?;
            if ctx.level() == 0 {
                return Ok(None);
            }
            let l1 = g.rng.gen_range(0..ctx.level());
            let low = ctx.at_level(l1)?;
            let gauge = g.element(ctx.direction_degree() - 1);
            let x = g.jet(&ctx, g.degree())?;
            let lhs = ctx.truncate(&ctx.gauge_change(&x, &gauge)?, l1)?;
            let rhs = low.gauge_change(&ctx.truncate(&x, l1)?, &gauge)?;
            Ok((lhs != rhs).then(|| "τ ∘ e^tg ≠ e^tg ∘ τ".to_string()))
        }),
    });

    checks.push(Check {
        name: "truncation-scale-commute",
        trials,
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(3)?;
            if ctx.level() == 0 {
                return Ok(None);
            }
            let l1 = g.rng.gen_range(0..ctx.level());
            let low = ctx.at_level(l1)?;
            let c = g.nonzero_rational();
            let x = g.jet(&ctx, g.degree())?;
            let lhs = ctx.truncate(&ctx.scale_change(&x, &c)?, l1)?;
            let rhs = low.scale_change(&ctx.truncate(&x, l1)?, &c)?;
            Ok((lhs != rhs).then(|| "τ ∘ s_c ≠ s_c ∘ τ".to_string()))
        }),
    });

    checks.push(Check {
        name: "gauge-scale-commute",
        trials,
        skip: None,
        body: Box::new(|g| {
            // s_c ∘ e^{tg} = e^{t(g/c)} ∘ s_c
            let ctx = g.odd_context(3)?;
            let c = g.nonzero_rational();
            let gauge = g.element(ctx.direction_degree() - 1);
            let x = g.jet(&ctx, g.degree())?;
            let lhs = ctx.scale_change(&ctx.gauge_change(&x, &gauge)?, &c)?;
            let scaled_ctx = ctx.scale_target(&c)?;
            let scaled_gauge = gauge.scaled(&(rat(1, 1) / &c));
            let rhs = scaled_ctx.gauge_change(&ctx.scale_change(&x, &c)?, &scaled_gauge)?;
            Ok((lhs != rhs).then(|| "s_c ∘ e^tg ≠ e^(tg/c) ∘ s_c".to_string()))
        }),
    });

    // --- composition laws -------------------------------------------------
    checks.push(Check {
        name: "gauge-composition",
        trials,
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(3)?;
            let k = ctx.direction_degree();
            let (g1, g2) = (g.element(k - 1), g.element(k - 1));
            let x = g.jet(&ctx, g.degree())?;
            let mid = ctx.gauge_target(&g1)?;
            let lhs = mid.gauge_change(&ctx.gauge_change(&x, &g1)?, &g2)?;
            let rhs = ctx.gauge_change(&x, &(&g1 + &g2))?;
            Ok((lhs != rhs).then(|| "e^tg2 ∘ e^tg1 ≠ e^t(g1+g2)".to_string()))
        }),
    });

    checks.push(Check {
        name: "scale-composition",
        trials,
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(3)?;
            let (c1, c2) = (g.nonzero_rational(), g.nonzero_rational());
            let x = g.jet(&ctx, g.degree())?;
            let mid = ctx.scale_target(&c1)?;
            let lhs = mid.scale_change(&ctx.scale_change(&x, &c1)?, &c2)?;
            let rhs = ctx.scale_change(&x, &(&c1 * &c2))?;
            Ok((lhs != rhs).then(|| "s_c2 ∘ s_c1 ≠ s_(c1·c2)".to_string()))
        }),
    });

    // --- V-space invariances ----------------------------------------------
    checks.push(Check {
        name: "v-gauge-invariance",
        trials,
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(2)?;
            let r = g.degree();
            let gauge = g.element(ctx.direction_degree() - 1);
            let target = ctx.gauge_target(&gauge)?;
            let a = v_space(&ctx, r)?;
            let b = v_space(&target, r)?;
            Ok((!subspaces_equal(g.model, &a, &b)).then(|| {
                format!(
                    "V_η ≠ V_(η+dg) for η = {}, g = {}, r = {r}, L = {}",
                    g.model.format_element(ctx.eta()),
                    g.model.format_element(&gauge),
                    ctx.level()
                )
            }))
        }),
    });

    checks.push(Check {
        name: "v-scale-invariance",
        trials,
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(2)?;
            let r = g.degree();
            let c = g.nonzero_rational();
            let target = ctx.scale_target(&c)?;
            let a = v_space(&ctx, r)?;
            let b = v_space(&target, r)?;
            Ok((!subspaces_equal(g.model, &a, &b)).then(|| {
                format!(
                    "V_η ≠ V_(η/c) for η = {}, c = {}, r = {r}",
                    g.model.format_element(ctx.eta()),
                    crate::scalar::format_rational(&c)
                )
            }))
        }),
    });

    checks.push(Check {
        name: "v-nesting",
        trials,
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(2)?;
            let r = g.degree();
            let up = ctx.at_level(ctx.level() + 1)?;
            let outer = v_space(&ctx, r)?;
            let inner = v_space(&up, r)?;
            for rep in inner.representatives() {
                if !outer.contains(g.model, rep)? {
                    return Ok(Some(format!(
                        "V^{} ⊄ V^{} at r = {r}: {} escapes",
                        up.level(),
                        ctx.level(),
                        g.model.format_element(rep)
                    )));
                }
            }
            Ok(None)
        }),
    });

    checks.push(Check {
        name: "primitive-choice-independence",
        trials,
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(2)?;
            let r = g.degree();
            let a = v_space_with(&ctx, r, PrimitiveChoice::Zeros)?;
            let b = v_space_with(&ctx, r, PrimitiveChoice::Seeded(g.rng.gen()))?;
            Ok((!subspaces_equal(g.model, &a, &b))
                .then(|| format!("V depends on primitive choices at r = {r}")))
        }),
    });

    checks.push(Check {
        name: "cup-level-one",
        trials,
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(0)?.at_level(1)?;
            let r = g.degree();
            let alpha = g.cocycle(r);
            let v1 = v_space(&ctx, r)?;
            let member = v1.contains(g.model, &alpha)?;
            let kernel = cup_kernel(g.model, ctx.eta(), r)?;
            let cup = kernel.contains(g.model, &alpha)?;
            Ok((member != cup).then(|| {
                format!(
                    "1-jet deformability ≠ cup condition for α = {}, η = {}",
                    g.model.format_element(&alpha),
                    g.model.format_element(ctx.eta())
                )
            }))
        }),
    });

    checks.push(Check {
        name: "surjectivity-lift",
        trials,
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(2)?;
            let r = g.degree();
            let y = g.jet(&ctx, r)?;
            let x = ctx.differential(&y)?;
            let l2 = ctx.level() + g.rng.gen_range(1..=2);
            let lifted = ctx.lift_exact(&x, l2)?;
            let up = ctx.at_level(l2)?;
            if !up.is_exact_jet(&lifted)? {
                return Ok(Some("lift is not exact upstairs".into()));
            }
            let back = up.truncate(&lifted, ctx.level())?;
            Ok((back != x).then(|| "lift does not truncate back".to_string()))
        }),
    });

    // --- flat models ------------------------------------------------------
    checks.push(Check {
        name: "torus-law",
        trials,
        skip: (!torus_like).then(|| "model has a nonzero differential".to_string()),
        body: Box::new(|g| {
            let k = g.odd_degree();
            let mu = g.cocycle(k);
            let r = g.degree();
            let alpha = g.cocycle(r);
            let ctx = JetContext::with_direction_degree(g.model, mu.clone(), k, 3)?;
            let v3 = v_space(&ctx, r)?;
            let member = v3.contains(g.model, &alpha)?;
            let wedge_zero = g.model.wedge(&mu, &alpha)?.is_zero();
            Ok((member != wedge_zero).then(|| {
                format!(
                    "α ∈ V³ is {member} but μ∧α = 0 is {wedge_zero} for μ = {}, α = {}",
                    g.model.format_element(&mu),
                    g.model.format_element(&alpha)
                )
            }))
        }),
    });

    checks.push(Check {
        name: "oracle-equivalence",
        trials: trials.min(60),
        skip: None,
        body: Box::new(|g| {
            let ctx = g.odd_context(2)?;
            let r = g.degree();
            let inductive = v_space(&ctx, r)?;
            let direct = ctx.cohomology_direct(r)?.v;
            Ok((!subspaces_equal(g.model, &inductive, &direct)).then(|| {
                format!(
                    "inductive V ≠ direct V for η = {}, r = {r}, L = {}",
                    g.model.format_element(ctx.eta()),
                    ctx.level()
                )
            }))
        }),
    });

    let mut outcomes = Vec::with_capacity(checks.len());
    for (stream, check) in checks.iter_mut().enumerate() {
        if let Some(reason) = &check.skip {
            outcomes.push(CheckOutcome {
                name: check.name,
                trials: 0,
                failures: 0,
                first_failure: None,
                skipped: Some(reason.clone()),
            });
            continue;
        }
        let mut gen = Gen::new(model, config.seed, stream as u64);
        let mut failures = 0;
        let mut first_failure = None;
        for _ in 0..check.trials {
            if let Some(msg) = (check.body)(&mut gen)? {
                failures += 1;
                if first_failure.is_none() {
                    first_failure = Some(msg);
                }
            }
        }
        outcomes.push(CheckOutcome {
            name: check.name,
            trials: check.trials,
            failures,
            first_failure,
            skipped: None,
        });
    }

    Ok(CheckRun {
        model: model.label().to_string(),
        seed: config.seed,
        trials: config.trials,
        outcomes,
    })
}
