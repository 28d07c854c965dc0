//! Truncated formal Lichnerowicz–de Rham complexes.
//!
//! For a closed degree-`k` form `η`, the complex `D^L_η` consists of
//! polynomials `ω(t) = Σ ω_j t^j` of degree ≤ `L` with `|t| = 1 − k`,
//! and differential
//!
//! ```text
//! d_{tη}(ω ⊗ p(t)) = dω ⊗ p(t) − (η ∧ ω) ⊗ t·p(t)
//! ```
//!
//! truncated past `t^L`.  For odd `k` this squares to zero and the whole
//! complex is an honest finite cochain complex; for even `k` the operator
//! form carries an unresolved sign subtlety (moving the odd variable `t`
//! past `d`), so this module only offers the coefficient-sequence
//! closedness test there and caps the truncation at `L = 1`, where every
//! statement reduces to `dω₁ = η ∧ ω₀`.
//!
//! Alongside the differential live the three structure maps — truncation,
//! gauge change by `e^{tg}`, and scale change `t ↦ t/c` — and a direct
//! brute-force cohomology evaluator used as an oracle against the
//! inductive spanning-set algorithm in `deformability`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::cohomology::{subspace_from_classes, CohomologySubspace, PrimitiveChoice};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{row_space_basis, FreeChoice, Matrix, Solver, Vector};
use crate::model::{DgaModel, ElementDegree};
use crate::monomial::Monomial;
use crate::scalar::{rat, Rational};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default ceiling on `rows × cols` of an assembled jet matrix.
pub const DEFAULT_MATRIX_GUARD: usize = 2_000_000;

/// A polynomial jet `Σ ω_j t^j`.  Trailing zero coefficients are
/// trimmed, so equality of the underlying vectors is equality of jets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetElement {
    coefficients: Vec<Element>,
}

impl JetElement {
    fn new(mut coefficients: Vec<Element>) -> Self {
        while coefficients.last().is_some_and(|e| e.is_zero()) {
            coefficients.pop();
        }
        JetElement { coefficients }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Number of stored coefficients (≤ L+1); higher ones are zero.
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficients(&self) -> &[Element] {
        &self.coefficients
    }

    pub fn coefficient(&self, j: usize) -> Option<&Element> {
        self.coefficients.get(j)
    }

    /// Rendering like `B*T + (C*T)*t + (-A*C)*t^2`.
    pub fn format(&self, model: &DgaModel) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (j, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = model.format_element(c);
            let part = match j {
                0 => body,
                1 => format!("({body})*t"),
                _ => format!("({body})*t^{j}"),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

/// The ambient data of a truncated complex `D^L_η`.
#[derive(Clone, Debug)]
pub struct JetContext<'a> {
    model: &'a DgaModel,
    eta: Element,
    k: usize,
    level: usize,
    matrix_guard: usize,
}

impl<'a> JetContext<'a> {
    /// Context for a nonzero homogeneous closed `eta`; the direction
    /// degree is read off.
    pub fn new(model: &'a DgaModel, eta: Element, level: usize) -> Result<Self> {
        let k = match model.degree(&eta) {
            ElementDegree::Homogeneous(k) => k,
            ElementDegree::Zero => {
                return Err(Error::NotHomogeneous {
                    found: "zero (pass the direction degree explicitly)".into(),
                })
            }
            ElementDegree::Mixed => return Err(Error::NotHomogeneous { found: "mixed".into() }),
        };
        Self::with_direction_degree(model, eta, k, level)
    }

    /// Context with an explicit direction degree, allowing `eta = 0`.
    pub fn with_direction_degree(
        model: &'a DgaModel,
        eta: Element,
        k: usize,
        level: usize,
    ) -> Result<Self> {
        model.expect_degree(&eta, k)?;
        let de = model.differential(&eta)?;
        if !de.is_zero() {
            return Err(Error::NotACocycle { residual: model.format_element(&de) });
        }
        if k % 2 == 0 && level > 1 {
            return Err(Error::EvenDirection { k });
        }
        Ok(JetContext { model, eta, k, level, matrix_guard: DEFAULT_MATRIX_GUARD })
    }

    pub fn model(&self) -> &'a DgaModel {
        self.model
    }

    pub fn eta(&self) -> &Element {
        &self.eta
    }

    /// Degree of the direction form.
    pub fn direction_degree(&self) -> usize {
        self.k
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn t_degree(&self) -> i64 {
        1 - self.k as i64
    }

    pub fn with_matrix_guard(mut self, guard: usize) -> Self {
        self.matrix_guard = guard;
        self
    }

    pub fn at_level(&self, level: usize) -> Result<JetContext<'a>> {
        Self::with_direction_degree(self.model, self.eta.clone(), self.k, level)
    }

    /// Builds a jet from explicit coefficients `ω_0, …` (at most L+1).
    pub fn jet(&self, coefficients: Vec<Element>) -> Result<JetElement> {
        if coefficients.len() > self.level + 1 {
            return Err(Error::LevelRange {
                requested: coefficients.len() - 1,
                level: self.level,
            });
        }
        for c in &coefficients {
            self.model.check_owned(c)?;
        }
        Ok(JetElement::new(coefficients))
    }

    pub fn zero_jet(&self) -> JetElement {
        JetElement::new(Vec::new())
    }

    /// `ω · t^j`.
    pub fn monomial_jet(&self, e: Element, j: usize) -> Result<JetElement> {
        if j > self.level {
            return Err(Error::LevelRange { requested: j, level: self.level });
        }
        self.model.check_owned(&e)?;
        let mut coefficients = vec![self.model.zero(); j];
        coefficients.push(e);
        Ok(JetElement::new(coefficients))
    }

    fn coeff(&self, x: &JetElement, j: usize) -> Element {
        x.coefficient(j).cloned().unwrap_or_else(|| self.model.zero())
    }

    /// Common base degree `r` with `|ω_j| = r + j(k−1)`; `None` for the
    /// zero jet.
    pub fn base_degree(&self, x: &JetElement) -> Result<Option<usize>> {
        let mut base: Option<i64> = None;
        for (j, c) in x.coefficients.iter().enumerate() {
            match self.model.degree(c) {
                ElementDegree::Zero => continue,
                ElementDegree::Mixed => {
                    return Err(Error::NotHomogeneous { found: "mixed".into() })
                }
                ElementDegree::Homogeneous(d) => {
                    let r = d as i64 - (j as i64) * (self.k as i64 - 1);
                    match base {
                        None if r >= 0 => base = Some(r),
                        Some(prev) if prev == r => {}
                        _ => {
                            return Err(Error::NotHomogeneous {
                                found: format!("coefficient {j} of degree {d}"),
                            })
                        }
                    }
                }
            }
        }
        Ok(base.map(|r| r as usize))
    }

    pub fn add(&self, x: &JetElement, y: &JetElement) -> JetElement {
        let n = x.len().max(y.len());
        let coefficients =
            (0..n).map(|j| &self.coeff(x, j) + &self.coeff(y, j)).collect();
        JetElement::new(coefficients)
    }

    pub fn sub(&self, x: &JetElement, y: &JetElement) -> JetElement {
        let n = x.len().max(y.len());
        let coefficients =
            (0..n).map(|j| &self.coeff(x, j) - &self.coeff(y, j)).collect();
        JetElement::new(coefficients)
    }

    pub fn scale_jet(&self, x: &JetElement, c: &Rational) -> JetElement {
        JetElement::new(x.coefficients.iter().map(|e| e.scaled(c)).collect())
    }

    /// `d_{tη}`, truncated at `t^L`.  Odd directions only: for even `k`
    /// this operator does not square to zero in the stated form, and the
    /// sequence test [`JetContext::is_closed`] is the supported route.
    pub fn differential(&self, x: &JetElement) -> Result<JetElement> {
        if self.k % 2 == 0 {
            return Err(Error::EvenDirection { k: self.k });
        }
        let mut out = Vec::with_capacity(self.level + 1);
        for j in 0..=self.level {
            let mut c = self.model.differential(&self.coeff(x, j))?;
            if j > 0 {
                c -= &self.model.wedge(&self.eta, &self.coeff(x, j - 1))?;
            }
            out.push(c);
        }
        Ok(JetElement::new(out))
    }

    /// Closedness via the coefficient sequence: `dω_0 = 0` and
    /// `dω_{ℓ+1} = η ∧ ω_ℓ` for `0 ≤ ℓ < L`.  Valid for every parity of
    /// `k`; for odd `k` it agrees with `differential(x) == 0`.
    pub fn is_closed(&self, x: &JetElement) -> Result<bool> {
        for j in 0..=self.level {
            let mut lhs = self.model.differential(&self.coeff(x, j))?;
            if j > 0 {
                lhs -= &self.model.wedge(&self.eta, &self.coeff(x, j - 1))?;
            }
            if !lhs.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `τ^{L,L1}`: drops coefficients above `t^L1`.
    pub fn truncate(&self, x: &JetElement, l1: usize) -> Result<JetElement> {
        if l1 > self.level {
            return Err(Error::LevelRange { requested: l1, level: self.level });
        }
        let end = x.len().min(l1 + 1);
        Ok(JetElement::new(x.coefficients[..end].to_vec()))
    }

    /// Multiplication by `e^{tg} = Σ g^b t^b / b!` for `|g| = k − 1`; a
    /// cochain isomorphism `D^L_η → D^L_{η+dg}`.
    pub fn gauge_change(&self, x: &JetElement, g: &Element) -> Result<JetElement> {
        self.expect_gauge_degree(g)?;
        let powers = self.gauge_powers(g)?;
        let mut out = Vec::with_capacity(self.level + 1);
        for j in 0..=self.level {
            let mut c = self.model.zero();
            for (b, gb) in powers.iter().enumerate().take(j + 1) {
                if gb.is_zero() {
                    break;
                }
                c += &self.model.wedge(gb, &self.coeff(x, j - b))?;
            }
            out.push(c);
        }
        Ok(JetElement::new(out))
    }

    /// The context `e^{tg}` maps into: same level, direction `η + dg`.
    pub fn gauge_target(&self, g: &Element) -> Result<JetContext<'a>> {
        self.expect_gauge_degree(g)?;
        let eta = &self.eta + &self.model.differential(g)?;
        Ok(JetContext {
            model: self.model,
            eta,
            k: self.k,
            level: self.level,
            matrix_guard: self.matrix_guard,
        })
    }

    fn expect_gauge_degree(&self, g: &Element) -> Result<()> {
        if self.k == 0 {
            return Err(Error::DegreeMismatch { expected: 0, found: "gauge".into() });
        }
        self.model.expect_degree(g, self.k - 1)
    }

    fn gauge_powers(&self, g: &Element) -> Result<Vec<Element>> {
        let mut powers = vec![self.model.unit()];
        let mut factorial = Rational::one();
        let mut gb = self.model.unit();
        for b in 1..=self.level {
            gb = self.model.wedge(&gb, g)?;
            factorial *= rat(b as i64, 1);
            if gb.is_zero() {
                break;
            }
            powers.push(gb.scaled(&(Rational::one() / &factorial)));
        }
        Ok(powers)
    }

    /// `t ↦ t/c`: divides coefficient `j` by `c^j`.
    ///
    /// Direction bookkeeping: with this action the map carries closed
    /// elements for `η` to closed elements for `η/c` — equivalently it
    /// is the paper-style isomorphism `D^L_{cμ} → D^L_μ` with `μ = η/c`.
    /// See [`JetContext::scale_target`].
    pub fn scale_change(&self, x: &JetElement, c: &Rational) -> Result<JetElement> {
        if c.is_zero() {
            return Err(Error::ZeroScale);
        }
        let mut out = Vec::with_capacity(x.len());
        let mut cj = Rational::one();
        for e in &x.coefficients {
            out.push(e.scaled(&(Rational::one() / &cj)));
            cj *= c;
        }
        Ok(JetElement::new(out))
    }

    /// Target of [`JetContext::scale_change`]: same level, direction `η/c`.
    pub fn scale_target(&self, c: &Rational) -> Result<JetContext<'a>> {
        if c.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(JetContext {
            model: self.model,
            eta: self.eta.scaled(&(Rational::one() / c)),
            k: self.k,
            level: self.level,
            matrix_guard: self.matrix_guard,
        })
    }

    pub fn format_jet(&self, x: &JetElement) -> String {
        x.format(self.model)
    }

    // ------------------------------------------------------------------
    // The assembled complex: bases, matrices, exactness, cohomology.
    // ------------------------------------------------------------------

    /// Basis of the total-degree-`s` piece, ordered `(j, monomial)` with
    /// `j` ascending — the `t^0` block is a prefix.
    fn jet_basis(&self, s: i64) -> Vec<(usize, Monomial)> {
        let mut basis = Vec::new();
        for j in 0..=self.level {
            let d = s + (j as i64) * (self.k as i64 - 1);
            if d < 0 {
                continue;
            }
            for m in self.model.basis_of_degree(d as usize) {
                basis.push((j, m));
            }
        }
        basis
    }

    fn jet_coordinates(&self, basis: &[(usize, Monomial)], x: &JetElement) -> Result<Vector> {
        let index: BTreeMap<(usize, Monomial), usize> =
            basis.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut v = vec![Rational::zero(); basis.len()];
        for (j, c) in x.coefficients.iter().enumerate() {
            for (m, coeff) in c.terms() {
                match index.get(&(j, m)) {
                    Some(&i) => v[i] = coeff.clone(),
                    None => {
                        return Err(Error::NotHomogeneous {
                            found: format!(
                                "coefficient {j} contains a term outside total degree"
                            ),
                        })
                    }
                }
            }
        }
        Ok(v)
    }

    fn jet_from_coordinates(&self, basis: &[(usize, Monomial)], v: &[Rational]) -> JetElement {
        let mut coefficients = vec![self.model.zero(); self.level + 1];
        for ((j, m), c) in basis.iter().zip(v) {
            coefficients[*j].add_term(*m, c.clone());
        }
        JetElement::new(coefficients)
    }

    /// Matrix of `d_{tη}` from total degree `s` to `s + 1`.
    fn jet_matrix(
        &self,
        domain: &[(usize, Monomial)],
        target: &[(usize, Monomial)],
    ) -> Result<Matrix> {
        let cells = domain.len().saturating_mul(target.len());
        if cells > self.matrix_guard {
            return Err(Error::Resource {
                what: format!(
                    "assembled jet differential ({} × {} basis entries)",
                    target.len(),
                    domain.len()
                ),
                needed: cells,
                limit: self.matrix_guard,
            });
        }
        let index: BTreeMap<(usize, Monomial), usize> =
            target.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut m = Matrix::zero(target.len(), domain.len());
        for (col, &(j, mono)) in domain.iter().enumerate() {
            let e = self.model.element([(mono, Rational::one())]);
            let de = self.model.differential(&e)?;
            for (tm, c) in de.terms() {
                if let Some(&row) = index.get(&(j, tm)) {
                    m[(row, col)] = c.clone();
                }
            }
            if j < self.level {
                let we = self.model.wedge(&self.eta, &e)?;
                for (tm, c) in we.terms() {
                    if let Some(&row) = index.get(&(j + 1, tm)) {
                        m[(row, col)] = -c.clone();
                    }
                }
            }
        }
        Ok(m)
    }

    fn odd_only(&self) -> Result<()> {
        if self.k % 2 == 0 {
            return Err(Error::EvenDirection { k: self.k });
        }
        Ok(())
    }

    /// Whether `x = d_{tη}(y)` for some jet `y`, by one exact solve over
    /// the assembled complex.
    pub fn is_exact_jet(&self, x: &JetElement) -> Result<bool> {
        self.odd_only()?;
        let Some(r) = self.base_degree(x)? else {
            return Ok(true);
        };
        let domain = self.jet_basis(r as i64 - 1);
        let target = self.jet_basis(r as i64);
        let d = self.jet_matrix(&domain, &target)?;
        let rhs = self.jet_coordinates(&target, x)?;
        Ok(Solver::new(&d).consistent(&rhs))
    }

    /// A jet `y` with `d_{tη}(y) = x`.
    ///
    /// Solved over the whole complex at once: greedy coefficient-wise
    /// primitive lifting is incomplete (an unlucky primitive at
    /// coefficient `j` can make coefficient `j+1` unsolvable even though
    /// the jet is exact), so no incremental shortcut is taken here.
    pub fn jet_primitive(&self, x: &JetElement, choice: PrimitiveChoice) -> Result<JetElement> {
        self.odd_only()?;
        let Some(r) = self.base_degree(x)? else {
            return Ok(self.zero_jet());
        };
        let domain = self.jet_basis(r as i64 - 1);
        let target = self.jet_basis(r as i64);
        let d = self.jet_matrix(&domain, &target)?;
        let rhs = self.jet_coordinates(&target, x)?;
        let solver = Solver::new(&d);
        let solution = match choice {
            PrimitiveChoice::Zeros => solver.solve(&rhs, FreeChoice::Zeros),
            PrimitiveChoice::Seeded(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut supply = || {
                    use rand::Rng;
                    rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))
                };
                solver.solve(&rhs, FreeChoice::Values(&mut supply))
            }
        };
        match solution {
            Some(y) => Ok(self.jet_from_coordinates(&domain, &y)),
            None => Err(Error::NoPrimitive { element: self.format_jet(x) }),
        }
    }

    /// Constructive surjectivity on exact elements: lifts an exact
    /// `x ∈ D^L` to an exact element of `D^{L2}` truncating back to `x`,
    /// by differentiating a primitive at the higher level.
    pub fn lift_exact(&self, x: &JetElement, l2: usize) -> Result<JetElement> {
        if l2 < self.level {
            return Err(Error::LevelRange { requested: l2, level: self.level });
        }
        let y = self.jet_primitive(x, PrimitiveChoice::Zeros)?;
        let up = self.at_level(l2)?;
        up.differential(&y)
    }

    /// Brute-force cohomology of `D^L_η` in base degree `r`, with the
    /// deformability subspace `V^{L,r} = τ^{L,0}(H^r(D^L_η)) ⊆ H^r`.
    ///
    /// Entirely independent of the inductive spanning-set algorithm;
    /// serves as its oracle.
    pub fn cohomology_direct(&self, r: usize) -> Result<JetCohomology> {
        self.odd_only()?;
        let below = self.jet_basis(r as i64 - 1);
        let here = self.jet_basis(r as i64);
        let d_below = self.jet_matrix(&below, &here)?;
        let above = self.jet_basis(r as i64 + 1);
        let d_here = self.jet_matrix(&here, &above)?;

        let kernel = d_here.kernel_basis();
        let image: Vec<Vector> = (0..d_below.cols()).map(|j| d_below.column(j)).collect();
        let image_echelon = row_space_basis(here.len(), &image);

        let reduced: Vec<Vector> = kernel
            .into_iter()
            .map(|mut v| {
                for row in &image_echelon {
                    let pivot = row.iter().position(|x| !x.is_zero()).unwrap();
                    if !v[pivot].is_zero() {
                        let factor = v[pivot].clone();
                        for (vi, ri) in v.iter_mut().zip(row.iter()) {
                            *vi -= &factor * ri;
                        }
                    }
                }
                v
            })
            .collect();
        let rep_vectors = row_space_basis(here.len(), &reduced);
        let representatives: Vec<JetElement> =
            rep_vectors.iter().map(|v| self.jet_from_coordinates(&here, v)).collect();

        let omega0: Vec<Element> =
            representatives.iter().map(|x| self.coeff(x, 0)).collect();
        let v = subspace_from_classes(self.model, r, &omega0)?;
        Ok(JetCohomology { dimension: representatives.len(), representatives, v })
    }
}

/// Result of the direct evaluator: `H^r(D^L_η)` with representatives and
/// the projected subspace `V^{L,r} ⊆ H^r`.
pub struct JetCohomology {
    pub dimension: usize,
    pub representatives: Vec<JetElement>,
    pub v: CohomologySubspace,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;
    use crate::model_io::builtin;
    use crate::scalar::rat_int;

    fn kt() -> DgaModel {
        builtin("kodaira-thurston").unwrap()
    }

    fn el(m: &DgaModel, s: &str) -> Element {
        parse_element(m.generator_set(), s).unwrap()
    }

    #[test]
    fn differential_matches_hand_expansion() {
        let m = kt();
        let a = el(&m, "A");
        let ctx = JetContext::new(&m, a, 1).unwrap();
        // x = BT + (CT)t is closed at L = 1
        let x = ctx.jet(vec![el(&m, "B*T"), el(&m, "C*T")]).unwrap();
        assert!(ctx.differential(&x).unwrap().is_zero());
        assert!(ctx.is_closed(&x).unwrap());
        // dropping the t-coefficient breaks closedness
        let x0 = ctx.jet(vec![el(&m, "B*T")]).unwrap();
        assert!(!ctx.is_closed(&x0).unwrap());
        // d_{tA}(B + C·t) = (-A*C)·t² at L = 2
        let ctx2 = JetContext::new(&m, el(&m, "A"), 2).unwrap();
        let x = ctx2.jet(vec![el(&m, "B"), el(&m, "C")]).unwrap();
        let dx = ctx2.differential(&x).unwrap();
        assert_eq!(ctx2.format_jet(&dx), "(-A*C)*t^2");
        // and the sign-settled primitive: d_{tA}(-B - C·t) = (A*C)·t²
        let y = ctx2.jet(vec![el(&m, "-B"), el(&m, "-C")]).unwrap();
        let dy = ctx2.differential(&y).unwrap();
        assert_eq!(ctx2.format_jet(&dy), "(A*C)*t^2");
        assert!(ctx2.differential(&ctx2.zero_jet()).unwrap().is_zero());
    }

    #[test]
    fn d_squared_vanishes_for_odd_directions() {
        let m = kt();
        let ctx = JetContext::new(&m, el(&m, "A + 2*T"), 3).unwrap();
        for s in ["B", "C*T", "A*B + 1/2*C*T", "B*C*T"] {
            let x = ctx.jet(vec![el(&m, s), el(&m, "C"), el(&m, "T")]).unwrap();
            let ddx = ctx.differential(&ctx.differential(&x).unwrap()).unwrap();
            assert!(ddx.is_zero(), "d² on {s}");
        }
    }

    #[test]
    fn truncation_is_a_prefix() {
        let m = kt();
        let ctx = JetContext::new(&m, el(&m, "A"), 1).unwrap();
        let x = ctx.jet(vec![el(&m, "B*T"), el(&m, "C*T")]).unwrap();
        let x0 = ctx.truncate(&x, 0).unwrap();
        assert_eq!(ctx.format_jet(&x0), "B*T");
        assert_eq!(ctx.truncate(&x, 1).unwrap(), x);
        assert!(matches!(ctx.truncate(&x, 2), Err(Error::LevelRange { .. })));
    }

    #[test]
    fn gauge_change_by_closed_g() {
        let m = kt();
        let ctx = JetContext::new(&m, el(&m, "A"), 2).unwrap();
        // for k = 1 the gauge forms are scalars: e^{2t} multiplies t^j by 2^j/j!… summed
        let g = el(&m, "2");
        let x = ctx.jet(vec![el(&m, "A*C")]).unwrap();
        let y = ctx.gauge_change(&x, &g).unwrap();
        assert_eq!(ctx.format_jet(&y), "A*C + (2*A*C)*t + (2*A*C)*t^2");
        let target = ctx.gauge_target(&g).unwrap();
        assert_eq!(target.eta(), ctx.eta());
        // zero gauge is the identity
        assert_eq!(ctx.gauge_change(&x, &m.zero()).unwrap(), x);
        // wrong degree rejected
        assert!(ctx.gauge_change(&x, &el(&m, "A*B")).is_err());
    }

    #[test]
    fn gauge_cocycle_and_inverse() {
        let m = kt();
        // k = 3 exercises nonzero dg: g = C*T has dg = A*B*T
        let eta = el(&m, "A*B*C");
        let ctx = JetContext::new(&m, eta, 2).unwrap();
        let g = el(&m, "C*T");
        let x = ctx.jet(vec![el(&m, "A*T"), el(&m, "B"), el(&m, "T")]).unwrap();
        let target = ctx.gauge_target(&g).unwrap();
        let there = ctx.gauge_change(&x, &g).unwrap();
        let back = target.gauge_change(&there, &(-&g)).unwrap();
        assert_eq!(back, x);
        // chain map: gauge ∘ d = d ∘ gauge
        let lhs = target.differential(&ctx.gauge_change(&x, &g).unwrap()).unwrap();
        let rhs = ctx.gauge_change(&ctx.differential(&x).unwrap(), &g).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scale_change_divides_coefficients() {
        let m = kt();
        let ctx = JetContext::new(&m, el(&m, "A"), 1).unwrap();
        let x = ctx.jet(vec![el(&m, "B*T"), el(&m, "C*T")]).unwrap();
        let y = ctx.scale_change(&x, &rat_int(2)).unwrap();
        assert_eq!(ctx.format_jet(&y), "B*T + (1/2*C*T)*t");
        assert_eq!(ctx.scale_change(&x, &rat_int(1)).unwrap(), x);
        assert!(matches!(ctx.scale_change(&x, &rat_int(0)), Err(Error::ZeroScale)));
        // closed for η maps to closed for η/c
        let target = ctx.scale_target(&rat_int(2)).unwrap();
        assert_eq!(target.eta(), &el(&m, "1/2*A"));
        assert!(target.is_closed(&y).unwrap());
        // chain map against the target differential
        let w = ctx.jet(vec![el(&m, "B"), el(&m, "C")]).unwrap();
        let lhs = target.differential(&ctx.scale_change(&w, &rat_int(2)).unwrap()).unwrap();
        let rhs = ctx.scale_change(&ctx.differential(&w).unwrap(), &rat_int(2)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn even_directions_are_fenced() {
        let m = kt();
        let eta = el(&m, "A*B");
        assert!(matches!(
            JetContext::new(&m, eta.clone(), 2),
            Err(Error::EvenDirection { k: 2 })
        ));
        let ctx = JetContext::new(&m, eta, 1).unwrap();
        let x = ctx.jet(vec![el(&m, "C*T")]).unwrap();
        assert!(matches!(ctx.differential(&x), Err(Error::EvenDirection { .. })));
        // the sequence formulation still works: d(ω₁) = A*B ∧ C*T needs ω₁ with dω₁ = A*B*C*T
        let closed = ctx.jet(vec![el(&m, "C*T"), m.zero()]).unwrap();
        assert!(!ctx.is_closed(&closed).unwrap());
        let ok = ctx.jet(vec![el(&m, "A*C")]).unwrap();
        assert!(ctx.is_closed(&ok).unwrap());
    }

    #[test]
    fn exactness_over_the_assembled_complex() {
        let m = kt();
        let ctx = JetContext::new(&m, el(&m, "A"), 2).unwrap();
        // AC·t² is exact in D²_A (primitive -B - C·t)
        let target = ctx.monomial_jet(el(&m, "A*C"), 2).unwrap();
        assert!(ctx.is_exact_jet(&target).unwrap());
        let y = ctx.jet_primitive(&target, PrimitiveChoice::Zeros).unwrap();
        assert_eq!(ctx.differential(&y).unwrap(), target);
        // A*C itself (t⁰) is not exact
        let not = ctx.monomial_jet(el(&m, "A*C"), 0).unwrap();
        assert!(!ctx.is_exact_jet(&not).unwrap());
        assert!(ctx.jet_primitive(&not, PrimitiveChoice::Zeros).is_err());
        // greedy coefficient-wise lifting would fail on this exact jet:
        // x = d_{tA}(T·t⁰) has x₀ = 0, whose canonical primitive 0 shifts
        // the t¹ equation by A∧T, which has no primitive — the full solve
        // still succeeds.
        let y0 = ctx.jet(vec![el(&m, "T")]).unwrap();
        let x = ctx.differential(&y0).unwrap();
        assert!(!x.is_zero());
        assert!(ctx.is_exact_jet(&x).unwrap());
        let y = ctx.jet_primitive(&x, PrimitiveChoice::Zeros).unwrap();
        assert_eq!(ctx.differential(&y).unwrap(), x);
    }

    #[test]
    fn exact_lift_truncates_back() {
        let m = kt();
        let ctx = JetContext::new(&m, el(&m, "A"), 1).unwrap();
        let y0 = ctx.jet(vec![el(&m, "C"), el(&m, "T")]).unwrap();
        let x = ctx.differential(&y0).unwrap();
        let lifted = ctx.lift_exact(&x, 3).unwrap();
        let up = ctx.at_level(3).unwrap();
        assert!(up.is_exact_jet(&lifted).unwrap());
        assert_eq!(up.truncate(&lifted, 1).unwrap(), x);
    }

    #[test]
    fn direct_cohomology_of_the_reference_example() {
        let m = kt();
        let ctx = JetContext::new(&m, el(&m, "A"), 1).unwrap();
        let jc = ctx.cohomology_direct(2).unwrap();
        assert_eq!(jc.v.dimension(), 3);
        let v_reps: Vec<String> =
            jc.v.representatives().iter().map(|e| m.format_element(e)).collect();
        assert_eq!(v_reps, ["A*C", "A*T", "B*T"]);
        for x in &jc.representatives {
            assert!(ctx.is_closed(x).unwrap());
        }
        let ctx2 = JetContext::new(&m, el(&m, "A"), 2).unwrap();
        let jc2 = ctx2.cohomology_direct(2).unwrap();
        assert_eq!(jc2.v.dimension(), 2);
        let v_reps: Vec<String> =
            jc2.v.representatives().iter().map(|e| m.format_element(e)).collect();
        assert_eq!(v_reps, ["A*C", "A*T"]);
    }

    #[test]
    fn zero_direction_gives_full_cohomology() {
        let m = kt();
        let ctx = JetContext::with_direction_degree(&m, m.zero(), 1, 3).unwrap();
        for r in 0..=4 {
            let jc = ctx.cohomology_direct(r).unwrap();
            let h = crate::cohomology::cohomology_basis(&m, r);
            assert_eq!(jc.v.dimension(), h.dimension(), "r = {r}");
        }
    }

    #[test]
    fn matrix_guard_trips() {
        let m = kt();
        let ctx = JetContext::new(&m, el(&m, "A"), 4).unwrap().with_matrix_guard(10);
        assert!(matches!(ctx.cohomology_direct(2), Err(Error::Resource { .. })));
    }

    #[test]
    fn jet_equality_pads_trailing_zeros() {
        let m = kt();
        let ctx = JetContext::new(&m, el(&m, "A"), 2).unwrap();
        let a = ctx.jet(vec![el(&m, "B*T"), m.zero(), m.zero()]).unwrap();
        let b = ctx.jet(vec![el(&m, "B*T")]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 1);
    }
}
