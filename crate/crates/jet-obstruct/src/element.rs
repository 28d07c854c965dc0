//! Elements of the exterior algebra: rational linear combinations of
//! monomials in canonical form (no zero coefficients, terms ordered).

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::Zero;

use crate::monomial::Monomial;
use crate::scalar::Rational;

/// Identity token for the generator namespace an element lives in.
///
/// Derived from the model label and generator list, so two loads of the
/// same model interoperate while elements of different models are
/// rejected by the checked operations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ModelId(pub(crate) u64);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element {
    pub(crate) model: ModelId,
    pub(crate) terms: BTreeMap<Monomial, Rational>,
}

impl Element {
    pub(crate) fn zero(model: ModelId) -> Self {
        Element { model, terms: BTreeMap::new() }
    }

    pub(crate) fn from_terms<I>(model: ModelId, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut e = Element::zero(model);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn model_id(&self) -> ModelId {
        self.model
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (monomial-lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero(self.model);
        }
        Element {
            model: self.model,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    fn assert_same_model(&self, other: &Element) {
        assert_eq!(
            self.model, other.model,
            "elements of different models combined outside a checked operation"
        );
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        self.assert_same_model(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        self.assert_same_model(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            model: self.model,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}
